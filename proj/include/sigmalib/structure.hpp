#pragma once

#include <optional>

#include "sigmalib/lattice.hpp"

namespace sigmalib {

struct ChiefFactor {
  u64 order = 1;
  Factorization order_fac;
  bool is_abelian = true;
  bool is_cyclic_prime = false;
  Verdict is_simple = Verdict::undecided("unset");
};

// Descending chain G = N_0 > N_1 > ... > N_r = 1 of subgroups normal in G,
// with no normal subgroup of G strictly between consecutive terms.
struct ChiefSeries {
  std::vector<GroupRef> terms;       // terms[0] = G, terms.back() trivial
  std::vector<ChiefFactor> factors;  // factors[i] = terms[i]/terms[i+1]
};

// All subgroups: exact under the subgroup cap, otherwise nullopt.
std::shared_ptr<const SmallLattice> all_subgroups(GroupRef G,
                                                  const CapConfig &caps);

// All normal subgroups, ascending by order. Exact under the subgroup cap via
// the lattice, under the element cap via joins of conjugacy-class closures.
std::optional<std::vector<GroupRef>> normal_subgroups(GroupRef G,
                                                      const CapConfig &caps);

std::optional<std::vector<GroupRef>> minimal_normal_subgroups(
    GroupRef G, const CapConfig &caps);

// One M with K < M <= N, both normal in G, M/K a chief factor of G.
// Found by normal-closure shrinking with a full verification pass.
std::optional<GroupRef> minimal_normal_over(const Group &G, GroupRef K,
                                            const Group &N,
                                            const CapConfig &caps);

// Pairwise-independent chief factors over K inside N whose product, when it
// covers N/K, witnesses a semisimple decomposition. Redundant central
// minimal normals may be omitted; every returned term is verified minimal.
std::optional<std::vector<GroupRef>> socle_components_over(const Group &G,
                                                           GroupRef K,
                                                           const Group &N,
                                                           const CapConfig &caps);

// Chief series; `seed` only permutes tie-breaking among minimal normal
// subgroups (seed 0 picks the lexicographically smallest element list).
std::optional<ChiefSeries> chief_series(GroupRef G, const CapConfig &caps,
                                        u64 seed = 0);

// The G-chief factors below a normal subgroup N, built bottom-up. Works for
// arbitrarily large G as long as N itself is streamable. Returns the
// ascending terms (trivial excluded, N included last) and their factors.
struct BelowSeries {
  std::vector<GroupRef> terms;        // ascending: M_1 < M_2 < ... < N
  std::vector<ChiefFactor> factors;   // factors[i] = terms[i]/terms[i-1]
};
std::optional<BelowSeries> chief_factors_below(GroupRef G, GroupRef N,
                                               const CapConfig &caps);

std::optional<GroupRef> sylow_subgroup(GroupRef G, u64 p,
                                       const CapConfig &caps);

// AB = BA, decided without enumerating the product set:
// |<A ∪ B>| == |A| |B| / |A ∩ B|.
Verdict product_is_subgroup(const Subgroup &A, const Subgroup &B,
                            const CapConfig &caps);

// Subgroups M with NM = G and N ∩ M = 1. The lattice path returns all of
// them; the abelian-Hall path constructs one (existence is guaranteed).
std::optional<std::vector<GroupRef>> complements(GroupRef G, GroupRef N,
                                                 const CapConfig &caps);

// Single complement of an abelian Hall normal subgroup via transversal
// cocycle averaging.
std::optional<GroupRef> abelian_hall_complement(GroupRef G, GroupRef N,
                                                const CapConfig &caps);

ChiefFactor describe_factor(const Group &M, GroupRef K, const CapConfig &caps);

}  // namespace sigmalib
