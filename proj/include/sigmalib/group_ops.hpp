#pragma once

#include <functional>
#include <optional>
#include <unordered_map>

#include "sigmalib/group.hpp"

namespace sigmalib {

// Membership-level predicates (generator checks, exact).
bool is_subgroup_of(const Group &sub, const Group &big);
bool is_normal_in(const Group &big, const Group &sub);
bool equal_groups(const Group &a, const Group &b);

GroupRef generated_by(unsigned degree, const std::vector<Perm> &gens,
                      std::optional<u64> expected_order = {});
GroupRef join_groups(const Group &a, const Group &b);

// Smallest normal subgroup of G containing the given seed elements.
GroupRef normal_closure(const Group &G, const std::vector<Perm> &seed);

GroupRef derived_subgroup(const Group &G);
std::vector<GroupRef> derived_series(const Group &G);
GroupRef soluble_residual(const Group &G);
bool is_perfect(const Group &G);

// g^(m) where m is the B-part of ord(g); the result is a B'-element.
Perm coprime_part(const Perm &g, const std::function<bool(u64)> &in_B);

// Smallest m with g^m in N (m divides ord(g)).
u64 element_order_mod(const Group &N, const Perm &g);

// Pointwise stabilizer of `fixed` in G.
GroupRef pointwise_stabilizer(const Group &G, const std::vector<Point> &fixed);

// Kernel of the action homomorphism sending G's i-th generator to
// action_images[i] (a permutation of a separate action domain).
GroupRef kernel_of_action(const Group &G,
                          const std::vector<Perm> &action_images,
                          unsigned action_degree);

// Canonical representative of the right coset N*g (minimal base images
// through N's chain); equal cosets yield equal representatives.
Perm canonical_coset_rep(const StabChain &N, const Perm &g);

// Right coset action of G on cosets of H. Exact; fails (nullopt) only when
// the index exceeds the cap.
struct CosetAction {
  GroupRef image;          // degree == index, gen_images in generator order
  std::vector<Perm> gen_images;
  std::vector<Perm> reps;  // reps[0] == identity
  Perm act(const Perm &g) const;  // action of an arbitrary element
  unsigned coset_of(const Perm &g) const;
 private:
  friend std::optional<CosetAction> coset_action(const Group &, const Group &,
                                                 u64, std::optional<u64>);
  StabChain sub_chain_{0};  // copy of H's chain for coset canonicalization
  std::unordered_map<Hash128, unsigned, Hash128Hasher> coset_index_;
};
std::optional<CosetAction> coset_action(
    const Group &G, const Group &H, u64 index_cap,
    std::optional<u64> image_order_hint = {});

// Largest normal subgroup of G inside H (the kernel of the coset action).
std::optional<GroupRef> core(const Group &G, const Group &H, u64 index_cap);

// N1 ∩ N2 for normal subgroups, via the kernel of N1's action on N2-cosets.
std::optional<GroupRef> intersect_normals(const Group &G, const Group &N1,
                                          const Group &N2, u64 index_cap);

// G/N as a permutation group plus an evaluable epimorphism. Throws
// NormalityError if N is not normal; nullopt when past the index cap.
struct Quotient {
  GroupRef group;
  GroupRef kernel;
  std::function<Perm(const Perm &)> map;
  std::shared_ptr<CosetAction> cosets;  // set when realized by coset action
};
std::optional<Quotient> quotient(const Group &G, const Group &N,
                                 u64 index_cap, bool need_reps = false);

// Center, computed by structure-aware paths (abelian short-circuit, orbit
// decomposition, centralizer-in-Sym for transitive groups, bounded element
// streaming). nullopt when every path is past its cap.
std::optional<GroupRef> center(const Group &G, u64 element_cap);

// Elements of G commuting with every generator of H; bounded streaming.
std::optional<GroupRef> centralizer(const Group &G, const Group &H,
                                    u64 element_cap);

// Elements of G normalizing H; bounded streaming.
std::optional<GroupRef> normalizer(const Group &G, const Group &H,
                                   u64 element_cap);

// |A ∩ B| and the intersection itself, by streaming the smaller side.
std::optional<GroupRef> intersect_streaming(const Group &A, const Group &B,
                                            u64 element_cap);

// Splits G into independent factors along its orbits when the pointwise
// stabilizers multiply up to |G|. Each part acts on the full degree.
std::optional<std::vector<GroupRef>> orbit_decomposition(const Group &G);

// Relabels a group supported on `points` onto degree |points|.
GroupRef restrict_to_points(const Group &G, const std::vector<Point> &points);
Perm restrict_perm(const Perm &g, const std::vector<Point> &points);

}  // namespace sigmalib
