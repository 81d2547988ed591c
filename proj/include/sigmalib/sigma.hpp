#pragma once

#include <optional>
#include <string>

#include "sigmalib/structure.hpp"

namespace sigmalib {

// A block of a partition of the primes: a listed finite block, the implicit
// complement block, or a single prime (the Sylow partition).
struct BlockId {
  enum class Kind { Listed, Rest, Prime };
  Kind kind = Kind::Rest;
  u64 value = 0;  // listed index, or the prime itself

  static BlockId listed(u64 i) { return {Kind::Listed, i}; }
  static BlockId rest() { return {Kind::Rest, 0}; }
  static BlockId prime(u64 p) { return {Kind::Prime, p}; }
  bool operator==(const BlockId &o) const {
    return kind == o.kind && value == o.value;
  }
  bool operator<(const BlockId &o) const {
    return kind != o.kind ? kind < o.kind : value < o.value;
  }
};

// Partition of all primes: explicit disjoint blocks plus the implicit
// complement block, so block_of is total. "sylow" puts each prime alone.
class SigmaPartition {
 public:
  static SigmaPartition parse(const std::string &text);
  static SigmaPartition sylow();

  bool is_sylow() const { return sylow_; }
  const std::vector<std::vector<u64>> &blocks() const { return blocks_; }
  bool rest_written() const { return rest_written_; }

  BlockId block_of(u64 prime) const;
  bool in_block(u64 prime, const BlockId &b) const;
  std::string block_label(const BlockId &b) const;
  std::string str() const;

  // Distinct blocks meeting the primes of n, sorted.
  std::vector<BlockId> blocks_of_number(u64 n) const;
  std::vector<BlockId> blocks_of_factored(const Factorization &f) const;
  bool is_primary_number(u64 n) const {
    return blocks_of_number(n).size() <= 1;
  }
  // The largest divisor of n supported on block b.
  u64 part_of(const Factorization &f, const BlockId &b) const;
  bool is_block_number(const Factorization &f, const BlockId &b) const;

 private:
  bool sylow_ = false;
  bool rest_written_ = false;
  std::vector<std::vector<u64>> blocks_;
};

GroupRef O_upper(GroupRef G, const SigmaPartition &sigma, const BlockId &i,
                 const CapConfig &caps);
std::optional<GroupRef> O_lower(GroupRef G, const SigmaPartition &sigma,
                                const BlockId &i, const CapConfig &caps);

enum class ResidualTag { SigmaNilpotent, SigmaSoluble, SigmaSupersoluble,
                         Soluble };
std::optional<GroupRef> residual(GroupRef G, const SigmaPartition &sigma,
                                 ResidualTag tag, const CapConfig &caps);

enum class RadicalTag { Soluble, SigmaSoluble };
std::optional<GroupRef> radical_subgroup(GroupRef G,
                                         const SigmaPartition &sigma,
                                         RadicalTag tag,
                                         const CapConfig &caps);

struct HallResult {
  Verdict verdict = Verdict::undecided("unset");
  GroupRef subgroup;  // set on Yes
};
HallResult hall_subgroup(GroupRef G, const SigmaPartition &sigma,
                         const BlockId &i, const CapConfig &caps);

struct HallSet {
  std::vector<std::pair<BlockId, GroupRef>> members;
};
struct CompleteHallResult {
  Verdict verdict = Verdict::undecided("unset");
  HallSet set;
};
CompleteHallResult complete_hall_set(GroupRef G, const SigmaPartition &sigma,
                                     const CapConfig &caps);

struct Classification {
  Verdict sigma_primary = Verdict::undecided("unset");
  Verdict sigma_nilpotent = Verdict::undecided("unset");
  Verdict sigma_soluble = Verdict::undecided("unset");
  Verdict sigma_supersoluble = Verdict::undecided("unset");
  Verdict sigma_sc = Verdict::undecided("unset");
  Verdict sigma_perfect = Verdict::undecided("unset");
  Verdict sigma_full = Verdict::undecided("unset");
  Verdict soluble = Verdict::undecided("unset");
  std::optional<GroupRef> n_residual;        // G^{N_sigma}
  std::optional<GroupRef> s_residual;        // G^{S_sigma}
  std::optional<GroupRef> u_residual;        // G^{U_sigma}
  GroupRef soluble_residual_group;
};
Classification classify(GroupRef G, const SigmaPartition &sigma,
                        const CapConfig &caps);

// Iterated sigma-nilpotent-residual route to sigma-solubility.
Verdict is_sigma_soluble_quick(GroupRef G, const SigmaPartition &sigma,
                               const CapConfig &caps);

// Lattice-backed context for the brute-force sweeps: the sigma-subnormal
// subgroup set (fixed point of the chain-step rule) and per-subgroup
// sigma-permutability by the definition route.
struct SigmaContext {
  GroupRef G;
  SigmaPartition sigma;
  std::shared_ptr<const SmallLattice> lat;
  std::vector<BlockId> relevant;  // blocks meeting pi(G)
  bool sigma_full = false;
  std::vector<std::vector<std::size_t>> hall_ids;  // per relevant block
  std::vector<char> subnormal;    // per lattice id
  std::vector<char> permutable;   // per lattice id (R1)
};
// Shared and cached per (group, sigma); hold the pointer for the duration of
// related work so repeated lookups hit the cache. Null when past the caps.
std::shared_ptr<const SigmaContext> make_sigma_context(
    GroupRef G, const SigmaPartition &sigma, const CapConfig &caps);

Verdict is_sigma_subnormal(GroupRef G, const SigmaPartition &sigma,
                           const Subgroup &A, const CapConfig &caps);

// Routes R1 (all Hall subgroups via enumeration) and R2 (one complete Hall
// set against all conjugates); they must agree when both decide.
Verdict is_sigma_permutable(GroupRef G, const SigmaPartition &sigma,
                            const Subgroup &A, const CapConfig &caps);
Verdict is_sigma_permutable_r2(GroupRef G, const SigmaPartition &sigma,
                               const Subgroup &A, const CapConfig &caps);
// Normalizer fast path for a sigma_i-subgroup A: O^{sigma_i}(G) <= N_G(A).
Verdict is_sigma_permutable_r3(GroupRef G, const SigmaPartition &sigma,
                               const BlockId &i, const Subgroup &A,
                               const CapConfig &caps);

// sigma_i'-elements induce power automorphisms on O_{sigma_i}(G/N) for every
// sigma-soluble normal N.
Verdict satisfies_N_sigma_i(GroupRef G, const SigmaPartition &sigma,
                            const BlockId &i, const CapConfig &caps);

}  // namespace sigmalib
