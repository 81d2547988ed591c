#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "sigmalib/chain.hpp"
#include "sigmalib/perm.hpp"
#include "sigmalib/util.hpp"

namespace sigmalib {

class Group;
using GroupRef = std::shared_ptr<const Group>;

// Construction metadata, kept when a group is realized from an expression.
// Factor-wise fast paths consult it; generic paths must agree with them.
struct Meta {
  enum class Kind { Atomic, Cyclic, Direct, Semidirect };
  Kind kind = Kind::Atomic;
  std::string name;  // Atomic
  u64 n = 0, m = 0, k = 0;  // Cyclic(n) / Semidirect(n, m, k): C_n x| C_m, x -> x^k

  struct Factor {
    GroupRef group;   // on its own degree
    unsigned offset;  // point range [offset, offset + group->degree())
  };
  std::vector<Factor> factors;  // Direct, flattened left to right
};
using MetaPtr = std::shared_ptr<const Meta>;

// Immutable permutation group with a stabilizer-chain certificate.
// Order and membership are exact; no operation enumerates elements
// implicitly. Safe to share across threads; lazy caches are synchronized.
class Group : public std::enable_shared_from_this<Group> {
 public:
  GroupRef self() const { return shared_from_this(); }
  static GroupRef from_generators(unsigned degree, std::vector<Perm> gens,
                                  MetaPtr meta = {},
                                  std::optional<u64> expected_order = {});
  static GroupRef trivial(unsigned degree);

  unsigned degree() const { return degree_; }
  const std::vector<Perm> &generators() const { return gens_; }
  const StabChain &chain() const { return chain_; }
  u64 order() const { return order_; }
  const Factorization &order_factored() const { return order_fac_; }
  bool contains(const Perm &p) const { return chain_.contains(p); }
  bool is_trivial() const { return order_ == 1; }
  bool is_abelian() const;
  MetaPtr meta() const { return meta_; }

  Perm random_element(Rng &rng) const;  // uniform
  std::vector<Point> moved_points() const;

  // Lazily computed caches shared between callers.
  GroupRef cached_center() const;
  void cache_center(GroupRef z) const;

 private:
  Group(unsigned degree, std::vector<Perm> gens, MetaPtr meta,
        std::optional<u64> expected_order);

  unsigned degree_;
  std::vector<Perm> gens_;
  StabChain chain_;
  u64 order_;
  Factorization order_fac_;
  MetaPtr meta_;

  mutable std::mutex cache_mutex_;
  mutable std::optional<bool> abelian_;
  mutable GroupRef center_;
};

// A subgroup handle: `group` lives inside `ambient` (same degree, generators
// verified members on construction).
struct Subgroup {
  GroupRef ambient;
  GroupRef group;
  Subgroup() = default;
  Subgroup(GroupRef amb, GroupRef grp);
  u64 order() const { return group->order(); }
};

// Streams group elements without storing them, in a fixed deterministic
// order (mixed-radix over the chain transversals).
class ElementStream {
 public:
  explicit ElementStream(const Group &g);
  const Perm &current() const { return current_; }
  bool next();  // false once exhausted
  bool done() const { return done_; }
  u64 size() const { return size_; }

 private:
  void recompute_from(std::size_t level);
  const StabChain *chain_;
  unsigned degree_;
  std::vector<std::size_t> idx_;
  std::vector<std::vector<Perm>> transversals_;  // per level, orbit order
  std::vector<Perm> suffix_;  // suffix_[i] = product over levels >= i
  Perm current_;
  bool done_ = false;
  u64 size_ = 1;
};

}  // namespace sigmalib
