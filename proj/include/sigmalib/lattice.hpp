#pragma once

#include <memory>
#include <unordered_map>

#include "sigmalib/group.hpp"
#include "sigmalib/group_ops.hpp"

namespace sigmalib {

// Bitset over element indices of a SmallModel.
class ElemSet {
 public:
  ElemSet() = default;
  explicit ElemSet(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i >> 6] |= (u64(1) << (i & 63)); }
  bool test(std::size_t i) const {
    return (w_[i >> 6] >> (i & 63)) & 1;
  }
  std::size_t count() const;
  std::size_t size() const { return n_; }
  bool subset_of(const ElemSet &o) const;
  bool operator==(const ElemSet &o) const { return w_ == o.w_; }
  // Order by smallest differing element: the set containing it comes first,
  // matching "lexicographically smallest sorted element list".
  bool lex_less(const ElemSet &o) const;
  ElemSet intersect(const ElemSet &o) const;
  Hash128 hash() const;
  const std::vector<u64> &words() const { return w_; }

 private:
  std::size_t n_ = 0;
  std::vector<u64> w_;
};

// Full element table of a small group: products, inverses, conjugation by
// index. The backing order is the lexicographic order on image vectors, so
// index 0 is the identity.
class SmallModel {
 public:
  // nullptr when |G| exceeds the cap.
  static std::shared_ptr<SmallModel> build(GroupRef G, u64 element_cap);

  const GroupRef &group() const { return G_; }
  std::size_t size() const { return elems_.size(); }
  const Perm &elem(std::size_t i) const { return elems_[i]; }
  std::size_t index_of(const Perm &p) const;
  std::size_t mul(std::size_t a, std::size_t b) const;
  std::size_t inv(std::size_t a) const { return inv_[a]; }
  std::size_t conj(std::size_t a, std::size_t x) const {
    return mul(mul(inv_[x], a), x);
  }
  u64 elem_order(std::size_t a) const { return ord_[a]; }

  ElemSet empty_set() const { return ElemSet(size()); }
  // Closure of {id} ∪ seed under right multiplication by seed elements.
  ElemSet closure(const std::vector<std::size_t> &gens) const;
  ElemSet set_of_group(const Group &H) const;
  GroupRef group_from_set(const ElemSet &s) const;
  std::vector<std::size_t> generators_of_set(const ElemSet &s) const;

 private:
  GroupRef G_;
  std::vector<Perm> elems_;
  std::unordered_map<Hash128, unsigned, Hash128Hasher> idx_;
  std::vector<unsigned> inv_;
  std::vector<u64> ord_;
  std::vector<std::vector<unsigned>> mul_;  // full table for small sizes
};

// The complete subgroup list of a small group, as bitsets in canonical order
// (ascending order, then lexicographic element list).
struct SmallLattice {
  std::shared_ptr<SmallModel> model;
  struct Sub {
    ElemSet set;
    std::vector<std::size_t> gens;
    u64 order = 0;
    bool normal_in_g = false;
  };
  std::vector<Sub> subs;
  std::size_t trivial_id = 0, full_id = 0;

  std::size_t find(const ElemSet &s) const;  // npos if absent
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  bool is_normal_in(std::size_t sub_id, std::size_t amb_id) const;
  // Largest subgroup of `sub` invariant under conjugation by `amb`.
  ElemSet core_in(std::size_t sub_id, std::size_t amb_id) const;
  ElemSet conjugate_set(const ElemSet &s, std::size_t x) const;
  std::size_t join(std::size_t a, std::size_t b) const;  // id of <A ∪ B>

 private:
  mutable std::unordered_map<Hash128, std::size_t, Hash128Hasher> find_idx_;
  friend std::shared_ptr<const SmallLattice> build_lattice(GroupRef,
                                                           const CapConfig &);
};

// Exhaustive subgroup enumeration by join-closure over the cyclic subgroups.
// Exact below caps; nullptr above (the caller reports Undecided).
std::shared_ptr<const SmallLattice> build_lattice(GroupRef G,
                                                  const CapConfig &caps);

// Per-group lattice/model cache, keyed by the group object.
std::shared_ptr<const SmallLattice> lattice_for(GroupRef G,
                                                const CapConfig &caps);
std::shared_ptr<SmallModel> model_for(GroupRef G, u64 element_cap);

}  // namespace sigmalib
