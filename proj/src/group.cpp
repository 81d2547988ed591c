#include "sigmalib/group.hpp"

#include <algorithm>

namespace sigmalib {

Group::Group(unsigned degree, std::vector<Perm> gens, MetaPtr meta,
             std::optional<u64> expected_order)
    : degree_(degree), chain_(degree), meta_(std::move(meta)) {
  for (const Perm &g : gens) {
    if (g.degree() != degree_)
      throw DimensionError("group generators have mixed degrees");
  }
  if (expected_order) chain_.set_expected_order(*expected_order);
  for (Perm &g : gens) {
    if (!g.is_identity()) {
      chain_.extend(g);
      gens_.push_back(std::move(g));
    }
  }
  order_ = chain_.order();
  order_fac_ = chain_.order_factored();
  if (expected_order && order_ != *expected_order)
    throw InternalInconsistency("constructed group order " +
                                std::to_string(order_) + " != expected " +
                                std::to_string(*expected_order));
}

GroupRef Group::from_generators(unsigned degree, std::vector<Perm> gens,
                                MetaPtr meta,
                                std::optional<u64> expected_order) {
  return GroupRef(
      new Group(degree, std::move(gens), std::move(meta), expected_order));
}

GroupRef Group::trivial(unsigned degree) {
  return from_generators(degree, {});
}

bool Group::is_abelian() const {
  {
    std::lock_guard<std::mutex> lk(cache_mutex_);
    if (abelian_) return *abelian_;
  }
  bool ab = true;
  for (std::size_t i = 0; i < gens_.size() && ab; ++i)
    for (std::size_t j = i + 1; j < gens_.size() && ab; ++j)
      if (compose(gens_[i], gens_[j]) != compose(gens_[j], gens_[i]))
        ab = false;
  std::lock_guard<std::mutex> lk(cache_mutex_);
  abelian_ = ab;
  return ab;
}

Perm Group::random_element(Rng &rng) const {
  Perm g = Perm::identity(degree_);
  // Unique transversal factorization makes this exactly uniform.
  for (unsigned lv = chain_.num_levels(); lv-- > 0;) {
    const auto &orbit = chain_.orbit(lv);
    Point p = orbit[rng.below(orbit.size())];
    g = compose(g, chain_.transversal(lv, p));
  }
  return g;
}

std::vector<Point> Group::moved_points() const {
  std::vector<char> moved(degree_, 0);
  for (const Perm &g : gens_)
    for (Point p = 0; p < degree_; ++p)
      if (g[p] != p) moved[p] = 1;
  std::vector<Point> out;
  for (Point p = 0; p < degree_; ++p)
    if (moved[p]) out.push_back(p);
  return out;
}

GroupRef Group::cached_center() const {
  std::lock_guard<std::mutex> lk(cache_mutex_);
  return center_;
}

void Group::cache_center(GroupRef z) const {
  std::lock_guard<std::mutex> lk(cache_mutex_);
  center_ = std::move(z);
}

Subgroup::Subgroup(GroupRef amb, GroupRef grp)
    : ambient(std::move(amb)), group(std::move(grp)) {
  if (ambient->degree() != group->degree())
    throw DimensionError("subgroup degree differs from ambient");
  for (const Perm &g : group->generators())
    if (!ambient->contains(g))
      throw NormalityError("subgroup generator outside ambient group");
}

ElementStream::ElementStream(const Group &g)
    : chain_(&g.chain()), degree_(g.degree()) {
  unsigned L = chain_->num_levels();
  idx_.assign(L, 0);
  transversals_.resize(L);
  // Cache transversal perms per level unless the table would be huge; the
  // on-demand fallback walks the Schreier vector instead.
  constexpr std::size_t kCacheBudgetWords = std::size_t(1) << 24;
  for (unsigned lv = 0; lv < L; ++lv) {
    const auto &orbit = chain_->orbit(lv);
    size_ = checked_mul(size_, orbit.size());
    if (orbit.size() * static_cast<std::size_t>(degree_) <=
        kCacheBudgetWords) {
      transversals_[lv].reserve(orbit.size());
      for (Point p : orbit)
        transversals_[lv].push_back(chain_->transversal(lv, p));
    }
  }
  suffix_.assign(L + 1, Perm::identity(degree_));
  if (L > 0) recompute_from(L - 1);
  current_ = suffix_.empty() ? Perm::identity(degree_) : suffix_[0];
}

void ElementStream::recompute_from(std::size_t level) {
  for (std::size_t i = level + 1; i-- > 0;) {
    const Perm &u =
        !transversals_[i].empty()
            ? transversals_[i][idx_[i]]
            : chain_->transversal(static_cast<unsigned>(i),
                                  chain_->orbit(static_cast<unsigned>(i))[idx_[i]]);
    suffix_[i] = compose(suffix_[i + 1], u);
    if (i == 0) break;
  }
  current_ = suffix_[0];
}

bool ElementStream::next() {
  if (done_) return false;
  std::size_t L = idx_.size();
  std::size_t lv = 0;
  while (lv < L) {
    if (++idx_[lv] < chain_->orbit(static_cast<unsigned>(lv)).size()) break;
    idx_[lv] = 0;
    ++lv;
  }
  if (lv == L) {
    done_ = true;
    return false;
  }
  recompute_from(lv);
  return true;
}

}  // namespace sigmalib
