#include "sigmalib/chain.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace sigmalib {

StabChain::StabChain(unsigned degree, std::vector<Point> preset_base)
    : degree_(degree) {
  rank_.resize(degree_);
  std::iota(rank_.begin(), rank_.end(), 0u);
  unsigned r = 0;
  for (Point p : preset_base) rank_[p] = r++;
  // Remaining points keep their natural order after the preset prefix.
  {
    std::vector<char> preset(degree_, 0);
    for (Point p : preset_base) preset[p] = 1;
    unsigned next = static_cast<unsigned>(preset_base.size());
    for (Point p = 0; p < degree_; ++p)
      if (!preset[p]) rank_[p] = next++;
  }
  for (Point p : preset_base) append_level(p);
  preset_size_ = static_cast<unsigned>(preset_base.size());
}

unsigned StabChain::rank(Point p) const { return rank_[p]; }

void StabChain::append_level(Point base) {
  Level lv;
  lv.base = base;
  lv.pos.assign(degree_, -1);
  lv.from.assign(degree_, 0);
  lv.via.assign(degree_, -1);
  lv.orbit = {base};
  lv.pos[base] = 0;
  levels_.push_back(std::move(lv));
}

void StabChain::rebuild_orbit(unsigned level) {
  Level &lv = levels_[level];
  std::fill(lv.pos.begin(), lv.pos.end(), -1);
  lv.orbit.assign(1, lv.base);
  lv.pos[lv.base] = 0;
  for (std::size_t head = 0; head < lv.orbit.size(); ++head) {
    Point p = lv.orbit[head];
    for (int gi : lv.gen_idx) {
      Point q = sgens_[gi][p];
      if (lv.pos[q] < 0) {
        lv.pos[q] = static_cast<int>(lv.orbit.size());
        lv.orbit.push_back(q);
        lv.from[q] = p;
        lv.via[q] = gi;
      }
    }
  }
}

Perm StabChain::transversal(unsigned level, Point pt) const {
  const Level &lv = levels_[level];
  assert(lv.pos[pt] >= 0);
  std::vector<int> path;
  Point q = pt;
  while (q != lv.base) {
    path.push_back(lv.via[q]);
    q = lv.from[q];
  }
  Perm u = Perm::identity(degree_);
  for (auto it = path.rbegin(); it != path.rend(); ++it)
    u = compose(u, sgens_[*it]);
  return u;
}

std::pair<Perm, unsigned> StabChain::sift_from(const Perm &g,
                                               unsigned start) const {
  Perm r = g;
  for (unsigned j = start; j < levels_.size(); ++j) {
    const Level &lv = levels_[j];
    Point beta = r[lv.base];
    if (beta == lv.base) continue;
    if (lv.pos[beta] < 0) return {r, j};
    // Peel transversal inverses along the Schreier path.
    while (beta != lv.base) {
      r = compose(r, sgens_inv_[lv.via[beta]]);
      beta = lv.from[beta];
    }
  }
  return {r, static_cast<unsigned>(levels_.size())};
}

Perm StabChain::sift(const Perm &g) const { return sift_from(g, 0).first; }

bool StabChain::contains(const Perm &g) const {
  if (g.degree() != degree_) throw DimensionError("contains: degree mismatch");
  auto [r, lvl] = sift_from(g, 0);
  return lvl == levels_.size() && r.is_identity();
}

void StabChain::insert_residue(const Perm &r, unsigned fix_prefix) {
  if (fix_prefix == levels_.size()) {
    // r fixes every current base point; it needs a fresh one.
    Point best = degree_;
    for (Point p = 0; p < degree_; ++p)
      if (r[p] != p && (best == degree_ || rank_[p] < rank_[best])) best = p;
    assert(best < degree_);
    append_level(best);
  }
  int gi = static_cast<int>(sgens_.size());
  sgens_.push_back(r);
  sgens_inv_.push_back(r.inverse());
  fix_prefix_.push_back(fix_prefix);
  for (unsigned k = 0; k <= fix_prefix && k < levels_.size(); ++k)
    levels_[k].gen_idx.push_back(gi);
}

int StabChain::scan_level(unsigned level) {
  rebuild_orbit(level);
  Level &lv = levels_[level];
  std::size_t n_gens = lv.gen_idx.size();
  for (std::size_t oi = 0; oi < lv.orbit.size(); ++oi) {
    Point p = lv.orbit[oi];
    Perm u_p = transversal(level, p);
    for (std::size_t si = 0; si < n_gens; ++si) {
      const Perm &s = sgens_[lv.gen_idx[si]];
      Point ps = s[p];
      Perm sch = compose(compose(u_p, s), transversal(level, ps).inverse());
      if (sch.is_identity()) continue;
      auto [res, at] = sift_from(sch, level + 1);
      if (at == levels_.size() && res.is_identity()) continue;
      insert_residue(res, at);
      // insert_residue appends a level when needed, so index `at` exists now
      return static_cast<int>(at);
    }
  }
  return -1;
}

void StabChain::resolve(unsigned from_level) {
  if (levels_.empty()) return;
  int i = std::min(static_cast<int>(from_level),
                   static_cast<int>(levels_.size()) - 1);
  while (i >= 0) {
    if (expected_ && order() == expected_) return;
    int fail = scan_level(static_cast<unsigned>(i));
    if (fail < 0)
      --i;
    else
      i = fail;
  }
}

bool StabChain::extend(const Perm &g) {
  if (g.degree() != degree_) throw DimensionError("extend: degree mismatch");
  if (g.is_identity()) return false;
  if (expected_ && order() == expected_) {
    // Chain already complete; membership is decidable.
    return false;
  }
  auto [r, at] = sift_from(g, 0);
  if (at == levels_.size() && r.is_identity()) return false;
  insert_residue(r, at);
  resolve(at);
  return true;
}

u64 StabChain::order() const {
  u64 n = 1;
  for (const Level &lv : levels_) n = checked_mul(n, lv.orbit.size());
  return n;
}

Factorization StabChain::order_factored() const {
  Factorization f;
  for (const Level &lv : levels_) factorize_into(lv.orbit.size(), f);
  return f;
}

std::vector<Perm> StabChain::level_gens(unsigned level) const {
  std::vector<Perm> out;
  for (std::size_t i = 0; i < sgens_.size(); ++i)
    if (fix_prefix_[i] >= level) out.push_back(sgens_[i]);
  return out;
}

}  // namespace sigmalib
