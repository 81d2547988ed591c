#include "sigmalib/lattice.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <mutex>

namespace sigmalib {

std::size_t ElemSet::count() const {
  std::size_t c = 0;
  for (u64 w : w_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool ElemSet::subset_of(const ElemSet &o) const {
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i] & ~o.w_[i]) return false;
  return true;
}

bool ElemSet::lex_less(const ElemSet &o) const {
  for (std::size_t i = 0; i < w_.size(); ++i) {
    u64 diff = w_[i] ^ o.w_[i];
    if (diff) {
      u64 low = diff & (~diff + 1);
      return (w_[i] & low) != 0;
    }
  }
  return false;
}

ElemSet ElemSet::intersect(const ElemSet &o) const {
  ElemSet r(n_);
  for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
  return r;
}

Hash128 ElemSet::hash() const {
  std::vector<std::uint32_t> words;
  words.reserve(w_.size() * 2);
  for (u64 w : w_) {
    words.push_back(static_cast<std::uint32_t>(w));
    words.push_back(static_cast<std::uint32_t>(w >> 32));
  }
  return hash_words(words.data(), words.size());
}

std::shared_ptr<SmallModel> SmallModel::build(GroupRef G, u64 element_cap) {
  if (G->order() > element_cap) return nullptr;
  auto m = std::make_shared<SmallModel>();
  m->G_ = G;
  m->elems_.reserve(G->order());
  ElementStream stream(*G);
  do {
    m->elems_.push_back(stream.current());
  } while (stream.next());
  std::sort(m->elems_.begin(), m->elems_.end());
  m->idx_.reserve(m->elems_.size() * 2);
  for (unsigned i = 0; i < m->elems_.size(); ++i)
    m->idx_.emplace(m->elems_[i].hash(), i);
  m->inv_.resize(m->elems_.size());
  m->ord_.resize(m->elems_.size());
  for (unsigned i = 0; i < m->elems_.size(); ++i) {
    m->inv_[i] = static_cast<unsigned>(m->index_of(m->elems_[i].inverse()));
    m->ord_[i] = m->elems_[i].order();
  }
  if (m->elems_.size() <= 1500) {
    std::size_t n = m->elems_.size();
    m->mul_.assign(n, std::vector<unsigned>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        m->mul_[a][b] = static_cast<unsigned>(
            m->index_of(compose(m->elems_[a], m->elems_[b])));
  }
  return m;
}

std::size_t SmallModel::index_of(const Perm &p) const {
  auto it = idx_.find(p.hash());
  if (it == idx_.end())
    throw InternalInconsistency("SmallModel: element not in group");
  return it->second;
}

std::size_t SmallModel::mul(std::size_t a, std::size_t b) const {
  if (!mul_.empty()) return mul_[a][b];
  return index_of(compose(elems_[a], elems_[b]));
}

ElemSet SmallModel::closure(const std::vector<std::size_t> &gens) const {
  ElemSet s = empty_set();
  s.set(0);  // identity is index 0 in lexicographic order
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t g : gens) {
      std::size_t y = mul(x, g);
      if (!s.test(y)) {
        s.set(y);
        queue.push_back(y);
      }
    }
  }
  return s;
}

ElemSet SmallModel::set_of_group(const Group &H) const {
  ElemSet s = empty_set();
  ElementStream stream(H);
  do {
    s.set(index_of(stream.current()));
  } while (stream.next());
  return s;
}

std::vector<std::size_t> SmallModel::generators_of_set(const ElemSet &s) const {
  std::vector<std::size_t> gens;
  ElemSet have = empty_set();
  have.set(0);
  for (std::size_t i = 0; i < size(); ++i) {
    if (!s.test(i) || have.test(i)) continue;
    gens.push_back(i);
    have = closure(gens);
    if (have.count() == s.count()) break;
  }
  return gens;
}

GroupRef SmallModel::group_from_set(const ElemSet &s) const {
  std::vector<Perm> gens;
  for (std::size_t i : generators_of_set(s)) gens.push_back(elems_[i]);
  return Group::from_generators(G_->degree(), gens, {}, s.count());
}

std::size_t SmallLattice::find(const ElemSet &s) const {
  auto it = find_idx_.find(s.hash());
  return it == find_idx_.end() ? npos : it->second;
}

bool SmallLattice::is_normal_in(std::size_t sub_id, std::size_t amb_id) const {
  const Sub &h = subs[sub_id];
  const Sub &g = subs[amb_id];
  for (std::size_t x : g.gens)
    for (std::size_t a : h.gens)
      if (!h.set.test(model->conj(a, x))) return false;
  return true;
}

ElemSet SmallLattice::core_in(std::size_t sub_id, std::size_t amb_id) const {
  // Largest subset of `sub` closed under conjugation by the ambient; it is
  // automatically a subgroup (the intersection of the conjugates).
  ElemSet cur = subs[sub_id].set;
  const Sub &g = subs[amb_id];
  bool changed = true;
  while (changed) {
    changed = false;
    ElemSet next(cur.size());
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (!cur.test(i)) continue;
      bool keep = true;
      for (std::size_t x : g.gens)
        if (!cur.test(model->conj(i, x))) {
          keep = false;
          break;
        }
      if (keep)
        next.set(i);
      else
        changed = true;
    }
    cur = next;
  }
  return cur;
}

ElemSet SmallLattice::conjugate_set(const ElemSet &s, std::size_t x) const {
  ElemSet r(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.test(i)) r.set(model->conj(i, x));
  return r;
}

std::size_t SmallLattice::join(std::size_t a, std::size_t b) const {
  std::vector<std::size_t> gens = subs[a].gens;
  gens.insert(gens.end(), subs[b].gens.begin(), subs[b].gens.end());
  std::size_t id = find(model->closure(gens));
  if (id == npos) throw InternalInconsistency("lattice join missing");
  return id;
}

std::shared_ptr<const SmallLattice> build_lattice(GroupRef G,
                                                  const CapConfig &caps) {
  if (G->order() > caps.subgroup_cap) return nullptr;
  auto model = model_for(G, caps.subgroup_cap);
  if (!model) return nullptr;

  struct Rec {
    ElemSet set;
    std::vector<std::size_t> gens;
  };
  std::vector<Rec> recs;
  std::unordered_map<Hash128, std::size_t, Hash128Hasher> seen;
  auto add = [&](ElemSet s, std::vector<std::size_t> gens) -> std::size_t {
    Hash128 h = s.hash();
    auto it = seen.find(h);
    if (it != seen.end()) return it->second;
    std::size_t id = recs.size();
    seen.emplace(h, id);
    recs.push_back({std::move(s), std::move(gens)});
    return id;
  };

  ElemSet triv = model->empty_set();
  triv.set(0);
  add(std::move(triv), {});

  // Distinct cyclic subgroups first.
  std::vector<std::size_t> cyclic_ids;
  for (std::size_t e = 1; e < model->size(); ++e) {
    std::size_t before = recs.size();
    std::size_t id = add(model->closure({e}), {e});
    if (recs.size() > before) cyclic_ids.push_back(id);
  }

  // Join-closure: every subgroup is a join of cyclic subgroups.
  std::deque<std::size_t> work;
  for (std::size_t i = 0; i < recs.size(); ++i) work.push_back(i);
  constexpr std::size_t kLatticeBound = 250000;
  while (!work.empty()) {
    std::size_t hid = work.front();
    work.pop_front();
    for (std::size_t cid : cyclic_ids) {
      if (recs[cid].set.subset_of(recs[hid].set)) continue;
      std::vector<std::size_t> gens = recs[hid].gens;
      gens.push_back(recs[cid].gens[0]);
      ElemSet joined = model->closure(gens);
      std::size_t before = recs.size();
      std::size_t id = add(std::move(joined), std::move(gens));
      if (recs.size() > before) {
        if (recs.size() > kLatticeBound) return nullptr;
        work.push_back(id);
      }
    }
  }

  auto lat = std::make_shared<SmallLattice>();
  lat->model = model;
  lat->subs.reserve(recs.size());
  for (auto &r : recs) {
    SmallLattice::Sub s;
    s.order = r.set.count();
    s.set = std::move(r.set);
    s.gens = std::move(r.gens);
    lat->subs.push_back(std::move(s));
  }
  std::sort(lat->subs.begin(), lat->subs.end(),
            [](const SmallLattice::Sub &a, const SmallLattice::Sub &b) {
              if (a.order != b.order) return a.order < b.order;
              return a.set.lex_less(b.set);
            });
  lat->trivial_id = 0;
  lat->full_id = lat->subs.size() - 1;
  for (std::size_t i = 0; i < lat->subs.size(); ++i) {
    auto &sub = lat->subs[i];
    bool normal = true;
    for (std::size_t gi : lat->subs[lat->full_id].gens) {
      for (std::size_t a : sub.gens)
        if (!sub.set.test(model->conj(a, gi))) {
          normal = false;
          break;
        }
      if (!normal) break;
    }
    sub.normal_in_g = normal;
  }
  for (std::size_t i = 0; i < lat->subs.size(); ++i)
    lat->find_idx_.emplace(lat->subs[i].set.hash(), i);
  return lat;
}

namespace {
// Strong per-group cache. Entries hold their GroupRef, so a live entry pins
// its key address; a crude size cap bounds the footprint.
std::mutex cache_mutex;
struct CacheEntry {
  std::shared_ptr<SmallModel> model;
  std::shared_ptr<const SmallLattice> lattice;
};
std::unordered_map<const Group *, CacheEntry> cache;
constexpr std::size_t kCacheEntries = 4096;

void trim_cache_locked() {
  if (cache.size() > kCacheEntries) cache.clear();
}
}  // namespace

std::shared_ptr<SmallModel> model_for(GroupRef G, u64 element_cap) {
  {
    std::lock_guard<std::mutex> lk(cache_mutex);
    auto it = cache.find(G.get());
    if (it != cache.end() && it->second.model) return it->second.model;
  }
  auto m = SmallModel::build(G, element_cap);
  if (m) {
    std::lock_guard<std::mutex> lk(cache_mutex);
    trim_cache_locked();
    cache[G.get()].model = m;
  }
  return m;
}

std::shared_ptr<const SmallLattice> lattice_for(GroupRef G,
                                                const CapConfig &caps) {
  {
    std::lock_guard<std::mutex> lk(cache_mutex);
    auto it = cache.find(G.get());
    if (it != cache.end() && it->second.lattice) return it->second.lattice;
  }
  auto l = build_lattice(G, caps);
  if (l) {
    std::lock_guard<std::mutex> lk(cache_mutex);
    trim_cache_locked();
    cache[G.get()].lattice = l;
  }
  return l;
}

}  // namespace sigmalib
