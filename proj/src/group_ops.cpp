#include "sigmalib/group_ops.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace sigmalib {

bool is_subgroup_of(const Group &sub, const Group &big) {
  if (sub.degree() != big.degree()) return false;
  for (const Perm &g : sub.generators())
    if (!big.contains(g)) return false;
  return true;
}

bool is_normal_in(const Group &big, const Group &sub) {
  for (const Perm &x : big.generators())
    for (const Perm &h : sub.generators())
      if (!sub.contains(conjugate(h, x))) return false;
  return true;
}

bool equal_groups(const Group &a, const Group &b) {
  return a.order() == b.order() && is_subgroup_of(a, b);
}

GroupRef generated_by(unsigned degree, const std::vector<Perm> &gens,
                      std::optional<u64> expected_order) {
  return Group::from_generators(degree, gens, {}, expected_order);
}

GroupRef join_groups(const Group &a, const Group &b) {
  if (a.degree() != b.degree()) throw DimensionError("join: degree mismatch");
  std::vector<Perm> gens = a.generators();
  for (const Perm &g : b.generators()) gens.push_back(g);
  return generated_by(a.degree(), gens);
}

GroupRef normal_closure(const Group &G, const std::vector<Perm> &seed) {
  StabChain chain(G.degree());
  std::vector<Perm> gens;
  std::deque<Perm> work;
  auto add = [&](const Perm &p) {
    if (chain.extend(p)) {
      gens.push_back(p);
      work.push_back(p);
    }
  };
  for (const Perm &s : seed) add(s);
  while (!work.empty()) {
    Perm x = work.front();
    work.pop_front();
    for (const Perm &g : G.generators()) add(conjugate(x, g));
  }
  return Group::from_generators(G.degree(), gens, {}, chain.order());
}

GroupRef derived_subgroup(const Group &G) {
  std::vector<Perm> comms;
  const auto &gens = G.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      comms.push_back(commutator(gens[i], gens[j]));
  return normal_closure(G, comms);
}

std::vector<GroupRef> derived_series(const Group &G) {
  std::vector<GroupRef> series;
  GroupRef cur = G.self();
  series.push_back(cur);
  while (true) {
    GroupRef next = derived_subgroup(*cur);
    if (next->order() == cur->order()) break;
    series.push_back(next);
    cur = next;
    if (cur->is_trivial()) break;
  }
  return series;
}

GroupRef soluble_residual(const Group &G) {
  return derived_series(G).back();
}

bool is_perfect(const Group &G) {
  return derived_subgroup(G)->order() == G.order();
}

Perm coprime_part(const Perm &g, const std::function<bool(u64)> &in_B) {
  u64 ord = g.order();
  u64 m = 1;
  for (auto [p, e] : factorize(ord))
    if (in_B(p)) m = checked_mul(m, checked_pow(p, e));
  return perm_power(g, m);
}

u64 element_order_mod(const Group &N, const Perm &g) {
  u64 ord = g.order();
  for (u64 d : divisors_sorted(ord))
    if (N.contains(perm_power(g, d))) return d;
  return ord;  // unreachable: d == ord gives the identity
}

namespace {

// Combined permutation on domain ⊔ action points.
Perm combine(const Perm &base, const Perm &act) {
  std::vector<Point> img(base.degree() + act.degree());
  for (Point p = 0; p < base.degree(); ++p) img[p] = base[p];
  for (Point p = 0; p < act.degree(); ++p)
    img[base.degree() + p] = base.degree() + act[p];
  return Perm(std::move(img));
}

Perm project(const Perm &comb, unsigned degree) {
  std::vector<Point> img(comb.images().begin(),
                         comb.images().begin() + degree);
  return Perm(std::move(img));
}

}  // namespace

GroupRef kernel_of_action(const Group &G,
                          const std::vector<Perm> &action_images,
                          unsigned action_degree) {
  unsigned deg = G.degree();
  // Only action points actually moved need stabilizing.
  std::vector<char> moved(action_degree, 0);
  for (const Perm &a : action_images)
    for (Point p = 0; p < action_degree; ++p)
      if (a[p] != p) moved[p] = 1;
  std::vector<Point> preset;
  for (Point p = 0; p < action_degree; ++p)
    if (moved[p]) preset.push_back(deg + p);
  StabChain chain(deg + action_degree, preset);
  chain.set_expected_order(G.order());
  const auto &gens = G.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    chain.extend(combine(gens[i], action_images[i]));
  if (chain.order() != G.order())
    throw InternalInconsistency("kernel_of_action: combined chain order");
  // Strong generators fixing every action point generate the kernel.
  u64 image_order = 1;
  unsigned cut = chain.preset_base_size();
  for (unsigned lv = 0; lv < cut; ++lv)
    image_order = checked_mul(image_order, chain.orbit(lv).size());
  std::vector<Perm> kgens;
  for (const Perm &sg : chain.level_gens(cut)) kgens.push_back(project(sg, deg));
  return Group::from_generators(deg, kgens, {}, G.order() / image_order);
}

GroupRef pointwise_stabilizer(const Group &G, const std::vector<Point> &fixed) {
  std::vector<char> is_moved(G.degree(), 0);
  for (Point p : G.moved_points()) is_moved[p] = 1;
  std::vector<Point> preset;
  for (Point p : fixed)
    if (is_moved[p]) preset.push_back(p);
  StabChain chain(G.degree(), preset);
  chain.set_expected_order(G.order());
  for (const Perm &g : G.generators()) chain.extend(g);
  unsigned cut = chain.preset_base_size();
  u64 stab_order = 1;
  for (unsigned lv = cut; lv < chain.num_levels(); ++lv)
    stab_order = checked_mul(stab_order, chain.orbit(lv).size());
  return Group::from_generators(G.degree(), chain.level_gens(cut), {},
                                stab_order);
}

Perm canonical_coset_rep(const StabChain &N, const Perm &g) {
  Perm rep = g;
  for (unsigned lv = 0; lv < N.num_levels(); ++lv) {
    const auto &orbit = N.orbit(lv);
    Point best = orbit[0];
    Point best_img = rep[best];
    for (Point beta : orbit) {
      if (rep[beta] < best_img) {
        best_img = rep[beta];
        best = beta;
      }
    }
    if (best != N.base_point(lv)) rep = compose(N.transversal(lv, best), rep);
  }
  return rep;
}

unsigned CosetAction::coset_of(const Perm &g) const {
  Perm canon = canonical_coset_rep(sub_chain_, g);
  auto it = coset_index_.find(canon.hash());
  if (it == coset_index_.end())
    throw InternalInconsistency("coset_of: element outside the group");
  return it->second;
}

Perm CosetAction::act(const Perm &g) const {
  std::vector<Point> img(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    Perm moved = canonical_coset_rep(sub_chain_, compose(reps[i], g));
    auto it = coset_index_.find(moved.hash());
    if (it == coset_index_.end())
      throw InternalInconsistency("coset action: unknown coset image");
    img[i] = it->second;
  }
  return Perm(std::move(img));
}

std::optional<CosetAction> coset_action(const Group &G, const Group &H,
                                        u64 index_cap,
                                        std::optional<u64> image_order_hint) {
  if (G.order() % H.order() != 0)
    throw InternalInconsistency("coset_action: |H| does not divide |G|");
  u64 index = G.order() / H.order();
  if (index > index_cap) return std::nullopt;

  CosetAction ca;
  ca.sub_chain_ = H.chain();
  ca.reps.push_back(Perm::identity(G.degree()));
  ca.coset_index_.emplace(
      canonical_coset_rep(ca.sub_chain_, ca.reps[0]).hash(), 0u);

  std::vector<std::vector<Point>> images(G.generators().size());
  for (auto &v : images) v.reserve(index);

  for (std::size_t head = 0; head < ca.reps.size(); ++head) {
    for (std::size_t gi = 0; gi < G.generators().size(); ++gi) {
      Perm moved = compose(ca.reps[head], G.generators()[gi]);
      Perm canon = canonical_coset_rep(ca.sub_chain_, moved);
      auto [it, inserted] = ca.coset_index_.emplace(
          canon.hash(), static_cast<unsigned>(ca.reps.size()));
      if (inserted) {
        if (ca.reps.size() >= index)
          throw InternalInconsistency("coset_action: more cosets than index");
        ca.reps.push_back(moved);
      }
      images[gi].push_back(it->second);
    }
  }
  if (ca.reps.size() != index)
    throw InternalInconsistency("coset_action: enumerated " +
                                std::to_string(ca.reps.size()) +
                                " cosets, expected " + std::to_string(index));
  ca.gen_images.reserve(images.size());
  for (auto &img : images) ca.gen_images.emplace_back(std::move(img));
  ca.image = Group::from_generators(static_cast<unsigned>(index),
                                    ca.gen_images, {}, image_order_hint);
  return ca;
}

std::optional<GroupRef> core(const Group &G, const Group &H, u64 index_cap) {
  auto ca = coset_action(G, H, index_cap);
  if (!ca) return std::nullopt;
  return kernel_of_action(G, ca->gen_images,
                          static_cast<unsigned>(ca->reps.size()));
}

std::optional<GroupRef> intersect_normals(const Group &G, const Group &N1,
                                          const Group &N2, u64 index_cap) {
  if (N1.order() == 1 || N2.order() == 1) return Group::trivial(G.degree());
  if (is_subgroup_of(N1, N2))
    return Group::from_generators(G.degree(), N1.generators());
  if (is_subgroup_of(N2, N1))
    return Group::from_generators(G.degree(), N2.generators());
  // Prefer the smaller index for the coset action.
  const Group *big = &N2, *small = &N1;
  if (G.order() / N1.order() < G.order() / N2.order()) std::swap(big, small);
  auto ca = coset_action(G, *big, index_cap);
  if (!ca) return std::nullopt;
  std::vector<Perm> action_images;
  action_images.reserve(small->generators().size());
  for (const Perm &g : small->generators()) action_images.push_back(ca->act(g));
  return kernel_of_action(*small, action_images,
                          static_cast<unsigned>(ca->reps.size()));
}

std::optional<Quotient> quotient(const Group &G, const Group &N,
                                 u64 index_cap, bool need_reps) {
  if (!is_subgroup_of(N, G))
    throw NormalityError("quotient: subgroup not inside group");
  if (!is_normal_in(G, N))
    throw NormalityError("quotient: subgroup is not normal");

  Quotient q;
  q.kernel = Group::from_generators(G.degree(), N.generators(), {}, N.order());

  if (N.order() == G.order()) {
    q.group = Group::trivial(1);
    q.map = [](const Perm &) { return Perm::identity(1); };
    return q;
  }
  if (N.is_trivial() && !need_reps) {
    q.group = G.self();
    q.map = [](const Perm &g) { return g; };
    return q;
  }

  // Restriction fast path: when N is exactly the pointwise stabilizer of the
  // complement of its support, G/N acts faithfully on that complement.
  if (!need_reps && !N.is_trivial()) {
    std::vector<char> in_supp(G.degree(), 0);
    for (const Perm &g : N.generators())
      for (Point p : g.support()) in_supp[p] = 1;
    std::vector<Point> comp;
    for (Point p = 0; p < G.degree(); ++p)
      if (!in_supp[p]) comp.push_back(p);
    if (!comp.empty()) {
      GroupRef stab = pointwise_stabilizer(G, comp);
      if (stab->order() == N.order()) {
        auto points = std::make_shared<std::vector<Point>>(comp);
        std::vector<Perm> gen_images;
        gen_images.reserve(G.generators().size());
        for (const Perm &g : G.generators())
          gen_images.push_back(restrict_perm(g, *points));
        q.group = Group::from_generators(
            static_cast<unsigned>(points->size()), gen_images, {},
            G.order() / N.order());
        q.map = [points](const Perm &g) { return restrict_perm(g, *points); };
        return q;
      }
    }
  }

  auto ca = coset_action(G, N, index_cap, G.order() / N.order());
  if (!ca) return std::nullopt;
  auto shared = std::make_shared<CosetAction>(std::move(*ca));
  q.group = shared->image;
  q.cosets = shared;
  q.map = [shared](const Perm &g) { return shared->act(g); };
  if (q.group->order() != G.order() / N.order())
    throw InternalInconsistency("quotient: image order mismatch");
  return q;
}

Perm restrict_perm(const Perm &g, const std::vector<Point> &points) {
  std::vector<int> where(g.degree(), -1);
  for (std::size_t i = 0; i < points.size(); ++i)
    where[points[i]] = static_cast<int>(i);
  std::vector<Point> img(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    Point q = g[points[i]];
    if (where[q] < 0)
      throw DimensionError("restrict_perm: point set not invariant");
    img[i] = static_cast<Point>(where[q]);
  }
  return Perm(std::move(img));
}

GroupRef restrict_to_points(const Group &G, const std::vector<Point> &points) {
  std::vector<Perm> gens;
  gens.reserve(G.generators().size());
  for (const Perm &g : G.generators())
    gens.push_back(restrict_perm(g, points));
  return Group::from_generators(static_cast<unsigned>(points.size()), gens,
                                {}, G.order());
}

std::optional<std::vector<GroupRef>> orbit_decomposition(const Group &G) {
  // Orbit partition of the moved points.
  std::vector<int> orbit_id(G.degree(), -1);
  std::vector<std::vector<Point>> orbits;
  for (Point start : G.moved_points()) {
    if (orbit_id[start] >= 0) continue;
    std::vector<Point> orb{start};
    orbit_id[start] = static_cast<int>(orbits.size());
    for (std::size_t head = 0; head < orb.size(); ++head)
      for (const Perm &g : G.generators()) {
        Point q = g[orb[head]];
        if (orbit_id[q] < 0) {
          orbit_id[q] = static_cast<int>(orbits.size());
          orb.push_back(q);
        }
      }
    orbits.push_back(std::move(orb));
  }
  if (orbits.size() < 2) return std::nullopt;
  std::vector<GroupRef> parts;
  u64 prod = 1;
  for (const auto &orb : orbits) {
    std::vector<Point> others;
    for (Point p = 0; p < G.degree(); ++p)
      if (orbit_id[p] != orbit_id[orb[0]]) others.push_back(p);
    GroupRef part = pointwise_stabilizer(*&G, others);
    prod = checked_mul(prod, part->order());
    parts.push_back(part);
  }
  if (prod != G.order()) return std::nullopt;
  return parts;
}

namespace {

// Centralizer of a transitive group inside the full symmetric group meets G
// exactly in Z(G); candidates are determined by the image of one point.
std::optional<GroupRef> center_transitive(const Group &G) {
  auto moved = G.moved_points();
  if (moved.empty()) return Group::trivial(G.degree());
  // Must be transitive on its support, with the chain anchored at the first
  // moved point so level 1 generates its stabilizer.
  Point p0 = G.chain().base_point(0);
  std::vector<char> in_orbit(G.degree(), 0);
  {
    std::vector<Point> orb{p0};
    in_orbit[p0] = 1;
    for (std::size_t head = 0; head < orb.size(); ++head)
      for (const Perm &g : G.generators()) {
        Point q = g[orb[head]];
        if (!in_orbit[q]) {
          in_orbit[q] = 1;
          orb.push_back(q);
        }
      }
    if (orb.size() != moved.size()) return std::nullopt;
  }
  std::vector<Perm> stab_gens = G.chain().level_gens(1);
  std::vector<Perm> zgens;
  for (Point q : moved) {
    bool fixed = true;
    for (const Perm &s : stab_gens)
      if (s[q] != q) {
        fixed = false;
        break;
      }
    if (!fixed) continue;
    // Try to extend p0 -> q to a permutation commuting with all generators.
    std::vector<Point> img(G.degree());
    std::vector<char> defined(G.degree(), 0);
    for (Point p = 0; p < G.degree(); ++p)
      if (!in_orbit[p]) {
        img[p] = p;
        defined[p] = 1;
      }
    img[p0] = q;
    defined[p0] = 1;
    std::vector<Point> queue{p0};
    bool ok = true;
    for (std::size_t head = 0; head < queue.size() && ok; ++head) {
      Point p = queue[head];
      for (const Perm &g : G.generators()) {
        Point pg = g[p];
        Point val = g[img[p]];
        if (!defined[pg]) {
          img[pg] = val;
          defined[pg] = 1;
          queue.push_back(pg);
        } else if (img[pg] != val) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    std::vector<char> seen(G.degree(), 0);
    for (Point v : img) {
      if (seen[v]) {
        ok = false;
        break;
      }
      seen[v] = 1;
    }
    if (!ok) continue;
    Perm cand{std::vector<Point>(img)};
    if (!cand.is_identity() && G.contains(cand)) zgens.push_back(cand);
  }
  return Group::from_generators(G.degree(), zgens);
}

}  // namespace

std::optional<GroupRef> center(const Group &G, u64 element_cap) {
  if (GroupRef cached = G.cached_center()) return cached;
  std::optional<GroupRef> result;

  if (G.is_abelian()) {
    result = Group::from_generators(G.degree(), G.generators(), G.meta(),
                                    G.order());
  }
  if (!result) {
    if (auto parts = orbit_decomposition(G)) {
      std::vector<Perm> zgens;
      bool all_ok = true;
      for (const GroupRef &part : *parts) {
        auto zc = center(*part, element_cap);
        if (!zc) {
          all_ok = false;
          break;
        }
        for (const Perm &g : (*zc)->generators()) zgens.push_back(g);
      }
      if (all_ok) result = Group::from_generators(G.degree(), zgens);
    }
  }
  if (!result) {
    if (auto z = center_transitive(G)) result = *z;
  }
  if (!result && G.order() <= element_cap) {
    StabChain zchain(G.degree());
    std::vector<Perm> zgens;
    ElementStream stream(G);
    do {
      const Perm &x = stream.current();
      if (zchain.contains(x)) continue;
      bool commutes = true;
      for (const Perm &g : G.generators())
        if (compose(x, g) != compose(g, x)) {
          commutes = false;
          break;
        }
      if (commutes && zchain.extend(x)) zgens.push_back(x);
    } while (stream.next());
    result = Group::from_generators(G.degree(), zgens, {}, zchain.order());
  }
  if (result) G.cache_center(*result);
  return result;
}

std::optional<GroupRef> centralizer(const Group &G, const Group &H,
                                    u64 element_cap) {
  if (G.order() > element_cap) return std::nullopt;
  StabChain cchain(G.degree());
  std::vector<Perm> cgens;
  ElementStream stream(G);
  do {
    const Perm &x = stream.current();
    if (cchain.contains(x)) continue;
    bool commutes = true;
    for (const Perm &h : H.generators())
      if (compose(x, h) != compose(h, x)) {
        commutes = false;
        break;
      }
    if (commutes && cchain.extend(x)) cgens.push_back(x);
  } while (stream.next());
  return Group::from_generators(G.degree(), cgens, {}, cchain.order());
}

std::optional<GroupRef> normalizer(const Group &G, const Group &H,
                                   u64 element_cap) {
  if (G.order() > element_cap) return std::nullopt;
  StabChain nchain(G.degree());
  std::vector<Perm> ngens;
  ElementStream stream(G);
  do {
    const Perm &x = stream.current();
    if (nchain.contains(x)) continue;
    bool normalizes = true;
    for (const Perm &h : H.generators())
      if (!H.contains(conjugate(h, x))) {
        normalizes = false;
        break;
      }
    if (normalizes && nchain.extend(x)) ngens.push_back(x);
  } while (stream.next());
  return Group::from_generators(G.degree(), ngens, {}, nchain.order());
}

std::optional<GroupRef> intersect_streaming(const Group &A, const Group &B,
                                            u64 element_cap) {
  const Group *small = A.order() <= B.order() ? &A : &B;
  const Group *big = small == &A ? &B : &A;
  if (small->order() > element_cap) return std::nullopt;
  StabChain ichain(A.degree());
  std::vector<Perm> igens;
  ElementStream stream(*small);
  do {
    const Perm &x = stream.current();
    if (ichain.contains(x)) continue;
    if (big->contains(x) && ichain.extend(x)) igens.push_back(x);
  } while (stream.next());
  return Group::from_generators(A.degree(), igens, {}, ichain.order());
}

}  // namespace sigmalib
