#include "sigmalib/structure.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace sigmalib {

namespace {

Perm shift_perm(const Perm &p, unsigned offset, unsigned ambient_degree) {
  std::vector<Point> img(ambient_degree);
  for (Point q = 0; q < ambient_degree; ++q) img[q] = q;
  for (Point q = 0; q < p.degree(); ++q) img[offset + q] = offset + p[q];
  return Perm(std::move(img));
}

GroupRef copy_group(const Group &g) { return g.self(); }

// K ∨ <x^G>: the join of a normal subgroup with a normal closure.
GroupRef closure_over(const Group &G, const Group &K, const Perm &x) {
  std::vector<Perm> seed = K.generators();
  seed.push_back(x);
  return normal_closure(G, seed);
}

bool contains_equal(const std::vector<GroupRef> &list, const Group &g) {
  for (const GroupRef &h : list)
    if (equal_groups(*h, g)) return true;
  return false;
}

}  // namespace

std::shared_ptr<const SmallLattice> all_subgroups(GroupRef G,
                                                  const CapConfig &caps) {
  return lattice_for(std::move(G), caps);
}

std::optional<std::vector<GroupRef>> normal_subgroups(GroupRef G,
                                                      const CapConfig &caps) {
  // Abelian groups: every subgroup is normal, so the lattice is the answer.
  if (G->is_abelian() && G->order() <= caps.subgroup_cap) {
    if (auto lat = lattice_for(G, caps)) {
      std::vector<GroupRef> out;
      for (const auto &sub : lat->subs)
        out.push_back(lat->model->group_from_set(sub.set));
      return out;
    }
  }
  if (G->order() > caps.element_cap) return std::nullopt;

  // Conjugacy-class closures, then join closure: every normal subgroup is a
  // join of single-class normal closures.
  std::unordered_set<Hash128, Hash128Hasher> visited;
  std::vector<Perm> reps;
  {
    ElementStream stream(*G);
    do {
      const Perm &x = stream.current();
      Hash128 h = x.hash();
      if (visited.count(h)) continue;
      visited.insert(h);
      reps.push_back(x);
      std::deque<Perm> queue{x};
      while (!queue.empty()) {
        Perm y = queue.front();
        queue.pop_front();
        for (const Perm &g : G->generators()) {
          Perm z = conjugate(y, g);
          if (visited.insert(z.hash()).second) queue.push_back(z);
        }
      }
    } while (stream.next());
  }

  std::vector<GroupRef> normals;
  normals.push_back(Group::trivial(G->degree()));
  for (const Perm &rep : reps) {
    if (rep.is_identity()) continue;
    GroupRef cl = normal_closure(*G, {rep});
    if (!contains_equal(normals, *cl)) normals.push_back(cl);
  }
  std::deque<std::size_t> work;
  for (std::size_t i = 0; i < normals.size(); ++i) work.push_back(i);
  constexpr std::size_t kNormalBound = 4096;
  while (!work.empty()) {
    std::size_t i = work.front();
    work.pop_front();
    for (std::size_t j = 0; j < normals.size(); ++j) {
      if (normals[j]->order() == 1 || i == j) continue;
      if (is_subgroup_of(*normals[j], *normals[i])) continue;
      GroupRef joined = join_groups(*normals[i], *normals[j]);
      if (!contains_equal(normals, *joined)) {
        if (normals.size() >= kNormalBound) return std::nullopt;
        normals.push_back(joined);
        work.push_back(normals.size() - 1);
      }
    }
  }
  std::stable_sort(normals.begin(), normals.end(),
                   [](const GroupRef &a, const GroupRef &b) {
                     return a->order() < b->order();
                   });
  return normals;
}

std::optional<std::vector<GroupRef>> minimal_normal_subgroups(
    GroupRef G, const CapConfig &caps) {
  auto normals = normal_subgroups(G, caps);
  if (!normals) return std::nullopt;
  std::vector<GroupRef> minimal;
  for (const GroupRef &n : *normals) {
    if (n->order() == 1) continue;
    bool is_min = true;
    for (const GroupRef &m : *normals) {
      if (m->order() == 1 || m->order() >= n->order()) continue;
      if (is_subgroup_of(*m, *n)) {
        is_min = false;
        break;
      }
    }
    if (is_min) minimal.push_back(n);
  }
  return minimal;
}

namespace {

// Reduce x to prime order modulo K; x must lie outside K.
Perm prime_order_rep_mod(const Group &K, const Perm &x) {
  u64 m = K.is_trivial() ? x.order() : element_order_mod(K, x);
  u64 p = factorize(m).begin()->first;
  return perm_power(x, m / p);
}

}  // namespace

namespace {

// Shrinks M to a subgroup with K < M' <= M, M' normal in G and M'/K a chief
// factor of G. The closure K v <y^G> is constant on cosets of K, so one
// closure per nontrivial coset of K in M both finds smaller normal
// subgroups and certifies minimality.
std::optional<GroupRef> shrink_to_minimal(const Group &G, const Group &K,
                                          GroupRef M, const CapConfig &caps) {
  while (true) {
    u64 index = M->order() / K.order();
    if (index > caps.index_cap) return std::nullopt;
    auto ca = coset_action(*M, K, caps.index_cap);
    if (!ca) return std::nullopt;
    bool shrunk = false;
    for (std::size_t ci = 1; ci < ca->reps.size(); ++ci) {
      GroupRef C = closure_over(G, K, ca->reps[ci]);
      if (C->order() < M->order()) {
        M = C;
        shrunk = true;
        break;
      }
    }
    if (!shrunk) return M;
  }
}

}  // namespace

std::optional<GroupRef> minimal_normal_over(const Group &G, GroupRef K,
                                            const Group &N,
                                            const CapConfig &caps) {
  if (N.order() <= K->order() || N.order() % K->order() != 0)
    throw InternalInconsistency("minimal_normal_over: K not below N");
  // Seed with any element of N outside K.
  std::optional<Perm> seed;
  {
    ElementStream stream(N);
    do {
      if (!K->contains(stream.current())) {
        seed = stream.current();
        break;
      }
    } while (stream.next());
  }
  if (!seed) throw InternalInconsistency("minimal_normal_over: N == K");
  GroupRef M = closure_over(G, *K, prime_order_rep_mod(*K, *seed));
  return shrink_to_minimal(G, *K, M, caps);
}

std::optional<std::vector<GroupRef>> socle_components_over(
    const Group &G, GroupRef K, const Group &N, const CapConfig &caps) {
  std::vector<GroupRef> found;
  if (N.order() == K->order()) return found;
  GroupRef J = copy_group(*K);
  ElementStream stream(N);
  do {
    if (J->order() == N.order()) break;
    const Perm &x = stream.current();
    if (J->contains(x)) continue;
    Perm x0 = prime_order_rep_mod(*K, x);
    auto M = shrink_to_minimal(G, *K, closure_over(G, *K, x0), caps);
    if (!M) return std::nullopt;
    if (!contains_equal(found, **M)) {
      found.push_back(*M);
      J = join_groups(*J, **M);
    }
  } while (stream.next());
  return found;
}

ChiefFactor describe_factor(const Group &M, GroupRef K, const CapConfig &caps) {
  ChiefFactor f;
  f.order = M.order() / K->order();
  f.order_fac = factorize(f.order);
  f.is_abelian = true;
  const auto &gens = M.generators();
  for (std::size_t i = 0; i < gens.size() && f.is_abelian; ++i)
    for (std::size_t j = i + 1; j < gens.size() && f.is_abelian; ++j)
      if (!K->contains(commutator(gens[i], gens[j]))) f.is_abelian = false;
  f.is_cyclic_prime = is_prime(f.order);
  if (f.is_cyclic_prime) {
    f.is_simple = Verdict::yes();
  } else if (f.is_abelian) {
    f.is_simple = Verdict::no("abelian non-prime");
  } else if (M.order() <= caps.element_cap) {
    auto min_in_M = minimal_normal_over(M, K, M, caps);
    if (!min_in_M)
      f.is_simple = Verdict::undecided(cap_exceeded);
    else
      f.is_simple = Verdict::of((*min_in_M)->order() == M.order(),
                                "proper normal subgroup");
  } else {
    f.is_simple = Verdict::undecided(cap_exceeded);
  }
  return f;
}

std::optional<BelowSeries> chief_factors_below(GroupRef G, GroupRef N,
                                               const CapConfig &caps) {
  BelowSeries out;
  if (N->is_trivial()) return out;

  // A full chief series, when available, settles this by slicing (N is a
  // term) or by intersecting the terms with N (the distinct intersections
  // form a chief series of G below N).
  if (auto cs = chief_series(G, caps)) {
    for (std::size_t ti = 0; ti < cs->terms.size(); ++ti) {
      const GroupRef &T = cs->terms[ti];
      if (T->order() == N->order() && is_subgroup_of(*N, *T)) {
        for (std::size_t j = cs->terms.size() - 1; j > ti; --j) {
          out.terms.push_back(cs->terms[j - 1]);
          out.factors.push_back(cs->factors[j - 1]);
        }
        return out;
      }
    }
    std::vector<char> in_supp(G->degree(), 0);
    for (const Perm &g : N->generators())
      for (Point p : g.support()) in_supp[p] = 1;
    std::vector<Point> comp;
    for (Point p = 0; p < G->degree(); ++p)
      if (!in_supp[p]) comp.push_back(p);
    if (!comp.empty() &&
        pointwise_stabilizer(*G, comp)->order() == N->order()) {
      std::vector<GroupRef> desc;  // distinct T ∩ N, descending from N
      for (const GroupRef &T : cs->terms) {
        GroupRef meet = pointwise_stabilizer(*T, comp);
        if (desc.empty() || meet->order() < desc.back()->order())
          desc.push_back(meet);
      }
      for (std::size_t j = desc.size(); j-- > 1;) {
        out.factors.push_back(describe_factor(*desc[j - 1], desc[j], caps));
        out.terms.push_back(desc[j - 1]);
      }
      return out;
    }
  }

  // Bottom-up streaming fallback.
  GroupRef K = Group::trivial(G->degree());
  while (K->order() < N->order()) {
    auto M = minimal_normal_over(*G, K, *N, caps);
    if (!M) return std::nullopt;
    out.factors.push_back(describe_factor(**M, K, caps));
    out.terms.push_back(*M);
    K = *M;
  }
  return out;
}

namespace {

std::optional<ChiefSeries> chief_series_meta(GroupRef G, const CapConfig &caps,
                                             u64 seed);

// Bottom-up over an explicit list of the normal subgroups of G.
std::optional<ChiefSeries> chief_series_from_normals(
    GroupRef G, const std::vector<GroupRef> &normals, const CapConfig &caps,
    u64 seed) {
  Rng rng(seed);
  std::vector<GroupRef> asc_terms;
  std::vector<ChiefFactor> asc_factors;
  GroupRef K = Group::trivial(G->degree());
  while (K->order() < G->order()) {
    std::vector<GroupRef> candidates;
    for (const GroupRef &M : normals) {
      if (M->order() <= K->order() || !is_subgroup_of(*K, *M)) continue;
      bool minimal = true;
      for (const GroupRef &L : normals) {
        if (L->order() <= K->order() || L->order() >= M->order()) continue;
        if (is_subgroup_of(*K, *L) && is_subgroup_of(*L, *M)) {
          minimal = false;
          break;
        }
      }
      if (minimal) candidates.push_back(M);
    }
    if (candidates.empty())
      throw InternalInconsistency("chief series: no minimal normal candidate");
    std::size_t pick = seed == 0 ? 0 : rng.below(candidates.size());
    GroupRef M = candidates[pick];
    asc_factors.push_back(describe_factor(*M, K, caps));
    asc_terms.push_back(M);
    K = M;
  }
  ChiefSeries series;
  series.terms.push_back(copy_group(*G));
  for (std::size_t i = asc_terms.size(); i-- > 1;)
    series.terms.push_back(asc_terms[i - 1]);
  series.terms.push_back(Group::trivial(G->degree()));
  series.factors.assign(asc_factors.rbegin(), asc_factors.rend());
  return series;
}

std::optional<ChiefSeries> chief_series_meta(GroupRef G, const CapConfig &caps,
                                             u64 seed) {
  MetaPtr meta = G->meta();
  if (!meta) return std::nullopt;
  if (meta->kind == Meta::Kind::Cyclic) {
    // All chief factors of a cyclic group have prime order.
    ChiefSeries series;
    series.terms.push_back(copy_group(*G));
    if (G->order() == 1) return series;
    const Perm &a = G->generators().at(0);
    u64 remaining = meta->n;
    for (auto [p, e] : factorize(meta->n)) {
      for (unsigned i = 0; i < e; ++i) {
        remaining /= p;
        ChiefFactor f;
        f.order = p;
        f.order_fac = factorize(p);
        f.is_abelian = true;
        f.is_cyclic_prime = true;
        f.is_simple = Verdict::yes();
        series.factors.push_back(f);
        series.terms.push_back(generated_by(
            G->degree(), {perm_power(a, meta->n / remaining)}, remaining));
      }
    }
    return series;
  }
  if (meta->kind == Meta::Kind::Direct) {
    // A chief series of a product of disjointly supported factors is the
    // concatenation of the factors' series, lifted over the running prefix.
    ChiefSeries series;
    std::vector<Perm> prefix_gens;  // generators of F_1 x ... x F_{i-1}
    std::vector<std::pair<std::vector<Perm>, u64>> prefixes;
    u64 prefix_order = 1;
    for (const auto &f : meta->factors) {
      prefixes.push_back({prefix_gens, prefix_order});
      for (const Perm &g : f.group->generators())
        prefix_gens.push_back(shift_perm(g, f.offset, G->degree()));
      prefix_order = checked_mul(prefix_order, f.group->order());
    }
    series.terms.push_back(copy_group(*G));
    for (std::size_t fi = meta->factors.size(); fi-- > 0;) {
      const auto &f = meta->factors[fi];
      auto sub = chief_series(f.group, caps, seed);
      if (!sub) return std::nullopt;
      const auto &[pg, po] = prefixes[fi];
      // Lift every proper term of the factor series over the prefix.
      for (std::size_t ti = 1; ti < sub->terms.size(); ++ti) {
        std::vector<Perm> gens = pg;
        for (const Perm &g : sub->terms[ti]->generators())
          gens.push_back(shift_perm(g, f.offset, G->degree()));
        series.terms.push_back(Group::from_generators(
            G->degree(), gens, {},
            checked_mul(po, sub->terms[ti]->order())));
        series.factors.push_back(sub->factors[ti - 1]);
      }
    }
    return series;
  }
  return std::nullopt;
}

}  // namespace

std::optional<ChiefSeries> chief_series(GroupRef G, const CapConfig &caps,
                                        u64 seed) {
  if (G->order() == 1) {
    ChiefSeries series;
    series.terms.push_back(copy_group(*G));
    return series;
  }
  if (G->meta() && G->meta()->kind != Meta::Kind::Atomic &&
      G->meta()->kind != Meta::Kind::Semidirect) {
    if (auto s = chief_series_meta(G, caps, seed)) return s;
  }
  if (auto normals = normal_subgroups(G, caps))
    return chief_series_from_normals(G, *normals, caps, seed);
  return std::nullopt;
}

std::optional<GroupRef> sylow_subgroup(GroupRef G, u64 p,
                                       const CapConfig &caps) {
  auto it = G->order_factored().find(p);
  if (it == G->order_factored().end()) return Group::trivial(G->degree());
  u64 target = checked_pow(p, it->second);

  if (MetaPtr meta = G->meta()) {
    if (meta->kind == Meta::Kind::Cyclic) {
      const Perm &a = G->generators().at(0);
      return generated_by(G->degree(), {perm_power(a, meta->n / target)},
                          target);
    }
    if (meta->kind == Meta::Kind::Direct) {
      std::vector<Perm> gens;
      u64 order = 1;
      for (const auto &f : meta->factors) {
        auto sp = sylow_subgroup(f.group, p, caps);
        if (!sp) return std::nullopt;
        for (const Perm &g : (*sp)->generators())
          gens.push_back(shift_perm(g, f.offset, G->degree()));
        order = checked_mul(order, (*sp)->order());
      }
      return Group::from_generators(G->degree(), gens, {}, order);
    }
  }

  if (G->order() > caps.element_cap) return std::nullopt;
  // Normalizer growth: a p-subgroup below full p-order has p dividing the
  // order of N_G(P)/P, so a p-element exists there to extend with.
  GroupRef P = Group::trivial(G->degree());
  while (P->order() < target) {
    if (P->is_trivial()) {
      ElementStream stream(*G);
      do {
        const Perm &x = stream.current();
        u64 o = x.order();
        if (o % p == 0) {
          u64 q = o;
          while (q % p == 0) q /= p;
          P = generated_by(G->degree(), {perm_power(x, q)});
          break;
        }
      } while (stream.next());
      continue;
    }
    auto Nopt = normalizer(*G, *P, caps.element_cap);
    if (!Nopt) return std::nullopt;
    const Group &N = **Nopt;
    bool grown = false;
    ElementStream stream(N);
    do {
      const Perm &y = stream.current();
      if (P->contains(y)) continue;
      u64 m = element_order_mod(*P, y);
      if (m % p != 0) continue;
      Perm x = perm_power(y, m / p);
      std::vector<Perm> gens = P->generators();
      gens.push_back(x);
      P = generated_by(G->degree(), gens, P->order() * p);
      grown = true;
      break;
    } while (stream.next());
    if (!grown)
      throw InternalInconsistency("sylow: normalizer growth stalled");
  }
  return P;
}

Verdict product_is_subgroup(const Subgroup &A, const Subgroup &B,
                            const CapConfig &caps) {
  if (A.ambient->degree() != B.ambient->degree() ||
      A.ambient->order() != B.ambient->order())
    throw DimensionError("product_is_subgroup: different ambient groups");
  const Group &ga = *A.group;
  const Group &gb = *B.group;
  if (is_subgroup_of(ga, gb) || is_subgroup_of(gb, ga)) return Verdict::yes();
  // If either side normalizes the other, the product is the join.
  auto normalizes = [](const Group &x, const Group &h) {
    for (const Perm &g : x.generators())
      for (const Perm &a : h.generators())
        if (!h.contains(conjugate(a, g))) return false;
    return true;
  };
  if (normalizes(gb, ga) || normalizes(ga, gb)) return Verdict::yes();
  GroupRef J = join_groups(ga, gb);
  auto I = intersect_streaming(ga, gb, caps.backtrack_node_budget);
  if (!I) return Verdict::undecided(cap_exceeded);
  u64 prod_size = ga.order() / (*I)->order() * gb.order();
  return Verdict::of(J->order() == prod_size, "product set is not a subgroup");
}

std::optional<std::vector<GroupRef>> complements(GroupRef G, GroupRef N,
                                                 const CapConfig &caps) {
  if (!is_normal_in(*G, *N))
    throw NormalityError("complements: subgroup is not normal");
  u64 index = G->order() / N->order();
  if (auto lat = lattice_for(G, caps)) {
    ElemSet nset = lat->model->set_of_group(*N);
    std::vector<GroupRef> out;
    for (const auto &sub : lat->subs) {
      if (sub.order != index) continue;
      if (sub.set.intersect(nset).count() == 1)
        out.push_back(lat->model->group_from_set(sub.set));
    }
    return out;
  }
  if (N->is_abelian() && gcd_u64(N->order(), index) == 1) {
    auto one = abelian_hall_complement(G, N, caps);
    if (!one) return std::nullopt;
    return std::vector<GroupRef>{*one};
  }
  return std::nullopt;
}

std::optional<GroupRef> abelian_hall_complement(GroupRef G, GroupRef N,
                                                const CapConfig &caps) {
  u64 index = G->order() / N->order();
  if (N->is_trivial()) return copy_group(*G);
  if (index == 1) return Group::trivial(G->degree());
  auto ca = coset_action(*G, *N, caps.index_cap, index);
  if (!ca) return std::nullopt;

  u64 exponent = 1;
  for (const Perm &g : N->generators()) exponent = lcm_u64(exponent, g.order());
  u64 u = 0;
  for (u64 cand = 1; cand < exponent; ++cand)
    if ((static_cast<unsigned __int128>(index) * cand) % exponent == 1) {
      u = cand;
      break;
    }
  if (u == 0) return std::nullopt;  // index not invertible: N was not Hall

  std::vector<Perm> section_gens;
  for (const Perm &g : G->generators()) {
    unsigned x = ca->coset_of(g);
    // sigma(x) = prod over cosets z of the cocycle t_x t_z t_{xz}^{-1}
    Perm sigma = Perm::identity(G->degree());
    for (unsigned z = 0; z < ca->reps.size(); ++z) {
      Perm txz = compose(ca->reps[x], ca->reps[z]);
      unsigned xz = ca->coset_of(txz);
      Perm c = compose(txz, ca->reps[xz].inverse());
      sigma = compose(sigma, c);
    }
    // s_x = sigma(x)^(-u) t_x is a homomorphic section.
    Perm s = compose(perm_power(sigma.inverse(), u), ca->reps[x]);
    section_gens.push_back(s);
  }
  GroupRef M = generated_by(G->degree(), section_gens, index);
  return M;
}

}  // namespace sigmalib
