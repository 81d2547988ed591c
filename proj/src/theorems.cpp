#include "sigmalib/theorems.hpp"

#include <algorithm>
#include <unordered_set>

namespace sigmalib {

namespace {

GroupRef copy_group(const Group &g) { return g.self(); }

Verdict is_sigma_perfect_direct(GroupRef D, const SigmaPartition &sigma,
                                const CapConfig &caps) {
  for (const BlockId &i : sigma.blocks_of_factored(D->order_factored()))
    if (O_upper(D, sigma, i, caps)->order() != D->order())
      return Verdict::no("O^{sigma_i} is proper for block " +
                         sigma.block_label(i));
  return Verdict::yes();
}

// Every conjugation by a generator of U maps each cyclic subgroup of D into
// itself; streaming over D's elements.
Verdict power_automorphism_check(GroupRef D, const std::vector<Perm> &actors,
                                 const CapConfig &caps) {
  if (D->order() > caps.element_cap) return Verdict::undecided(cap_exceeded);
  ElementStream stream(*D);
  do {
    const Perm &d = stream.current();
    if (d.is_identity()) continue;
    std::unordered_set<Hash128, Hash128Hasher> powers;
    Perm pw = d;
    for (u64 j = 1; j <= d.order(); ++j) {
      powers.insert(pw.hash());
      pw = compose(pw, d);
    }
    for (const Perm &g : actors)
      if (!powers.count(conjugate(d, g).hash()))
        return Verdict::no("conjugation moves the cyclic subgroup of an "
                           "element of order " + std::to_string(d.order()));
  } while (stream.next());
  return Verdict::yes();
}

// Conditions (i)-(iii) of the complex definition for a candidate D; the
// maximality condition (iv) is checked separately.
struct PartialComplex {
  Verdict i = Verdict::undecided("unset");
  Verdict ii = Verdict::undecided("unset");
  Verdict iii = Verdict::undecided("unset");
  GroupRef Z;
  std::vector<GroupRef> components;
};

PartialComplex robinson_conditions(GroupRef G, const SigmaPartition &sigma,
                                   GroupRef D, const CapConfig &caps) {
  PartialComplex out;
  out.i = is_sigma_perfect_direct(D, sigma, caps);

  auto z = center(*D, caps.element_cap);
  if (!z) {
    out.ii = Verdict::undecided(cap_exceeded);
    out.iii = Verdict::undecided(cap_exceeded);
    return out;
  }
  out.Z = *z;

  auto comps = socle_components_over(*G, out.Z, *D, caps);
  if (!comps) {
    out.ii = Verdict::undecided(cap_exceeded);
  } else {
    out.components = *comps;
    Verdict v = Verdict::yes();
    if (out.components.empty())
      v = Verdict::no("no chief factors over the center");
    u64 product = out.Z->order();
    for (const GroupRef &U : out.components) {
      // U/Z must be nonabelian and simple. U/Z is a chief factor of G by
      // construction.
      bool nonabelian = false;
      for (const Perm &a : U->generators()) {
        for (const Perm &b : U->generators())
          if (!out.Z->contains(commutator(a, b))) {
            nonabelian = true;
            break;
          }
        if (nonabelian) break;
      }
      if (!nonabelian) {
        v = Verdict::no("abelian chief factor over the center");
        break;
      }
      if (U->order() > caps.element_cap) {
        v = Verdict::undecided(cap_exceeded);
        break;
      }
      auto min_u = minimal_normal_over(*U, out.Z, *U, caps);
      if (!min_u) {
        v = Verdict::undecided(cap_exceeded);
        break;
      }
      if ((*min_u)->order() != U->order()) {
        v = Verdict::no("component over the center is not simple");
        break;
      }
      product = checked_mul(product, U->order() / out.Z->order());
    }
    if (v.is_yes() && product != D->order())
      v = Verdict::no("components span " + std::to_string(product) +
                      " of " + std::to_string(D->order()));
    out.ii = v;
  }

  auto below = chief_factors_below(G, out.Z, caps);
  if (!below) {
    out.iii = Verdict::undecided(cap_exceeded);
  } else {
    out.iii = Verdict::yes();
    for (const auto &f : below->factors)
      if (!f.is_cyclic_prime) {
        out.iii = Verdict::no("chief factor of order " +
                              std::to_string(f.order) +
                              " below the center is not cyclic");
        break;
      }
  }
  return out;
}

std::string orders_of(const std::vector<GroupRef> &gs) {
  std::string out;
  for (const GroupRef &g : gs) {
    if (!out.empty()) out += ",";
    out += std::to_string(g->order());
  }
  return out;
}

}  // namespace

RobinsonResult robinson_complex(GroupRef G, const SigmaPartition &sigma,
                                GroupRef D, const CapConfig &caps) {
  if (!is_subgroup_of(*D, *G) || !is_normal_in(*G, *D))
    throw NormalityError("robinson_complex: D must be normal in G");
  RobinsonResult res;
  PartialComplex pc = robinson_conditions(G, sigma, D, caps);
  res.report.add("(i) D sigma-perfect normal", pc.i);
  res.report.add("(ii) D/Z product of simple nonabelian chief factors",
                 pc.ii,
                 pc.Z ? "|Z|=" + std::to_string(pc.Z->order()) + " components=" +
                            orders_of(pc.components)
                      : "");
  res.report.add("(iii) chief factors below Z cyclic", pc.iii);

  Verdict iv = Verdict::undecided("unset");
  if (pc.i.is_yes() && pc.ii.is_yes() && pc.iii.is_yes()) {
    RobinsonComplex cx;
    cx.D = D;
    cx.Z = pc.Z;
    cx.components = pc.components;
    res.complex = cx;
    // Maximality: no normal subgroup satisfying (i)-(iii) may exceed D.
    auto normals = normal_subgroups(G, caps);
    if (!normals) {
      iv = Verdict::undecided(cap_exceeded);
    } else {
      iv = Verdict::yes();
      for (const GroupRef &D0 : *normals) {
        if (is_subgroup_of(*D0, *D)) continue;
        PartialComplex alt = robinson_conditions(G, sigma, D0, caps);
        if (alt.i.is_yes() && alt.ii.is_yes() && alt.iii.is_yes()) {
          iv = Verdict::no("normal subgroup of order " +
                           std::to_string(D0->order()) +
                           " also satisfies (i)-(iii)");
          break;
        }
        if (!alt.i.decided() || !alt.ii.decided() || !alt.iii.decided()) {
          iv = Verdict::undecided(cap_exceeded);
          break;
        }
      }
    }
  } else {
    iv = (pc.i.decided() && pc.ii.decided() && pc.iii.decided())
             ? Verdict::no("conditions (i)-(iii) fail")
             : Verdict::undecided("conditions (i)-(iii) undecided");
  }
  res.report.add("(iv) maximal among such normal subgroups", iv);
  res.report.finalize();
  return res;
}

ConditionReport theorem_B_check(GroupRef G, const SigmaPartition &sigma,
                                const CapConfig &caps) {
  ConditionReport rep;
  Classification cls = classify(G, sigma, caps);
  rep.add("hypothesis: G sigma-soluble", cls.sigma_soluble);
  if (!cls.sigma_soluble.is_yes()) {
    rep.finalize();
    return rep;
  }
  if (!cls.n_residual) {
    rep.add("D = sigma-nilpotent residual", Verdict::undecided(cap_exceeded));
    rep.finalize();
    return rep;
  }
  GroupRef D = *cls.n_residual;
  rep.add("D = sigma-nilpotent residual", Verdict::yes(),
          "|D|=" + std::to_string(D->order()));

  rep.add("(i) D abelian", Verdict::of(D->is_abelian(), "D is nonabelian"));
  u64 index = G->order() / D->order();
  rep.add("(i) D is a Hall subgroup",
          Verdict::of(gcd_u64(D->order(), index) == 1,
                      "gcd(|D|, |G:D|) != 1"));
  rep.add("(i) |D| odd", Verdict::of(D->order() % 2 == 1, "|D| is even"));

  // complement M with M sigma-nilpotent
  Verdict mfound = Verdict::undecided(cap_exceeded);
  if (D->is_trivial()) {
    mfound = Verdict::yes("M = G");
  } else if (auto comps = complements(G, D, caps)) {
    if (comps->empty()) {
      mfound = Verdict::no("no complement");
    } else {
      mfound = Verdict::undecided("no sigma-nilpotent complement found");
      for (const GroupRef &M : *comps) {
        Verdict mn = classify(M, sigma, caps).sigma_nilpotent;
        if (mn.is_yes()) {
          mfound = Verdict::yes();
          break;
        }
        if (mn.is_no()) mfound = Verdict::no("complement not sigma-nilpotent");
      }
    }
  }
  rep.add("(i) G = D x| M with M sigma-nilpotent", mfound);

  rep.add("(i) every element of G induces a power automorphism on D",
          power_automorphism_check(D, G->generators(), caps));

  // (ii) O_{sigma_i}(D) has a normal complement in a Hall sigma_i-subgroup.
  for (const BlockId &i : sigma.blocks_of_factored(G->order_factored())) {
    std::string label =
        "(ii) block " + sigma.block_label(i) + ": normal complement";
    auto Oi = O_lower(D, sigma, i, caps);
    if (!Oi) {
      rep.add(label, Verdict::undecided(cap_exceeded));
      continue;
    }
    HallResult hall = hall_subgroup(G, sigma, i, caps);
    if (!hall.verdict.is_yes()) {
      rep.add(label, hall.verdict.is_no()
                         ? Verdict::no("no Hall subgroup")
                         : Verdict::undecided(hall.verdict.reason()));
      continue;
    }
    GroupRef H = hall.subgroup;
    if ((*Oi)->is_trivial() || (*Oi)->order() == H->order()) {
      rep.add(label, Verdict::yes());
      continue;
    }
    auto hlat = lattice_for(H, caps);
    if (!hlat) {
      rep.add(label, Verdict::undecided(cap_exceeded));
      continue;
    }
    ElemSet oset = hlat->model->set_of_group(**Oi);
    u64 target = H->order() / (*Oi)->order();
    Verdict found = Verdict::no("no normal complement in the Hall subgroup");
    for (std::size_t s = 0; s < hlat->subs.size(); ++s) {
      const auto &sub = hlat->subs[s];
      if (sub.order != target || !sub.normal_in_g) continue;
      if (sub.set.intersect(oset).count() == 1) {
        found = Verdict::yes();
        break;
      }
    }
    rep.add(label, found);
  }
  rep.finalize();
  return rep;
}

ConditionReport theorem_C_check(GroupRef G, const SigmaPartition &sigma,
                                const CapConfig &caps) {
  ConditionReport rep;

  // Hypothesis: a complete Hall sigma-set whose members are PST-groups.
  CompleteHallResult hs = complete_hall_set(G, sigma, caps);
  Verdict hyp = hs.verdict;
  if (hyp.is_yes()) {
    SigmaPartition sylow = SigmaPartition::sylow();
    for (const auto &[block, member] : hs.set.members) {
      Verdict pst = is_PsigmaT_brute(member, sylow, caps);
      if (pst.is_no()) {
        hyp = Verdict::no("Hall member for block " + sigma.block_label(block) +
                          " is not a PST-group");
        break;
      }
      if (!pst.decided()) hyp = pst;
    }
  }
  rep.add("(H) complete Hall sigma-set with PST members", hyp);

  auto ures = residual(G, sigma, ResidualTag::SigmaSupersoluble, caps);
  if (!ures) {
    rep.add("D = sigma-supersoluble residual", Verdict::undecided(cap_exceeded));
    rep.finalize();
    return rep;
  }
  GroupRef D = *ures;
  rep.add("D = sigma-supersoluble residual, sigma-perfect",
          is_sigma_perfect_direct(D, sigma, caps),
          "|D|=" + std::to_string(D->order()));

  // (i) G/D sigma-soluble PsigmaT
  {
    auto q = quotient(*G, *D, caps.index_cap);
    if (!q) {
      rep.add("(i) G/D sigma-soluble PsigmaT group",
              Verdict::undecided(cap_exceeded));
    } else {
      Classification qc = classify(q->group, sigma, caps);
      Verdict qsol = qc.sigma_soluble;
      Verdict oracle = is_PsigmaT_brute(q->group, sigma, caps);
      Verdict theorem = Verdict::undecided("not sigma-soluble");
      if (qsol.is_yes()) theorem = theorem_B_check(q->group, sigma, caps).overall;
      if (oracle.decided() && theorem.decided() &&
          !oracle.same_state(theorem))
        throw InternalInconsistency(
            "theorem C (i): oracle and theorem B disagree on the quotient");
      Verdict pst = oracle.decided() ? oracle : theorem;
      rep.add("(i) G/D sigma-soluble PsigmaT group", qsol && pst);
    }
  }

  // (ii) Robinson sigma-complex on D
  std::vector<GroupRef> components;
  GroupRef Z;
  if (D->is_trivial()) {
    rep.add("(ii) Robinson sigma-complex for D", Verdict::yes(), "D = 1");
  } else {
    RobinsonResult rr = robinson_complex(G, sigma, D, caps);
    rep.add("(ii) Robinson sigma-complex for D", rr.report.overall);
    if (rr.complex) {
      components = rr.complex->components;
      Z = rr.complex->Z;
    }
  }

  // (iii) N_{sigma_l} for G and the quotients by proper products of
  // component derived subgroups, for blocks meeting pi(Z(D)).
  if (D->is_trivial() || (Z && Z->is_trivial())) {
    rep.add("(iii) N_sigma conditions", Verdict::yes(), "pi(Z(D)) empty");
  } else if (!Z) {
    rep.add("(iii) N_sigma conditions", Verdict::undecided(cap_exceeded));
  } else {
    std::vector<BlockId> zblocks = sigma.blocks_of_factored(Z->order_factored());
    std::size_t k = components.size();
    if (k > caps.kmax) {
      rep.add("(iii) N_sigma conditions",
              Verdict::undecided("kmaxExceeded: k=" + std::to_string(k)));
    } else {
      Verdict all = Verdict::yes();
      // quotient targets: G itself (r = 0) plus every proper subset product
      std::vector<GroupRef> targets{Group::trivial(G->degree())};
      if (k >= 2) {
        std::vector<GroupRef> primes;
        for (const GroupRef &U : components)
          primes.push_back(derived_subgroup(*U));
        for (u64 mask = 1; mask + 1 < (u64(1) << k); ++mask) {
          GroupRef prod = Group::trivial(G->degree());
          for (std::size_t j = 0; j < k; ++j)
            if (mask & (u64(1) << j)) prod = join_groups(*prod, *primes[j]);
          targets.push_back(prod);
        }
      }
      for (const GroupRef &N : targets) {
        auto q = quotient(*G, *N, caps.index_cap);
        if (!q) {
          all = Verdict::undecided(cap_exceeded);
          break;
        }
        for (const BlockId &l : zblocks) {
          Verdict v = satisfies_N_sigma_i(q->group, sigma, l, caps);
          if (v.is_no()) {
            all = Verdict::no("N_sigma fails for block " +
                              sigma.block_label(l) + " in a quotient by |N|=" +
                              std::to_string(N->order()));
            break;
          }
          if (!v.decided()) all = v;
        }
        if (all.is_no()) break;
      }
      rep.add("(iii) N_sigma conditions", all);
    }
  }
  rep.finalize();
  return rep;
}

ConditionReport theorem_D_check(GroupRef G, const SigmaPartition &sigma,
                                const CapConfig &caps) {
  ConditionReport rep;
  auto nres = residual(G, sigma, ResidualTag::SigmaNilpotent, caps);
  if (!nres) {
    rep.add("N = sigma-nilpotent residual", Verdict::undecided(cap_exceeded));
    rep.finalize();
    return rep;
  }
  GroupRef D = soluble_residual(**nres);
  rep.add("D = soluble residual of N", Verdict::yes(),
          "|N|=" + std::to_string((*nres)->order()) +
              " |D|=" + std::to_string(D->order()));

  auto ures = residual(G, sigma, ResidualTag::SigmaSupersoluble, caps);
  if (!ures) {
    rep.add("(i) D equals the sigma-supersoluble residual",
            Verdict::undecided(cap_exceeded));
  } else {
    rep.add("(i) D equals the sigma-supersoluble residual",
            Verdict::of(equal_groups(*D, **ures),
                        "residuals differ: " + std::to_string(D->order()) +
                            " vs " + std::to_string((*ures)->order())));
  }

  if (D->is_trivial()) {
    rep.add("(ii) Robinson complex with Z(D) the soluble radical",
            Verdict::yes(), "D = 1");
  } else {
    RobinsonResult rr = robinson_complex(G, sigma, D, caps);
    Verdict v = rr.report.overall;
    if (rr.complex) {
      auto rad = radical_subgroup(D, sigma, RadicalTag::Soluble, caps);
      if (!rad)
        v = v && Verdict::undecided(cap_exceeded);
      else
        v = v && Verdict::of(equal_groups(*rr.complex->Z, **rad),
                             "Z(D) differs from the soluble radical of D");
    }
    rep.add("(ii) Robinson complex with Z(D) the soluble radical", v);
  }
  rep.finalize();
  return rep;
}

Verdict is_PsigmaT_brute(GroupRef G, const SigmaPartition &sigma,
                         const CapConfig &caps) {
  auto ctx = make_sigma_context(G, sigma, caps);
  if (!ctx) return Verdict::undecided(cap_exceeded);
  if (!ctx->sigma_full) return Verdict::no("group is not sigma-full");
  for (std::size_t i = 0; i < ctx->lat->subs.size(); ++i)
    if (ctx->subnormal[i] && !ctx->permutable[i])
      return Verdict::no("sigma-subnormal subgroup of order " +
                         std::to_string(ctx->lat->subs[i].order) +
                         " is not sigma-permutable");
  return Verdict::yes();
}

namespace {

bool lattice_product_ok(const SmallLattice &lat, std::size_t a,
                        std::size_t b) {
  const auto &sa = lat.subs[a];
  const auto &sb = lat.subs[b];
  if (sa.set.subset_of(sb.set) || sb.set.subset_of(sa.set)) return true;
  u64 inter = sa.set.intersect(sb.set).count();
  std::vector<std::size_t> gens = sa.gens;
  gens.insert(gens.end(), sb.gens.begin(), sb.gens.end());
  return lat.model->closure(gens).count() ==
         sa.order / inter * sb.order;
}

}  // namespace

Verdict is_PsigmaT_transitive(GroupRef G, const SigmaPartition &sigma,
                              const CapConfig &caps) {
  auto ctx = make_sigma_context(G, sigma, caps);
  if (!ctx) return Verdict::undecided(cap_exceeded);
  if (!ctx->sigma_full) return Verdict::no("group is not sigma-full");
  const SmallLattice &lat = *ctx->lat;
  const auto &subs = lat.subs;

  // Transitivity fails only on a witness K that is sigma-permutable in some
  // sigma-permutable H yet not in G, so only non-permutable K need looking
  // at. Hall subgroups of H are located inside the ambient lattice.
  std::vector<std::size_t> non_perm;
  for (std::size_t i = 0; i < subs.size(); ++i)
    if (!ctx->permutable[i]) non_perm.push_back(i);
  if (non_perm.empty()) return Verdict::yes();

  std::unordered_map<std::size_t, std::optional<std::vector<std::vector<std::size_t>>>>
      halls_of;
  auto halls_in = [&](std::size_t h)
      -> const std::optional<std::vector<std::vector<std::size_t>>> & {
    auto it = halls_of.find(h);
    if (it != halls_of.end()) return it->second;
    std::optional<std::vector<std::vector<std::size_t>>> out;
    Factorization hf = factorize(subs[h].order);
    std::vector<std::vector<std::size_t>> lists;
    bool full = true;
    for (const BlockId &b : sigma.blocks_of_factored(hf)) {
      u64 part = sigma.part_of(hf, b);
      std::vector<std::size_t> ids;
      for (std::size_t s = 0; s < subs.size(); ++s)
        if (subs[s].order == part && subs[s].set.subset_of(subs[h].set))
          ids.push_back(s);
      if (ids.empty()) {
        full = false;
        break;
      }
      lists.push_back(std::move(ids));
    }
    if (full) out = std::move(lists);
    return halls_of.emplace(h, std::move(out)).first->second;
  };

  for (std::size_t k : non_perm) {
    for (std::size_t h = 0; h < subs.size(); ++h) {
      if (!ctx->permutable[h] || h == k) continue;
      if (!subs[k].set.subset_of(subs[h].set)) continue;
      const auto &halls = halls_in(h);
      if (!halls) continue;  // H not sigma-full: nothing permutable in H
      bool sp_in_h = true;
      for (const auto &ids : *halls) {
        for (std::size_t L : ids)
          if (!lattice_product_ok(lat, k, L)) {
            sp_in_h = false;
            break;
          }
        if (!sp_in_h) break;
      }
      if (sp_in_h)
        return Verdict::no(
            "sigma-permutability fails to be transitive through a subgroup "
            "of order " + std::to_string(subs[h].order));
    }
  }
  return Verdict::yes();
}

CrossReport cross_validate(GroupRef G, const SigmaPartition &sigma,
                           const CapConfig &caps) {
  CrossReport rep;
  // Keeps the lattice-backed context alive so every check below shares it.
  auto ctx_hold = make_sigma_context(G, sigma, caps);
  rep.cls = classify(G, sigma, caps);
  rep.oracle_brute = is_PsigmaT_brute(G, sigma, caps);
  rep.oracle_transitive = is_PsigmaT_transitive(G, sigma, caps);
  rep.oracle = rep.oracle_brute.decided() ? rep.oracle_brute
                                          : rep.oracle_transitive;
  rep.theorem_b = theorem_B_check(G, sigma, caps);
  rep.theorem_c = theorem_C_check(G, sigma, caps);
  rep.theorem_d = theorem_D_check(G, sigma, caps);

  for (const BlockId &i : sigma.blocks_of_factored(G->order_factored())) {
    HallResult h = hall_subgroup(G, sigma, i, caps);
    std::string value = h.verdict.is_yes()
                            ? std::to_string(h.subgroup->order())
                            : (h.verdict.is_no() ? "none" : "undecided");
    rep.hall_summary.emplace_back(sigma.block_label(i), value);
  }

  if (rep.cls.n_residual) {
    GroupRef D = soluble_residual(**rep.cls.n_residual);
    if (!D->is_trivial()) {
      rep.robinson_result = robinson_complex(G, sigma, D, caps);
      if (rep.robinson_result.complex)
        rep.robinson = rep.robinson_result.complex;
    }
  }

  auto flag = [&](const std::string &what, const Verdict &a,
                  const Verdict &b) {
    if (a.decided() && b.decided() && !a.same_state(b)) {
      rep.consistent = false;
      rep.disagreements.push_back(what + ": " + a.str() + " vs " + b.str());
    }
  };
  flag("brute vs transitive oracle", rep.oracle_brute, rep.oracle_transitive);
  if (rep.cls.sigma_soluble.is_yes())
    flag("theorem B vs oracle", rep.theorem_b.overall, rep.oracle);
  if (!rep.theorem_c.items.empty() &&
      rep.theorem_c.items.front().verdict.is_yes())
    flag("theorem C vs oracle", rep.theorem_c.overall, rep.oracle);
  flag("theorem D vs sigma-SC", rep.theorem_d.overall, rep.cls.sigma_sc);
  return rep;
}

}  // namespace sigmalib
