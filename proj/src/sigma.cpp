#include "sigmalib/sigma.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <unordered_set>

namespace sigmalib {

SigmaPartition SigmaPartition::sylow() {
  SigmaPartition s;
  s.sylow_ = true;
  return s;
}

SigmaPartition SigmaPartition::parse(const std::string &text) {
  std::string trimmed;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) || !trimmed.empty())
      trimmed += c;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
    trimmed.pop_back();
  if (trimmed == "sylow") return sylow();
  if (trimmed.empty()) throw ParseError("sigma spec: empty input");

  SigmaPartition s;
  std::set<u64> used;
  std::string block;
  std::stringstream ss(trimmed);
  bool saw_rest = false;
  while (std::getline(ss, block, '|')) {
    std::stringstream bs(block);
    std::string tok;
    std::vector<u64> primes;
    bool is_rest = false;
    while (bs >> tok) {
      if (tok == "*") {
        is_rest = true;
        continue;
      }
      u64 p = 0;
      for (char c : tok) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
          throw ParseError("sigma spec: bad token \"" + tok + "\"");
        p = p * 10 + static_cast<u64>(c - '0');
      }
      if (!is_prime(p))
        throw ParseError("sigma spec: " + std::to_string(p) +
                         " is not prime");
      if (!used.insert(p).second)
        throw ParseError("sigma spec: blocks overlap at " + std::to_string(p));
      primes.push_back(p);
    }
    if (is_rest) {
      if (!primes.empty())
        throw ParseError("sigma spec: '*' must be a block of its own");
      if (saw_rest) throw ParseError("sigma spec: duplicate '*' block");
      saw_rest = true;
      continue;
    }
    if (primes.empty()) throw ParseError("sigma spec: empty block");
    std::sort(primes.begin(), primes.end());
    s.blocks_.push_back(std::move(primes));
  }
  s.rest_written_ = saw_rest;
  if (s.blocks_.empty() && !saw_rest)
    throw ParseError("sigma spec: no blocks");
  return s;
}

BlockId SigmaPartition::block_of(u64 prime) const {
  if (sylow_) return BlockId::prime(prime);
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    if (std::binary_search(blocks_[i].begin(), blocks_[i].end(), prime))
      return BlockId::listed(i);
  return BlockId::rest();
}

bool SigmaPartition::in_block(u64 prime, const BlockId &b) const {
  return block_of(prime) == b;
}

std::string SigmaPartition::block_label(const BlockId &b) const {
  switch (b.kind) {
    case BlockId::Kind::Prime:
      return std::to_string(b.value);
    case BlockId::Kind::Rest:
      return "*";
    case BlockId::Kind::Listed: {
      std::string out;
      for (u64 p : blocks_[b.value]) {
        if (!out.empty()) out += ' ';
        out += std::to_string(p);
      }
      return out;
    }
  }
  return {};
}

std::string SigmaPartition::str() const {
  if (sylow_) return "sylow";
  std::string out;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) out += '|';
    out += block_label(BlockId::listed(i));
  }
  if (rest_written_ || blocks_.empty()) {
    if (!out.empty()) out += '|';
    out += '*';
  }
  return out;
}

std::vector<BlockId> SigmaPartition::blocks_of_factored(
    const Factorization &f) const {
  std::vector<BlockId> ids;
  for (auto [p, e] : f) ids.push_back(block_of(p));
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::vector<BlockId> SigmaPartition::blocks_of_number(u64 n) const {
  return blocks_of_factored(factorize(n));
}

u64 SigmaPartition::part_of(const Factorization &f, const BlockId &b) const {
  u64 part = 1;
  for (auto [p, e] : f)
    if (block_of(p) == b) part = checked_mul(part, checked_pow(p, e));
  return part;
}

bool SigmaPartition::is_block_number(const Factorization &f,
                                     const BlockId &b) const {
  for (auto [p, e] : f)
    if (!(block_of(p) == b)) return false;
  return true;
}

namespace {

std::vector<BlockId> relevant_blocks(const Group &G,
                                     const SigmaPartition &sigma) {
  return sigma.blocks_of_factored(G.order_factored());
}

GroupRef copy_group(const Group &g) { return g.self(); }

Perm shift_perm(const Perm &p, unsigned offset, unsigned ambient_degree) {
  std::vector<Point> img(ambient_degree);
  for (Point q = 0; q < ambient_degree; ++q) img[q] = q;
  for (Point q = 0; q < p.degree(); ++q) img[offset + q] = offset + p[q];
  return Perm(std::move(img));
}

}  // namespace

GroupRef O_upper(GroupRef G, const SigmaPartition &sigma, const BlockId &i,
                 const CapConfig &caps) {
  auto in_i = [&](u64 p) { return sigma.in_block(p, i); };
  std::vector<Perm> seeds;
  for (const Perm &g : G->generators()) {
    Perm h = coprime_part(g, in_i);
    if (!h.is_identity()) seeds.push_back(h);
  }
  GroupRef N = normal_closure(*G, seeds);
  Rng rng(caps.seed ^ 0x9d2c5680u);
  while (true) {
    u64 q = G->order() / N->order();
    if (sigma.is_block_number(factorize(q), i)) return N;
    // The quotient still has sigma_i'-part: adjoin the sigma_i'-part of an
    // element whose image order is not a sigma_i-number.
    bool adjoined = false;
    for (int attempt = 0; attempt < 4096 && !adjoined; ++attempt) {
      Perm g = G->random_element(rng);
      u64 m = element_order_mod(*N, g);
      if (sigma.is_block_number(factorize(m), i)) continue;
      Perm h = coprime_part(g, in_i);
      if (N->contains(h))
        throw InternalInconsistency("O_upper: coprime part already absorbed");
      std::vector<Perm> gens = N->generators();
      gens.push_back(h);
      N = normal_closure(*G, gens);
      adjoined = true;
    }
    if (adjoined) continue;
    // Deterministic fallback: walk coset representatives of N in G.
    auto ca = coset_action(*G, *N, caps.index_cap);
    if (!ca)
      throw InternalInconsistency("O_upper: sampling exhausted beyond cap");
    for (const Perm &r : ca->reps) {
      u64 m = element_order_mod(*N, r);
      if (sigma.is_block_number(factorize(m), i)) continue;
      Perm h = coprime_part(r, in_i);
      std::vector<Perm> gens = N->generators();
      gens.push_back(h);
      N = normal_closure(*G, gens);
      adjoined = true;
      break;
    }
    if (!adjoined)
      throw InternalInconsistency("O_upper: no sigma_i'-element found");
  }
}

std::optional<GroupRef> O_lower(GroupRef G, const SigmaPartition &sigma,
                                const BlockId &i, const CapConfig &caps) {
  u64 part = sigma.part_of(G->order_factored(), i);
  if (part == 1) return Group::trivial(G->degree());
  if (part == G->order()) return copy_group(*G);
  HallResult hall = hall_subgroup(G, sigma, i, caps);
  if (hall.verdict.is_yes()) {
    // Every normal sigma_i-subgroup lies in every Hall sigma_i-subgroup, so
    // the radical is the core of any one of them.
    if (auto c = core(*G, *hall.subgroup, caps.index_cap)) return *c;
  }
  if (auto normals = normal_subgroups(G, caps)) {
    GroupRef rad = Group::trivial(G->degree());
    for (const GroupRef &n : *normals)
      if (sigma.is_block_number(n->order_factored(), i)) {
        GroupRef joined = join_groups(*rad, *n);
        if (joined->order() > rad->order()) rad = joined;
      }
    return rad;
  }
  return std::nullopt;
}

namespace {

// Intersection of O^{sigma_i}(G) over the relevant blocks.
std::optional<GroupRef> sigma_nilpotent_residual(GroupRef G,
                                                 const SigmaPartition &sigma,
                                                 const CapConfig &caps) {
  GroupRef R = copy_group(*G);
  for (const BlockId &i : relevant_blocks(*G, sigma)) {
    GroupRef O = O_upper(G, sigma, i, caps);
    auto meet = intersect_normals(*G, *R, *O, caps.index_cap);
    if (!meet) return std::nullopt;
    R = *meet;
    if (R->is_trivial()) break;
  }
  return R;
}

std::optional<GroupRef> sigma_soluble_residual(GroupRef G,
                                               const SigmaPartition &sigma,
                                               const CapConfig &caps) {
  GroupRef R = copy_group(*G);
  while (true) {
    auto next = sigma_nilpotent_residual(R, sigma, caps);
    if (!next) return std::nullopt;
    if ((*next)->order() == R->order()) return R;
    R = *next;
    if (R->is_trivial()) return R;
  }
}

Verdict all_below_factors(const std::optional<BelowSeries> &below,
                          bool want_cyclic) {
  if (!below) return Verdict::undecided(cap_exceeded);
  for (const auto &f : below->factors) {
    if (want_cyclic) {
      if (!f.is_cyclic_prime)
        return Verdict::no("chief factor of order " + std::to_string(f.order) +
                           " is not cyclic");
    } else {
      if (f.is_simple.is_no())
        return Verdict::no("chief factor of order " + std::to_string(f.order) +
                           " is not simple");
      if (!f.is_simple.decided()) return Verdict::undecided(cap_exceeded);
    }
  }
  return Verdict::yes();
}

}  // namespace

Verdict is_sigma_soluble_quick(GroupRef G, const SigmaPartition &sigma,
                               const CapConfig &caps) {
  auto r = sigma_soluble_residual(G, sigma, caps);
  if (!r) return Verdict::undecided(cap_exceeded);
  return Verdict::of((*r)->is_trivial(), "sigma-soluble residual is nontrivial");
}

std::optional<GroupRef> residual(GroupRef G, const SigmaPartition &sigma,
                                 ResidualTag tag, const CapConfig &caps) {
  switch (tag) {
    case ResidualTag::SigmaNilpotent:
      return sigma_nilpotent_residual(G, sigma, caps);
    case ResidualTag::SigmaSoluble:
      return sigma_soluble_residual(G, sigma, caps);
    case ResidualTag::Soluble:
      return soluble_residual(*G);
    case ResidualTag::SigmaSupersoluble: {
      // If G is already sigma-supersoluble the residual is trivial.
      auto nres = sigma_nilpotent_residual(G, sigma, caps);
      if (nres) {
        Verdict ss = all_below_factors(chief_factors_below(G, *nres, caps),
                                       /*want_cyclic=*/true);
        if (ss.is_yes()) return Group::trivial(G->degree());
      }
      if (G->order() <= caps.element_cap) {
        if (auto normals = normal_subgroups(G, caps)) {
          for (const GroupRef &N : *normals) {
            auto q = quotient(*G, *N, caps.index_cap);
            if (!q) continue;
            auto qres = sigma_nilpotent_residual(q->group, sigma, caps);
            if (!qres) continue;
            Verdict ss = all_below_factors(
                chief_factors_below(q->group, *qres, caps), true);
            if (ss.is_yes()) return copy_group(*N);
          }
          return std::nullopt;
        }
      }
      // Large sigma-SC groups: the residual is the soluble residual of the
      // sigma-nilpotent residual, verified by checking the quotient.
      if (!nres) return std::nullopt;
      Verdict sc = all_below_factors(chief_factors_below(G, *nres, caps),
                                     /*want_cyclic=*/false);
      if (!sc.is_yes()) return std::nullopt;
      GroupRef D = soluble_residual(**nres);
      auto q = quotient(*G, *D, caps.index_cap);
      if (!q) return std::nullopt;
      auto qres = sigma_nilpotent_residual(q->group, sigma, caps);
      if (!qres) return std::nullopt;
      Verdict ss =
          all_below_factors(chief_factors_below(q->group, *qres, caps), true);
      if (!ss.is_yes()) return std::nullopt;
      return D;
    }
  }
  return std::nullopt;
}

std::optional<GroupRef> radical_subgroup(GroupRef G,
                                         const SigmaPartition &sigma,
                                         RadicalTag tag,
                                         const CapConfig &caps) {
  auto in_class = [&](GroupRef H) -> Verdict {
    if (tag == RadicalTag::Soluble)
      return Verdict::of(soluble_residual(*H)->is_trivial());
    return is_sigma_soluble_quick(H, sigma, caps);
  };
  Verdict whole = in_class(G);
  if (whole.is_yes()) return copy_group(*G);

  // Factor-wise law: the radical of a product is the product of the
  // factor radicals.
  if (MetaPtr meta = G->meta(); meta && meta->kind == Meta::Kind::Direct) {
    std::vector<Perm> gens;
    u64 order = 1;
    bool ok = true;
    for (const auto &f : meta->factors) {
      auto r = radical_subgroup(f.group, sigma, tag, caps);
      if (!r) {
        ok = false;
        break;
      }
      for (const Perm &g : (*r)->generators())
        gens.push_back(shift_perm(g, f.offset, G->degree()));
      order = checked_mul(order, (*r)->order());
    }
    if (ok) return Group::from_generators(G->degree(), gens, {}, order);
  }
  if (auto parts = orbit_decomposition(*G)) {
    std::vector<Perm> gens;
    u64 order = 1;
    bool ok = true;
    for (const GroupRef &part : *parts) {
      auto r = radical_subgroup(part, sigma, tag, caps);
      if (!r) {
        ok = false;
        break;
      }
      for (const Perm &g : (*r)->generators()) gens.push_back(g);
      order = checked_mul(order, (*r)->order());
    }
    if (ok) return Group::from_generators(G->degree(), gens, {}, order);
  }
  if (auto normals = normal_subgroups(G, caps)) {
    GroupRef rad = Group::trivial(G->degree());
    for (const GroupRef &n : *normals) {
      if (n->order() == 1) continue;
      if (!in_class(n).is_yes()) continue;
      GroupRef joined = join_groups(*rad, *n);
      if (joined->order() > rad->order()) rad = joined;
    }
    return rad;
  }
  return std::nullopt;
}

HallResult hall_subgroup(GroupRef G, const SigmaPartition &sigma,
                         const BlockId &i, const CapConfig &caps) {
  HallResult res;
  u64 target = sigma.part_of(G->order_factored(), i);
  if (target == 1) {
    res.verdict = Verdict::yes();
    res.subgroup = Group::trivial(G->degree());
    return res;
  }
  if (target == G->order()) {
    res.verdict = Verdict::yes();
    res.subgroup = copy_group(*G);
    return res;
  }

  if (MetaPtr meta = G->meta()) {
    if (meta->kind == Meta::Kind::Cyclic) {
      const Perm &a = G->generators().at(0);
      res.verdict = Verdict::yes();
      res.subgroup =
          generated_by(G->degree(), {perm_power(a, meta->n / target)}, target);
      return res;
    }
    if (meta->kind == Meta::Kind::Semidirect) {
      // C_n x| C_m: both parts split arithmetically, and the C_n-part of the
      // Hall subgroup is normalized by the C_m-part.
      const Perm &a = G->generators().at(0);
      const Perm &b = G->generators().at(1);
      u64 na = sigma.part_of(factorize(meta->n), i);
      u64 mb = sigma.part_of(factorize(meta->m), i);
      std::vector<Perm> gens;
      if (na > 1) gens.push_back(perm_power(a, meta->n / na));
      if (mb > 1) gens.push_back(perm_power(b, meta->m / mb));
      res.verdict = Verdict::yes();
      res.subgroup =
          Group::from_generators(G->degree(), gens, {}, checked_mul(na, mb));
      return res;
    }
    if (meta->kind == Meta::Kind::Direct) {
      std::vector<Perm> gens;
      u64 order = 1;
      Verdict v = Verdict::yes();
      for (const auto &f : meta->factors) {
        HallResult sub = hall_subgroup(f.group, sigma, i, caps);
        if (sub.verdict.is_no()) {
          // A Hall subgroup of the product would project onto Hall
          // subgroups of the factors, so nonexistence lifts.
          res.verdict = Verdict::no("factor has no Hall subgroup for block " +
                                    sigma.block_label(i));
          return res;
        }
        if (!sub.verdict.decided()) {
          v = sub.verdict;
          continue;
        }
        for (const Perm &g : sub.subgroup->generators())
          gens.push_back(shift_perm(g, f.offset, G->degree()));
        order = checked_mul(order, sub.subgroup->order());
      }
      if (v.is_yes()) {
        res.verdict = Verdict::yes();
        res.subgroup = Group::from_generators(G->degree(), gens, {}, order);
        return res;
      }
      res.verdict = v;
      return res;
    }
  }

  // Sylow-closure attempts first (cheap, can only answer Yes): join Sylow
  // subgroups for the block's primes, retrying with random conjugates; only
  // an exact order match is accepted.
  std::vector<u64> primes;
  for (auto [p, e] : G->order_factored())
    if (sigma.in_block(p, i)) primes.push_back(p);
  std::vector<GroupRef> sylows;
  bool have_all = true;
  for (u64 p : primes) {
    auto sp = sylow_subgroup(G, p, caps);
    if (!sp) {
      have_all = false;
      break;
    }
    sylows.push_back(*sp);
  }
  if (have_all) {
    Rng rng(caps.seed ^ 0x85ebca6bu);
    for (int attempt = 0; attempt < 512; ++attempt) {
      std::vector<Perm> gens;
      for (const GroupRef &s : sylows) {
        Perm x = attempt == 0 ? Perm::identity(G->degree())
                              : G->random_element(rng);
        for (const Perm &g : s->generators())
          gens.push_back(conjugate(g, x));
      }
      GroupRef J = generated_by(G->degree(), gens);
      if (J->order() == target) {
        res.verdict = Verdict::yes();
        res.subgroup = J;
        return res;
      }
      if (sylows.size() == 1) break;  // a Sylow subgroup is the Hall subgroup
    }
  }

  // Exhaustive and exact below the subgroup cap.
  if (auto lat = lattice_for(G, caps)) {
    for (const auto &sub : lat->subs)
      if (sub.order == target) {
        res.verdict = Verdict::yes();
        res.subgroup = lat->model->group_from_set(sub.set);
        return res;
      }
    res.verdict = Verdict::no("no subgroup of order " + std::to_string(target));
    return res;
  }
  res.verdict = Verdict::undecided(cap_exceeded);
  return res;
}

CompleteHallResult complete_hall_set(GroupRef G, const SigmaPartition &sigma,
                                     const CapConfig &caps) {
  CompleteHallResult out;
  Verdict v = Verdict::yes();
  for (const BlockId &i : relevant_blocks(*G, sigma)) {
    HallResult h = hall_subgroup(G, sigma, i, caps);
    if (h.verdict.is_no()) {
      out.verdict = Verdict::no("no Hall subgroup for block " +
                                sigma.block_label(i));
      return out;
    }
    if (!h.verdict.decided()) {
      v = h.verdict;
      continue;
    }
    out.set.members.emplace_back(i, h.subgroup);
  }
  out.verdict = v;
  return out;
}

Classification classify(GroupRef G, const SigmaPartition &sigma,
                        const CapConfig &caps) {
  Classification c;
  c.sigma_primary =
      Verdict::of(sigma.is_primary_number(G->order()), "order spans blocks");
  c.soluble_residual_group = soluble_residual(*G);
  c.soluble = Verdict::of(c.soluble_residual_group->is_trivial(),
                          "soluble residual nontrivial");

  auto nres = sigma_nilpotent_residual(G, sigma, caps);
  if (nres) c.n_residual = *nres;

  // sigma-nilpotent two ways: normal Hall subgroups for every block, and
  // triviality of the residual. They must agree whenever both decide.
  Verdict route_halls = Verdict::yes();
  for (const BlockId &i : relevant_blocks(*G, sigma)) {
    HallResult h = hall_subgroup(G, sigma, i, caps);
    if (h.verdict.is_no()) {
      route_halls = Verdict::no("no Hall subgroup for block " +
                                sigma.block_label(i));
      break;
    }
    if (!h.verdict.decided()) {
      route_halls = h.verdict;
      continue;
    }
    if (!is_normal_in(*G, *h.subgroup)) {
      route_halls = Verdict::no("Hall subgroup for block " +
                                sigma.block_label(i) + " is not normal");
      break;
    }
  }
  Verdict route_residual = nres ? Verdict::of((*nres)->is_trivial(),
                                              "sigma-nilpotent residual nontrivial")
                                : Verdict::undecided(cap_exceeded);
  if (route_halls.decided() && route_residual.decided() &&
      !route_halls.same_state(route_residual))
    throw InternalInconsistency(
        "sigma-nilpotent routes disagree: halls=" + route_halls.str() +
        " residual=" + route_residual.str());
  c.sigma_nilpotent = route_halls.decided() ? route_halls : route_residual;

  // sigma-soluble two ways: chief factors all sigma-primary, and the
  // iterated residual chain reaching 1.
  Verdict route_chief = Verdict::undecided(cap_exceeded);
  if (auto cs = chief_series(G, caps)) {
    route_chief = Verdict::yes();
    for (const auto &f : cs->factors)
      if (sigma.blocks_of_factored(f.order_fac).size() > 1) {
        route_chief = Verdict::no("chief factor of order " +
                                  std::to_string(f.order) +
                                  " is not sigma-primary");
        break;
      }
  }
  Verdict route_iter = is_sigma_soluble_quick(G, sigma, caps);
  if (route_chief.decided() && route_iter.decided() &&
      !route_chief.same_state(route_iter))
    throw InternalInconsistency("sigma-soluble routes disagree: chief=" +
                                route_chief.str() + " iterated=" +
                                route_iter.str());
  c.sigma_soluble = route_chief.decided() ? route_chief : route_iter;
  if (auto sres = sigma_soluble_residual(G, sigma, caps)) c.s_residual = *sres;

  if (nres) {
    auto below = chief_factors_below(G, *nres, caps);
    c.sigma_supersoluble = all_below_factors(below, /*want_cyclic=*/true);
    c.sigma_sc = all_below_factors(below, /*want_cyclic=*/false);
    c.sigma_perfect = Verdict::of((*nres)->order() == G->order(),
                                  "proper sigma-nilpotent residual");
  } else {
    c.sigma_supersoluble = Verdict::undecided(cap_exceeded);
    c.sigma_sc = Verdict::undecided(cap_exceeded);
    c.sigma_perfect = Verdict::undecided(cap_exceeded);
  }
  if (auto ures = residual(G, sigma, ResidualTag::SigmaSupersoluble, caps))
    c.u_residual = *ures;

  c.sigma_full = complete_hall_set(G, sigma, caps).verdict;
  return c;
}

namespace {
std::mutex ctx_cache_mutex;
std::unordered_map<std::string,
                   std::shared_ptr<const SigmaContext>> ctx_cache;

std::string ctx_key(const Group *g, const SigmaPartition &sigma) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%p|", static_cast<const void *>(g));
  return std::string(buf) + sigma.str();
}
}  // namespace

std::shared_ptr<const SigmaContext> make_sigma_context(
    GroupRef G, const SigmaPartition &sigma, const CapConfig &caps) {
  std::string key = ctx_key(G.get(), sigma);
  {
    std::lock_guard<std::mutex> lk(ctx_cache_mutex);
    auto it = ctx_cache.find(key);
    if (it != ctx_cache.end()) return it->second;
  }
  auto lat = lattice_for(G, caps);
  if (!lat) return nullptr;
  SigmaContext ctx;
  ctx.G = G;
  ctx.sigma = sigma;
  ctx.lat = lat;
  ctx.relevant = relevant_blocks(*G, sigma);

  const auto &subs = lat->subs;
  ctx.sigma_full = true;
  for (const BlockId &b : ctx.relevant) {
    u64 part = sigma.part_of(G->order_factored(), b);
    std::vector<std::size_t> ids;
    for (std::size_t s = 0; s < subs.size(); ++s)
      if (subs[s].order == part) ids.push_back(s);
    if (ids.empty()) ctx.sigma_full = false;
    ctx.hall_ids.push_back(std::move(ids));
  }

  // sigma-subnormal fixed point: add B whenever some member C contains it
  // with B normal in C or C/core_C(B) sigma-primary.
  ctx.subnormal.assign(subs.size(), 0);
  std::size_t full = lat->full_id;
  ctx.subnormal[full] = 1;
  std::vector<std::size_t> members{full};
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t b = 0; b < subs.size(); ++b) {
      if (ctx.subnormal[b]) continue;
      for (std::size_t cc : members) {
        if (subs[cc].order % subs[b].order != 0 ||
            !subs[b].set.subset_of(subs[cc].set))
          continue;
        bool admit = b == cc || lat->is_normal_in(b, cc);
        if (!admit) {
          u64 core_n = lat->core_in(b, cc).count();
          admit = sigma.is_primary_number(subs[cc].order / core_n);
        }
        if (admit) {
          ctx.subnormal[b] = 1;
          members.push_back(b);
          changed = true;
          break;
        }
      }
    }
  }

  // Definition-route sigma-permutability for every subgroup at once.
  ctx.permutable.assign(subs.size(), 0);
  if (ctx.sigma_full) {
    for (std::size_t s = 0; s < subs.size(); ++s) {
      bool ok = true;
      for (const auto &ids : ctx.hall_ids) {
        for (std::size_t h : ids) {
          if (subs[s].set.subset_of(subs[h].set) ||
              subs[h].set.subset_of(subs[s].set))
            continue;
          // AB subgroup iff |<A,B>| = |A||B|/|A∩B|
          u64 inter = subs[s].set.intersect(subs[h].set).count();
          std::vector<std::size_t> gens = subs[s].gens;
          gens.insert(gens.end(), subs[h].gens.begin(), subs[h].gens.end());
          u64 join_order = lat->model->closure(gens).count();
          if (join_order != subs[s].order / inter * subs[h].order) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      ctx.permutable[s] = ok;
    }
  }
  auto shared = std::make_shared<const SigmaContext>(std::move(ctx));
  {
    std::lock_guard<std::mutex> lk(ctx_cache_mutex);
    if (ctx_cache.size() > 8192) ctx_cache.clear();
    ctx_cache[key] = shared;
  }
  return shared;
}

Verdict is_sigma_subnormal(GroupRef G, const SigmaPartition &sigma,
                           const Subgroup &A, const CapConfig &caps) {
  auto ctx = make_sigma_context(G, sigma, caps);
  if (!ctx) return Verdict::undecided(cap_exceeded);
  ElemSet aset = ctx->lat->model->set_of_group(*A.group);
  std::size_t id = ctx->lat->find(aset);
  if (id == SmallLattice::npos)
    throw InternalInconsistency("is_sigma_subnormal: subgroup not in lattice");
  return Verdict::of(ctx->subnormal[id], "no admissible chain to G");
}

Verdict is_sigma_permutable(GroupRef G, const SigmaPartition &sigma,
                            const Subgroup &A, const CapConfig &caps) {
  if (auto ctx = make_sigma_context(G, sigma, caps)) {
    if (!ctx->sigma_full) return Verdict::no("group is not sigma-full");
    ElemSet aset = ctx->lat->model->set_of_group(*A.group);
    std::size_t id = ctx->lat->find(aset);
    if (id == SmallLattice::npos)
      throw InternalInconsistency(
          "is_sigma_permutable: subgroup not in lattice");
    return Verdict::of(ctx->permutable[id],
                       "fails to permute with some Hall subgroup");
  }
  return is_sigma_permutable_r2(G, sigma, A, caps);
}

Verdict is_sigma_permutable_r2(GroupRef G, const SigmaPartition &sigma,
                               const Subgroup &A, const CapConfig &caps) {
  CompleteHallResult hs = complete_hall_set(G, sigma, caps);
  if (hs.verdict.is_no()) return Verdict::no("group is not sigma-full");
  if (!hs.verdict.decided()) return Verdict::undecided(hs.verdict.reason());
  for (const auto &[block, L] : hs.set.members) {
    auto N = normalizer(*G, *L, caps.element_cap);
    if (!N) return Verdict::undecided(cap_exceeded);
    auto ca = coset_action(*G, **N, caps.index_cap);
    if (!ca) return Verdict::undecided(cap_exceeded);
    for (const Perm &x : ca->reps) {
      std::vector<Perm> conj_gens;
      for (const Perm &g : L->generators())
        conj_gens.push_back(conjugate(g, x));
      GroupRef Lx =
          Group::from_generators(G->degree(), conj_gens, {}, L->order());
      Verdict v = product_is_subgroup(Subgroup(G, A.group), Subgroup(G, Lx),
                                      caps);
      if (!v.is_yes())
        return v.is_no()
                   ? Verdict::no("fails against a conjugate Hall subgroup of "
                                 "block " + sigma.block_label(block))
                   : v;
    }
  }
  return Verdict::yes();
}

Verdict is_sigma_permutable_r3(GroupRef G, const SigmaPartition &sigma,
                               const BlockId &i, const Subgroup &A,
                               const CapConfig &caps) {
  if (!sigma.is_block_number(A.group->order_factored(), i))
    return Verdict::undecided("subgroup is not a block group");
  GroupRef O = O_upper(G, sigma, i, caps);
  for (const Perm &g : O->generators())
    for (const Perm &a : A.group->generators())
      if (!A.group->contains(conjugate(a, g)))
        return Verdict::no("O^{sigma_i}(G) does not normalize the subgroup");
  return Verdict::yes();
}

Verdict satisfies_N_sigma_i(GroupRef G, const SigmaPartition &sigma,
                            const BlockId &i, const CapConfig &caps) {
  if (G->is_abelian()) return Verdict::yes();
  auto normals = normal_subgroups(G, caps);
  if (!normals) return Verdict::undecided(cap_exceeded);
  for (const GroupRef &N : *normals) {
    Verdict nsol = is_sigma_soluble_quick(N, sigma, caps);
    if (!nsol.decided()) return Verdict::undecided(nsol.reason());
    if (!nsol.is_yes()) continue;
    auto q = quotient(*G, *N, caps.index_cap);
    if (!q) return Verdict::undecided(cap_exceeded);
    auto O = O_lower(q->group, sigma, i, caps);
    if (!O) return Verdict::undecided(cap_exceeded);
    if ((*O)->is_trivial()) continue;
    if ((*O)->order() > caps.element_cap)
      return Verdict::undecided(cap_exceeded);
    GroupRef U = O_upper(q->group, sigma, i, caps);
    // Elements inducing power automorphisms form a subgroup, and O^{sigma_i}
    // is generated by the sigma_i'-elements, so generators suffice.
    ElementStream stream(**O);
    do {
      const Perm &c = stream.current();
      if (c.is_identity()) continue;
      std::unordered_set<Hash128, Hash128Hasher> powers;
      Perm pw = c;
      for (u64 k = 1; k <= c.order(); ++k) {
        powers.insert(pw.hash());
        pw = compose(pw, c);
      }
      for (const Perm &u : U->generators()) {
        if (!powers.count(conjugate(c, u).hash()))
          return Verdict::no("a sigma_i'-element moves the cyclic subgroup of "
                             "an element of order " + std::to_string(c.order()));
      }
    } while (stream.next());
  }
  return Verdict::yes();
}

}  // namespace sigmalib
