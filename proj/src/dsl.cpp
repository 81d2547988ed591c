#include "sigmalib/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

#include "sigmalib/group_ops.hpp"

namespace sigmalib {

namespace {

struct Lexer {
  const std::string &s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool eat_word(const std::string &w) {
    skip_ws();
    if (s.compare(pos, w.size(), w) == 0) {
      pos += w.size();
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string &what) {
    throw ParseError("group expression: " + what + " at position " +
                     std::to_string(pos) + " in \"" + s + "\"");
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  u64 read_int() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos == start) fail("expected integer");
    return std::stoull(s.substr(start, pos - start));
  }
  std::string read_name() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    if (pos == start) fail("expected name");
    return s.substr(start, pos - start);
  }
};

ExprPtr make(GroupExpr e) { return std::make_shared<GroupExpr>(std::move(e)); }

void validate_semidirect(u64 n, u64 m, u64 k, Lexer *lex) {
  auto fail = [&](const std::string &msg) {
    if (lex) lex->fail(msg);
    throw ParseError("group expression: " + msg);
  };
  if (n < 2 || m < 2) fail("semidirect parameters must be at least 2");
  if (k == 0 || k >= n) fail("action parameter k must satisfy 1 <= k < n");
  if (gcd_u64(n, k) != 1)
    fail("gcd(" + std::to_string(n) + ", " + std::to_string(k) + ") != 1");
  if (pow_mod(k, m, n) != 1)
    fail("k^m != 1 (mod n): the action x -> x^" + std::to_string(k) +
         " does not have order dividing " + std::to_string(m));
}

ExprPtr parse_expr(Lexer &lex);

ExprPtr parse_term(Lexer &lex) {
  lex.skip_ws();
  if (lex.eat('(')) {
    ExprPtr inner = parse_expr(lex);
    lex.expect(')');
    return inner;
  }
  if (lex.eat_word("preset:")) {
    GroupExpr e;
    e.kind = GroupExpr::Kind::Preset;
    e.name = lex.read_name();
    return make(std::move(e));
  }
  if (lex.eat_word("perm[")) {
    GroupExpr e;
    e.kind = GroupExpr::Kind::ExplicitPerms;
    e.degree = static_cast<unsigned>(lex.read_int());
    lex.expect(';');
    std::string cyc;
    int depth = 0;
    auto trim = [](std::string t) {
      while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front())))
        t.erase(t.begin());
      while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back())))
        t.pop_back();
      return t;
    };
    while (lex.pos < lex.s.size()) {
      char c = lex.s[lex.pos];
      if (c == ']' && depth == 0) break;
      if (c == ',' && depth == 0) {
        e.cycles.push_back(trim(cyc));
        cyc.clear();
        ++lex.pos;
        continue;
      }
      if (c == '(') ++depth;
      if (c == ')') --depth;
      cyc += c;
      ++lex.pos;
    }
    cyc = trim(cyc);
    if (!cyc.empty()) e.cycles.push_back(cyc);
    lex.expect(']');
    if (e.cycles.empty()) lex.fail("perm[...] needs at least one generator");
    return make(std::move(e));
  }
  if (lex.eat_word("SL(2,")) {
    GroupExpr e;
    e.kind = GroupExpr::Kind::SL2;
    e.n = lex.read_int();
    lex.expect(')');
    if (e.n != 2 && e.n != 3 && e.n != 5 && e.n != 7)
      lex.fail("SL(2,q) supports q in {2, 3, 5, 7}");
    return make(std::move(e));
  }
  if (lex.eat_word("Q8")) {
    GroupExpr e;
    e.kind = GroupExpr::Kind::Q8;
    return make(std::move(e));
  }
  char c = lex.peek();
  if (c == 'C' || c == 'D' || c == 'S' || c == 'A') {
    ++lex.pos;
    u64 n = lex.read_int();
    if (c == 'C') {
      // possible semidirect tail: C n : C m @ k
      std::size_t save = lex.pos;
      if (lex.eat(':')) {
        if (!lex.eat('C')) lex.fail("expected 'C' after ':'");
        u64 m = lex.read_int();
        lex.expect('@');
        u64 k = lex.read_int();
        validate_semidirect(n, m, k, &lex);
        GroupExpr e;
        e.kind = GroupExpr::Kind::Semidirect;
        e.n = n;
        e.m = m;
        e.k = k;
        return make(std::move(e));
      }
      lex.pos = save;
      GroupExpr e;
      e.kind = GroupExpr::Kind::Cyclic;
      e.n = n;
      if (n == 0) lex.fail("C0 is not a group");
      return make(std::move(e));
    }
    GroupExpr e;
    e.n = n;
    if (c == 'D') {
      e.kind = GroupExpr::Kind::Dihedral;
      if (n < 3) lex.fail("dihedral groups need n >= 3");
    } else if (c == 'S') {
      e.kind = GroupExpr::Kind::Sym;
      if (n == 0) lex.fail("S0 is not supported");
    } else {
      e.kind = GroupExpr::Kind::Alt;
      if (n == 0) lex.fail("A0 is not supported");
    }
    return make(std::move(e));
  }
  lex.fail("expected a group term");
}

ExprPtr parse_expr(Lexer &lex) {
  ExprPtr left = parse_term(lex);
  while (true) {
    lex.skip_ws();
    if (lex.pos < lex.s.size() && lex.s[lex.pos] == 'x') {
      ++lex.pos;
      ExprPtr right = parse_term(lex);
      GroupExpr e;
      e.kind = GroupExpr::Kind::Direct;
      e.left = left;
      e.right = right;
      left = make(std::move(e));
      continue;
    }
    break;
  }
  return left;
}

}  // namespace

ExprPtr parse_group_expr(const std::string &text) {
  Lexer lex{text};
  ExprPtr e = parse_expr(lex);
  if (!lex.eof()) lex.fail("trailing input");
  return e;
}

std::string print_group_expr(const GroupExpr &e) {
  switch (e.kind) {
    case GroupExpr::Kind::Cyclic: return "C" + std::to_string(e.n);
    case GroupExpr::Kind::Dihedral: return "D" + std::to_string(e.n);
    case GroupExpr::Kind::Sym: return "S" + std::to_string(e.n);
    case GroupExpr::Kind::Alt: return "A" + std::to_string(e.n);
    case GroupExpr::Kind::Q8: return "Q8";
    case GroupExpr::Kind::SL2: return "SL(2," + std::to_string(e.n) + ")";
    case GroupExpr::Kind::Semidirect:
      return "(C" + std::to_string(e.n) + " : C" + std::to_string(e.m) +
             " @ " + std::to_string(e.k) + ")";
    case GroupExpr::Kind::Direct:
      return print_group_expr(*e.left) + " x " + print_group_expr(*e.right);
    case GroupExpr::Kind::ExplicitPerms: {
      std::string out = "perm[" + std::to_string(e.degree) + "; ";
      for (std::size_t i = 0; i < e.cycles.size(); ++i) {
        if (i) out += ", ";
        out += e.cycles[i];
      }
      return out + "]";
    }
    case GroupExpr::Kind::Preset: return "preset:" + e.name;
  }
  return {};
}

namespace {

GroupRef realize_cyclic(u64 n, const CapConfig &caps) {
  if (n > caps.max_degree) throw OverflowError("degree overflow for C_n");
  auto meta = std::make_shared<Meta>();
  meta->kind = Meta::Kind::Cyclic;
  meta->n = n;
  if (n == 1) return Group::from_generators(1, {}, meta, 1);
  std::vector<Point> img(n);
  for (Point p = 0; p < n; ++p) img[p] = static_cast<Point>((p + 1) % n);
  return Group::from_generators(static_cast<unsigned>(n), {Perm(img)}, meta,
                                n);
}

GroupRef realize_dihedral(u64 n, const CapConfig &caps) {
  if (n > caps.max_degree) throw OverflowError("degree overflow for D_n");
  std::vector<Point> rot(n), refl(n);
  for (Point p = 0; p < n; ++p) {
    rot[p] = static_cast<Point>((p + 1) % n);
    refl[p] = static_cast<Point>((n - 1 - p + n) % n);
  }
  auto meta = std::make_shared<Meta>();
  meta->kind = Meta::Kind::Atomic;
  meta->name = "D" + std::to_string(n);
  return Group::from_generators(static_cast<unsigned>(n),
                                {Perm(rot), Perm(refl)}, meta, 2 * n);
}

GroupRef realize_sym(u64 n, const CapConfig &caps) {
  if (n > caps.max_degree) throw OverflowError("degree overflow for S_n");
  auto meta = std::make_shared<Meta>();
  meta->kind = Meta::Kind::Atomic;
  meta->name = "S" + std::to_string(n);
  u64 order = 1;
  for (u64 i = 2; i <= n; ++i) order = checked_mul(order, i);
  if (n == 1) return Group::from_generators(1, {}, meta, 1);
  std::vector<Point> cyc(n), tr(n);
  for (Point p = 0; p < n; ++p) cyc[p] = static_cast<Point>((p + 1) % n);
  std::iota(tr.begin(), tr.end(), 0u);
  std::swap(tr[0], tr[1]);
  return Group::from_generators(static_cast<unsigned>(n),
                                {Perm(cyc), Perm(tr)}, meta, order);
}

GroupRef realize_alt(u64 n, const CapConfig &caps) {
  if (n > caps.max_degree) throw OverflowError("degree overflow for A_n");
  auto meta = std::make_shared<Meta>();
  meta->kind = Meta::Kind::Atomic;
  meta->name = "A" + std::to_string(n);
  u64 order = 1;
  for (u64 i = 2; i <= n; ++i) order = checked_mul(order, i);
  order = n >= 2 ? order / 2 : 1;
  unsigned deg = static_cast<unsigned>(std::max<u64>(n, 1));
  if (n <= 2) return Group::from_generators(deg, {}, meta, 1);
  std::vector<Perm> gens;
  gens.push_back(perm_from_cycles("(1 2 3)", deg));
  if (n > 3) {
    std::vector<Point> img(n);
    std::iota(img.begin(), img.end(), 0u);
    if (n % 2 == 1) {
      for (Point p = 0; p < n; ++p) img[p] = static_cast<Point>((p + 1) % n);
    } else {
      // (2 3 ... n): an (n-1)-cycle fixing the first point
      for (Point p = 1; p < n; ++p)
        img[p] = static_cast<Point>(p == n - 1 ? 1 : p + 1);
    }
    gens.emplace_back(std::move(img));
  }
  return Group::from_generators(deg, gens, meta, order);
}

GroupRef realize_q8() {
  auto meta = std::make_shared<Meta>();
  meta->kind = Meta::Kind::Atomic;
  meta->name = "Q8";
  // Right-regular action on {1,-1,i,-i,j,-j,k,-k}.
  return Group::from_generators(
      8,
      {perm_from_cycles("(1 3 2 4)(5 8 6 7)", 8),
       perm_from_cycles("(1 5 2 6)(3 7 4 8)", 8)},
      meta, 8);
}

GroupRef realize_sl2(u64 q, const CapConfig &caps) {
  unsigned deg = static_cast<unsigned>(q * q - 1);
  if (deg > caps.max_degree) throw OverflowError("degree overflow for SL(2,q)");
  auto idx = [&](u64 a, u64 b) { return static_cast<Point>(a * q + b - 1); };
  auto act = [&](u64 m00, u64 m01, u64 m10, u64 m11) {
    std::vector<Point> img(deg);
    for (u64 a = 0; a < q; ++a)
      for (u64 b = 0; b < q; ++b) {
        if (a == 0 && b == 0) continue;
        u64 na = (a * m00 + b * m10) % q;
        u64 nb = (a * m01 + b * m11) % q;
        img[idx(a, b)] = idx(na, nb);
      }
    return Perm(img);
  };
  auto meta = std::make_shared<Meta>();
  meta->kind = Meta::Kind::Atomic;
  meta->name = "SL(2," + std::to_string(q) + ")";
  u64 order = q * (q * q - 1);
  // Elementary matrices generate SL(2, q).
  return Group::from_generators(deg, {act(1, 1, 0, 1), act(1, 0, 1, 1)}, meta,
                                order);
}

GroupRef realize_semidirect(u64 n, u64 m, u64 k, const CapConfig &caps) {
  validate_semidirect(n, m, k, nullptr);
  if (n + m > caps.max_degree)
    throw OverflowError("degree overflow for semidirect product");
  unsigned deg = static_cast<unsigned>(n + m);
  std::vector<Point> a(deg), b(deg);
  std::iota(a.begin(), a.end(), 0u);
  std::iota(b.begin(), b.end(), 0u);
  for (u64 p = 0; p < n; ++p) a[p] = static_cast<Point>((p + 1) % n);
  for (u64 p = 0; p < n; ++p) b[p] = static_cast<Point>((p * k) % n);
  for (u64 p = 0; p < m; ++p)
    b[n + p] = static_cast<Point>(n + (p + 1) % m);
  auto meta = std::make_shared<Meta>();
  meta->kind = Meta::Kind::Semidirect;
  meta->n = n;
  meta->m = m;
  meta->k = k;
  return Group::from_generators(deg, {Perm(a), Perm(b)}, meta,
                                checked_mul(n, m));
}

Perm widen(const Perm &p, unsigned offset, unsigned deg) {
  std::vector<Point> img(deg);
  std::iota(img.begin(), img.end(), 0u);
  for (Point q = 0; q < p.degree(); ++q) img[offset + q] = offset + p[q];
  return Perm(std::move(img));
}

GroupRef realize_direct(const GroupExpr &e, const CapConfig &caps) {
  GroupRef left = realize(*e.left, caps);
  GroupRef right = realize(*e.right, caps);
  unsigned deg = left->degree() + right->degree();
  if (deg > caps.max_degree)
    throw OverflowError("degree overflow for direct product");
  auto meta = std::make_shared<Meta>();
  meta->kind = Meta::Kind::Direct;
  auto splice = [&](GroupRef part, unsigned offset) {
    if (part->meta() && part->meta()->kind == Meta::Kind::Direct) {
      for (const auto &f : part->meta()->factors)
        meta->factors.push_back({f.group, offset + f.offset});
    } else {
      meta->factors.push_back({part, offset});
    }
  };
  splice(left, 0);
  splice(right, left->degree());
  std::vector<Perm> gens;
  for (const Perm &g : left->generators()) gens.push_back(widen(g, 0, deg));
  for (const Perm &g : right->generators())
    gens.push_back(widen(g, left->degree(), deg));
  return Group::from_generators(deg, gens, meta,
                                checked_mul(left->order(), right->order()));
}

const std::map<std::string, std::string> &preset_table() {
  static const std::map<std::string, std::string> table = {
      {"ex13_sl23", "SL(2,3)"},
      {"ex13_c7c3", "C7 : C3 @ 2"},
      {"ex15iii", "A5 x (C29 : C7 @ 16)"},
      {"ex15iv", "SL(2,7) x A7 x A5 x (C43 : C7 @ 4)"},
      {"ex18_core", "SL(2,7) x A7"},
  };
  return table;
}

}  // namespace

ExprPtr preset(const std::string &name) {
  auto it = preset_table().find(name);
  if (it == preset_table().end())
    throw ParseError("unknown preset \"" + name + "\"");
  return parse_group_expr(it->second);
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto &[k, v] : preset_table()) names.push_back(k);
  return names;
}

GroupRef realize(const GroupExpr &e, const CapConfig &caps) {
  switch (e.kind) {
    case GroupExpr::Kind::Cyclic: return realize_cyclic(e.n, caps);
    case GroupExpr::Kind::Dihedral: return realize_dihedral(e.n, caps);
    case GroupExpr::Kind::Sym: return realize_sym(e.n, caps);
    case GroupExpr::Kind::Alt: return realize_alt(e.n, caps);
    case GroupExpr::Kind::Q8: return realize_q8();
    case GroupExpr::Kind::SL2: return realize_sl2(e.n, caps);
    case GroupExpr::Kind::Semidirect:
      return realize_semidirect(e.n, e.m, e.k, caps);
    case GroupExpr::Kind::Direct: return realize_direct(e, caps);
    case GroupExpr::Kind::ExplicitPerms: {
      if (e.degree > caps.max_degree)
        throw OverflowError("degree overflow for explicit permutations");
      std::vector<Perm> gens;
      for (const std::string &c : e.cycles)
        gens.push_back(perm_from_cycles(c, e.degree));
      auto meta = std::make_shared<Meta>();
      meta->kind = Meta::Kind::Atomic;
      meta->name = "perm";
      return Group::from_generators(e.degree, gens, meta);
    }
    case GroupExpr::Kind::Preset: {
      ExprPtr p = preset(e.name);
      return realize(*p, caps);
    }
  }
  throw ParseError("unreachable expression kind");
}

GroupRef realize_text(const std::string &text, const CapConfig &caps) {
  return realize(*parse_group_expr(text), caps);
}

namespace {

std::string signature_of(const Group &g) {
  std::vector<u64> orders;
  ElementStream stream(g);
  do {
    orders.push_back(stream.current().order());
  } while (stream.next());
  std::sort(orders.begin(), orders.end());
  std::string sig = std::to_string(g.order());
  sig += g.is_abelian() ? "a" : "n";
  for (u64 o : orders) {
    sig += ',';
    sig += std::to_string(o);
  }
  return sig;
}

}  // namespace

std::vector<CatalogEntry> generate_catalog(u64 order_bound,
                                           const CapConfig &caps) {
  std::vector<std::string> atom_texts;
  for (u64 n = 1; n <= order_bound; ++n)
    atom_texts.push_back("C" + std::to_string(n));
  for (u64 n = 3; 2 * n <= order_bound; ++n)
    atom_texts.push_back("D" + std::to_string(n));
  for (u64 n = 3, f = 6; f <= order_bound; ++n) {
    atom_texts.push_back("S" + std::to_string(n));
    if (f > order_bound / (n + 1)) break;
    f *= n + 1;
  }
  for (u64 n = 4, f = 12; f <= order_bound; ++n) {
    atom_texts.push_back("A" + std::to_string(n));
    if (f > order_bound / (n + 1)) break;
    f *= n + 1;
  }
  if (order_bound >= 8) atom_texts.push_back("Q8");
  if (order_bound >= 24) atom_texts.push_back("SL(2,3)");
  for (u64 n = 3; n <= order_bound / 2; ++n)
    for (u64 m = 2; n * m <= order_bound; ++m)
      for (u64 k = 2; k < n; ++k) {
        if (gcd_u64(n, k) != 1) continue;
        if (pow_mod(k, m, n) != 1) continue;
        atom_texts.push_back("(C" + std::to_string(n) + " : C" +
                             std::to_string(m) + " @ " + std::to_string(k) +
                             ")");
      }

  std::vector<CatalogEntry> entries;
  std::map<std::string, bool> seen;
  auto try_add = [&](const std::string &text) {
    GroupRef g = realize_text(text, caps);
    if (g->order() > order_bound) return;
    std::string sig = signature_of(*g);
    if (seen.emplace(sig, true).second) entries.push_back({text, g});
  };
  for (const std::string &t : atom_texts) try_add(t);

  // Products are built left-nested against the deduplicated atoms, so every
  // multiset of atoms is reachable.
  std::vector<CatalogEntry> atoms = entries;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    u64 base = entries[i].group->order();
    if (base == 1 || base * 2 > order_bound) continue;
    std::string base_text = entries[i].text;
    for (const CatalogEntry &a : atoms) {
      u64 ao = a.group->order();
      if (ao < 2 || base > order_bound / ao) continue;
      try_add(base_text + " x " + a.text);
    }
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const CatalogEntry &x, const CatalogEntry &y) {
                     return x.group->order() < y.group->order();
                   });
  return entries;
}

}  // namespace sigmalib
