#include "sigmalib/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace sigmalib {

Perm Perm::identity(unsigned degree) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), 0u);
  return Perm(std::move(img));
}

Perm::Perm(std::vector<Point> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (Point p : img_) {
    if (p >= img_.size() || seen[p])
      throw ParseError("image sequence is not a bijection");
    seen[p] = true;
  }
}

bool Perm::is_identity() const {
  for (Point p = 0; p < img_.size(); ++p)
    if (img_[p] != p) return false;
  return true;
}

Perm Perm::inverse() const {
  std::vector<Point> inv(img_.size());
  for (Point p = 0; p < img_.size(); ++p) inv[img_[p]] = p;
  return Perm(std::move(inv));
}

u64 Perm::order() const {
  std::vector<bool> seen(img_.size(), false);
  u64 ord = 1;
  for (Point p = 0; p < img_.size(); ++p) {
    if (seen[p]) continue;
    u64 len = 0;
    Point q = p;
    do {
      seen[q] = true;
      q = img_[q];
      ++len;
    } while (q != p);
    ord = lcm_u64(ord, len);
  }
  return ord;
}

Point Perm::first_moved() const {
  for (Point p = 0; p < img_.size(); ++p)
    if (img_[p] != p) return p;
  return degree();
}

std::vector<Point> Perm::support() const {
  std::vector<Point> s;
  for (Point p = 0; p < img_.size(); ++p)
    if (img_[p] != p) s.push_back(p);
  return s;
}

Perm compose(const Perm &a, const Perm &b) {
  if (a.degree() != b.degree())
    throw DimensionError("compose: degree mismatch");
  std::vector<Point> img(a.degree());
  for (Point p = 0; p < a.degree(); ++p) img[p] = b[a[p]];
  return Perm(std::move(img));
}

Perm conjugate(const Perm &a, const Perm &x) {
  if (a.degree() != x.degree())
    throw DimensionError("conjugate: degree mismatch");
  // (x^-1 a x)[p] = x[a[x^-1[p]]]; build via images of x directly.
  std::vector<Point> img(a.degree());
  for (Point p = 0; p < a.degree(); ++p) img[x[p]] = x[a[p]];
  return Perm(std::move(img));
}

Perm commutator(const Perm &a, const Perm &b) {
  return compose(compose(a.inverse(), b.inverse()), compose(a, b));
}

Perm perm_power(const Perm &a, u64 e) {
  Perm r = Perm::identity(a.degree());
  Perm base = a;
  while (e) {
    if (e & 1) r = compose(r, base);
    base = compose(base, base);
    e >>= 1;
  }
  return r;
}

namespace {

struct CycleLexer {
  const std::string &s;
  std::size_t pos = 0;
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool at_end() {
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
  u64 read_int() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos == start)
      throw ParseError("cycle notation: expected integer at position " +
                       std::to_string(start) + " in \"" + s + "\"");
    return std::stoull(s.substr(start, pos - start));
  }
};

}  // namespace

Perm perm_from_cycles(const std::string &text, unsigned degree) {
  CycleLexer lex{text};
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), 0u);
  std::set<u64> used;

  if (lex.at_end()) throw ParseError("cycle notation: empty input");

  bool any_cycle = false;
  while (!lex.at_end()) {
    if (!lex.eat('('))
      throw ParseError("cycle notation: expected '(' at position " +
                       std::to_string(lex.pos) + " in \"" + text + "\"");
    if (lex.eat(')')) {
      // "()" is the identity; only valid alone.
      if (any_cycle || !lex.at_end())
        throw ParseError("cycle notation: \"()\" must stand alone");
      return Perm(std::move(img));
    }
    std::vector<u64> cycle;
    while (!lex.eat(')')) {
      u64 v = lex.read_int();
      if (v < 1 || v > degree)
        throw ParseError("cycle notation: point " + std::to_string(v) +
                         " out of range 1.." + std::to_string(degree));
      if (!used.insert(v).second)
        throw ParseError("cycle notation: repeated point " +
                         std::to_string(v));
      cycle.push_back(v);
      if (lex.at_end() && text.find(')', lex.pos) == std::string::npos)
        throw ParseError("cycle notation: unclosed '('");
    }
    if (cycle.empty())
      throw ParseError("cycle notation: empty cycle");
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      Point from = static_cast<Point>(cycle[i] - 1);
      Point to = static_cast<Point>(cycle[(i + 1) % cycle.size()] - 1);
      img[from] = to;
    }
    any_cycle = true;
  }
  return Perm(std::move(img));
}

std::string perm_to_cycles(const Perm &p) {
  std::string out;
  std::vector<bool> seen(p.degree(), false);
  for (Point start = 0; start < p.degree(); ++start) {
    if (seen[start] || p[start] == start) {
      seen[start] = true;
      continue;
    }
    out += '(';
    Point q = start;
    bool first = true;
    do {
      if (!first) out += ' ';
      out += std::to_string(q + 1);
      seen[q] = true;
      first = false;
      q = p[q];
    } while (q != start);
    out += ')';
  }
  if (out.empty()) out = "()";
  return out;
}

}  // namespace sigmalib
