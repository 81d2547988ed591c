#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sigmalib/util.hpp"

namespace sigmalib {

using Point = std::uint32_t;

// A permutation of {0..degree-1}, stored by its image sequence.
// Points act on the right: p^g = g[p], and (a*b) means "apply a, then b".
class Perm {
 public:
  Perm() = default;
  static Perm identity(unsigned degree);
  explicit Perm(std::vector<Point> images);

  unsigned degree() const { return static_cast<unsigned>(img_.size()); }
  Point operator[](Point p) const { return img_[p]; }
  const std::vector<Point> &images() const { return img_; }

  bool is_identity() const;
  Perm inverse() const;
  u64 order() const;  // lcm of cycle lengths

  bool operator==(const Perm &o) const { return img_ == o.img_; }
  bool operator!=(const Perm &o) const { return img_ != o.img_; }
  bool operator<(const Perm &o) const { return img_ < o.img_; }

  Hash128 hash() const { return hash_words(img_.data(), img_.size()); }

  // Smallest moved point, or degree() if identity.
  Point first_moved() const;
  std::vector<Point> support() const;

 private:
  std::vector<Point> img_;
};

// a then b
Perm compose(const Perm &a, const Perm &b);
// x^-1 a x
Perm conjugate(const Perm &a, const Perm &x);
// a^-1 b^-1 a b
Perm commutator(const Perm &a, const Perm &b);
Perm perm_power(const Perm &a, u64 e);

// Disjoint cycle notation, 1-based in text. "()" is the identity.
Perm perm_from_cycles(const std::string &text, unsigned degree);
std::string perm_to_cycles(const Perm &p);

}  // namespace sigmalib
