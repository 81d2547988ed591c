#pragma once

#include <vector>

#include "sigmalib/perm.hpp"
#include "sigmalib/util.hpp"

namespace sigmalib {

// Deterministic Schreier-Sims stabilizer chain. Base points are chosen as the
// smallest moved point first (optionally under a caller-supplied priority
// order, which kernel computations use to stabilize action points first).
// Transversals are stored as Schreier vectors.
class StabChain {
 public:
  explicit StabChain(unsigned degree, std::vector<Point> preset_base = {});

  unsigned degree() const { return degree_; }

  // Early-exit target: once the chain order reaches this, verification stops.
  // Sound because the transversal product never exceeds the group order.
  void set_expected_order(u64 n) { expected_ = n; }

  // Adds a generator and restores the chain invariant. Returns false if the
  // element was already contained.
  bool extend(const Perm &g);

  bool contains(const Perm &g) const;
  Perm sift(const Perm &g) const;

  u64 order() const;
  Factorization order_factored() const;

  unsigned num_levels() const { return static_cast<unsigned>(levels_.size()); }
  Point base_point(unsigned level) const { return levels_[level].base; }
  const std::vector<Point> &orbit(unsigned level) const {
    return levels_[level].orbit;
  }
  Perm transversal(unsigned level, Point pt) const;

  const std::vector<Perm> &strong_gens() const { return sgens_; }
  // Strong generators fixing base[0..level) pointwise; they generate the
  // corresponding stabilizer subgroup.
  std::vector<Perm> level_gens(unsigned level) const;
  unsigned preset_base_size() const { return preset_size_; }

 private:
  struct Level {
    Point base = 0;
    std::vector<int> gen_idx;
    std::vector<Point> orbit;
    std::vector<int> pos;    // point -> orbit position, -1 outside
    std::vector<Point> from; // Schreier vector: predecessor point
    std::vector<int> via;    // generator index used on the edge
  };

  void append_level(Point base);
  void rebuild_orbit(unsigned level);
  // Sifts g through levels [start..end); returns residue and the level at
  // which sifting stopped (== num_levels() when all were passed).
  std::pair<Perm, unsigned> sift_from(const Perm &g, unsigned start) const;
  void insert_residue(const Perm &r, unsigned fix_prefix);
  // Scans level's Schreier generators; returns level where a new generator
  // was inserted, or -1 if the level verified clean.
  int scan_level(unsigned level);
  void resolve(unsigned from_level);
  unsigned rank(Point p) const;

  unsigned degree_;
  unsigned preset_size_ = 0;
  u64 expected_ = 0;
  std::vector<Perm> sgens_;
  std::vector<Perm> sgens_inv_;
  std::vector<unsigned> fix_prefix_;  // per strong gen
  std::vector<Level> levels_;
  std::vector<unsigned> rank_;        // base-choice priority, lower first
};

}  // namespace sigmalib
