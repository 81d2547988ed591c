#pragma once

#include <memory>
#include <string>

#include "sigmalib/group.hpp"

namespace sigmalib {

// Group construction expression.
//   expr := term ('x' term)*
//   term := 'C'n | 'D'n | 'S'n | 'A'n | 'Q8' | 'SL(2,q)'
//         | 'C'n ':' 'C'm '@' k | '(' expr ')'
//         | 'perm[' degree ';' cycles (',' cycles)* ']' | 'preset:'name
struct GroupExpr;
using ExprPtr = std::shared_ptr<const GroupExpr>;

struct GroupExpr {
  enum class Kind {
    Cyclic, Dihedral, Sym, Alt, Q8, SL2, Semidirect, Direct, ExplicitPerms,
    Preset
  };
  Kind kind = Kind::Cyclic;
  u64 n = 0, m = 0, k = 0;   // numeric parameters
  ExprPtr left, right;       // Direct
  unsigned degree = 0;       // ExplicitPerms
  std::vector<std::string> cycles;
  std::string name;          // Preset
};

ExprPtr parse_group_expr(const std::string &text);
std::string print_group_expr(const GroupExpr &e);

// Permutation realization with construction metadata:
//   C_n on n points, D_n on n points, S_n/A_n natural, Q8 regular,
//   SL(2,q) on the nonzero vectors of F_q^2, C_n x| C_m on n + m points,
//   products on disjoint unions.
GroupRef realize(const GroupExpr &e, const CapConfig &caps);
GroupRef realize_text(const std::string &text, const CapConfig &caps);

ExprPtr preset(const std::string &name);
std::vector<std::string> preset_names();

struct CatalogEntry {
  std::string text;
  GroupRef group;
};
// Constructor sweep: all direct/semidirect combinations of the atoms up to
// the order bound, deduplicated by (order, abelian flag, element-order
// multiset). Deterministic order, ascending by group order.
std::vector<CatalogEntry> generate_catalog(u64 order_bound,
                                           const CapConfig &caps);

}  // namespace sigmalib
