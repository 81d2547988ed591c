#pragma once

#include <set>
#include <vector>

#include "sigmalib/group.hpp"
#include "sigmalib/perm.hpp"

namespace sigmalib::testing {

// Independent oracle: closes a generator set by plain BFS multiplication,
// never touching the stabilizer chain.
inline std::set<Perm> brute_elements(unsigned degree,
                                     const std::vector<Perm> &gens) {
  std::set<Perm> seen{Perm::identity(degree)};
  std::vector<Perm> queue{Perm::identity(degree)};
  while (!queue.empty()) {
    Perm cur = queue.back();
    queue.pop_back();
    for (const Perm &g : gens) {
      Perm next = compose(cur, g);
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return seen;
}

inline u64 brute_order(const Group &g) {
  return brute_elements(g.degree(), g.generators()).size();
}

inline Perm cyc(const std::string &text, unsigned degree) {
  return perm_from_cycles(text, degree);
}

inline GroupRef grp(unsigned degree, std::initializer_list<const char *> cycles) {
  std::vector<Perm> gens;
  for (const char *c : cycles) gens.push_back(perm_from_cycles(c, degree));
  return Group::from_generators(degree, gens);
}

}  // namespace sigmalib::testing
