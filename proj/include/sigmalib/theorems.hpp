#pragma once

#include "sigmalib/sigma.hpp"

namespace sigmalib {

// (D, Z(D); U_1..U_k): sigma-perfect normal D, simple nonabelian chief
// factors U_i/Z over the center, cyclic chief factors below the center,
// maximal among normal subgroups with these properties.
struct RobinsonComplex {
  GroupRef D;
  GroupRef Z;
  std::vector<GroupRef> components;
};

struct ConditionReport {
  Verdict overall = Verdict::undecided("empty");
  struct Item {
    std::string label;
    Verdict verdict;
    std::string witness;
  };
  std::vector<Item> items;

  void add(std::string label, Verdict v, std::string witness = {}) {
    items.push_back({std::move(label), std::move(v), std::move(witness)});
  }
  // Yes iff every item Yes; any No wins over Undecided.
  void finalize() {
    Verdict v = Verdict::yes();
    for (const Item &it : items) v = v && it.verdict;
    overall = v;
  }
};

struct RobinsonResult {
  ConditionReport report;
  std::optional<RobinsonComplex> complex;  // set when (i)-(iii) verified
};

RobinsonResult robinson_complex(GroupRef G, const SigmaPartition &sigma,
                                GroupRef D, const CapConfig &caps);

// Characterization checkers. The overall verdict of each report answers the
// theorem's right-hand side for G.
ConditionReport theorem_B_check(GroupRef G, const SigmaPartition &sigma,
                                const CapConfig &caps);
ConditionReport theorem_C_check(GroupRef G, const SigmaPartition &sigma,
                                const CapConfig &caps);
ConditionReport theorem_D_check(GroupRef G, const SigmaPartition &sigma,
                                const CapConfig &caps);

// Primary oracle: every sigma-subnormal subgroup is sigma-permutable.
Verdict is_PsigmaT_brute(GroupRef G, const SigmaPartition &sigma,
                         const CapConfig &caps);
// Definition-level oracle: the relation itself is transitive.
Verdict is_PsigmaT_transitive(GroupRef G, const SigmaPartition &sigma,
                              const CapConfig &caps);

struct CrossReport {
  Classification cls;
  Verdict oracle_brute = Verdict::undecided("unset");
  Verdict oracle_transitive = Verdict::undecided("unset");
  Verdict oracle = Verdict::undecided("unset");  // merged
  ConditionReport theorem_b;
  ConditionReport theorem_c;
  ConditionReport theorem_d;
  std::optional<RobinsonComplex> robinson;  // on D = (G^{N_sigma})^{S}
  RobinsonResult robinson_result;
  // block label -> order as text, "none", or "undecided"
  std::vector<std::pair<std::string, std::string>> hall_summary;
  bool consistent = true;
  std::vector<std::string> disagreements;
};

// Runs the classification, both oracles and all three checkers; any
// decidable disagreement is recorded (and is always a bug or a refuted
// theorem, never expected).
CrossReport cross_validate(GroupRef G, const SigmaPartition &sigma,
                           const CapConfig &caps);

}  // namespace sigmalib
