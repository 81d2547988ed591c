#pragma once

#include <map>

#include "sigmalib/dsl.hpp"
#include "sigmalib/theorems.hpp"

namespace sigmalib {

struct AnalysisReport {
  std::string group_spec;
  std::string sigma_spec;
  u64 order = 0;
  CrossReport cross;
  std::map<std::string, long long> timings_ms;
};

AnalysisReport analyze(const std::string &group_spec,
                       const std::string &sigma_spec, const CapConfig &caps);

// Stable-key JSON; identical inputs and config produce identical output up
// to the timings subtree.
std::string report_to_json(const AnalysisReport &rep);
std::string report_human(const AnalysisReport &rep);

struct SweepOptions {
  u64 order_bound = 0;
  std::vector<std::string> sigma_specs;
  CapConfig caps;
  unsigned jobs = 1;
  std::string out_dir;  // empty: no per-row files
};

struct SweepRow {
  std::string group_spec;
  std::string sigma_spec;
  u64 order = 0;
  Verdict oracle = Verdict::undecided("unset");
  bool consistent = true;
  std::vector<std::string> disagreements;
};

struct SweepSummary {
  std::vector<SweepRow> rows;
  std::size_t yes = 0, no = 0, undecided = 0, disagreements = 0;
};

SweepSummary run_sweep(const SweepOptions &opts);

}  // namespace sigmalib
