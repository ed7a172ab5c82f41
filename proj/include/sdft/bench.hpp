#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdft/families.hpp"
#include "sdft/io.hpp"
#include "sdft/sas.hpp"

namespace sdft {

// One block of trials drawn from a single family spec. For GAP groups with
// gap_dimension set, a fresh proper GAP is drawn per trial.
struct BenchGroup {
  std::string name;
  FamilySpec family;
  std::size_t trials = 1;
  PivotPolicy policy = PivotPolicy::kAuto;
  std::optional<PivotVector> pivots;              // explicit override
  std::optional<PivotPolicy> reference_policy;    // mu* statistic only
  std::size_t gap_dimension = 0;
  std::size_t gap_max_size = 4096;
};

struct AntipodalSpec {
  int levels = 16;
  std::size_t k = 0;  // 0: ceil(sqrt N) * 4
  std::size_t draws = 500;
};

struct Scenario {
  std::uint64_t seed = 1;
  double tolerance = 1e-8;
  std::vector<BenchGroup> groups;
  std::optional<AntipodalSpec> antipodal;
};

Scenario scenario_from_json(const Json& j);

struct TrialRecord {
  std::size_t trial = 0;
  std::string group;
  std::string family;
  Index n = 0;
  std::size_t k = 0;
  std::size_t size_r = 0;
  std::size_t mu_star = 0;
  std::size_t reference_mu_star = 0;  // mu* under reference_policy, or mu_star
  std::uint64_t ops_hidft = 0;
  std::uint64_t ops_solve = 0;
  std::uint64_t ops_total = 0;
  double bound_total = 0.0;
  std::uint64_t samples = 0;
  bool correct = false;
  double max_rel_err = 0.0;
  bool homogeneous = false;
  // Hi-DFT ops of one measurement == 1.5 A log2 A with A = 2^size(r).
  bool hidft_exact = false;
};

// c = 4 + 3 ln 2
double mu_star_threshold_constant();
// c (1.5 + 6 c) k log2 k
double envelope_bound(std::size_t k);
// k log2 k
double nlogn_floor(std::size_t k);

struct AntipodalResult {
  Index n = 0;
  std::size_t k = 0;
  std::size_t draws = 0;
  std::size_t with_pair = 0;
  double fraction() const { return draws ? static_cast<double>(with_pair) / static_cast<double>(draws) : 0.0; }
};

AntipodalResult antipodal_statistic(const AntipodalSpec& spec, std::uint64_t seed);

struct BenchSummary {
  std::size_t trials = 0;
  std::size_t correct = 0;
  std::size_t mu_tail = 0;            // run policy mu* >= c log2 k
  std::size_t reference_mu_tail = 0;  // reference policy mu* >= c log2 k
  std::size_t within_bound = 0;       // ops <= bound_total
  std::size_t above_floor = 0;        // ops >= k log2 k
  std::size_t within_envelope = 0;    // ops <= c (1.5 + 6c) k log2 k
  std::size_t homogeneous_trials = 0;
  std::size_t hidft_exact = 0;        // counted over all trials
  double fitted_constant = 0.0;       // least squares ops ~ C k log2 k
  double max_ratio = 0.0;             // max ops / (k log2 k)
  std::optional<AntipodalResult> antipodal;
};

// Runs one trial; deterministic in (group, trial seed).
TrialRecord run_trial(const BenchGroup& group, std::size_t trial, std::uint64_t seed, double tolerance);

// THREADS overrides the worker count when set. Records are ordered by
// trial id.
std::vector<TrialRecord> run_bench(const Scenario& s, std::size_t threads = 0);
BenchSummary summarize(const std::vector<TrialRecord>& records);

std::string records_to_csv(const std::vector<TrialRecord>& records);
Json records_to_json(const std::vector<TrialRecord>& records);
Json summary_to_json(const BenchSummary& s);

std::size_t worker_count(std::size_t requested);

}  // namespace sdft
