#ifndef SMATCH_SIMULATOR_HPP
#define SMATCH_SIMULATOR_HPP

#include "smatch/correction.hpp"
#include "smatch/survey.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace smatch {

// A planted cohort: `vehicles` individuals observed at exactly these sites.
struct Flow {
  std::vector<int> sites; // 1-based, ascending after validation
  std::int64_t vehicles = 0;
};

struct ExperimentSpec {
  std::string name;
  int num_sites = 0;
  std::vector<std::int64_t> vehicles_per_site;
  std::vector<Flow> flows;
  std::int64_t fleet_size = 0; // N distinguishable partial classes, flat distribution
  int runs = 0;
  std::uint64_t seed = 0;

  void validate() const;
  // Individuals genuinely present at every site of the subset.
  std::int64_t planted_at(const std::vector<int>& subset) const;
  std::int64_t expected_true_matches() const; // planted_at of all sites
};

struct RunRecord {
  int run_index = 0;
  std::int64_t raw = 0;
  double corrected = 0.0;
};

struct ExperimentSummary {
  double mean_raw = 0.0;
  double sigma_raw = 0.0; // sample standard deviations (divisor runs-1)
  double mean_corrected = 0.0;
  double sigma_corrected = 0.0;
  std::vector<RunRecord> records;
};

struct GeneratedSurvey {
  SurveyDataset full;    // globally unique key per vehicle
  SurveyDataset partial; // each vehicle's single partial class, same at every site
};

// One synthetic survey.  Planted cohorts place the same vehicles at every
// site of their subset; remaining slots are filled with vehicles seen at that
// one site only.  Partial classes are drawn i.i.d. uniform over the fleet,
// one draw per vehicle.  Deterministic given (spec.seed, run_index).
GeneratedSurvey generate_survey(const ExperimentSpec& spec, int run_index);

// Verifies that the full data carries exactly the planted match structure:
// for every subset B, the all-equal tuple count equals planted_at(B).
void audit_ground_truth(const GeneratedSurvey& survey, const ExperimentSpec& spec);

// Generates, audits and corrects `runs` independent surveys with the analytic
// flat model p(i) = N^(1-i); raw is the observed all-sites match count and
// corrected the all-sites estimate.  Runs execute in parallel; the summary
// does not depend on thread scheduling.
ExperimentSummary run_experiment(const ExperimentSpec& spec);

// The first row of the two-site simulation table: 1000 vehicles per site, 10
// genuinely at both, N = 10^4, 20 runs.
ExperimentSpec table1_row1_spec();

// The four six-site interacting-flow stress experiments (expected answers
// 0, 0, 250, 500), 1000 vehicles per site, N = 10^4, 1000 runs.
std::vector<ExperimentSpec> table2_specs();

} // namespace smatch

#endif
