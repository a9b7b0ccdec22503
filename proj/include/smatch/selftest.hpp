#ifndef SMATCH_SELFTEST_HPP
#define SMATCH_SELFTEST_HPP

#include "smatch/rng.hpp"
#include "smatch/survey.hpp"

#include <string>
#include <vector>

namespace smatch {

struct SelfTestResult {
  std::string property;
  bool passed = false;
  std::string detail;
};

// The built-in oracle-equivalence suite: checks the counting kernels against
// the literal brute-force definitions on 25 fixed random datasets, plus the
// model validators.  Pure and deterministic.
std::vector<SelfTestResult> run_selftest();

// A random dataset with num_sites sites of 1..max_observations keys drawn
// from an alphabet of the given size.
SurveyDataset random_survey(SplitMix64& rng, int num_sites, int max_observations,
                            int alphabet_size);

} // namespace smatch

#endif
