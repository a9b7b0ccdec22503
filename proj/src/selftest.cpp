#include "smatch/selftest.hpp"

#include "smatch/collision.hpp"
#include "smatch/counting.hpp"
#include "smatch/errors.hpp"
#include "smatch/partition.hpp"

#include <algorithm>

namespace smatch {

SurveyDataset random_survey(SplitMix64& rng, int num_sites, int max_observations,
                            int alphabet_size) {
  std::vector<std::vector<std::string>> sites(num_sites);
  for (auto& site : sites) {
    const auto count = 1 + rng.next_below(max_observations);
    for (std::uint64_t k = 0; k < count; ++k)
      site.push_back("k" + std::to_string(rng.next_below(alphabet_size)));
  }
  return SurveyDataset::from_lists(sites);
}

namespace {

constexpr int kSeeds = 25;
constexpr int kSites = 4;

SurveyDataset case_survey(int seed) {
  SplitMix64 rng(0x5e1f7e57ull + seed);
  return random_survey(rng, kSites, 8, 5);
}

SelfTestResult oracle_equivalence() {
  int comparisons = 0;
  const auto partitions = enumerate_partitions(kSites);
  for (int seed = 0; seed < kSeeds; ++seed) {
    const SurveyDataset d = case_survey(seed);
    MatchCounter counter(d);
    for (const Partition& m : partitions) {
      ++comparisons;
      if (counter.exact(m) != brute_force_exact_count(d, m))
        return {"oracle-equivalence", false,
                "seed " + std::to_string(seed) + ", partition " + m.to_string()};
    }
  }
  return {"oracle-equivalence", true, std::to_string(comparisons) + " comparisons"};
}

SelfTestResult partition_of_unity() {
  for (int seed = 0; seed < kSeeds; ++seed) {
    const SurveyDataset d = case_survey(seed);
    MatchCounter counter(d);
    std::int64_t total = 0, tuples = 1;
    for (const Partition& m : enumerate_partitions(kSites)) total += counter.exact(m);
    for (int i = 1; i <= kSites; ++i) tuples *= d.site_size(i);
    if (total != tuples)
      return {"partition-of-unity", false, "seed " + std::to_string(seed)};
  }
  return {"partition-of-unity", true, std::to_string(kSeeds) + " datasets"};
}

SelfTestResult relaxed_sum_identity() {
  const auto partitions = enumerate_partitions(kSites);
  for (int seed = 0; seed < kSeeds; ++seed) {
    const SurveyDataset d = case_survey(seed);
    MatchCounter counter(d);
    for (const Partition& m : partitions) {
      std::int64_t sum = counter.exact(m);
      for (const Partition& coarser : strict_predecessors(m)) sum += counter.exact(coarser);
      if (sum != counter.relaxed(m))
        return {"relaxed-equals-exact-sum", false,
                "seed " + std::to_string(seed) + ", partition " + m.to_string()};
    }
  }
  return {"relaxed-equals-exact-sum", true,
          std::to_string(kSeeds * partitions.size()) + " partitions"};
}

SelfTestResult t_count_symmetry() {
  for (int seed = 0; seed < kSeeds; ++seed) {
    const SurveyDataset d = case_survey(seed);
    SplitMix64 rng(0x7ab1e5ull + seed);
    std::vector<int> subset{1, 2, 3, 4};
    const std::int64_t reference = t_count(d, subset);
    for (int shuffle = 0; shuffle < 4; ++shuffle) {
      for (std::size_t i = subset.size() - 1; i > 0; --i)
        std::swap(subset[i], subset[rng.next_below(i + 1)]);
      if (t_count(d, subset) != reference)
        return {"t-count-symmetry", false, "seed " + std::to_string(seed)};
    }
  }
  return {"t-count-symmetry", true, std::to_string(kSeeds * 4) + " permutations"};
}

SelfTestResult projection_order() {
  int checked = 0;
  for (int seed = 0; seed < kSeeds; ++seed) {
    const SurveyDataset d = case_survey(seed);
    SplitMix64 rng(0x9c0ffee1ull + seed);
    for (int trial = 0; trial < 40; ++trial) {
      ObservationTuple tuple;
      for (int i = 1; i <= kSites; ++i) {
        // draw a key from site i
        auto it = d.site(i).begin();
        std::advance(it, rng.next_below(d.site(i).size()));
        tuple.push_back(it->first);
      }
      const std::uint64_t salt = rng.next();
      const std::uint64_t buckets = 1 + rng.next_below(4);
      LossyProjection proj("bucket", [salt, buckets](const std::string& key) {
        std::uint64_t h = salt;
        for (unsigned char c : key) h = (h ^ c) * 0x100000001b3ull;
        return std::string(1, char('a' + h % buckets));
      });
      ObservationTuple projected;
      for (const auto& key : tuple) projected.push_back(proj(key));
      ++checked;
      if (!precedes(type_of_match(projected), type_of_match(tuple)))
        return {"projection-coarsens", false, "seed " + std::to_string(seed)};
    }
  }
  return {"projection-coarsens", true, std::to_string(checked) + " tuples"};
}

SelfTestResult model_validation() {
  try {
    explicit_model({1.0, 0.5, 0.6});
    return {"model-validation", false, "non-monotone p accepted"};
  } catch (const ValidationError&) {
  }
  try {
    explicit_model({0.9, 0.5});
    return {"model-validation", false, "p(1) != 1 accepted"};
  } catch (const ValidationError&) {
  }
  return {"model-validation", true, "corrupt models rejected"};
}

} // namespace

std::vector<SelfTestResult> run_selftest() {
  return {oracle_equivalence(), partition_of_unity(),   relaxed_sum_identity(),
          t_count_symmetry(),   projection_order(),     model_validation()};
}

} // namespace smatch
