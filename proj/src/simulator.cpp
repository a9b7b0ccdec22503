#include "smatch/simulator.hpp"

#include "smatch/collision.hpp"
#include "smatch/counting.hpp"
#include "smatch/errors.hpp"
#include "smatch/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace smatch {

void ExperimentSpec::validate() const {
  if (num_sites < 1 || num_sites > 7)
    throw ValidationError("experiment spec: num_sites " + std::to_string(num_sites) +
                          " outside 1..7");
  if (static_cast<int>(vehicles_per_site.size()) != num_sites)
    throw ValidationError("experiment spec: vehicles_per_site needs one entry per site");
  for (std::int64_t v : vehicles_per_site)
    if (v < 1) throw ValidationError("experiment spec: each site needs at least one vehicle");
  if (fleet_size < 1) throw ValidationError("experiment spec: fleet_size must be >= 1");

  std::vector<std::int64_t> planted(num_sites, 0);
  for (const Flow& flow : flows) {
    if (flow.vehicles < 0) throw ValidationError("experiment spec: negative flow count");
    if (flow.sites.empty()) throw ValidationError("experiment spec: flow over no sites");
    std::vector<int> sorted = flow.sites;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ValidationError("experiment spec: flow lists a site twice");
    for (int site : sorted) {
      if (site < 1 || site > num_sites)
        throw ValidationError("experiment spec: flow site " + std::to_string(site) +
                              " outside 1.." + std::to_string(num_sites));
      planted[site - 1] += flow.vehicles;
    }
  }
  for (int i = 0; i < num_sites; ++i)
    if (planted[i] > vehicles_per_site[i])
      throw ValidationError("experiment spec: site " + std::to_string(i + 1) +
                            " over-subscribed (" + std::to_string(planted[i]) + " planted > " +
                            std::to_string(vehicles_per_site[i]) + " vehicles)");
}

std::int64_t ExperimentSpec::planted_at(const std::vector<int>& subset) const {
  std::int64_t total = 0;
  for (const Flow& flow : flows) {
    bool covers = true;
    for (int site : subset)
      covers = covers && std::find(flow.sites.begin(), flow.sites.end(), site) != flow.sites.end();
    if (covers) total += flow.vehicles;
  }
  return total;
}

std::int64_t ExperimentSpec::expected_true_matches() const {
  std::vector<int> all(num_sites);
  for (int i = 0; i < num_sites; ++i) all[i] = i + 1;
  return planted_at(all);
}

GeneratedSurvey generate_survey(const ExperimentSpec& spec, int run_index) {
  spec.validate();
  if (run_index < 0) throw ValidationError("generate_survey: negative run index");
  SplitMix64 rng(mix_seed(spec.seed, static_cast<std::uint64_t>(run_index)));

  const int n = spec.num_sites;
  std::vector<std::vector<std::string>> full(n), partial(n);
  for (int i = 0; i < n; ++i) {
    full[i].reserve(spec.vehicles_per_site[i]);
    partial[i].reserve(spec.vehicles_per_site[i]);
  }

  std::int64_t next_vehicle = 0;
  auto place_vehicle = [&](const std::vector<int>& sites) {
    const std::string full_key = "v" + std::to_string(next_vehicle++);
    const std::string partial_key =
        "c" + std::to_string(rng.next_below(static_cast<std::uint64_t>(spec.fleet_size)));
    for (int site : sites) {
      full[site - 1].push_back(full_key);
      partial[site - 1].push_back(partial_key);
    }
  };

  for (const Flow& flow : spec.flows)
    for (std::int64_t v = 0; v < flow.vehicles; ++v) place_vehicle(flow.sites);

  for (int i = 0; i < n; ++i) {
    const std::vector<int> here{i + 1};
    while (static_cast<std::int64_t>(full[i].size()) < spec.vehicles_per_site[i])
      place_vehicle(here);
  }

  return GeneratedSurvey{SurveyDataset::from_lists(full), SurveyDataset::from_lists(partial)};
}

void audit_ground_truth(const GeneratedSurvey& survey, const ExperimentSpec& spec) {
  for (const auto& subset : subsets_in_order(spec.num_sites)) {
    // Fill vehicles appear at a single site, so only they and the covering
    // flows contribute to a singleton; only covering flows to larger subsets.
    const std::int64_t expected = subset.size() == 1 ? spec.vehicles_per_site[subset[0] - 1]
                                                     : spec.planted_at(subset);
    const std::int64_t counted = t_count(survey.full, subset);
    if (counted != expected)
      throw ValidationError("ground-truth audit: subset mismatch (counted " +
                            std::to_string(counted) + ", expected " + std::to_string(expected) +
                            ")");
  }
}

namespace {

struct MeanSigma {
  double mean = 0.0;
  double sigma = 0.0;
};

MeanSigma mean_and_sample_sigma(const std::vector<double>& values) {
  const double count = double(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= count;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, values.size() > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0};
}

} // namespace

ExperimentSummary run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  if (spec.runs < 2) throw ValidationError("run_experiment: need at least 2 runs");

  const CollisionModel model = flat_model(spec.fleet_size, spec.num_sites);
  std::vector<int> all_sites(spec.num_sites);
  for (int i = 0; i < spec.num_sites; ++i) all_sites[i] = i + 1;

  std::vector<RunRecord> records(spec.runs);
  std::vector<std::pair<int, std::exception_ptr>> failures;
  std::mutex failure_mutex;
  std::atomic<int> next_run{0};

  auto worker = [&] {
    for (;;) {
      const int run = next_run.fetch_add(1);
      if (run >= spec.runs) return;
      try {
        const GeneratedSurvey survey = generate_survey(spec, run);
        audit_ground_truth(survey, spec);
        const CorrectionReport report = correct(survey.partial, model);
        records[run] = RunRecord{run, report.all_sites().raw, report.all_sites().corrected};
      } catch (...) {
        std::scoped_lock lock(failure_mutex);
        failures.emplace_back(run, std::current_exception());
      }
    }
  };

  const int threads = std::max(1, std::min<int>(spec.runs, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  if (!failures.empty()) {
    auto first = *std::min_element(failures.begin(), failures.end(),
                                   [](const auto& a, const auto& b) { return a.first < b.first; });
    const std::string where = "run " + std::to_string(first.first) + ": ";
    try {
      std::rethrow_exception(first.second);
    } catch (const CapacityError& e) {
      throw CapacityError(where + e.what());
    } catch (const IoError& e) {
      throw IoError(where + e.what());
    } catch (const std::exception& e) {
      throw ValidationError(where + e.what());
    }
  }

  ExperimentSummary summary;
  std::vector<double> raw(spec.runs), corrected(spec.runs);
  for (int r = 0; r < spec.runs; ++r) {
    raw[r] = double(records[r].raw);
    corrected[r] = records[r].corrected;
  }
  const MeanSigma raw_stats = mean_and_sample_sigma(raw);
  const MeanSigma corrected_stats = mean_and_sample_sigma(corrected);
  summary.mean_raw = raw_stats.mean;
  summary.sigma_raw = raw_stats.sigma;
  summary.mean_corrected = corrected_stats.mean;
  summary.sigma_corrected = corrected_stats.sigma;
  summary.records = std::move(records);
  return summary;
}

ExperimentSpec table1_row1_spec() {
  ExperimentSpec spec;
  spec.name = "table1_row1";
  spec.num_sites = 2;
  spec.vehicles_per_site = {1000, 1000};
  spec.flows = {{{1, 2}, 10}};
  spec.fleet_size = 10000;
  spec.runs = 20;
  spec.seed = 1;
  return spec;
}

std::vector<ExperimentSpec> table2_specs() {
  std::vector<ExperimentSpec> specs(4);
  for (int e = 0; e < 4; ++e) {
    specs[e].name = "table2_exp" + std::to_string(e + 1);
    specs[e].num_sites = 6;
    specs[e].vehicles_per_site = std::vector<std::int64_t>(6, 1000);
    specs[e].fleet_size = 10000;
    specs[e].runs = 1000;
    specs[e].seed = 1;
  }
  specs[0].flows = {{{1, 2, 3, 4, 5}, 500}, {{2, 3, 4, 5, 6}, 500}};
  specs[1].flows = {{{1, 2, 3}, 500}, {{4, 5, 6}, 500}, {{1, 3, 5}, 500}, {{2, 4, 6}, 500}};
  specs[2].flows = {{{1, 2, 3, 4, 5, 6}, 250}, {{1, 2, 3}, 500}, {{4, 5, 6}, 500}};
  specs[3].flows = {{{1, 2, 3, 4, 5, 6}, 500}, {{1, 2, 3}, 250}, {{4, 5, 6}, 250},
                    {{1, 2}, 250},             {{3, 4}, 250},    {{5, 6}, 250}};
  return specs;
}

} // namespace smatch
