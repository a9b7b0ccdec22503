#include "smatch/correction.hpp"

#include "smatch/errors.hpp"
#include "smatch/partition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

namespace smatch {

namespace {

constexpr int kMaxCorrectionSites = 7;
constexpr double kDegenerateDenominator = 1e-9;

void check_correction_input(const SurveyDataset& d, const CollisionModel& model,
                            const CorrectionOptions& options) {
  const int n = d.site_count();
  if (n > kMaxCorrectionSites && !options.override_site_capacity)
    throw CapacityError("correct: " + std::to_string(n) +
                        " sites exceeds the design ceiling of 7 (override_site_capacity to force)");
  if (model.max_order() < n)
    throw ValidationError("correct: collision model covers p(1.." +
                          std::to_string(model.max_order()) + ") but " + std::to_string(n) +
                          " sites were given");
  for (int i = 1; i <= n; ++i)
    if (d.site_size(i) == 0)
      throw ValidationError("correct: site " + std::to_string(i) + " is empty");
}

} // namespace

AffineCount operator*(AffineCount a, AffineCount b) {
  if (!a.is_constant() && !b.is_constant())
    throw ValidationError("AffineCount: product of two non-constant terms");
  if (a.is_constant()) return a.constant * b;
  return b.constant * a;
}

CorrectionReport::CorrectionReport(int site_count, std::vector<SubsetEstimate> rows,
                                   CollisionModel model)
    : site_count_(site_count), rows_(std::move(rows)), model_(std::move(model)) {
  for (std::size_t r = 0; r < rows_.size(); ++r) index_.emplace(rows_[r].sites, r);
}

const SubsetEstimate& CorrectionReport::row(const std::vector<int>& sites) const {
  std::vector<int> key = sites;
  std::sort(key.begin(), key.end());
  auto it = index_.find(key);
  if (it == index_.end()) throw ValidationError("CorrectionReport: no such subset");
  return rows_[it->second];
}

namespace {

std::string subset_name(const std::vector<int>& sites) {
  std::string out;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(sites[i]);
  }
  return out;
}

} // namespace

std::string CorrectionReport::to_text() const {
  std::string out = "subset\traw\tcorrected\n";
  char buf[64];
  for (const auto& r : rows_) {
    std::snprintf(buf, sizeof buf, "%lld\t%.6f\n", static_cast<long long>(r.raw), r.corrected);
    out += subset_name(r.sites) + '\t' + buf;
  }
  return out;
}

std::string CorrectionReport::to_csv() const {
  std::string out = "subset,raw,corrected\n";
  char buf[64];
  for (const auto& r : rows_) {
    std::snprintf(buf, sizeof buf, ",%lld,%.17g\n", static_cast<long long>(r.raw), r.corrected);
    out += '"' + subset_name(r.sites) + '"' + buf;
  }
  return out;
}

std::vector<std::vector<int>> subsets_in_order(int n) {
  std::vector<std::vector<int>> out;
  out.reserve((std::size_t(1) << n) - 1);
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
    std::vector<int> sites;
    for (int i = 0; i < n; ++i)
      if (mask & (std::uint64_t(1) << i)) sites.push_back(i + 1);
    out.push_back(std::move(sites));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::map<std::vector<int>, std::int64_t> subset_raw_counts(const SurveyDataset& partial) {
  std::map<std::vector<int>, std::int64_t> out;
  for (const auto& subset : subsets_in_order(partial.site_count()))
    out.emplace(subset, t_count(partial, subset));
  return out;
}

CorrectionReport correct(const SurveyDataset& partial, const CollisionModel& model,
                         const CorrectionOptions& options) {
  check_correction_input(partial, model, options);
  const int n = partial.site_count();

  // t-hat per already-solved subset, keyed by site bitmask.
  std::vector<double> estimate(std::size_t(1) << n, 0.0);
  std::vector<SubsetEstimate> rows;
  rows.reserve((std::size_t(1) << n) - 1);

  // partitions of {1..l}, shared by every subset of size l
  std::vector<std::vector<Partition>> partitions_of_size(n + 1);
  for (int l = 2; l <= n; ++l) partitions_of_size[l] = enumerate_partitions(l);

  for (const auto& subset : subsets_in_order(n)) {
    const int l = static_cast<int>(subset.size());
    std::uint64_t subset_mask = 0;
    for (int site : subset) subset_mask |= std::uint64_t(1) << (site - 1);

    SubsetEstimate row;
    row.sites = subset;

    if (l == 1) {
      row.raw = partial.site_size(subset[0]);
      row.corrected = double(row.raw);
    } else {
      row.raw = t_count(partial, subset);

      // Xhat for every partition of the subset, as an affine expression in
      // the unknown t(B).  Relabelled from partitions of {1..l}: position j
      // stands for subset[j-1].
      std::unordered_map<Partition, AffineCount> xhat;
      const auto& partitions = partitions_of_size[l];
      xhat.reserve(partitions.size());

      AffineCount correction_sum; // sum over M above the single block of p(#M)*Xhat(M)
      for (const Partition& m : partitions) {
        AffineCount relaxed;
        if (m.block_count() == 1) {
          relaxed = AffineCount::unknown(); // R(A_B) is the quantity being solved for
        } else {
          relaxed = AffineCount::pure(1.0);
          for (const auto& block : m.blocks()) {
            std::uint64_t block_mask = 0;
            for (int j : block) block_mask |= std::uint64_t(1) << (subset[j - 1] - 1);
            relaxed = AffineCount::pure(estimate[block_mask]) * relaxed;
          }
        }
        AffineCount x = relaxed;
        for (const Partition& coarser : strict_predecessors(m)) x = x - xhat.at(coarser);
        xhat.emplace(m, x);
        if (m.block_count() > 1) correction_sum = correction_sum + model.at(m.block_count()) * x;
      }

      // t = raw - (correction_sum.constant + correction_sum.coefficient * t)
      const double denominator = 1.0 + correction_sum.coefficient;
      if (std::abs(denominator) < kDegenerateDenominator) {
        char msg[96];
        std::snprintf(msg, sizeof msg,
                      "correct: degenerate model, solve denominator %.3e for subset %s",
                      denominator, subset_name(subset).c_str());
        throw ValidationError(msg);
      }
      row.corrected = (double(row.raw) - correction_sum.constant) / denominator;
    }

    estimate[subset_mask] = row.corrected;
    rows.push_back(std::move(row));
  }

  return CorrectionReport(n, std::move(rows), model);
}

} // namespace smatch
