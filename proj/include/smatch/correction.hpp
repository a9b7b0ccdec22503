#ifndef SMATCH_CORRECTION_HPP
#define SMATCH_CORRECTION_HPP

#include "smatch/collision.hpp"
#include "smatch/counting.hpp"
#include "smatch/survey.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace smatch {

// a + b*t, where t is the unknown all-sites estimate of the subset currently
// being solved.  Closed under addition, subtraction and scaling; a product is
// defined only when at least one factor is a pure constant.
struct AffineCount {
  double constant = 0.0;
  double coefficient = 0.0;

  static AffineCount pure(double value) { return {value, 0.0}; }
  static AffineCount unknown() { return {0.0, 1.0}; }
  bool is_constant() const { return coefficient == 0.0; }
  double eval(double t) const { return constant + coefficient * t; }

  friend AffineCount operator+(AffineCount a, AffineCount b) {
    return {a.constant + b.constant, a.coefficient + b.coefficient};
  }
  friend AffineCount operator-(AffineCount a, AffineCount b) {
    return {a.constant - b.constant, a.coefficient - b.coefficient};
  }
  friend AffineCount operator*(double s, AffineCount a) {
    return {s * a.constant, s * a.coefficient};
  }
  friend AffineCount operator*(AffineCount a, AffineCount b);
};

struct SubsetEstimate {
  std::vector<int> sites;   // 1-based, ascending
  std::int64_t raw = 0;     // X*(A_B): observed all-equal tuples over B
  double corrected = 0.0;   // t-hat(B); may be negative, never clamped
};

// Estimates for every non-empty site subset, in increasing-size then
// lexicographic order; the all-sites row is last.
class CorrectionReport {
public:
  CorrectionReport(int site_count, std::vector<SubsetEstimate> rows, CollisionModel model);

  int site_count() const { return site_count_; }
  const std::vector<SubsetEstimate>& rows() const { return rows_; }
  const SubsetEstimate& all_sites() const { return rows_.back(); }
  const SubsetEstimate& row(const std::vector<int>& sites) const;
  double estimate(const std::vector<int>& sites) const { return row(sites).corrected; }
  const CollisionModel& model() const { return model_; }

  // "subset<TAB>raw<TAB>corrected" lines; corrected to 6 decimal places.
  std::string to_text() const;
  // CSV with full-precision corrected estimates.
  std::string to_csv() const;

private:
  int site_count_;
  std::vector<SubsetEstimate> rows_;
  CollisionModel model_;
  std::map<std::vector<int>, std::size_t> index_;
};

struct CorrectionOptions {
  bool override_site_capacity = false; // lifts the 7-site ceiling; expensive
};

// The false-match correction: processes every non-empty subset B of the sites
// in increasing size order, solving for that subset's estimate t(B) from
//   t(B) = raw(B) - sum over partitions M of B above the single block of
//          p(#M) * Xhat(M),
// where each Xhat is an affine expression in t(B) built from the relaxed
// counts of already-estimated strict subsets.  Singletons are exact: #S_m.
CorrectionReport correct(const SurveyDataset& partial, const CollisionModel& model,
                         const CorrectionOptions& options = {});

// The raw observed all-equal counts per subset (the size-l generalization of
// "matches at every listed site").
std::map<std::vector<int>, std::int64_t> subset_raw_counts(const SurveyDataset& partial);

// All non-empty subsets of {1..n} in the report's evaluation order.
std::vector<std::vector<int>> subsets_in_order(int n);

} // namespace smatch

#endif
