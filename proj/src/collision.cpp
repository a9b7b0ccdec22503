#include "smatch/collision.hpp"

#include "smatch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace smatch {

namespace {

constexpr double kNormalizationTolerance = 1e-9;

// Kahan compensated sum; keeps the flat-fleet identity p(i) = N^(1-i) good to
// ~1 ulp even at a million classes.
class CompensatedSum {
public:
  void add(double value) {
    const double y = value - compensation_;
    const double t = total_ + y;
    compensation_ = (t - total_) - y;
    total_ = t;
  }
  double value() const { return total_; }

private:
  double total_ = 0.0;
  double compensation_ = 0.0;
};

double int_pow(double base, int exponent) {
  double out = 1.0;
  for (double acc = base; exponent > 0; exponent >>= 1, acc *= acc)
    if (exponent & 1) out *= acc;
  return out;
}

} // namespace

FleetDistribution FleetDistribution::from_proportions(std::vector<double> proportions) {
  if (proportions.empty()) throw ValidationError("fleet distribution: no classes");
  CompensatedSum sum;
  for (std::size_t j = 0; j < proportions.size(); ++j) {
    if (!(proportions[j] >= 0.0))
      throw ValidationError("fleet distribution: negative proportion at class " +
                            std::to_string(j + 1));
    sum.add(proportions[j]);
  }
  const double deviation = sum.value() - 1.0;
  if (std::abs(deviation) > kNormalizationTolerance) {
    char msg[128];
    std::snprintf(msg, sizeof msg, "fleet distribution: proportions sum to 1%+.3e", deviation);
    throw ValidationError(msg);
  }
  return FleetDistribution(std::move(proportions));
}

FleetDistribution FleetDistribution::flat(std::int64_t num_classes) {
  if (num_classes < 1) throw ValidationError("fleet distribution: need at least one class");
  return FleetDistribution(std::vector<double>(num_classes, 1.0 / double(num_classes)));
}

CollisionModel::CollisionModel(std::vector<double> p, CollisionSource source)
    : p_(std::move(p)), source_(source) {
  if (p_.empty()) throw ValidationError("collision model: empty");
  if (p_[0] != 1.0) throw ValidationError("collision model: p(1) must be exactly 1");
  for (std::size_t i = 1; i < p_.size(); ++i) {
    if (!(p_[i] >= 0.0) || p_[i] > p_[i - 1])
      throw ValidationError("collision model: p(" + std::to_string(i + 1) +
                            ") violates 0 <= p(i+1) <= p(i)");
  }
}

double CollisionModel::at(int i) const {
  if (i < 1 || i > max_order())
    throw ValidationError("collision model: p(" + std::to_string(i) + ") outside 1.." +
                          std::to_string(max_order()));
  return p_[i - 1];
}

const char* to_string(CollisionSource source) {
  switch (source) {
  case CollisionSource::Analytic: return "analytic";
  case CollisionSource::Empirical: return "empirical";
  case CollisionSource::Explicit: return "explicit";
  }
  return "?";
}

CollisionModel analytic_model(const FleetDistribution& fleet, int n_max) {
  if (n_max < 1) throw ValidationError("analytic_model: n_max must be >= 1");
  std::vector<double> p(n_max);
  p[0] = 1.0; // = sum of f_j by the normalization invariant
  for (int i = 2; i <= n_max; ++i) {
    CompensatedSum sum;
    for (double f : fleet.proportions()) sum.add(int_pow(f, i));
    // rounding guard at the normalization boundary
    p[i - 1] = std::min(sum.value(), p[i - 2]);
  }
  return CollisionModel(std::move(p), CollisionSource::Analytic);
}

CollisionModel flat_model(std::int64_t num_classes, int n_max) {
  if (num_classes < 1) throw ValidationError("flat_model: need at least one class");
  if (n_max < 1) throw ValidationError("flat_model: n_max must be >= 1");
  std::vector<double> p(n_max);
  p[0] = 1.0;
  for (int i = 2; i <= n_max; ++i) p[i - 1] = int_pow(1.0 / double(num_classes), i - 1);
  return CollisionModel(std::move(p), CollisionSource::Analytic);
}

double empirical_p2(std::int64_t observed_matches, std::int64_t size1, std::int64_t size2) {
  if (size1 <= 0 || size2 <= 0) throw ValidationError("empirical_p2: site sizes must be positive");
  if (observed_matches < 0) throw ValidationError("empirical_p2: negative match count");
  return double(observed_matches) / (double(size1) * double(size2));
}

CollisionModel explicit_model(std::vector<double> values) {
  return CollisionModel(std::move(values), CollisionSource::Explicit);
}

} // namespace smatch
