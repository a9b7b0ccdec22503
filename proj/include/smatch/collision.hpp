#ifndef SMATCH_COLLISION_HPP
#define SMATCH_COLLISION_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace smatch {

// Proportions of the observed population falling in each distinguishable
// partial-observation class; non-negative, summing to 1 within 1e-9.
class FleetDistribution {
public:
  static FleetDistribution from_proportions(std::vector<double> proportions);
  static FleetDistribution flat(std::int64_t num_classes);

  std::int64_t num_classes() const { return static_cast<std::int64_t>(proportions_.size()); }
  const std::vector<double>& proportions() const { return proportions_; }

private:
  explicit FleetDistribution(std::vector<double> proportions)
      : proportions_(std::move(proportions)) {}
  std::vector<double> proportions_;
};

enum class CollisionSource { Analytic, Empirical, Explicit };

// p(i): the probability that i individuals, all distinct in full observation,
// share one partial-observation class.  p(1) = 1 and p is non-increasing.
class CollisionModel {
public:
  CollisionModel(std::vector<double> p, CollisionSource source);

  int max_order() const { return static_cast<int>(p_.size()); }
  double at(int i) const; // p(i), i in 1..max_order
  const std::vector<double>& values() const { return p_; }
  CollisionSource source() const { return source_; }

private:
  std::vector<double> p_;
  CollisionSource source_;
};

const char* to_string(CollisionSource source);

// p(i) = sum over classes j of f_j^i, evaluated with compensated summation.
CollisionModel analytic_model(const FleetDistribution& fleet, int n_max);

// The analytic model of a flat fleet, p(i) = N^(1-i), without materializing
// the N proportions.
CollisionModel flat_model(std::int64_t num_classes, int n_max);

// p(2) estimated from two sites known to share no individual: every observed
// partial match there is false, so p(2) = matches / (#S_1 * #S_2).
double empirical_p2(std::int64_t observed_matches, std::int64_t size1, std::int64_t size2);

// Wraps user-supplied probabilities verbatim after validating the invariants.
CollisionModel explicit_model(std::vector<double> values);

} // namespace smatch

#endif
