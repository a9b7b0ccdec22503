#ifndef SMATCH_COUNTING_HPP
#define SMATCH_COUNTING_HPP

#include "smatch/partition.hpp"
#include "smatch/survey.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace smatch {

// T(M): the number of |subset|-tuples whose observations agree across every
// listed site, i.e. the sum over distinct keys of the product of per-site
// counts.  For a singleton {m} this is #S_m.  Runs on the distinct keys of
// the smallest listed site, never on the cartesian product.
std::int64_t t_count(const SurveyDataset& d, const std::vector<int>& site_subset);

// R(M): tuples whose type of match is m or coarser; the product of t_count
// over the blocks of m.
std::int64_t relaxed_count(const SurveyDataset& d, const Partition& m);

// X(M): tuples whose type of match is exactly m, by the inclusion-exclusion
// recursion X(M) = R(M) - sum of X over strictly coarser partitions.
std::int64_t exact_count(const SurveyDataset& d, const Partition& m);

// Test oracle: enumerates the full cartesian product tuple by tuple and
// classifies each with type_of_match.  Refuses products above 10^6 tuples.
std::int64_t brute_force_exact_count(const SurveyDataset& d, const Partition& m);

// Memoized X(M) over one dataset; use when evaluating many partitions.
class MatchCounter {
public:
  explicit MatchCounter(const SurveyDataset& d) : data_(&d) {}

  std::int64_t t(const std::vector<int>& site_subset) const;
  std::int64_t relaxed(const Partition& m) const;
  std::int64_t exact(const Partition& m);

private:
  const SurveyDataset* data_;
  std::unordered_map<Partition, std::int64_t> memo_;
};

} // namespace smatch

#endif
