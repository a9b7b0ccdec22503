#include "smatch/counting.hpp"

#include "smatch/errors.hpp"

#include <algorithm>
#include <limits>

namespace smatch {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out))
    throw ValidationError("match count exceeds 64-bit range");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out))
    throw ValidationError("match count exceeds 64-bit range");
  return out;
}

void check_subset(const SurveyDataset& d, const std::vector<int>& subset, const char* what) {
  if (subset.empty()) throw ValidationError(std::string(what) + ": empty site subset");
  for (int i : subset)
    if (i < 1 || i > d.site_count())
      throw ValidationError(std::string(what) + ": site " + std::to_string(i) + " outside 1.." +
                            std::to_string(d.site_count()));
}

void check_dims(const SurveyDataset& d, const Partition& m, const char* what) {
  if (m.size() != d.site_count())
    throw ValidationError(std::string(what) + ": partition of " + std::to_string(m.size()) +
                          " sites against dataset of " + std::to_string(d.site_count()));
}

} // namespace

std::int64_t t_count(const SurveyDataset& d, const std::vector<int>& site_subset) {
  check_subset(d, site_subset, "t_count");
  if (site_subset.size() == 1) return d.site_size(site_subset[0]);

  // Iterate the distinct keys of the site with the fewest of them.
  int lead = site_subset[0];
  for (int i : site_subset)
    if (d.site(i).size() < d.site(lead).size()) lead = i;

  std::int64_t total = 0;
  for (const auto& [key, lead_count] : d.site(lead)) {
    std::int64_t product = lead_count;
    for (int i : site_subset) {
      if (i == lead) continue;
      auto it = d.site(i).find(key);
      if (it == d.site(i).end()) {
        product = 0;
        break;
      }
      product = checked_mul(product, it->second);
    }
    total = checked_add(total, product);
  }
  return total;
}

std::int64_t relaxed_count(const SurveyDataset& d, const Partition& m) {
  check_dims(d, m, "relaxed_count");
  std::int64_t product = 1;
  for (const auto& block : m.blocks()) product = checked_mul(product, t_count(d, block));
  return product;
}

std::int64_t MatchCounter::t(const std::vector<int>& site_subset) const {
  return t_count(*data_, site_subset);
}

std::int64_t MatchCounter::relaxed(const Partition& m) const { return relaxed_count(*data_, m); }

std::int64_t MatchCounter::exact(const Partition& m) {
  check_dims(*data_, m, "exact_count");
  if (auto it = memo_.find(m); it != memo_.end()) return it->second;
  std::int64_t x = relaxed_count(*data_, m);
  for (const Partition& coarser : strict_predecessors(m)) x -= exact(coarser);
  memo_.emplace(m, x);
  return x;
}

std::int64_t exact_count(const SurveyDataset& d, const Partition& m) {
  return MatchCounter(d).exact(m);
}

std::int64_t brute_force_exact_count(const SurveyDataset& d, const Partition& m) {
  check_dims(d, m, "brute_force_exact_count");
  constexpr std::int64_t kMaxTuples = 1'000'000;

  const int n = d.site_count();
  std::int64_t tuples = 1;
  for (int i = 1; i <= n; ++i) {
    if (d.site_size(i) == 0) return 0; // empty cartesian product
    tuples = checked_mul(tuples, d.site_size(i));
    if (tuples > kMaxTuples)
      throw ValidationError("brute_force_exact_count: cartesian product exceeds 10^6 tuples");
  }

  // Expand multisets into per-site key-id lists; equal keys share an id.
  std::unordered_map<std::string, int> ids;
  std::vector<std::vector<int>> site_keys(n);
  for (int i = 1; i <= n; ++i) {
    // sorted for a deterministic id assignment
    std::vector<std::pair<std::string, std::int64_t>> entries(d.site(i).begin(), d.site(i).end());
    std::sort(entries.begin(), entries.end());
    for (const auto& [key, count] : entries) {
      auto [it, inserted] = ids.emplace(key, static_cast<int>(ids.size()));
      for (std::int64_t c = 0; c < count; ++c) site_keys[i - 1].push_back(it->second);
    }
  }

  std::vector<std::size_t> odo(n, 0);
  std::vector<int> tuple(n);
  std::int64_t matches = 0;
  while (true) {
    for (int i = 0; i < n; ++i) tuple[i] = site_keys[i][odo[i]];
    if (type_of_match(std::span<const int>(tuple)) == m) ++matches;
    int i = n - 1;
    while (i >= 0 && ++odo[i] == site_keys[i].size()) odo[i--] = 0;
    if (i < 0) break;
  }
  return matches;
}

} // namespace smatch
