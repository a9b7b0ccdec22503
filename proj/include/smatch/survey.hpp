#ifndef SMATCH_SURVEY_HPP
#define SMATCH_SURVEY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

namespace smatch {

// Observations from n sites.  Each site is a multiset of observation keys
// stored as key -> count; repeated keys are distinct individuals that share a
// key.  Immutable after construction.
class SurveyDataset {
public:
  using SiteMultiset = std::unordered_map<std::string, std::int64_t>;

  SurveyDataset() = default;
  explicit SurveyDataset(std::vector<SiteMultiset> sites, std::vector<std::string> labels = {});
  // Builds from raw observation lists (duplicates legal and counted).
  static SurveyDataset from_lists(const std::vector<std::vector<std::string>>& site_observations,
                                  std::vector<std::string> labels = {});

  int site_count() const { return static_cast<int>(sites_.size()); }
  // Sites are 1-based.
  const SiteMultiset& site(int i) const { return sites_[i - 1]; }
  std::int64_t site_size(int i) const { return sizes_[i - 1]; } // #S_i, counting duplicates
  const std::string& label(int i) const { return labels_[i - 1]; }

  // The dataset restricted to the listed sites, in the order given.
  SurveyDataset restricted(const std::vector<int>& sites) const;

private:
  std::vector<SiteMultiset> sites_;
  std::vector<std::int64_t> sizes_;
  std::vector<std::string> labels_;
};

// A deterministic key-to-key map modelling partial observation.  Any total
// function qualifies: equal keys always project to equal keys, so a
// projection can merge individuals but never split one.
class LossyProjection {
public:
  LossyProjection(std::string name, std::function<std::string(const std::string&)> fn);

  static LossyProjection identity();
  // First character plus the following run of digits: A123XYZ -> A123.
  static LossyProjection first_letter_digits();
  // Keeps the concatenated capture groups of the first match (the whole match
  // if the pattern has no groups); keys that do not match project to "".
  static LossyProjection from_regex(const std::string& pattern);
  // "identity" | "first-letter-digits" | "regex:<pattern>"
  static LossyProjection parse_rule(const std::string& rule);

  const std::string& name() const { return name_; }
  std::string operator()(const std::string& key) const { return fn_(key); }

private:
  std::string name_;
  std::function<std::string(const std::string&)> fn_;
};

// Image of every site multiset under the projection; counts of keys that
// collide are summed, so site sizes are preserved.
SurveyDataset project_dataset(const SurveyDataset& d, const LossyProjection& proj);

} // namespace smatch

#endif
