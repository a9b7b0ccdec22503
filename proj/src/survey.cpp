#include "smatch/survey.hpp"

#include "smatch/errors.hpp"

#include <cctype>
#include <memory>
#include <regex>
#include <utility>

namespace smatch {

SurveyDataset::SurveyDataset(std::vector<SiteMultiset> sites, std::vector<std::string> labels)
    : sites_(std::move(sites)), labels_(std::move(labels)) {
  if (sites_.empty()) throw ValidationError("SurveyDataset: no sites");
  if (sites_.size() > 64) throw ValidationError("SurveyDataset: more than 64 sites");
  if (labels_.empty()) {
    labels_.reserve(sites_.size());
    for (std::size_t i = 0; i < sites_.size(); ++i)
      labels_.push_back("site" + std::to_string(i + 1));
  } else if (labels_.size() != sites_.size()) {
    throw ValidationError("SurveyDataset: label count does not match site count");
  }
  sizes_.reserve(sites_.size());
  for (const auto& site : sites_) {
    std::int64_t total = 0;
    for (const auto& [key, count] : site) {
      if (count <= 0)
        throw ValidationError("SurveyDataset: non-positive count for key '" + key + "'");
      total += count;
    }
    sizes_.push_back(total);
  }
}

SurveyDataset SurveyDataset::from_lists(const std::vector<std::vector<std::string>>& site_observations,
                                        std::vector<std::string> labels) {
  std::vector<SiteMultiset> sites;
  sites.reserve(site_observations.size());
  for (const auto& observations : site_observations) {
    SiteMultiset m;
    m.reserve(observations.size());
    for (const auto& key : observations) ++m[key];
    sites.push_back(std::move(m));
  }
  return SurveyDataset(std::move(sites), std::move(labels));
}

SurveyDataset SurveyDataset::restricted(const std::vector<int>& sites) const {
  if (sites.empty()) throw ValidationError("restricted: empty site list");
  std::vector<SiteMultiset> selected;
  std::vector<std::string> labels;
  selected.reserve(sites.size());
  for (int i : sites) {
    if (i < 1 || i > site_count())
      throw ValidationError("restricted: site " + std::to_string(i) + " outside 1.." +
                            std::to_string(site_count()));
    selected.push_back(sites_[i - 1]);
    labels.push_back(labels_[i - 1]);
  }
  return SurveyDataset(std::move(selected), std::move(labels));
}

LossyProjection::LossyProjection(std::string name,
                                 std::function<std::string(const std::string&)> fn)
    : name_(std::move(name)), fn_(std::move(fn)) {
  if (!fn_) throw ValidationError("LossyProjection: null function");
}

LossyProjection LossyProjection::identity() {
  return LossyProjection("identity", [](const std::string& key) { return key; });
}

LossyProjection LossyProjection::first_letter_digits() {
  return LossyProjection("first-letter-digits", [](const std::string& key) {
    if (key.empty()) return std::string();
    std::string out(1, key[0]);
    for (std::size_t i = 1; i < key.size() && std::isdigit(static_cast<unsigned char>(key[i])); ++i)
      out += key[i];
    return out;
  });
}

LossyProjection LossyProjection::from_regex(const std::string& pattern) {
  std::shared_ptr<std::regex> re;
  try {
    re = std::make_shared<std::regex>(pattern);
  } catch (const std::regex_error& e) {
    throw ValidationError("regex projection: bad pattern '" + pattern + "': " + e.what());
  }
  return LossyProjection("regex:" + pattern, [re](const std::string& key) {
    std::smatch m;
    if (!std::regex_search(key, m, *re)) return std::string();
    if (m.size() == 1) return m.str(0);
    std::string out;
    for (std::size_t g = 1; g < m.size(); ++g) out += m.str(g);
    return out;
  });
}

LossyProjection LossyProjection::parse_rule(const std::string& rule) {
  if (rule == "identity") return identity();
  if (rule == "first-letter-digits") return first_letter_digits();
  if (rule.rfind("regex:", 0) == 0) return from_regex(rule.substr(6));
  throw ValidationError("unknown projection rule '" + rule +
                        "' (expected identity, first-letter-digits or regex:<pattern>)");
}

SurveyDataset project_dataset(const SurveyDataset& d, const LossyProjection& proj) {
  std::vector<SurveyDataset::SiteMultiset> projected(d.site_count());
  std::vector<std::string> labels;
  for (int i = 1; i <= d.site_count(); ++i) {
    auto& out = projected[i - 1];
    out.reserve(d.site(i).size());
    for (const auto& [key, count] : d.site(i)) out[proj(key)] += count;
    labels.push_back(d.label(i));
  }
  return SurveyDataset(std::move(projected), std::move(labels));
}

} // namespace smatch
