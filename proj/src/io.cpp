#include "smatch/io.hpp"

#include "smatch/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace smatch {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string location(const std::filesystem::path& path, int line) {
  return path.string() + ":" + std::to_string(line) + ": ";
}

// Calls fn(key, value, line_number) for every `key = value` line.
template <class Fn>
void parse_key_values(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string text = trim(line.substr(0, line.find('#')));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ValidationError(location(path, line_number) + "expected key = value");
    fn(trim(text.substr(0, eq)), trim(text.substr(eq + 1)), line_number);
  }
}

std::int64_t parse_int(const std::string& text, const std::string& context) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ValidationError(context + ": bad integer '" + text + "'");
  return value;
}

double parse_double(const std::string& text, const std::string& context) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ValidationError(context + ": bad number '" + text + "'");
  }
}

std::vector<std::int64_t> parse_int_list(const std::string& text, const std::string& context) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(trim(item), context));
  if (out.empty()) throw ValidationError(context + ": empty list");
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::filesystem::path& path) {
  return path.is_absolute() ? path : base / path;
}

} // namespace

Manifest load_manifest(const std::filesystem::path& path) {
  Manifest manifest;
  manifest.base_dir = path.has_parent_path() ? path.parent_path() : ".";
  parse_key_values(path, [&](const std::string& key, const std::string& value, int line) {
    if (key == "site") {
      manifest.site_files.push_back(resolve(manifest.base_dir, value));
    } else if (key == "projection") {
      manifest.projection_rule = value;
    } else if (key == "model") {
      manifest.model_source = value;
    } else {
      throw ValidationError(location(path, line) + "unknown manifest key '" + key + "'");
    }
  });
  if (manifest.site_files.empty())
    throw ValidationError(path.string() + ": manifest lists no site files");
  for (const auto& file : manifest.site_files)
    if (!std::filesystem::exists(file))
      throw IoError(path.string() + ": site file " + file.string() + " does not exist");
  return manifest;
}

SurveyDataset load_site_files(const std::vector<std::filesystem::path>& files) {
  std::vector<std::vector<std::string>> observations;
  std::vector<std::string> labels;
  for (const auto& file : files) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open site file " + file.string());
    std::vector<std::string> keys;
    std::string line;
    while (std::getline(in, line)) {
      const std::string key = trim(line);
      if (!key.empty()) keys.push_back(key);
    }
    observations.push_back(std::move(keys));
    labels.push_back(file.stem().string());
  }
  return SurveyDataset::from_lists(observations, std::move(labels));
}

CollisionModel load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model file " + path.string());
  std::vector<double> values;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string text = trim(line.substr(0, line.find('#')));
    if (text.empty()) continue;
    values.push_back(parse_double(text, location(path, line_number) + "p(i)"));
  }
  if (values.empty()) throw ValidationError(path.string() + ": model file has no probabilities");
  try {
    return explicit_model(std::move(values));
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

FleetDistribution load_fleet_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open fleet file " + path.string());
  std::vector<double> proportions;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string text = trim(line.substr(0, line.find('#')));
    if (text.empty()) continue;
    proportions.push_back(parse_double(text, location(path, line_number) + "proportion"));
  }
  return FleetDistribution::from_proportions(std::move(proportions));
}

CollisionModel resolve_model(const std::string& source, const std::filesystem::path& base_dir,
                             int n_max) {
  if (source.rfind("flat:", 0) == 0)
    return flat_model(parse_int(source.substr(5), "model flat:<N>"), n_max);
  if (source.rfind("file:", 0) == 0) {
    CollisionModel model = load_model_file(resolve(base_dir, source.substr(5)));
    if (model.max_order() < n_max)
      throw ValidationError("model file covers p(1.." + std::to_string(model.max_order()) +
                            ") but p(1.." + std::to_string(n_max) + ") is needed");
    return model;
  }
  if (source.rfind("fleet:", 0) == 0)
    return analytic_model(load_fleet_file(resolve(base_dir, source.substr(6))), n_max);
  throw ValidationError("unknown model source '" + source +
                        "' (expected flat:<N>, file:<path> or fleet:<path>)");
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
  ExperimentSpec spec;
  std::vector<std::int64_t> vehicles;
  parse_key_values(path, [&](const std::string& key, const std::string& value, int line) {
    const std::string context = location(path, line) + key;
    if (key == "name") {
      spec.name = value;
    } else if (key == "sites") {
      spec.num_sites = static_cast<int>(parse_int(value, context));
    } else if (key == "vehicles") {
      vehicles = parse_int_list(value, context);
    } else if (key == "flow") {
      const auto colon = value.find(':');
      if (colon == std::string::npos)
        throw ValidationError(context + ": expected flow = <site,...>:<count>");
      Flow flow;
      for (std::int64_t site : parse_int_list(trim(value.substr(0, colon)), context))
        flow.sites.push_back(static_cast<int>(site));
      flow.vehicles = parse_int(trim(value.substr(colon + 1)), context);
      spec.flows.push_back(std::move(flow));
    } else if (key == "fleet_size") {
      spec.fleet_size = parse_int(value, context);
    } else if (key == "runs") {
      spec.runs = static_cast<int>(parse_int(value, context));
    } else if (key == "seed") {
      spec.seed = static_cast<std::uint64_t>(parse_int(value, context));
    } else {
      throw ValidationError(context + ": unknown spec key");
    }
  });
  if (spec.name.empty()) spec.name = path.stem().string();
  if (vehicles.size() == 1)
    spec.vehicles_per_site.assign(spec.num_sites, vehicles[0]);
  else
    spec.vehicles_per_site = std::move(vehicles);
  spec.validate();
  return spec;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failed for " + path.string());
}

} // namespace smatch
