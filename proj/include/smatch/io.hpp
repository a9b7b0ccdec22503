#ifndef SMATCH_IO_HPP
#define SMATCH_IO_HPP

#include "smatch/collision.hpp"
#include "smatch/simulator.hpp"
#include "smatch/survey.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace smatch {

// A correction job description: ordered site files plus how to project the
// keys and where the collision probabilities come from.  key=value text;
// `site` repeats, `#` comments.  Relative paths resolve against the manifest
// directory.
struct Manifest {
  std::vector<std::filesystem::path> site_files;
  std::optional<std::string> projection_rule; // identity | first-letter-digits | regex:<p>
  std::optional<std::string> model_source;    // flat:<N> | file:<path> | fleet:<path>
  std::filesystem::path base_dir;
};

Manifest load_manifest(const std::filesystem::path& path);

// One observation key per line; duplicates legal and counted; blank lines
// skipped.  Labels are the file stems.
SurveyDataset load_site_files(const std::vector<std::filesystem::path>& files);

// One probability per line starting at p(1).
CollisionModel load_model_file(const std::filesystem::path& path);

// One proportion per line.
FleetDistribution load_fleet_file(const std::filesystem::path& path);

// "flat:<N>" | "file:<path>" | "fleet:<path>"; paths resolve against base_dir.
CollisionModel resolve_model(const std::string& source, const std::filesystem::path& base_dir,
                             int n_max);

// key=value text: sites, vehicles (one value or a comma list), repeated
// `flow = 1,2,3:100` lines, fleet_size, runs, seed, optional name.
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace smatch

#endif
