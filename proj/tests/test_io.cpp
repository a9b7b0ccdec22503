#include "smatch/io.hpp"

#include "smatch/correction.hpp"
#include "smatch/errors.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

using namespace smatch;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("smatch_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path file(const std::string& name, const std::string& content) const {
    const fs::path p = path / name;
    std::ofstream out(p);
    out << content;
    return p;
  }
  static inline int counter = 0;
};

} // namespace

TEST_CASE("site files load as multisets with duplicates counted") {
  TempDir dir;
  dir.file("s1.txt", "A123XYZ\nC789ABC\n");
  dir.file("s2.txt", "A123XYZ\nA123XYZ\n\nD555SDD\n");
  const SurveyDataset d = load_site_files({dir.path / "s1.txt", dir.path / "s2.txt"});
  CHECK(d.site_count() == 2);
  CHECK(d.site_size(1) == 2);
  CHECK(d.site_size(2) == 3);
  CHECK(d.site(2).at("A123XYZ") == 2);
  CHECK(d.label(1) == "s1");
  CHECK_THROWS_AS(load_site_files({dir.path / "missing.txt"}), IoError);
}

TEST_CASE("manifest parsing and fail-fast checks") {
  TempDir dir;
  dir.file("s1.txt", "a\n");
  dir.file("s2.txt", "b\n");
  const fs::path manifest_path = dir.file("survey.manifest",
                                          "# toy survey\n"
                                          "site = s1.txt\n"
                                          "site = s2.txt\n"
                                          "projection = first-letter-digits\n"
                                          "model = flat:10000\n");
  const Manifest m = load_manifest(manifest_path);
  REQUIRE(m.site_files.size() == 2);
  CHECK(m.site_files[0].filename() == "s1.txt");
  CHECK(m.projection_rule == "first-letter-digits");
  CHECK(m.model_source == "flat:10000");

  const fs::path missing = dir.file("bad.manifest", "site = nowhere.txt\nmodel = flat:10\n");
  CHECK_THROWS_AS(load_manifest(missing), IoError);

  const fs::path unknown = dir.file("odd.manifest", "site = s1.txt\nwhatever = 1\n");
  CHECK_THROWS_WITH(load_manifest(unknown), doctest::Contains("odd.manifest:2"));

  const fs::path empty = dir.file("empty.manifest", "# nothing\n");
  CHECK_THROWS_AS(load_manifest(empty), ValidationError);
  CHECK_THROWS_AS(load_manifest(dir.path / "absent.manifest"), IoError);
}

TEST_CASE("model files") {
  TempDir dir;
  const fs::path good = dir.file("p.txt", "1.0\n1e-4\n1e-8\n");
  const CollisionModel m = load_model_file(good);
  CHECK(m.max_order() == 3);
  CHECK(m.at(2) == 1e-4);
  CHECK(m.source() == CollisionSource::Explicit);

  const fs::path corrupt = dir.file("bad.txt", "1.0\n0.5\n0.6\n");
  CHECK_THROWS_WITH(load_model_file(corrupt), doctest::Contains("p(3)"));
  CHECK_THROWS_WITH(load_model_file(corrupt), doctest::Contains("bad.txt"));
  const fs::path garbled = dir.file("garbled.txt", "1.0\noops\n");
  CHECK_THROWS_WITH(load_model_file(garbled), doctest::Contains("garbled.txt:2"));
  CHECK_THROWS_AS(load_model_file(dir.path / "none.txt"), IoError);
}

TEST_CASE("fleet files and model resolution") {
  TempDir dir;
  const fs::path fleet = dir.file("fleet.txt", "0.5\n0.25\n0.25\n");
  const FleetDistribution f = load_fleet_file(fleet);
  CHECK(f.num_classes() == 3);

  const CollisionModel analytic = resolve_model("fleet:fleet.txt", dir.path, 3);
  CHECK(analytic.at(2) == doctest::Approx(0.25 + 0.0625 + 0.0625).epsilon(1e-12));

  const CollisionModel flat = resolve_model("flat:100", dir.path, 4);
  CHECK(flat.at(2) == doctest::Approx(0.01).epsilon(1e-12));

  dir.file("p.txt", "1\n0.5\n");
  CHECK(resolve_model("file:p.txt", dir.path, 2).at(2) == 0.5);
  CHECK_THROWS_WITH(resolve_model("file:p.txt", dir.path, 3), doctest::Contains("p(1..2)"));
  CHECK_THROWS_AS(resolve_model("magic:1", dir.path, 2), ValidationError);
}

TEST_CASE("experiment spec files") {
  TempDir dir;
  const fs::path path = dir.file("exp.spec",
                                 "sites = 3\n"
                                 "vehicles = 100\n"
                                 "flow = 1,2:10\n"
                                 "flow = 1,2,3:5   # cohort across all sites\n"
                                 "fleet_size = 500\n"
                                 "runs = 4\n"
                                 "seed = 42\n");
  const ExperimentSpec spec = load_experiment_spec(path);
  CHECK(spec.name == "exp");
  CHECK(spec.num_sites == 3);
  CHECK(spec.vehicles_per_site == std::vector<std::int64_t>{100, 100, 100});
  REQUIRE(spec.flows.size() == 2);
  CHECK(spec.flows[0].sites == std::vector<int>{1, 2});
  CHECK(spec.flows[0].vehicles == 10);
  CHECK(spec.expected_true_matches() == 5);
  CHECK(spec.runs == 4);
  CHECK(spec.seed == 42);

  const fs::path per_site = dir.file("per_site.spec",
                                     "sites = 2\nvehicles = 10,20\nfleet_size = 5\nruns = 2\n");
  CHECK(load_experiment_spec(per_site).vehicles_per_site == std::vector<std::int64_t>{10, 20});

  const fs::path bad = dir.file("bad.spec", "sites = 2\nvehicles = 10\nflow = 1,2\n");
  CHECK_THROWS_WITH(load_experiment_spec(bad), doctest::Contains("flow"));
  const fs::path oversub =
      dir.file("oversub.spec", "sites = 2\nvehicles = 10\nflow = 1,2:20\nfleet_size = 5\nruns = 2\n");
  CHECK_THROWS_WITH(load_experiment_spec(oversub), doctest::Contains("over-subscribed"));
}

TEST_CASE("text file round trip") {
  TempDir dir;
  const fs::path p = dir.path / "out.txt";
  write_text_file(p, "hello\n");
  CHECK(read_text_file(p) == "hello\n");
  CHECK_THROWS_AS(read_text_file(dir.path / "nope"), IoError);
  CHECK_THROWS_AS(write_text_file(dir.path / "no" / "dir" / "out.txt", "x"), IoError);
}
