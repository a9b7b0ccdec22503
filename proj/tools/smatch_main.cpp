// smatch: enumerate types of match across survey sites and correct observed
// match counts for false matches caused by partial observation.

#include "smatch/collision.hpp"
#include "smatch/correction.hpp"
#include "smatch/counting.hpp"
#include "smatch/errors.hpp"
#include "smatch/io.hpp"
#include "smatch/partition.hpp"
#include "smatch/selftest.hpp"
#include "smatch/simulator.hpp"
#include "smatch/survey.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace smatch;

std::string fixed1(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", value);
  return buf;
}

int cmd_partitions(int n) {
  const auto parts = enumerate_partitions(n);
  for (const Partition& p : parts) std::cout << p.to_string() << "\n";
  std::cout << "count: " << parts.size() << " (Bell " << n << ")\n";
  return 0;
}

int cmd_hasse(int n, const std::string& output_path) {
  const std::string dot = export_hasse_dot(n);
  write_text_file(output_path, dot);
  const std::size_t nodes = enumerate_partitions(n).size();
  std::size_t edges = 0;
  for (std::size_t pos = 0; (pos = dot.find(" -> ", pos)) != std::string::npos; ++pos) ++edges;
  std::cout << "wrote " << output_path << ": " << nodes << " nodes, " << edges << " edges\n";
  return 0;
}

int cmd_correct(const std::string& manifest_path, bool already_partial,
                const std::optional<std::string>& projection_flag,
                const std::optional<std::string>& model_flag,
                const std::optional<std::string>& csv_path) {
  const Manifest manifest = load_manifest(manifest_path);
  SurveyDataset data = load_site_files(manifest.site_files);

  if (!already_partial) {
    const std::string rule = projection_flag.value_or(manifest.projection_rule.value_or("identity"));
    data = project_dataset(data, LossyProjection::parse_rule(rule));
  }

  const std::optional<std::string> source =
      model_flag ? model_flag : manifest.model_source;
  if (!source)
    throw ValidationError(manifest_path + ": no collision model (set model= or pass --model)");
  const CollisionModel model = resolve_model(*source, manifest.base_dir, data.site_count());

  const CorrectionReport report = correct(data, model);
  std::cout << report.to_text();
  const auto& all = report.all_sites();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", all.corrected);
  std::cout << "all-sites estimate: " << buf << " (raw " << all.raw << ", model "
            << to_string(report.model().source()) << ")\n";
  if (csv_path) write_text_file(*csv_path, report.to_csv());
  return 0;
}

ExperimentSpec resolve_spec(const std::string& name_or_path) {
  if (name_or_path == "table1_row1") return table1_row1_spec();
  for (ExperimentSpec& spec : table2_specs())
    if (spec.name == name_or_path) return spec;
  if (!std::filesystem::exists(name_or_path))
    throw IoError("no bundled spec or file named '" + name_or_path + "'");
  return load_experiment_spec(name_or_path);
}

int cmd_simulate(const std::string& name_or_path, std::optional<int> runs,
                 std::optional<std::uint64_t> seed, const std::optional<std::string>& csv_path) {
  ExperimentSpec spec = resolve_spec(name_or_path);
  if (runs) spec.runs = *runs;
  if (seed) spec.seed = *seed;
  const ExperimentSummary summary = run_experiment(spec);

  std::cout << "spec: " << spec.name << " (" << spec.num_sites << " sites, N=" << spec.fleet_size
            << ", runs=" << spec.runs << ", seed=" << spec.seed
            << ", expected=" << spec.expected_true_matches() << ")\n";
  std::cout << "Av. Raw\tSigma Raw\tAv. Cor.\tSigma Cor.\n";
  std::cout << fixed1(summary.mean_raw) << '\t' << fixed1(summary.sigma_raw) << '\t'
            << fixed1(summary.mean_corrected) << '\t' << fixed1(summary.sigma_corrected) << '\n';

  if (csv_path) {
    std::string csv = "run,raw,corrected\n";
    char buf[96];
    for (const RunRecord& r : summary.records) {
      std::snprintf(buf, sizeof buf, "%d,%lld,%.17g\n", r.run_index,
                    static_cast<long long>(r.raw), r.corrected);
      csv += buf;
    }
    write_text_file(*csv_path, csv);
  }
  return 0;
}

int cmd_selftest() {
  bool all_passed = true;
  for (const SelfTestResult& r : run_selftest()) {
    all_passed = all_passed && r.passed;
    std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.property << " (" << r.detail << ")\n";
  }
  std::cout << (all_passed ? "selftest passed\n" : "selftest FAILED\n");
  return all_passed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"set-partition match counting and false-match correction for multi-site surveys"};
  app.require_subcommand(1);

  int partitions_n = 0;
  auto* partitions = app.add_subcommand("partitions", "list all partitions of {1..n}");
  partitions->add_option("n", partitions_n, "number of sites (1..12)")->required();

  int hasse_n = 0;
  std::string hasse_out = "hasse.dot";
  auto* hasse = app.add_subcommand("hasse", "write the Hasse diagram of {1..n} as DOT");
  hasse->add_option("n", hasse_n, "number of sites (1..7)")->required();
  hasse->add_option("-o,--output", hasse_out, "output path (default hasse.dot)");

  std::string manifest_path;
  bool already_partial = false;
  std::optional<std::string> projection_flag, model_flag, correct_csv;
  auto* correct_cmd = app.add_subcommand("correct", "estimate true matches from survey files");
  correct_cmd->add_option("manifest", manifest_path, "manifest file")->required();
  correct_cmd->add_flag("--partial", already_partial, "site files already hold partial keys");
  correct_cmd->add_option("--projection", projection_flag,
                          "identity | first-letter-digits | regex:<pattern>");
  correct_cmd->add_option("--model", model_flag, "flat:<N> | file:<path> | fleet:<path>");
  correct_cmd->add_option("--csv", correct_csv, "also write the report as CSV");

  std::string spec_arg;
  std::optional<int> sim_runs;
  std::optional<std::uint64_t> sim_seed;
  std::optional<std::string> sim_csv;
  auto* simulate = app.add_subcommand("simulate", "run a Monte-Carlo correction experiment");
  simulate->add_option("spec", spec_arg,
                       "spec file, or a bundled name (table1_row1, table2_exp1..table2_exp4)")
      ->required();
  simulate->add_option("--runs", sim_runs, "override the number of runs");
  simulate->add_option("--seed", sim_seed, "override the RNG seed");
  simulate->add_option("--csv", sim_csv, "write per-run records as CSV");

  auto* selftest = app.add_subcommand("selftest", "run the built-in oracle equivalence suite");

  try {
    app.parse(argc, argv);
    if (partitions->parsed()) return cmd_partitions(partitions_n);
    if (hasse->parsed()) return cmd_hasse(hasse_n, hasse_out);
    if (correct_cmd->parsed())
      return cmd_correct(manifest_path, already_partial, projection_flag, model_flag, correct_csv);
    if (simulate->parsed()) return cmd_simulate(spec_arg, sim_runs, sim_seed, sim_csv);
    if (selftest->parsed()) return cmd_selftest();
    return 1;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const smatch::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 3;
  } catch (const smatch::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 2;
  } catch (const smatch::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
