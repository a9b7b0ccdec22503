// End-to-end checks of the smatch binary: stable exit codes and output shapes.

#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int exit_code = -1;
  std::string output; // stdout + stderr
};

CliResult run_cli(const std::string& args) {
  const std::string command = std::string(SMATCH_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = ::popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  std::array<char, 4096> buffer;
  std::size_t got = 0;
  while ((got = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), got);
  const int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("smatch_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
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

std::size_t count_lines(const std::string& text) {
  std::size_t lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  return lines;
}

} // namespace

TEST_CASE("partitions command lists canonical partitions plus a summary") {
  const CliResult r = run_cli("partitions 3");
  CHECK(r.exit_code == 0);
  CHECK(count_lines(r.output) == 6); // 5 partitions + count line
  CHECK(r.output.find("1,2,3\n") == 0);
  CHECK(r.output.find("count: 5") != std::string::npos);

  CHECK(count_lines(run_cli("partitions 4").output) == 16);
  const CliResult one = run_cli("partitions 1");
  CHECK(one.exit_code == 0);
  CHECK(one.output.find("1\n") == 0);
}

TEST_CASE("partitions bounds give validation exit code") {
  CHECK(run_cli("partitions 0").exit_code == 1);
  CHECK(run_cli("partitions 13").exit_code == 1);
}

TEST_CASE("hasse command writes DOT and reports counts") {
  TempDir dir;
  const std::string out = (dir.path / "h.dot").string();
  const CliResult r = run_cli("hasse 4 -o " + out);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("15 nodes") != std::string::npos);
  std::ifstream in(out);
  std::string dot((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(dot.find("digraph") == 0);
  CHECK(dot.find("1,2,3,4") != std::string::npos);

  const CliResult unwritable = run_cli("hasse 3 -o " + (dir.path / "no" / "h.dot").string());
  CHECK(unwritable.exit_code == 2);
  CHECK(run_cli("hasse 8 -o " + out).exit_code == 1);
}

TEST_CASE("correct command end to end on the toy survey") {
  TempDir dir;
  dir.file("s1.txt", "A123XYZ\nC789ABC\n");
  dir.file("s2.txt", "A123XYZ\nA123XDR\nD555SDD\n");
  dir.file("s3.txt", "C789ABC\nA123XYZ\n");
  const fs::path manifest = dir.file("toy.manifest",
                                     "site = s1.txt\n"
                                     "site = s2.txt\n"
                                     "site = s3.txt\n"
                                     "projection = first-letter-digits\n"
                                     "model = flat:10000\n");
  const std::string csv = (dir.path / "report.csv").string();
  const CliResult r = run_cli("correct " + manifest.string() + " --csv " + csv);
  CHECK(r.exit_code == 0);
  CHECK(count_lines(r.output) == 9); // header + 7 subsets + summary
  CHECK(r.output.find("subset\traw\tcorrected\n") == 0);
  CHECK(r.output.find("1,2,3\t2\t") != std::string::npos);
  CHECK(r.output.find("all-sites estimate:") != std::string::npos);
  std::ifstream in(csv);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content.find("subset,raw,corrected\n") == 0);
  CHECK(count_lines(content) == 8);

  // the same data already projected, via --partial
  dir.file("p1.txt", "A123\nC789\n");
  dir.file("p2.txt", "A123\nA123\nD555\n");
  dir.file("p3.txt", "C789\nA123\n");
  const fs::path partial_manifest = dir.file("partial.manifest",
                                             "site = p1.txt\n"
                                             "site = p2.txt\n"
                                             "site = p3.txt\n"
                                             "model = flat:10000\n");
  const CliResult p = run_cli("correct " + partial_manifest.string() + " --partial");
  CHECK(p.exit_code == 0);
  CHECK(p.output == r.output);
}

TEST_CASE("correct command error paths") {
  TempDir dir;
  dir.file("s1.txt", "a\n");
  const fs::path manifest =
      dir.file("m.manifest", "site = s1.txt\nsite = gone.txt\nmodel = flat:10\n");
  CHECK(run_cli("correct " + manifest.string()).exit_code == 2);

  const fs::path no_model = dir.file("nm.manifest", "site = s1.txt\n");
  const CliResult r = run_cli("correct " + no_model.string() + " --partial");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("model") != std::string::npos);

  // eight sites exceeds the capacity ceiling
  std::string eight = "model = flat:10\n";
  for (int i = 1; i <= 8; ++i) {
    dir.file("e" + std::to_string(i) + ".txt", "k\n");
    eight += "site = e" + std::to_string(i) + ".txt\n";
  }
  const fs::path big = dir.file("big.manifest", eight);
  CHECK(run_cli("correct " + big.string() + " --partial").exit_code == 3);

  const fs::path zeros = dir.file("z.manifest", "site = s1.txt\nmodel = file:pz.txt\n");
  dir.file("pz.txt", "1.0\n0.0\n");
  CHECK(run_cli("correct " + zeros.string() + " --partial").exit_code == 0);
}

TEST_CASE("zero collision model leaves raw counts unchanged through the CLI") {
  TempDir dir;
  dir.file("s1.txt", "x\ny\nz\n");
  dir.file("s2.txt", "x\ny\nw\n");
  dir.file("p.txt", "1.0\n0.0\n");
  const fs::path manifest =
      dir.file("m.manifest", "site = s1.txt\nsite = s2.txt\nmodel = file:p.txt\n");
  const CliResult r = run_cli("correct " + manifest.string() + " --partial");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("1,2\t2\t2.000000") != std::string::npos);
}

TEST_CASE("simulate command with a minimal spec file") {
  TempDir dir;
  const fs::path spec = dir.file("mini.spec",
                                 "sites = 2\n"
                                 "vehicles = 50\n"
                                 "flow = 1,2:5\n"
                                 "fleet_size = 100\n"
                                 "runs = 2\n"
                                 "seed = 3\n");
  const std::string csv = (dir.path / "runs.csv").string();
  const CliResult r = run_cli("simulate " + spec.string() + " --csv " + csv);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("Av. Raw\tSigma Raw\tAv. Cor.\tSigma Cor.\n") != std::string::npos);
  CHECK(r.output.find("expected=5") != std::string::npos);
  std::ifstream in(csv);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content.find("run,raw,corrected\n") == 0);
  CHECK(count_lines(content) == 3);

  CHECK(run_cli("simulate " + spec.string() + " --runs 1").exit_code == 1);
  CHECK(run_cli("simulate nowhere.spec").exit_code == 2);
}

TEST_CASE("simulate accepts bundled spec names") {
  const CliResult r = run_cli("simulate table1_row1 --runs 3 --seed 9");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("spec: table1_row1") != std::string::npos);
  CHECK(r.output.find("runs=3") != std::string::npos);
  CHECK(r.output.find("expected=10") != std::string::npos);
}

TEST_CASE("selftest command passes on a fresh build") {
  const CliResult r = run_cli("selftest");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("PASS  oracle-equivalence") != std::string::npos);
  CHECK(r.output.find("FAIL") == std::string::npos);
}

TEST_CASE("bad usage maps to exit code 1") {
  CHECK(run_cli("").exit_code == 1);
  CHECK(run_cli("frobnicate").exit_code == 1);
  const CliResult help = run_cli("--help");
  CHECK(help.exit_code == 0);
  CHECK(help.output.find("partitions") != std::string::npos);
}
