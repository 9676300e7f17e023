#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(SCHAIN_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buffer{};
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("schain_cli_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream out(path / name, std::ios::binary);
    out << text;
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_two_block_fixture(const TempDir& dir) {
  std::ostringstream nodes, edges;
  // two author groups around disjoint paper hubs
  for (int i = 0; i < 6; ++i) nodes << "a" << i << "\tA\n";
  for (int i = 0; i < 4; ++i) nodes << "p" << i << "\tP\n";
  for (int i = 0; i < 3; ++i) {
    edges << "a" << i << "\tp0\n";
    edges << "a" << i + 3 << "\tp2\n";
  }
  edges << "a0\tp1\na1\tp1\na3\tp3\na4\tp3\n";
  dir.write("nodes.tsv", nodes.str());
  dir.write("edges.tsv", edges.str());
  dir.write("metapaths.txt", "A-P-A\n");
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("cluster: happy path writes result and manifest, exit 0") {
  TempDir dir;
  write_two_block_fixture(dir);
  const auto run = run_cli("cluster " + dir.path.string() + " --target A --k 2 --seed 3 --out " +
                           dir.file("result.json") + " --manifest " + dir.file("manifest.json"));
  CHECK(run.exit_code == 0);
  const std::string result = slurp(dir.file("result.json"));
  CHECK(result.find("\"clusters\"") != std::string::npos);
  CHECK(result.find("\"lambda\"") != std::string::npos);
  CHECK(result.find("\"J_history\"") != std::string::npos);
  CHECK(result.find("\"mu_traces\"") != std::string::npos);
  const std::string manifest = slurp(dir.file("manifest.json"));
  CHECK(manifest.find("\"tool_version\"") != std::string::npos);
  CHECK(manifest.find("\"seed\"") != std::string::npos);
}

TEST_CASE("cluster: byte-identical results across reruns with one seed") {
  TempDir dir;
  write_two_block_fixture(dir);
  const std::string base = "cluster " + dir.path.string() + " --target A --k 2 --seed 11 ";
  REQUIRE(run_cli(base + "--out " + dir.file("r1.json") + " --manifest " + dir.file("m1.json"))
              .exit_code == 0);
  REQUIRE(run_cli(base + "--out " + dir.file("r2.json") + " --manifest " + dir.file("m2.json"))
              .exit_code == 0);
  CHECK(slurp(dir.file("r1.json")) == slurp(dir.file("r2.json")));
  CHECK(!slurp(dir.file("r1.json")).empty());
}

TEST_CASE("cluster: missing nodes.tsv is a data error naming the path") {
  TempDir dir;
  dir.write("edges.tsv", "");
  dir.write("metapaths.txt", "A-P-A\n");
  const auto run = run_cli("cluster " + dir.path.string() + " --target A --k 2");
  CHECK(run.exit_code == 3);
}

TEST_CASE("cluster: k larger than the population is a data error") {
  TempDir dir;
  write_two_block_fixture(dir);
  const auto run = run_cli("cluster " + dir.path.string() + " --target A --k 9");
  CHECK(run.exit_code == 3);
}

TEST_CASE("cluster: config file values apply and flags override") {
  TempDir dir;
  write_two_block_fixture(dir);
  dir.write("schain.conf", "k = 2\nseed = 4\nalpha = 0.0\n");
  const auto run = run_cli("cluster " + dir.path.string() + " --target A --config " +
                           dir.file("schain.conf") + " --out " + dir.file("result.json") +
                           " --manifest " + dir.file("m.json"));
  CHECK(run.exit_code == 0);

  dir.write("bad.conf", "k = 2\nwat = 5\n");
  const auto bad = run_cli("cluster " + dir.path.string() + " --target A --config " +
                           dir.file("bad.conf"));
  CHECK(bad.exit_code == 2);
}

TEST_CASE("pathsim dumps edges as id pairs with weights") {
  TempDir dir;
  dir.write("nodes.tsv", "a1\tA\na2\tA\np1\tP\np2\tP\n");
  dir.write("edges.tsv", "a1\tp1\na1\tp2\na2\tp1\n");
  const auto run = run_cli("pathsim " + dir.path.string() + " --path A-P-A");
  CHECK(run.exit_code == 0);
  std::istringstream lines(run.output);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line.find("a1\ta2\t") == 0);
  CHECK(line.substr(6) == "0.666666666667");
  CHECK_FALSE(std::getline(lines, line));
}

TEST_CASE("diagnose reports quality fields and checks inputs") {
  TempDir dir;
  write_two_block_fixture(dir);
  dir.write("labels.tsv", "a0\tx\na1\tx\na2\tx\na3\ty\na4\ty\na5\ty\n");
  const auto run =
      run_cli("diagnose " + dir.path.string() + " --target A --labels " + dir.file("labels.tsv"));
  CHECK(run.exit_code == 0);
  CHECK(run.output.find("\"cohesiveness\"") != std::string::npos);
  CHECK(run.output.find("\"connectedness\"") != std::string::npos);

  dir.write("partial.tsv", "a0\tx\na1\ty\n");
  const auto partial = run_cli("diagnose " + dir.path.string() + " --target A --labels " +
                               dir.file("partial.tsv"));
  CHECK(partial.exit_code == 3);

  const auto bad_theta = run_cli("diagnose " + dir.path.string() + " --target A --labels " +
                                 dir.file("labels.tsv") + " --theta 0.9,0.9");
  CHECK(bad_theta.exit_code == 2);
}

TEST_CASE("eval-nmi prints a fixed-format float") {
  TempDir dir;
  dir.write("la.tsv", "x1\t0\nx2\t0\nx3\t1\nx4\t1\n");
  dir.write("lb.tsv", "x1\tA\nx2\tA\nx3\tB\nx4\tB\n");
  const auto same = run_cli("eval-nmi " + dir.file("la.tsv") + " " + dir.file("lb.tsv"));
  CHECK(same.exit_code == 0);
  CHECK(same.output == "1.000000\n");

  dir.write("lc.tsv", "x1\t0\nx2\t1\nx3\t0\nx4\t1\n");
  const auto ortho = run_cli("eval-nmi " + dir.file("la.tsv") + " " + dir.file("lc.tsv"));
  CHECK(ortho.output == "0.000000\n");

  dir.write("ld.tsv", "x1\t0\nx9\t1\n");
  const auto mismatch = run_cli("eval-nmi " + dir.file("la.tsv") + " " + dir.file("ld.tsv"));
  CHECK(mismatch.exit_code == 3);
}

TEST_CASE("usage errors exit with code 2") {
  const auto nocmd = run_cli("");
  CHECK(nocmd.exit_code == 2);
  const auto unknown = run_cli("clusterify /tmp");
  CHECK(unknown.exit_code == 2);
}
