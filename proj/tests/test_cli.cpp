#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

fs::path workdir() {
  fs::path d = fs::temp_directory_path() / "gamowlab_cli_tests";
  fs::create_directories(d);
  return d;
}

int exit_code(const std::string& args) {
  const std::string cmd =
      "cd \"" + workdir().string() + "\" && \"" GAMOWLAB_CLI "\" " + args + " > cli.out 2> cli.err";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_config(const std::string& name, const std::string& body) {
  fs::path p = workdir() / name;
  std::ofstream(p) << body;
  return p;
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli: shipped configs succeed") {
  CHECK(exit_code("--config \"" GAMOWLAB_CONFIG_DIR "/decay_narrow.json\"") == 0);
  CHECK(exit_code("--config \"" GAMOWLAB_CONFIG_DIR "/symmetry_row4.json\"") == 0);
}

TEST_CASE("cli: corrupted tolerance exits 2 naming the check") {
  auto p = write_config("bad_tol.json",
                        R"({"scenario": "selftest", "tolerances": {"completeness": 1e-20},
                            "output": {"path": "bad_selftest.txt"}})");
  CHECK(exit_code("--config \"" + p.string() + "\"") == 2);
  CHECK(read(workdir() / "cli.err").find("completeness") != std::string::npos);
}

TEST_CASE("cli: invalid config exits 1") {
  auto p = write_config("bad.json", R"({"scenario": "decay", "model": [{"re_w": 1, "im_w": 0.5}]})");
  CHECK(exit_code("--config \"" + p.string() + "\"") == 1);
  CHECK(exit_code("--bogus-flag") == 1);
}

TEST_CASE("cli: unwritable output exits 3") {
  CHECK(exit_code("--config \"" GAMOWLAB_CONFIG_DIR "/decay_narrow.json\" --output /nonexistent/dir/x.csv") ==
        3);
  CHECK(exit_code("--config /nonexistent/config.json") == 3);
}

TEST_CASE("cli: command-line overrides") {
  CHECK(exit_code("--config \"" GAMOWLAB_CONFIG_DIR
                  "/decay_narrow.json\" --output over.json --format json --steps 4 --tmax 2") == 0);
  const std::string text = read(workdir() / "over.json");
  CHECK(text.find("\"columns\"") != std::string::npos);
  CHECK(exit_code("--scenario symmetry --case 2 --j 1.5 --output sym.json") == 0);
  CHECK(read(workdir() / "sym.json").find("\"row\": 2") != std::string::npos);
}
