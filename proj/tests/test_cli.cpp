#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

std::string binary() {
  const char* env = std::getenv("COHERENT_KIT_BIN");
  return env ? env : "./coherent-kit";
}

int run(const std::string& args) {
  const std::string cmd = binary() + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path make_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "ck_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const fs::path& dir, const std::string& body) {
  const fs::path p = dir / "config.json";
  std::ofstream out(p);
  out << body;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("usage errors exit with code 1") {
  CHECK(run("frobnicate --config nowhere.json") == 1);
  CHECK(run("spread") == 1);  // --config is required
  const fs::path dir = make_dir("usage");
  const fs::path cfg = write_config(dir, "{\"hbar\": 1.0}\n");  // no seed
  CHECK(run("spread --config " + cfg.string()) == 1);
  const fs::path broken = write_config(dir, "{not json");
  CHECK(run("spread --config " + broken.string()) == 1);
}

TEST_CASE("spread writes a CSV with unit-annotated header") {
  const fs::path dir = make_dir("spread");
  const fs::path cfg = write_config(dir, "{\"seed\": 7, \"num_points\": 20}\n");
  CHECK(run("spread --config " + cfg.string() + " --out " + dir.string()) == 0);
  const std::string csv = slurp(dir / "spread.csv");
  CHECK(csv.rfind("t [1/omega],dx_free [x0],dx_ho [x0],dx_coherent [x0]\n",
                  0) == 0);
  // Coherent column constant: every data row ends with the same value.
  std::istringstream lines(csv);
  std::string line, first_val;
  std::getline(lines, line);  // header
  while (std::getline(lines, line)) {
    const std::string val = line.substr(line.rfind(',') + 1);
    if (first_val.empty()) first_val = val;
    CHECK(val == first_val);
  }
}

TEST_CASE("outputs are byte-identical for identical config and seed") {
  const fs::path d1 = make_dir("rep1");
  const fs::path d2 = make_dir("rep2");
  const std::string body = "{\"seed\": 42, \"num_pairs\": 5}\n";
  const fs::path c1 = write_config(d1, body);
  const fs::path c2 = write_config(d2, body);
  CHECK(run("displacement --config " + c1.string() + " --out " + d1.string()) == 0);
  CHECK(run("displacement --config " + c2.string() + " --out " + d2.string()) == 0);
  CHECK(slurp(d1 / "displacement.csv") == slurp(d2 / "displacement.csv"));
}

TEST_CASE("a different seed changes the sampled table") {
  const fs::path d1 = make_dir("seed1");
  const fs::path d2 = make_dir("seed2");
  const fs::path c1 = write_config(d1, "{\"seed\": 1, \"num_pairs\": 5}\n");
  const fs::path c2 = write_config(d2, "{\"seed\": 2, \"num_pairs\": 5}\n");
  CHECK(run("displacement --config " + c1.string() + " --out " + d1.string()) == 0);
  CHECK(run("displacement --config " + c2.string() + " --out " + d2.string()) == 0);
  CHECK(slurp(d1 / "displacement.csv") != slurp(d2 / "displacement.csv"));
}

TEST_CASE("json format and svg rendering") {
  const fs::path dir = make_dir("fmt");
  const fs::path cfg =
      write_config(dir, "{\"seed\": 3, \"num_points\": 16}\n");
  CHECK(run("bargmann --config " + cfg.string() + " --out " + dir.string() +
            " --format json --svg") == 0);
  CHECK(fs::exists(dir / "bargmann.json"));
  CHECK_FALSE(fs::exists(dir / "bargmann.csv"));
  const std::string svg = slurp(dir / "bargmann.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
}

TEST_CASE("config file can set the format, flags still win") {
  const fs::path dir = make_dir("override");
  const fs::path cfg = write_config(
      dir, "{\"seed\": 5, \"format\": \"json\", \"num_points\": 12, \"out\": \"" +
               dir.string() + "\"}\n");
  CHECK(run("bloch --config " + cfg.string()) == 0);
  CHECK(fs::exists(dir / "bloch.json"));
  CHECK(run("bloch --config " + cfg.string() + " --format csv") == 0);
  CHECK(fs::exists(dir / "bloch.csv"));
}

TEST_CASE("fringes: coherent visibility column is identically one") {
  const fs::path dir = make_dir("fringes");
  const fs::path cfg =
      write_config(dir, "{\"seed\": 11, \"num_points\": 25}\n");
  CHECK(run("fringes --config " + cfg.string() + " --out " + dir.string()) == 0);
  std::istringstream lines(slurp(dir / "fringes.csv"));
  std::string line;
  std::getline(lines, line);
  CHECK(line.find("visibility_coherent [1]") != std::string::npos);
  while (std::getline(lines, line)) {
    std::istringstream cells(line);
    std::string cell;
    std::getline(cells, cell, ',');  // path difference
    std::getline(cells, cell, ',');  // coherent visibility
    CHECK(std::abs(std::stod(cell) - 1.0) < 1e-10);
  }
}

TEST_CASE("numerical refusal exits with code 3") {
  const fs::path dir = make_dir("refusal");
  // Spin-network peak far above the truncation triggers the tail guard.
  const fs::path cfg = write_config(
      dir, "{\"seed\": 9, \"a\": 40.0, \"tau\": 0.2, \"j_max\": 1.0, "
           "\"tail_tol\": 1e-8}\n");
  CHECK(run("spinnet --config " + cfg.string() + " --out " + dir.string()) == 3);
}

TEST_CASE("remaining subcommands produce their artifacts") {
  const fs::path dir = make_dir("rest");
  const fs::path cfg = write_config(
      dir, "{\"seed\": 13, \"num_states\": 6, \"num_points\": 8, "
           "\"num_zeta\": 5, \"j_max\": 2, \"num_faces\": 5}\n");
  const std::string tail =
      " --config " + cfg.string() + " --out " + dir.string();
  CHECK(run("characterize" + tail) == 0);
  CHECK(fs::exists(dir / "characterize.csv"));
  CHECK(run("heatkernel" + tail) == 0);
  CHECK(fs::exists(dir / "heatkernel.csv"));
  CHECK(run("polyhedron" + tail) == 0);
  CHECK(fs::exists(dir / "polyhedron.csv"));
  CHECK(fs::exists(dir / "polyhedron_realization.json"));
  CHECK(fs::exists(dir / "polyhedron_mesh.obj"));
}
