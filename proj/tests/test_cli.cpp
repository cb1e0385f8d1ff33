#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "pluriharm/io.hpp"

using namespace pluriharm;

namespace {

namespace fs = std::filesystem;

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "pluriharm");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

fs::path scratch(const std::string& name) { return fs::temp_directory_path() / ("pluriharm_cli_" + name); }

void write_text(const fs::path& path, const std::string& text) { std::ofstream(path) << text; }

CsvTable read(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::string first;
  std::getline(in, first);
  CHECK(first == "# pluriharm " + std::string(version()));
  return read_csv(in);
}

double number(const CsvTable& t, std::size_t row, const std::string& col) {
  const auto it = std::find(t.header.begin(), t.header.end(), col);
  REQUIRE(it != t.header.end());
  return csv_number(t.rows.at(row).at(static_cast<std::size_t>(it - t.header.begin())), col);
}

}  // namespace

TEST_CASE("usage errors exit with 1") {
  CHECK(run({}) == 1);
  CHECK(run({"no-such-command"}) == 1);
  CHECK(run({"omega-disc", "--grid", "4"}) == 1);
  CHECK(run({"omega-disc", "--set", R"({"arcs":[[0,1]],"x":1})", "--grid", "4", "--out", "-"}) == 1);
  CHECK(run({"--help"}) == 0);
}

TEST_CASE("omega-disc at the center of a half circle") {
  const auto out = scratch("omega_disc.csv");
  REQUIRE(run({"omega-disc", "--set", R"({"arcs":[[0,3.141592653589793]]})", "--grid", "4", "--out", out.string()}) == 0);
  const CsvTable t = read(out);
  CHECK(t.header == std::vector<std::string>{"re", "im", "omega", "omega_hat"});
  bool seen = false;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (number(t, r, "re") == 0.0 && number(t, r, "im") == 0.0) {
      seen = true;
      CHECK(number(t, r, "omega") == doctest::Approx(0.5).epsilon(1e-12));
    }
  }
  CHECK(seen);
  fs::remove(out);
}

TEST_CASE("omega-grid on an annulus") {
  const auto out = scratch("omega_grid.csv");
  REQUIRE(run({"omega-grid", "--domain", R"({"type":"annulus","center":[0,0],"r_in":0.25,"r_out":1})", "--target",
               R"({"inner_circle":true})", "--h", "0.0625", "--out", out.string()}) == 0);
  const CsvTable t = read(out);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double rho = std::hypot(number(t, r, "x"), number(t, r, "y"));
    if (rho > 0.3 && rho < 0.9) CHECK(number(t, r, "omega") == doctest::Approx(std::log(rho / 0.25) / std::log(4.0)).epsilon(2e-2));
  }
  fs::remove(out);
}

TEST_CASE("extend and hartogs") {
  const auto points = scratch("points.csv");
  const auto out = scratch("extend.csv");
  write_text(points, "z_re,z_im,w_re,w_im\n0,0,0,0\n0.1,0.2,-0.1,0\n");
  const std::string cross = R"({"A":{"arcs":[[0,4.71238898]]},"B":{"arcs":[[0,4.71238898]]},"max_refinements":1})";
  REQUIRE(run({"extend", "--cross", cross, "--function", "const1", "--points", points.string(), "--out", out.string()}) == 0);
  const CsvTable t = read(out);
  REQUIRE(t.rows.size() == 2);
  for (std::size_t r = 0; r < 2; ++r) CHECK(number(t, r, "f_re") == doctest::Approx(1.0).epsilon(1e-9));

  // Two orders cannot reach a 1e-12 gap: the limit does not converge.
  const std::string tight = R"({"A":{"arcs":[[0,4.71238898]]},"B":{"arcs":[[0,4.71238898]]},"schedule":[1,2]})";
  CHECK(run({"extend", "--cross", tight, "--function", "exp(zw)", "--tol", "1e-12", "--points", points.string(),
             "--out", out.string()}) == 2);

  write_text(points, "z1_re,z1_im,z2_re,z2_im\n0.5,0.1,0.3,-0.2\n");
  REQUIRE(run({"hartogs", "--r", "0.3", "--points", points.string(), "--function", "exp(zw)", "--out", out.string()}) == 0);
  CHECK(number(read(out), 0, "error") <= 1e-10);
  CHECK(run({"hartogs", "--r", "1.5", "--points", points.string(), "--out", out.string()}) == 1);
  fs::remove(points);
  fs::remove(out);
}

TEST_CASE("riemann-map rejects an annulus") {
  CHECK(run({"riemann-map", "--component", R"({"domain":{"type":"annulus","center":[0,0],"r_in":0.25,"r_out":1},"h":0.0625})",
             "--center", "0.6,0", "--out", scratch("rm.csv").string()}) == 1);
}
