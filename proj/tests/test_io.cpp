#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "pluriharm/errors.hpp"
#include "pluriharm/io.hpp"

using namespace pluriharm;

TEST_CASE("JSON descriptors") {
  const Json arcs = load_json(R"({"arcs": [[0, 1], [0.5, 2]]})", "set");
  CHECK(arcset_from_json(arcs, "set") == UnitCircleSet::from_intervals({{0.0, 2.0}}));
  CHECK(arcset_from_json(arcset_to_json(UnitCircleSet::arc(1.0, 2.0)), "set") == UnitCircleSet::arc(1.0, 2.0));
  CHECK_THROWS_AS(load_json("{not json", "set"), InputError);
  CHECK_THROWS_AS(load_json("/nonexistent/file.json", "set"), InputError);
  CHECK_THROWS_AS(arcset_from_json(load_json(R"({"arcs": [[0, 1]], "x": 1})", "set"), "set"), InputError);
  CHECK_THROWS_AS(arcset_from_json(load_json(R"({"arcs": [[0]]})", "set"), "set"), InputError);
  CHECK(json_complex(Json::array({1.5, -2.0}), "c") == Complex(1.5, -2.0));
  CHECK(parse_complex("0.25,-1", "z") == Complex(0.25, -1.0));
  CHECK(parse_complex("3", "z") == Complex(3.0, 0.0));
  CHECK_THROWS_AS(parse_complex("1,2,3", "z"), InputError);
  CHECK_THROWS_AS(parse_complex("abc", "z"), InputError);
}

TEST_CASE("grid domains from JSON") {
  const GridDomain ann = grid_domain_from_json(load_json(R"({"type":"annulus","center":[0,0],"r_in":0.25,"r_out":1})", "d"),
                                               load_json(R"({"inner_circle": true})", "t"), 1.0 / 16);
  CHECK(ann.interior_count() > 0);
  CHECK_THROWS_AS(grid_domain_from_json(load_json(R"({"type":"square"})", "d"), Json::object(), 0.1), InputError);
  CHECK_THROWS_AS(grid_domain_from_json(load_json(R"({"type":"unit_disc"})", "d"),
                                        load_json(R"({"inner_circle": true})", "t"), 0.1),
                  InputError);
  CHECK_THROWS_AS(grid_domain_from_json(load_json(R"({"type":"unit_disc"})", "d"), Json::object(), -1.0), InputError);
  const PlanarFactor f = factor_from_json(load_json(R"({"domain":{"type":"unit_disc"},"target":{"arcs":[[0,3.14159]]}})", "f"), "f");
  CHECK(f.is_disc());
  CHECK(f.omega(0.0) == doctest::Approx(1.0 - 3.14159 / kTwoPi));
}

TEST_CASE("property: format_real round-trips") {
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<std::uint64_t> bits;
  for (int k = 0; k < 10000; ++k) {
    double x;
    const std::uint64_t b = bits(rng);
    std::memcpy(&x, &b, sizeof x);
    if (!std::isfinite(x)) continue;
    CHECK(std::strtod(format_real(x).c_str(), nullptr) == x);
  }
  CHECK(format_real(std::nan("")) == "nan");
}

TEST_CASE("CSV writing and reading") {
  std::ostringstream out;
  CsvWriter w(out, {"a", "b"});
  w.row(std::vector<double>{0.5, -1.0});
  CHECK_THROWS_AS(w.row(std::vector<double>{1.0}), InputError);
  std::istringstream in(out.str());
  const CsvTable t = read_csv(in);
  CHECK(out.str().rfind("# pluriharm ", 0) == 0);
  CHECK(t.header == std::vector<std::string>{"a", "b"});
  REQUIRE(t.rows.size() == 1);
  CHECK(csv_number(t.rows[0][1], "b") == -1.0);
  CHECK_THROWS_AS(csv_number("x", "b"), InputError);
  std::istringstream headless("1,2\n\n3,4\n");
  CHECK(read_csv(headless).rows.size() == 2);
}

TEST_CASE("16-bit PGM layout") {
  const auto path = (std::filesystem::temp_directory_path() / "pluriharm_test.pgm").string();
  write_pgm16(path, 2, 2, {0.0, 1.0, std::nan(""), 2.0});
  std::ifstream in(path, std::ios::binary);
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::string header = "P5\n2 2\n65535\n";
  REQUIRE(bytes.size() == header.size() + 8);
  CHECK(bytes.substr(0, header.size()) == header);
  // Top row first: row 1 = (NaN -> 0, clamped 2 -> 65535), then row 0 = (0, 65535).
  const unsigned char expected[8] = {0, 0, 0xff, 0xff, 0, 0, 0xff, 0xff};
  for (int k = 0; k < 8; ++k) CHECK(static_cast<unsigned char>(bytes[header.size() + k]) == expected[k]);
  std::remove(path.c_str());
  CHECK_THROWS_AS(write_pgm16(path, 3, 2, {0.0}), InputError);
}
