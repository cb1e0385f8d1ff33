#pragma once

// Config parsing and output formats shared by the command-line tool and the bindings.
//
// JSON descriptors (unknown keys are rejected everywhere):
//   arc set   {"arcs": [[a, b], ...]}                              radians
//   domain    {"type": "unit_disc"}
//             {"type": "disc", "center": [x, y], "radius": r}
//             {"type": "half_disc", "center": [x, y], "radius": r}
//             {"type": "annulus", "center": [x, y], "r_in": r1, "r_out": r2}
//   target    {"arcs": [...]}                 arcs of the boundary circle, angles about the center
//             {"inner_circle": true}          inner circle of an annulus
//             {"disc": {"center": [x, y], "radius": r}}   compact disc inside the domain
//             {"cells": [[i, j], ...]}        lattice nodes
//             {}                              no target
//   factor    {"domain": ..., "target": ..., "h": real}   (h unused for unit_disc)

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pluriharm/arcset.hpp"
#include "pluriharm/cross.hpp"
#include "pluriharm/grid_domain.hpp"
#include "pluriharm/types.hpp"

namespace pluriharm {

using Json = nlohmann::json;

std::string_view version();

/// Inline JSON when the text starts with '{' or '[', otherwise a path to a JSON file.
/// Errors name `field`.
Json load_json(const std::string& text_or_path, std::string_view field);

/// Throws InputError naming the first key of `object` outside `allowed`.
void require_keys(const Json& object, std::initializer_list<std::string_view> allowed, std::string_view where);

double json_number(const Json& object, std::string_view key, std::string_view where);
Complex json_complex(const Json& value, std::string_view where);
/// "re,im" (or a bare real).
Complex parse_complex(std::string_view text, std::string_view field);

UnitCircleSet arcset_from_json(const Json& value, std::string_view where);
Json arcset_to_json(const UnitCircleSet& set);

/// Grid discretization of a domain/target pair at spacing h.
GridDomain grid_domain_from_json(const Json& domain, const Json& target, double h);
PlanarFactor factor_from_json(const Json& factor, std::string_view where);

/// Shortest round-trip decimal with 17 significant digits.
std::string format_real(double x);

/// CSV with a "# pluriharm <version>" line and a column header.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> columns);
  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
  std::size_t width_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Reads a CSV, skipping '#' comment lines; the first line is a header when it is not numeric.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);
double csv_number(const std::string& cell, std::string_view field);

/// Binary P5 greymap with 16-bit big-endian samples round(65535 v), v clamped to [0, 1]
/// and NaN written as 0. `values` is row-major with row 0 at the bottom.
void write_pgm16(const std::string& path, int width, int height, const std::vector<double>& values);

}  // namespace pluriharm
