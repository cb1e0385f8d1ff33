#include "pluriharm/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pluriharm/errors.hpp"

namespace pluriharm {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

bool parse_double(std::string_view text, double& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size();
}

std::string field_name(std::string_view where, std::string_view key) {
  return std::string(where) + "." + std::string(key);
}

BoundaryPiece circle_piece(Complex center, double radius, bool outside_is_domain, double value, bool target,
                           std::string name) {
  if (outside_is_domain) {
    return {[center, radius](Complex z) { return radius - std::abs(z - center); },
            [value](Complex) { return value; }, target, std::move(name)};
  }
  return {[center, radius](Complex z) { return std::abs(z - center) - radius; },
          [value](Complex) { return value; }, target, std::move(name)};
}

double positive(const Json& obj, std::string_view key, std::string_view where) {
  const double v = json_number(obj, key, where);
  if (!(v > 0)) throw InputError(field_name(where, key) + " must be positive");
  return v;
}

std::vector<std::size_t> cells_from_json(const Json& cells, const Lattice& lat, std::string_view where) {
  if (!cells.is_array()) throw InputError(std::string(where) + ".cells must be an array of [i, j] pairs");
  std::vector<std::size_t> out;
  for (const auto& c : cells) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() || !c[1].is_number_integer()) {
      throw InputError(std::string(where) + ".cells entries must be integer pairs [i, j]");
    }
    const long i = c[0].get<long>();
    const long j = c[1].get<long>();
    if (i < 0 || j < 0 || i >= lat.nx || j >= lat.ny) {
      throw InputError(std::string(where) + ".cells entry outside the lattice");
    }
    out.push_back(lat.index(static_cast<int>(i), static_cast<int>(j)));
  }
  return out;
}

struct RegionParts {
  Lattice lattice;
  std::vector<BoundaryPiece> pieces;
  std::vector<std::size_t> cells;
  std::vector<JumpSingularity> jumps;
};

RegionParts region_parts(const Json& domain, const Json& target, double h, bool regular_target) {
  if (!domain.is_object()) throw InputError("domain must be a JSON object");
  if (!target.is_null() && !target.is_object()) throw InputError("target must be a JSON object");
  const std::string type = domain.value("type", std::string());
  const Json tgt = target.is_null() ? Json::object() : target;
  require_keys(tgt, {"arcs", "inner_circle", "disc", "cells"}, "target");
  if (tgt.size() > 1) throw InputError("target must have exactly one of arcs, inner_circle, disc, cells");
  if (!(h > 0)) throw InputError("h must be positive");

  RegionParts parts;
  if (type == "disc" || type == "unit_disc") {
    Complex center = 0.0;
    double radius = 1.0;
    if (type == "disc") {
      require_keys(domain, {"type", "center", "radius"}, "domain");
      center = json_complex(domain.at("center"), "domain.center");
      radius = positive(domain, "radius", "domain");
    } else {
      require_keys(domain, {"type"}, "domain");
    }
    if (tgt.contains("disc")) {
      const Json& d = tgt.at("disc");
      require_keys(d, {"center", "radius"}, "target.disc");
      const GridDomain g = GridDomain::disc_with_inner_target(center, radius, json_complex(d.at("center"), "target.disc.center"),
                                                              positive(d, "radius", "target.disc"), h);
      return {g.lattice(), g.pieces(), {}, {}};
    }
    if (tgt.contains("inner_circle")) throw InputError("target.inner_circle needs an annulus domain");
    UnitCircleSet arcs;
    if (tgt.contains("arcs")) arcs = arcset_from_json(tgt, "target");
    if (regular_target) arcs = arcs.density_points();
    const GridDomain g = GridDomain::disc(center, radius, h, arcs);
    parts = {g.lattice(), g.pieces(), {}, g.singularities()};
    if (tgt.contains("cells")) parts.cells = cells_from_json(tgt.at("cells"), parts.lattice, "target");
    return parts;
  }
  if (type == "annulus") {
    require_keys(domain, {"type", "center", "r_in", "r_out"}, "domain");
    const Complex center = json_complex(domain.at("center"), "domain.center");
    const double r_in = positive(domain, "r_in", "domain");
    const double r_out = positive(domain, "r_out", "domain");
    if (r_in >= r_out) throw InputError("domain.r_in must be smaller than domain.r_out");
    if (tgt.contains("arcs") || tgt.contains("disc")) throw InputError("annulus targets are inner_circle or cells");
    const bool inner_target = tgt.contains("inner_circle") && tgt.at("inner_circle").get<bool>();
    parts.lattice = Lattice::covering(center, r_out, h);
    parts.pieces = {circle_piece(center, r_out, false, 1.0, false, "outer"),
                    circle_piece(center, r_in, true, inner_target ? 0.0 : 1.0, inner_target, "inner")};
    if (tgt.contains("cells")) parts.cells = cells_from_json(tgt.at("cells"), parts.lattice, "target");
    return parts;
  }
  if (type == "half_disc") {
    require_keys(domain, {"type", "center", "radius"}, "domain");
    if (!tgt.empty() && !tgt.contains("cells")) throw InputError("half_disc targets are cells only");
    const GridDomain g = GridDomain::half_disc(json_complex(domain.at("center"), "domain.center"),
                                               positive(domain, "radius", "domain"), h);
    parts = {g.lattice(), g.pieces(), {}, {}};
    if (tgt.contains("cells")) parts.cells = cells_from_json(tgt.at("cells"), parts.lattice, "target");
    return parts;
  }
  throw InputError("domain.type must be one of unit_disc, disc, half_disc, annulus");
}

}  // namespace

std::string_view version() { return PLURIHARM_VERSION; }

Json load_json(const std::string& text_or_path, std::string_view field) {
  const std::string t = trim(text_or_path);
  try {
    if (!t.empty() && (t.front() == '{' || t.front() == '[')) return Json::parse(t);
    std::ifstream in(t);
    if (!in) throw InputError(std::string(field) + ": cannot open '" + t + "'");
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError(std::string(field) + ": malformed JSON (" + e.what() + ")");
  }
}

void require_keys(const Json& object, std::initializer_list<std::string_view> allowed, std::string_view where) {
  if (!object.is_object()) throw InputError(std::string(where) + " must be a JSON object");
  for (const auto& item : object.items()) {
    bool ok = false;
    for (std::string_view a : allowed) ok = ok || item.key() == a;
    if (!ok) throw InputError("unknown key " + field_name(where, item.key()));
  }
}

double json_number(const Json& object, std::string_view key, std::string_view where) {
  const std::string k(key);
  if (!object.contains(k)) throw InputError("missing " + field_name(where, key));
  const Json& v = object.at(k);
  if (!v.is_number()) throw InputError(field_name(where, key) + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InputError(field_name(where, key) + " must be finite");
  return x;
}

Complex json_complex(const Json& value, std::string_view where) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number()) {
    throw InputError(std::string(where) + " must be a pair [re, im]");
  }
  const Complex z(value[0].get<double>(), value[1].get<double>());
  if (!is_finite(z)) throw InputError(std::string(where) + " must be finite");
  return z;
}

Complex parse_complex(std::string_view text, std::string_view field) {
  const auto cells = split(text);
  double re = 0.0;
  double im = 0.0;
  if (cells.size() > 2 || !parse_double(cells[0], re) || (cells.size() == 2 && !parse_double(cells[1], im)) ||
      !std::isfinite(re) || !std::isfinite(im)) {
    throw InputError(std::string(field) + ": expected 're,im', got '" + std::string(text) + "'");
  }
  return {re, im};
}

UnitCircleSet arcset_from_json(const Json& value, std::string_view where) {
  require_keys(value, {"arcs"}, where);
  if (!value.contains("arcs") || !value.at("arcs").is_array()) {
    throw InputError(std::string(where) + ".arcs must be an array of [start, end] pairs");
  }
  std::vector<std::pair<double, double>> intervals;
  for (const auto& a : value.at("arcs")) {
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
      throw InputError(std::string(where) + ".arcs entries must be [start, end] pairs");
    }
    intervals.emplace_back(a[0].get<double>(), a[1].get<double>());
  }
  return UnitCircleSet::from_intervals(intervals);
}

Json arcset_to_json(const UnitCircleSet& set) {
  Json arcs = Json::array();
  for (const auto& [a, b] : set.intervals()) arcs.push_back({a, b});
  return Json{{"arcs", arcs}};
}

GridDomain grid_domain_from_json(const Json& domain, const Json& target, double h) {
  RegionParts p = region_parts(domain, target, h, false);
  return GridDomain(p.lattice, std::move(p.pieces), std::move(p.cells), std::move(p.jumps));
}

PlanarFactor factor_from_json(const Json& factor, std::string_view where) {
  require_keys(factor, {"domain", "target", "h"}, where);
  if (!factor.contains("domain")) throw InputError("missing " + field_name(where, "domain"));
  const Json& domain = factor.at("domain");
  const Json target = factor.contains("target") ? factor.at("target") : Json::object();
  if (domain.is_object() && domain.value("type", std::string()) == "unit_disc") {
    require_keys(domain, {"type"}, field_name(where, "domain"));
    require_keys(target, {"arcs"}, field_name(where, "target"));
    return PlanarFactor::unit_disc(target.contains("arcs") ? arcset_from_json(target, field_name(where, "target"))
                                                           : UnitCircleSet::empty());
  }
  const double h = json_number(factor, "h", where);
  RegionParts p = region_parts(domain, target, h, true);
  return PlanarFactor::grid(p.lattice, std::move(p.pieces), std::move(p.cells), std::move(p.jumps));
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> columns) : out_(out), width_(columns.size()) {
  out_ << "# pluriharm " << version() << '\n';
  for (std::size_t k = 0; k < columns.size(); ++k) out_ << (k ? "," : "") << columns[k];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_real(v));
  row(cells);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw InputError("CSV row width does not match the header");
  for (std::size_t k = 0; k < cells.size(); ++k) out_ << (k ? "," : "") << cells[k];
  out_ << '\n';
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto cells = split(t);
    if (first) {
      first = false;
      double x;
      bool numeric = true;
      for (const auto& c : cells) numeric = numeric && parse_double(c, x);
      if (!numeric) {
        table.header = std::move(cells);
        continue;
      }
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open CSV file '" + path + "'");
  return read_csv(in);
}

double csv_number(const std::string& cell, std::string_view field) {
  double x;
  if (!parse_double(cell, x) || !std::isfinite(x)) {
    throw InputError(std::string(field) + ": '" + cell + "' is not a finite number");
  }
  return x;
}

void write_pgm16(const std::string& path, int width, int height, const std::vector<double>& values) {
  if (width < 1 || height < 1 || values.size() != static_cast<std::size_t>(width) * height) {
    throw InputError("PGM dimensions do not match the data");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << "P5\n" << width << ' ' << height << "\n65535\n";
  std::vector<unsigned char> row(2 * static_cast<std::size_t>(width));
  for (int j = height - 1; j >= 0; --j) {
    for (int i = 0; i < width; ++i) {
      const double v = values[static_cast<std::size_t>(j) * width + i];
      const double c = std::isnan(v) ? 0.0 : std::clamp(v, 0.0, 1.0);
      const auto s = static_cast<unsigned>(std::lround(65535.0 * c));
      row[2 * i] = static_cast<unsigned char>(s >> 8);
      row[2 * i + 1] = static_cast<unsigned char>(s & 0xff);
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
}

}  // namespace pluriharm
