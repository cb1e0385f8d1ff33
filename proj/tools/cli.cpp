#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pluriharm/acceptance.hpp"
#include "pluriharm/conformal.hpp"
#include "pluriharm/cross.hpp"
#include "pluriharm/disc_potential.hpp"
#include "pluriharm/errors.hpp"
#include "pluriharm/extension.hpp"
#include "pluriharm/grid_extremal.hpp"
#include "pluriharm/io.hpp"

namespace pluriharm::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Opens `path` for writing ("-" is stdout) and hands the stream to `body`.
void with_output(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  body(out);
}

/// Column position by header name, or `fallback` for header-less files.
std::size_t column(const CsvTable& table, const std::string& name, std::size_t fallback, const std::string& file) {
  if (table.header.empty()) return fallback;
  const auto it = std::find(table.header.begin(), table.header.end(), name);
  if (it == table.header.end()) throw InputError(file + ": missing column '" + name + "'");
  return static_cast<std::size_t>(it - table.header.begin());
}

double cell(const CsvTable& table, std::size_t row, std::size_t col, const std::string& file) {
  const auto& r = table.rows[row];
  if (col >= r.size()) throw InputError(file + ": row " + std::to_string(row + 1) + " is too short");
  return csv_number(r[col], file);
}

/// (z, w) pairs from columns z_re, z_im, w_re, w_im (or z1_*, z2_* with `prefix` "z1"/"z2").
std::vector<std::pair<Complex, Complex>> read_point_pairs(const std::string& path, const std::string& first,
                                                          const std::string& second) {
  const CsvTable table = read_csv_file(path);
  const std::size_t c[4] = {column(table, first + "_re", 0, path), column(table, first + "_im", 1, path),
                            column(table, second + "_re", 2, path), column(table, second + "_im", 3, path)};
  std::vector<std::pair<Complex, Complex>> points;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    points.emplace_back(Complex(cell(table, r, c[0], path), cell(table, r, c[1], path)),
                        Complex(cell(table, r, c[2], path), cell(table, r, c[3], path)));
  }
  if (points.empty()) throw InputError(path + ": no points");
  return points;
}

// ---------------------------------------------------------------------------
// Sampled boundary data for `extend`: values on a tensor grid of first-kind Chebyshev
// angles per arc, interpolated barycentrically (spectrally accurate for f smooth on
// the closed legs).

class ChebyshevSamples {
 public:
  ChebyshevSamples(UnitCircleSet A, UnitCircleSet B, int n) : A_(std::move(A)), B_(std::move(B)), n_(n) {
    if (n < 4) throw InputError("--sample-nodes must be at least 4");
    for (int j = 0; j < n; ++j) {
      const double t = (2.0 * j + 1.0) * kPi / (2.0 * n);
      x_.push_back(std::cos(t));
      w_.push_back((j % 2 ? -1.0 : 1.0) * std::sin(t));
    }
  }

  std::vector<double> angles(const UnitCircleSet& set) const {
    std::vector<double> out;
    for (const Arc& arc : set.arcs()) {
      for (double x : x_) out.push_back(wrap_angle(arc.start + 0.5 * arc.length() * (1.0 + x)));
    }
    return out;
  }

  void emit(std::ostream& out) const {
    CsvWriter csv(out, {"a_arg", "b_arg"});
    for (double a : angles(A_)) {
      for (double b : angles(B_)) csv.row(std::vector<double>{a, b});
    }
  }

  void load(const std::string& path) {
    const CsvTable table = read_csv_file(path);
    const std::size_t ca = column(table, "a_arg", 0, path), cb = column(table, "b_arg", 1, path);
    const std::size_t cr = column(table, "f_re", 2, path), ci = column(table, "f_im", 3, path);
    const auto a = angles(A_), b = angles(B_);
    values_.assign(a.size() * b.size(), Complex(kNaN, kNaN));
    auto locate = [&](const std::vector<double>& nodes, double theta, const char* which) {
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        const double d = std::abs(wrap_angle(theta - nodes[k] + kPi) - kPi);
        if (d <= 1e-9) return k;
      }
      throw InputError(path + ": " + which + " angle " + format_real(theta) +
                       " is not a sample node (use --emit-nodes)");
    };
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      const std::size_t i = locate(a, cell(table, r, ca, path), "a_arg");
      const std::size_t j = locate(b, cell(table, r, cb, path), "b_arg");
      values_[i * b.size() + j] = Complex(cell(table, r, cr, path), cell(table, r, ci, path));
    }
    for (const Complex v : values_) {
      if (!is_finite(v)) throw InputError(path + ": the sample grid is incomplete (use --emit-nodes)");
    }
    b_count_ = b.size();
  }

  Complex operator()(double ta, double tb) const {
    const auto [ia, wa] = weights(A_, ta);
    const auto [ib, wb] = weights(B_, tb);
    Complex sum = 0.0;
    for (int j = 0; j < n_; ++j) {
      if (wa[j] == 0.0) continue;
      const std::size_t row = (ia * n_ + j) * b_count_ + ib * n_;
      Complex inner = 0.0;
      for (int l = 0; l < n_; ++l) inner += wb[l] * values_[row + l];
      sum += wa[j] * inner;
    }
    return sum;
  }

 private:
  std::pair<std::size_t, std::vector<double>> weights(const UnitCircleSet& set, double theta) const {
    const auto& arcs = set.arcs();
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const double off = arcs[i].offset(theta);
      if (off > arcs[i].length() + 1e-12) continue;
      const double x = 2.0 * off / arcs[i].length() - 1.0;
      std::vector<double> c(n_, 0.0);
      double total = 0.0;
      for (int j = 0; j < n_; ++j) {
        if (x == x_[j]) {
          std::fill(c.begin(), c.end(), 0.0);
          c[j] = 1.0;
          return {i, c};
        }
        c[j] = w_[j] / (x - x_[j]);
        total += c[j];
      }
      for (double& v : c) v /= total;
      return {i, c};
    }
    throw DomainError("sampled function queried off its boundary arcs");
  }

  UnitCircleSet A_, B_;
  int n_;
  std::vector<double> x_, w_;
  std::vector<Complex> values_;
  std::size_t b_count_ = 0;
};

// ---------------------------------------------------------------------------
// Subcommands

int omega_disc_cmd(const std::string& set, int grid, const std::string& out) {
  if (grid < 1) throw InputError("--grid must be a positive integer");
  const UnitCircleSet B = arcset_from_json(load_json(set, "--set"), "set");
  with_output(out, [&](std::ostream& os) {
    CsvWriter csv(os, {"re", "im", "omega", "omega_hat"});
    for (int j = -grid; j <= grid; ++j) {
      for (int i = -grid; i <= grid; ++i) {
        const Complex z(static_cast<double>(i) / grid, static_cast<double>(j) / grid);
        if (std::abs(z) >= 1.0 - kDiscGuard) continue;
        csv.row(std::vector<double>{z.real(), z.imag(), omega_disc(z, B), omega_conjugate_disc(z, B)});
      }
    }
  });
  return 0;
}

int omega_grid_cmd(const std::string& domain, const std::string& target, double h, const std::string& out,
                   const std::string& pgm) {
  const Json t = target.empty() ? Json::object() : load_json(target, "--target");
  const GridDomain dom = grid_domain_from_json(load_json(domain, "--domain"), t, h);
  SolveReport report;
  const ScalarField field = solve_extremal(dom, {}, &report);
  const Lattice& lat = dom.lattice();
  with_output(out, [&](std::ostream& os) {
    CsvWriter csv(os, {"x", "y", "omega"});
    for (std::size_t node = 0; node < lat.size(); ++node) {
      if (dom.slot(node) < 0 && !dom.target_cell(node)) continue;
      const Complex z = lat.point(node);
      csv.row(std::vector<double>{z.real(), z.imag(), field.at(node)});
    }
  });
  if (!pgm.empty()) {
    std::vector<double> image(lat.size(), kNaN);
    for (std::size_t node = 0; node < lat.size(); ++node) {
      if (dom.slot(node) >= 0 || dom.target_cell(node)) image[node] = field.at(node);
    }
    write_pgm16(pgm, lat.nx, lat.ny, image);
  }
  std::cerr << "omega-grid: " << dom.interior_count() << " interior nodes, " << report.sweeps << " sweeps\n";
  return 0;
}

int cross_envelope_cmd(const std::string& config, const std::string& out, const std::string& pgm) {
  const Json cfg = load_json(config, "--config");
  require_keys(cfg, {"first", "second", "fixed", "n"}, "config");
  for (const char* key : {"first", "second", "fixed"}) {
    if (!cfg.contains(key)) throw InputError(std::string("missing config.") + key);
  }
  const Cross2 cross(factor_from_json(cfg.at("first"), "config.first"),
                     factor_from_json(cfg.at("second"), "config.second"));
  const Json& fixed = cfg.at("fixed");
  require_keys(fixed, {"factor", "point"}, "config.fixed");
  const std::string which = fixed.value("factor", std::string("first"));
  if (which != "first" && which != "second") throw InputError("config.fixed.factor must be 'first' or 'second'");
  if (!fixed.contains("point")) throw InputError("missing config.fixed.point");
  const Complex point = json_complex(fixed.at("point"), "config.fixed.point");
  int n = 256;
  if (cfg.contains("n")) {
    if (!cfg.at("n").is_number_integer() || cfg.at("n").get<int>() < 1 || cfg.at("n").get<int>() > 8192) {
      throw InputError("config.n must be an integer in [1, 8192]");
    }
    n = cfg.at("n").get<int>();
  }
  const EnvelopeSlice slice = envelope_slice(cross, which == "first" ? Factor::first : Factor::second, point, n);
  with_output(out, [&](std::ostream& os) {
    CsvWriter csv(os, {"x", "y", "omega_total", "inside"});
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const std::size_t k = static_cast<std::size_t>(j) * n + i;
        if (std::isnan(slice.omega_total[k])) continue;
        const Complex p = slice.point(i, j);
        csv.row(std::vector<double>{p.real(), p.imag(), slice.omega_total[k], static_cast<double>(slice.mask[k])});
      }
    }
  });
  if (!pgm.empty()) {
    write_pgm16(pgm, n, n, std::vector<double>(slice.mask.begin(), slice.mask.end()));
  }
  std::cerr << "cross-envelope: " << slice.count() << " cells inside, area " << format_real(slice.area()) << '\n';
  return 0;
}

struct ExtendArgs {
  std::string cross;
  std::string function = "exp(zw)";
  std::string points;
  double tol = 1e-6;
  std::string emit_nodes;
  int sample_nodes = 64;
  std::string out;
};

CarlemanOptions carleman_options(const Json& cfg, double tol) {
  CarlemanOptions o;
  o.tolerance = tol;
  if (!(tol > 0)) throw InputError("--tol must be positive");
  if (cfg.contains("schedule")) {
    const Json& s = cfg.at("schedule");
    if (!s.is_array() || s.empty()) throw InputError("cross.schedule must be a non-empty array of integers");
    o.schedule.clear();
    for (const auto& v : s) {
      if (!v.is_number_integer() || v.get<int>() < 1) throw InputError("cross.schedule entries must be positive integers");
      o.schedule.push_back(v.get<int>());
    }
    if (!std::is_sorted(o.schedule.begin(), o.schedule.end(), std::less_equal<int>())) {
      throw InputError("cross.schedule must be strictly increasing");
    }
  }
  if (cfg.contains("panel_nodes")) {
    o.panel_nodes = static_cast<int>(json_number(cfg, "panel_nodes", "cross"));
    if (o.panel_nodes < 64) throw InputError("cross.panel_nodes must be at least 64");
  }
  if (cfg.contains("max_refinements")) {
    o.max_refinements = static_cast<int>(json_number(cfg, "max_refinements", "cross"));
    if (o.max_refinements < 0 || o.max_refinements > 4) throw InputError("cross.max_refinements must lie in [0, 4]");
  }
  if (cfg.contains("margin")) {
    o.margin = json_number(cfg, "margin", "cross");
    if (!(o.margin > 0 && o.margin < 1)) throw InputError("cross.margin must lie in (0, 1)");
  }
  if (cfg.contains("rim_distance")) {
    o.rim_distance = json_number(cfg, "rim_distance", "cross");
    if (!(o.rim_distance > 0 && o.rim_distance < 0.5)) throw InputError("cross.rim_distance must lie in (0, 0.5)");
  }
  return o;
}

bool looks_like_csv(const std::string& name) {
  return name.size() > 4 && name.compare(name.size() - 4, 4, ".csv") == 0;
}

int extend_cmd(const ExtendArgs& args) {
  const Json cfg = load_json(args.cross, "--cross");
  require_keys(cfg, {"A", "B", "schedule", "panel_nodes", "max_refinements", "margin", "rim_distance"}, "cross");
  if (!cfg.contains("A") || !cfg.contains("B")) throw InputError("cross needs arc sets A and B");
  const UnitCircleSet A = regularize_set(arcset_from_json(cfg.at("A"), "cross.A"));
  const UnitCircleSet B = regularize_set(arcset_from_json(cfg.at("B"), "cross.B"));
  const CarlemanOptions options = carleman_options(cfg, args.tol);

  if (!args.emit_nodes.empty()) {
    const ChebyshevSamples grid(A, B, args.sample_nodes);
    with_output(args.emit_nodes, [&](std::ostream& os) { grid.emit(os); });
    if (args.points.empty()) return 0;
  }
  if (args.points.empty()) throw InputError("--points is required");

  BoundarySampler sampler;
  std::optional<SupBounds> sups;
  if (looks_like_csv(args.function)) {
    auto grid = std::make_shared<ChebyshevSamples>(A, B, args.sample_nodes);
    grid->load(args.function);
    sampler.evaluate = [grid](const WComplex& a, const WComplex& b) {
      const double ta = static_cast<double>(atan2q(a.im, a.re));
      const double tb = static_cast<double>(atan2q(b.im, b.re));
      return WComplex((*grid)(ta, tb));
    };
    sampler.precision = 0x1p-52;  // double-precision samples
    sampler.name = args.function;
  } else {
    const TestFunction f = parse_test_function(args.function);
    sampler = sampler_for(f);
    sups = sup_bounds([f](Complex z, Complex w) { return evaluate(f, z, w); }, A, B, 1024);
  }

  const auto points = read_point_pairs(args.points, "z", "w");
  // Reject bad points before the expensive part.
  for (const auto& [z, w] : points) {
    if (!is_finite(z) || !is_finite(w)) throw InputError("points must be finite");
    const CarlemanEvaluator check(A, B, z, w, options);
    (void)check;
  }

  struct Row {
    ExtensionResult result;
    bool converged = true;
    std::string failure;
  };
  std::vector<Row> rows(points.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < points.size(); ++k) {
    try {
      rows[k].result = carleman_limit(sampler, A, B, points[k].first, points[k].second, options);
    } catch (const SolverError& e) {
      rows[k].converged = false;
      rows[k].failure = e.what();
      rows[k].result.value = Complex(kNaN, kNaN);
      rows[k].result.omega_total = omega_disc(points[k].first, A) + omega_disc(points[k].second, B);
      rows[k].result.cauchy_gap = e.history().empty() ? kNaN : e.history().back();
    }
  }

  bool all_converged = true;
  with_output(args.out, [&](std::ostream& os) {
    CsvWriter csv(os, {"z_re", "z_im", "w_re", "w_im", "f_re", "f_im", "N_used", "gap", "omega_total", "bound"});
    for (std::size_t k = 0; k < points.size(); ++k) {
      const auto& r = rows[k].result;
      const double bound = sups ? two_constant_bound(std::min(1.0, r.omega_total), sups->m, sups->M) : kNaN;
      csv.row(std::vector<double>{points[k].first.real(), points[k].first.imag(), points[k].second.real(),
                                  points[k].second.imag(), r.value.real(), r.value.imag(),
                                  static_cast<double>(r.N_used), r.cauchy_gap, r.omega_total, bound});
      if (!rows[k].converged) {
        all_converged = false;
        std::cerr << "extend: point " << k + 1 << ": " << rows[k].failure << '\n';
      }
    }
  });
  return all_converged ? 0 : 2;
}

int hartogs_cmd(double r, const std::string& points_path, const std::string& function, int nodes,
                const std::string& out) {
  if (!(r > 0 && r < 1)) throw InputError("--r must lie in (0, 1)");
  const TestFunction f = parse_test_function(function);
  const auto points = read_point_pairs(points_path, "z1", "z2");
  // F is known on the Hartogs figure only; any other query is a bug worth reporting.
  auto figure = [f, r](Complex z1, Complex z2) {
    if (!(std::abs(z1) < r || std::abs(z2) > 1 - r)) throw DomainError("F queried outside the Hartogs figure");
    return evaluate(f, z1, z2);
  };
  with_output(out, [&](std::ostream& os) {
    CsvWriter csv(os, {"z1_re", "z1_im", "z2_re", "z2_im", "F_re", "F_im", "exact_re", "exact_im", "error"});
    for (const auto& [z1, z2] : points) {
      const Complex v = hartogs_extend(figure, r, z1, z2, nodes);
      const Complex exact = evaluate(f, z1, z2);
      csv.row(std::vector<double>{z1.real(), z1.imag(), z2.real(), z2.imag(), v.real(), v.imag(), exact.real(),
                                  exact.imag(), std::abs(v - exact)});
    }
  });
  return 0;
}

GridDomain component_from_json(const Json& cfg) {
  require_keys(cfg, {"domain", "target", "level_set", "h"}, "component");
  const double h = json_number(cfg, "h", "component");
  if (cfg.contains("level_set")) {
    if (cfg.contains("domain")) throw InputError("component takes either domain or level_set");
    const Json& ls = cfg.at("level_set");
    require_keys(ls, {"B", "delta", "seed"}, "component.level_set");
    if (!ls.contains("B") || !ls.contains("seed")) throw InputError("component.level_set needs B and seed");
    const double delta = json_number(ls, "delta", "component.level_set");
    if (!(delta >= 0 && delta < 1)) throw InputError("component.level_set.delta must lie in [0, 1)");
    return level_set_component(arcset_from_json(ls.at("B"), "component.level_set.B"), delta,
                               json_complex(ls.at("seed"), "component.level_set.seed"), h);
  }
  if (!cfg.contains("domain")) throw InputError("component needs domain or level_set");
  return grid_domain_from_json(cfg.at("domain"), cfg.contains("target") ? cfg.at("target") : Json::object(), h);
}

int riemann_map_cmd(const std::string& component, const std::string& center, int vertices, const std::string& out) {
  if (vertices < 16) throw InputError("--vertices must be at least 16");
  const GridDomain dom = component_from_json(load_json(component, "--component"));
  ConformalOptions options;
  options.vertices = vertices;
  const DiscreteConformalMap map = riemann_map(dom, parse_complex(center, "--center"), options);
  const auto images = map.boundary_correspondence();
  with_output(out, [&](std::ostream& os) {
    CsvWriter csv(os, {"vertex_re", "vertex_im", "phi_re", "phi_im", "angle"});
    for (std::size_t k = 0; k < images.size(); ++k) {
      const Complex z = map.boundary()[k];
      csv.row(std::vector<double>{z.real(), z.imag(), images[k].real(), images[k].imag(),
                                  wrap_angle(std::arg(images[k]))});
    }
  });
  return 0;
}

int verify_cmd(const std::string& suite) {
  std::vector<int> ids;
  if (suite == "all") {
    ids = all_criteria();
  } else {
    std::stringstream ss(suite);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        const int id = std::stoi(item, &used);
        if (used != item.size() || id < 1 || id > 12) throw std::invalid_argument(item);
        ids.push_back(id);
      } catch (const std::logic_error&) {
        throw InputError("--suite must be 'all' or a comma list of criteria 1-12, got '" + suite + "'");
      }
    }
  }
  bool ok = true;
  for (const auto& r : run_criteria(ids)) {
    std::cout << format_result(r) << std::endl;
    ok = ok && r.pass;
  }
  return ok ? 0 : 2;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"pluriharm: harmonic measure, crosses and their holomorphic envelopes"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  std::string out = "-";

  auto* od = app.add_subcommand("omega-disc", "closed-form omega and its conjugate on the lattice (i/n, j/n) in E");
  std::string od_set;
  int od_grid = 0;
  od->add_option("--set", od_set, "arc set JSON (inline or file)")->required();
  od->add_option("--grid", od_grid, "lattice spacing 1/n")->required();
  od->add_option("--out", out, "CSV output ('-' for stdout)");

  auto* og = app.add_subcommand("omega-grid", "grid solve of omega(., A, D)");
  std::string og_domain, og_target, og_pgm;
  double og_h = 0.0;
  og->set_help_flag("--help", "Print this help message and exit");  // -h would clash with --h
  og->add_option("--domain", og_domain, "domain JSON")->required();
  og->add_option("--target", og_target, "target JSON (default: none)");
  og->add_option("--h", og_h, "lattice spacing")->required();
  og->add_option("--out", out, "CSV output");
  og->add_option("--pgm", og_pgm, "16-bit PGM heatmap of omega");

  auto* ce = app.add_subcommand("cross-envelope", "slice of the envelope {omega_A + omega_B < 1}");
  std::string ce_config, ce_pgm;
  ce->add_option("--config", ce_config, "JSON with first, second, fixed {factor, point}, n")->required();
  ce->add_option("--out", out, "CSV output");
  ce->add_option("--pgm", ce_pgm, "mask PGM (65535 inside)");

  auto* ex = app.add_subcommand("extend", "Gonchar-Carleman extension from a bidisc cross");
  ExtendArgs ea;
  ex->add_option("--cross", ea.cross, "JSON with A, B and optional schedule, panel_nodes, max_refinements, margin")
      ->required();
  ex->add_option("--function", ea.function, "test function name or samples CSV (a_arg,b_arg,f_re,f_im)");
  ex->add_option("--points", ea.points, "CSV with z_re,z_im,w_re,w_im");
  ex->add_option("--tol", ea.tol, "Cauchy-gap tolerance");
  ex->add_option("--emit-nodes", ea.emit_nodes, "write the sample angles a CSV function must cover");
  ex->add_option("--sample-nodes", ea.sample_nodes, "Chebyshev sample angles per arc for CSV functions");
  ex->add_option("--out", out, "CSV output");

  auto* ha = app.add_subcommand("hartogs", "extension from the Hartogs figure H2(r)");
  double ha_r = 0.0;
  std::string ha_points, ha_function = "exp(zw)";
  int ha_nodes = 4096;
  ha->add_option("--r", ha_r, "figure radius in (0, 1)")->required();
  ha->add_option("--points", ha_points, "CSV with z1_re,z1_im,z2_re,z2_im")->required();
  ha->add_option("--function", ha_function, "test function name");
  ha->add_option("--nodes", ha_nodes, "trapezoid nodes on |lambda| = 1 - r/2");
  ha->add_option("--out", out, "CSV output");

  auto* rm = app.add_subcommand("riemann-map", "boundary correspondence of the Riemann map");
  std::string rm_component, rm_center;
  int rm_vertices = 2048;
  rm->add_option("--component", rm_component, "JSON with domain (+target) or level_set {B, delta, seed}, and h")
      ->required();
  rm->add_option("--center", rm_center, "map center 're,im'")->required();
  rm->add_option("--vertices", rm_vertices, "boundary vertices");
  rm->add_option("--out", out, "CSV output");

  auto* ve = app.add_subcommand("verify", "acceptance suite");
  std::string ve_suite = "all";
  ve->add_option("--suite", ve_suite, "'all' or a comma list such as 1,4,12");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (od->parsed()) return omega_disc_cmd(od_set, od_grid, out);
    if (og->parsed()) return omega_grid_cmd(og_domain, og_target, og_h, out, og_pgm);
    if (ce->parsed()) return cross_envelope_cmd(ce_config, out, ce_pgm);
    if (ex->parsed()) {
      ea.out = out;
      return extend_cmd(ea);
    }
    if (ha->parsed()) return hartogs_cmd(ha_r, ha_points, ha_function, ha_nodes, out);
    if (rm->parsed()) return riemann_map_cmd(rm_component, rm_center, rm_vertices, out);
    if (ve->parsed()) return verify_cmd(ve_suite);
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << " (residual " << format_real(e.residual()) << ")\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace pluriharm::cli
