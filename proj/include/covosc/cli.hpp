#pragma once

// Command-line front end. Every subcommand writes one CSV or JSON document;
// identical arguments give byte-identical output.
//
// Exit codes: 0 success, 2 invalid arguments, 3 a tolerance check failed.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "covosc/density.hpp"
#include "covosc/duality.hpp"
#include "covosc/kinematics.hpp"
#include "covosc/numerics.hpp"
#include "covosc/parton.hpp"
#include "covosc/serialize.hpp"
#include "covosc/wavefunction.hpp"

namespace covosc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitTolerance = 3;

/// Tolerance on the normalization of every emitted distribution.
inline constexpr double kDistributionTolerance = 1e-6;
/// Tolerance on pointwise agreement of quadrature and closed forms.
inline constexpr double kPointwiseTolerance = 1e-8;
/// Tolerance for matching the numeric entropy to a closed form.
inline constexpr double kEntropyMatchTolerance = 1e-4;

inline constexpr const char* kGridEnv = "COVOSC_GRID_DEFAULT";

enum class Format { csv, json };

struct EtaRange {
  double start = 0.0;
  double stop = 0.0;
  std::size_t steps = 1;

  /// steps intervals, steps + 1 values, both ends included.
  std::vector<double> values() const {
    std::vector<double> out;
    for (std::size_t k = 0; k <= steps; ++k) {
      out.push_back(k == steps ? stop
                               : start + (stop - start) * static_cast<double>(k) /
                                             static_cast<double>(steps));
    }
    return out;
  }
};

struct RunConfig {
  std::string subcommand;
  double eta = 0.0;
  std::optional<EtaRange> eta_range;
  std::optional<GridSpec> grid;  ///< from --grid or the environment
  std::size_t nmax = 20;
  std::optional<double> energy;
  double mass = kProtonMassGeV;
  std::optional<Format> format;
  std::string output;
};

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  std::istringstream in(text);
  while (std::getline(in, current, sep)) parts.push_back(current);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

inline double parse_double(const std::string& s, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) {
    throw std::invalid_argument(std::string("invalid number for ") + what + ": '" + s + "'");
  }
  return v;
}

inline std::size_t parse_count(const std::string& s, const char* what) {
  std::size_t used = 0;
  long long v = -1;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || v < 0) {
    throw std::invalid_argument(std::string("invalid count for ") + what + ": '" + s + "'");
  }
  return static_cast<std::size_t>(v);
}

/// "min:max:points"
inline GridSpec parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw std::invalid_argument("grid must be min:max:points, got '" + text + "'");
  return GridSpec(parse_double(parts[0], "grid min"), parse_double(parts[1], "grid max"),
                  parse_count(parts[2], "grid points"));
}

/// "start:stop:steps", steps >= 1
inline EtaRange parse_eta_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) {
    throw std::invalid_argument("eta-range must be start:stop:steps, got '" + text + "'");
  }
  EtaRange r{parse_double(parts[0], "eta-range start"), parse_double(parts[1], "eta-range stop"),
             parse_count(parts[2], "eta-range steps")};
  if (r.steps < 1) throw std::invalid_argument("eta-range steps must be >= 1");
  return r;
}

/// %.17g: enough digits to round-trip every double.
inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Accumulates one output document plus the outcome of its checks.
class Emitter {
 public:
  explicit Emitter(Format format) : format_(format) {}

  Format format() const { return format_; }

  void meta(const std::string& key, const Json& value) { meta_[key] = value; }

  /// Records a named check; a failing one makes the run exit with code 3.
  void check(const std::string& name, double value, double tolerance, bool ok) {
    checks_.push_back(Json{{"name", name}, {"value", value}, {"tolerance", tolerance}, {"passed", ok}});
    if (!ok) failures_.push_back(name + " = " + fmt(value) + " (tolerance " + fmt(tolerance) + ")");
  }

  void columns(std::vector<std::string> names) { columns_ = std::move(names); }

  void row(const std::vector<double>& values) { rows_.push_back(values); }

  void body(const std::string& key, Json value) { body_[key] = std::move(value); }

  const std::vector<std::string>& failures() const { return failures_; }

  std::string render() const {
    std::ostringstream out;
    if (format_ == Format::csv) {
      for (const auto& [key, value] : meta_.items()) out << "# " << key << '=' << scalar(value) << '\n';
      for (const auto& c : checks_) {
        out << "# check " << c["name"].get<std::string>() << '=' << fmt(c["value"].get<double>())
            << " tolerance=" << fmt(c["tolerance"].get<double>())
            << " passed=" << (c["passed"].get<bool>() ? "true" : "false") << '\n';
      }
      for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
      out << '\n';
      for (const auto& r : rows_) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << fmt(r[i]);
        out << '\n';
      }
      return out.str();
    }
    Json doc;
    doc["metadata"] = meta_;
    doc["checks"] = checks_;
    for (const auto& [key, value] : body_.items()) doc[key] = value;
    if (!columns_.empty()) {
      Json table = Json::object();
      for (std::size_t c = 0; c < columns_.size(); ++c) {
        Json col = Json::array();
        for (const auto& r : rows_) col.push_back(r[c]);
        table[columns_[c]] = std::move(col);
      }
      doc["data"] = std::move(table);
    }
    return doc.dump(2) + "\n";
  }

 private:
  static std::string scalar(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return fmt(v.get<double>());
    return v.dump();
  }

  Format format_;
  Json meta_ = Json::object();
  Json checks_ = Json::array();
  Json body_ = Json::object();
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
  std::vector<std::string> failures_;
};

/// Default sampling grid for 2D wave-function output: the configured grid,
/// else [-12, 12] with 401 points, widened to 6 marginal standard deviations
/// and refined to resolve the narrow light-cone width when eta demands it.
inline GridSpec wave_grid(const RunConfig& cfg) {
  if (cfg.grid) return *cfg.grid;
  const double a = std::abs(cfg.eta);
  const double half = std::max(12.0, 6.0 * std::sqrt(marginal_variance(Rapidity(a))));
  const double step = std::min(0.06, 0.5 * std::exp(-a));
  return GridSpec::symmetric(half, static_cast<std::size_t>(std::ceil(2.0 * half / step)) + 1);
}

inline void common_meta(Emitter& e, const RunConfig& cfg) {
  e.meta("subcommand", cfg.subcommand);
  e.meta("units", "natural (c = hbar = oscillator scale = 1); entropy in nats");
}

inline void emit_wave_table(Emitter& e, const RunConfig& cfg, bool momentum) {
  const Rapidity eta(cfg.eta);
  const GridSpec g = wave_grid(cfg);
  const BoostedGroundState state{eta};
  common_meta(e, cfg);
  e.meta("eta", cfg.eta);
  e.meta("grid", to_json(g));
  e.meta("row_order", momentum ? "q_0-major" : "t-major");
  e.columns(momentum ? std::vector<std::string>{"q_z", "q_0", "phi", "density"}
                     : std::vector<std::string>{"z", "t", "psi", "density"});
  std::vector<double> density(g.points() * g.points());
  for (std::size_t j = 0; j < g.points(); ++j) {
    for (std::size_t i = 0; i < g.points(); ++i) {
      const double x = g.at(i);
      const double y = g.at(j);
      const double amp = momentum ? phi_momentum(state, x, y) : state(x, y);
      density[j * g.points() + i] = amp * amp;
      e.row({x, y, amp, amp * amp});
    }
  }
  const double norm = integrate_2d({g, density});
  e.check("normalization_error", std::abs(norm - 1.0), kDistributionTolerance,
          std::abs(norm - 1.0) <= kDistributionTolerance);
}

inline void cmd_wavefunction(Emitter& e, const RunConfig& cfg) { emit_wave_table(e, cfg, false); }

inline void cmd_momentum(Emitter& e, const RunConfig& cfg) {
  emit_wave_table(e, cfg, true);
  if (const auto conv = passing_convention()) {
    e.meta("fourier_convention", Json::array({conv->first, conv->second}));
  } else {
    e.meta("fourier_convention", nullptr);
  }
}

inline GridSpec kernel_grid(const RunConfig& cfg, Rapidity eta) {
  return cfg.grid.value_or(default_kernel_grid(eta));
}

inline void cmd_marginal(Emitter& e, const RunConfig& cfg) {
  const Rapidity eta(cfg.eta);
  const GridSpec g = kernel_grid(cfg, eta);
  const auto rho = marginal_numeric(eta, g);
  common_meta(e, cfg);
  e.meta("eta", cfg.eta);
  e.meta("grid", to_json(g));
  e.columns({"z", "rho_numeric", "rho_closed_form", "abs_diff"});
  double worst = 0.0;
  for (std::size_t i = 0; i < g.points(); ++i) {
    const double closed = marginal_closed_form(eta, g.at(i));
    const double diff = std::abs(rho.values[i] - closed);
    worst = std::max(worst, diff);
    e.row({g.at(i), rho.values[i], closed, diff});
  }
  e.check("max_pointwise_error", worst, kPointwiseTolerance, worst <= kPointwiseTolerance);
  const double norm = rho.integral();
  e.check("normalization_error", std::abs(norm - 1.0), kDistributionTolerance,
          std::abs(norm - 1.0) <= kDistributionTolerance);
}

inline void cmd_kernel(Emitter& e, const RunConfig& cfg) {
  const Rapidity eta(cfg.eta);
  const GridSpec g = kernel_grid(cfg, eta);
  const auto kernel = reduced_density_kernel(eta, g);
  common_meta(e, cfg);
  e.meta("eta", cfg.eta);
  e.meta("grid", to_json(g));
  e.meta("weight", kernel.weight);
  e.meta("purity", kernel.purity());
  e.meta("row_order", "z_prime-major");
  e.columns({"z", "z_prime", "kernel"});
  for (std::size_t j = 0; j < g.points(); ++j)
    for (std::size_t i = 0; i < g.points(); ++i) e.row({g.at(i), g.at(j), kernel.matrix(i, j)});
  const double trace = kernel.trace();
  e.check("trace_error", std::abs(trace - 1.0), kDistributionTolerance,
          std::abs(trace - 1.0) <= kDistributionTolerance);
  e.check("t_refinement_change", kernel.refinement_change, kPointwiseTolerance,
          kernel.refinement_change <= kPointwiseTolerance);
}

inline void cmd_entropy_curve(Emitter& e, const RunConfig& cfg) {
  const EtaRange range = cfg.eta_range.value_or(EtaRange{cfg.eta, cfg.eta, 1});
  const auto etas = cfg.eta_range ? range.values() : std::vector<double>{cfg.eta};
  common_meta(e, cfg);
  e.meta("match_tolerance", kEntropyMatchTolerance);
  if (cfg.grid) e.meta("grid", to_json(*cfg.grid));
  else e.meta("grid", "per-eta default: 401 points on [-L, L], L = max(12, 6 sqrt(cosh(2 eta)/2))");
  e.columns({"eta", "s_numeric", "s_paper", "s_schmidt", "s_differential"});

  std::optional<EntropyForm> consistent;
  bool ok = true;
  double worst_trace = 0.0;
  for (double value : etas) {
    const Rapidity eta(value);
    const auto report = entropy_report(eta, kernel_grid(cfg, eta), kEntropyMatchTolerance);
    e.row({value, report.s_numeric, report.s_paper_closed_form, report.s_schmidt_closed_form,
           report.s_differential_marginal});
    worst_trace = std::max(worst_trace, std::abs(report.trace - 1.0));
    if (report.matched == EntropyForm::none) ok = false;
    // eta = 0 matches both forms and carries no information
    if (report.matched == EntropyForm::paper || report.matched == EntropyForm::schmidt) {
      if (consistent && *consistent != report.matched) ok = false;
      consistent = report.matched;
    }
  }
  e.meta("matched_form", consistent ? to_string(*consistent) : (ok ? "both" : "none"));
  e.check("entropy_match", ok ? 1.0 : 0.0, kEntropyMatchTolerance, ok);
  e.check("max_trace_error", worst_trace, kDistributionTolerance, worst_trace <= kDistributionTolerance);
}

inline void cmd_schmidt(Emitter& e, const RunConfig& cfg) {
  const Rapidity eta(cfg.eta);
  const auto s = schmidt_coefficients(eta, cfg.nmax, cfg.grid);
  common_meta(e, cfg);
  e.meta("eta", cfg.eta);
  e.meta("nmax", cfg.nmax);
  e.meta("grid", to_json(s.grid));
  e.meta("sum_of_squares", s.sum_of_squares());
  e.meta("entropy", s.entropy());
  const auto ratio = s.geometric_ratio();
  e.meta("geometric_ratio", ratio ? Json(*ratio) : Json(nullptr));
  e.columns({"n", "coefficient", "squared"});
  for (std::size_t n = 0; n < s.coefficients.size(); ++n) {
    e.row({static_cast<double>(n), s.coefficients[n], s.coefficients[n] * s.coefficients[n]});
  }
  e.check("max_cross_term", s.max_cross_term, kPointwiseTolerance, s.max_cross_term <= kPointwiseTolerance);
  e.check("sum_of_squares_excess", std::max(0.0, s.sum_of_squares() - 1.0), kPointwiseTolerance,
          s.sum_of_squares() <= 1.0 + kPointwiseTolerance);
}

inline void cmd_parton(Emitter& e, const RunConfig& cfg) {
  const auto report = cfg.energy ? beam_report(*cfg.energy, cfg.mass) : decoherence_report(Rapidity(cfg.eta));
  const auto geometry = squeeze_geometry(report.eta);
  common_meta(e, cfg);
  const double identity = std::abs(report.ratio - report.interaction_time_scale / report.period_dilation);
  e.check("ratio_identity", identity, 1e-15, identity <= 1e-15);
  if (e.format() == Format::json) {
    e.body("decoherence", to_json(report));
    e.body("squeeze_geometry", to_json(geometry));
    return;
  }
  e.columns({"eta", "period_dilation", "interaction_time_scale", "ratio", "major_axis_scale",
             "minor_axis_scale"});
  if (report.beam_energy) e.meta("beam_energy", *report.beam_energy);
  if (report.mass) e.meta("mass", *report.mass);
  e.row({report.eta.value(), report.period_dilation, report.interaction_time_scale, report.ratio,
         geometry.major_axis_scale, geometry.minor_axis_scale});
}

inline void cmd_figure_data(Emitter& e, const RunConfig& cfg) {
  if (e.format() != Format::json) throw std::invalid_argument("figure-data supports --format json only");
  const auto fig = figure_data(Rapidity(cfg.eta));
  common_meta(e, cfg);
  e.body("figure", to_json(fig));
  e.check("contour_density_deviation", fig.max_contour_deviation, 1e-12, fig.max_contour_deviation <= 1e-12);
}

/// Runs one invocation; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Covariant harmonic oscillator: wave functions, density matrices, entropy"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string grid_text;
  std::string range_text;
  std::string format_text;
  std::optional<double> energy;
  std::optional<double> mass;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"wavefunction", "psi_eta(z, t) and |psi|^2 on a 2D grid (CSV: z,t,psi,density)"},
      {"momentum", "phi_eta(q_z, q_0) and |phi|^2 on a 2D grid"},
      {"marginal", "t-marginal by quadrature next to its closed form"},
      {"kernel", "reduced density kernel K(z, z')"},
      {"entropy-curve", "entropy candidates over an eta range"},
      {"schmidt", "Schmidt coefficients in the Hermite product basis"},
      {"parton", "decoherence time scales and squeeze geometry (JSON)"},
      {"figure-data", "ellipse axes and 1-sigma contours in both planes (JSON)"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--eta", cfg.eta, "rapidity");
    sub->add_option("--eta-range", range_text, "start:stop:steps");
    sub->add_option("--grid", grid_text, "min:max:points");
    sub->add_option("--nmax", cfg.nmax, "highest Hermite index");
    sub->add_option("--energy", energy, "beam energy in GeV");
    sub->add_option("--mass", mass, "particle mass in GeV");
    sub->add_option("--format", format_text, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", cfg.output, "output path (default: standard output)");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::string rendered;
  try {
    cfg.subcommand = app.get_subcommands().front()->get_name();
    if (!grid_text.empty()) {
      cfg.grid = parse_grid(grid_text);
    } else if (const char* env = std::getenv(kGridEnv); env != nullptr && *env != '\0') {
      cfg.grid = parse_grid(env);
    }
    if (!range_text.empty()) cfg.eta_range = parse_eta_range(range_text);
    if (!std::isfinite(cfg.eta)) throw std::invalid_argument("--eta must be finite");
    cfg.energy = energy;
    if (mass) cfg.mass = *mass;
    if (mass && !energy) throw std::invalid_argument("--mass requires --energy");
    if (!format_text.empty()) cfg.format = format_text == "json" ? Format::json : Format::csv;

    const bool json_default = cfg.subcommand == "parton" || cfg.subcommand == "figure-data";
    Emitter emitter(cfg.format.value_or(json_default ? Format::json : Format::csv));

    static const std::vector<std::pair<std::string, std::function<void(Emitter&, const RunConfig&)>>>
        handlers = {
            {"wavefunction", cmd_wavefunction}, {"momentum", cmd_momentum},
            {"marginal", cmd_marginal},         {"kernel", cmd_kernel},
            {"entropy-curve", cmd_entropy_curve}, {"schmidt", cmd_schmidt},
            {"parton", cmd_parton},             {"figure-data", cmd_figure_data},
        };
    for (const auto& [name, handler] : handlers) {
      if (name == cfg.subcommand) handler(emitter, cfg);
    }
    rendered = emitter.render();

    if (cfg.output.empty()) {
      out << rendered;
    } else {
      std::ofstream file(cfg.output, std::ios::binary | std::ios::trunc);
      if (!file) throw std::invalid_argument("cannot open output file '" + cfg.output + "'");
      file << rendered;
    }
    if (!emitter.failures().empty()) {
      for (const auto& f : emitter.failures()) err << "tolerance check failed: " << f << '\n';
      return kExitTolerance;
    }
  } catch (const ToleranceError& e) {
    err << "tolerance failure: " << e.what() << '\n';
    return kExitTolerance;
  } catch (const ConvergenceError& e) {
    err << "tolerance failure: " << e.what() << '\n';
    return kExitTolerance;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace covosc::cli
