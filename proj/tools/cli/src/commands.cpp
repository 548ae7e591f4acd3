#include "schur_cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "schur/identity_suite.hpp"
#include "schur/metric_families.hpp"
#include "schur/numerics.hpp"
#include "schur/schur_audit.hpp"
#include "schur/second_variation.hpp"
#include "schur_cli/report_io.hpp"
#include "schur_cli/spec_io.hpp"

namespace schur::cli {

namespace {

constexpr std::size_t kDefaultNodes = 4096;

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

double parse_double(const std::string& s, const char* what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw UsageError(std::string(what) + ": \"" + s + "\" is not a number");
  }
  return v;
}

int parse_int(const std::string& s, const char* what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw UsageError(std::string(what) + ": \"" + s + "\" is not an integer");
  }
  return v;
}

// Runs fn(i) for i in [0, count) on up to `jobs` threads; results land at
// their own index, so the gather order never depends on scheduling.
template <class Result>
std::vector<Result> parallel_map(std::size_t count, int jobs, const std::function<Result(std::size_t)>& fn) {
  std::vector<Result> results(count);
  const auto workers = static_cast<std::size_t>(std::clamp(jobs, 1, 256));
  if (workers == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, count); ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            results[i] = fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

std::string error_text(const std::exception& e) {
  if (const auto* p = dynamic_cast<const ProfileError*>(&e)) {
    std::string out;
    for (const auto& issue : p->issues()) out += (out.empty() ? "" : "; ") + issue;
    return out;
  }
  return e.what();
}

std::string describe(Command c) {
  switch (c) {
    case Command::audit: return "audit";
    case Command::identities: return "identities";
    case Command::sweep_harmonic: return "sweep-harmonic";
    case Command::sweep_neck: return "sweep-neck";
    case Command::variation: return "variation";
  }
  return "?";
}

MetricInput require_input(const RunConfig& config) {
  if (!config.input) throw UsageError(describe(config.command) + " needs --input PATH");
  return load_metric_spec(*config.input);
}

// --- audit --------------------------------------------------------------

int run_audit(const RunConfig& config, std::ostream& out) {
  const auto input = require_input(config);
  const std::size_t nodes = resolve_nodes(config, input.nodes);
  std::optional<NeckProfile> neck_profile;
  std::optional<RadialProfile> profile;
  if (const auto* spec = std::get_if<NeckSpec>(&input.family)) {
    neck_profile = neck(*spec, nodes);
    profile = neck_profile->profile;
  } else {
    profile = build_profile(input.family, nodes);
  }
  const auto r = audit(*profile);
  const auto name = family_name(input.family);

  std::vector<std::pair<std::string, double>> numbers = {
      {"volume", r.volume},       {"Rbar", r.Rbar},         {"curvature_scale", r.curvature_scale},
      {"lhs_main", r.lhs_main},   {"rhs_main_raw", r.rhs_main_raw},
      {"sharp_main", r.sharp_main}, {"lhs_cor", r.lhs_cor}, {"sharp_cor", r.sharp_cor},
      {"ratio", r.ratio},         {"ric_min", r.ric_min},   {"tol_hyp", r.tol_hyp},
  };
  if (neck_profile) {
    numbers.emplace_back("neck_rico_integral", neck_rico_integral(*neck_profile));
    numbers.emplace_back("waist", neck_profile->waist);
  }
  const std::vector<std::pair<std::string, bool>> flags = {
      {"ratio_indeterminate", r.ratio_indeterminate},
      {"hypothesis_holds", r.hypothesis_holds},
      {"hypothesis_failed", !r.hypothesis_holds},
      {"main_satisfied", r.main_satisfied},
      {"cor_satisfied", r.cor_satisfied},
      {"theorem_violated", r.theorem_violated()},
  };

  if (config.format == Format::json) {
    JsonWriter w;
    w.begin_object().field("command", "audit").field("family", name).field("n", r.n).field("nodes", profile->intervals());
    for (const auto& [k, v] : numbers) w.field(k, v);
    for (const auto& [k, v] : flags) w.field(k, v);
    w.end_object();
    write_output(config.output, w.str(), out);
  } else {
    std::vector<std::string> header = {"family", "n", "nodes"};
    for (const auto& [k, v] : numbers) header.push_back(k);
    for (const auto& [k, v] : flags) header.push_back(k);
    CsvTable t(header);
    auto& row = t.row();
    row.add(name).add(r.n).add(profile->intervals());
    for (const auto& [k, v] : numbers) row.add(v);
    for (const auto& [k, v] : flags) row.add(v);
    write_output(config.output, t.str(), out);
  }
  return r.theorem_violated() ? 2 : 0;
}

// --- identities -----------------------------------------------------------

int run_identities(const RunConfig& config, std::ostream& out) {
  const auto input = require_input(config);
  const std::size_t nodes = resolve_nodes(config, input.nodes);
  IdentitySuiteOptions options;
  options.tol = config.tolerance;
  const auto suite = identity_suite(input.family, nodes, options);
  if (config.format == Format::json) {
    JsonWriter w;
    w.begin_object()
        .field("command", "identities")
        .field("family", suite.family)
        .field("n", suite.n)
        .field("nodes", suite.intervals)
        .field("tolerance", options.tol);
    w.key("residuals").begin_array();
    for (const auto& e : suite.entries) {
      w.begin_object()
          .field("identity", e.name)
          .field("residual", e.coarse)
          .field("residual_2N", e.fine)
          .field("order", e.order)
          .field("converged", e.converged)
          .field("within_tolerance", e.within_tol)
          .end_object();
    }
    w.end_array().field("passed", suite.passed()).end_object();
    write_output(config.output, w.str(), out);
  } else {
    CsvTable t({"family", "n", "nodes", "identity", "residual", "residual_2N", "order", "converged",
                "within_tolerance"});
    for (const auto& e : suite.entries) {
      t.row().add(suite.family).add(suite.n).add(suite.intervals).add(e.name).add(e.coarse).add(e.fine)
          .add(e.order).add(e.converged).add(e.within_tol);
    }
    write_output(config.output, t.str(), out);
  }
  return suite.passed() ? 0 : 2;
}

// --- sweep-harmonic -------------------------------------------------------

struct HarmonicRow {
  int n = 0;
  int k = 0;
  double lambda = 0.0;
  std::vector<double> Fpp_analytic;  // per constant
  std::vector<double> Fpp_fd;
  std::vector<double> ratios;        // per t
  double ratio_extrapolated = std::nan("");
  double ratio_perturbative = 0.0;
  std::string status = "ok";
};

int run_sweep_harmonic(const RunConfig& config, std::ostream& out) {
  const std::size_t nodes = resolve_nodes(config, std::nullopt);
  const auto dims = config.dims.empty() ? std::vector<int>{3} : config.dims;
  const auto [k_lo, k_hi] = config.k_range.value_or(std::pair{1, 8});
  const auto constants = config.constants.empty() ? std::vector<ConstantSpec>{ConstantSpec{true, 0.0}} : config.constants;
  const auto ts = config.ts.empty() ? std::vector<double>{1e-3, 1e-4} : config.ts;

  std::vector<std::pair<int, int>> points;
  for (int n : dims) {
    for (int k = k_lo; k <= k_hi; ++k) points.emplace_back(n, k);
  }
  const auto rows = parallel_map<HarmonicRow>(points.size(), config.jobs, [&](std::size_t i) {
    const auto [n, k] = points[i];
    HarmonicRow row;
    row.n = n;
    row.k = k;
    row.lambda = static_cast<double>(k) * (k + n - 1);
    row.ratio_perturbative = sharp_constants(n).main.to_double() * (row.lambda - n) / row.lambda;
    row.Fpp_analytic.assign(constants.size(), std::nan(""));
    row.Fpp_fd.assign(constants.size(), std::nan(""));
    row.ratios.assign(ts.size(), std::nan(""));
    std::vector<std::string> problems;
    for (std::size_t c = 0; c < constants.size(); ++c) {
      row.Fpp_analytic[c] = F_second_derivative(n, constants[c].resolve(n), row.lambda);
    }
    try {
      const auto stencil = fd_stencil(n, k, config.fd_step, nodes);
      for (std::size_t c = 0; c < constants.size(); ++c) {
        row.Fpp_fd[c] = fd_cross_check(stencil, constants[c].resolve(n)).Fpp_fd;
      }
    } catch (const std::exception& e) {
      problems.push_back("fd: " + error_text(e));
    }
    for (std::size_t j = 0; j < ts.size(); ++j) {
      try {
        row.ratios[j] = audit(conformal_zonal(n, k, ts[j], nodes).profile).ratio;
      } catch (const std::exception& e) {
        problems.push_back("t=" + format_double(ts[j]) + ": " + error_text(e));
      }
    }
    if (ts.size() >= 2 && std::isfinite(row.ratios[0]) && std::isfinite(row.ratios[1]) && ts[0] != ts[1]) {
      row.ratio_extrapolated = extrapolate_to_zero(ts[0], row.ratios[0], ts[1], row.ratios[1]);
    }
    if (!problems.empty()) {
      row.status.clear();
      for (const auto& p : problems) row.status += (row.status.empty() ? "" : "; ") + p;
    }
    return row;
  });

  if (config.format == Format::json) {
    JsonWriter w;
    w.begin_object().field("command", "sweep-harmonic").field("nodes", nodes).field("fd_step", config.fd_step);
    w.key("t").begin_array();
    for (double t : ts) w.value(t);
    w.end_array();
    w.key("rows").begin_array();
    for (const auto& r : rows) {
      for (std::size_t c = 0; c < constants.size(); ++c) {
        w.begin_object().field("n", r.n).field("k", r.k).field("lambda", r.lambda)
            .field("C", constants[c].resolve(r.n)).field("C_label", constants[c].label())
            .field("Fpp_analytic", r.Fpp_analytic[c]).field("Fpp_fd", r.Fpp_fd[c])
            .field("leading_coeff", leading_coefficient(r.n, constants[c].resolve(r.n)));
        w.key("ratio_t").begin_array();
        for (double x : r.ratios) w.value(x);
        w.end_array();
        w.field("ratio_extrapolated", r.ratio_extrapolated).field("ratio_perturbative", r.ratio_perturbative)
            .field("status", r.status).end_object();
      }
    }
    w.end_array().end_object();
    write_output(config.output, w.str(), out);
  } else {
    std::vector<std::string> header = {"n", "k", "lambda", "C", "Fpp_analytic", "Fpp_fd", "leading_coeff"};
    for (double t : ts) header.push_back("ratio_t=" + format_double(t));
    for (const char* h : {"ratio_extrapolated", "ratio_perturbative", "status"}) header.emplace_back(h);
    CsvTable table(header);
    for (const auto& r : rows) {
      for (std::size_t c = 0; c < constants.size(); ++c) {
        auto& row = table.row();
        row.add(r.n).add(r.k).add(r.lambda).add(constants[c].resolve(r.n)).add(r.Fpp_analytic[c])
            .add(r.Fpp_fd[c]).add(leading_coefficient(r.n, constants[c].resolve(r.n)));
        for (double x : r.ratios) row.add(x);
        row.add(r.ratio_extrapolated).add(r.ratio_perturbative).add(r.status);
      }
    }
    write_output(config.output, table.str(), out);
  }
  return 0;
}

// --- sweep-neck -----------------------------------------------------------

struct NeckRow {
  int n = 0;
  double eps = 0.0;
  double lhs_main = std::nan("");
  double rhs_main_raw = std::nan("");
  double ratio = std::nan("");
  double ric_min = std::nan("");
  double neck_rico = std::nan("");
  double waist = std::nan("");
  std::string status = "ok";
};

int run_sweep_neck(const RunConfig& config, std::ostream& out) {
  const std::size_t nodes = resolve_nodes(config, std::nullopt);
  const auto dims = config.dims.empty() ? std::vector<int>{4, 5} : config.dims;
  const auto eps_list = config.eps.empty() ? std::vector<double>{0.2, 0.1, 0.05} : config.eps;
  std::vector<std::pair<int, double>> points;
  for (int n : dims) {
    for (double e : eps_list) points.emplace_back(n, e);
  }
  const auto rows = parallel_map<NeckRow>(points.size(), config.jobs, [&](std::size_t i) {
    NeckRow row;
    row.n = points[i].first;
    row.eps = points[i].second;
    try {
      NeckSpec spec;
      spec.n = row.n;
      spec.eps = row.eps;
      const auto p = neck(spec, nodes);
      const auto r = audit(p.profile);
      row.lhs_main = r.lhs_main;
      row.rhs_main_raw = r.rhs_main_raw;
      row.ratio = r.ratio;
      row.ric_min = r.ric_min;
      row.neck_rico = neck_rico_integral(p);
      row.waist = p.waist;
    } catch (const std::exception& e) {
      row.status = error_text(e);
    }
    return row;
  });

  std::vector<double> slopes;
  for (int n : dims) {
    std::vector<double> x, y;
    for (const auto& r : rows) {
      if (r.n == n) {
        x.push_back(r.eps);
        y.push_back(r.neck_rico);
      }
    }
    slopes.push_back(numerics::loglog_slope(x, y));
  }
  auto slope_of = [&](int n) {
    return slopes[static_cast<std::size_t>(std::find(dims.begin(), dims.end(), n) - dims.begin())];
  };

  if (config.format == Format::json) {
    JsonWriter w;
    w.begin_object().field("command", "sweep-neck").field("nodes", nodes);
    w.key("rows").begin_array();
    for (const auto& r : rows) {
      w.begin_object().field("n", r.n).field("eps", r.eps).field("lhs_main", r.lhs_main)
          .field("rhs_main_raw", r.rhs_main_raw).field("ratio", r.ratio).field("ric_min", r.ric_min)
          .field("neck_rico_integral", r.neck_rico).field("waist", r.waist).field("status", r.status)
          .end_object();
    }
    w.end_array();
    w.key("slopes").begin_array();
    for (std::size_t j = 0; j < dims.size(); ++j) {
      w.begin_object().field("n", dims[j]).field("neck_rico_slope", slopes[j]).end_object();
    }
    w.end_array().end_object();
    write_output(config.output, w.str(), out);
  } else {
    CsvTable t({"n", "eps", "lhs_main", "rhs_main_raw", "ratio", "ric_min", "neck_rico_integral", "waist",
                "neck_rico_slope", "status"});
    for (const auto& r : rows) {
      t.row().add(r.n).add(r.eps).add(r.lhs_main).add(r.rhs_main_raw).add(r.ratio).add(r.ric_min)
          .add(r.neck_rico).add(r.waist).add(slope_of(r.n)).add(r.status);
    }
    write_output(config.output, t.str(), out);
  }
  return 0;
}

// --- variation --------------------------------------------------------------

struct VariationPoint {
  int n = 0;
  int k = 0;
};

int run_variation(const RunConfig& config, std::ostream& out) {
  const std::size_t nodes = resolve_nodes(config, std::nullopt);
  const auto dims = config.dims.empty() ? std::vector<int>{3} : config.dims;
  const auto [k_lo, k_hi] = config.k_range.value_or(std::pair{4, 4});
  const auto constants = config.constants.empty() ? std::vector<ConstantSpec>{ConstantSpec{true, 0.0}} : config.constants;
  std::vector<VariationPoint> points;
  for (int n : dims) {
    for (int k = k_lo; k <= k_hi; ++k) points.push_back({n, k});
  }
  const auto stencils = parallel_map<FdStencil>(points.size(), config.jobs, [&](std::size_t i) {
    return fd_stencil(points[i].n, points[i].k, config.fd_step, nodes);
  });

  std::vector<VariationReport> reports;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (const auto& c : constants) reports.push_back(fd_cross_check(stencils[i], c.resolve(points[i].n)));
  }
  const bool all_agree = std::all_of(reports.begin(), reports.end(), [](const VariationReport& r) { return r.fd_agrees(); });

  if (config.format == Format::json) {
    JsonWriter w;
    w.begin_object().field("command", "variation").field("nodes", nodes).field("fd_step", config.fd_step);
    w.key("reports").begin_array();
    for (const auto& r : reports) {
      w.begin_object().field("n", r.n).field("C", r.C).field("k", r.k).field("lambda", r.lambda)
          .field("F1pp", r.F1pp).field("F2pp", r.F2pp).field("F3pp", r.F3pp)
          .field("F1pp_fd", r.F1pp_fd).field("F2pp_fd", r.F2pp_fd).field("F3pp_fd", r.F3pp_fd)
          .field("Vpp_fd", r.Vpp_fd).field("intRpp_fd", r.intRpp_fd)
          .field("Fpp_analytic", r.Fpp_analytic).field("Fpp_assembled", r.Fpp_assembled)
          .field("Fpp_fd", r.Fpp_fd).field("Fpp_fd_half", r.Fpp_fd_half).field("Fpp_richardson", r.Fpp_richardson)
          .field("Fprime_fd", r.Fprime_fd).field("Fprime_richardson", r.Fprime_richardson).field("leading_coeff", r.leading_coeff)
          .field("ratio_perturbative", r.ratio_perturbative).field("fd_agrees", r.fd_agrees())
          .field("step_halving_consistent", r.step_halving_consistent()).end_object();
    }
    w.end_array();
    w.key("violating_frequency").begin_array();
    for (int n : dims) {
      for (const auto& c : constants) {
        const auto search = find_violating_frequency(n, c.resolve(n));
        w.begin_object().field("n", n).field("C", c.resolve(n)).field("C_label", c.label());
        w.key("k");
        if (search.k) {
          w.value(*search.k);
        } else {
          w.null();
        }
        w.field("k_max", search.k_max).field("below_sharp", search.below_sharp).end_object();
      }
    }
    w.end_array().field("passed", all_agree).end_object();
    write_output(config.output, w.str(), out);
  } else {
    CsvTable t({"n", "C", "k", "lambda", "Fpp_analytic", "Fpp_fd", "ratio_perturbative", "F1pp", "F2pp", "F3pp",
                "Fpp_assembled", "Fprime_fd", "Fpp_richardson", "leading_coeff", "fd_agrees"});
    for (const auto& r : reports) {
      t.row().add(r.n).add(r.C).add(r.k).add(r.lambda).add(r.Fpp_analytic).add(r.Fpp_fd).add(r.ratio_perturbative)
          .add(r.F1pp).add(r.F2pp).add(r.F3pp).add(r.Fpp_assembled).add(r.Fprime_fd).add(r.Fpp_richardson)
          .add(r.leading_coeff).add(r.fd_agrees());
    }
    write_output(config.output, t.str(), out);
  }
  return all_agree ? 0 : 2;
}

}  // namespace

double ConstantSpec::resolve(int n) const {
  return relative_to_sharp ? sharp_constants(n).corollary.to_double() + value : value;
}

std::string ConstantSpec::label() const {
  if (!relative_to_sharp) return format_double(value);
  if (value == 0.0) return "sharp";
  return std::string("sharp") + (value < 0 ? "-" : "+") + format_double(std::abs(value));
}

std::pair<int, int> parse_k_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int k = parse_int(trim(text), "--k-range");
    if (k < 1) throw UsageError("--k-range: k must be >= 1");
    return {k, k};
  }
  const int a = parse_int(trim(text.substr(0, dots)), "--k-range");
  const int b = parse_int(trim(text.substr(dots + 2)), "--k-range");
  if (a < 1 || b < a) throw UsageError("--k-range: need 1 <= A <= B in A..B");
  return {a, b};
}

std::vector<double> parse_number_list(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_double(item, what));
  if (out.empty()) throw UsageError(std::string(what) + ": empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  for (const auto& item : split_list(text)) out.push_back(parse_int(item, what));
  if (out.empty()) throw UsageError(std::string(what) + ": empty list");
  return out;
}

ConstantSpec parse_constant(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.rfind("sharp", 0) == 0) {
    const std::string rest = text.substr(5);
    if (rest.empty()) return {true, 0.0};
    if (rest[0] != '-' && rest[0] != '+') throw UsageError("--constant: expected sharp, sharp-x or sharp+x");
    const double offset = parse_double(rest.substr(1), "--constant");
    return {true, rest[0] == '-' ? -offset : offset};
  }
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const double p = parse_double(text.substr(0, slash), "--constant");
    const double q = parse_double(text.substr(slash + 1), "--constant");
    if (q == 0.0) throw UsageError("--constant: zero denominator");
    return {false, p / q};
  }
  return {false, parse_double(text, "--constant")};
}

std::size_t resolve_nodes(const RunConfig& config, std::optional<std::size_t> from_spec) {
  if (config.nodes) return *config.nodes;
  if (from_spec) return *from_spec;
  if (const char* env = std::getenv("SCHUR_GAP_NODES"); env && *env) {
    const int v = parse_int(trim(env), "SCHUR_GAP_NODES");
    if (v <= 0 || !valid_node_count(static_cast<std::size_t>(v))) {
      throw UsageError("SCHUR_GAP_NODES must be a power of two between 64 and 65536");
    }
    return static_cast<std::size_t>(v);
  }
  return kDefaultNodes;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    for (int n : config.dims) {
      if (n < 3) throw UsageError("--n: dimensions must be >= 3");
    }
    switch (config.command) {
      case Command::audit: return run_audit(config, out);
      case Command::identities: return run_identities(config, out);
      case Command::sweep_harmonic: return run_sweep_harmonic(config, out);
      case Command::sweep_neck: return run_sweep_neck(config, out);
      case Command::variation: return run_variation(config, out);
    }
  } catch (const SpecError& e) {
    err << "error: invalid spec\n";
    for (const auto& issue : e.issues()) err << "  - " << issue << '\n';
  } catch (const ProfileError& e) {
    err << "error: invalid profile\n";
    for (const auto& issue : e.issues()) err << "  - " << issue << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return 1;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical audit of the almost-Schur inequality on rotationally symmetric spheres"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string input, output, format = "json", k_range, eps, constants, ts, dims;
  std::size_t nodes = 0;
  double fd_step = 1e-3;
  double tolerance = 1e-6;
  int jobs = 1;
  app.add_option("--input", input, "Metric spec file (JSON)");
  app.add_option("--output", output, "Report path; stdout when omitted");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--nodes", nodes, "Grid intervals, a power of two in [64, 65536]");
  app.add_option("--n", dims, "Dimension list, e.g. 4,5");
  app.add_option("--k-range", k_range, "Harmonic frequencies A..B");
  app.add_option("--eps", eps, "Neck sizes, e.g. 0.2,0.1,0.05");
  app.add_option("--constant", constants, "Constants C: numbers, p/q, sharp or sharp-x");
  app.add_option("--t", ts, "Conformal amplitudes, e.g. 1e-3,1e-4");
  app.add_option("--fd-step", fd_step, "Finite-difference step h");
  app.add_option("--tol", tolerance, "Identity residual tolerance");
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));

  const std::pair<const char*, Command> commands[] = {
      {"audit", Command::audit},
      {"identities", Command::identities},
      {"sweep-harmonic", Command::sweep_harmonic},
      {"sweep-neck", Command::sweep_neck},
      {"variation", Command::variation},
  };
  const char* help[] = {
      "Audit both inequalities on one metric (exit 2 if violated under Ric >= 0)",
      "Integral identity residuals at N and 2N with convergence order",
      "Second variation and audit ratios over zonal frequencies",
      "Neck family sweep over eps",
      "Finite-difference cross-check of the second variation",
  };
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) subs.push_back(app.add_subcommand(commands[i].first, help[i]));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return 1;
  }

  RunConfig config;
  try {
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (subs[i]->parsed()) config.command = commands[i].second;
    }
    if (!input.empty()) config.input = input;
    if (!output.empty()) config.output = output;
    config.format = format == "csv" ? Format::csv : Format::json;
    if (app.count("--nodes")) {
      if (!valid_node_count(nodes)) throw UsageError("--nodes must be a power of two between 64 and 65536");
      config.nodes = nodes;
    }
    if (!dims.empty()) config.dims = parse_int_list(dims, "--n");
    if (!k_range.empty()) config.k_range = parse_k_range(k_range);
    if (!eps.empty()) config.eps = parse_number_list(eps, "--eps");
    if (!ts.empty()) config.ts = parse_number_list(ts, "--t");
    for (const auto& c : split_list(constants)) {
      if (!c.empty()) config.constants.push_back(parse_constant(c));
    }
    if (!(fd_step > 0.0)) throw UsageError("--fd-step must be positive");
    if (!(tolerance > 0.0)) throw UsageError("--tol must be positive");
    config.fd_step = fd_step;
    config.tolerance = tolerance;
    config.jobs = jobs;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return run(config, out, err);
}

}  // namespace schur::cli
