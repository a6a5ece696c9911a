#include "toric/job.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "toric/algebra.hpp"
#include "toric/parallel.hpp"
#include "toric/series.hpp"

namespace toric {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

[[noreturn]] void config_fail(const std::string& what) { fail(Errc::ConfigError, what); }

const json& need(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) config_fail(std::string("missing field '") + key + "'");
  return *it;
}

std::vector<AxisRange> parse_axes(const json& j, const char* ctx) {
  std::vector<AxisRange> axes;
  for (const auto& a : j) {
    AxisRange r;
    r.min = need(a, "min").get<double>();
    r.max = need(a, "max").get<double>();
    r.step = a.value("step", 1.0);
    if (!(r.step > 0.0)) config_fail(std::string(ctx) + ": step must be positive");
    if (r.max < r.min) config_fail(std::string(ctx) + ": max below min");
    axes.push_back(r);
  }
  return axes;
}

void check_point_shapes(const std::vector<std::vector<double>>& pts, std::size_t len,
                        const char* ctx) {
  for (const auto& p : pts)
    if (p.size() != len)
      config_fail(std::string(ctx) + ": point length " + std::to_string(p.size()) +
                  ", expected " + std::to_string(len));
}

std::ofstream open_out(const RunOptions& opt, const std::string& name) {
  std::filesystem::create_directories(opt.out_dir);
  const auto path = std::filesystem::path(opt.out_dir) / name;
  std::ofstream out(path);
  if (!out) fail(Errc::ConfigError, "cannot open output file " + path.string());
  return out;
}

std::vector<std::vector<double>> expand_grid(const std::vector<AxisRange>& axes) {
  std::vector<std::vector<double>> axis_values;
  for (const auto& a : axes) {
    std::vector<double> vals;
    for (double v = a.min; v <= a.max + 0.5 * a.step; v += a.step) vals.push_back(v);
    axis_values.push_back(std::move(vals));
  }
  std::vector<std::vector<double>> points;
  std::vector<std::size_t> idx(axes.size(), 0);
  for (;;) {
    std::vector<double> p(axes.size());
    for (std::size_t a = 0; a < axes.size(); ++a) p[a] = axis_values[a][idx[a]];
    points.push_back(std::move(p));
    std::size_t a = axes.size();
    for (;;) {
      if (a == 0) return points;
      --a;
      if (++idx[a] < axis_values[a].size()) break;
      idx[a] = 0;
    }
  }
}

int run_kernel(const ToricData& data, const RunOptions& opt, std::ostream& log) {
  json out = {{"n", data.charge.n},
              {"N", data.charge.N},
              {"kernel", data.kernel.rows},
              {"jacobian", data.jacobian},
              {"integrable", data.integrable}};
  open_out(opt, "kernel.json") << out.dump(2) << "\n";
  log << "kernel basis (" << data.kernel.dim() << " rows):\n";
  for (const auto& row : data.kernel.rows) {
    log << "  (";
    for (std::size_t i = 0; i < row.size(); ++i) log << (i ? ", " : "") << row[i];
    log << ")\n";
  }
  log << "jacobian " << fmt17(data.jacobian) << ", integrable "
      << (data.integrable ? "true" : "false") << "\n";
  return 0;
}

int run_eval(const ToricData& data, const SpectralParams& params, const JobConfig& cfg,
             const RunOptions& opt, std::ostream& log) {
  const bool y_mode = !cfg.y_points.empty();
  if (y_mode && (!cfg.x_points.empty() || !cfg.x_grid.empty()))
    config_fail("eval: give either x points/grid or y points, not both");

  std::vector<std::vector<double>> points;
  if (y_mode) {
    points = cfg.y_points;
  } else {
    if (!cfg.x_grid.empty()) {
      if (static_cast<int>(cfg.x_grid.size()) != data.charge.n)
        config_fail("eval.x_grid needs one axis per x variable");
      points = expand_grid(cfg.x_grid);
    }
    points.insert(points.end(), cfg.x_points.begin(), cfg.x_points.end());
  }
  if (points.empty()) config_fail("eval: no evaluation points configured");

  std::vector<PeriodValue> results(points.size());
  parallel_for(points.size(), opt.threads, [&](std::size_t i) {
    results[i] = y_mode ? evaluate_matrix_element(data, params, points[i], cfg.quad)
                        : evaluate_period(data, params, points[i], cfg.quad);
  });

  auto out = open_out(opt, "eval.csv");
  if (y_mode) {
    for (int j = 0; j < data.charge.N; ++j) out << "y" << (j + 1) << ",";
    for (int a = 0; a < data.charge.n; ++a) out << "x" << (a + 1) << ",";
  } else {
    for (int a = 0; a < data.charge.n; ++a) out << "x" << (a + 1) << ",";
  }
  out << "re_psi,im_psi,error\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (y_mode) {
      for (double v : points[i]) out << fmt17(v) << ",";
      for (int a = 0; a < data.charge.n; ++a) {
        double dot = 0.0;
        for (int j = 0; j < data.charge.N; ++j)
          dot += static_cast<double>(data.charge.at(a, j)) * points[i][j];
        out << fmt17(dot) << ",";
      }
    } else {
      for (double v : points[i]) out << fmt17(v) << ",";
    }
    out << fmt17(results[i].value.real()) << "," << fmt17(results[i].value.imag()) << ","
        << fmt17(results[i].error_estimate) << "\n";
  }
  log << "eval: wrote " << points.size() << " rows\n";
  return 0;
}

int run_series(const ToricData& data, const SpectralParams& params, const JobConfig& cfg,
               const RunOptions& opt, std::ostream& log) {
  if (cfg.dmax.empty()) config_fail("series.dmax is required");
  const SeriesCoefficients sc = build_series(data, params, cfg.dmax);
  json coeffs = json::array();
  for (const auto& [d, a] : sc.coeffs)
    coeffs.push_back({{"d", d}, {"re", a.real()}, {"im", a.imag()}});
  json evals = json::array();
  for (const auto& x : cfg.series_points) {
    if (static_cast<int>(x.size()) != data.charge.n)
      config_fail("series.x_points entries need one value per x variable");
    const SeriesValue v = series_eval(sc, x);
    evals.push_back(
        {{"x", x}, {"re", v.value.real()}, {"im", v.value.imag()}, {"tail", v.tail}});
  }
  json out = {{"dmax", sc.dmax}, {"coefficients", coeffs}, {"evaluations", evals}};
  open_out(opt, "series.json") << out.dump(2) << "\n";
  log << "series: " << sc.coeffs.size() << " coefficients\n";
  return 0;
}

int run_emit_ops(const ToricData& data, const SpectralParams& params, const RunOptions& opt,
                 std::ostream& log) {
  json ops = json::array();
  for (int alpha = 0; alpha < data.charge.n; ++alpha)
    ops.push_back(xspace_to_json(gkz_operator(data.charge, params, alpha)));
  json out = {{"schema_version", 1}, {"operators", ops}};
  open_out(opt, "operators.json") << out.dump(2) << "\n";
  log << "emit-ops: " << data.charge.n << " operators\n";
  return 0;
}

int run_verify_annihilator(const ToricData& data, const SpectralParams& params,
                           const JobConfig& cfg, const RunOptions& opt, std::ostream& log) {
  // finite doubles convert exactly, so the zero test is exact
  const auto rp = rep_params_exact(params);
  bool all_ok = true;
  json results = json::array();
  for (int alpha = 0; alpha < data.charge.n; ++alpha) {
    const bool ok = verify_annihilator(data.charge, rp, alpha, cfg.corrupt_sign);
    all_ok = all_ok && ok;
    results.push_back({{"alpha", alpha + 1}, {"ok", ok}});
    log << "annihilator alpha=" << (alpha + 1) << ": " << (ok ? "zero" : "NONZERO") << "\n";
  }
  json out = {{"corrupt_sign", cfg.corrupt_sign}, {"results", results}};
  open_out(opt, "annihilator.json") << out.dump(2) << "\n";
  return all_ok ? 0 : 2;
}

int run_verify_pde(const ToricData& data, const SpectralParams& params, const JobConfig& cfg,
                   const RunOptions& opt, std::ostream& log) {
  if (!cfg.pde_grid_set) config_fail("pde block is required for verify-pde");
  const auto reports = verify_system(data, params, cfg.pde_grid, cfg.quad, opt.threads);
  auto out = open_out(opt, "pde_residuals.csv");
  out << "alpha,";
  for (int a = 0; a < data.charge.n; ++a) out << "x" << (a + 1) << ",";
  out << "h,re_residual,im_residual,normalizer,normalized_residual\n";
  bool pass = true;
  double worst = 0.0;
  for (const auto& r : reports) {
    out << (r.alpha + 1) << ",";
    for (double v : r.x0) out << fmt17(v) << ",";
    out << fmt17(r.h) << "," << fmt17(r.residual.real()) << "," << fmt17(r.residual.imag())
        << "," << fmt17(r.normalizer) << "," << fmt17(r.normalized_residual) << "\n";
    worst = std::max(worst, r.normalized_residual);
    pass = pass && r.normalized_residual <= cfg.pde_tolerance;
  }
  log << "verify-pde: " << reports.size() << " residuals, worst " << fmt17(worst)
      << (pass ? " <= " : " > ") << fmt17(cfg.pde_tolerance) << "\n";
  return pass ? 0 : 2;
}

int run_bessel_check(const ToricData& data, const SpectralParams& params, const JobConfig& cfg,
                     const RunOptions& opt, std::ostream& log) {
  if (data.charge.n != 1 || data.charge.N != 2 || data.charge.at(0, 0) != 1 ||
      data.charge.at(0, 1) != 1)
    config_fail("bessel-check expects the charge matrix [[1, 1]]");

  std::vector<PeriodValue> quads(cfg.bessel_x.size());
  parallel_for(cfg.bessel_x.size(), opt.threads, [&](std::size_t i) {
    quads[i] = evaluate_period(data, params, {cfg.bessel_x[i]}, cfg.quad);
  });

  auto out = open_out(opt, "bessel_check.csv");
  out << "lambda1,lambda2,x,re_quad,im_quad,re_oracle,im_oracle,rel_err\n";
  bool pass = true;
  for (std::size_t i = 0; i < cfg.bessel_x.size(); ++i) {
    const double x = cfg.bessel_x[i];
    const std::complex<double> oracle =
        p1_closed_form(params.lambda[0], params.lambda[1], x, cfg.quad);
    const double rel = std::abs(quads[i].value - oracle) / std::abs(oracle);
    pass = pass && rel <= cfg.bessel_tolerance;
    out << fmt17(params.lambda[0]) << "," << fmt17(params.lambda[1]) << "," << fmt17(x) << ","
        << fmt17(quads[i].value.real()) << "," << fmt17(quads[i].value.imag()) << ","
        << fmt17(oracle.real()) << "," << fmt17(oracle.imag()) << "," << fmt17(rel) << "\n";
    log << "x=" << fmt17(x) << " quad=" << fmt17(quads[i].value.real())
        << (quads[i].value.imag() < 0 ? "" : "+") << fmt17(quads[i].value.imag())
        << "i rel_err=" << fmt17(rel) << "\n";
  }
  return pass ? 0 : 2;
}

}  // namespace

JobConfig parse_job_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    config_fail(std::string("invalid JSON: ") + e.what());
  }
  JobConfig cfg;
  try {
    cfg.schema_version = need(j, "schema_version").get<int>();
    if (cfg.schema_version != 1)
      config_fail("unsupported schema_version " + std::to_string(cfg.schema_version));
    cfg.charge_matrix = need(j, "charge_matrix").get<IntTable>();
    cfg.lambda = need(j, "lambda").get<std::vector<double>>();
    cfg.c = j.value("c", 1.0);

    if (j.contains("quadrature")) {
      const json& q = j["quadrature"];
      cfg.quad.abs_tol = q.value("abs_tol", cfg.quad.abs_tol);
      cfg.quad.rel_tol = q.value("rel_tol", cfg.quad.rel_tol);
      cfg.quad.truncation_margin = q.value("truncation_margin", cfg.quad.truncation_margin);
      cfg.quad.max_subdivisions = q.value("max_subdivisions", cfg.quad.max_subdivisions);
    }
    if (j.contains("eval")) {
      const json& e = j["eval"];
      if (e.contains("x_grid")) cfg.x_grid = parse_axes(e["x_grid"], "eval.x_grid");
      if (e.contains("x_points"))
        cfg.x_points = e["x_points"].get<std::vector<std::vector<double>>>();
      if (e.contains("y_points"))
        cfg.y_points = e["y_points"].get<std::vector<std::vector<double>>>();
    }
    if (j.contains("series")) {
      const json& s = j["series"];
      cfg.dmax = need(s, "dmax").get<std::vector<int>>();
      if (s.contains("x_points"))
        cfg.series_points = s["x_points"].get<std::vector<std::vector<double>>>();
    }
    if (j.contains("pde")) {
      const json& p = j["pde"];
      cfg.pde_grid.min = need(p, "min").get<std::vector<double>>();
      cfg.pde_grid.max = need(p, "max").get<std::vector<double>>();
      cfg.pde_grid.h = need(p, "h").get<double>();
      cfg.pde_tolerance = p.value("tolerance", cfg.pde_tolerance);
      cfg.pde_grid_set = true;
    }
    if (j.contains("bessel")) {
      const json& b = j["bessel"];
      if (b.contains("x")) cfg.bessel_x = b["x"].get<std::vector<double>>();
      cfg.bessel_tolerance = b.value("tolerance", cfg.bessel_tolerance);
    }
    if (j.contains("verify")) cfg.corrupt_sign = j["verify"].value("corrupt_sign", false);
  } catch (const json::exception& e) {
    config_fail(std::string("bad config field: ") + e.what());
  }

  // shape checks against the charge matrix
  if (cfg.charge_matrix.empty()) config_fail("charge_matrix must be nonempty");
  const std::size_t N = cfg.charge_matrix[0].size();
  const std::size_t n = cfg.charge_matrix.size();
  if (cfg.lambda.size() != N)
    config_fail("lambda must have " + std::to_string(N) + " entries, got " +
                std::to_string(cfg.lambda.size()));
  check_point_shapes(cfg.x_points, n, "eval.x_points");
  check_point_shapes(cfg.y_points, N, "eval.y_points");
  check_point_shapes(cfg.series_points, n, "series.x_points");
  if (cfg.pde_grid_set &&
      (cfg.pde_grid.min.size() != n || cfg.pde_grid.max.size() != n))
    config_fail("pde.min/max need one entry per x variable");
  return cfg;
}

JobConfig load_job_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ConfigError, "cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_job_config(ss.str());
}

int run_job(const std::string& command, const JobConfig& cfg, const RunOptions& opt,
            std::ostream& log) {
  const ToricData data = make_toric_data(cfg.charge_matrix);
  SpectralParams params{cfg.lambda, cfg.c};
  validate_params(params, data.charge.N);

  if (command == "kernel") return run_kernel(data, opt, log);
  if (command == "eval") return run_eval(data, params, cfg, opt, log);
  if (command == "series") return run_series(data, params, cfg, opt, log);
  if (command == "emit-ops") return run_emit_ops(data, params, opt, log);
  if (command == "verify-annihilator")
    return run_verify_annihilator(data, params, cfg, opt, log);
  if (command == "verify-pde") return run_verify_pde(data, params, cfg, opt, log);
  if (command == "bessel-check") return run_bessel_check(data, params, cfg, opt, log);
  fail(Errc::ConfigError, "unknown command '" + command + "'");
}

}  // namespace toric
