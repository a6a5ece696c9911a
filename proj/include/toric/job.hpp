#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "toric/pde_check.hpp"
#include "toric/quadrature.hpp"

namespace toric {

struct AxisRange {
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;
};

/// Batch job description parsed from the JSON config format; see the README
/// for the schema. Shapes are validated against the charge matrix.
struct JobConfig {
  int schema_version = 1;
  IntTable charge_matrix;
  std::vector<double> lambda;
  double c = 1.0;
  QuadratureSettings quad;

  // eval
  std::vector<AxisRange> x_grid;
  std::vector<std::vector<double>> x_points;
  std::vector<std::vector<double>> y_points;

  // series
  std::vector<int> dmax;
  std::vector<std::vector<double>> series_points;

  // verify-pde
  GridSpec pde_grid;
  bool pde_grid_set = false;
  double pde_tolerance = 1e-4;

  // bessel-check
  std::vector<double> bessel_x = {-2.0, -1.0, 0.0, 1.0, 2.0};
  double bessel_tolerance = 1e-6;

  // verify-annihilator negative control
  bool corrupt_sign = false;
};

JobConfig parse_job_config(const std::string& text);
JobConfig load_job_config(const std::string& path);

struct RunOptions {
  std::string out_dir = ".";
  int threads = 1;
};

/// Executes one command. Returns 0 on success, 2 when a verification
/// command fails its tolerance; input problems throw ToricError.
/// Commands: kernel, eval, series, emit-ops, verify-annihilator,
/// verify-pde, bessel-check.
int run_job(const std::string& command, const JobConfig& cfg, const RunOptions& opt,
            std::ostream& log);

/// 17-significant-digit formatting used for all CSV output (lossless
/// double round trip).
std::string fmt17(double v);

}  // namespace toric
