#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "toric/gkz.hpp"
#include "toric/quadrature.hpp"

namespace toric {

/// Uniform rectangular grid: points min + i·h per axis up to max.
struct GridSpec {
  std::vector<double> min;
  std::vector<double> max;
  double h = 0.01;
};

struct GridFunction {
  std::vector<double> origin;
  double h = 0.0;
  std::vector<int> shape;
  std::vector<std::complex<double>> values;  // row-major over shape

  int dims() const { return static_cast<int>(shape.size()); }
  std::size_t flat_index(const std::vector<int>& idx) const;
  std::complex<double> at(const std::vector<int>& idx) const;
  std::vector<double> point(const std::vector<int>& idx) const;
  /// Grid index of x0; requires x0 to lie on the grid to within h·1e−6.
  std::vector<int> grid_index(const std::vector<double>& x0) const;
};

using PointFn = std::function<std::complex<double>(const std::vector<double>&)>;

GridFunction sample_grid(const GridSpec& spec, const PointFn& f, int threads = 1);

/// Symmetric central-difference stencil for the k-th derivative with
/// second-order accuracy; entries for offsets −r..r with r = ceil(k/2).
std::vector<double> central_stencil(int order);

inline int stencil_radius(int order) { return (order + 1) / 2; }

/// Central-difference estimate of ∂^β f at the grid point `center`
/// (tensor composition of one-dimensional stencils).
std::complex<double> fd_partial(const GridFunction& f, const std::vector<int>& center,
                                const std::vector<int>& beta);

struct FdResult {
  std::complex<double> value{0.0, 0.0};
  double normalizer = 0.0;  // sum of magnitudes of all operator terms
};

/// Σ_β c_β·(FD estimate of ∂^β f) − e^{x^α}·f, at the grid point `center`.
FdResult fd_apply(const XSpaceOperator& op, const GridFunction& f,
                  const std::vector<int>& center);

/// Same, locating x0 on the grid of f; h must match the grid spacing.
std::complex<double> fd_apply(const XSpaceOperator& op, const GridFunction& f,
                              const std::vector<double>& x0, double h);

struct ResidualReport {
  std::vector<double> x0;
  double h = 0.0;
  int alpha = 0;
  std::complex<double> residual{0.0, 0.0};
  double normalizer = 0.0;
  double normalized_residual = 0.0;
};

/// Applies every α-operator of the system to a sampled function at every
/// interior grid point admitting the stencil.
std::vector<ResidualReport> residual_reports(const ChargeMatrix& m, const SpectralParams& params,
                                             const GridFunction& f);

/// Samples the period on the grid by quadrature (values cached and shared
/// across operators and stencil points), then assembles residual reports.
std::vector<ResidualReport> verify_system(const ToricData& data, const SpectralParams& params,
                                          const GridSpec& spec, const QuadratureSettings& qs,
                                          int threads = 1);

}  // namespace toric
