#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "toric/reduction.hpp"

namespace toric {

struct QuadratureSettings {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  double truncation_margin = 2.0;
  int max_subdivisions = 4000;
};

void validate_settings(const QuadratureSettings& s);

struct PeriodValue {
  std::complex<double> value{0.0, 0.0};
  double error_estimate = 0.0;
  long evaluations = 0;
};

struct Quad1dResult {
  std::complex<double> value{0.0, 0.0};
  double error = 0.0;    // Gauss–Kronrod difference estimate
  double carried = 0.0;  // integral of the nonnegative auxiliary channel
  long evaluations = 0;
  bool converged = false;
};

/// One-dimensional adaptive Gauss–Kronrod (7/15) integration on [a, b].
/// The integrand returns (re, im, aux); aux ≥ 0 is integrated alongside the
/// value and reported in `carried`. Iterated integrals use the aux channel
/// to propagate inner error estimates outward. Never throws; `converged`
/// reports whether the requested tolerance was met.
Quad1dResult adaptive_gk(const std::function<std::array<double, 3>(double)>& f, double a,
                         double b, double abs_tol, double rel_tol, int max_subdivisions);

Quad1dResult integrate_1d(const std::function<std::complex<double>(double)>& f, double a,
                          double b, double abs_tol, double rel_tol,
                          int max_subdivisions = 4000);

struct Box {
  std::vector<double> lo, hi;
};

/// Axis-aligned bounding box of the region max_j u_j(s) ≤ L, where
/// L = log(log(100/abs_tol)) + margin, widened so that s = 0 stays interior.
/// Outside the box every integrand factor is below e^{-e^L}, which is kept
/// under abs_tol·10⁻². Requires an integrable kernel (the region is then a
/// bounded polytope) and uses exact vertex enumeration of its constraints.
Box truncation_box(const ReducedIntegrand& f, const QuadratureSettings& s);

/// Integrates a reduced integrand over its truncation box (iterated
/// adaptive rules, dimension ≤ 3; dimension 0 is an exact point value).
PeriodValue integrate_reduced(const ReducedIntegrand& f, const QuadratureSettings& s);

/// The period at x: jacobian × ∫ integrand(s) ds.
PeriodValue evaluate_period(const ToricData& data, const SpectralParams& params,
                            const std::vector<double>& x, const QuadratureSettings& s);

/// Matrix-element form: depends on y only through x = m·y.
PeriodValue evaluate_matrix_element(const ToricData& data, const SpectralParams& params,
                                    const std::vector<double>& y, const QuadratureSettings& s);

/// K_{iμ}(z) = ∫₀^∞ e^{−z·coshθ} cos(μθ) dθ for z > 0; real-valued.
/// Independent one-dimensional oracle used for closed-form cross-checks.
double bessel_k_oracle(double mu, double z, const QuadratureSettings& s = {});

/// Closed form of the two-coordinate rank-one period:
/// 2·e^{iλ₂x}·e^{i(λ₁−λ₂)x/2}·K_{i(λ₁−λ₂)}(2e^{x/2}).
std::complex<double> p1_closed_form(double lambda1, double lambda2, double x,
                                    const QuadratureSettings& s = {});

}  // namespace toric
