#pragma once

#include <complex>
#include <map>
#include <vector>

#include "toric/reduction.hpp"

namespace toric {

/// Coefficients a_d of the truncated formal solution Σ_d a_d e^{d·x},
/// stored on the box 0 ≤ d ≤ dmax with the normalization a_0 = 1.
struct SeriesCoefficients {
  std::vector<int> dmax;
  std::map<std::vector<int>, std::complex<double>> coeffs;
};

/// P_α(d) = Π_j Π_{k=0}^{m_j^α−1} (iλ_j + k − μ_j(d)), μ_j(d) = Σ_β m_j^β d_β.
/// Acting on e^{d·x}, the α-operator's derivative part multiplies by P_α(d);
/// matching coefficients of the shift term gives P_α(d)·a_d = a_{d−e_α}.
/// For d_α ≥ 1 and real λ every factor has |·| ≥ 1.
std::complex<double> step_factor(const ChargeMatrix& m, const SpectralParams& params, int alpha,
                                 const std::vector<int>& d);

SeriesCoefficients build_series(const ToricData& data, const SpectralParams& params,
                                const std::vector<int>& dmax);

struct SeriesValue {
  std::complex<double> value{0.0, 0.0};
  /// Σ |a_d e^{d·x}| over the outer boundary shell of the box (every d with
  /// d_α = dmax_α for some α); bounds the magnitude of the truncation
  /// leftover of each α-operator up to the e^{x^α} shift weight.
  double tail = 0.0;
};

SeriesValue series_eval(const SeriesCoefficients& sc, const std::vector<double>& x);

/// Value at x of the α-operator applied termwise to the truncated series.
/// Interior terms cancel through the recursion, so only the d_α = 0 face
/// terms a_d·P_α(d)·e^{d·x} and the top-face overflow −a_d·e^{(d+e_α)·x}
/// remain; both are summed directly.
std::complex<double> series_operator_residual(const ChargeMatrix& m,
                                              const SpectralParams& params,
                                              const SeriesCoefficients& sc, int alpha,
                                              const std::vector<double>& x);

}  // namespace toric
