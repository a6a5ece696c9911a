#include "toric/series.hpp"

#include <cmath>
#include <string>

namespace toric {

namespace {

bool next_in_box(std::vector<int>& d, const std::vector<int>& dmax) {
  for (std::size_t v = 0; v < d.size(); ++v) {
    if (++d[v] <= dmax[v]) return true;
    d[v] = 0;
  }
  return false;
}

double dot(const std::vector<int>& d, const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) s += d[i] * x[i];
  return s;
}

}  // namespace

std::complex<double> step_factor(const ChargeMatrix& m, const SpectralParams& params, int alpha,
                                 const std::vector<int>& d) {
  validate_params(params, m.N);
  if (alpha < 0 || alpha >= m.n) fail(Errc::BadShape, "row index out of range");
  if (static_cast<int>(d.size()) != m.n) fail(Errc::BadShape, "multi-index has wrong length");

  std::complex<double> out = 1.0;
  for (int j = 0; j < m.N; ++j) {
    double mu = 0.0;
    for (int b = 0; b < m.n; ++b) mu += static_cast<double>(m.at(b, j)) * d[b];
    for (long long k = 0; k < m.at(alpha, j); ++k)
      out *= std::complex<double>(static_cast<double>(k) - mu, params.lambda[j]);
  }
  return out;
}

SeriesCoefficients build_series(const ToricData& data, const SpectralParams& params,
                                const std::vector<int>& dmax) {
  const ChargeMatrix& m = data.charge;
  validate_params(params, m.N);
  if (static_cast<int>(dmax.size()) != m.n)
    fail(Errc::BadShape, "dmax must have one entry per x variable");
  for (int v : dmax)
    if (v < 0) fail(Errc::BadShape, "dmax entries must be nonnegative");

  SeriesCoefficients sc;
  sc.dmax = dmax;
  std::vector<int> d(m.n, 0);
  do {
    int alpha = -1;
    for (int a = 0; a < m.n; ++a)
      if (d[a] >= 1) {
        alpha = a;
        break;
      }
    if (alpha < 0) {
      sc.coeffs[d] = 1.0;  // normalization a_0 = 1
      continue;
    }
    const std::complex<double> p = step_factor(m, params, alpha, d);
    if (std::abs(p) < 1e-14)
      fail(Errc::ResonantParameters, "vanishing step factor at a required recursion step");
    std::vector<int> prev = d;
    --prev[alpha];
    sc.coeffs[d] = sc.coeffs.at(prev) / p;
  } while (next_in_box(d, sc.dmax));
  return sc;
}

SeriesValue series_eval(const SeriesCoefficients& sc, const std::vector<double>& x) {
  if (x.size() != sc.dmax.size()) fail(Errc::BadShape, "x has wrong length");
  SeriesValue out;
  for (const auto& [d, a] : sc.coeffs) {
    const std::complex<double> term = a * std::exp(dot(d, x));
    out.value += term;
    for (std::size_t v = 0; v < d.size(); ++v)
      if (d[v] == sc.dmax[v]) {
        out.tail += std::abs(term);
        break;
      }
  }
  return out;
}

std::complex<double> series_operator_residual(const ChargeMatrix& m,
                                              const SpectralParams& params,
                                              const SeriesCoefficients& sc, int alpha,
                                              const std::vector<double>& x) {
  if (alpha < 0 || alpha >= m.n) fail(Errc::BadShape, "row index out of range");
  std::complex<double> out = 0.0;
  for (const auto& [d, a] : sc.coeffs) {
    if (d[alpha] == 0)
      out += a * step_factor(m, params, alpha, d) * std::exp(dot(d, x));
    if (d[alpha] == sc.dmax[alpha]) {
      std::vector<int> up = d;
      ++up[alpha];
      out -= a * std::exp(dot(up, x));
    }
  }
  return out;
}

}  // namespace toric
