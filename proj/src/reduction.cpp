#include "toric/reduction.hpp"

#include <cmath>
#include <string>

namespace toric {

void validate_params(const SpectralParams& params, int N) {
  if (static_cast<int>(params.lambda.size()) != N)
    fail(Errc::BadShape, "lambda must have one entry per ambient coordinate, expected " +
                             std::to_string(N) + ", got " + std::to_string(params.lambda.size()));
  for (double l : params.lambda)
    if (!std::isfinite(l)) fail(Errc::BadSettings, "lambda entries must be finite");
  if (!(params.c > 0.0) || !std::isfinite(params.c))
    fail(Errc::BadSettings, "central value c must be positive and finite");
}

std::vector<double> particular_solution(const ChargeMatrix& m, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != m.n)
    fail(Errc::BadShape, "x must have one entry per charge-matrix row");
  IntTable gram(m.n, IntRow(m.n, 0));
  for (int a = 0; a < m.n; ++a)
    for (int b = 0; b < m.n; ++b) {
      long long s = 0;
      for (int j = 0; j < m.N; ++j) s += m.at(a, j) * m.at(b, j);
      gram[a][b] = s;
    }
  std::vector<double> w;
  if (!solve_exact(gram, x, w))
    fail(Errc::SingularGram, "m·mᵀ is singular");  // unreachable for validated m
  std::vector<double> u0(m.N, 0.0);
  for (int j = 0; j < m.N; ++j) {
    double s = 0.0;
    for (int a = 0; a < m.n; ++a) s += static_cast<double>(m.at(a, j)) * w[a];
    u0[j] = s;
  }
  return u0;
}

double jacobian_factor(const ChargeMatrix& m, const KernelBasis& V) {
  const BigInt num = gram_determinant(V.rows);
  const BigInt den = gram_determinant(m.entries);
  return std::sqrt(static_cast<double>(BigRat(num) / BigRat(den)));
}

void ReducedIntegrand::coordinates(std::span<const double> s, std::vector<double>& u) const {
  const int N = ambient();
  const int K = dim();
  u.assign(u0.begin(), u0.end());
  for (int k = 0; k < K; ++k) {
    const double sk = s[k];
    if (sk == 0.0) continue;
    for (int j = 0; j < N; ++j) u[j] += static_cast<double>(V.rows[k][j]) * sk;
  }
}

std::complex<double> ReducedIntegrand::operator()(std::span<const double> s) const {
  const int N = ambient();
  const int K = dim();
  double phase = 0.0;
  double decay = 0.0;
  for (int j = 0; j < N; ++j) {
    double uj = u0[j];
    for (int k = 0; k < K; ++k) uj += static_cast<double>(V.rows[k][j]) * s[k];
    phase += params.lambda[j] * uj;
    decay += std::exp(uj);
  }
  const double mag = std::exp(-decay);
  return {mag * std::cos(phase), mag * std::sin(phase)};
}

ReducedIntegrand log_reduce(const ToricData& data, const SpectralParams& params,
                            const std::vector<double>& x) {
  if (!data.integrable)
    fail(Errc::NotIntegrable, "kernel admits a nonpositive direction; integral diverges");
  validate_params(params, data.charge.N);
  ReducedIntegrand r;
  r.u0 = particular_solution(data.charge, x);
  r.V = data.kernel;
  r.jacobian = data.jacobian;
  r.params = params;
  return r;
}

}  // namespace toric
