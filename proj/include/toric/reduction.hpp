#pragma once

#include <complex>
#include <span>
#include <vector>

#include "toric/toric_data.hpp"

namespace toric {

/// Real spectral vector λ (one entry per ambient coordinate) and the
/// positive central value c, conventionally 1.
struct SpectralParams {
  std::vector<double> lambda;
  double c = 1.0;
};

void validate_params(const SpectralParams& params, int N);

/// Minimum-norm real solution u0 = mᵀ(m·mᵀ)⁻¹x of m·u = x, computed with
/// exact rational elimination on the integer Gram matrix.
std::vector<double> particular_solution(const ChargeMatrix& m, const std::vector<double>& x);

/// sqrt(det(V·Vᵀ)/det(m·mᵀ)): the volume factor picked up when the delta
/// constraints are resolved along the affine slice u = u0 + Vᵀs. Empty V
/// contributes det = 1.
double jacobian_factor(const ChargeMatrix& m, const KernelBasis& V);

/// The constrained integral in logarithmic coordinates u = log t: the delta
/// factors fix the affine slice u(s) = u0 + Vᵀs, and what remains is the
/// smooth integrand s ↦ Π_j exp(iλ_j u_j(s) − e^{u_j(s)}) over R^{N−n},
/// weighted by `jacobian`. Immutable after construction; evaluation is
/// reentrant.
struct ReducedIntegrand {
  std::vector<double> u0;
  KernelBasis V;
  double jacobian = 1.0;
  SpectralParams params;

  int dim() const { return V.dim(); }
  int ambient() const { return static_cast<int>(u0.size()); }

  /// u(s) = u0 + Vᵀs.
  void coordinates(std::span<const double> s, std::vector<double>& u) const;

  /// Π_j exp(iλ_j u_j(s) − e^{u_j(s)}); modulus ≤ 1.
  std::complex<double> operator()(std::span<const double> s) const;
};

ReducedIntegrand log_reduce(const ToricData& data, const SpectralParams& params,
                            const std::vector<double>& x);

}  // namespace toric
