#pragma once

#include "toric/errors.hpp"
#include "toric/linalg.hpp"

namespace toric {

/// Nonnegative integer n×N matrix of full row rank with N > n. Row index α
/// runs over the torus factors, column index j over the ambient coordinates.
struct ChargeMatrix {
  int n = 0;
  int N = 0;
  IntTable entries;

  long long at(int alpha, int j) const { return entries[alpha][j]; }
};

/// Integer basis of the kernel lattice of a charge matrix, one vector per
/// row. Rows are primitive, span the saturated kernel lattice, and are kept
/// in canonical row-Hermite form so downstream fixtures are stable.
struct KernelBasis {
  int N = 0;
  IntTable rows;

  int dim() const { return static_cast<int>(rows.size()); }
};

struct ToricData {
  ChargeMatrix charge;
  KernelBasis kernel;
  double jacobian = 1.0;
  bool integrable = false;
};

/// Shape, sign and rank validation of raw integer input.
ChargeMatrix validate_charge_matrix(const IntTable& raw);

/// Exact integer kernel basis with m · vᵀ = 0 for every row v.
KernelBasis kernel_basis(const ChargeMatrix& m);

/// True iff the kernel contains no nonzero vector with all coordinates ≤ 0
/// (equivalently no nonzero nonnegative vector). This is the condition for
/// the reduced integrand to decay in every direction of the kernel
/// parametrization. Decided by exact rational linear-programming
/// feasibility (Fourier–Motzkin elimination); kernels of dimension > 4 are
/// rejected.
bool integrability_check(const KernelBasis& V);

/// Bundles validation, kernel computation, the reduction Jacobian and the
/// integrability flag.
ToricData make_toric_data(const IntTable& raw);

}  // namespace toric
