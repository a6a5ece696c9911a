#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace toric {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

using IntRow = std::vector<long long>;
using IntTable = std::vector<IntRow>;

/// Rank over the rationals of an integer matrix (exact arithmetic).
int integer_rank(const IntTable& a);

/// Basis of the integer kernel lattice {v : a·v = 0} of an integer matrix,
/// one vector per row, in canonical row-Hermite form: positive pivots,
/// entries above each pivot reduced into [0, pivot), rows ordered by pivot
/// column. The rows span the full (saturated) kernel lattice.
IntTable integer_kernel_rows(const IntTable& a);

/// det(a·aᵀ) computed exactly. An empty matrix has Gram determinant 1.
BigInt gram_determinant(const IntTable& a);

/// Exact determinant of a square integer matrix (Bareiss elimination).
BigInt integer_determinant(std::vector<std::vector<BigInt>> g);

/// Solves g·w = rhs for a nonsingular integer matrix g using exact rational
/// elimination; the result is rounded to double only at the end. Returns
/// false when g is singular.
bool solve_exact(const IntTable& g, const std::vector<double>& rhs, std::vector<double>& out);

/// Dense double-precision solve with partial pivoting (small systems).
/// Returns false when the matrix is numerically singular.
bool solve_dense(std::vector<std::vector<double>> a, std::vector<double> b,
                 std::vector<double>& out);

}  // namespace toric
