#pragma once

// Test-side oracles, kept independent of the library paths they check.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <map>
#include <random>
#include <vector>

#include "toric/algebra.hpp"
#include "toric/linalg.hpp"

namespace oracles {

/// I₀(z) by direct series summation Σ (z/2)^{2k} / (k!)².
inline double i0_series(double z) {
  const double q = 0.25 * z * z;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

/// Exact membership of an integer vector in the row lattice of `basis`.
inline bool lattice_contains(const toric::IntTable& basis, const toric::IntRow& v) {
  using toric::BigRat;
  const int K = static_cast<int>(basis.size());
  const int N = static_cast<int>(v.size());
  // solve cᵀ·basis = v over the rationals, then demand integrality
  std::vector<std::vector<BigRat>> a(N, std::vector<BigRat>(K + 1));
  for (int j = 0; j < N; ++j) {
    for (int k = 0; k < K; ++k) a[j][k] = BigRat(basis[k][j]);
    a[j][K] = BigRat(v[j]);
  }
  int row = 0;
  std::vector<int> pivot_col(K, -1);
  for (int c = 0; c < K && row < N; ++c) {
    int p = -1;
    for (int r = row; r < N; ++r)
      if (a[r][c] != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(a[p], a[row]);
    for (int r = 0; r < N; ++r) {
      if (r == row || a[r][c] == 0) continue;
      BigRat f = a[r][c] / a[row][c];
      for (int cc = c; cc <= K; ++cc) a[r][cc] -= f * a[row][cc];
    }
    pivot_col[c] = row;
    ++row;
  }
  std::vector<BigRat> coeff(K, 0);
  for (int c = 0; c < K; ++c) {
    if (pivot_col[c] < 0) continue;
    coeff[c] = a[pivot_col[c]][K] / a[pivot_col[c]][c];
  }
  // consistency: cᵀ·basis must reproduce v, and every c must be an integer
  for (int j = 0; j < N; ++j) {
    BigRat s = 0;
    for (int k = 0; k < K; ++k) s += coeff[k] * BigRat(basis[k][j]);
    if (s != BigRat(v[j])) return false;
  }
  for (const auto& c : coeff)
    if (denominator(c) != 1) return false;
  return true;
}

/// Dense deterministic direction sample; returns true when some direction
/// has all kernel-combination coordinates ≤ 0 (a numeric witness against
/// integrability).
inline bool sphere_sample_finds_nonpositive(const toric::IntTable& rows, int samples = 4096) {
  const int K = static_cast<int>(rows.size());
  if (K == 0) return false;
  const int N = static_cast<int>(rows[0].size());
  std::mt19937 rng(12345);
  std::normal_distribution<double> gauss;
  for (int t = 0; t < samples; ++t) {
    std::vector<double> s(K);
    for (auto& v : s) v = gauss(rng);
    bool all_nonpos = true;
    for (int j = 0; j < N && all_nonpos; ++j) {
      double dot = 0.0;
      for (int k = 0; k < K; ++k) dot += rows[k][j] * s[k];
      if (dot > -1e-9) all_nonpos = false;
    }
    if (all_nonpos) return true;
  }
  return false;
}

/// Letter-by-letter action of a word on a monomial polynomial through the
/// representation F_i = t_i·, E_i = c∂_i, H_i = t_i∂_i + iλ_i, C = c.
/// The rightmost letter acts first.
using PolyQ = std::map<std::vector<int>, toric::RationalComplex>;

inline void poly_add(PolyQ& p, const std::vector<int>& e, const toric::RationalComplex& c) {
  if (toric::coeff_traits<toric::RationalComplex>::is_zero(c)) return;
  auto [it, inserted] = p.emplace(e, c);
  if (!inserted) {
    it->second = it->second + c;
    if (toric::coeff_traits<toric::RationalComplex>::is_zero(it->second)) p.erase(it);
  }
}

inline PolyQ act_letter(const toric::Letter& l, const PolyQ& p,
                        const toric::RepParams<toric::RationalComplex>& rp) {
  using toric::RationalComplex;
  PolyQ out;
  for (const auto& [e, c] : p) {
    switch (l.g) {
      case toric::Gen::F: {
        std::vector<int> e2 = e;
        ++e2[l.index];
        poly_add(out, e2, c);
        break;
      }
      case toric::Gen::E: {
        if (e[l.index] == 0) break;
        std::vector<int> e2 = e;
        --e2[l.index];
        poly_add(out, e2, c * rp.c * RationalComplex(e[l.index]));
        break;
      }
      case toric::Gen::H: {
        poly_add(out, e, c * (RationalComplex(e[l.index]) + rp.ilambda[l.index]));
        break;
      }
      case toric::Gen::C: {
        poly_add(out, e, c * rp.c);
        break;
      }
    }
  }
  return out;
}

inline PolyQ act_word(const toric::Word& w, const std::vector<int>& monomial,
                      const toric::RepParams<toric::RationalComplex>& rp) {
  PolyQ p;
  poly_add(p, monomial, toric::RationalComplex(1));
  for (auto it = w.rbegin(); it != w.rend(); ++it) p = act_letter(*it, p, rp);
  return p;
}

}  // namespace oracles
