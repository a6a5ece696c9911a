#include "toric/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace toric {

namespace {

using Mat = std::vector<std::vector<BigInt>>;

Mat to_big(const IntTable& a) {
  Mat b(a.size());
  for (std::size_t r = 0; r < a.size(); ++r) {
    b[r].assign(a[r].begin(), a[r].end());
  }
  return b;
}

BigInt abs_big(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

void negate_row(std::vector<BigInt>& row) {
  for (auto& v : row) v = -v;
}

// Truncated quotient is fine for the gcd cascade; floor quotient is needed
// when reducing entries above an established pivot into [0, pivot).
BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

void axpy_row(std::vector<BigInt>& dst, const BigInt& q, const std::vector<BigInt>& src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= q * src[i];
}

// Integer row echelon reduction via gcd cascades. Row operations are
// unimodular (swap, negate, add integer multiple), so the row lattice is
// preserved; the same operations are mirrored on *u when given. Returns the
// rank; after the call rows [rank, end) of b are zero.
int echelon_rows(Mat& b, Mat* u) {
  const int rows = static_cast<int>(b.size());
  const int cols = rows ? static_cast<int>(b[0].size()) : 0;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    for (;;) {
      int best = -1;
      for (int i = r; i < rows; ++i) {
        if (b[i][c] != 0 && (best < 0 || abs_big(b[i][c]) < abs_big(b[best][c]))) best = i;
      }
      if (best < 0) break;
      if (best != r) {
        std::swap(b[best], b[r]);
        if (u) std::swap((*u)[best], (*u)[r]);
      }
      bool clean = true;
      for (int i = r + 1; i < rows; ++i) {
        if (b[i][c] == 0) continue;
        BigInt q = b[i][c] / b[r][c];
        axpy_row(b[i], q, b[r]);
        if (u) axpy_row((*u)[i], q, (*u)[r]);
        if (b[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (b[r][c] == 0) continue;
    if (b[r][c] < 0) {
      negate_row(b[r]);
      if (u) negate_row((*u)[r]);
    }
    ++r;
  }
  return r;
}

// Reduces entries above each pivot into [0, pivot); rows must already be in
// echelon form with positive pivots.
void back_reduce(Mat& b) {
  const int rows = static_cast<int>(b.size());
  const int cols = rows ? static_cast<int>(b[0].size()) : 0;
  for (int r = 0; r < rows; ++r) {
    int c = 0;
    while (c < cols && b[r][c] == 0) ++c;
    if (c == cols) continue;
    for (int i = 0; i < r; ++i) {
      if (b[i][c] == 0) continue;
      BigInt q = floor_div(b[i][c], b[r][c]);
      if (q != 0) axpy_row(b[i], q, b[r]);
    }
  }
}

long long to_ll(const BigInt& v) {
  return v.convert_to<long long>();
}

}  // namespace

int integer_rank(const IntTable& a) {
  Mat b = to_big(a);
  return echelon_rows(b, nullptr);
}

IntTable integer_kernel_rows(const IntTable& a) {
  const int n = static_cast<int>(a.size());
  const int N = n ? static_cast<int>(a[0].size()) : 0;

  // Reduce aᵀ with a mirrored unimodular transform u; the u-rows matched to
  // zero rows of the echelon form span the integer kernel lattice of a.
  Mat b(N, std::vector<BigInt>(n));
  for (int i = 0; i < N; ++i)
    for (int al = 0; al < n; ++al) b[i][al] = a[al][i];
  Mat u(N, std::vector<BigInt>(N, 0));
  for (int i = 0; i < N; ++i) u[i][i] = 1;

  const int rank = echelon_rows(b, &u);

  Mat kernel(u.begin() + rank, u.end());
  echelon_rows(kernel, nullptr);
  back_reduce(kernel);

  // Rows of a basis of a saturated lattice are primitive; the gcd division
  // is a no-op kept as a guard.
  IntTable out;
  out.reserve(kernel.size());
  for (auto& row : kernel) {
    BigInt g = 0;
    for (const auto& v : row) g = gcd(g, abs_big(v));
    if (g > 1)
      for (auto& v : row) v /= g;
    IntRow r(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) r[i] = to_ll(row[i]);
    out.push_back(std::move(r));
  }
  return out;
}

BigInt integer_determinant(std::vector<std::vector<BigInt>> g) {
  const int k = static_cast<int>(g.size());
  if (k == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (int c = 0; c < k - 1; ++c) {
    int p = -1;
    for (int r = c; r < k; ++r)
      if (g[r][c] != 0) {
        p = r;
        break;
      }
    if (p < 0) return 0;
    if (p != c) {
      std::swap(g[p], g[c]);
      sign = -sign;
    }
    for (int r = c + 1; r < k; ++r)
      for (int cc = c + 1; cc < k; ++cc)
        g[r][cc] = (g[r][cc] * g[c][c] - g[r][c] * g[c][cc]) / prev;  // exact division
    prev = g[c][c];
  }
  return sign > 0 ? g[k - 1][k - 1] : BigInt(-g[k - 1][k - 1]);
}

BigInt gram_determinant(const IntTable& a) {
  const int k = static_cast<int>(a.size());
  if (k == 0) return 1;
  const int N = static_cast<int>(a[0].size());
  Mat g(k, std::vector<BigInt>(k, 0));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      BigInt s = 0;
      for (int t = 0; t < N; ++t) s += BigInt(a[i][t]) * a[j][t];
      g[i][j] = s;
    }
  return integer_determinant(std::move(g));
}

bool solve_exact(const IntTable& g, const std::vector<double>& rhs, std::vector<double>& out) {
  const int k = static_cast<int>(g.size());
  std::vector<std::vector<BigRat>> a(k, std::vector<BigRat>(k + 1));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) a[i][j] = BigRat(g[i][j]);
    a[i][k] = BigRat(rhs[i]);  // exact: every finite double is rational
  }
  for (int c = 0; c < k; ++c) {
    int p = -1;
    for (int r = c; r < k; ++r)
      if (a[r][c] != 0) {
        p = r;
        break;
      }
    if (p < 0) return false;
    std::swap(a[p], a[c]);
    for (int r = 0; r < k; ++r) {
      if (r == c || a[r][c] == 0) continue;
      BigRat f = a[r][c] / a[c][c];
      for (int cc = c; cc <= k; ++cc) a[r][cc] -= f * a[c][cc];
    }
  }
  out.resize(k);
  for (int i = 0; i < k; ++i) out[i] = static_cast<double>(a[i][k] / a[i][i]);
  return true;
}

bool solve_dense(std::vector<std::vector<double>> a, std::vector<double> b,
                 std::vector<double>& out) {
  const int k = static_cast<int>(a.size());
  for (int c = 0; c < k; ++c) {
    int p = c;
    for (int r = c + 1; r < k; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (std::abs(a[p][c]) < 1e-13) return false;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (int r = c + 1; r < k; ++r) {
      double f = a[r][c] / a[c][c];
      if (f == 0.0) continue;
      for (int cc = c; cc < k; ++cc) a[r][cc] -= f * a[c][cc];
      b[r] -= f * b[c];
    }
  }
  out.assign(k, 0.0);
  for (int r = k - 1; r >= 0; --r) {
    double s = b[r];
    for (int cc = r + 1; cc < k; ++cc) s -= a[r][cc] * out[cc];
    out[r] = s / a[r][r];
  }
  return true;
}

}  // namespace toric
