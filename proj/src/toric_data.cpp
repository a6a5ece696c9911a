#include "toric/toric_data.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "toric/reduction.hpp"

namespace toric {

ChargeMatrix validate_charge_matrix(const IntTable& raw) {
  const int n = static_cast<int>(raw.size());
  if (n < 1) fail(Errc::BadShape, "charge matrix needs at least one row");
  const int N = static_cast<int>(raw[0].size());
  for (const auto& row : raw) {
    if (static_cast<int>(row.size()) != N)
      fail(Errc::BadShape, "charge matrix rows have inconsistent lengths");
  }
  if (N <= n)
    fail(Errc::BadShape, "need more columns than rows (N > n), got n=" + std::to_string(n) +
                             ", N=" + std::to_string(N));
  for (const auto& row : raw)
    for (long long v : row)
      if (v < 0)
        fail(Errc::NegativeEntry,
             "negative entries are not supported by this operator presentation");
  if (integer_rank(raw) != n) fail(Errc::RankDeficient, "charge matrix rows are dependent");
  return ChargeMatrix{n, N, raw};
}

KernelBasis kernel_basis(const ChargeMatrix& m) {
  return KernelBasis{m.N, integer_kernel_rows(m.entries)};
}

namespace {

// One inequality Σ aₖ sₖ + c ≤ 0 with exact rational data.
struct LinIneq {
  std::vector<BigRat> a;
  BigRat c;
};

// Positive rescaling to a canonical representative, for deduplication.
void normalize(LinIneq& q) {
  BigRat top = q.c < 0 ? BigRat(-q.c) : q.c;
  for (const auto& v : q.a) {
    BigRat av = v < 0 ? BigRat(-v) : v;
    if (av > top) top = av;
  }
  if (top == 0) return;
  for (auto& v : q.a) v /= top;
  q.c /= top;
}

bool ineq_less(const LinIneq& x, const LinIneq& y) {
  if (x.c != y.c) return x.c < y.c;
  return x.a < y.a;
}

// Feasibility of {Σ aₖ sₖ + c ≤ 0} by Fourier–Motzkin elimination.
bool feasible(std::vector<LinIneq> sys, int nvars) {
  for (int v = 0; v < nvars; ++v) {
    std::vector<LinIneq> pos, neg, rest;
    for (auto& q : sys) {
      if (q.a[v] > 0)
        pos.push_back(std::move(q));
      else if (q.a[v] < 0)
        neg.push_back(std::move(q));
      else
        rest.push_back(std::move(q));
    }
    for (const auto& p : pos)
      for (const auto& m : neg) {
        LinIneq combo;
        combo.a.resize(nvars);
        const BigRat fp = BigRat(1) / p.a[v];
        const BigRat fm = BigRat(-1) / m.a[v];
        for (int k = 0; k < nvars; ++k) combo.a[k] = p.a[k] * fp + m.a[k] * fm;
        combo.a[v] = 0;
        combo.c = p.c * fp + m.c * fm;
        rest.push_back(std::move(combo));
      }
    std::vector<LinIneq> next;
    auto cmp = [](const LinIneq& x, const LinIneq& y) { return ineq_less(x, y); };
    std::set<LinIneq, decltype(cmp)> seen(cmp);
    for (auto& q : rest) {
      bool constant = true;
      for (const auto& x : q.a)
        if (x != 0) {
          constant = false;
          break;
        }
      if (constant) {
        if (q.c > 0) return false;
        continue;
      }
      normalize(q);
      if (seen.insert(q).second) next.push_back(q);
    }
    sys = std::move(next);
  }
  return true;  // only satisfiable constant constraints remain
}

}  // namespace

bool integrability_check(const KernelBasis& V) {
  const int K = V.dim();
  if (K == 0) return true;
  if (K > 4)
    fail(Errc::DimensionTooLarge,
         "integrability check supports kernel dimension <= 4, got " + std::to_string(K));
  const int N = V.N;

  // Nonintegrable iff some nonzero s has (Vᵀs)_j ≤ 0 for all j. Because the
  // rows of V are independent, such an s always has Σ_j (Vᵀs)_j < 0, so it
  // can be scaled onto the slice Σ_j (Vᵀs)_j = -1.
  std::vector<BigRat> b(K, 0);
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < N; ++j) b[k] += V.rows[k][j];
  int k0 = -1;
  for (int k = 0; k < K; ++k)
    if (b[k] != 0) {
      k0 = k;
      break;
    }
  if (k0 < 0) return true;  // the slice is empty, the cone is {0}

  // Substitute s_{k0} = (-1 - Σ_{k≠k0} b_k s_k) / b_{k0} into (Vᵀs)_j ≤ 0.
  std::vector<LinIneq> sys;
  sys.reserve(N);
  for (int j = 0; j < N; ++j) {
    LinIneq q;
    q.a.assign(K, 0);
    const BigRat w0 = BigRat(V.rows[k0][j]) / b[k0];
    for (int k = 0; k < K; ++k) {
      if (k == k0) continue;
      q.a[k] = BigRat(V.rows[k][j]) - w0 * b[k];
    }
    q.c = -w0;
    sys.push_back(std::move(q));
  }
  return !feasible(std::move(sys), K);
}

ToricData make_toric_data(const IntTable& raw) {
  ToricData data;
  data.charge = validate_charge_matrix(raw);
  data.kernel = kernel_basis(data.charge);
  data.jacobian = jacobian_factor(data.charge, data.kernel);
  data.integrable = integrability_check(data.kernel);
  return data;
}

}  // namespace toric
