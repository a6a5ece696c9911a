#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "toric/toric_data.hpp"

using namespace toric;

namespace {

bool kernel_annihilates(const IntTable& m, const IntTable& rows) {
  for (const auto& v : rows)
    for (const auto& mrow : m) {
      long long dot = 0;
      for (std::size_t j = 0; j < v.size(); ++j) dot += mrow[j] * v[j];
      if (dot != 0) return false;
    }
  return true;
}

long long row_gcd(const IntRow& v) {
  long long g = 0;
  for (long long x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

}  // namespace

TEST_CASE("charge matrix validation") {
  const ChargeMatrix p1 = validate_charge_matrix({{1, 1}});
  CHECK(p1.n == 1);
  CHECK(p1.N == 2);

  CHECK_THROWS_WITH_AS(validate_charge_matrix({{1, 1}, {2, 2}}), doctest::Contains("RankDeficient"),
                       ToricError);
  CHECK(validate_charge_matrix({{1, 1, 1, 0}, {0, 0, 1, 1}}).n == 2);

  CHECK_THROWS_AS(validate_charge_matrix({{1, -1}}), ToricError);
  CHECK_THROWS_AS(validate_charge_matrix({{1, 2}, {3, 4}, {5, 6}}), ToricError);  // N < n
  CHECK_THROWS_AS(validate_charge_matrix({}), ToricError);

  // square full-rank input is the degenerate zero-dimensional case
  const ChargeMatrix point = validate_charge_matrix({{1}});
  CHECK(point.n == 1);
  CHECK(point.N == 1);
}

TEST_CASE("kernel basis on worked examples") {
  CHECK(kernel_basis(validate_charge_matrix({{1, 1}})).rows == IntTable{{1, -1}});
  CHECK(kernel_basis(validate_charge_matrix({{1, 1, 1}})).rows ==
        IntTable{{1, 0, -1}, {0, 1, -1}});
  CHECK(kernel_basis(validate_charge_matrix({{1, 1, 0, 0}, {0, 0, 1, 1}})).rows ==
        IntTable{{1, -1, 0, 0}, {0, 0, 1, -1}});
  CHECK(kernel_basis(validate_charge_matrix({{1}})).rows.empty());
}

TEST_CASE("kernel basis properties on random matrices") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(0, 3);
  std::uniform_int_distribution<int> ncols(2, 6);
  int done = 0;
  while (done < 200) {
    const int N = ncols(rng);
    std::uniform_int_distribution<int> nrows(1, N - 1);
    const int n = nrows(rng);
    IntTable m(n, IntRow(N));
    for (auto& row : m)
      for (auto& v : row) v = entry(rng);
    if (integer_rank(m) != n) continue;
    ++done;

    const ChargeMatrix cm = validate_charge_matrix(m);
    const KernelBasis V = kernel_basis(cm);
    CHECK(V.dim() == N - n);
    CHECK(kernel_annihilates(m, V.rows));
    for (const auto& row : V.rows) CHECK(row_gcd(row) == 1);
    CHECK(kernel_basis(cm).rows == V.rows);  // deterministic
  }
}

TEST_CASE("projective-space kernels span the difference lattice") {
  for (int ell = 1; ell <= 4; ++ell) {
    const int N = ell + 1;
    const ChargeMatrix m = validate_charge_matrix({IntRow(N, 1)});
    const KernelBasis V = kernel_basis(m);
    REQUIRE(V.dim() == ell);
    // e_k − e_{ell+1} generate the same lattice as the computed basis
    IntTable diffs;
    for (int k = 0; k < ell; ++k) {
      IntRow d(N, 0);
      d[k] = 1;
      d[N - 1] = -1;
      diffs.push_back(d);
    }
    for (const auto& d : diffs) CHECK(oracles::lattice_contains(V.rows, d));
    for (const auto& v : V.rows) CHECK(oracles::lattice_contains(diffs, v));
  }
}

TEST_CASE("integrability check") {
  CHECK(integrability_check(kernel_basis(validate_charge_matrix({{1, 1}}))));
  CHECK(integrability_check(kernel_basis(validate_charge_matrix({{1, 1, 1}}))));
  CHECK_FALSE(integrability_check(kernel_basis(validate_charge_matrix({{1, 0}}))));
  CHECK(integrability_check(KernelBasis{1, {}}));  // empty kernel

  // direct basis {(0,1)} as in the degenerate example
  CHECK_FALSE(integrability_check(KernelBasis{2, {{0, 1}}}));

  KernelBasis big{7, {{1, -1, 0, 0, 0, 0, 0},
                      {0, 1, -1, 0, 0, 0, 0},
                      {0, 0, 1, -1, 0, 0, 0},
                      {0, 0, 0, 1, -1, 0, 0},
                      {0, 0, 0, 0, 1, -1, 0}}};
  CHECK_THROWS_AS(integrability_check(big), ToricError);
}

TEST_CASE("integrability agrees with a dense direction sample") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> entry(0, 3);
  std::uniform_int_distribution<int> ncols(2, 6);
  int done = 0;
  while (done < 120) {
    const int N = ncols(rng);
    std::uniform_int_distribution<int> nrows(1, N - 1);
    const int n = nrows(rng);
    IntTable m(n, IntRow(N));
    for (auto& row : m)
      for (auto& v : row) v = entry(rng);
    if (integer_rank(m) != n || N - n > 4) continue;
    ++done;

    const KernelBasis V = kernel_basis(validate_charge_matrix(m));
    const bool exact = integrability_check(V);
    const bool witness = oracles::sphere_sample_finds_nonpositive(V.rows);
    // a sampled witness proves nonintegrability; the converse may miss
    if (witness) CHECK_FALSE(exact);
  }
}

TEST_CASE("make_toric_data bundles the pieces") {
  const ToricData data = make_toric_data({{1, 1, 1}});
  CHECK(data.integrable);
  CHECK(data.kernel.dim() == 2);
  CHECK(data.jacobian == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_FALSE(make_toric_data({{1, 0}}).integrable);
}
