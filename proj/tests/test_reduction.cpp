#include <doctest.h>

#include <cmath>
#include <random>

#include "toric/reduction.hpp"

using namespace toric;

TEST_CASE("particular solution is the minimum-norm solution") {
  const ChargeMatrix p1 = validate_charge_matrix({{1, 1}});
  CHECK(particular_solution(p1, {0.0}) == std::vector<double>{0.0, 0.0});
  CHECK(particular_solution(p1, {2.0}) == std::vector<double>{1.0, 1.0});

  const ChargeMatrix p2 = validate_charge_matrix({{1, 1, 1}});
  CHECK(particular_solution(p2, {3.0}) == std::vector<double>{1.0, 1.0, 1.0});
}

TEST_CASE("particular solution residual stays tiny") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> entry(0, 3);
  std::uniform_real_distribution<double> xs(-5.0, 5.0);
  int done = 0;
  while (done < 100) {
    const int N = 2 + static_cast<int>(rng() % 4);
    const int n = 1 + static_cast<int>(rng() % (N - 1));
    IntTable m(n, IntRow(N));
    for (auto& row : m)
      for (auto& v : row) v = entry(rng);
    if (integer_rank(m) != n) continue;
    ++done;
    const ChargeMatrix cm = validate_charge_matrix(m);
    std::vector<double> x(n);
    for (auto& v : x) v = xs(rng);
    const auto u0 = particular_solution(cm, x);
    for (int a = 0; a < n; ++a) {
      double dot = 0.0;
      for (int j = 0; j < N; ++j) dot += static_cast<double>(m[a][j]) * u0[j];
      CHECK(std::abs(dot - x[a]) <= 1e-12 * (1.0 + std::abs(x[a])));
    }
  }
}

TEST_CASE("jacobian factor on worked examples") {
  auto jac = [](const IntTable& raw) {
    const ChargeMatrix m = validate_charge_matrix(raw);
    return jacobian_factor(m, kernel_basis(m));
  };
  CHECK(jac({{1, 1}}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(jac({{1, 1, 1}}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(jac({{1}}) == doctest::Approx(1.0).epsilon(1e-14));
  // index-2 image: the delta carries a factor 1/2
  CHECK(jac({{2}}) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(jac({{2, 2}}) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(jac({{1, 1, 2}}) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("log reduction assembles the constrained integrand") {
  const ToricData p1 = make_toric_data({{1, 1}});
  const SpectralParams zero{{0.0, 0.0}, 1.0};
  const ReducedIntegrand f = log_reduce(p1, zero, {0.0});
  CHECK(f.dim() == 1);

  const double s0[] = {0.0};
  CHECK(f(s0).real() == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(f(s0).imag() == 0.0);

  SUBCASE("modulus bounded by one and by the largest coordinate") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> ss(-3.0, 3.0);
    const SpectralParams osc{{0.7, -0.4}, 1.0};
    const ReducedIntegrand g = log_reduce(p1, osc, {0.3});
    std::vector<double> u;
    for (int t = 0; t < 200; ++t) {
      const double s[] = {ss(rng)};
      CHECK(std::abs(g(s)) <= 1.0);
      g.coordinates(s, u);
      const double top = std::max(u[0], u[1]);
      CHECK(std::abs(g(s)) <= std::exp(-std::exp(top)) + 1e-300);
    }
  }

  SUBCASE("vanishing lambda gives a positive real integrand") {
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> ss(-3.0, 3.0);
    for (int t = 0; t < 100; ++t) {
      const double s[] = {ss(rng)};
      CHECK(f(s).imag() == 0.0);
      CHECK(f(s).real() > 0.0);
    }
  }

  SUBCASE("affine constraint is preserved along the slice") {
    const ToricData hirz = make_toric_data({{1, 1, 1, 0}, {0, 0, 1, 1}});
    const SpectralParams params{{0.1, 0.2, -0.3, 0.4}, 1.0};
    const std::vector<double> x{0.7, -0.4};
    const ReducedIntegrand g = log_reduce(hirz, params, x);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ss(-4.0, 4.0);
    std::vector<double> u;
    for (int t = 0; t < 100; ++t) {
      const double s[] = {ss(rng), ss(rng)};
      g.coordinates(s, u);
      for (int a = 0; a < 2; ++a) {
        double dot = 0.0;
        for (int j = 0; j < 4; ++j) dot += static_cast<double>(hirz.charge.at(a, j)) * u[j];
        CHECK(std::abs(dot - x[a]) <= 1e-10);
      }
    }
  }
}

TEST_CASE("log reduction refuses nonintegrable data") {
  const ToricData bad = make_toric_data({{1, 0}});
  CHECK_THROWS_WITH_AS(log_reduce(bad, SpectralParams{{0.0, 0.0}, 1.0}, {0.0}),
                       doctest::Contains("NotIntegrable"), ToricError);
}

TEST_CASE("spectral parameter validation") {
  CHECK_THROWS_AS(validate_params(SpectralParams{{0.0}, 1.0}, 2), ToricError);
  CHECK_THROWS_AS(validate_params(SpectralParams{{0.0, 0.0}, 0.0}, 2), ToricError);
  CHECK_THROWS_AS(validate_params(SpectralParams{{0.0, std::nan("")}, 1.0}, 2), ToricError);
}
