#include "toric/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

namespace toric {

namespace {

using Vec3 = std::array<double, 3>;
using Fn3 = std::function<Vec3(double)>;

// Gauss–Kronrod 7/15 nodes and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694};

struct Segment {
  double a = 0.0, b = 0.0;
  Vec3 val{0.0, 0.0, 0.0};
  double err = 0.0;
};

struct SegmentOrder {
  bool operator()(const Segment& x, const Segment& y) const { return x.err < y.err; }
};

Segment gk15(const Fn3& f, double a, double b, long& evaluations) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Vec3 resk{0.0, 0.0, 0.0};
  double resg_re = 0.0, resg_im = 0.0;

  const Vec3 fc = f(center);
  for (int i = 0; i < 3; ++i) resk[i] = kWgk[7] * fc[i];
  resg_re = kWg[3] * fc[0];
  resg_im = kWg[3] * fc[1];

  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    const Vec3 lo = f(center - dx);
    const Vec3 hi = f(center + dx);
    for (int k = 0; k < 3; ++k) resk[k] += kWgk[i] * (lo[k] + hi[k]);
    if (i % 2 == 1) {
      resg_re += kWg[i / 2] * (lo[0] + hi[0]);
      resg_im += kWg[i / 2] * (lo[1] + hi[1]);
    }
  }
  evaluations += 15;

  Segment seg;
  seg.a = a;
  seg.b = b;
  for (int k = 0; k < 3; ++k) seg.val[k] = resk[k] * half;
  seg.err = std::hypot((resk[0] - resg_re) * half, (resk[1] - resg_im) * half);
  return seg;
}

}  // namespace

void validate_settings(const QuadratureSettings& s) {
  auto in_unit = [](double v) { return v > 0.0 && v < 1.0; };
  if (!in_unit(s.abs_tol) || !in_unit(s.rel_tol))
    fail(Errc::BadSettings, "tolerances must lie in (0, 1)");
  if (!(s.truncation_margin > 0.0))
    fail(Errc::BadSettings, "truncation margin must be positive");
  if (s.max_subdivisions < 1) fail(Errc::BadSettings, "max_subdivisions must be >= 1");
}

Quad1dResult adaptive_gk(const Fn3& f, double a, double b, double abs_tol, double rel_tol,
                         int max_subdivisions) {
  Quad1dResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }

  std::priority_queue<Segment, std::vector<Segment>, SegmentOrder> active;
  std::vector<Segment> settled;  // segments too narrow to split further
  active.push(gk15(f, a, b, out.evaluations));

  Vec3 total = active.top().val;
  double total_err = active.top().err;

  auto tolerance = [&] {
    return std::max(abs_tol, rel_tol * std::hypot(total[0], total[1]));
  };

  int splits = 0;
  while (total_err > tolerance() && !active.empty() && splits < max_subdivisions) {
    Segment worst = active.top();
    active.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      settled.push_back(worst);  // width at rounding limit
      continue;
    }
    Segment left = gk15(f, worst.a, mid, out.evaluations);
    Segment right = gk15(f, mid, worst.b, out.evaluations);
    for (int k = 0; k < 3; ++k)
      total[k] += left.val[k] + right.val[k] - worst.val[k];
    total_err += left.err + right.err - worst.err;
    active.push(left);
    active.push(right);
    ++splits;
  }

  // Recompute the sums from the surviving segments; the incremental updates
  // above can drift after many splits.
  total = {0.0, 0.0, 0.0};
  total_err = 0.0;
  auto absorb = [&](const Segment& s) {
    for (int k = 0; k < 3; ++k) total[k] += s.val[k];
    total_err += s.err;
  };
  for (const auto& s : settled) absorb(s);
  while (!active.empty()) {
    absorb(active.top());
    active.pop();
  }

  out.value = {total[0], total[1]};
  out.carried = total[2];
  out.error = total_err;
  out.converged = total_err <= tolerance();
  return out;
}

Quad1dResult integrate_1d(const std::function<std::complex<double>(double)>& f, double a,
                          double b, double abs_tol, double rel_tol, int max_subdivisions) {
  return adaptive_gk(
      [&f](double t) {
        const std::complex<double> v = f(t);
        return Vec3{v.real(), v.imag(), 0.0};
      },
      a, b, abs_tol, rel_tol, max_subdivisions);
}

namespace {

// Bounding box of the polytope {s : w_j·s ≤ c_j} by enumerating candidate
// vertices (intersections of K constraint hyperplanes). The polytope is
// bounded whenever the kernel is integrable.
Box polytope_box(const std::vector<std::vector<double>>& w, const std::vector<double>& c,
                 int K) {
  const int M = static_cast<int>(w.size());
  auto feasible = [&](const std::vector<double>& s) {
    for (int j = 0; j < M; ++j) {
      double dot = 0.0;
      for (int k = 0; k < K; ++k) dot += w[j][k] * s[k];
      if (dot > c[j] + 1e-9 * (1.0 + std::abs(c[j]))) return false;
    }
    return true;
  };

  Box box;
  box.lo.assign(K, 0.0);
  box.hi.assign(K, 0.0);
  bool found = false;

  std::vector<std::vector<double>> a(K, std::vector<double>(K));
  std::vector<double> rhs(K), vertex;

  // iterate over all K-subsets of the M constraints
  std::vector<int> subset(K);
  auto visit = [&](const std::vector<int>& sel) {
    for (int r = 0; r < K; ++r) {
      a[r].assign(w[sel[r]].begin(), w[sel[r]].end());
      rhs[r] = c[sel[r]];
    }
    if (!solve_dense(a, rhs, vertex)) return;
    if (!feasible(vertex)) return;
    if (!found) {
      box.lo = vertex;
      box.hi = vertex;
      found = true;
    } else {
      for (int k = 0; k < K; ++k) {
        box.lo[k] = std::min(box.lo[k], vertex[k]);
        box.hi[k] = std::max(box.hi[k], vertex[k]);
      }
    }
  };

  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == K) {
      visit(subset);
      return;
    }
    for (int j = start; j <= M - (K - depth); ++j) {
      subset[depth] = j;
      rec(j + 1, depth + 1);
    }
  };
  rec(0, 0);

  if (!found)
    fail(Errc::NotConverged, "truncation region has no vertices; cannot bound the domain");
  for (int k = 0; k < K; ++k) {
    const double pad = 1e-6 * (1.0 + box.hi[k] - box.lo[k]);
    box.lo[k] -= pad;
    box.hi[k] += pad;
  }
  return box;
}

}  // namespace

Box truncation_box(const ReducedIntegrand& f, const QuadratureSettings& s) {
  const int K = f.dim();
  if (K == 0) return Box{};
  const int N = f.ambient();
  double level = std::log(std::log(100.0 / s.abs_tol)) + s.truncation_margin;
  double anchor = f.u0.empty() ? 0.0 : *std::max_element(f.u0.begin(), f.u0.end());
  level = std::max(level, anchor + s.truncation_margin);

  std::vector<std::vector<double>> w(N, std::vector<double>(K));
  std::vector<double> c(N);
  for (int j = 0; j < N; ++j) {
    for (int k = 0; k < K; ++k) w[j][k] = static_cast<double>(f.V.rows[k][j]);
    c[j] = level - f.u0[j];
  }
  return polytope_box(w, c, K);
}

namespace {

struct IteratedIntegrator {
  const ReducedIntegrand* f = nullptr;
  Box box;
  QuadratureSettings settings;
  long f_evaluations = 0;  // calls to the reduced integrand itself

  // Integrates over axes [level, K); s[0..level) are fixed.
  Quad1dResult run(int level, std::vector<double>& s, double abs_tol, double rel_tol) {
    const int K = f->dim();
    const double lo = box.lo[level];
    const double hi = box.hi[level];
    Fn3 integrand;
    if (level == K - 1) {
      integrand = [&](double t) {
        s[level] = t;
        ++f_evaluations;
        const std::complex<double> v = (*f)(s);
        return Vec3{v.real(), v.imag(), 0.0};
      };
    } else {
      const double inner_abs = 0.5 * abs_tol / std::max(1.0, hi - lo);
      const double inner_rel = 0.5 * rel_tol;
      integrand = [&, inner_abs, inner_rel](double t) {
        s[level] = t;
        Quad1dResult inner = run(level + 1, s, inner_abs, inner_rel);
        return Vec3{inner.value.real(), inner.value.imag(), inner.error + inner.carried};
      };
    }
    return adaptive_gk(integrand, lo, hi, abs_tol, rel_tol, settings.max_subdivisions);
  }
};

}  // namespace

PeriodValue integrate_reduced(const ReducedIntegrand& f, const QuadratureSettings& s) {
  validate_settings(s);
  const int K = f.dim();
  if (K > 3)
    fail(Errc::DimensionTooLarge,
         "period evaluation supports kernel dimension <= 3, got " + std::to_string(K));

  PeriodValue out;
  if (K == 0) {
    double phase = 0.0, decay = 0.0;
    for (int j = 0; j < f.ambient(); ++j) {
      phase += f.params.lambda[j] * f.u0[j];
      decay += std::exp(f.u0[j]);
    }
    const double mag = f.jacobian * std::exp(-decay);
    out.value = {mag * std::cos(phase), mag * std::sin(phase)};
    out.error_estimate = 0.0;
    out.evaluations = 1;
    return out;
  }

  IteratedIntegrator it;
  it.f = &f;
  it.box = truncation_box(f, s);
  it.settings = s;

  std::vector<double> scratch(K, 0.0);
  const double target_abs = 0.5 * s.abs_tol / std::max(f.jacobian, 1e-300);
  const double target_rel = 0.5 * s.rel_tol;
  Quad1dResult r = it.run(0, scratch, target_abs, target_rel);

  // bound on the mass discarded outside the truncation region
  const double level = std::log(std::log(100.0 / s.abs_tol)) + s.truncation_margin;
  double volume = 1.0;
  for (int k = 0; k < K; ++k) volume *= (it.box.hi[k] - it.box.lo[k]);
  const double tail = std::exp(-std::exp(level)) * (1.0 + volume);

  out.value = f.jacobian * r.value;
  out.error_estimate = f.jacobian * (r.error + r.carried + tail);
  out.evaluations = it.f_evaluations;

  const double allowed = std::max(s.abs_tol, s.rel_tol * std::abs(out.value));
  if (out.error_estimate > allowed)
    fail(Errc::NotConverged, "error estimate " + std::to_string(out.error_estimate) +
                                 " above tolerance " + std::to_string(allowed));
  return out;
}

PeriodValue evaluate_period(const ToricData& data, const SpectralParams& params,
                            const std::vector<double>& x, const QuadratureSettings& s) {
  validate_settings(s);
  return integrate_reduced(log_reduce(data, params, x), s);
}

PeriodValue evaluate_matrix_element(const ToricData& data, const SpectralParams& params,
                                    const std::vector<double>& y, const QuadratureSettings& s) {
  if (static_cast<int>(y.size()) != data.charge.N)
    fail(Errc::BadShape, "y must have one entry per ambient coordinate");
  std::vector<double> x(data.charge.n, 0.0);
  for (int a = 0; a < data.charge.n; ++a) {
    double dot = 0.0;
    for (int j = 0; j < data.charge.N; ++j)
      dot += static_cast<double>(data.charge.at(a, j)) * y[j];
    x[a] = dot;
  }
  return evaluate_period(data, params, x, s);
}

double bessel_k_oracle(double mu, double z, const QuadratureSettings& s) {
  validate_settings(s);
  if (!(z > 0.0) || !std::isfinite(z)) fail(Errc::BadSettings, "bessel oracle requires z > 0");
  const double tail = std::min(1e-16, 0.01 * s.abs_tol);
  const double reach = std::max(1.0, -std::log(tail) / z);
  const double theta_max = std::acosh(reach) + 1.0;
  auto f = [mu, z](double theta) {
    return std::exp(-z * std::cosh(theta)) * std::cos(mu * theta);
  };
  Quad1dResult r = integrate_1d([&f](double t) { return std::complex<double>(f(t), 0.0); },
                                0.0, theta_max, 0.5 * s.abs_tol, 0.5 * s.rel_tol,
                                s.max_subdivisions);
  if (!r.converged)
    fail(Errc::NotConverged, "bessel oracle quadrature did not reach tolerance");
  return r.value.real();
}

std::complex<double> p1_closed_form(double lambda1, double lambda2, double x,
                                    const QuadratureSettings& s) {
  const double mu = lambda1 - lambda2;
  const double z = 2.0 * std::exp(0.5 * x);
  const double bessel = bessel_k_oracle(mu, z, s);
  const std::complex<double> phase =
      std::exp(std::complex<double>(0.0, lambda2 * x)) *
      std::exp(std::complex<double>(0.0, 0.5 * mu * x));
  return 2.0 * phase * bessel;
}

}  // namespace toric
