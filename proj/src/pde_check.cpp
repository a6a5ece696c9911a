#include "toric/pde_check.hpp"

#include <cmath>
#include <string>

#include "toric/parallel.hpp"

namespace toric {

std::size_t GridFunction::flat_index(const std::vector<int>& idx) const {
  std::size_t flat = 0;
  for (int a = 0; a < dims(); ++a) {
    if (idx[a] < 0 || idx[a] >= shape[a])
      fail(Errc::StencilOutOfRange, "grid index " + std::to_string(idx[a]) +
                                        " outside axis of size " + std::to_string(shape[a]));
    flat = flat * static_cast<std::size_t>(shape[a]) + static_cast<std::size_t>(idx[a]);
  }
  return flat;
}

std::complex<double> GridFunction::at(const std::vector<int>& idx) const {
  return values[flat_index(idx)];
}

std::vector<double> GridFunction::point(const std::vector<int>& idx) const {
  std::vector<double> x(dims());
  for (int a = 0; a < dims(); ++a) x[a] = origin[a] + h * idx[a];
  return x;
}

std::vector<int> GridFunction::grid_index(const std::vector<double>& x0) const {
  std::vector<int> idx(dims());
  for (int a = 0; a < dims(); ++a) {
    const double raw = (x0[a] - origin[a]) / h;
    const int i = static_cast<int>(std::lround(raw));
    if (std::abs(raw - i) > 1e-6)
      fail(Errc::StencilOutOfRange, "x0 does not lie on the grid");
    idx[a] = i;
  }
  return idx;
}

GridFunction sample_grid(const GridSpec& spec, const PointFn& f, int threads) {
  const int n = static_cast<int>(spec.min.size());
  if (static_cast<int>(spec.max.size()) != n || n == 0)
    fail(Errc::BadShape, "grid spec axes are inconsistent");
  if (!(spec.h > 0.0)) fail(Errc::BadSettings, "grid spacing must be positive");

  GridFunction g;
  g.origin = spec.min;
  g.h = spec.h;
  g.shape.resize(n);
  std::size_t total = 1;
  for (int a = 0; a < n; ++a) {
    const int count = static_cast<int>(std::floor((spec.max[a] - spec.min[a]) / spec.h + 0.5)) + 1;
    if (count < 1) fail(Errc::BadShape, "empty grid axis");
    g.shape[a] = count;
    total *= static_cast<std::size_t>(count);
  }
  g.values.assign(total, {0.0, 0.0});

  parallel_for(total, threads, [&](std::size_t flat) {
    std::vector<int> idx(n);
    std::size_t rem = flat;
    for (int a = n - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(rem % g.shape[a]);
      rem /= g.shape[a];
    }
    g.values[flat] = f(g.point(idx));
  });
  return g;
}

std::vector<double> central_stencil(int order) {
  if (order < 0) fail(Errc::BadSettings, "derivative order must be nonnegative");
  if (order == 0) return {1.0};
  const int r = stencil_radius(order);
  const int npts = 2 * r + 1;
  // moment conditions: Σ c_o o^m = m!·δ_{m,order} for m = 0..2r
  std::vector<std::vector<double>> a(npts, std::vector<double>(npts));
  std::vector<double> rhs(npts, 0.0);
  for (int mrow = 0; mrow < npts; ++mrow) {
    for (int o = -r; o <= r; ++o) a[mrow][o + r] = std::pow(static_cast<double>(o), mrow);
    if (mrow == order) {
      double fact = 1.0;
      for (int i = 2; i <= order; ++i) fact *= i;
      rhs[mrow] = fact;
    }
  }
  std::vector<double> coeffs;
  if (!solve_dense(a, rhs, coeffs))
    fail(Errc::BadSettings, "stencil system is singular");  // unreachable for r >= 1
  return coeffs;
}

std::complex<double> fd_partial(const GridFunction& f, const std::vector<int>& center,
                                const std::vector<int>& beta) {
  const int n = f.dims();
  std::vector<int> axes;
  std::vector<std::vector<double>> stencils;
  int total_order = 0;
  for (int a = 0; a < n; ++a) {
    total_order += beta[a];
    if (beta[a] > 0) {
      axes.push_back(a);
      stencils.push_back(central_stencil(beta[a]));
    }
  }
  if (axes.empty()) return f.at(center);

  std::vector<int> offs(axes.size(), 0);  // offset index within each stencil
  std::vector<int> idx = center;
  std::complex<double> acc = 0.0;
  for (;;) {
    double w = 1.0;
    for (std::size_t v = 0; v < axes.size(); ++v) {
      const int r = stencil_radius(beta[axes[v]]);
      idx[axes[v]] = center[axes[v]] + (offs[v] - r);
      w *= stencils[v][offs[v]];
    }
    if (w != 0.0) acc += w * f.at(idx);

    std::size_t v = 0;
    while (v < axes.size()) {
      const int npts = static_cast<int>(stencils[v].size());
      if (++offs[v] < npts) break;
      offs[v] = 0;
      ++v;
    }
    if (v == axes.size()) break;
  }
  return acc / std::pow(f.h, total_order);
}

FdResult fd_apply(const XSpaceOperator& op, const GridFunction& f,
                  const std::vector<int>& center) {
  FdResult out;
  for (const auto& [beta, coeff] : op.poly) {
    const std::complex<double> term = coeff * fd_partial(f, center, beta);
    out.value += term;
    out.normalizer += std::abs(term);
  }
  const std::vector<double> x0 = f.point(center);
  const std::complex<double> shift = std::exp(x0[op.shift_alpha]) * f.at(center);
  out.value -= shift;
  out.normalizer += std::abs(shift);
  return out;
}

std::complex<double> fd_apply(const XSpaceOperator& op, const GridFunction& f,
                              const std::vector<double>& x0, double h) {
  if (std::abs(h - f.h) > 1e-12 * std::max(1.0, std::abs(h)))
    fail(Errc::BadSettings, "step size does not match the sampled grid");
  return fd_apply(op, f, f.grid_index(x0)).value;
}

namespace {

std::vector<int> operator_radius(const XSpaceOperator& op, int n) {
  std::vector<int> radius(n, 0);
  for (const auto& [beta, coeff] : op.poly)
    for (int a = 0; a < n; ++a) radius[a] = std::max(radius[a], stencil_radius(beta[a]));
  return radius;
}

}  // namespace

std::vector<ResidualReport> residual_reports(const ChargeMatrix& m, const SpectralParams& params,
                                             const GridFunction& f) {
  std::vector<ResidualReport> reports;
  for (int alpha = 0; alpha < m.n; ++alpha) {
    const XSpaceOperator op = gkz_operator(m, params, alpha);
    const std::vector<int> radius = operator_radius(op, m.n);

    std::vector<int> idx(m.n);
    bool any = true;
    for (int a = 0; a < m.n; ++a) {
      idx[a] = radius[a];
      if (f.shape[a] - 2 * radius[a] < 1) any = false;
    }
    if (!any) continue;

    for (;;) {
      const FdResult r = fd_apply(op, f, idx);
      ResidualReport report;
      report.x0 = f.point(idx);
      report.h = f.h;
      report.alpha = alpha;
      report.residual = r.value;
      report.normalizer = r.normalizer;
      report.normalized_residual =
          r.normalizer > 0.0 ? std::abs(r.value) / r.normalizer : std::abs(r.value);
      reports.push_back(std::move(report));

      int a = m.n - 1;
      for (; a >= 0; --a) {
        if (++idx[a] <= f.shape[a] - 1 - radius[a]) break;
        idx[a] = radius[a];
      }
      if (a < 0) break;
    }
  }
  return reports;
}

std::vector<ResidualReport> verify_system(const ToricData& data, const SpectralParams& params,
                                          const GridSpec& spec, const QuadratureSettings& qs,
                                          int threads) {
  const PointFn sampler = [&](const std::vector<double>& x) {
    return evaluate_period(data, params, x, qs).value;
  };
  const GridFunction grid = sample_grid(spec, sampler, threads);
  return residual_reports(data.charge, params, grid);
}

}  // namespace toric
