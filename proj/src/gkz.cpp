#include "toric/gkz.hpp"

#include <string>

namespace toric {

XSpaceOperator gkz_operator(const ChargeMatrix& m, const SpectralParams& params, int alpha) {
  validate_params(params, m.N);
  if (alpha < 0 || alpha >= m.n) fail(Errc::BadShape, "row index out of range");

  XSpaceOperator op;
  op.n = m.n;
  op.shift_alpha = alpha;
  op.poly.emplace(std::vector<int>(m.n, 0), std::complex<double>(1.0, 0.0));

  // multiply by one affine factor (iλ_j + k − Σ_β m_j^β ∂_β) at a time
  for (int j = 0; j < m.N; ++j) {
    for (long long k = 0; k < m.at(alpha, j); ++k) {
      const std::complex<double> constant(static_cast<double>(k), params.lambda[j]);
      std::map<std::vector<int>, std::complex<double>> next;
      for (const auto& [beta, coeff] : op.poly) {
        next[beta] += constant * coeff;
        for (int b = 0; b < m.n; ++b) {
          if (m.at(b, j) == 0) continue;
          std::vector<int> up = beta;
          ++up[b];
          next[up] -= static_cast<double>(m.at(b, j)) * coeff;
        }
      }
      for (auto it = next.begin(); it != next.end();) {
        if (it->second == std::complex<double>(0.0, 0.0))
          it = next.erase(it);
        else
          ++it;
      }
      op.poly = std::move(next);
    }
  }
  return op;
}

int total_degree(const XSpaceOperator& op) {
  int deg = 0;
  for (const auto& [beta, coeff] : op.poly) {
    int d = 0;
    for (int b : beta) d += b;
    deg = std::max(deg, d);
  }
  return deg;
}

std::complex<double> symbol_eval(const XSpaceOperator& op,
                                 const std::vector<std::complex<double>>& d) {
  std::complex<double> out = 0.0;
  for (const auto& [beta, coeff] : op.poly) {
    std::complex<double> term = coeff;
    for (int b = 0; b < op.n; ++b)
      for (int r = 0; r < beta[b]; ++r) term *= d[b];
    out += term;
  }
  return out;
}

std::complex<double> symbol_eval(const XSpaceOperator& op, const std::vector<int>& d) {
  std::vector<std::complex<double>> dd(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) dd[i] = static_cast<double>(d[i]);
  return symbol_eval(op, dd);
}

nlohmann::json xspace_to_json(const XSpaceOperator& op) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [beta, coeff] : op.poly) {
    terms.push_back({{"beta", beta}, {"re", coeff.real()}, {"im", coeff.imag()}});
  }
  return {{"n", op.n}, {"shift_alpha", op.shift_alpha}, {"poly", terms}};
}

XSpaceOperator xspace_from_json(const nlohmann::json& j) {
  XSpaceOperator op;
  try {
    op.n = j.at("n").get<int>();
    op.shift_alpha = j.at("shift_alpha").get<int>();
    for (const auto& term : j.at("poly")) {
      std::vector<int> beta = term.at("beta").get<std::vector<int>>();
      if (static_cast<int>(beta.size()) != op.n)
        fail(Errc::ConfigError, "operator term has wrong multi-index length");
      op.poly[beta] = {term.at("re").get<double>(), term.at("im").get<double>()};
    }
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ConfigError, std::string("bad operator JSON: ") + e.what());
  }
  return op;
}

}  // namespace toric
