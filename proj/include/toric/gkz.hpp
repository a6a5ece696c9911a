#pragma once

#include <complex>
#include <map>
#include <vector>

#include <json.hpp>

#include "toric/reduction.hpp"

namespace toric {

/// Holonomic operator in the x variables: a constant-coefficient polynomial
/// in the partials ∂_{x^β} minus the shift term e^{x^α}. The polynomial part
/// expands Π_j Π_{k=0}^{m_j^α−1} (iλ_j + k − Σ_β m_j^β ∂_{x^β}) and has
/// total degree Σ_j m_j^α.
struct XSpaceOperator {
  int n = 0;
  int shift_alpha = 0;  // 0-based row index of the e^{x^α} term
  std::map<std::vector<int>, std::complex<double>> poly;
};

XSpaceOperator gkz_operator(const ChargeMatrix& m, const SpectralParams& params, int alpha);

int total_degree(const XSpaceOperator& op);

/// Polynomial part evaluated with ∂_{x^β} ↦ d_β; this is the factor the
/// operator's derivative terms produce on the exponential e^{d·x}.
std::complex<double> symbol_eval(const XSpaceOperator& op,
                                 const std::vector<std::complex<double>>& d);
std::complex<double> symbol_eval(const XSpaceOperator& op, const std::vector<int>& d);

nlohmann::json xspace_to_json(const XSpaceOperator& op);
XSpaceOperator xspace_from_json(const nlohmann::json& j);

}  // namespace toric
