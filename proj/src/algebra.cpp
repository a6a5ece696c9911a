#include "toric/algebra.hpp"

namespace toric {

long long stirling2(unsigned m, unsigned k) {
  constexpr unsigned kMax = 25;  // values stay inside long long up to here
  if (m > kMax) fail(Errc::DimensionTooLarge, "stirling2 supports arguments up to 25");
  if (k > m) return 0;
  static const auto table = [] {
    std::vector<std::vector<long long>> s(kMax + 1, std::vector<long long>(kMax + 1, 0));
    s[0][0] = 1;
    for (unsigned mm = 1; mm <= kMax; ++mm)
      for (unsigned kk = 1; kk <= mm; ++kk)
        s[mm][kk] = static_cast<long long>(kk) * s[mm - 1][kk] + s[mm - 1][kk - 1];
    return s;
  }();
  return table[m][k];
}

RepParams<std::complex<double>> rep_params(const SpectralParams& p) {
  RepParams<std::complex<double>> rp;
  rp.nvars = static_cast<int>(p.lambda.size());
  rp.ilambda.reserve(p.lambda.size());
  for (double l : p.lambda) rp.ilambda.emplace_back(0.0, l);
  rp.c = {p.c, 0.0};
  return rp;
}

RepParams<RationalComplex> rep_params_exact(const SpectralParams& p) {
  RepParams<RationalComplex> rp;
  rp.nvars = static_cast<int>(p.lambda.size());
  rp.ilambda.reserve(p.lambda.size());
  for (double l : p.lambda) rp.ilambda.push_back(RationalComplex(BigRat(0), BigRat(l)));
  rp.c = RationalComplex(BigRat(p.c), BigRat(0));
  return rp;
}

RepParams<RationalComplex> rep_params_exact(const std::vector<BigRat>& lambda, const BigRat& c) {
  RepParams<RationalComplex> rp;
  rp.nvars = static_cast<int>(lambda.size());
  rp.ilambda.reserve(lambda.size());
  for (const BigRat& l : lambda) rp.ilambda.push_back(RationalComplex(BigRat(0), l));
  rp.c = RationalComplex(c, BigRat(0));
  return rp;
}

}  // namespace toric
