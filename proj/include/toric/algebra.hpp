#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "toric/errors.hpp"
#include "toric/linalg.hpp"
#include "toric/reduction.hpp"
#include "toric/toric_data.hpp"

namespace toric {

// ---------------------------------------------------------------------------
// Coefficient rings. The symbolic layer is generic over the coefficients:
// std::complex<double> for numeric work, RationalComplex for exact checks.
// ---------------------------------------------------------------------------

/// Complex number with exact rational real and imaginary parts.
struct RationalComplex {
  BigRat re{0};
  BigRat im{0};

  RationalComplex() = default;
  RationalComplex(long long v) : re(v) {}
  RationalComplex(BigRat r, BigRat i) : re(std::move(r)), im(std::move(i)) {}

  friend RationalComplex operator+(const RationalComplex& a, const RationalComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend RationalComplex operator-(const RationalComplex& a, const RationalComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend RationalComplex operator*(const RationalComplex& a, const RationalComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  RationalComplex operator-() const { return {-re, -im}; }
  RationalComplex& operator+=(const RationalComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  RationalComplex& operator*=(const RationalComplex& o) { return *this = *this * o; }
  friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

template <class C>
struct coeff_traits;

template <>
struct coeff_traits<std::complex<double>> {
  static std::complex<double> from_int(long long v) { return {static_cast<double>(v), 0.0}; }
  static bool is_zero(const std::complex<double>& c) {
    return c.real() == 0.0 && c.imag() == 0.0;
  }
  static bool is_negligible(const std::complex<double>& c) { return std::abs(c) < 1e-12; }
};

template <>
struct coeff_traits<RationalComplex> {
  static RationalComplex from_int(long long v) { return RationalComplex(v); }
  static bool is_zero(const RationalComplex& c) { return c.re == 0 && c.im == 0; }
  static bool is_negligible(const RationalComplex& c) { return is_zero(c); }
};

template <class C>
C coeff_pow(const C& base, unsigned n) {
  C out = coeff_traits<C>::from_int(1);
  for (unsigned i = 0; i < n; ++i) out = out * base;
  return out;
}

inline long long binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  long long r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Stirling numbers of the second kind; (t∂)^m = Σ_k S(m,k) t^k ∂^k.
long long stirling2(unsigned m, unsigned k);

// ---------------------------------------------------------------------------
// Words and normal forms in the algebra generated by E_i, F_i, H_i and the
// central C, with relations
//   [E_i, H_j] = δ_ij E_i,  [F_i, H_j] = −δ_ij F_i,  [E_i, F_j] = δ_ij C,
// all other pairs commuting. Normal order is F-block, H-block, E-block,
// C-power, index-ascending within blocks.
// ---------------------------------------------------------------------------

enum class Gen : std::uint8_t { F = 0, H = 1, E = 2, C = 3 };

struct Letter {
  Gen g = Gen::C;
  int index = 0;  // ignored for the central letter
};

using Word = std::vector<Letter>;

inline Letter gen_f(int i) { return {Gen::F, i}; }
inline Letter gen_h(int i) { return {Gen::H, i}; }
inline Letter gen_e(int i) { return {Gen::E, i}; }
inline Letter gen_c() { return {Gen::C, 0}; }

/// Exponents of one ordered monomial F^f H^h E^e C^c.
struct Monomial {
  std::vector<std::uint16_t> f, h, e;
  std::uint32_t c = 0;

  Monomial() = default;
  explicit Monomial(int nvars)
      : f(static_cast<std::size_t>(nvars), 0),
        h(static_cast<std::size_t>(nvars), 0),
        e(static_cast<std::size_t>(nvars), 0) {}

  auto operator<=>(const Monomial&) const = default;
};

template <class C>
struct NormalForm {
  int nvars = 0;
  std::map<Monomial, C> terms;

  static NormalForm zero(int nvars) { return NormalForm{nvars, {}}; }
  static NormalForm identity(int nvars) {
    NormalForm nf{nvars, {}};
    nf.terms.emplace(Monomial(nvars), coeff_traits<C>::from_int(1));
    return nf;
  }
};

template <class C>
void nf_add_term(NormalForm<C>& nf, const Monomial& m, const C& coeff) {
  if (coeff_traits<C>::is_zero(coeff)) return;
  auto [it, inserted] = nf.terms.emplace(m, coeff);
  if (!inserted) {
    it->second = it->second + coeff;
    if (coeff_traits<C>::is_zero(it->second)) nf.terms.erase(it);
  }
}

/// Right-multiplication of a normal form by one generator. The rewrite
/// rules used to restore order are
///   E^k H = (H + k) E^k,   E^k F = F E^k + k C E^{k−1},   H^b F = F (H+1)^b,
/// applied per coordinate; generators with distinct indices commute.
template <class C>
NormalForm<C> mul_letter(const NormalForm<C>& nf, Letter l) {
  using T = coeff_traits<C>;
  if (l.g != Gen::C && (l.index < 0 || l.index >= nf.nvars))
    fail(Errc::BadShape, "generator index out of range");
  NormalForm<C> out = NormalForm<C>::zero(nf.nvars);
  for (const auto& [m, coeff] : nf.terms) {
    switch (l.g) {
      case Gen::C: {
        Monomial m2 = m;
        ++m2.c;
        nf_add_term(out, m2, coeff);
        break;
      }
      case Gen::E: {
        Monomial m2 = m;
        ++m2.e[l.index];
        nf_add_term(out, m2, coeff);
        break;
      }
      case Gen::H: {
        Monomial m2 = m;
        ++m2.h[l.index];
        nf_add_term(out, m2, coeff);
        if (m.e[l.index] > 0)
          nf_add_term(out, m, coeff * T::from_int(m.e[l.index]));
        break;
      }
      case Gen::F: {
        const int i = l.index;
        const unsigned hb = m.h[i];
        for (unsigned t = 0; t <= hb; ++t) {
          Monomial m2 = m;
          ++m2.f[i];
          m2.h[i] = static_cast<std::uint16_t>(t);
          nf_add_term(out, m2, coeff * T::from_int(binomial(hb, t)));
        }
        if (m.e[i] > 0) {
          Monomial m2 = m;
          --m2.e[i];
          ++m2.c;
          nf_add_term(out, m2, coeff * T::from_int(m.e[i]));
        }
        break;
      }
    }
  }
  return out;
}

template <class C>
NormalForm<C> normal_order(int nvars, const Word& w) {
  NormalForm<C> nf = NormalForm<C>::identity(nvars);
  for (const Letter& l : w) nf = mul_letter(nf, l);
  return nf;
}

inline Word monomial_word(const Monomial& m) {
  Word w;
  for (int i = 0; i < static_cast<int>(m.f.size()); ++i)
    for (unsigned r = 0; r < m.f[i]; ++r) w.push_back(gen_f(i));
  for (int i = 0; i < static_cast<int>(m.h.size()); ++i)
    for (unsigned r = 0; r < m.h[i]; ++r) w.push_back(gen_h(i));
  for (int i = 0; i < static_cast<int>(m.e.size()); ++i)
    for (unsigned r = 0; r < m.e[i]; ++r) w.push_back(gen_e(i));
  for (unsigned r = 0; r < m.c; ++r) w.push_back(gen_c());
  return w;
}

template <class C>
NormalForm<C> nf_mul(const NormalForm<C>& a, const NormalForm<C>& b) {
  NormalForm<C> out = NormalForm<C>::zero(a.nvars);
  for (const auto& [mb, cb] : b.terms) {
    NormalForm<C> partial = a;
    for (const Letter& l : monomial_word(mb)) partial = mul_letter(partial, l);
    for (const auto& [m, c] : partial.terms) nf_add_term(out, m, c * cb);
  }
  return out;
}

template <class C>
NormalForm<C> nf_add(const NormalForm<C>& a, const NormalForm<C>& b) {
  NormalForm<C> out = a;
  for (const auto& [m, c] : b.terms) nf_add_term(out, m, c);
  return out;
}

template <class C>
NormalForm<C> nf_scale(const NormalForm<C>& a, const C& s) {
  NormalForm<C> out = NormalForm<C>::zero(a.nvars);
  for (const auto& [m, c] : a.terms) nf_add_term(out, m, c * s);
  return out;
}

template <class C>
NormalForm<C> nf_sub(const NormalForm<C>& a, const NormalForm<C>& b) {
  return nf_add(a, nf_scale(b, coeff_traits<C>::from_int(-1)));
}

// ---------------------------------------------------------------------------
// Representation on functions of t = (t_1..t_N):
//   F_i = t_i·,  E_i = c ∂_i,  H_i = t_i ∂_i + iλ_i,  C = c.
// ---------------------------------------------------------------------------

template <class C>
struct RepParams {
  int nvars = 0;
  std::vector<C> ilambda;  // the purely imaginary values iλ_i
  C c = coeff_traits<C>::from_int(1);
};

RepParams<std::complex<double>> rep_params(const SpectralParams& p);

/// Exact parameters; finite doubles convert to rationals without loss.
RepParams<RationalComplex> rep_params_exact(const SpectralParams& p);
RepParams<RationalComplex> rep_params_exact(const std::vector<BigRat>& lambda, const BigRat& c);

/// Ordered differential monomial t^t · ∂^d.
struct DiffMonomial {
  std::vector<std::uint16_t> t, d;
  auto operator<=>(const DiffMonomial&) const = default;
};

template <class C>
struct DiffOperator {
  int nvars = 0;
  std::map<DiffMonomial, C> terms;
};

template <class C>
void diff_add_term(DiffOperator<C>& op, const DiffMonomial& m, const C& coeff) {
  if (coeff_traits<C>::is_zero(coeff)) return;
  auto [it, inserted] = op.terms.emplace(m, coeff);
  if (!inserted) {
    it->second = it->second + coeff;
    if (coeff_traits<C>::is_zero(it->second)) op.terms.erase(it);
  }
}

/// Substitutes the representation into an ordered monomial. The H-block
/// expands coordinatewise via (t∂ + iλ)^b = Σ binom·(iλ)^{b−m}·S(m,k)·t^k∂^k;
/// because normal order puts F left of H left of E, the result lands in the
/// canonical t-left-of-∂ form without further commutation.
template <class C>
DiffOperator<C> rep_map(const NormalForm<C>& nf, const RepParams<C>& rp) {
  using T = coeff_traits<C>;
  DiffOperator<C> out;
  out.nvars = nf.nvars;
  for (const auto& [mono, coeff] : nf.terms) {
    unsigned cpow = mono.c;
    for (auto ei : mono.e) cpow += ei;
    const C base = coeff * coeff_pow(rp.c, cpow);

    std::vector<int> hvars;
    for (int i = 0; i < nf.nvars; ++i)
      if (mono.h[i] > 0) hvars.push_back(i);

    // per-coordinate weights w[v][k] for (t∂ + iλ)^{h_v}
    std::vector<std::vector<C>> weights(hvars.size());
    for (std::size_t v = 0; v < hvars.size(); ++v) {
      const int i = hvars[v];
      const unsigned b = mono.h[i];
      std::vector<C> lam_pow(b + 1, T::from_int(1));
      for (unsigned p = 1; p <= b; ++p) lam_pow[p] = lam_pow[p - 1] * rp.ilambda[i];
      weights[v].assign(b + 1, T::from_int(0));
      for (unsigned k = 0; k <= b; ++k) {
        C acc = T::from_int(0);
        for (unsigned mm = k; mm <= b; ++mm) {
          acc += T::from_int(binomial(b, mm) * stirling2(mm, k)) * lam_pow[b - mm];
        }
        weights[v][k] = acc;
      }
    }

    std::vector<unsigned> k(hvars.size(), 0);
    for (;;) {
      C w = base;
      for (std::size_t v = 0; v < hvars.size(); ++v) w = w * weights[v][k[v]];
      DiffMonomial dm;
      dm.t.assign(mono.f.begin(), mono.f.end());
      dm.d.assign(mono.e.begin(), mono.e.end());
      for (std::size_t v = 0; v < hvars.size(); ++v) {
        dm.t[hvars[v]] = static_cast<std::uint16_t>(dm.t[hvars[v]] + k[v]);
        dm.d[hvars[v]] = static_cast<std::uint16_t>(dm.d[hvars[v]] + k[v]);
      }
      diff_add_term(out, dm, w);

      std::size_t v = 0;
      while (v < hvars.size()) {
        if (++k[v] <= mono.h[hvars[v]]) break;
        k[v] = 0;
        ++v;
      }
      if (v == hvars.size()) break;
    }
  }
  return out;
}

/// The polynomial op(t^a), as exponent → coefficient; ∂ acts by falling
/// factorials.
template <class C>
std::map<std::vector<int>, C> apply_diffop(const DiffOperator<C>& op, const std::vector<int>& a) {
  using T = coeff_traits<C>;
  std::map<std::vector<int>, C> out;
  for (const auto& [dm, coeff] : op.terms) {
    long long fall = 1;
    bool vanishes = false;
    for (int i = 0; i < op.nvars; ++i) {
      const int need = dm.d[i];
      if (a[i] < need) {
        vanishes = true;
        break;
      }
      for (int r = 0; r < need; ++r) fall *= (a[i] - r);
    }
    if (vanishes || fall == 0) continue;
    std::vector<int> expo(a.begin(), a.end());
    for (int i = 0; i < op.nvars; ++i) expo[i] += dm.t[i] - dm.d[i];
    const C add = coeff * T::from_int(fall);
    auto [it, inserted] = out.emplace(std::move(expo), add);
    if (!inserted) {
      it->second = it->second + add;
      if (T::is_zero(it->second)) out.erase(it);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Annihilators: Π_j (F_j E_j)^{m_j^α} − Π_j C^{m_j^α} (H_j − iλ_j)^{m_j^α}
// acts as zero in the representation. The corrupted variant flips the minus
// to a plus and serves as a negative control.
// ---------------------------------------------------------------------------

template <class C>
NormalForm<C> annihilator(const ChargeMatrix& m, const RepParams<C>& rp, int alpha,
                          bool corrupt_sign = false) {
  using T = coeff_traits<C>;
  if (alpha < 0 || alpha >= m.n) fail(Errc::BadShape, "row index out of range");

  Word product;
  unsigned total = 0;
  for (int j = 0; j < m.N; ++j) {
    const long long mj = m.at(alpha, j);
    for (long long r = 0; r < mj; ++r) {
      product.push_back(gen_f(j));
      product.push_back(gen_e(j));
    }
    total += static_cast<unsigned>(mj);
  }
  NormalForm<C> first = normal_order<C>(m.N, product);

  NormalForm<C> second = NormalForm<C>::identity(m.N);
  for (int j = 0; j < m.N; ++j) {
    NormalForm<C> factor = NormalForm<C>::zero(m.N);
    Monomial hj(m.N);
    hj.h[j] = 1;
    nf_add_term(factor, hj, T::from_int(1));
    nf_add_term(factor, Monomial(m.N), -rp.ilambda[j]);
    for (long long r = 0; r < m.at(alpha, j); ++r) second = nf_mul(second, factor);
  }
  // central factor C^total
  NormalForm<C> shifted = NormalForm<C>::zero(m.N);
  for (const auto& [mono, c] : second.terms) {
    Monomial m2 = mono;
    m2.c += total;
    nf_add_term(shifted, m2, c);
  }

  return corrupt_sign ? nf_add(first, shifted) : nf_sub(first, shifted);
}

/// True iff the represented annihilator is the zero operator: every normal
/// form coefficient vanishes (exactly for rational coefficients, below 1e−12
/// in modulus for floating ones) and the operator kills all monomials t^a
/// with exponents ≤ 3.
template <class C>
bool verify_annihilator(const ChargeMatrix& m, const RepParams<C>& rp, int alpha,
                        bool corrupt_sign = false) {
  using T = coeff_traits<C>;
  const NormalForm<C> ann = annihilator(m, rp, alpha, corrupt_sign);
  const DiffOperator<C> op = rep_map(ann, rp);
  for (const auto& [dm, c] : op.terms)
    if (!T::is_negligible(c)) return false;

  std::vector<int> a(m.N, 0);
  for (;;) {
    for (const auto& [expo, c] : apply_diffop(op, a))
      if (!T::is_negligible(c)) return false;
    int v = 0;
    while (v < m.N) {
      if (++a[v] <= 3) break;
      a[v] = 0;
      ++v;
    }
    if (v == m.N) break;
  }
  return true;
}

}  // namespace toric
