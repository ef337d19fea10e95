#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace zetauniv {

using Complex = std::complex<double>;

struct HurwitzParams {
  double alpha = 1.0;
};

/// Truncation controls for the Euler-Maclaurin continuation.
///
/// The number of shift terms actually used at height t is
/// max(shift_terms, ceil(1.3 * (|t| + 10))); `shift_terms` is the floor.
struct EvalPrecision {
  int shift_terms = 32;
  int bernoulli_order = 12;
  double target_tol = 1e-10;

  static constexpr int kMaxBernoulliOrder = 17;

  /// Throws PrecisionError when a field is out of range.
  void validate() const;
  [[nodiscard]] int shift_terms_at(double t) const;

  friend bool operator==(const EvalPrecision&, const EvalPrecision&) = default;
};

/// Exact rational p/q with q > 0, not necessarily reduced.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  [[nodiscard]] Rational reduced() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// A Gaussian rational re + i*im.
struct GaussianRational {
  Rational re;
  Rational im;

  [[nodiscard]] Complex value() const { return {re.value(), im.value()}; }
  [[nodiscard]] bool is_zero() const { return re.num == 0 && im.num == 0; }
  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;
};

/// Polynomial with Gaussian-rational coefficients, constant term first.
/// Trailing zero coefficients are stripped so the leading coefficient is
/// nonzero unless the polynomial is the constant 0 (stored as {0}).
class RationalPolynomial {
 public:
  RationalPolynomial();
  explicit RationalPolynomial(std::vector<GaussianRational> coefficients);

  /// Nearest rational approximation of each component with denominator 2^bits.
  static RationalPolynomial approximate(const std::vector<Complex>& coefficients, int bits = 30);

  [[nodiscard]] const std::vector<GaussianRational>& coefficients() const { return coeffs_; }
  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return coeffs_.size() == 1 && coeffs_.front().is_zero(); }
  [[nodiscard]] Complex evaluate(Complex s) const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const RationalPolynomial&, const RationalPolynomial&) = default;

 private:
  std::vector<GaussianRational> coeffs_;
};

/// B_{2k} as an exact fraction, 1 <= k <= EvalPrecision::kMaxBernoulliOrder.
[[nodiscard]] Rational bernoulli_b2k(int k);

/// Euler-Maclaurin evaluation of sum_{n>=0} (n + a)^{-s} for any a > 0.
/// This is the shared core of hurwitz_zeta and riemann_zeta.
[[nodiscard]] Complex hurwitz_core(Complex s, double a, const EvalPrecision& prec = {});

/// zeta(s; alpha) for alpha in (0, 1]; alpha == 1 dispatches to riemann_zeta.
[[nodiscard]] Complex hurwitz_zeta(Complex s, HurwitzParams params, const EvalPrecision& prec = {});

[[nodiscard]] Complex riemann_zeta(Complex s, const EvalPrecision& prec = {});

/// zeta(s) = eta(s) / (1 - 2^{1-s}) where the alternating series for eta is
/// summed directly and its tail is closed with the Euler-Boole formula.
/// Shares no code with the Euler-Maclaurin route.
[[nodiscard]] Complex riemann_zeta_alternating(Complex s, const EvalPrecision& prec = {});

/// Branch of log zeta(s) continued horizontally from 2 + i Im(s).
[[nodiscard]] Complex log_zeta_tracked(Complex s, const EvalPrecision& prec = {});

/// e^{P(s)}; throws OverflowError if Re P(s) > 700.
[[nodiscard]] Complex exp_poly_eval(const RationalPolynomial& p, Complex s);

}  // namespace zetauniv
