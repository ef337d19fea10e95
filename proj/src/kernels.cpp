#include "zetauniv/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "zetauniv/errors.hpp"

namespace zetauniv {

namespace {

constexpr double kPoleRadius = 1e-12;
constexpr double kLogStep = 0.05;
constexpr double kZeroProximity = 1e-6;
constexpr int kMaxLogSteps = 20000;

// B_2 .. B_34; B_36 no longer fits a 64-bit numerator.
constexpr std::array<Rational, EvalPrecision::kMaxBernoulliOrder> kBernoulli = {{
    {1, 6},
    {-1, 30},
    {1, 42},
    {-1, 30},
    {5, 66},
    {-691, 2730},
    {7, 6},
    {-3617, 510},
    {43867, 798},
    {-174611, 330},
    {854513, 138},
    {-236364091, 2730},
    {8553103, 6},
    {-23749461029, 870},
    {8615841276005, 14322},
    {-7709321041217, 510},
    {2577687858367, 6},
}};

// B_{2k} / (2k)! in double, k = 1..kMaxBernoulliOrder (index k-1).
const std::array<double, EvalPrecision::kMaxBernoulliOrder>& bernoulli_over_factorial() {
  static const auto table = [] {
    std::array<double, EvalPrecision::kMaxBernoulliOrder> out{};
    long double factorial = 1.0L;
    for (int k = 1; k <= EvalPrecision::kMaxBernoulliOrder; ++k) {
      factorial *= static_cast<long double>(2 * k - 1) * static_cast<long double>(2 * k);
      const auto& b = kBernoulli[k - 1];
      out[k - 1] = static_cast<double>(static_cast<long double>(b.num) /
                                       static_cast<long double>(b.den) / factorial);
    }
    return out;
  }();
  return table;
}

// Taylor coefficients of 1 / (1 + e^x), from (2 + sum_{j>=1} x^j / j!) * A(x) = 1.
const std::vector<double>& euler_boole_coefficients() {
  static const auto table = [] {
    constexpr int kCount = 2 * EvalPrecision::kMaxBernoulliOrder + 1;
    std::vector<long double> a(kCount, 0.0L);
    std::vector<long double> inv_fact(kCount, 1.0L);
    for (int j = 1; j < kCount; ++j) inv_fact[j] = inv_fact[j - 1] / static_cast<long double>(j);
    a[0] = 0.5L;
    for (int n = 1; n < kCount; ++n) {
      long double acc = 0.0L;
      for (int j = 1; j <= n; ++j) acc += a[n - j] * inv_fact[j];
      a[n] = -0.5L * acc;
    }
    return std::vector<double>(a.begin(), a.end());
  }();
  return table;
}

// log(n) for small n; the Riemann case sums (n+1)^{-s} over exactly these.
const std::vector<double>& integer_logs() {
  static const auto table = [] {
    std::vector<double> out(1 << 16);
    for (std::size_t n = 1; n < out.size(); ++n) out[n] = std::log(static_cast<double>(n));
    return out;
  }();
  return table;
}

double log_of_integer(std::int64_t n) {
  const auto& table = integer_logs();
  if (static_cast<std::size_t>(n) < table.size()) return table[static_cast<std::size_t>(n)];
  return std::log(static_cast<double>(n));
}

// x^{-s} given log x.
Complex power_neg(Complex s, double log_x) {
  return std::polar(std::exp(-s.real() * log_x), -s.imag() * log_x);
}

void check_pole(Complex s) {
  if (std::abs(s - 1.0) < kPoleRadius) {
    std::ostringstream msg;
    msg << "s = " << s.real() << (s.imag() < 0 ? "" : "+") << s.imag() << "i is within "
        << kPoleRadius << " of the pole at 1";
    throw PoleError(msg.str());
  }
}

// Upper half plane only; callers reflect.
Complex hurwitz_em_upper(Complex s, double a, const EvalPrecision& prec) {
  const int terms = prec.shift_terms_at(s.imag());
  const bool integer_shift = (a == 1.0);

  Complex sum = 0.0;
  for (int n = 0; n < terms; ++n) {
    const double log_x = integer_shift ? log_of_integer(n + 1) : std::log(n + a);
    sum += power_neg(s, log_x);
  }

  const double x = terms + a;
  const double log_x = integer_shift ? log_of_integer(terms + 1) : std::log(x);
  const Complex x_neg_s = power_neg(s, log_x);
  sum += x * x_neg_s / (s - 1.0) + 0.5 * x_neg_s;

  // Correction k carries s(s+1)...(s+2k-2) x^{-s-2k+1}.
  const auto& coeff = bernoulli_over_factorial();
  Complex rising = s * x_neg_s / x;
  const double inv_x2 = 1.0 / (x * x);
  double last = 0.0;
  for (int k = 1; k <= prec.bernoulli_order; ++k) {
    if (k > 1) {
      rising *= (s + static_cast<double>(2 * k - 3)) * (s + static_cast<double>(2 * k - 2)) * inv_x2;
    }
    const Complex term = coeff[k - 1] * rising;
    sum += term;
    last = std::abs(term);
  }
  if (!(last <= prec.target_tol) || !std::isfinite(sum.real()) || !std::isfinite(sum.imag())) {
    std::ostringstream msg;
    msg << "Euler-Maclaurin tail estimate " << last << " exceeds tolerance " << prec.target_tol;
    throw PrecisionError(msg.str());
  }
  return sum;
}

Complex eta_upper(Complex s, const EvalPrecision& prec) {
  const int n_terms = std::max(40, static_cast<int>(std::ceil(2.0 * s.imag() + 20.0)));

  // sum_{n<N} (-1)^{n-1} n^{-s}
  Complex partial = 0.0;
  for (int n = 1; n < n_terms; ++n) {
    const Complex term = power_neg(s, std::log(static_cast<double>(n)));
    partial += (n % 2 == 1) ? term : -term;
  }

  // sum_{j>=0} (-1)^j f(N + j) = sum_k a_k f^{(k)}(N) with f(x) = x^{-s}.
  const auto& a = euler_boole_coefficients();
  const double big_n = n_terms;
  const Complex f0 = power_neg(s, std::log(big_n));
  Complex derivative = f0;  // f^{(k)}(N) = (-1)^k (s)_k N^{-s-k}
  Complex tail = a[0] * f0;
  double last = 0.0;
  const int max_order = 2 * prec.bernoulli_order - 1;
  for (int k = 1; k <= max_order; ++k) {
    derivative *= -(s + static_cast<double>(k - 1)) / big_n;
    if (k % 2 == 1) {
      const Complex term = a[k] * derivative;
      tail += term;
      last = std::abs(term);
    }
  }
  if (!(last <= prec.target_tol)) {
    std::ostringstream msg;
    msg << "Euler-Boole tail estimate " << last << " exceeds tolerance " << prec.target_tol;
    throw PrecisionError(msg.str());
  }
  const double sign = (n_terms % 2 == 1) ? 1.0 : -1.0;  // (-1)^{N-1}
  return partial + sign * tail;
}

}  // namespace

void EvalPrecision::validate() const {
  if (shift_terms < 1) throw PrecisionError("shift_terms must be >= 1");
  if (bernoulli_order < 1 || bernoulli_order > kMaxBernoulliOrder) {
    throw PrecisionError("bernoulli_order must lie in [1, " + std::to_string(kMaxBernoulliOrder) + "]");
  }
  if (!(target_tol > 0.0) || !std::isfinite(target_tol)) throw PrecisionError("target_tol must be > 0");
}

int EvalPrecision::shift_terms_at(double t) const {
  const double scaled = std::ceil(1.3 * (std::abs(t) + 10.0));
  return std::max(shift_terms, static_cast<int>(scaled));
}

Rational Rational::reduced() const {
  if (den == 0) return *this;
  const std::int64_t g = std::gcd(num, den);
  Rational out{num / g, den / g};
  if (out.den < 0) {
    out.num = -out.num;
    out.den = -out.den;
  }
  return out;
}

RationalPolynomial::RationalPolynomial() : coeffs_{GaussianRational{}} {}

RationalPolynomial::RationalPolynomial(std::vector<GaussianRational> coefficients)
    : coeffs_(std::move(coefficients)) {
  for (auto& c : coeffs_) {
    if (c.re.den == 0 || c.im.den == 0) throw DomainError("rational coefficient with zero denominator");
    c.re = c.re.reduced();
    c.im = c.im.reduced();
  }
  while (coeffs_.size() > 1 && coeffs_.back().is_zero()) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(GaussianRational{});
}

RationalPolynomial RationalPolynomial::approximate(const std::vector<Complex>& coefficients, int bits) {
  const double scale = std::ldexp(1.0, bits);
  auto to_rational = [&](double x) {
    const double scaled = std::round(x * scale);
    if (!(std::abs(scaled) < 9.0e18)) throw OverflowError("coefficient too large to rationalize");
    return Rational{static_cast<std::int64_t>(scaled), static_cast<std::int64_t>(scale)};
  };
  std::vector<GaussianRational> out;
  out.reserve(coefficients.size());
  for (const auto& c : coefficients) out.push_back({to_rational(c.real()), to_rational(c.imag())});
  return RationalPolynomial(std::move(out));
}

Complex RationalPolynomial::evaluate(Complex s) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + it->value();
  return acc;
}

std::string RationalPolynomial::to_string() const {
  auto fmt = [](const Rational& r) {
    return r.den == 1 ? std::to_string(r.num) : std::to_string(r.num) + "/" + std::to_string(r.den);
  };
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (k > 0) out += ",";
    const auto& c = coeffs_[k];
    out += fmt(c.re);
    if (c.im.num != 0) {
      out += c.im.num < 0 ? "-" : "+";
      out += fmt(Rational{std::abs(c.im.num), c.im.den});
      out += "i";
    }
  }
  return out;
}

Rational bernoulli_b2k(int k) {
  if (k < 1 || k > EvalPrecision::kMaxBernoulliOrder) throw DomainError("Bernoulli index out of range");
  return kBernoulli[k - 1];
}

Complex hurwitz_core(Complex s, double a, const EvalPrecision& prec) {
  prec.validate();
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("Hurwitz shift parameter must be > 0");
  check_pole(s);
  if (s.imag() < 0.0) return std::conj(hurwitz_em_upper(std::conj(s), a, prec));
  return hurwitz_em_upper(s, a, prec);
}

Complex riemann_zeta(Complex s, const EvalPrecision& prec) { return hurwitz_core(s, 1.0, prec); }

Complex hurwitz_zeta(Complex s, HurwitzParams params, const EvalPrecision& prec) {
  if (!(params.alpha > 0.0 && params.alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
  if (params.alpha == 1.0) return riemann_zeta(s, prec);
  return hurwitz_core(s, params.alpha, prec);
}

Complex riemann_zeta_alternating(Complex s, const EvalPrecision& prec) {
  prec.validate();
  check_pole(s);
  const bool lower = s.imag() < 0.0;
  const Complex upper = lower ? std::conj(s) : s;
  const Complex factor = 1.0 - std::pow(2.0, 1.0 - upper);
  if (std::abs(factor) < kPoleRadius) throw PoleError("1 - 2^{1-s} vanishes; alternating route undefined");
  const Complex value = eta_upper(upper, prec) / factor;
  return lower ? std::conj(value) : value;
}

Complex log_zeta_tracked(Complex s, const EvalPrecision& prec) {
  if (!(s.real() > 0.5)) throw DomainError("log_zeta_tracked requires Re(s) > 1/2");
  const double t = s.imag();
  if (s.real() < 1.0 && std::abs(t) < 1e-9) throw PoleError("log continuation path crosses the pole at s = 1");
  constexpr double kTwoPi = 2.0 * std::numbers::pi;

  auto zeta_at = [&](double sigma) {
    const Complex z = riemann_zeta({sigma, t}, prec);
    if (std::abs(z) < kZeroProximity) {
      std::ostringstream msg;
      msg << "|zeta| = " << std::abs(z) << " at " << sigma << (t < 0 ? "" : "+") << t
          << "i on the continuation path";
      throw ZeroProximityError(msg.str());
    }
    return z;
  };
  auto continue_from = [&](Complex previous, Complex z) {
    const double arg = std::arg(z);
    const double winding = std::round((previous.imag() - arg) / kTwoPi);
    return Complex{std::log(std::abs(z)), arg + kTwoPi * winding};
  };

  // At sigma = 2, |Im log zeta| <= log zeta(2) < pi, so the principal value
  // equals the log of the Euler product.
  Complex current = std::log(zeta_at(2.0));
  const double start = 2.0;
  const double distance = s.real() - start;
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(distance) / kLogStep)));
  if (steps > kMaxLogSteps) throw PrecisionError("log continuation path too long");

  int evaluations = 0;
  // Halves a step while the unwound phase jumps by more than pi/3.
  auto advance = [&](auto&& self, double from, double to, Complex value, int depth) -> Complex {
    if (++evaluations > 4 * kMaxLogSteps) throw PrecisionError("log continuation step budget exceeded");
    const Complex next = continue_from(value, zeta_at(to));
    if (std::abs(next.imag() - value.imag()) <= std::numbers::pi / 3.0 || depth >= 12) return next;
    const double mid = 0.5 * (from + to);
    const Complex halfway = self(self, from, mid, value, depth + 1);
    return self(self, mid, to, halfway, depth + 1);
  };

  double sigma = start;
  for (int k = 1; k <= steps; ++k) {
    const double next_sigma = (k == steps) ? s.real() : start + distance * k / steps;
    current = advance(advance, sigma, next_sigma, current, 0);
    sigma = next_sigma;
  }
  return current;
}

Complex exp_poly_eval(const RationalPolynomial& p, Complex s) {
  const Complex exponent = p.evaluate(s);
  if (exponent.real() > 700.0) throw OverflowError("Re P(s) > 700 overflows e^{P(s)}");
  if (exponent.real() < -700.0) throw OverflowError("Re P(s) < -700 underflows e^{P(s)} to zero");
  return std::exp(exponent);
}

}  // namespace zetauniv
