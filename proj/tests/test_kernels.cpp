#include <doctest.h>

#include <cmath>
#include <numbers>

#include "zetauniv/errors.hpp"
#include "zetauniv/kernels.hpp"

using namespace zetauniv;
using namespace std::complex_literals;

namespace {

// Partial sum of n^{-p} up to N plus the midpoint of the integral tail
// bracket [int_{N+1}^inf, int_N^inf]. Returns {estimate, half-width}.
std::pair<double, double> power_sum_oracle(int p, long n_terms) {
  long double sum = 0.0L;
  for (long n = n_terms; n >= 1; --n) sum += 1.0L / std::pow(static_cast<long double>(n), p);
  const long double hi = 1.0L / ((p - 1) * std::pow(static_cast<long double>(n_terms), p - 1));
  const long double lo = 1.0L / ((p - 1) * std::pow(static_cast<long double>(n_terms + 1), p - 1));
  return {static_cast<double>(sum + (hi + lo) / 2), static_cast<double>((hi - lo) / 2)};
}

}  // namespace

TEST_CASE("zeta(2) and zeta(3) match partial sums with integral tails") {
  const auto [z2, w2] = power_sum_oracle(2, 2'000'000);
  CHECK(w2 < 1e-12);
  CHECK(std::abs(riemann_zeta(2.0) - z2) <= w2 + 1e-14);
  CHECK(riemann_zeta(2.0).imag() == 0.0);

  const auto [z3, w3] = power_sum_oracle(3, 200'000);
  CHECK(w3 < 1e-12);
  CHECK(std::abs(riemann_zeta(3.0) - z3) <= w3 + 1e-14);
}

TEST_CASE("hurwitz with alpha = 1 is riemann_zeta") {
  for (const Complex s : {Complex{2.0}, Complex{0.75, 10.0}, Complex{0.6, -123.4}}) {
    CHECK(hurwitz_zeta(s, {1.0}) == riemann_zeta(s));
  }
}

TEST_CASE("even/odd split: zeta(s; 1/2) = (2^s - 1) zeta(s)") {
  const Complex s{0.75, 10.0};
  const Complex lhs = hurwitz_zeta(s, {0.5});
  const Complex rhs = (std::pow(2.0, s) - 1.0) * riemann_zeta(s);
  CHECK(std::abs(lhs - rhs) <= 1e-9 * std::abs(rhs));
}

TEST_CASE("Euler-Maclaurin and alternating routes agree") {
  for (const double sigma : {0.55, 0.75, 0.95}) {
    for (const double t : {0.0, 3.0, 40.0, 250.0}) {
      const Complex s{sigma, t};
      CAPTURE(s);
      CHECK(std::abs(riemann_zeta(s) - riemann_zeta_alternating(s)) <= 1e-9);
    }
  }
  CHECK(std::abs(riemann_zeta(0.75) - riemann_zeta_alternating(0.75)) <= 1e-9);
}

TEST_CASE("Hurwitz recurrence through the shared core") {
  for (const double alpha : {0.25, 0.5, 0.75, 1.0}) {
    for (const Complex s : {Complex{0.55, 0.0}, Complex{0.85, 100.0}, Complex{0.65, 1000.0}}) {
      const Complex diff = hurwitz_core(s, alpha) - hurwitz_core(s, alpha + 1.0);
      CHECK(std::abs(diff - std::pow(alpha, -s)) <= 1e-10);
    }
  }
}

TEST_CASE("conjugate symmetry") {
  for (const Complex s : {Complex{0.6, 7.0}, Complex{0.9, 314.0}}) {
    CHECK(std::abs(riemann_zeta(std::conj(s)) - std::conj(riemann_zeta(s))) <= 1e-12);
    CHECK(std::abs(hurwitz_zeta(std::conj(s), {0.3}) - std::conj(hurwitz_zeta(s, {0.3}))) <= 1e-12);
  }
}

TEST_CASE("Bernoulli table against the zeta(2k) relation") {
  CHECK(bernoulli_b2k(1) == Rational{1, 6});
  CHECK(bernoulli_b2k(6).reduced() == Rational{-691, 2730});
  // B_2k = (-1)^{k+1} 2 (2k)! zeta(2k) / (2 pi)^{2k}, zeta(2k) by direct summation.
  for (int k = 1; k <= EvalPrecision::kMaxBernoulliOrder; ++k) {
    long double zeta = 0.0L;
    for (int n = 2000; n >= 1; --n) zeta += std::pow(static_cast<long double>(n), -2.0L * k);
    zeta += std::pow(2000.5L, 1.0L - 2.0L * k) / (2.0L * k - 1);  // midpoint-rule tail
    const long double expected = ((k % 2 == 1) ? 2.0L : -2.0L) * std::tgamma(2.0L * k + 1) * zeta /
                                 std::pow(2.0L * std::numbers::pi_v<long double>, 2.0L * k);
    CAPTURE(k);
    CHECK(std::abs(bernoulli_b2k(k).value() - static_cast<double>(expected)) <=
          1e-10 * std::abs(static_cast<double>(expected)));
  }
  CHECK_THROWS_AS((void)bernoulli_b2k(0), DomainError);
}

TEST_CASE("precision failures raise instead of returning bad values") {
  CHECK_THROWS_AS((void)riemann_zeta(1.0), PoleError);
  EvalPrecision bad;
  bad.bernoulli_order = EvalPrecision::kMaxBernoulliOrder + 1;
  CHECK_THROWS_AS((void)riemann_zeta(0.75, bad), PrecisionError);
  EvalPrecision coarse;
  coarse.shift_terms = 1;
  coarse.bernoulli_order = 1;
  coarse.target_tol = 1e-14;
  CHECK_THROWS_AS((void)riemann_zeta({0.6, 0.0}, coarse), PrecisionError);
}

TEST_CASE("log_zeta_tracked") {
  const Complex l2 = log_zeta_tracked(2.0);
  CHECK(l2.real() == doctest::Approx(std::log(std::numbers::pi * std::numbers::pi / 6)).epsilon(1e-14));
  CHECK(l2.imag() == 0.0);

  const Complex s{0.8, 5.0};
  CHECK(std::abs(std::exp(log_zeta_tracked(s)) - riemann_zeta(s)) <= 1e-9);

  CHECK_THROWS_AS((void)log_zeta_tracked({0.5, 3.0}), DomainError);
  CHECK_THROWS_AS((void)log_zeta_tracked({0.7, 0.0}), PoleError);
}

TEST_CASE("log_zeta_tracked near the first zero either succeeds consistently or refuses") {
  // Coarse scan for the smallest |zeta| near 0.5 + 14.13i inside the strip.
  Complex worst{0.6, 14.13};
  double smallest = std::abs(riemann_zeta(worst));
  for (double sigma = 0.51; sigma < 0.7; sigma += 0.01) {
    for (double t = 14.10; t < 14.16; t += 0.002) {
      const double v = std::abs(riemann_zeta({sigma, t}));
      if (v < smallest) {
        smallest = v;
        worst = {sigma, t};
      }
    }
  }
  for (const Complex s : {Complex{0.6, 14.13}, worst}) {
    try {
      const Complex l = log_zeta_tracked(s);
      CHECK(std::abs(std::exp(l) - riemann_zeta(s)) <= 1e-9);
    } catch (const ZeroProximityError&) {
      CHECK(std::abs(riemann_zeta(s)) < 1e-3);
    }
  }
}

TEST_CASE("exp_poly_eval") {
  CHECK(exp_poly_eval(RationalPolynomial{}, {0.7, 3.0}) == Complex{1.0, 0.0});

  const RationalPolynomial x({{{0, 1}, {0, 1}}, {{1, 1}, {0, 1}}});
  const Complex e = exp_poly_eval(x, Complex{0.0, std::numbers::pi});
  CHECK(std::abs(e - Complex{-1.0, 0.0}) <= 1e-12);

  const RationalPolynomial p({{{1, 1}, {0, 1}}, {{1, 2}, {0, 1}}});
  CHECK(exp_poly_eval(p, 0.75).real() == doctest::Approx(std::exp(1.375)).epsilon(1e-15));

  const RationalPolynomial big(std::vector<GaussianRational>{{{800, 1}, {0, 1}}});
  CHECK_THROWS_AS((void)exp_poly_eval(big, 0.75), OverflowError);
}

TEST_CASE("RationalPolynomial normalisation and approximation") {
  const RationalPolynomial trailing({{{1, 2}, {0, 1}}, {{0, 1}, {0, 3}}});
  CHECK(trailing.degree() == 0);
  CHECK(RationalPolynomial{}.is_zero());

  const std::vector<Complex> coeffs{{0.3, -0.1}, {1.25, 0.0}, {0.0, 2.0 / 3.0}};
  const auto approx = RationalPolynomial::approximate(coeffs, 30);
  REQUIRE(approx.degree() == 2);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    CHECK(std::abs(approx.coefficients()[k].value() - coeffs[k]) <= std::ldexp(1.0, -30));
  }
}
