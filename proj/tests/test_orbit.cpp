#include <doctest.h>

#include <cmath>
#include <random>

#include "zetauniv/errors.hpp"
#include "zetauniv/orbit.hpp"

using namespace zetauniv;

namespace {

const CompactPatch& small_disc() {
  static const CompactPatch patch = build_patch(Disc{{0.75, 0.0}, 0.05}, 0.05);
  return patch;
}

ErrorProfile synthetic(std::vector<double> errors, double step) {
  ErrorProfile p;
  const double t_max = step * static_cast<double>(errors.size() - 1);
  p.spec = ContinuousShift{t_max, step};
  for (std::size_t j = 0; j < errors.size(); ++j) p.samples.push_back({j * step, errors[j]});
  return p;
}

}  // namespace

TEST_CASE("translation semigroup") {
  const Evaluable f = [](Complex s) { return s * s + 1.0; };
  const Complex s{0.7, 0.3};
  CHECK(translate(f, 0.0)(s) == f(s));
  const auto ab = translate(translate(f, 1.25), 2.5);
  CHECK(ab.shift() == 3.75);
  CHECK(ab(s) == translate(f, 3.75)(s));
  const Evaluable id = [](Complex z) { return z; };
  CHECK(translate(id, 2.0)(0.75) == Complex{0.75, 2.0});
  CHECK_THROWS_AS((void)translate(f, -1.0), DomainError);
}

TEST_CASE("error_at") {
  CHECK(error_at(Subject::riemann(), ZetaShiftTarget{17.5}, small_disc(), 17.5) <= 2e-10);

  const auto point = build_patch(Rectangle{0.8, 0.8, 0.0, 0.0}, 0.1);
  REQUIRE(point.size() == 1);
  CHECK(error_at(Subject::riemann(), PolynomialTarget{}, point, 9.0) == std::abs(riemann_zeta({0.8, 9.0})));
}

TEST_CASE("hurwitz(1/2) against a fitted (2^s - 1) zeta(s + i tau)") {
  const double tau = 3.0;
  const auto& patch = small_disc();
  Eigen::VectorXcd values(patch.size());
  for (Eigen::Index i = 0; i < patch.size(); ++i) {
    const Complex s = patch.points()[i];
    const Complex z{s.real(), s.imag() + tau};
    values[i] = (std::pow(2.0, z) - 1.0) * riemann_zeta(z);
  }
  const auto fit = mergelyan_fit(patch.points(), values, 3);
  const double e = error_at(Subject::hurwitz(0.5), PolynomialTarget{fit.poly}, patch, tau);
  CHECK(e <= fit.residual + 1e-9);
}

TEST_CASE("sweep grids") {
  const auto sweep = continuous_sweep(Subject::riemann(), PolynomialTarget{}, small_disc(), {1.0, 0.5});
  REQUIRE(sweep.samples.size() == 3);
  CHECK(sweep.samples[2].tau == 1.0);

  const auto orbit = discrete_orbit(Subject::riemann(), PolynomialTarget{}, small_disc(), {0.5, 2});
  CHECK(orbit.identical_to(sweep));

  const auto origin = discrete_orbit(Subject::riemann(), PolynomialTarget{}, small_disc(), {0.5, 0});
  REQUIRE(origin.samples.size() == 1);
  CHECK(origin.samples[0].tau == 0.0);

  const auto planted = discrete_orbit(Subject::riemann(), ZetaShiftTarget{50.0}, small_disc(), {50.0, 1});
  CHECK(planted.samples[1].error <= 1e-6);
}

TEST_CASE("the pole is hit by exactly one sample") {
  const StripDomain wide{0.5, 1.5};
  const auto at_one = build_patch(Rectangle{1.0, 1.0, 0.0, 0.0}, 0.1, wide);
  const auto sweep = continuous_sweep(Subject::riemann(), PolynomialTarget{}, at_one, {1.0, 0.5});
  REQUIRE(sweep.samples.size() == 3);
  CHECK(sweep.samples[0].status == "PoleError");
  CHECK(sweep.samples[1].ok());
  CHECK(sweep.samples[2].ok());
}

TEST_CASE("parallel sweeps are bit-identical to serial ones") {
  const ContinuousShift spec{5.0, 0.05};
  const auto serial = continuous_sweep(Subject::hurwitz(0.3), ZetaShiftTarget{2.0}, small_disc(), spec);
  const auto parallel =
      continuous_sweep(Subject::hurwitz(0.3), ZetaShiftTarget{2.0}, small_disc(), spec, {}, Parallelism{7});
  CHECK(serial.identical_to(parallel));
}

TEST_CASE("hit density") {
  const auto p = synthetic({0.1, 0.3, 0.5}, 1.0);
  const auto d = hit_density(p, 0.4);
  CHECK(d.hit_count == 2);
  CHECK(d.hit_fraction == 1.0);
  CHECK(hit_density(p, 0.6).hit_fraction == 1.0);
  CHECK(hit_density(p, 1e-300).hit_fraction == 0.0);
  CHECK(hit_density(p, 0.1).hit_count == 0);  // strict inequality

  auto with_error = synthetic({0.1, 0.2, 0.3, 0.4, 0.5}, 0.5);
  with_error.samples[1].status = "PrecisionError";
  const auto e = hit_density(with_error, 10.0);
  CHECK(e.error_count == 1);
  CHECK(e.hit_fraction == doctest::Approx(3 * 0.5 / 2.0));

  CHECK_THROWS_AS((void)hit_density(p, 0.0), DomainError);
}

TEST_CASE("discrete density counts n = 1..N") {
  ErrorProfile p;
  p.spec = DiscreteShift{1.0, 4};
  for (int n = 0; n <= 4; ++n) p.samples.push_back({static_cast<double>(n), n % 2 == 0 ? 0.0 : 1.0});
  const auto d = hit_density(p, 0.5);
  CHECK(d.hit_count == 2);
  CHECK(d.hit_fraction == 0.5);
}

TEST_CASE("hit density is monotone in epsilon and stays in [0, 1]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> errors(37);
    for (auto& x : errors) x = u(rng);
    const auto p = synthetic(errors, 0.25);
    double a = u(rng);
    double b = u(rng);
    if (a > b) std::swap(a, b);
    const auto da = hit_density(p, a);
    const auto db = hit_density(p, b);
    CHECK(da.hit_fraction <= db.hit_fraction);
    CHECK(da.hit_fraction >= 0.0);
    CHECK(db.hit_fraction <= 1.0);
  }
}

TEST_CASE("density curve horizons grow to T") {
  const auto p = synthetic({0.1, 0.3, 0.5, 0.2, 0.9}, 0.5);
  const auto curve = density_curve(p, 0.4, 10);
  REQUIRE(curve.size() == 4);
  CHECK(curve.back().horizon == 2.0);
  for (std::size_t k = 1; k < curve.size(); ++k) CHECK(curve[k].horizon > curve[k - 1].horizon);
}

TEST_CASE("search_best_shift") {
  const auto constant = synthetic({0.5, 0.5, 0.5}, 1.0);
  CHECK(search_best_shift(constant).coarse_tau == 0.0);

  const auto single = synthetic({0.7}, 1.0);
  CHECK(search_best_shift(single).coarse_error == 0.7);

  auto broken = synthetic({0.1, 0.2}, 1.0);
  for (auto& s : broken.samples) s.status = "PrecisionError";
  CHECK_THROWS_AS((void)search_best_shift(broken), NoValidSampleError);

  // Refinement never reports worse than the coarse minimum.
  const auto q = synthetic({4.0, 1.0, 4.0}, 1.0);
  const auto best = search_best_shift(q, [](double tau) { return (tau - 1.3) * (tau - 1.3); });
  REQUIRE(best.refined_tau);
  CHECK(*best.refined_tau == doctest::Approx(1.3).epsilon(1e-6));
  CHECK(*best.refined_error <= best.coarse_error);
}
