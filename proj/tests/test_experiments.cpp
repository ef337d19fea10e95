#include <doctest.h>

#include <cmath>

#include "zetauniv/errors.hpp"
#include "zetauniv/experiments.hpp"

using namespace zetauniv;

namespace {

const CompactPatch& small_disc() {
  static const CompactPatch patch = build_patch(Disc{{0.75, 0.0}, 0.05}, 0.05);
  return patch;
}

}  // namespace

TEST_CASE("self recurrence") {
  const ContinuousShift shift{4.0, 0.1};
  const auto report = self_recurrence(Subject::riemann(), small_disc(), 0.5, shift, {0.5, 0.35});
  REQUIRE(report.profile.samples.size() == 41);
  CHECK(report.profile.samples[0].error <= 2e-10);

  double max_error = 0.0;
  for (const auto& s : report.profile.samples) max_error = std::max(max_error, s.error);
  const auto all = self_recurrence(Subject::riemann(), small_disc(), max_error * 2, shift, {});
  CHECK(all.continuous_density.hit_fraction == doctest::Approx(1.0));

  REQUIRE(report.discrete.size() == 2);
  const auto& sub = report.discrete[0];
  CHECK_FALSE(sub.fresh_evaluation);
  // Discrete hits are a subset of the continuous hit indices (k = 5).
  for (int n = 0; n <= sub.n_max; ++n) {
    const auto& d = sub.orbit.samples[n];
    const auto& c = report.profile.samples[5 * n];
    CHECK(d.identical_to(c));
  }
  CHECK(report.discrete[1].fresh_evaluation);

  for (const auto& [tau, err] : report.best_self_shifts) CHECK(tau >= 1.0);
}

TEST_CASE("density comparison with a planted shift on the h-grid") {
  const double h = 0.5;
  const ContinuousShift shift{6.0, 0.05};
  const auto report = density_comparison(Subject::riemann(), ZetaShiftTarget{h * 7}, small_disc(), 1e-3, shift,
                                         {h, 0.33});
  REQUIRE(report.entries.size() == 2);
  CHECK(report.entries[0].discrete.hit_fraction > 0.0);
  CHECK(report.entries[0].discrete.hit_count >= 1);
  CHECK_FALSE(report.entries[0].fresh_evaluation);
  CHECK(report.entries[1].fresh_evaluation);

  const auto wide = density_comparison(Subject::riemann(), ZetaShiftTarget{0.0}, small_disc(), 1e6, shift, {h});
  CHECK(wide.continuous_density.hit_fraction == doctest::Approx(1.0));
  CHECK(wide.entries[0].discrete.hit_fraction == 1.0);
}

TEST_CASE("gdelta: the constant target e^0 on K_1") {
  const Exhaustion ex;
  const auto result = gdelta_scan(1.7, 1, 5, ex);
  REQUIRE(result.entries.size() == 1);
  const auto& e = result.entries[0];
  CHECK(e.m == 1);
  CHECK(e.n == 1);
  CHECK(e.p.is_zero());
  REQUIRE(e.best_n);
  const double recheck = gdelta_cell_error(1.7, {1, RationalPolynomial{}}, *e.best_n, ex);
  CHECK(recheck == doctest::Approx(e.best_error).epsilon(1e-12));
  CHECK(e.first_hit_n.has_value() == (e.best_error < 1.0));

  CHECK_THROWS_AS((void)gdelta_scan(1.7, 1, 0, ex), DomainError);
}

TEST_CASE("gdelta: planted candidate is certified at n0") {
  const double t0 = 1.7;
  const int n_big = 2;
  const int n0 = 7;
  const Exhaustion ex;
  const auto patch = ex.patch(n_big);
  Eigen::VectorXcd logs(patch.size());
  for (Eigen::Index i = 0; i < patch.size(); ++i) {
    const Complex s = patch.points()[i];
    logs[i] = log_zeta_tracked({s.real(), s.imag() + n0 * t0});
  }
  const auto fit = mergelyan_fit(patch.points(), logs, 8);
  REQUIRE(fit.residual < 0.5 / n_big);
  const BaseElement planted{n_big, RationalPolynomial::approximate(fit.poly.monomial_coefficients())};
  const auto entry = scan_candidate(t0, planted, 20, ex);
  REQUIRE(entry.best_n);
  CHECK(*entry.best_n == n0);
  CHECK(entry.first_hit_n.has_value());
  CHECK(gdelta_cell_error(t0, planted, n0, ex) < 1.0 / n_big);
}

TEST_CASE("joint sweep") {
  const ContinuousShift shift{2.0, 0.1};
  const JointComponent single{Subject::riemann(), small_disc(), ZetaShiftTarget{1.0}, 1.0};
  const auto joint = joint_sweep({{single}, 0.1}, shift);
  const auto plain = continuous_sweep(Subject::riemann(), ZetaShiftTarget{1.0}, small_disc(), shift);
  CHECK(joint.identical_to(plain));

  const auto twice = joint_sweep({{single, single}, 0.1}, shift);
  CHECK(twice.identical_to(plain));

  const JointComponent a{Subject::hurwitz(0.3), small_disc(), HurwitzShiftTarget{0.3, 1.2}, 1.0};
  const JointComponent b{Subject::hurwitz(0.7), small_disc(), HurwitzShiftTarget{0.7, 1.2}, 1.0};
  const auto both = joint_sweep({{a, b}, 0.1}, shift);
  const auto only_a = joint_sweep({{a}, 0.1}, shift);
  const auto only_b = joint_sweep({{b}, 0.1}, shift);
  for (std::size_t j = 0; j < both.samples.size(); ++j) {
    CHECK(both.samples[j].error >= only_a.samples[j].error);
    CHECK(both.samples[j].error >= only_b.samples[j].error);
    CHECK(both.samples[j].error == std::max(only_a.samples[j].error, only_b.samples[j].error));
  }
  const auto best = search_best_shift(both);
  CHECK(best.coarse_tau == doctest::Approx(1.2));
  CHECK(best.coarse_error <= 1e-6);

  CHECK_THROWS_AS((void)joint_sweep({{}, 0.1}, shift), DomainError);
}
