#include "zetauniv/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "zetauniv/errors.hpp"

namespace zetauniv {

namespace {

constexpr double kMultipleSlack = 1e-9;
constexpr std::size_t kBestShiftCount = 10;

// k with h = k * delta, if h is (numerically) an integer multiple of delta.
std::optional<std::size_t> step_multiple(double h, double delta) {
  const double ratio = h / delta;
  const double k = std::round(ratio);
  if (k >= 1.0 && std::abs(ratio - k) <= kMultipleSlack * std::max(1.0, k)) return static_cast<std::size_t>(k);
  return std::nullopt;
}

std::vector<DiscreteEntry> discrete_entries(const Subject& subject, const Eigen::VectorXcd& target_values,
                                            const CompactPatch& patch, const ErrorProfile& profile,
                                            const ContinuousShift& shift, const std::vector<double>& h_list,
                                            double epsilon, const EvalPrecision& prec,
                                            const Parallelism& parallelism) {
  std::vector<DiscreteEntry> out;
  for (const double h : h_list) {
    if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("discrete step h must be > 0");
    DiscreteEntry entry;
    entry.h = h;
    entry.n_max = static_cast<int>(std::floor(shift.t_max / h + kMultipleSlack));
    const DiscreteShift spec{h, entry.n_max};

    const auto k = step_multiple(h, shift.step);
    if (k && *k * static_cast<std::size_t>(entry.n_max) < profile.samples.size()) {
      entry.fresh_evaluation = false;
      entry.orbit.spec = spec;
      entry.orbit.grid_step = profile.grid_step;
      for (int n = 0; n <= entry.n_max; ++n) entry.orbit.samples.push_back(profile.samples[*k * n]);
    } else {
      entry.orbit = sweep_against(subject, target_values, patch, spec, prec, parallelism);
    }
    entry.continuous = hit_density_up_to(profile, epsilon, entry.n_max * h);
    entry.discrete = hit_density(entry.orbit, epsilon);
    out.push_back(std::move(entry));
  }
  return out;
}

void check_common(double epsilon, const ContinuousShift& shift) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be > 0");
  validate(ShiftSpec{shift});
}

}  // namespace

RecurrenceReport self_recurrence(const Subject& subject, const CompactPatch& patch, double epsilon,
                                 const ContinuousShift& shift, const std::vector<double>& h_list,
                                 const EvalPrecision& prec, const Parallelism& parallelism) {
  check_common(epsilon, shift);
  subject.validate();
  Eigen::VectorXcd self(patch.size());
  for (Eigen::Index i = 0; i < patch.size(); ++i) self[i] = subject.evaluate(patch.points()[i], prec);

  RecurrenceReport report;
  report.epsilon = epsilon;
  report.shift = shift;
  report.profile = sweep_against(subject, self, patch, shift, prec, parallelism);
  report.continuous_density = hit_density(report.profile, epsilon);
  report.discrete = discrete_entries(subject, self, patch, report.profile, shift, h_list, epsilon, prec, parallelism);

  const auto& samples = report.profile.samples;
  std::vector<std::pair<double, double>> minima;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const Sample& s = samples[j];
    if (!s.ok() || s.tau < 1.0) continue;
    const bool left = j == 0 || !samples[j - 1].ok() || samples[j - 1].error >= s.error;
    const bool right = j + 1 == samples.size() || !samples[j + 1].ok() || samples[j + 1].error > s.error;
    if (left && right) minima.emplace_back(s.tau, s.error);
  }
  std::sort(minima.begin(), minima.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second < b.second : a.first < b.first;
  });
  if (minima.size() > kBestShiftCount) minima.resize(kBestShiftCount);
  report.best_self_shifts = std::move(minima);
  return report;
}

ComparisonReport density_comparison(const Subject& subject, const TargetFunction& target, const CompactPatch& patch,
                                    double epsilon, const ContinuousShift& shift, const std::vector<double>& h_list,
                                    const EvalPrecision& prec, const Parallelism& parallelism) {
  check_common(epsilon, shift);
  subject.validate();
  const Eigen::VectorXcd values = target.sample(patch, prec);

  ComparisonReport report;
  report.epsilon = epsilon;
  report.shift = shift;
  report.profile = sweep_against(subject, values, patch, shift, prec, parallelism);
  report.continuous_density = hit_density(report.profile, epsilon);
  report.entries = discrete_entries(subject, values, patch, report.profile, shift, h_list, epsilon, prec, parallelism);
  return report;
}

double gdelta_cell_error(double t0, const BaseElement& element, int n, const Exhaustion& exhaustion,
                         const EvalPrecision& prec) {
  const CompactPatch patch = exhaustion.patch(element.n);
  const double tau = n * t0;
  double worst = 0.0;
  for (const Complex& s : patch.points()) {
    const Complex shifted{s.real(), s.imag() + tau};
    worst = std::max(worst, std::abs(riemann_zeta(shifted, prec) - exp_poly_eval(element.p, s)));
  }
  return worst;
}

GdeltaEntry scan_candidate(double t0, const BaseElement& element, int n_max, const Exhaustion& exhaustion,
                           const EvalPrecision& prec, const Parallelism& parallelism) {
  if (!(t0 > 0.0) || !std::isfinite(t0)) throw DomainError("t0 must be > 0");
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  if (element.n < 1) throw DomainError("N must be >= 1");

  GdeltaEntry entry;
  entry.n = element.n;
  entry.p = element.p;

  const CompactPatch patch = exhaustion.patch(element.n);
  Eigen::VectorXcd target(patch.size());
  try {
    for (Eigen::Index i = 0; i < patch.size(); ++i) target[i] = exp_poly_eval(element.p, patch.points()[i]);
  } catch (const Error& e) {
    entry.error_count = static_cast<std::size_t>(n_max);
    entry.first_error = e.error_class();
    return entry;
  }

  const DiscreteShift orbit{t0, n_max};
  const ErrorProfile profile = sweep_against(Subject::riemann(), target, patch, orbit, prec, parallelism);
  const double radius = 1.0 / element.n;
  for (int n = 1; n <= n_max; ++n) {
    const Sample& s = profile.samples[static_cast<std::size_t>(n)];
    if (!s.ok()) {
      if (entry.error_count++ == 0) entry.first_error = s.status;
      continue;
    }
    if (s.error < entry.best_error) {
      entry.best_error = s.error;
      entry.best_n = n;
    }
    if (!entry.first_hit_n && s.error < radius) {
      entry.first_hit_n = n;
      entry.hit_error = s.error;
    }
  }
  return entry;
}

GdeltaScanResult gdelta_scan(double t0, std::uint64_t m_max, int n_max, const Exhaustion& exhaustion,
                             const EvalPrecision& prec, const Parallelism& parallelism) {
  if (m_max < 1) throw DomainError("m_max must be >= 1");
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  GdeltaScanResult result{t0, n_max, {}};
  for (std::uint64_t m = 1; m <= m_max; ++m) {
    GdeltaEntry entry = scan_candidate(t0, enumerate_base(m), n_max, exhaustion, prec, parallelism);
    entry.m = m;
    result.entries.push_back(std::move(entry));
  }
  return result;
}

void JointSpec::validate() const {
  if (components.empty()) throw DomainError("joint sweep needs at least one component");
  for (const auto& c : components) {
    c.subject.validate();
    if (!(c.h > 0.0) || !std::isfinite(c.h)) throw DomainError("joint shift entries h_n must be > 0");
  }
}

ErrorProfile joint_sweep(const JointSpec& spec, const ContinuousShift& shift, const EvalPrecision& prec,
                         const Parallelism& parallelism) {
  spec.validate();
  prec.validate();
  const ShiftSpec shift_spec{shift};
  validate(shift_spec);

  std::vector<Eigen::VectorXcd> targets;
  targets.reserve(spec.components.size());
  for (const auto& c : spec.components) targets.push_back(c.target.sample(c.patch, prec));

  ErrorProfile profile{shift_spec, std::vector<Sample>(sample_count(shift_spec)), spec.components.front().patch.grid_step()};
  parallel_for(profile.samples.size(), parallelism, [&](std::size_t j) {
    Sample& out = profile.samples[j];
    out.tau = shift_at(shift_spec, j);
    out.component = 0;
    for (std::size_t k = 0; k < spec.components.size(); ++k) {
      const auto& c = spec.components[k];
      try {
        const double e = error_at(c.subject, targets[k], c.patch, c.h * out.tau, prec);
        if (k == 0 || e > out.error) {
          out.error = e;
          out.component = static_cast<int>(k);
        }
      } catch (const Error& e) {
        out.error = 0.0;
        out.status = e.error_class();
        out.message = "component " + std::to_string(k) + ": " + e.what();
        out.component = static_cast<int>(k);
        return;
      }
    }
  });
  return profile;
}

}  // namespace zetauniv
