#include "zetauniv/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>

#include "zetauniv/errors.hpp"

namespace zetauniv {

namespace {

constexpr double kCellSlack = 1e-9;
constexpr int kGoldenIterations = 40;

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

std::string describe_point(Complex s) {
  std::ostringstream out;
  out.precision(17);
  out << "at grid point " << s.real() << (s.imag() < 0 ? "" : "+") << s.imag() << "i: ";
  return out.str();
}

double cell_step(const ShiftSpec& spec) {
  return std::visit([](const auto& v) -> double {
    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, ContinuousShift>) return v.step;
    else return v.h;
  }, spec);
}

}  // namespace

Complex Subject::evaluate(Complex s, const EvalPrecision& prec) const {
  switch (kind) {
    case Kind::riemann:
      return riemann_zeta(s, prec);
    case Kind::hurwitz:
      return hurwitz_zeta(s, HurwitzParams{alpha}, prec);
    case Kind::log_riemann:
      return log_zeta_tracked(s, prec);
  }
  return {};
}

std::string Subject::name() const {
  switch (kind) {
    case Kind::riemann:
      return "riemann";
    case Kind::hurwitz:
      return "hurwitz";
    case Kind::log_riemann:
      return "log_riemann";
  }
  return {};
}

void Subject::validate() const {
  if (kind == Kind::hurwitz && !(alpha > 0.0 && alpha <= 1.0)) throw DomainError("hurwitz alpha must lie in (0, 1]");
}

void validate(const ShiftSpec& spec) {
  if (const auto* c = std::get_if<ContinuousShift>(&spec)) {
    if (!(c->t_max > 0.0) || !std::isfinite(c->t_max)) throw DomainError("continuous shift needs T_max > 0");
    if (!(c->step > 0.0) || !(c->step <= c->t_max)) throw DomainError("continuous shift needs 0 < step <= T_max");
  } else {
    const auto& d = std::get<DiscreteShift>(spec);
    if (!(d.h > 0.0) || !std::isfinite(d.h)) throw DomainError("discrete shift needs h > 0");
    if (d.n_max < 0) throw DomainError("discrete shift needs N_max >= 0");
  }
}

std::size_t continuous_cells(const ContinuousShift& spec) {
  return static_cast<std::size_t>(std::floor(spec.t_max / spec.step + kCellSlack));
}

std::size_t sample_count(const ShiftSpec& spec) {
  if (const auto* c = std::get_if<ContinuousShift>(&spec)) return continuous_cells(*c) + 1;
  return static_cast<std::size_t>(std::get<DiscreteShift>(spec).n_max) + 1;
}

double shift_at(const ShiftSpec& spec, std::size_t index) {
  return static_cast<double>(index) * cell_step(spec);
}

bool Sample::identical_to(const Sample& other) const {
  return same_bits(tau, other.tau) && same_bits(error, other.error) && status == other.status;
}

bool ErrorProfile::identical_to(const ErrorProfile& other) const {
  if (samples.size() != other.samples.size()) return false;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!samples[i].identical_to(other.samples[i])) return false;
  }
  return true;
}

TranslatedFunction translate(Evaluable f, double tau) {
  if (!(tau >= 0.0)) throw DomainError("translation requires tau >= 0");
  return {std::move(f), tau};
}

TranslatedFunction translate(const TranslatedFunction& f, double tau) {
  if (!(tau >= 0.0)) throw DomainError("translation requires tau >= 0");
  return {f.base(), f.shift() + tau};
}

double error_at(const Subject& subject, const Eigen::VectorXcd& target_values, const CompactPatch& patch,
                double tau, const EvalPrecision& prec) {
  if (!(tau >= 0.0)) throw DomainError("error_at requires tau >= 0");
  double worst = 0.0;
  const auto& points = patch.points();
  for (Eigen::Index i = 0; i < points.size(); ++i) {
    const Complex s = points[i];
    Complex value;
    try {
      value = subject.evaluate(Complex{s.real(), s.imag() + tau}, prec);
    } catch (const Error& e) {
      e.rethrow_with_context(describe_point(s));
    }
    worst = std::max(worst, std::abs(value - target_values[i]));
  }
  return worst;
}

double error_at(const Subject& subject, const TargetFunction& target, const CompactPatch& patch, double tau,
                const EvalPrecision& prec) {
  return error_at(subject, target.sample(patch, prec), patch, tau, prec);
}

std::vector<Sample> evaluate_samples(const ShiftSpec& spec, const std::function<double(double)>& error_of,
                                     const Parallelism& parallelism) {
  validate(spec);
  std::vector<Sample> samples(sample_count(spec));
  parallel_for(samples.size(), parallelism, [&](std::size_t j) {
    Sample& out = samples[j];
    out.tau = shift_at(spec, j);
    try {
      out.error = error_of(out.tau);
    } catch (const Error& e) {
      out.error = 0.0;
      out.status = e.error_class();
      out.message = e.what();
    } catch (const std::exception& e) {
      out.error = 0.0;
      out.status = "InternalError";
      out.message = e.what();
    }
  });
  return samples;
}

ErrorProfile sweep_against(const Subject& subject, const Eigen::VectorXcd& target_values, const CompactPatch& patch,
                           const ShiftSpec& spec, const EvalPrecision& prec, const Parallelism& parallelism) {
  subject.validate();
  prec.validate();
  auto error_of = [&](double tau) { return error_at(subject, target_values, patch, tau, prec); };
  return {spec, evaluate_samples(spec, error_of, parallelism), patch.grid_step()};
}

ErrorProfile continuous_sweep(const Subject& subject, const TargetFunction& target, const CompactPatch& patch,
                              const ContinuousShift& spec, const EvalPrecision& prec,
                              const Parallelism& parallelism) {
  return sweep_against(subject, target.sample(patch, prec), patch, spec, prec, parallelism);
}

ErrorProfile discrete_orbit(const Subject& subject, const TargetFunction& target, const CompactPatch& patch,
                            const DiscreteShift& spec, const EvalPrecision& prec, const Parallelism& parallelism) {
  return sweep_against(subject, target.sample(patch, prec), patch, spec, prec, parallelism);
}

DensityEstimate hit_density_up_to(const ErrorProfile& profile, double epsilon, double horizon) {
  if (!(epsilon > 0.0)) throw DomainError("hit_density requires eps > 0");
  DensityEstimate out;
  out.epsilon = epsilon;

  std::size_t first = 0;
  std::size_t last = 0;  // exclusive
  if (const auto* c = std::get_if<ContinuousShift>(&profile.spec)) {
    out.mode = DensityEstimate::Mode::continuous;
    out.horizon = std::min(horizon, c->t_max);
    // Left Riemann sum: cell [j delta, (j+1) delta) is represented by sample j.
    last = static_cast<std::size_t>(std::floor(out.horizon / c->step + kCellSlack));
  } else {
    const auto& d = std::get<DiscreteShift>(profile.spec);
    out.mode = DensityEstimate::Mode::discrete;
    const double n = std::floor(std::min(horizon, static_cast<double>(d.n_max)) + kCellSlack);
    out.horizon = std::max(0.0, n);
    first = 1;
    last = static_cast<std::size_t>(out.horizon) + 1;
  }
  last = std::min(last, profile.samples.size());

  for (std::size_t j = first; j < last; ++j) {
    const Sample& s = profile.samples[j];
    if (!s.ok()) {
      ++out.error_count;
      continue;
    }
    ++out.ok_count;
    if (s.error < epsilon) ++out.hit_count;
  }

  if (out.horizon > 0.0) {
    if (out.mode == DensityEstimate::Mode::continuous) {
      out.hit_fraction = std::get<ContinuousShift>(profile.spec).step * static_cast<double>(out.hit_count) / out.horizon;
    } else {
      out.hit_fraction = static_cast<double>(out.hit_count) / out.horizon;
    }
  }
  return out;
}

DensityEstimate hit_density(const ErrorProfile& profile, double epsilon) {
  return hit_density_up_to(profile, epsilon, std::numeric_limits<double>::infinity());
}

std::vector<DensityEstimate> density_curve(const ErrorProfile& profile, double epsilon, int points) {
  if (points < 1) throw DomainError("density curve needs at least one point");
  std::vector<DensityEstimate> curve;
  double full = 0.0;
  double unit = 1.0;
  if (const auto* c = std::get_if<ContinuousShift>(&profile.spec)) {
    unit = c->step;
    full = static_cast<double>(continuous_cells(*c));
  } else {
    full = static_cast<double>(std::get<DiscreteShift>(profile.spec).n_max);
  }
  double previous = 0.0;
  for (int k = 1; k <= points; ++k) {
    const double cells = std::ceil(full * k / points);
    if (cells <= previous) continue;
    previous = cells;
    curve.push_back(hit_density_up_to(profile, epsilon, cells * unit));
  }
  return curve;
}

BestShift search_best_shift(const ErrorProfile& profile, const std::function<double(double)>& refine) {
  const Sample* best = nullptr;
  for (const auto& s : profile.samples) {
    if (!s.ok()) continue;
    if (best == nullptr || s.error < best->error) best = &s;
  }
  if (best == nullptr) throw NoValidSampleError("profile has no ok samples");

  BestShift out{best->tau, best->error, std::nullopt, std::nullopt};
  if (!refine) return out;

  auto safe = [&](double tau) {
    try {
      return refine(tau);
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  const double radius = cell_step(profile.spec);
  double lo = std::max(0.0, best->tau - radius);
  double hi = best->tau + radius;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = safe(x1);
  double f2 = safe(x2);
  double arg = best->tau;
  double val = best->error;
  auto consider = [&](double x, double f) {
    if (f < val) {
      arg = x;
      val = f;
    }
  };
  consider(x1, f1);
  consider(x2, f2);
  for (int it = 0; it < kGoldenIterations; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = safe(x1);
      consider(x1, f1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = safe(x2);
      consider(x2, f2);
    }
  }
  out.refined_tau = arg;
  out.refined_error = val;
  return out;
}

std::function<double(double)> error_function(const Subject& subject, const TargetFunction& target,
                                             const CompactPatch& patch, const EvalPrecision& prec) {
  return [subject, values = target.sample(patch, prec), patch, prec](double tau) {
    return error_at(subject, values, patch, tau, prec);
  };
}

}  // namespace zetauniv
