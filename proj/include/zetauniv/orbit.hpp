#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "zetauniv/kernels.hpp"
#include "zetauniv/parallel.hpp"
#include "zetauniv/space.hpp"

namespace zetauniv {

/// The function whose vertical shifts form the orbit.
struct Subject {
  enum class Kind { riemann, hurwitz, log_riemann };
  Kind kind = Kind::riemann;
  double alpha = 1.0;  ///< used by hurwitz only

  [[nodiscard]] Complex evaluate(Complex s, const EvalPrecision& prec = {}) const;
  [[nodiscard]] std::string name() const;
  void validate() const;

  static Subject riemann() { return {}; }
  static Subject hurwitz(double alpha) { return {Kind::hurwitz, alpha}; }
  static Subject log_riemann() { return {Kind::log_riemann, 1.0}; }

  friend bool operator==(const Subject&, const Subject&) = default;
};

struct ContinuousShift {
  double t_max = 1.0;
  double step = 0.01;
  friend bool operator==(const ContinuousShift&, const ContinuousShift&) = default;
};

struct DiscreteShift {
  double h = 1.0;
  int n_max = 1;
  friend bool operator==(const DiscreteShift&, const DiscreteShift&) = default;
};

using ShiftSpec = std::variant<ContinuousShift, DiscreteShift>;

void validate(const ShiftSpec& spec);
/// floor(T_max / delta) + 1 or N_max + 1.
[[nodiscard]] std::size_t sample_count(const ShiftSpec& spec);
/// tau_j = j * delta or n * h.
[[nodiscard]] double shift_at(const ShiftSpec& spec, std::size_t index);
/// Number of whole delta cells in [0, T_max].
[[nodiscard]] std::size_t continuous_cells(const ContinuousShift& spec);

struct Sample {
  double tau = 0.0;
  double error = 0.0;       ///< meaningful only when ok()
  std::string status = "ok";  ///< "ok" or the error class
  std::string message;
  int component = -1;       ///< joint sweeps: maximizing or failing component

  [[nodiscard]] bool ok() const { return status == "ok"; }
  /// Bitwise equality on tau and error plus equal status.
  [[nodiscard]] bool identical_to(const Sample& other) const;
};

/// Sampled tau -> E(tau) map of a sweep or discrete orbit.
struct ErrorProfile {
  ShiftSpec spec;
  std::vector<Sample> samples;
  double grid_step = 0.0;

  [[nodiscard]] bool identical_to(const ErrorProfile& other) const;
};

struct DensityEstimate {
  enum class Mode { continuous, discrete };
  Mode mode = Mode::continuous;
  double epsilon = 0.0;
  double horizon = 0.0;      ///< T (continuous) or N (discrete)
  double hit_fraction = 0.0;
  std::size_t hit_count = 0;
  std::size_t ok_count = 0;     ///< ok samples inside the window
  std::size_t error_count = 0;  ///< error samples inside the window
};

/// T_tau f = f(. + i tau). Composition adds the shifts once, so
/// translate(translate(f, a), b) and translate(f, a + b) agree bitwise.
class TranslatedFunction {
 public:
  TranslatedFunction(Evaluable base, double tau) : base_(std::move(base)), tau_(tau) {}
  Complex operator()(Complex s) const { return base_(Complex{s.real(), s.imag() + tau_}); }
  [[nodiscard]] double shift() const { return tau_; }
  [[nodiscard]] const Evaluable& base() const { return base_; }

 private:
  Evaluable base_;
  double tau_;
};

[[nodiscard]] TranslatedFunction translate(Evaluable f, double tau);
[[nodiscard]] TranslatedFunction translate(const TranslatedFunction& f, double tau);

/// E(tau) = max_{s in grid} |subject(s + i tau) - target(s)|.
/// Kernel errors are rethrown with the offending grid point in the message.
[[nodiscard]] double error_at(const Subject& subject, const TargetFunction& target, const CompactPatch& patch,
                              double tau, const EvalPrecision& prec = {});
/// Same with the target already sampled on the patch grid.
[[nodiscard]] double error_at(const Subject& subject, const Eigen::VectorXcd& target_values,
                              const CompactPatch& patch, double tau, const EvalPrecision& prec = {});

/// Evaluates `error_of(tau_j)` for every sample index in parallel; failures
/// become error samples. Output is independent of the thread count.
[[nodiscard]] std::vector<Sample> evaluate_samples(const ShiftSpec& spec, const std::function<double(double)>& error_of,
                                                   const Parallelism& parallelism = {});

[[nodiscard]] ErrorProfile continuous_sweep(const Subject& subject, const TargetFunction& target,
                                            const CompactPatch& patch, const ContinuousShift& spec,
                                            const EvalPrecision& prec = {}, const Parallelism& parallelism = {});
[[nodiscard]] ErrorProfile discrete_orbit(const Subject& subject, const TargetFunction& target,
                                          const CompactPatch& patch, const DiscreteShift& spec,
                                          const EvalPrecision& prec = {}, const Parallelism& parallelism = {});
/// Sweep or orbit against a target already sampled on the grid.
[[nodiscard]] ErrorProfile sweep_against(const Subject& subject, const Eigen::VectorXcd& target_values,
                                         const CompactPatch& patch, const ShiftSpec& spec,
                                         const EvalPrecision& prec = {}, const Parallelism& parallelism = {});

/// Continuous: delta-weighted count of hits E < eps over the cells j < floor(T/delta),
/// divided by T. Discrete: hits among n = 1..N_max divided by N_max.
[[nodiscard]] DensityEstimate hit_density(const ErrorProfile& profile, double epsilon);
/// Same functional truncated to a shorter horizon (time T or count N).
[[nodiscard]] DensityEstimate hit_density_up_to(const ErrorProfile& profile, double epsilon, double horizon);
/// hit_density at `points` evenly spaced, growing horizons.
[[nodiscard]] std::vector<DensityEstimate> density_curve(const ErrorProfile& profile, double epsilon, int points);

struct BestShift {
  double coarse_tau = 0.0;
  double coarse_error = 0.0;
  std::optional<double> refined_tau;
  std::optional<double> refined_error;
};

/// Minimal ok sample (ties: smallest tau). With `refine`, golden-section
/// search of tau -> refine(tau) on [tau* - d, tau* + d] (d = delta or h),
/// 40 iterations; the refined result never reports a worse error than the
/// coarse one.
[[nodiscard]] BestShift search_best_shift(const ErrorProfile& profile,
                                          const std::function<double(double)>& refine = {});

/// tau -> error_at(subject, target, patch, tau) with the target pre-sampled.
[[nodiscard]] std::function<double(double)> error_function(const Subject& subject, const TargetFunction& target,
                                                           const CompactPatch& patch, const EvalPrecision& prec = {});

}  // namespace zetauniv
