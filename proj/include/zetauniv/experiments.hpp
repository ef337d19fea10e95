#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "zetauniv/orbit.hpp"

namespace zetauniv {

/// One h-discrete density next to the continuous run it came from.
struct DiscreteEntry {
  double h = 0.0;
  int n_max = 0;
  DensityEstimate continuous;  ///< continuous density at horizon n_max * h
  DensityEstimate discrete;
  /// False when h is an integer multiple of delta and the orbit was read off
  /// the continuous sweep (indices k*n); true when it was evaluated afresh.
  bool fresh_evaluation = true;
  ErrorProfile orbit;
};

struct RecurrenceReport {
  double epsilon = 0.0;
  ContinuousShift shift;
  ErrorProfile profile;  ///< E_self(tau) = max_K |f(s + i tau) - f(s)|
  DensityEstimate continuous_density;
  std::vector<DiscreteEntry> discrete;
  /// Up to ten local minima of E_self with tau >= 1, best first.
  std::vector<std::pair<double, double>> best_self_shifts;
};

/// Strong recurrence data: the subject against itself at tau = 0.
[[nodiscard]] RecurrenceReport self_recurrence(const Subject& subject, const CompactPatch& patch, double epsilon,
                                               const ContinuousShift& shift, const std::vector<double>& h_list,
                                               const EvalPrecision& prec = {}, const Parallelism& parallelism = {});

struct ComparisonReport {
  double epsilon = 0.0;
  ContinuousShift shift;
  ErrorProfile profile;
  DensityEstimate continuous_density;
  std::vector<DiscreteEntry> entries;
};

/// Continuous vs h-discrete hit fractions at matching horizons
/// (N_max = floor(T_max / h)). No asymptotic claim is made.
[[nodiscard]] ComparisonReport density_comparison(const Subject& subject, const TargetFunction& target,
                                                  const CompactPatch& patch, double epsilon,
                                                  const ContinuousShift& shift, const std::vector<double>& h_list,
                                                  const EvalPrecision& prec = {}, const Parallelism& parallelism = {});

struct GdeltaEntry {
  std::uint64_t m = 0;  ///< 0 for explicitly supplied candidates
  int n = 1;            ///< N: compact K_N and radius 1/N
  RationalPolynomial p;
  std::optional<int> first_hit_n;
  double hit_error = 0.0;             ///< error at first_hit_n
  std::optional<int> best_n;          ///< argmin over scanned n with ok status
  double best_error = std::numeric_limits<double>::infinity();
  std::size_t error_count = 0;
  std::string first_error;            ///< class of the first failing cell, if any
};

struct GdeltaScanResult {
  double t0 = 0.0;
  int n_max = 0;
  std::vector<GdeltaEntry> entries;
};

/// Scans n = 1..n_max for max_{K_N} |zeta(s + i n t0) - e^{P(s)}| < 1/N.
[[nodiscard]] GdeltaEntry scan_candidate(double t0, const BaseElement& element, int n_max,
                                         const Exhaustion& exhaustion = Exhaustion{}, const EvalPrecision& prec = {},
                                         const Parallelism& parallelism = {});

/// Finite-scale membership evidence for t0 in J_1, ..., J_{m_max}.
[[nodiscard]] GdeltaScanResult gdelta_scan(double t0, std::uint64_t m_max, int n_max,
                                           const Exhaustion& exhaustion = Exhaustion{},
                                           const EvalPrecision& prec = {}, const Parallelism& parallelism = {});

/// Recomputes max_{K_N} |zeta(s + i n t0) - e^{P(s)}| without the scan machinery.
[[nodiscard]] double gdelta_cell_error(double t0, const BaseElement& element, int n,
                                       const Exhaustion& exhaustion = Exhaustion{}, const EvalPrecision& prec = {});

struct JointComponent {
  Subject subject;
  CompactPatch patch;
  TargetFunction target;
  double h = 1.0;
};

struct JointSpec {
  std::vector<JointComponent> components;
  double epsilon = 0.1;

  void validate() const;
};

/// E_joint(tau) = max_n max_{s in K_n} |zeta_n(s + i h_n tau) - f_n(s)|.
/// Each sample's `component` is the maximizing (or first failing) component.
[[nodiscard]] ErrorProfile joint_sweep(const JointSpec& spec, const ContinuousShift& shift,
                                       const EvalPrecision& prec = {}, const Parallelism& parallelism = {});

}  // namespace zetauniv
