#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <span>
#include <type_traits>
#include <variant>
#include <vector>

#include "zetauniv/kernels.hpp"

namespace zetauniv {

using Evaluable = std::function<Complex(Complex)>;

/// Open vertical strip sigma_lo < Re s < sigma_hi. The default is the
/// critical strip D = {1/2 < sigma < 1}.
struct StripDomain {
  double sigma_lo = 0.5;
  double sigma_hi = 1.0;

  void validate() const;
  friend bool operator==(const StripDomain&, const StripDomain&) = default;
};

struct Rectangle {
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

struct Disc {
  Complex center;
  double radius = 0.0;
  friend bool operator==(const Disc&, const Disc&) = default;
};

using Shape = std::variant<Rectangle, Disc>;

/// A compact set K inside a strip together with the finite grid that
/// stands in for it in every "max over K".
class CompactPatch {
 public:
  CompactPatch(Shape shape, double grid_step, StripDomain domain, Eigen::VectorXcd points);

  [[nodiscard]] const Shape& shape() const { return shape_; }
  [[nodiscard]] double grid_step() const { return grid_step_; }
  [[nodiscard]] const StripDomain& domain() const { return domain_; }
  [[nodiscard]] const Eigen::VectorXcd& points() const { return points_; }
  [[nodiscard]] Eigen::Index size() const { return points_.size(); }

 private:
  Shape shape_;
  double grid_step_;
  StripDomain domain_;
  Eigen::VectorXcd points_;
};

/// Rectangles: lattice anchored at (sigma1, t1). Discs: points of the
/// lattice on the bounding square (anchored at its lower-left corner)
/// that lie in the closed disc. Throws GeometryError if the shape is not
/// strictly inside `domain`.
[[nodiscard]] CompactPatch build_patch(const Shape& shape, double grid_step, const StripDomain& domain = {});

/// K_n = [sigma_lo + 1/(2n+2), sigma_hi - 1/(2n+2)] x [-n, n].
///
/// The grid of patch(n) is the union of the lattices of K_1..K_n, so grids
/// are nested and the seminorms p_n are monotone in n.
class Exhaustion {
 public:
  explicit Exhaustion(StripDomain domain = {}, double grid_step = 0.1);

  [[nodiscard]] Rectangle rectangle(int n) const;
  [[nodiscard]] CompactPatch patch(int n) const;
  /// Lattice of K_n alone (not nested).
  [[nodiscard]] CompactPatch layer(int n) const;
  [[nodiscard]] const StripDomain& domain() const { return domain_; }
  [[nodiscard]] double grid_step() const { return grid_step_; }

 private:
  StripDomain domain_;
  double grid_step_;
};

/// Complex polynomial in the shifted variable (s - center) / scale.
struct Polynomial {
  std::vector<Complex> coefficients{Complex{0.0}};
  Complex center{0.0};
  double scale = 1.0;

  [[nodiscard]] Complex evaluate(Complex s) const;
  /// Coefficients of the same polynomial in powers of s.
  [[nodiscard]] std::vector<Complex> monomial_coefficients() const;
  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

struct PolynomialTarget {
  Polynomial poly;
  friend bool operator==(const PolynomialTarget&, const PolynomialTarget&) = default;
};
struct ExpPolynomialTarget {
  RationalPolynomial exponent;
  friend bool operator==(const ExpPolynomialTarget&, const ExpPolynomialTarget&) = default;
};
struct ZetaShiftTarget {
  double tau0 = 0.0;
  friend bool operator==(const ZetaShiftTarget&, const ZetaShiftTarget&) = default;
};
struct HurwitzShiftTarget {
  double alpha = 1.0;
  double tau0 = 0.0;
  friend bool operator==(const HurwitzShiftTarget&, const HurwitzShiftTarget&) = default;
};

/// The f of an admissible tuple (K, f, eps).
class TargetFunction {
 public:
  using Variant = std::variant<PolynomialTarget, ExpPolynomialTarget, ZetaShiftTarget, HurwitzShiftTarget>;

  TargetFunction() = default;
  TargetFunction(Variant v) : variant_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  template <typename T>
    requires std::is_constructible_v<Variant, T&&> && (!std::is_same_v<std::decay_t<T>, Variant>) &&
             (!std::is_same_v<std::decay_t<T>, TargetFunction>)
  TargetFunction(T&& v) : variant_(std::forward<T>(v)) {}  // NOLINT(google-explicit-constructor)

  [[nodiscard]] const Variant& variant() const { return variant_; }
  [[nodiscard]] Complex evaluate(Complex s, const EvalPrecision& prec = {}) const;
  [[nodiscard]] Eigen::VectorXcd sample(const CompactPatch& patch, const EvalPrecision& prec = {}) const;
  /// True for exp-polynomials; otherwise every grid value must be nonzero.
  [[nodiscard]] bool nonvanishing_on(const CompactPatch& patch, const EvalPrecision& prec = {}) const;
  [[nodiscard]] Evaluable as_evaluable(const EvalPrecision& prec = {}) const;

  friend bool operator==(const TargetFunction&, const TargetFunction&) = default;

 private:
  Variant variant_{PolynomialTarget{}};
};

/// max over the grid of |f(s) - g(s)|.
[[nodiscard]] double sup_distance(const Evaluable& f, const Evaluable& g, const CompactPatch& patch);

struct FrechetDistance {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// sum_{n=1}^{depth} 2^{-n} min(1, p_n(f - g)); tail_bound = 2^{-depth}.
[[nodiscard]] FrechetDistance frechet_distance(const Evaluable& f, const Evaluable& g, int depth,
                                               const Exhaustion& exhaustion = Exhaustion{});

struct PolynomialFit {
  Polynomial poly;
  double residual = 0.0;          ///< max_j |P(s_j) - value_j|
  double condition_number = 0.0;  ///< of the normal system
};

/// Least-squares polynomial of the given degree through (points, values),
/// in the basis ((s - c) / r)^k with c the centroid and r the largest
/// distance from it. Throws ConditioningError when the normal system's
/// condition estimate exceeds 1e12 or the system is underdetermined.
[[nodiscard]] PolynomialFit mergelyan_fit(const Eigen::Ref<const Eigen::VectorXcd>& points,
                                          const Eigen::Ref<const Eigen::VectorXcd>& values, int degree);

/// One element U_m of the countable base: all f with
/// max_{K_N} |f - e^{P}| < 1/N.
struct BaseElement {
  int n = 1;
  RationalPolynomial p;
  friend bool operator==(const BaseElement&, const BaseElement&) = default;
};

inline constexpr int kBaseHeightBound = 16;
inline constexpr int kBaseDegreeBound = 8;

/// Height of a Gaussian-rational coefficient: the largest |numerator| or
/// denominator of its reduced components (so 0 and +-1 have height 1).
[[nodiscard]] int coefficient_height(const GaussianRational& c);
[[nodiscard]] int polynomial_height(const RationalPolynomial& p);

/// Bijection between m >= 1 and pairs (N, P), N >= 1, height(P) <= 16,
/// deg(P) <= 8. Pairs are ordered by level N + height + degree, within a
/// level by height + degree, then degree, then height, then
/// lexicographically by coefficient index from the leading one down.
[[nodiscard]] BaseElement enumerate_base(std::uint64_t m);
/// Inverse of enumerate_base; throws DomainError for pairs outside the
/// height/degree bounds.
[[nodiscard]] std::uint64_t encode_base(const BaseElement& element);

}  // namespace zetauniv
