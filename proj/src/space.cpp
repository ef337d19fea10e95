#include "zetauniv/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "zetauniv/errors.hpp"

namespace zetauniv {

namespace {

constexpr double kLatticeSlack = 1e-9;
constexpr Eigen::Index kMaxGridPoints = 20'000'000;

Eigen::Index lattice_count(double extent, double step) {
  const double cells = std::floor(extent / step + kLatticeSlack);
  if (cells + 1.0 > static_cast<double>(kMaxGridPoints)) throw GeometryError("grid too large");
  return static_cast<Eigen::Index>(cells) + 1;
}

Eigen::VectorXcd rectangle_grid(const Rectangle& r, double step) {
  const Eigen::Index ns = lattice_count(r.sigma2 - r.sigma1, step);
  const Eigen::Index nt = lattice_count(r.t2 - r.t1, step);
  if (ns * nt > kMaxGridPoints) throw GeometryError("grid too large");
  Eigen::VectorXcd points(ns * nt);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < ns; ++i) {
    const double sigma = std::min(r.sigma1 + static_cast<double>(i) * step, r.sigma2);
    for (Eigen::Index j = 0; j < nt; ++j) {
      points[k++] = Complex{sigma, std::min(r.t1 + static_cast<double>(j) * step, r.t2)};
    }
  }
  return points;
}

Eigen::VectorXcd disc_grid(const Disc& d, double step) {
  const Eigen::Index n = lattice_count(2.0 * d.radius, step);
  if (n * n > kMaxGridPoints) throw GeometryError("grid too large");
  const double limit = d.radius * (1.0 + kLatticeSlack);
  std::vector<Complex> inside;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sigma = d.center.real() - d.radius + static_cast<double>(i) * step;
    for (Eigen::Index j = 0; j < n; ++j) {
      const Complex p{sigma, d.center.imag() - d.radius + static_cast<double>(j) * step};
      if (std::abs(p - d.center) <= limit) inside.push_back(p);
    }
  }
  return Eigen::Map<const Eigen::VectorXcd>(inside.data(), static_cast<Eigen::Index>(inside.size()));
}

void check_inside(const Shape& shape, const StripDomain& domain) {
  auto fail = [](const std::string& what) { throw GeometryError(what); };
  if (const auto* r = std::get_if<Rectangle>(&shape)) {
    if (!(r->sigma1 <= r->sigma2) || !(r->t1 <= r->t2)) fail("rectangle corners out of order");
    if (!std::isfinite(r->t1) || !std::isfinite(r->t2)) fail("rectangle heights must be finite");
    if (!(domain.sigma_lo < r->sigma1 && r->sigma2 < domain.sigma_hi)) {
      std::ostringstream msg;
      msg << "rectangle [" << r->sigma1 << ", " << r->sigma2 << "] touches the strip boundary ("
          << domain.sigma_lo << ", " << domain.sigma_hi << ")";
      fail(msg.str());
    }
  } else {
    const auto& d = std::get<Disc>(shape);
    if (!(d.radius >= 0.0) || !std::isfinite(d.center.imag())) fail("disc radius must be >= 0");
    if (!(domain.sigma_lo < d.center.real() - d.radius && d.center.real() + d.radius < domain.sigma_hi)) {
      std::ostringstream msg;
      msg << "disc around " << d.center.real() << " with radius " << d.radius << " touches the strip boundary ("
          << domain.sigma_lo << ", " << domain.sigma_hi << ")";
      fail(msg.str());
    }
  }
}

// ---------------------------------------------------------------------------
// Countable base enumeration.

using Count = std::uint64_t;
constexpr Count kSaturated = std::numeric_limits<Count>::max();

Count sat_add(Count a, Count b) { return (a > kSaturated - b) ? kSaturated : a + b; }
Count sat_mul(Count a, Count b) {
  if (a == 0 || b == 0) return 0;
  return (a > kSaturated / b) ? kSaturated : a * b;
}
Count sat_pow(Count a, int k) {
  Count out = 1;
  for (int i = 0; i < k; ++i) out = sat_mul(out, a);
  return out;
}
// a - b where b <= a in exact arithmetic; a saturated stays saturated.
Count sat_sub(Count a, Count b) { return a == kSaturated ? kSaturated : a - b; }

int rational_height(const Rational& r) {
  const Rational red = r.reduced();
  return static_cast<int>(std::max<std::int64_t>(std::abs(red.num), red.den));
}

// Reduced rationals of height <= kBaseHeightBound, grouped by height:
// height 1 is {0, 1, -1}; each later height block is sorted by value.
struct RationalTable {
  std::vector<Rational> values;
  std::vector<Count> cumulative;  // cumulative[h] = #rationals of height <= h
  std::map<std::pair<std::int64_t, std::int64_t>, Count> index;

  RationalTable() {
    cumulative.push_back(0);
    values = {{0, 1}, {1, 1}, {-1, 1}};
    cumulative.push_back(values.size());
    for (std::int64_t h = 2; h <= kBaseHeightBound; ++h) {
      std::vector<Rational> block;
      for (std::int64_t q = 1; q <= h; ++q) {
        for (std::int64_t p = 1; p <= h; ++p) {
          if (std::max(p, q) != h || std::gcd(p, q) != 1) continue;
          block.push_back({p, q});
          block.push_back({-p, q});
        }
      }
      std::sort(block.begin(), block.end(), [](const Rational& a, const Rational& b) {
        return a.num * b.den < b.num * a.den;
      });
      values.insert(values.end(), block.begin(), block.end());
      cumulative.push_back(values.size());
    }
    for (Count i = 0; i < values.size(); ++i) index[{values[i].num, values[i].den}] = i;
  }

  [[nodiscard]] Count at_most(int h) const { return cumulative[static_cast<std::size_t>(h)]; }
  [[nodiscard]] Count gaussian_at_most(int h) const { return at_most(h) * at_most(h); }

  [[nodiscard]] int height_of_index(Count i) const {
    int h = 1;
    while (i >= at_most(h)) ++h;
    return h;
  }

  [[nodiscard]] Count gaussian_rank(Count ix, Count iy) const {
    const int h = std::max(height_of_index(ix), height_of_index(iy));
    const Count below = at_most(h - 1);
    const Count all = at_most(h);
    const Count band = all - below;
    const Count local = (ix < below) ? ix * band + (iy - below) : below * band + (ix - below) * all + iy;
    return below * below + local;
  }

  [[nodiscard]] std::pair<Count, Count> gaussian_unrank(Count g) const {
    int h = 1;
    while (g >= gaussian_at_most(h)) ++h;
    const Count below = at_most(h - 1);
    const Count all = at_most(h);
    const Count band = all - below;
    const Count local = g - below * below;
    if (local < below * band) return {local / band, below + local % band};
    const Count rest = local - below * band;
    return {below + rest / all, rest % all};
  }

  [[nodiscard]] Count gaussian_index(const GaussianRational& c) const {
    auto lookup = [&](const Rational& r) {
      const Rational red = r.reduced();
      const auto it = index.find({red.num, red.den});
      if (it == index.end()) throw DomainError("coefficient height exceeds the base bound");
      return it->second;
    };
    return gaussian_rank(lookup(c.re), lookup(c.im));
  }

  [[nodiscard]] GaussianRational gaussian_value(Count g) const {
    const auto [ix, iy] = gaussian_unrank(g);
    return {values[ix], values[iy]};
  }
};

const RationalTable& rational_table() {
  static const RationalTable table;
  return table;
}

// Polynomials of exact degree d whose max coefficient height is exactly h.
struct Block {
  int h;
  int d;
  Count all;    // digits of height <= h
  Count below;  // digits of height < h

  // Completions of k free digits; `seen` means height h already occurred.
  [[nodiscard]] Count completions(int k, bool seen) const {
    return seen ? sat_pow(all, k) : sat_sub(sat_pow(all, k), sat_pow(below, k));
  }

  [[nodiscard]] Count size() const {
    if (d == 0) return all - below;
    // Leading digit is nonzero; index 0 (zero) always has height 1.
    const Count low_leading = below > 0 ? below - 1 : 0;
    const Count top_leading = below > 0 ? all - below : all - 1;
    return sat_add(sat_mul(low_leading, completions(d, false)), sat_mul(top_leading, completions(d, true)));
  }

  // Rank of a digit string (leading first) within the block.
  [[nodiscard]] Count rank(const std::vector<Count>& digits) const {
    Count r = 0;
    bool seen = false;
    for (std::size_t pos = 0; pos < digits.size(); ++pos) {
      const int remaining = static_cast<int>(digits.size() - pos - 1);
      const Count first = (pos == 0 && d > 0) ? 1 : 0;
      const Count v = digits[pos];
      const Count low_end = std::max(first, below);
      if (!seen && remaining == 0) {
        // Last digit must supply the missing height h.
        r = sat_add(r, v - std::max(first, below));
      } else if (v < low_end) {
        r = sat_add(r, sat_mul(v - first, completions(remaining, seen)));
      } else {
        const Count low_count = low_end - first;
        r = sat_add(r, sat_mul(low_count, completions(remaining, seen)));
        r = sat_add(r, sat_mul(v - low_end, completions(remaining, true)));
      }
      if (v >= below) seen = true;
    }
    return r;
  }

  [[nodiscard]] std::vector<Count> unrank(Count r) const {
    std::vector<Count> digits(static_cast<std::size_t>(d) + 1);
    bool seen = false;
    for (std::size_t pos = 0; pos < digits.size(); ++pos) {
      const int remaining = static_cast<int>(digits.size() - pos - 1);
      const Count first = (pos == 0 && d > 0) ? 1 : 0;
      const Count low_end = std::max(first, below);
      Count v = 0;
      if (!seen && remaining == 0) {
        v = low_end + r;
        r = 0;
      } else {
        const Count c_low = completions(remaining, seen);
        const Count low_total = sat_mul(low_end - first, c_low);
        if (r < low_total) {
          v = first + r / c_low;
          r %= c_low;
        } else {
          r -= low_total;
          const Count c_top = completions(remaining, true);
          v = low_end + r / c_top;
          r %= c_top;
        }
      }
      digits[pos] = v;
      if (v >= below) seen = true;
    }
    return digits;
  }
};

Block make_block(int h, int d) {
  const auto& table = rational_table();
  return {h, d, table.gaussian_at_most(h), table.gaussian_at_most(h - 1)};
}

// Visits blocks in enumeration order until `visit` returns true.
template <typename Visit>
void walk_blocks(Visit&& visit) {
  for (std::int64_t level = 2;; ++level) {
    for (std::int64_t hd = 1; hd < level; ++hd) {
      const std::int64_t n = level - hd;
      for (int d = 0; d <= std::min<std::int64_t>(kBaseDegreeBound, hd - 1); ++d) {
        const auto h = static_cast<int>(hd - d);
        if (h < 1 || h > kBaseHeightBound) continue;
        if (visit(n, make_block(h, d))) return;
      }
    }
  }
}

}  // namespace

void StripDomain::validate() const {
  if (!(sigma_lo < sigma_hi) || !std::isfinite(sigma_lo) || !std::isfinite(sigma_hi)) {
    throw GeometryError("strip requires sigma_lo < sigma_hi");
  }
}

CompactPatch::CompactPatch(Shape shape, double grid_step, StripDomain domain, Eigen::VectorXcd points)
    : shape_(std::move(shape)), grid_step_(grid_step), domain_(domain), points_(std::move(points)) {
  if (points_.size() == 0) throw GeometryError("patch grid is empty");
}

CompactPatch build_patch(const Shape& shape, double grid_step, const StripDomain& domain) {
  domain.validate();
  if (!(grid_step > 0.0) || !std::isfinite(grid_step)) throw GeometryError("grid_step must be > 0");
  check_inside(shape, domain);
  Eigen::VectorXcd points = std::holds_alternative<Rectangle>(shape)
                                ? rectangle_grid(std::get<Rectangle>(shape), grid_step)
                                : disc_grid(std::get<Disc>(shape), grid_step);
  return {shape, grid_step, domain, std::move(points)};
}

Exhaustion::Exhaustion(StripDomain domain, double grid_step) : domain_(domain), grid_step_(grid_step) {
  domain_.validate();
  if (!(grid_step_ > 0.0)) throw GeometryError("grid_step must be > 0");
}

Rectangle Exhaustion::rectangle(int n) const {
  if (n < 1) throw GeometryError("exhaustion index must be >= 1");
  // Margin (sigma_hi - sigma_lo) / (n + 1), i.e. 1/(2n+2) on the critical strip.
  const double margin = (domain_.sigma_hi - domain_.sigma_lo) / (n + 1.0);
  return {domain_.sigma_lo + margin, domain_.sigma_hi - margin, -static_cast<double>(n), static_cast<double>(n)};
}

CompactPatch Exhaustion::layer(int n) const { return build_patch(rectangle(n), grid_step_, domain_); }

CompactPatch Exhaustion::patch(int n) const {
  std::vector<Eigen::VectorXcd> layers;
  Eigen::Index total = 0;
  for (int k = 1; k <= n; ++k) {
    layers.push_back(layer(k).points());
    total += layers.back().size();
  }
  Eigen::VectorXcd points(total);
  Eigen::Index offset = 0;
  for (const auto& l : layers) {
    points.segment(offset, l.size()) = l;
    offset += l.size();
  }
  return {rectangle(n), grid_step_, domain_, std::move(points)};
}

Complex Polynomial::evaluate(Complex s) const {
  const Complex z = (s - center) / scale;
  Complex acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<Complex> Polynomial::monomial_coefficients() const {
  const std::size_t n = coefficients.size();
  std::vector<Complex> out(n, Complex{0.0});
  // ((s - c)/r)^k expanded by the binomial theorem.
  std::vector<double> binom(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    binom.assign(n, 0.0);
    binom[0] = 1.0;
    for (std::size_t i = 1; i <= k; ++i) binom[i] = binom[i - 1] * static_cast<double>(k - i + 1) / static_cast<double>(i);
    const Complex weight = coefficients[k] / std::pow(scale, static_cast<double>(k));
    for (std::size_t j = 0; j <= k; ++j) {
      out[j] += weight * binom[j] * std::pow(-center, static_cast<double>(k - j));
    }
  }
  return out;
}

Complex TargetFunction::evaluate(Complex s, const EvalPrecision& prec) const {
  return std::visit(
      [&](const auto& v) -> Complex {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PolynomialTarget>) {
          return v.poly.evaluate(s);
        } else if constexpr (std::is_same_v<T, ExpPolynomialTarget>) {
          return exp_poly_eval(v.exponent, s);
        } else if constexpr (std::is_same_v<T, ZetaShiftTarget>) {
          return riemann_zeta(s + Complex{0.0, v.tau0}, prec);
        } else {
          return hurwitz_zeta(s + Complex{0.0, v.tau0}, HurwitzParams{v.alpha}, prec);
        }
      },
      variant_);
}

Eigen::VectorXcd TargetFunction::sample(const CompactPatch& patch, const EvalPrecision& prec) const {
  Eigen::VectorXcd out(patch.size());
  for (Eigen::Index i = 0; i < patch.size(); ++i) out[i] = evaluate(patch.points()[i], prec);
  return out;
}

bool TargetFunction::nonvanishing_on(const CompactPatch& patch, const EvalPrecision& prec) const {
  if (std::holds_alternative<ExpPolynomialTarget>(variant_)) return true;
  return (sample(patch, prec).cwiseAbs().array() > 0.0).all();
}

Evaluable TargetFunction::as_evaluable(const EvalPrecision& prec) const {
  return [self = *this, prec](Complex s) { return self.evaluate(s, prec); };
}

double sup_distance(const Evaluable& f, const Evaluable& g, const CompactPatch& patch) {
  double best = 0.0;
  for (const Complex& s : patch.points()) best = std::max(best, std::abs(f(s) - g(s)));
  return best;
}

FrechetDistance frechet_distance(const Evaluable& f, const Evaluable& g, int depth, const Exhaustion& exhaustion) {
  if (depth < 1) throw GeometryError("Frechet depth must be >= 1");
  FrechetDistance out{0.0, std::ldexp(1.0, -depth)};
  double seminorm = 0.0;  // p_n, running max over the nested grids
  for (int n = 1; n <= depth; ++n) {
    seminorm = std::max(seminorm, sup_distance(f, g, exhaustion.layer(n)));
    out.value += std::ldexp(std::min(1.0, seminorm), -n);
  }
  return out;
}

PolynomialFit mergelyan_fit(const Eigen::Ref<const Eigen::VectorXcd>& points,
                            const Eigen::Ref<const Eigen::VectorXcd>& values, int degree) {
  if (degree < 0) throw ConditioningError("degree must be >= 0");
  if (points.size() != values.size()) throw ConditioningError("points and values differ in length");
  const Eigen::Index cols = degree + 1;
  if (points.size() < cols) throw ConditioningError("fewer samples than coefficients");

  const Complex center = points.mean();
  double scale = (points.array() - center).abs().maxCoeff();
  if (!(scale > 0.0)) scale = 1.0;

  Eigen::MatrixXcd design(points.size(), cols);
  const Eigen::VectorXcd z = (points.array() - center) / scale;
  design.col(0).setOnes();
  for (Eigen::Index k = 1; k < cols; ++k) design.col(k) = design.col(k - 1).cwiseProduct(z);

  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smallest = sv[sv.size() - 1];
  const double condition = smallest > 0.0 ? std::pow(sv[0] / smallest, 2) : std::numeric_limits<double>::infinity();
  if (!(condition <= 1e12)) {
    std::ostringstream msg;
    msg << "normal system condition estimate " << condition << " exceeds 1e12";
    throw ConditioningError(msg.str());
  }
  const Eigen::VectorXcd coeffs = svd.solve(values);

  PolynomialFit fit;
  fit.poly.coefficients.assign(coeffs.data(), coeffs.data() + coeffs.size());
  fit.poly.center = center;
  fit.poly.scale = scale;
  fit.residual = (design * coeffs - values).cwiseAbs().maxCoeff();
  fit.condition_number = condition;
  return fit;
}

int coefficient_height(const GaussianRational& c) { return std::max(rational_height(c.re), rational_height(c.im)); }

int polynomial_height(const RationalPolynomial& p) {
  int h = 1;
  for (const auto& c : p.coefficients()) h = std::max(h, coefficient_height(c));
  return h;
}

BaseElement enumerate_base(std::uint64_t m) {
  if (m == 0) throw DomainError("base index must be >= 1");
  Count remaining = m - 1;
  BaseElement out;
  walk_blocks([&](std::int64_t n, const Block& block) {
    const Count size = block.size();
    if (remaining >= size) {
      remaining -= size;
      return false;
    }
    const auto digits = block.unrank(remaining);
    std::vector<GaussianRational> coeffs(digits.size());
    // digits are leading-first; coefficients are constant-first.
    for (std::size_t i = 0; i < digits.size(); ++i) {
      coeffs[digits.size() - 1 - i] = rational_table().gaussian_value(digits[i]);
    }
    out.n = static_cast<int>(n);
    out.p = RationalPolynomial(std::move(coeffs));
    return true;
  });
  return out;
}

std::uint64_t encode_base(const BaseElement& element) {
  if (element.n < 1) throw DomainError("base element requires N >= 1");
  const int d = element.p.degree();
  const int h = polynomial_height(element.p);
  if (d > kBaseDegreeBound || h > kBaseHeightBound) throw DomainError("polynomial outside the base bounds");

  std::vector<Count> digits;
  const auto& coeffs = element.p.coefficients();
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) digits.push_back(rational_table().gaussian_index(*it));

  Count offset = 0;
  walk_blocks([&](std::int64_t n, const Block& block) {
    if (n == element.n && block.h == h && block.d == d) {
      offset = sat_add(offset, block.rank(digits));
      return true;
    }
    offset = sat_add(offset, block.size());
    return false;
  });
  if (offset >= kSaturated - 1) throw OverflowError("base index exceeds 64 bits");
  return offset + 1;
}

}  // namespace zetauniv
