#include "zetauniv/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "zetauniv/errors.hpp"

namespace zetauniv {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::int64_t parse_int64(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

// Index of the sign separating real and imaginary parts, or npos.
std::size_t imaginary_split(std::string_view text) {
  for (std::size_t i = text.size(); i-- > 1;) {
    if ((text[i] == '+' || text[i] == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') return i;
  }
  return std::string_view::npos;
}

Rational parse_rational(std::string_view text) {
  text = trim(text);
  const std::size_t slash = text.find('/');
  Rational r{parse_int64(text.substr(0, slash)), 1};
  if (slash != std::string_view::npos) r.den = parse_int64(text.substr(slash + 1));
  if (r.den == 0) throw ConfigError("zero denominator in '" + std::string(text) + "'");
  return r.reduced();
}

std::string format_rational_list(const RationalPolynomial& p) { return p.to_string(); }

template <typename T>
std::string join(const std::vector<T>& values, std::string (*fmt)(T)) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += fmt(values[i]);
  }
  return out;
}

// Tracks which keys were consumed so leftovers can be reported.
class Reader {
 public:
  explicit Reader(const ConfigEntries& entries) : entries_(entries) {}

  [[nodiscard]] bool has(const std::string& key) const { return entries_.count(key) > 0; }

  std::string text(const std::string& key, std::string fallback) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    used_.insert(key);
    return it->second;
  }

  template <typename Parse>
  auto value(const std::string& key, decltype(std::declval<Parse>()(std::string_view{})) fallback, Parse parse) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    used_.insert(key);
    try {
      return parse(std::string_view(it->second));
    } catch (const Error& e) {
      throw ConfigError(key + ": " + e.what());
    } catch (const std::exception& e) {
      throw ConfigError(key + ": " + e.what());
    }
  }

  double real(const std::string& key, double fallback) { return value(key, fallback, parse_real); }
  Complex complex(const std::string& key, Complex fallback) { return value(key, fallback, parse_complex); }
  std::int64_t integer(const std::string& key, std::int64_t fallback) { return value(key, fallback, parse_int64); }

  bool boolean(const std::string& key, bool fallback) {
    return value(key, fallback, [](std::string_view v) {
      if (v == "true") return true;
      if (v == "false") return false;
      throw ConfigError("expected true or false, got '" + std::string(v) + "'");
    });
  }

  std::vector<double> reals(const std::string& key) {
    return value(key, std::vector<double>{}, [](std::string_view v) {
      std::vector<double> out;
      for (auto item : split_list(v)) out.push_back(parse_real(item));
      return out;
    });
  }

  std::vector<Complex> complexes(const std::string& key, std::vector<Complex> fallback) {
    return value(key, std::move(fallback), [](std::string_view v) {
      std::vector<Complex> out;
      for (auto item : split_list(v)) out.push_back(parse_complex(item));
      return out;
    });
  }

  RationalPolynomial rational_poly(const std::string& key) {
    return value(key, RationalPolynomial{}, [](std::string_view v) {
      std::vector<GaussianRational> out;
      for (auto item : split_list(v)) out.push_back(parse_gaussian_rational(item));
      if (out.empty()) throw ConfigError("empty coefficient list");
      return RationalPolynomial(std::move(out));
    });
  }

  void reject_unused() const {
    for (const auto& [key, v] : entries_) {
      if (used_.count(key) == 0) throw ConfigError("unknown or inapplicable key '" + key + "'");
    }
  }

 private:
  const ConfigEntries& entries_;
  std::set<std::string> used_;
};

Subject read_subject(Reader& in, const std::string& prefix) {
  const std::string kind = in.text(prefix + "subject", "riemann");
  if (kind == "riemann") return Subject::riemann();
  if (kind == "log_riemann") return Subject::log_riemann();
  if (kind == "hurwitz") return Subject::hurwitz(in.real(prefix + "subject.alpha", 1.0));
  throw ConfigError(prefix + "subject: unknown subject '" + kind + "'");
}

void write_subject(ConfigEntries& out, const std::string& prefix, const Subject& subject) {
  out[prefix + "subject"] = subject.name();
  if (subject.kind == Subject::Kind::hurwitz) out[prefix + "subject.alpha"] = format_real(subject.alpha);
}

PatchConfig read_patch(Reader& in, const std::string& prefix) {
  PatchConfig patch;
  patch.strip.sigma_lo = in.real(prefix + "strip.sigma_lo", patch.strip.sigma_lo);
  patch.strip.sigma_hi = in.real(prefix + "strip.sigma_hi", patch.strip.sigma_hi);
  const std::string shape = in.text(prefix + "patch.shape", "disc");
  if (shape == "disc") {
    Disc d = std::get<Disc>(patch.shape);
    d.center = in.complex(prefix + "patch.center", d.center);
    d.radius = in.real(prefix + "patch.radius", d.radius);
    patch.shape = d;
  } else if (shape == "rectangle") {
    Rectangle r{0.6, 0.9, 0.0, 1.0};
    r.sigma1 = in.real(prefix + "patch.sigma1", r.sigma1);
    r.sigma2 = in.real(prefix + "patch.sigma2", r.sigma2);
    r.t1 = in.real(prefix + "patch.t1", r.t1);
    r.t2 = in.real(prefix + "patch.t2", r.t2);
    patch.shape = r;
  } else {
    throw ConfigError(prefix + "patch.shape: expected disc or rectangle, got '" + shape + "'");
  }
  patch.grid_step = in.real(prefix + "patch.grid_step", patch.grid_step);
  return patch;
}

void write_patch(ConfigEntries& out, const std::string& prefix, const PatchConfig& patch) {
  out[prefix + "strip.sigma_lo"] = format_real(patch.strip.sigma_lo);
  out[prefix + "strip.sigma_hi"] = format_real(patch.strip.sigma_hi);
  if (const auto* d = std::get_if<Disc>(&patch.shape)) {
    out[prefix + "patch.shape"] = "disc";
    out[prefix + "patch.center"] = format_complex(d->center);
    out[prefix + "patch.radius"] = format_real(d->radius);
  } else {
    const auto& r = std::get<Rectangle>(patch.shape);
    out[prefix + "patch.shape"] = "rectangle";
    out[prefix + "patch.sigma1"] = format_real(r.sigma1);
    out[prefix + "patch.sigma2"] = format_real(r.sigma2);
    out[prefix + "patch.t1"] = format_real(r.t1);
    out[prefix + "patch.t2"] = format_real(r.t2);
  }
  out[prefix + "patch.grid_step"] = format_real(patch.grid_step);
}

TargetFunction read_target(Reader& in, const std::string& prefix) {
  const std::string kind = in.text(prefix + "target.kind", "polynomial");
  if (kind == "polynomial") {
    Polynomial p;
    p.coefficients = in.complexes(prefix + "target.coeffs", p.coefficients);
    if (p.coefficients.empty()) throw ConfigError(prefix + "target.coeffs: empty coefficient list");
    p.center = in.complex(prefix + "target.center", p.center);
    p.scale = in.real(prefix + "target.scale", p.scale);
    return PolynomialTarget{std::move(p)};
  }
  if (kind == "exp_polynomial") return ExpPolynomialTarget{in.rational_poly(prefix + "target.exponent")};
  if (kind == "zeta_shift") return ZetaShiftTarget{in.real(prefix + "target.tau0", 0.0)};
  if (kind == "hurwitz_shift") {
    HurwitzShiftTarget t;
    t.alpha = in.real(prefix + "target.alpha", t.alpha);
    t.tau0 = in.real(prefix + "target.tau0", t.tau0);
    return t;
  }
  throw ConfigError(prefix + "target.kind: unknown target kind '" + kind + "'");
}

void write_target(ConfigEntries& out, const std::string& prefix, const TargetFunction& target) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PolynomialTarget>) {
          out[prefix + "target.kind"] = "polynomial";
          out[prefix + "target.coeffs"] = join(v.poly.coefficients, format_complex);
          out[prefix + "target.center"] = format_complex(v.poly.center);
          out[prefix + "target.scale"] = format_real(v.poly.scale);
        } else if constexpr (std::is_same_v<T, ExpPolynomialTarget>) {
          out[prefix + "target.kind"] = "exp_polynomial";
          out[prefix + "target.exponent"] = format_rational_list(v.exponent);
        } else if constexpr (std::is_same_v<T, ZetaShiftTarget>) {
          out[prefix + "target.kind"] = "zeta_shift";
          out[prefix + "target.tau0"] = format_real(v.tau0);
        } else {
          out[prefix + "target.kind"] = "hurwitz_shift";
          out[prefix + "target.alpha"] = format_real(v.alpha);
          out[prefix + "target.tau0"] = format_real(v.tau0);
        }
      },
      target.variant());
}

void validate_target(const TargetFunction& target) {
  std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PolynomialTarget>) {
          if (v.poly.coefficients.empty()) throw ConfigError("polynomial target needs coefficients");
          if (!(v.poly.scale > 0.0) || !std::isfinite(v.poly.scale)) throw ConfigError("target.scale must be > 0");
        } else if constexpr (std::is_same_v<T, ZetaShiftTarget>) {
          if (!std::isfinite(v.tau0)) throw ConfigError("target.tau0 must be finite");
        } else if constexpr (std::is_same_v<T, HurwitzShiftTarget>) {
          if (!(v.alpha > 0.0 && v.alpha <= 1.0)) throw ConfigError("target.alpha must lie in (0, 1]");
          if (!std::isfinite(v.tau0)) throw ConfigError("target.tau0 must be finite");
        }
      },
      target.variant());
}

constexpr std::pair<Command, const char*> kCommandNames[] = {
    {Command::eval, "eval"},   {Command::sweep, "sweep"}, {Command::orbit, "orbit"},  {Command::density, "density"},
    {Command::recur, "recur"}, {Command::gdelta, "gdelta"}, {Command::joint, "joint"},
};

}  // namespace

std::string to_string(Command command) {
  for (const auto& [c, name] : kCommandNames) {
    if (c == command) return name;
  }
  return "unknown";
}

Command parse_command(std::string_view text) {
  for (const auto& [c, name] : kCommandNames) {
    if (text == name) return c;
  }
  throw ConfigError("unknown command '" + std::string(text) + "'");
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(Complex z) {
  const double im = z.imag();
  return format_real(z.real()) + (std::signbit(im) ? "-" : "+") + format_real(std::abs(im)) + "i";
}

double parse_real(std::string_view text) {
  text = trim(text);
  const std::string owned(text);
  char* end = nullptr;
  const double value = std::strtod(owned.c_str(), &end);
  if (owned.empty() || end != owned.c_str() + owned.size() || !std::isfinite(value)) {
    throw ConfigError("not a finite real: '" + owned + "'");
  }
  return value;
}

Complex parse_complex(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ConfigError("empty complex literal");
  if (text.back() != 'i') return {parse_real(text), 0.0};
  const std::string_view body = text.substr(0, text.size() - 1);
  const std::size_t split = imaginary_split(body);
  const std::string_view re = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
  std::string_view im = split == std::string_view::npos ? body : body.substr(split);
  double im_value = 0.0;
  if (im.empty() || im == "+") im_value = 1.0;
  else if (im == "-") im_value = -1.0;
  else im_value = parse_real(im);
  return {re.empty() ? 0.0 : parse_real(re), im_value};
}

GaussianRational parse_gaussian_rational(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ConfigError("empty rational literal");
  if (text.back() != 'i') return {parse_rational(text), Rational{0, 1}};
  const std::string_view body = text.substr(0, text.size() - 1);
  const std::size_t split = imaginary_split(body);
  const std::string_view re = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
  std::string_view im = split == std::string_view::npos ? body : body.substr(split);
  Rational im_value{1, 1};
  if (im == "-") im_value = {-1, 1};
  else if (!im.empty() && im != "+") im_value = parse_rational(im);
  return {re.empty() ? Rational{0, 1} : parse_rational(re), im_value};
}

ConfigEntries parse_config_entries(std::string_view text) {
  ConfigEntries entries;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (!entries.emplace(key, std::string(trim(line.substr(eq + 1)))).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    if (end == text.size()) break;
  }
  return entries;
}

RunConfig config_from_entries(const ConfigEntries& entries) {
  Reader in(entries);
  RunConfig c;
  c.schema_version = static_cast<int>(in.integer("schema_version", kSchemaVersion));
  c.command = in.value("command", Command::eval, parse_command);
  c.subject = read_subject(in, "");
  c.s = in.complex("s", c.s);
  c.patch = read_patch(in, "");
  c.target = read_target(in, "");

  const std::string mode = in.text("shift.mode", "continuous");
  if (mode == "continuous") {
    ContinuousShift shift = std::get<ContinuousShift>(c.shift);
    shift.t_max = in.real("shift.t_max", shift.t_max);
    shift.step = in.real("shift.step", shift.step);
    c.shift = shift;
  } else if (mode == "discrete") {
    DiscreteShift shift;
    shift.h = in.real("shift.h", shift.h);
    shift.n_max = static_cast<int>(in.integer("shift.n_max", shift.n_max));
    c.shift = shift;
  } else {
    throw ConfigError("shift.mode: expected continuous or discrete, got '" + mode + "'");
  }

  c.epsilon = in.real("epsilon", c.epsilon);
  c.h_list = in.reals("h_list");
  c.prec.shift_terms = static_cast<int>(in.integer("prec.shift_terms", c.prec.shift_terms));
  c.prec.bernoulli_order = static_cast<int>(in.integer("prec.bernoulli_order", c.prec.bernoulli_order));
  c.prec.target_tol = in.real("prec.target_tol", c.prec.target_tol);
  c.refine = in.boolean("refine", c.refine);
  c.curve_points = static_cast<int>(in.integer("density.curve_points", c.curve_points));

  c.gdelta.t0 = in.real("gdelta.t0", c.gdelta.t0);
  const std::int64_t m_max = in.integer("gdelta.m_max", static_cast<std::int64_t>(c.gdelta.m_max));
  if (m_max < 1) throw ConfigError("gdelta.m_max must be >= 1");
  c.gdelta.m_max = static_cast<std::uint64_t>(m_max);
  c.gdelta.n_max = static_cast<int>(in.integer("gdelta.n_max", c.gdelta.n_max));
  c.gdelta.grid_step = in.real("gdelta.grid_step", c.gdelta.grid_step);

  const std::int64_t count = in.integer("joint.count", 0);
  if (count < 0 || count > 64) throw ConfigError("joint.count must lie in [0, 64]");
  for (std::int64_t k = 0; k < count; ++k) {
    const std::string prefix = "joint." + std::to_string(k) + ".";
    JointComponentConfig component;
    component.subject = read_subject(in, prefix);
    component.patch = read_patch(in, prefix);
    component.target = read_target(in, prefix);
    component.h = in.real(prefix + "h", component.h);
    c.joint.push_back(std::move(component));
  }

  c.output = in.text("output", "");
  c.threads = static_cast<int>(in.integer("threads", c.threads));
  in.reject_unused();
  c.validate();
  return c;
}

RunConfig parse_config(std::string_view text) { return config_from_entries(parse_config_entries(text)); }

RunConfig load_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_config(buffer.str());
}

void RunConfig::validate() const {
  try {
    if (schema_version != kSchemaVersion) throw ConfigError("unsupported schema_version " + std::to_string(schema_version));
    subject.validate();
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) throw ConfigError("s must be finite");
    (void)patch.build();
    validate_target(target);
    zetauniv::validate(shift);
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ConfigError("epsilon must be > 0");
    for (const double h : h_list) {
      if (!(h > 0.0)) throw ConfigError("h_list entries must be > 0");
    }
    prec.validate();
    if (curve_points < 1) throw ConfigError("density.curve_points must be >= 1");
    if (!(gdelta.t0 > 0.0)) throw ConfigError("gdelta.t0 must be > 0");
    if (gdelta.m_max < 1) throw ConfigError("gdelta.m_max must be >= 1");
    if (gdelta.n_max < 1) throw ConfigError("gdelta.n_max must be >= 1");
    (void)Exhaustion(StripDomain{}, gdelta.grid_step);
    for (const auto& component : joint) {
      component.subject.validate();
      (void)component.patch.build();
      validate_target(component.target);
      if (!(component.h > 0.0) || !std::isfinite(component.h)) throw ConfigError("joint h entries must be > 0");
    }
    if (threads < 0) throw ConfigError("threads must be >= 0");

    const bool continuous = std::holds_alternative<ContinuousShift>(shift);
    switch (command) {
      case Command::orbit:
        if (continuous) throw ConfigError("orbit requires shift.mode = discrete");
        break;
      case Command::sweep:
      case Command::density:
      case Command::recur:
        if (!continuous) throw ConfigError(to_string(command) + " requires shift.mode = continuous");
        break;
      case Command::joint:
        if (!continuous) throw ConfigError("joint requires shift.mode = continuous");
        if (joint.empty()) throw ConfigError("joint requires joint.count >= 1");
        break;
      default:
        break;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string(e.error_class()) + ": " + e.what());
  }
}

ConfigEntries config_to_entries(const RunConfig& c, bool include_runtime) {
  ConfigEntries out;
  out["schema_version"] = std::to_string(c.schema_version);
  out["command"] = to_string(c.command);
  write_subject(out, "", c.subject);
  out["s"] = format_complex(c.s);
  write_patch(out, "", c.patch);
  write_target(out, "", c.target);
  if (const auto* cs = std::get_if<ContinuousShift>(&c.shift)) {
    out["shift.mode"] = "continuous";
    out["shift.t_max"] = format_real(cs->t_max);
    out["shift.step"] = format_real(cs->step);
  } else {
    const auto& ds = std::get<DiscreteShift>(c.shift);
    out["shift.mode"] = "discrete";
    out["shift.h"] = format_real(ds.h);
    out["shift.n_max"] = std::to_string(ds.n_max);
  }
  out["epsilon"] = format_real(c.epsilon);
  out["h_list"] = join(c.h_list, format_real);
  out["prec.shift_terms"] = std::to_string(c.prec.shift_terms);
  out["prec.bernoulli_order"] = std::to_string(c.prec.bernoulli_order);
  out["prec.target_tol"] = format_real(c.prec.target_tol);
  out["refine"] = c.refine ? "true" : "false";
  out["density.curve_points"] = std::to_string(c.curve_points);
  out["gdelta.t0"] = format_real(c.gdelta.t0);
  out["gdelta.m_max"] = std::to_string(c.gdelta.m_max);
  out["gdelta.n_max"] = std::to_string(c.gdelta.n_max);
  out["gdelta.grid_step"] = format_real(c.gdelta.grid_step);
  out["joint.count"] = std::to_string(c.joint.size());
  for (std::size_t k = 0; k < c.joint.size(); ++k) {
    const std::string prefix = "joint." + std::to_string(k) + ".";
    write_subject(out, prefix, c.joint[k].subject);
    write_patch(out, prefix, c.joint[k].patch);
    write_target(out, prefix, c.joint[k].target);
    out[prefix + "h"] = format_real(c.joint[k].h);
  }
  if (include_runtime) {
    out["output"] = c.output;
    out["threads"] = std::to_string(c.threads);
  }
  return out;
}

std::string serialize_config(const RunConfig& config, bool include_runtime) {
  std::string text;
  for (const auto& [key, value] : config_to_entries(config, include_runtime)) text += key + " = " + value + "\n";
  return text;
}

}  // namespace zetauniv
