#include "zetauniv/run.hpp"

#include <cstdlib>
#include <ctime>

#include "zetauniv/errors.hpp"

#ifndef ZETAUNIV_VERSION
#define ZETAUNIV_VERSION "0.0.0"
#endif

namespace zetauniv {

namespace {

using nlohmann::json;

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json sample_json(const Sample& s) {
  json line{{"type", "sample"}, {"row", json::array({s.tau, s.ok() ? json(s.error) : json(nullptr), s.status})}};
  if (!s.ok()) line["message"] = s.message;
  if (s.component >= 0) line["component"] = s.component;
  return line;
}

json density_json(const DensityEstimate& d) {
  return json{{"mode", d.mode == DensityEstimate::Mode::continuous ? "continuous" : "discrete"},
              {"epsilon", d.epsilon},
              {"horizon", d.horizon},
              {"hit_fraction", d.hit_fraction},
              {"hit_count", d.hit_count},
              {"ok_count", d.ok_count},
              {"error_count", d.error_count}};
}

json best_shift_json(const ErrorProfile& profile, const std::function<double(double)>& refine) {
  try {
    const BestShift best = search_best_shift(profile, refine);
    json out{{"coarse_tau", best.coarse_tau}, {"coarse_error", best.coarse_error}};
    out["refined_tau"] = best.refined_tau ? json(*best.refined_tau) : json(nullptr);
    out["refined_error"] = best.refined_error ? json(*best.refined_error) : json(nullptr);
    return out;
  } catch (const NoValidSampleError&) {
    return nullptr;
  }
}

void append_profile(ResultRecord& record, const ErrorProfile& profile, double epsilon, int curve_points) {
  for (const auto& s : profile.samples) record.lines.push_back(sample_json(s));
  for (const auto& d : density_curve(profile, epsilon, curve_points)) {
    json line = density_json(d);
    line["type"] = "density";
    record.lines.push_back(std::move(line));
  }
}

void append_discrete(ResultRecord& record, const std::vector<DiscreteEntry>& entries) {
  for (const auto& e : entries) {
    record.lines.push_back(json{{"type", "discrete"},
                                {"h", e.h},
                                {"n_max", e.n_max},
                                {"fresh_evaluation", e.fresh_evaluation},
                                {"continuous", density_json(e.continuous)},
                                {"discrete", density_json(e.discrete)}});
  }
}

json header_json(const RunConfig& config, double grid_step) {
  const std::string echo = serialize_config(config, false);
  json entries = json::object();
  for (const auto& [key, value] : config_to_entries(config, false)) entries[key] = value;
  return json{{"type", "header"},
              {"schema_version", config.schema_version},
              {"library", "zetauniv"},
              {"library_version", library_version()},
              {"timestamp", record_timestamp()},
              {"command", to_string(config.command)},
              {"config", entries},
              {"config_digest", digest_hex(echo)},
              {"precision",
               {{"shift_terms", config.prec.shift_terms},
                {"bernoulli_order", config.prec.bernoulli_order},
                {"target_tol", config.prec.target_tol}}},
              {"grid_step", grid_step}};
}

}  // namespace

const char* library_version() { return ZETAUNIV_VERSION; }

std::string record_timestamp() {
  std::time_t when = 0;
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long long value = std::strtoll(env, &end, 10);
    if (end != nullptr && *end == '\0' && value >= 0) when = static_cast<std::time_t>(value);
  }
  std::tm utc{};
  gmtime_r(&when, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

ResultRecord run(const RunConfig& config) {
  config.validate();
  const Parallelism parallelism{std::max(1, config.threads)};
  const EvalPrecision& prec = config.prec;
  ResultRecord record;

  switch (config.command) {
    case Command::eval: {
      record.lines.push_back(header_json(config, 0.0));
      const Complex value = config.subject.evaluate(config.s, prec);
      json line{{"type", "value"},
                {"subject", config.subject.name()},
                {"s", complex_json(config.s)},
                {"value", complex_json(value)},
                {"abs", std::abs(value)}};
      if (config.subject.kind == Subject::Kind::hurwitz) line["alpha"] = config.subject.alpha;
      if (config.subject.kind == Subject::Kind::riemann) {
        const Complex check = riemann_zeta_alternating(config.s, prec);
        line["alternating_value"] = complex_json(check);
        line["route_difference"] = std::abs(check - value);
      }
      record.lines.push_back(std::move(line));
      break;
    }
    case Command::sweep:
    case Command::orbit: {
      const CompactPatch patch = config.patch.build();
      record.lines.push_back(header_json(config, patch.grid_step()));
      const ErrorProfile profile =
          config.command == Command::sweep
              ? continuous_sweep(config.subject, config.target, patch, std::get<ContinuousShift>(config.shift), prec,
                                 parallelism)
              : discrete_orbit(config.subject, config.target, patch, std::get<DiscreteShift>(config.shift), prec,
                               parallelism);
      append_profile(record, profile, config.epsilon, config.curve_points);
      const auto refine = config.refine ? error_function(config.subject, config.target, patch, prec)
                                        : std::function<double(double)>{};
      record.lines.push_back(json{{"type", "summary"},
                                  {"best_shift", best_shift_json(profile, refine)},
                                  {"density", density_json(hit_density(profile, config.epsilon))}});
      break;
    }
    case Command::density: {
      const CompactPatch patch = config.patch.build();
      record.lines.push_back(header_json(config, patch.grid_step()));
      const auto report = density_comparison(config.subject, config.target, patch, config.epsilon,
                                             std::get<ContinuousShift>(config.shift), config.h_list, prec, parallelism);
      append_profile(record, report.profile, config.epsilon, config.curve_points);
      append_discrete(record, report.entries);
      record.lines.push_back(json{{"type", "summary"}, {"density", density_json(report.continuous_density)}});
      break;
    }
    case Command::recur: {
      const CompactPatch patch = config.patch.build();
      record.lines.push_back(header_json(config, patch.grid_step()));
      const auto report = self_recurrence(config.subject, patch, config.epsilon,
                                          std::get<ContinuousShift>(config.shift), config.h_list, prec, parallelism);
      append_profile(record, report.profile, config.epsilon, config.curve_points);
      append_discrete(record, report.discrete);
      json shifts = json::array();
      for (const auto& [tau, err] : report.best_self_shifts) shifts.push_back(json::array({tau, err}));
      record.lines.push_back(json{{"type", "summary"},
                                  {"density", density_json(report.continuous_density)},
                                  {"best_self_shifts", shifts}});
      break;
    }
    case Command::gdelta: {
      const Exhaustion exhaustion(StripDomain{}, config.gdelta.grid_step);
      record.lines.push_back(header_json(config, config.gdelta.grid_step));
      const auto result =
          gdelta_scan(config.gdelta.t0, config.gdelta.m_max, config.gdelta.n_max, exhaustion, prec, parallelism);
      std::size_t hits = 0;
      for (const auto& e : result.entries) {
        json line{{"type", "gdelta_entry"},
                  {"m", e.m},
                  {"N", e.n},
                  {"P", e.p.to_string()},
                  {"first_hit_n", e.first_hit_n ? json(*e.first_hit_n) : json(nullptr)},
                  {"hit_error", e.first_hit_n ? json(e.hit_error) : json(nullptr)},
                  {"best_n", e.best_n ? json(*e.best_n) : json(nullptr)},
                  {"best_error", e.best_n ? json(e.best_error) : json(nullptr)},
                  {"error_count", e.error_count}};
        if (!e.first_error.empty()) line["first_error"] = e.first_error;
        if (e.first_hit_n) ++hits;
        record.lines.push_back(std::move(line));
      }
      record.lines.push_back(json{{"type", "summary"},
                                  {"t0", result.t0},
                                  {"n_max", result.n_max},
                                  {"entries", result.entries.size()},
                                  {"certified_entries", hits}});
      break;
    }
    case Command::joint: {
      JointSpec spec;
      spec.epsilon = config.epsilon;
      for (const auto& c : config.joint) spec.components.push_back({c.subject, c.patch.build(), c.target, c.h});
      record.lines.push_back(header_json(config, spec.components.front().patch.grid_step()));
      const ErrorProfile profile = joint_sweep(spec, std::get<ContinuousShift>(config.shift), prec, parallelism);
      append_profile(record, profile, config.epsilon, config.curve_points);
      record.lines.push_back(json{{"type", "summary"},
                                  {"best_shift", best_shift_json(profile, {})},
                                  {"density", density_json(hit_density(profile, config.epsilon))}});
      break;
    }
  }
  return record;
}

}  // namespace zetauniv
