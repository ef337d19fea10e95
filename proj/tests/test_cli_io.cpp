#include <doctest.h>

#include <random>

#include "zetauniv/errors.hpp"
#include "zetauniv/plot.hpp"
#include "zetauniv/run.hpp"

using namespace zetauniv;

namespace {

class ConfigGenerator {
 public:
  explicit ConfigGenerator(std::uint64_t seed) : rng_(seed) {}

  RunConfig operator()() {
    RunConfig c;
    c.command = static_cast<Command>(pick(7));
    c.subject = subject();
    c.s = {uniform(-3.0, 3.0), uniform(-50.0, 50.0)};
    c.patch = patch();
    c.target = target();
    if (c.command == Command::orbit || (c.command == Command::eval && pick(2) == 0)) {
      c.shift = DiscreteShift{uniform(0.01, 5.0), static_cast<int>(pick(50))};
    } else {
      const double t_max = uniform(0.5, 200.0);
      c.shift = ContinuousShift{t_max, uniform(1e-3, t_max)};
    }
    c.epsilon = uniform(1e-6, 3.0);
    for (std::size_t k = pick(4); k > 0; --k) c.h_list.push_back(uniform(0.01, 3.0));
    c.prec.shift_terms = 1 + static_cast<int>(pick(200));
    c.prec.bernoulli_order = 1 + static_cast<int>(pick(EvalPrecision::kMaxBernoulliOrder));
    c.prec.target_tol = std::pow(10.0, -uniform(4.0, 14.0));
    c.refine = pick(2) == 0;
    c.curve_points = 1 + static_cast<int>(pick(500));
    c.gdelta = {uniform(0.1, 5.0), 1 + pick(100), 1 + static_cast<int>(pick(40)), uniform(0.02, 0.5)};
    for (std::size_t k = (c.command == Command::joint ? 1 : 0) + pick(3); k > 0; --k) {
      c.joint.push_back({subject(), patch(), target(), uniform(0.1, 3.0)});
    }
    c.output = pick(2) == 0 ? "" : "out/run_" + std::to_string(pick(1000)) + ".jsonl";
    c.threads = static_cast<int>(pick(9));
    return c;
  }

 private:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }

  Subject subject() {
    switch (pick(3)) {
      case 0: return Subject::riemann();
      case 1: return Subject::hurwitz(uniform(0.01, 1.0));
      default: return Subject::log_riemann();
    }
  }

  PatchConfig patch() {
    PatchConfig p;
    p.grid_step = uniform(0.01, 0.2);
    if (pick(2) == 0) {
      const double r = uniform(0.01, 0.2);
      p.shape = Disc{{uniform(0.5 + r + 1e-3, 1.0 - r - 1e-3), uniform(-10.0, 10.0)}, r};
      p.grid_step = r * uniform(0.2, 1.0);  // keeps the centre row of the lattice non-empty
    } else {
      const double a = uniform(0.51, 0.99);
      const double b = uniform(a, 0.99);
      const double t = uniform(-10.0, 10.0);
      p.shape = Rectangle{a, b, t, t + uniform(0.0, 3.0)};
    }
    return p;
  }

  Rational rational() {
    return {static_cast<std::int64_t>(pick(41)) - 20, 1 + static_cast<std::int64_t>(pick(16))};
  }

  TargetFunction target() {
    switch (pick(4)) {
      case 0: {
        Polynomial p;
        p.coefficients.clear();
        for (std::size_t k = 1 + pick(5); k > 0; --k) p.coefficients.push_back({uniform(-2, 2), uniform(-2, 2)});
        p.center = {uniform(0.5, 1.0), uniform(-5, 5)};
        p.scale = uniform(0.1, 3.0);
        return PolynomialTarget{p};
      }
      case 1: {
        std::vector<GaussianRational> c;
        for (std::size_t k = 1 + pick(4); k > 0; --k) c.push_back({rational(), rational()});
        return ExpPolynomialTarget{RationalPolynomial(std::move(c))};
      }
      case 2: return ZetaShiftTarget{uniform(0.0, 100.0)};
      default: return HurwitzShiftTarget{uniform(0.01, 1.0), uniform(0.0, 100.0)};
    }
  }

  std::mt19937_64 rng_;
};

RunConfig sweep_config() {
  return parse_config(
      "command = sweep\n"
      "patch.shape = disc\n"
      "patch.center = 0.75+0i\n"
      "patch.radius = 0.05\n"
      "patch.grid_step = 0.05\n"
      "target.kind = zeta_shift\n"
      "target.tau0 = 0.4\n"
      "shift.mode = continuous\n"
      "shift.t_max = 1\n"
      "shift.step = 0.5\n");
}

}  // namespace

TEST_CASE("config round trip over generated configs") {
  ConfigGenerator generate(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const RunConfig c = generate();
    const std::string text = serialize_config(c);
    CAPTURE(text);
    const RunConfig back = parse_config(text);
    CHECK(back == c);
    CHECK(serialize_config(back) == text);
  }
}

TEST_CASE("config parsing rejects bad input") {
  CHECK_THROWS_AS((void)parse_config("epsilon = -1\n"), ConfigError);
  CHECK_THROWS_AS((void)parse_config("epsilon = 0.1\nepsilon = 0.2\n"), ConfigError);
  CHECK_THROWS_AS((void)parse_config("epsilom = 0.1\n"), ConfigError);
  CHECK_THROWS_AS((void)parse_config("patch.shape = disc\npatch.sigma1 = 0.6\n"), ConfigError);
  CHECK_THROWS_AS((void)parse_config("command = orbit\n"), ConfigError);
  CHECK_THROWS_AS((void)parse_config("patch.center = 0.5+0i\n"), ConfigError);
  CHECK_THROWS_AS((void)parse_config("just words\n"), ConfigError);
  CHECK_THROWS_AS((void)parse_config("command = explode\n"), ConfigError);
  CHECK_NOTHROW((void)parse_config("# comment only\n\nepsilon = 0.5  # trailing\n"));
}

TEST_CASE("literals") {
  CHECK(parse_complex("0.75+0i") == Complex{0.75, 0.0});
  CHECK(parse_complex("-2-3.5i") == Complex{-2.0, -3.5});
  CHECK(parse_complex("i") == Complex{0.0, 1.0});
  CHECK(parse_complex("1e-3-1e2i") == Complex{1e-3, -100.0});
  CHECK(parse_real(format_real(0.1)) == 0.1);
  const auto g = parse_gaussian_rational("1/2-3/4i");
  CHECK(g.re == Rational{1, 2});
  CHECK(g.im == Rational{-3, 4});
}

TEST_CASE("eval record") {
  const auto record = run(parse_config("command = eval\nsubject = riemann\ns = 2\n"));
  const auto text = record.to_text();
  CHECK(text.find("1.6449340668482264") != std::string::npos);
  const auto header = record.of_type("header");
  REQUIRE(header.size() == 1);
  CHECK((*header[0])["schema_version"] == 1);
  CHECK((*header[0])["library"] == "zetauniv");
  CHECK(parse_record(text).to_text() == text);
}

TEST_CASE("sweep record and replay") {
  const RunConfig config = sweep_config();
  const auto record = run(config);
  const auto samples = record.of_type("sample");
  REQUIRE(samples.size() == 3);
  CHECK((*samples[1])["row"][0] == 0.5);

  ConfigEntries echo;
  for (const auto& [key, value] : (*record.of_type("header")[0])["config"].items()) echo[key] = value;
  RunConfig replay = config_from_entries(echo);
  CHECK(run(replay).to_text() == record.to_text());

  RunConfig threaded = config;
  threaded.threads = 5;
  threaded.output = "elsewhere.jsonl";
  CHECK(run(threaded).to_text() == record.to_text());
}

TEST_CASE("plots") {
  const auto record = run(sweep_config());
  const std::string svg = emit_plot(record, PlotKind::error_profile);
  CHECK(svg.find("width=\"800\"") != std::string::npos);
  CHECK(svg.find("height=\"500\"") != std::string::npos);
  const auto digest = (*record.of_type("header")[0])["config_digest"].get<std::string>();
  CHECK(svg.find(digest) != std::string::npos);

  const auto polyline = svg.find("<polyline");
  REQUIRE(polyline != std::string::npos);
  const auto points_at = svg.find("points=\"", polyline) + 8;
  const std::string points = svg.substr(points_at, svg.find('"', points_at) - points_at);
  CHECK(std::count(points.begin(), points.end(), ',') == 3);

  CHECK(emit_plot(parse_record(record.to_text()), PlotKind::error_profile) == svg);
  CHECK_NOTHROW((void)emit_plot(record, PlotKind::density_curve));

  ResultRecord broken = record;
  for (auto& line : broken.lines) {
    if (line["type"] == "sample") line["row"] = nlohmann::json::array({line["row"][0], nullptr, "PrecisionError"});
  }
  CHECK_THROWS_AS((void)emit_plot(broken, PlotKind::error_profile), EmptyProfileError);
}

TEST_CASE("error samples are drawn as distinct markers") {
  auto record = run(sweep_config());
  for (auto& line : record.lines) {
    if (line["type"] == "sample" && line["row"][0] == 0.5) {
      line["row"] = nlohmann::json::array({0.5, nullptr, "PrecisionError"});
    }
  }
  const std::string svg = emit_plot(record, PlotKind::error_profile);
  CHECK(svg.find("error-sample") != std::string::npos);
}

TEST_CASE("record writing reports I/O failures") {
  CHECK_THROWS_AS(write_text_file("/nonexistent-dir/x/y.jsonl", "x"), IoError);
  CHECK_THROWS_AS((void)read_record("/nonexistent-dir/x/y.jsonl"), IoError);
  CHECK_THROWS_AS((void)parse_record("{not json}\n"), IoError);
}
