#include "zetauniv/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <utility>
#include <vector>

#include "zetauniv/errors.hpp"

namespace zetauniv {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

std::string num(double x, const char* fmt = "%.3f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

struct Axis {
  double lo;
  double hi;

  [[nodiscard]] double span() const { return hi > lo ? hi - lo : 1.0; }
};

Axis range_of(const std::vector<double>& values, double floor_at) {
  Axis axis{floor_at, floor_at};
  if (!values.empty()) {
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    axis = {std::min(floor_at, *mn), std::max(floor_at, *mx)};
  }
  if (!(axis.hi > axis.lo)) axis.hi = axis.lo + 1.0;
  return axis;
}

class Canvas {
 public:
  Canvas(Axis x, Axis y) : x_(x), y_(y) {}

  [[nodiscard]] double px(double v) const { return kLeft + (v - x_.lo) / x_.span() * (kWidth - kLeft - kRight); }
  [[nodiscard]] double py(double v) const {
    return kHeight - kBottom - (v - y_.lo) / y_.span() * (kHeight - kTop - kBottom);
  }

  std::string frame(const std::string& title, const std::string& x_label, const std::string& y_label) const {
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" viewBox=\"0 0 800 500\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n";
    const std::string x0 = num(kLeft), x1 = num(kWidth - kRight);
    const std::string y0 = num(kHeight - kBottom), y1 = num(kTop);
    out += "<line x1=\"" + x0 + "\" y1=\"" + y0 + "\" x2=\"" + x1 + "\" y2=\"" + y0 + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + x0 + "\" y1=\"" + y0 + "\" x2=\"" + x0 + "\" y2=\"" + y1 + "\" stroke=\"black\"/>\n";
    auto text = [&](double x, double y, const std::string& anchor, const std::string& body) {
      out += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"" +
             anchor + "\">" + body + "</text>\n";
    };
    text(kWidth / 2.0, 20.0, "middle", title);
    text(kWidth / 2.0, kHeight - 10.0, "middle", x_label);
    text(15.0, kHeight / 2.0, "start", y_label);
    text(kLeft, kHeight - kBottom + 18.0, "middle", num(x_.lo, "%.6g"));
    text(kWidth - kRight, kHeight - kBottom + 18.0, "middle", num(x_.hi, "%.6g"));
    text(kLeft - 6.0, kHeight - kBottom + 4.0, "end", num(y_.lo, "%.6g"));
    text(kLeft - 6.0, kTop + 4.0, "end", num(y_.hi, "%.6g"));
    return out;
  }

  std::string polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color) const {
    std::string out = "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i > 0) out += ' ';
      out += num(px(pts[i].first)) + "," + num(py(pts[i].second));
    }
    out += "\"/>\n";
    return out;
  }

  std::string cross(double tau) const {
    const double x = px(tau);
    const double y = py(y_.lo);
    const std::string a = num(x - 4.0), b = num(x + 4.0), c = num(y - 4.0), d = num(y + 4.0);
    return "<path class=\"error-sample\" d=\"M" + a + "," + c + " L" + b + "," + d + " M" + a + "," + d + " L" + b +
           "," + c + "\" stroke=\"red\" fill=\"none\"/>\n";
  }

 private:
  Axis x_;
  Axis y_;
};

std::string digest_of(const ResultRecord& record) {
  const auto& header = record.header();
  const auto it = header.find("config_digest");
  return it != header.end() && it->is_string() ? it->get<std::string>() : std::string("none");
}

std::string error_profile_plot(const ResultRecord& record) {
  std::vector<std::pair<double, double>> ok;
  std::vector<double> failed;
  std::vector<double> taus;
  std::vector<double> errors;
  for (const auto* line : record.of_type("sample")) {
    const auto& row = line->at("row");
    const double tau = row.at(0).get<double>();
    taus.push_back(tau);
    if (row.at(2).get<std::string>() == "ok" && row.at(1).is_number()) {
      ok.emplace_back(tau, row.at(1).get<double>());
      errors.push_back(ok.back().second);
    } else {
      failed.push_back(tau);
    }
  }
  if (ok.empty()) throw EmptyProfileError("record has no ok samples to plot");

  const Canvas canvas(range_of(taus, taus.front()), range_of(errors, 0.0));
  std::string out = canvas.frame("error profile, config " + digest_of(record), "tau", "E");
  out += canvas.polyline(ok, "steelblue");
  for (const double tau : failed) out += canvas.cross(tau);
  out += "</svg>\n";
  return out;
}

std::string density_curve_plot(const ResultRecord& record) {
  std::vector<std::pair<double, double>> pts;
  std::vector<double> horizons;
  for (const auto* line : record.of_type("density")) {
    pts.emplace_back(line->at("horizon").get<double>(), line->at("hit_fraction").get<double>());
    horizons.push_back(pts.back().first);
  }
  if (pts.empty()) throw EmptyProfileError("record has no density curve to plot");

  const Canvas canvas(range_of(horizons, 0.0), Axis{0.0, 1.0});
  std::string out = canvas.frame("hit fraction vs horizon, config " + digest_of(record), "horizon", "fraction");
  out += canvas.polyline(pts, "darkgreen");
  out += "</svg>\n";
  return out;
}

}  // namespace

PlotKind parse_plot_kind(std::string_view text) {
  if (text == "error_profile") return PlotKind::error_profile;
  if (text == "density_curve") return PlotKind::density_curve;
  throw ConfigError("unknown plot kind '" + std::string(text) + "'");
}

std::string emit_plot(const ResultRecord& record, PlotKind kind) {
  if (record.lines.empty()) throw EmptyProfileError("empty record");
  return kind == PlotKind::error_profile ? error_profile_plot(record) : density_curve_plot(record);
}

}  // namespace zetauniv
