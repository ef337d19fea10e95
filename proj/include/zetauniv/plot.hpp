#pragma once

#include <string>
#include <string_view>

#include "zetauniv/record.hpp"

namespace zetauniv {

enum class PlotKind { error_profile, density_curve };

[[nodiscard]] PlotKind parse_plot_kind(std::string_view text);

/// SVG line plot on a fixed 800x500 canvas with linear axes. Error-status
/// samples are drawn as crosses on the tau axis. The output depends only
/// on the record contents. Throws EmptyProfileError when nothing plottable
/// remains.
[[nodiscard]] std::string emit_plot(const ResultRecord& record, PlotKind kind);

}  // namespace zetauniv
