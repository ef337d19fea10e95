#pragma once

#include "zetauniv/config.hpp"
#include "zetauniv/record.hpp"

namespace zetauniv {

/// Library version string written into every record.
[[nodiscard]] const char* library_version();

/// Dispatches `config.command` and returns the record. Module errors
/// propagate unchanged (see errors.hpp for the classes).
[[nodiscard]] ResultRecord run(const RunConfig& config);

/// Record header timestamp: SOURCE_DATE_EPOCH when set, else the Unix epoch,
/// so that identical runs produce identical bytes.
[[nodiscard]] std::string record_timestamp();

}  // namespace zetauniv
