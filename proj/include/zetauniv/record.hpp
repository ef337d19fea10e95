#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace zetauniv {

/// Newline-delimited result record: a header object followed by payload
/// objects, each carrying a "type" field.
struct ResultRecord {
  std::vector<nlohmann::json> lines;

  [[nodiscard]] const nlohmann::json& header() const { return lines.front(); }
  /// Payload lines whose "type" equals `type`, in order.
  [[nodiscard]] std::vector<const nlohmann::json*> of_type(std::string_view type) const;
  [[nodiscard]] std::string to_text() const;
};

/// Compact JSON with object keys sorted and reals printed with 17
/// significant digits; non-finite reals become null.
[[nodiscard]] std::string dump_line(const nlohmann::json& value);

[[nodiscard]] ResultRecord parse_record(std::string_view text);
[[nodiscard]] ResultRecord read_record(const std::string& path);
/// Writes the text form; throws IoError.
void write_text_file(const std::string& path, const std::string& text);

/// FNV-1a 64-bit digest, as 16 hex digits.
[[nodiscard]] std::string digest_hex(std::string_view text);

}  // namespace zetauniv
