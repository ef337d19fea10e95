#include "zetauniv/record.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "zetauniv/errors.hpp"

namespace zetauniv {

namespace {

void dump_into(const nlohmann::json& value, std::string& out) {
  switch (value.type()) {
    case nlohmann::json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ',';
        first = false;
        out += nlohmann::json(key).dump();
        out += ':';
        dump_into(item, out);
      }
      out += '}';
      break;
    }
    case nlohmann::json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : value) {
        if (!first) out += ',';
        first = false;
        dump_into(item, out);
      }
      out += ']';
      break;
    }
    case nlohmann::json::value_t::number_float: {
      const double x = value.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        break;
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out += buf;
      break;
    }
    default:
      out += value.dump();
  }
}

}  // namespace

std::vector<const nlohmann::json*> ResultRecord::of_type(std::string_view type) const {
  std::vector<const nlohmann::json*> out;
  for (const auto& line : lines) {
    const auto it = line.find("type");
    if (it != line.end() && it->is_string() && it->get<std::string>() == type) out.push_back(&line);
  }
  return out;
}

std::string ResultRecord::to_text() const {
  std::string out;
  for (const auto& line : lines) {
    out += dump_line(line);
    out += '\n';
  }
  return out;
}

std::string dump_line(const nlohmann::json& value) {
  std::string out;
  dump_into(value, out);
  return out;
}

ResultRecord parse_record(std::string_view text) {
  ResultRecord record;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (line.empty()) continue;
    try {
      record.lines.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw IoError(std::string("malformed record line: ") + e.what());
    }
  }
  if (record.lines.empty()) throw IoError("empty record");
  return record;
}

ResultRecord read_record(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot read record '" + path + "'");
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_record(buffer.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << text;
  if (!file) throw IoError("failed writing '" + path + "'");
}

std::string digest_hex(std::string_view text) {
  std::uint64_t hash = 14695981039346656037ull;
  for (const unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace zetauniv
