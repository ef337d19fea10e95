// zetauniv command line: run one experiment from a config file and write
// its JSONL record (and optionally an SVG plot).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "zetauniv/errors.hpp"
#include "zetauniv/plot.hpp"
#include "zetauniv/run.hpp"

namespace {

enum ExitCode { kOk = 0, kInternal = 1, kConfig = 2, kNumerical = 3, kIo = 4 };

int report(const std::string& error_class, const std::string& message, int code) {
  std::cerr << zetauniv::dump_line(nlohmann::json{{"error_class", error_class}, {"message", message}}) << '\n';
  return code;
}

int default_threads() {
  const char* env = std::getenv("ZETAUNIV_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long value = std::strtol(env, &end, 10);
  if (*end != '\0' || value < 1) throw zetauniv::ConfigError("ZETAUNIV_THREADS must be a positive integer");
  return static_cast<int>(value);
}

std::string read_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw zetauniv::IoError("cannot read config '" + path + "'");
  std::stringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments with zeta-function universality"};
  app.set_version_flag("--version", zetauniv::library_version());
  std::string command;
  std::string config_path;
  std::string out_path;
  std::string plot_kind;
  int threads = 0;
  app.add_option("command", command, "eval | sweep | orbit | density | recur | gdelta | joint")->required();
  app.add_option("--config", config_path, "key = value config file")->required();
  app.add_option("--out", out_path, "record path (default: config 'output', else stdout)");
  app.add_option("--threads", threads, "worker threads (default: $ZETAUNIV_THREADS or 1)")->check(CLI::PositiveNumber);
  app.add_option("--plot", plot_kind, "also write <out>.svg: error_profile | density_curve");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("ConfigError", e.what(), kConfig);
  }

  try {
    const auto cli_command = zetauniv::parse_command(command);
    auto entries = zetauniv::parse_config_entries(read_file(config_path));
    if (const auto it = entries.find("command"); it != entries.end() && it->second != command) {
      throw zetauniv::ConfigError("config command '" + it->second + "' does not match '" + command + "'");
    }
    entries["command"] = zetauniv::to_string(cli_command);
    auto config = zetauniv::config_from_entries(entries);
    if (!out_path.empty()) config.output = out_path;
    config.threads = threads > 0 ? threads : (config.threads > 0 ? config.threads : default_threads());

    std::optional<zetauniv::PlotKind> kind;
    if (!plot_kind.empty()) {
      kind = zetauniv::parse_plot_kind(plot_kind);
      if (config.output.empty()) throw zetauniv::ConfigError("--plot needs --out or an 'output' key");
    }

    const auto record = zetauniv::run(config);
    const std::string text = record.to_text();
    if (config.output.empty()) {
      std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
      zetauniv::write_text_file(config.output, text);
    }
    if (kind) zetauniv::write_text_file(config.output + ".svg", zetauniv::emit_plot(record, *kind));
    return kOk;
  } catch (const zetauniv::ConfigError& e) {
    return report(e.error_class(), e.what(), kConfig);
  } catch (const zetauniv::GeometryError& e) {
    return report(e.error_class(), e.what(), kConfig);
  } catch (const zetauniv::IoError& e) {
    return report(e.error_class(), e.what(), kIo);
  } catch (const zetauniv::Error& e) {
    return report(e.error_class(), e.what(), kNumerical);
  } catch (const std::exception& e) {
    return report("InternalError", e.what(), kInternal);
  }
}
