#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "iforge/spec_file.hpp"

namespace iforge::cli {

enum class Command { check, pencil, bracket, solve_ansatz, report };

std::optional<Command> parse_command(std::string_view text);
std::string_view command_name(Command c);

enum class Format { full, summary };

struct Options {
  std::uint64_t seed = 0;
  Format format = Format::full;
  std::optional<std::pair<std::string, std::string>> pair;  // bracket only
};

enum Status : int { ok = 0, failed = 1, input_error = 2 };

struct Outcome {
  int status = ok;
  Json report;         // always filled
  std::string output;  // rendered per Options::format
};

/// Runs one command on a parsed spec. Never throws; errors become status 2.
Outcome run(Command command, const SpecFile& spec, const Options& options);
/// Reads the spec from a file path, or from a built-in fixture when no such
/// file exists and the name matches one.
Outcome run(Command command, const std::string& spec_path, const Options& options);

/// Condensed text: one line per verdict and a final status line.
std::string summarize(const Json& report);

}  // namespace iforge::cli
