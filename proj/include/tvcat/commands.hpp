#pragma once

#include "tvcat/document.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tvcat {

struct CommandOptions {
  std::string command;
  std::vector<std::string> targets;
  std::uint64_t seed = LawOptions{}.seed;
};

struct Section {
  std::string title;
  Report report;
  /// Derived data (structures, certificates, verdicts) in document form.
  nlohmann::json payload;
};

struct CommandResult {
  std::string command;
  std::vector<std::string> targets;
  std::vector<Section> sections;

  bool ok() const noexcept;
};

/// laws, check, free, underlying, induced, kz, represent, dual, compose,
/// module, yoneda.
const std::vector<std::string>& command_names();

/// Unknown commands and targets raise ConfigError; budget overruns raise
/// BudgetError. A target that fails a construction's precondition becomes a
/// section with a "precondition" violation.
CommandResult run_command(const Document& doc, const CommandOptions& opts);

nlohmann::json report_to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

std::string emit_text(const CommandResult& result);
/// Sorted keys, two-space indentation, trailing newline.
std::string emit_structured(const CommandResult& result);
std::string emit_error(const std::string& command, const std::string& message, int exit_code);

} // namespace tvcat
