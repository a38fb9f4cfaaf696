#include "tvcat/commands.hpp"
#include "tvcat/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int exit_pass = 0;
constexpr int exit_violations = 1;
constexpr int exit_config = 2;
constexpr int exit_budget = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw tvcat::ConfigError("cannot read document '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks (T,V)-categories over finite quantales."};
  app.set_help_all_flag("--help-all");

  std::string command, doc_path, format = "text";
  std::vector<std::string> targets;
  std::uint64_t seed = tvcat::LawOptions{}.seed;
  std::optional<std::size_t> budget;

  app.add_option("command", command, "laws, check, free, underlying, induced, kz, represent, dual, compose, module, yoneda")
      ->required()
      ->check(CLI::IsMember(tvcat::command_names()));
  app.add_option("--doc", doc_path, "instance document")->required();
  app.add_option("--target", targets, "block name; repeatable, order matters for compose");
  app.add_option("--seed", seed, "seed for randomized law pools");
  app.add_option("--budget", budget, "list length bound, overrides the document")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_pass : exit_config;
  }

  const bool structured = format == "structured";
  auto fail = [&](const std::string& message, int code) {
    if (structured)
      std::cout << tvcat::emit_error(command, message, code);
    std::cerr << "tvcat: " << message << '\n';
    return code;
  };

  try {
    const auto doc = tvcat::parse_document(read_file(doc_path), budget);
    const auto result = tvcat::run_command(doc, {command, targets, seed});
    std::cout << (structured ? tvcat::emit_structured(result) : tvcat::emit_text(result));
    return result.ok() ? exit_pass : exit_violations;
  } catch (const tvcat::ParseError& e) {
    return fail(e.what(), exit_config);
  } catch (const tvcat::ConfigError& e) {
    return fail(e.what(), exit_config);
  } catch (const tvcat::ShapeError& e) {
    return fail(e.what(), exit_config);
  } catch (const tvcat::BudgetError& e) {
    return fail(e.what(), exit_budget);
  } catch (const tvcat::PreconditionError& e) {
    return fail(e.what(), exit_violations);
  }
}
