#pragma once

#include <stdexcept>
#include <string>

namespace tvcat {

/// Unknown builtin names, bad parameters, malformed tables.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Relations, maps or structures whose sources and targets do not line up.
class ShapeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A carrier or search space above its cap, or a bounded monad asked to
/// multiply past its arity budget.
class BudgetError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The instance does not satisfy the standing hypotheses of an operation
/// (e.g. the structure is not a category, or the extension fails a law the
/// construction depends on).
class PreconditionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace tvcat
