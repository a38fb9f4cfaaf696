#pragma once

#include "tvcat/finset.hpp"
#include "tvcat/report.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tvcat {

using Value = std::uint16_t;

class Quantale;
using QuantaleRef = std::shared_ptr<const Quantale>;

/// Finite commutative quantale with table-driven operations.
///
/// Values are indices into the carrier. The order must be a lattice, which
/// from_tables() enforces; the algebraic laws (associativity, unit,
/// distributivity, ...) are not enforced and are what check_quantale_laws()
/// inspects.
class Quantale {
public:
  static constexpr std::size_t max_carrier = 256;

  /// Raw description of a quantale. `leq` is row-major n x n; `tensor` is
  /// row-major n x n with entries in [0, n).
  struct Tables {
    std::string name;
    std::vector<std::string> values;
    std::vector<bool> leq;
    std::vector<Value> tensor;
    Value unit = 0;
  };

  /// bool2, lukasiewicz(n), cost(cap), powerset(n).
  static QuantaleRef make_builtin(std::string_view name, std::span<const long long> params = {});
  static QuantaleRef from_tables(Tables tables);

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return names_.size(); }
  const std::string& value_name(Value v) const { return names_.at(v); }
  std::optional<Value> find(std::string_view name) const;

  bool leq(Value a, Value b) const noexcept { return leq_[a * size() + b]; }
  Value tensor(Value a, Value b) const noexcept { return tensor_[a * size() + b]; }
  Value join(Value a, Value b) const noexcept { return join_[a * size() + b]; }
  Value meet(Value a, Value b) const noexcept { return meet_[a * size() + b]; }
  Value hom(Value a, Value b) const noexcept { return hom_[a * size() + b]; }
  Value join_all(std::span<const Value> vs) const noexcept;
  Value meet_all(std::span<const Value> vs) const noexcept;

  Value unit() const noexcept { return unit_; }
  Value bottom() const noexcept { return bottom_; }
  Value top() const noexcept { return top_; }

  /// The carrier as a finite set of atoms named by value_name().
  const SetRef& carrier() const noexcept { return carrier_; }

  /// A copy with the tensor table replaced (used to build broken instances).
  QuantaleRef with_tensor(std::vector<Value> tensor, std::string name) const;

private:
  Quantale() = default;

  std::string name_;
  std::vector<std::string> names_;
  std::vector<bool> leq_;
  std::vector<Value> tensor_, join_, meet_, hom_;
  Value unit_ = 0, bottom_ = 0, top_ = 0;
  bool bitmask_names_ = false;
  SetRef carrier_;
};

/// Exhaustive check of the quantale axioms: lattice order, associativity,
/// commutativity, unit, join-distributivity (all subsets of size <= 3 and the
/// empty join), bottom absorption and residuation.
Report check_quantale_laws(const Quantale& q);

} // namespace tvcat
