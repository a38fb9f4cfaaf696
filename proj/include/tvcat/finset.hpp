#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tvcat {

class FinSet;
using SetRef = std::shared_ptr<const FinSet>;

/// Finite set with a fixed element order. Elements are indices 0..size()-1.
///
/// Structured sets (lists, subsets, pairs) are never materialized: an index
/// decodes arithmetically into its components, so sets such as the third
/// powerset iterate of a two-point set cost no memory beyond their bases.
///
/// - lists(B, L): all lists over B of length <= L, ordered by length and then
///   lexicographically.
/// - subsets(B): all subsets of B; the index is the membership bitmask.
/// - pairs(A, B): A x B, index a * |B| + b.
class FinSet {
public:
  enum class Kind { atoms, lists, subsets, pairs };

  static constexpr std::size_t max_size = std::size_t{1} << 20;
  static constexpr std::size_t max_subset_base = 20;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  static SetRef atoms(std::vector<std::string> names);
  /// Atoms named "0".."n-1".
  static SetRef range(std::size_t n);
  static SetRef lists(SetRef base, std::size_t max_length);
  static SetRef subsets(SetRef base);
  static SetRef pairs(SetRef left, SetRef right);

  Kind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return size_; }

  /// Element set of lists/subsets, left factor of pairs.
  const SetRef& base() const noexcept { return base_; }
  const SetRef& right() const noexcept { return right_; }
  std::size_t max_length() const noexcept { return max_length_; }

  /// List entries or subset members (ascending) of element i.
  std::vector<std::size_t> items(std::size_t i) const;
  /// Length of a list or cardinality of a subset.
  std::size_t length(std::size_t i) const;
  /// Inverse of items(). Lists longer than max_length() give npos; subset
  /// members may repeat or come unsorted.
  std::size_t encode(std::span<const std::size_t> items) const;

  std::size_t pair(std::size_t l, std::size_t r) const noexcept { return l * right_->size() + r; }
  std::size_t first(std::size_t i) const noexcept { return i / right_->size(); }
  std::size_t second(std::size_t i) const noexcept { return i % right_->size(); }

  std::string label(std::size_t i) const;
  std::optional<std::size_t> find(std::string_view label) const;
  std::vector<std::string> labels() const;

  /// Structural equality: same kind, same bases, same atom names.
  bool same_as(const FinSet& other) const noexcept;

private:
  FinSet() = default;

  Kind kind_ = Kind::atoms;
  std::size_t size_ = 0;
  std::vector<std::string> names_;
  SetRef base_;
  SetRef right_;
  std::size_t max_length_ = 0;
  // lists: offsets_[k] = index of the first list of length k.
  std::vector<std::size_t> offsets_;
};

inline bool same_set(const SetRef& a, const SetRef& b) noexcept {
  return a == b || (a && b && a->same_as(*b));
}

} // namespace tvcat
