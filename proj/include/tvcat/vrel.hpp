#pragma once

#include "tvcat/finset.hpp"
#include "tvcat/quantale.hpp"
#include "tvcat/report.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tvcat {

/// A map between finite sets, possibly partial (entries equal to `undefined`).
/// Partial maps only arise from bounded monads whose multiplication overflows.
struct Map {
  static constexpr std::size_t undefined = static_cast<std::size_t>(-1);

  SetRef source;
  SetRef target;
  std::vector<std::size_t> image;

  Map() = default;
  Map(SetRef source, SetRef target, std::vector<std::size_t> image);

  static Map identity(const SetRef& x);
  static Map constant(const SetRef& x, const SetRef& y, std::size_t y0);

  std::size_t operator()(std::size_t x) const { return image[x]; }
  bool defined(std::size_t x) const { return image[x] != undefined; }
  bool total() const noexcept;

  /// `g` after this map. Undefined points stay undefined.
  Map then(const Map& g) const;

  friend bool operator==(const Map& a, const Map& b) {
    return same_set(a.source, b.source) && same_set(a.target, b.target) && a.image == b.image;
  }
};

/// Dense V-valued matrix X x Y -> V.
class VRel {
public:
  VRel() = default;
  /// Bottom everywhere unless `fill` is given.
  VRel(QuantaleRef q, SetRef source, SetRef target);
  VRel(QuantaleRef q, SetRef source, SetRef target, Value fill);

  const QuantaleRef& quantale() const noexcept { return q_; }
  const SetRef& source() const noexcept { return src_; }
  const SetRef& target() const noexcept { return tgt_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Value at(std::size_t x, std::size_t y) const noexcept { return data_[x * cols_ + y]; }
  void set(std::size_t x, std::size_t y, Value v) noexcept { data_[x * cols_ + y] = v; }
  const std::vector<Value>& data() const noexcept { return data_; }

  friend bool operator==(const VRel& a, const VRel& b) {
    return a.q_ == b.q_ && same_set(a.src_, b.src_) && same_set(a.tgt_, b.tgt_) && a.data_ == b.data_;
  }

private:
  QuantaleRef q_;
  SetRef src_, tgt_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Value> data_;
};

/// The composite "s after r": result(x,z) = join_y r(x,y) * s(y,z).
VRel compose(const VRel& r, const VRel& s);
VRel transpose(const VRel& r);
/// k on the graph of f, bottom elsewhere (including rows where f is undefined).
VRel graph(const QuantaleRef& q, const Map& f);
VRel identity_rel(const QuantaleRef& q, const SetRef& x);

/// Pointwise order; the witness is the first (x,y) in row-major order where
/// r(x,y) <= r2(x,y) fails.
Verdict rel_leq(const VRel& r, const VRel& r2);
Verdict rel_eq(const VRel& r, const VRel& r2);

void require_same_shape(const VRel& r, const VRel& r2, const char* what);

} // namespace tvcat

namespace tvcat {

/// Compact printable form "[[v,v],[v,v]]" using value names, and its inverse.
std::string rel_literal(const VRel& r);
VRel rel_from_literal(const QuantaleRef& q, const SetRef& source, const SetRef& target,
                      std::string_view text);

} // namespace tvcat
