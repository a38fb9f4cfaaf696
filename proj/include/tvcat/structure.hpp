#pragma once

#include "tvcat/laxmonad.hpp"
#include "tvcat/quantale.hpp"
#include "tvcat/report.hpp"
#include "tvcat/vrel.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tvcat {

/// A carrier X with a relation a: TX -|-> X. Whether it is a (T,V)-category
/// is decided by check_category(); with the identity monad it is a candidate
/// V-category.
///
/// Structures derived through a partial multiplication have rows that are
/// undefined rather than bottom. Such rows hold bottom in `rel`, are skipped
/// whenever they would sit on the larger side of an inequality, and are read
/// as bottom on the smaller side.
struct TVStructure {
  std::string name;
  MonadRef monad;
  QuantaleRef quantale;
  SetRef carrier;
  VRel rel;
  /// Empty when every row is defined.
  std::vector<bool> undefined_rows;

  /// Validates that `rel` runs from T(carrier) to carrier.
  static TVStructure make(std::string name, MonadRef monad, SetRef carrier, VRel rel);
  /// Every entry equal to `fill`.
  static TVStructure constant(std::string name, MonadRef monad, QuantaleRef q, SetRef carrier, Value fill);

  const SetRef& tcarrier() const noexcept { return rel.source(); }
  Value at(std::size_t tx, std::size_t x) const noexcept { return rel.at(tx, x); }
  bool defined(std::size_t tx) const noexcept { return undefined_rows.empty() || !undefined_rows[tx]; }
  bool partial() const noexcept;
  bool is_vcat() const noexcept { return monad == identity_monad(); }
};

/// A value produced by a construction together with the re-verification of
/// the properties the construction promises.
template <class T>
struct Checked {
  T value;
  Report report;
};

/// k <= a(e x, x) and Ta(X,x') * a(x',x) <= a(m X, x); points where a bounded
/// multiplication is undefined are skipped.
Report check_category(const TVStructure& s);
/// Same, reusing an already computed extension Ta : TTX -|-> TX.
Report check_category(const TVStructure& s, const VRel& ta);

/// a(x', x) <= b(Tf x', f x) for all x' in TX, x in X.
Verdict check_functor(const TVStructure& a, const TVStructure& b, const Map& f);
/// k <= b(e_Y f x, g x) for all x: the order on functors X -> Y.
Verdict functor_leq(const TVStructure& a, const TVStructure& b, const Map& f, const Map& g);
/// Records check_functor under `law` in `rep`.
void record_functor(Report& rep, const std::string& law, const TVStructure& a, const TVStructure& b,
                    const Map& f);

/// The V-category (X, a.e_X): c(x, x') = a(e_X x, x').
Checked<TVStructure> underlying_vcat(const TVStructure& s);
/// The (T,V)-category (Z, e_Z^o . Tc) on a V-category (Z, c).
Checked<TVStructure> free_tvcat(const TVStructure& c, const MonadRef& monad);

struct AdjointSearch {
  std::optional<Map> right;
  /// a(x', g y) = b(Tf x', y) for the found g.
  Verdict equality;
  std::size_t candidates = 0;
};

static constexpr std::size_t max_adjoint_candidates = 1000000;

/// First g: Y -> X (lexicographic by image) that is a functor with
/// 1 <= g f and f g <= 1 in the functor order.
AdjointSearch find_right_adjoint(const TVStructure& a, const TVStructure& b, const Map& f);
/// g is a functor and the unit and counit inequalities hold.
Verdict adjunction_holds(const TVStructure& a, const TVStructure& b, const Map& f, const Map& g);
/// a(x', g y) = b(Tf x', y) for all x' in TX, y in Y.
Verdict adjoint_equality(const TVStructure& a, const TVStructure& b, const Map& f, const Map& g);

/// (TX, Tc) for a V-category (X, c), with e_X : C -> TC and m_X : TTC -> TC
/// checked to be V-functors.
Checked<TVStructure> lift_to_vcat(const MonadRef& monad, const TVStructure& c);
/// On the lifted V-categories: e_TX, Te_X and m_X are V-functors, and
/// m.e_T = m.Te = 1, m.Tm = m.m_T as maps.
Report check_two_monad(const MonadRef& monad, const TVStructure& c);

} // namespace tvcat
