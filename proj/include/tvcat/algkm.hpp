#pragma once

#include "tvcat/structure.hpp"

#include <optional>
#include <vector>

namespace tvcat {

/// A strict T-algebra: a V-category (Z, c) with an action h: TZ -> Z.
struct TAlgebra {
  TVStructure base;
  MonadRef monad;
  Map action;

  static TAlgebra make(TVStructure base, MonadRef monad, Map action);
};

/// h is a V-functor (TZ, Tc) -> (Z, c), h.e = 1 and h.Th = h.m.
Report check_algebra(const TAlgebra& alg);

/// (Z, c.h): entries c(h z', z). Re-verified as a (T,V)-category.
Checked<TVStructure> algebra_to_tvcat(const TAlgebra& alg);

/// (TX, a^) with a^(x', y') = join { Ta(X, y') : m X = x' }, acting by m_X.
/// Re-verified as a V-category and as a T-algebra.
Checked<TAlgebra> free_algebra(const TVStructure& s);

/// The structure on TX of the induced monad: (W, x') -> a^(m W, x'), bottom
/// where m W is undefined. Re-verified as a category, with e_X : S -> result
/// and (optionally) m_X : induced(result) -> result checked as functors.
Checked<TVStructure> induced_structure(const TVStructure& s, bool check_multiplication = true);

/// The KZ witness on S: Te_X <= e_TX as functors S' -> S'' where S' is the
/// induced structure and S'' the induced structure of S'. With `induced`
/// given, it replaces the computed S' (used to test corrupted structures).
Report check_kz(const TVStructure& s, const std::optional<TVStructure>& induced = std::nullopt);

struct RepresentabilityCertificate {
  Map structure_map;
  bool functor_ok = false;
  bool adjunction_ok = false;
  bool roundtrip_ok = false;
  /// Every qualifying map in enumeration order; the first is structure_map.
  std::vector<Map> qualifying;
  /// Whether all qualifying maps are isomorphic in the functor order.
  bool unique_up_to_iso = true;
};

static constexpr std::size_t max_representation_candidates = 1000000;

/// Checks f: TX -> X as a candidate pseudo-algebra structure on S:
/// a functor from the induced structure, left adjoint to e_X, and
/// a(e f x', x) = a(x', x).
RepresentabilityCertificate certify(const TVStructure& s, const Map& f);

/// Enumerates all f: TX -> X. Refuses structures that are not categories.
std::optional<RepresentabilityCertificate> find_representation(const TVStructure& s);

/// ((Z, c^o), h).
Checked<TAlgebra> dual_algebra(const TAlgebra& alg);
/// The dual (T,V)-category on TX: (W, x') -> join { T(a^o)(m W, Y) : m Y = x' }.
Checked<TVStructure> dual_tvcat(const TVStructure& s);
/// The dual of a representable structure on X: (x', x) -> a(e_X x, f x').
Checked<TVStructure> dual_representable(const TVStructure& s, const RepresentabilityCertificate& cert);

/// Whether the dual of the dual of a representable structure gives back S.
/// Never a precondition; only reported.
Report double_dual_probe(const TVStructure& s);

/// Refuses the instance unless the monad satisfies the beta-hat isomorphism
/// (and, with `transpose`, transpose compatibility) over its quantale.
void require_standing_assumptions(const MonadRef& m, const QuantaleRef& q, bool transpose);

} // namespace tvcat
