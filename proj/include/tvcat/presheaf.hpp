#pragma once

#include "tvcat/algkm.hpp"
#include "tvcat/structure.hpp"

#include <vector>

namespace tvcat {

/// A (T,V)-relation X -|-> Y, i.e. a V-relation TX -|-> Y between the
/// carriers of two structures over the same monad and quantale.
struct TVRel {
  TVStructure source;
  TVStructure target;
  VRel rel;

  static TVRel make(TVStructure source, TVStructure target, VRel rel);
};

/// Kleisli convolution "s after r": (x', z) -> join { Tr(X, y') * s(y', z) : m X = x' }.
TVRel kleisli_compose(const TVRel& r, const TVRel& s);
/// a as a (T,V)-relation from S to itself.
TVRel identity_tvrel(const TVStructure& s);

/// r convolved with the source structure and the target structure both give r.
Verdict is_module(const TVRel& r);

/// (V, hom . xi): entries hom(xi v', w). Throws PreconditionError without xi.
Checked<TVStructure> hom_structure(const QuantaleRef& q, const MonadRef& m);

/// Carrier X x Y, entries a(T pi1 w, x) * b(T pi2 w, y).
Checked<TVStructure> tensor_tvcat(const TVStructure& a, const TVStructure& b);

struct ModuleFunctorComparison {
  Verdict module;
  /// (x', y) -> r(x', y) as a functor from the tensor of the dual of X with Y
  /// to the hom structure on V.
  Verdict functor;
  bool agree() const noexcept { return module.holds == functor.holds; }
  Report report;
};

ModuleFunctorComparison module_functor_equiv(const TVRel& r);

/// The one-point structure (1, e_1^o).
TVStructure point_structure(const MonadRef& m, const QuantaleRef& q);

struct PresheafSpace {
  /// Structure on the set of presheaves; element i has the values
  /// presheaves[i] indexed by TX.
  TVStructure space;
  std::vector<std::vector<Value>> presheaves;
  Report report;
};

static constexpr std::size_t max_presheaf_candidates = 65536;

/// All modules TX -> V from S to the one-point structure, with the largest
/// structure making evaluation a functor.
PresheafSpace presheaf_space(const TVStructure& s);

/// ev: tensor(dual(S), presheaves) -> (V, hom . xi) is a functor.
Verdict evaluation_functor(const TVStructure& s, const PresheafSpace& p);

/// y(x) = a(-, x) lands in the presheaves, is a functor, and
/// c(Ty x', psi) = psi(x') for all x' in TX and presheaves psi.
Report yoneda_check(const TVStructure& s);
Report yoneda_check(const TVStructure& s, const PresheafSpace& p);

} // namespace tvcat
