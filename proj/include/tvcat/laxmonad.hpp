#pragma once

#include "tvcat/finset.hpp"
#include "tvcat/quantale.hpp"
#include "tvcat/report.hpp"
#include "tvcat/vrel.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tvcat {

class LaxMonad;
using MonadRef = std::shared_ptr<const LaxMonad>;

/// A monad on finite sets bundled with a lax extension to V-relations and,
/// optionally, an algebra xi: TV -> V.
///
/// The list monad is bounded: TX holds lists of length <= budget(), and the
/// multiplication is partial (undefined where concatenation overflows).
/// Law checks skip the points where one side is undefined.
class LaxMonad {
public:
  virtual ~LaxMonad() = default;

  virtual std::string name() const = 0;
  virtual std::size_t budget() const noexcept { return 0; }
  virtual bool partial_multiplication() const noexcept { return false; }

  virtual SetRef apply(const SetRef& x) const = 0;
  SetRef apply(const SetRef& x, int times) const;

  /// Tf, with TX and TY supplied by the caller.
  virtual Map on_map(const Map& f, const SetRef& tx, const SetRef& ty) const = 0;
  Map on_map(const Map& f) const;
  /// e_X : X -> TX, targeting `tx` (defaults to apply(x)).
  virtual Map unit_at(const SetRef& x, const SetRef& tx) const = 0;
  Map unit_at(const SetRef& x) const { return unit_at(x, apply(x)); }
  /// m_X : TTX -> TX.
  virtual Map mult_at(const SetRef& x, const SetRef& tx, const SetRef& ttx) const = 0;
  Map mult_at(const SetRef& x) const;

  /// One entry of the extension: (T r)(a, b) for a in TX, b in TY.
  virtual Value extend_entry(const VRel& r, const SetRef& tx, std::size_t a, const SetRef& ty,
                             std::size_t b) const = 0;
  /// The whole extension T r : TX -|-> TY.
  virtual VRel extend(const VRel& r) const;

  /// xi : TV -> V, or nothing when this monad has no chosen algebra on V.
  virtual std::optional<Map> xi(const Quantale& q) const = 0;
};

/// identity, powerset, list. `budget` is the maximal list length and is
/// ignored by the other two.
MonadRef make_builtin_monad(std::string_view name, std::size_t budget = 2);
MonadRef identity_monad();

using ExtensionEntry = std::function<Value(const LaxMonad& base, const VRel& r, const SetRef& tx,
                                           std::size_t a, const SetRef& ty, std::size_t b)>;

/// The same monad with a different extension. Used to build broken instances.
MonadRef with_extension(MonadRef base, ExtensionEntry entry, std::string name);

struct LawOptions {
  std::uint64_t seed = 20240611;
  /// Relations per (X,Y) shape when the exhaustive pool would be too large.
  std::size_t random_pool = 64;
  /// Relation pairs are checked exhaustively up to this many...
  std::size_t max_pairs = std::size_t{1} << 18;
  /// ...and sampled above it.
  std::size_t random_pairs = 4096;
};

/// The full law suite on the given sample carriers: monad laws, naturality,
/// graph compatibility, (lax) with monotonicity, transpose compatibility,
/// (oplax) for e and m, the beta-hat isomorphism, and the xi-algebra laws.
/// (mon), (coh) and (nat) are thin and recorded as vacuous.
Report check_extension_laws(const LaxMonad& m, const QuantaleRef& q, const std::vector<SetRef>& samples,
                            const LawOptions& opts = {});

/// Monad laws, naturality of e and m, and T(graph f) = graph(Tf) only.
Report check_monad_laws(const LaxMonad& m, const QuantaleRef& q, const std::vector<SetRef>& samples,
                        const LawOptions& opts = {});

/// The beta-hat isomorphism and transpose compatibility on one- and two-point
/// samples, computed once per (monad, quantale) pair. Constructions that
/// depend on these laws refuse instances that fail them.
const Report& standing_assumptions(const MonadRef& m, const QuantaleRef& q);

/// All V-relations X -|-> Y when there are at most 65536 of them, otherwise
/// `opts.random_pool` seeded random ones plus the bottom and top relations.
std::vector<VRel> relation_pool(const QuantaleRef& q, const SetRef& x, const SetRef& y,
                                const LawOptions& opts, bool* exhaustive = nullptr);

} // namespace tvcat
