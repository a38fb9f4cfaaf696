#include "tvcat/algkm.hpp"

#include "tvcat/errors.hpp"

namespace tvcat {

namespace {

void require_category(const TVStructure& s, const char* what) {
  auto rep = check_category(s);
  if (!rep.ok())
    throw PreconditionError(std::string(what) + ": '" + s.name + "' is not a category (" +
                            rep.violations().front().law + " fails)");
}

// a^(x', y') = join { Ta(X, y') : m X = x' } on TX.
VRel hat(const TVStructure& s) {
  const auto& q = *s.quantale;
  const VRel ta = s.monad->extend(s.rel);
  const SetRef& tx = s.tcarrier();
  const Map mu = s.monad->mult_at(s.carrier, tx, ta.source());
  VRel out(s.quantale, tx, tx);
  for (std::size_t big = 0; big < ta.rows(); ++big) {
    if (!mu.defined(big))
      continue;
    const std::size_t row = mu(big);
    for (std::size_t t = 0; t < tx->size(); ++t)
      out.set(row, t, q.join(out.at(row, t), ta.at(big, t)));
  }
  return out;
}

// (W, x') -> h(m W, x'): the structure K(TX, h, m) for a relation h on TX.
TVStructure pull_back_along_mult(std::string name, const TVStructure& s, const VRel& h) {
  const SetRef& tx = s.tcarrier();
  const SetRef ttx = s.monad->apply(tx);
  const Map mu = s.monad->mult_at(s.carrier, tx, ttx);
  VRel rel(s.quantale, ttx, tx);
  std::vector<bool> undefined(ttx->size(), false);
  for (std::size_t big = 0; big < ttx->size(); ++big) {
    if (!mu.defined(big)) {
      undefined[big] = true;
      continue;
    }
    for (std::size_t t = 0; t < tx->size(); ++t)
      rel.set(big, t, h.at(mu(big), t));
  }
  auto out = TVStructure::make(std::move(name), s.monad, tx, std::move(rel));
  if (!mu.total())
    out.undefined_rows = std::move(undefined);
  return out;
}

TVStructure lifted_unchecked(const MonadRef& monad, const TVStructure& c) {
  VRel tc = monad->extend(c.rel);
  SetRef tz = tc.source();
  return TVStructure::make("T" + c.name, identity_monad(), std::move(tz), std::move(tc));
}

RepresentabilityCertificate certify_with(const TVStructure& s, const TVStructure& induced, const Map& f) {
  RepresentabilityCertificate cert;
  cert.structure_map = f;
  const SetRef& x = s.carrier;
  const SetRef& tx = s.tcarrier();
  const Map e = s.monad->unit_at(x, tx);
  cert.functor_ok = static_cast<bool>(check_functor(induced, s, f));
  // f left adjoint to e_X: 1 <= e.f on the induced structure, f.e <= 1 on S.
  cert.adjunction_ok = functor_leq(induced, induced, Map::identity(tx), f.then(e)) &&
                       functor_leq(s, s, e.then(f), Map::identity(x));
  cert.roundtrip_ok = true;
  for (std::size_t t = 0; t < tx->size() && cert.roundtrip_ok; ++t)
    for (std::size_t p = 0; p < x->size() && f.defined(t) && s.defined(t) && s.defined(e(f(t))); ++p)
      if (s.at(e(f(t)), p) != s.at(t, p)) {
        cert.roundtrip_ok = false;
        break;
      }
  return cert;
}

} // namespace

void require_standing_assumptions(const MonadRef& m, const QuantaleRef& q, bool transpose) {
  const Report& rep = standing_assumptions(m, q);
  if (rep.has("beta-hat-iso"))
    throw PreconditionError("monad " + m->name() + " fails the beta-hat isomorphism over " + q->name());
  if (transpose && rep.has("transpose-compat"))
    throw PreconditionError("monad " + m->name() + " fails transpose compatibility over " + q->name());
}

TAlgebra TAlgebra::make(TVStructure base, MonadRef monad, Map action) {
  if (!base.is_vcat())
    throw ShapeError("algebra base '" + base.name + "' must be a V-category");
  if (!same_set(action.source, monad->apply(base.carrier)) || !same_set(action.target, base.carrier))
    throw ShapeError("algebra action on '" + base.name + "' must run from TZ to Z");
  return TAlgebra{std::move(base), std::move(monad), std::move(action)};
}

Report check_algebra(const TAlgebra& alg) {
  Report rep("algebra on " + alg.base.name);
  const auto& m = *alg.monad;
  const SetRef& z = alg.base.carrier;
  const SetRef tz = alg.action.source;
  const SetRef ttz = m.apply(tz);
  const Map& h = alg.action;

  auto lifted = lifted_unchecked(alg.monad, alg.base);
  rep.checked("algebra-functor");
  if (auto v = check_functor(lifted, alg.base, h); !v)
    rep.fail("algebra-functor", v.witness, v.coords, "Tc(z', z'') <= c(h z', h z'') fails");

  rep.checked("algebra-unit");
  rep.checked("algebra-assoc");
  const Map e = m.unit_at(z, tz);
  for (std::size_t p = 0; p < z->size(); ++p)
    if (h(e(p)) != p)
      rep.fail("algebra-unit", {z->label(p)}, {p}, "h.e != 1");
  const Map mu = m.mult_at(z, tz, ttz);
  const Map th = m.on_map(h, ttz, tz);
  for (std::size_t big = 0; big < ttz->size(); ++big) {
    if (!mu.defined(big) || !th.defined(big))
      continue;
    if (h(th(big)) != h(mu(big)))
      rep.fail("algebra-assoc", {ttz->label(big)}, {big}, "h.Th != h.m");
  }
  return rep;
}

Checked<TVStructure> algebra_to_tvcat(const TAlgebra& alg) {
  const SetRef& z = alg.base.carrier;
  const SetRef& tz = alg.action.source;
  VRel rel(alg.base.quantale, tz, z);
  std::vector<bool> undefined(tz->size(), false);
  for (std::size_t t = 0; t < tz->size(); ++t) {
    if (!alg.action.defined(t)) {
      undefined[t] = true;
      continue;
    }
    for (std::size_t p = 0; p < z->size(); ++p)
      rel.set(t, p, alg.base.at(alg.action(t), p));
  }
  auto out = TVStructure::make(alg.base.name + "_K", alg.monad, z, std::move(rel));
  if (!alg.action.total())
    out.undefined_rows = std::move(undefined);
  auto rep = check_category(out);
  return {std::move(out), std::move(rep)};
}

Checked<TAlgebra> free_algebra(const TVStructure& s) {
  require_category(s, "free_algebra");
  require_standing_assumptions(s.monad, s.quantale, false);
  const SetRef& tx = s.tcarrier();
  auto base = TVStructure::make(s.name + "_M", identity_monad(), tx, hat(s));
  auto alg = TAlgebra::make(std::move(base), s.monad, s.monad->mult_at(s.carrier));
  Report rep("free algebra on " + s.name);
  rep.absorb(check_category(alg.base), "base");
  rep.absorb(check_algebra(alg), "action");
  return {std::move(alg), std::move(rep)};
}

Checked<TVStructure> induced_structure(const TVStructure& s, bool check_multiplication) {
  require_category(s, "induced_structure");
  require_standing_assumptions(s.monad, s.quantale, false);
  auto out = pull_back_along_mult(s.name + "_KM", s, hat(s));
  Report rep = check_category(out);
  rep.set_subject("induced structure on T" + s.name);
  record_functor(rep, "fun-e", s, out, s.monad->unit_at(s.carrier, s.tcarrier()));
  if (check_multiplication) {
    auto twice = pull_back_along_mult(s.name + "_KMKM", out, hat(out));
    record_functor(rep, "fun-m", twice, out, s.monad->mult_at(s.carrier, s.tcarrier(), twice.carrier));
  }
  return {std::move(out), std::move(rep)};
}

Report check_kz(const TVStructure& s, const std::optional<TVStructure>& induced) {
  require_category(s, "check_kz");
  require_standing_assumptions(s.monad, s.quantale, false);
  const auto& m = *s.monad;
  const TVStructure once = induced ? *induced : induced_structure(s, false).value;
  if (once.monad != s.monad || once.quantale != s.quantale || !same_set(once.carrier, s.tcarrier()))
    throw ShapeError("induced structure for '" + s.name + "' has the wrong shape");

  Report rep("KZ on " + s.name);
  rep.absorb(check_category(once), "induced");
  const SetRef& x = s.carrier;
  const SetRef& tx = once.carrier;
  record_functor(rep, "fun-e", s, once, m.unit_at(x, tx));

  const auto twice = pull_back_along_mult(s.name + "_KMKM", once, hat(once));
  const SetRef& ttx = twice.carrier;
  const Map te = m.on_map(m.unit_at(x, tx), tx, ttx);
  const Map et = m.unit_at(tx, ttx);
  record_functor(rep, "fun-Te", once, twice, te);
  record_functor(rep, "fun-eT", once, twice, et);
  record_functor(rep, "fun-m", twice, once, m.mult_at(x, tx, ttx));

  rep.checked("kz-delta");
  if (auto v = functor_leq(once, twice, te, et); !v)
    rep.fail("kz-delta", v.witness, v.coords, "Te <= e_T fails");
  rep.vacuous("mod");
  return rep;
}

RepresentabilityCertificate certify(const TVStructure& s, const Map& f) {
  return certify_with(s, induced_structure(s, false).value, f);
}

std::optional<RepresentabilityCertificate> find_representation(const TVStructure& s) {
  require_category(s, "find_representation");
  const SetRef& x = s.carrier;
  const SetRef& tx = s.tcarrier();
  const std::size_t nx = x->size(), ntx = tx->size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < ntx; ++i) {
    if (nx != 0 && total > max_representation_candidates / nx)
      throw BudgetError("representability search exceeds " +
                        std::to_string(max_representation_candidates) + " candidate maps");
    total *= nx;
  }
  if (nx == 0)
    return std::nullopt;
  const TVStructure induced = induced_structure(s, false).value;

  std::optional<RepresentabilityCertificate> found;
  std::vector<std::size_t> img(ntx, 0);
  for (std::size_t k = 0; k < total; ++k) {
    Map f(tx, x, img);
    if (check_functor(induced, s, f)) {
      auto cert = certify_with(s, induced, f);
      if (cert.functor_ok && cert.adjunction_ok) {
        if (!found)
          found = std::move(cert);
        found->qualifying.push_back(std::move(f));
      }
    }
    for (std::size_t pos = ntx; pos-- > 0;) {
      if (++img[pos] < nx)
        break;
      img[pos] = 0;
    }
  }
  if (found) {
    const Map& first = found->qualifying.front();
    for (const auto& g : found->qualifying)
      if (!functor_leq(induced, s, first, g) || !functor_leq(induced, s, g, first))
        found->unique_up_to_iso = false;
  }
  return found;
}

Checked<TAlgebra> dual_algebra(const TAlgebra& alg) {
  require_standing_assumptions(alg.monad, alg.base.quantale, true);
  auto base = TVStructure::make(alg.base.name + "_op", identity_monad(), alg.base.carrier,
                                transpose(alg.base.rel));
  auto out = TAlgebra::make(std::move(base), alg.monad, alg.action);
  auto rep = check_algebra(out);
  return {std::move(out), std::move(rep)};
}

Checked<TVStructure> dual_tvcat(const TVStructure& s) {
  require_category(s, "dual_tvcat");
  require_standing_assumptions(s.monad, s.quantale, true);
  const SetRef& tx = s.tcarrier();
  const SetRef ttx = s.monad->apply(tx);
  const Map mult = s.monad->mult_at(s.carrier, tx, ttx);
  const VRel mu = graph(s.quantale, mult);
  const VRel rel = compose(compose(mu, s.monad->extend(transpose(s.rel))), mu);
  auto out = TVStructure::make(s.name + "_op", s.monad, tx, rel);
  if (!mult.total()) {
    out.undefined_rows.assign(ttx->size(), false);
    for (std::size_t big = 0; big < ttx->size(); ++big)
      out.undefined_rows[big] = !mult.defined(big);
  }
  auto rep = check_category(out);
  return {std::move(out), std::move(rep)};
}

Checked<TVStructure> dual_representable(const TVStructure& s, const RepresentabilityCertificate& cert) {
  if (!cert.functor_ok || !cert.adjunction_ok)
    throw PreconditionError("dual_representable: certificate is not valid for '" + s.name + "'");
  require_standing_assumptions(s.monad, s.quantale, true);
  const SetRef& x = s.carrier;
  const SetRef& tx = s.tcarrier();
  const Map e = s.monad->unit_at(x, tx);
  const Map& f = cert.structure_map;
  VRel rel(s.quantale, tx, x);
  std::vector<bool> undefined(tx->size(), false);
  bool any_undefined = false;
  for (std::size_t t = 0; t < tx->size(); ++t) {
    // A partial f (the multiplication of a bounded monad) leaves rows undefined.
    if (!f.defined(t)) {
      undefined[t] = any_undefined = true;
      continue;
    }
    for (std::size_t p = 0; p < x->size(); ++p)
      if (s.defined(e(p)))
        rel.set(t, p, s.at(e(p), f(t)));
  }
  auto out = TVStructure::make(s.name + "_rop", s.monad, x, std::move(rel));
  if (any_undefined)
    out.undefined_rows = std::move(undefined);
  auto rep = check_category(out);
  return {std::move(out), std::move(rep)};
}

Report double_dual_probe(const TVStructure& s) {
  Report rep("double dual of " + s.name);
  auto cert = find_representation(s);
  if (!cert) {
    rep.note("not representable; nothing to probe");
    return rep;
  }
  auto once = dual_representable(s, *cert);
  if (!once.report.ok()) {
    rep.note("first dual is not a category");
    return rep;
  }
  auto cert2 = find_representation(once.value);
  if (!cert2) {
    rep.note("first dual is not representable");
    return rep;
  }
  auto twice = dual_representable(once.value, *cert2);
  rep.note(twice.value.rel == s.rel ? "double dual equals the original structure"
                                    : "double dual differs from the original structure");
  return rep;
}

} // namespace tvcat
