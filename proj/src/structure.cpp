#include "tvcat/structure.hpp"

#include "tvcat/errors.hpp"

namespace tvcat {

namespace {

void require_vcat(const TVStructure& c, const char* what) {
  if (!c.is_vcat())
    throw ShapeError(std::string(what) + " expects a V-category (identity monad), got '" + c.name + "'");
}

void require_compatible(const TVStructure& a, const TVStructure& b, const Map& f) {
  if (a.monad != b.monad || a.quantale != b.quantale)
    throw ShapeError("structures '" + a.name + "' and '" + b.name + "' differ in monad or quantale");
  if (!same_set(f.source, a.carrier) || !same_set(f.target, b.carrier))
    throw ShapeError("map does not run from '" + a.name + "' to '" + b.name + "'");
}

void require_category(const TVStructure& s, const char* what) {
  auto rep = check_category(s);
  if (!rep.ok())
    throw PreconditionError(std::string(what) + ": '" + s.name + "' is not a category (" +
                            rep.violations().front().law + " fails)");
}

} // namespace

TVStructure TVStructure::make(std::string name, MonadRef monad, SetRef carrier, VRel rel) {
  if (!same_set(rel.target(), carrier))
    throw ShapeError("structure '" + name + "' does not target its carrier");
  if (!same_set(rel.source(), monad->apply(carrier)))
    throw ShapeError("structure '" + name + "' does not start at T of its carrier");
  TVStructure s;
  s.name = std::move(name);
  s.quantale = rel.quantale();
  s.monad = std::move(monad);
  s.carrier = std::move(carrier);
  s.rel = std::move(rel);
  return s;
}

TVStructure TVStructure::constant(std::string name, MonadRef monad, QuantaleRef q, SetRef carrier,
                                  Value fill) {
  auto tx = monad->apply(carrier);
  VRel rel(std::move(q), std::move(tx), carrier, fill);
  return make(std::move(name), std::move(monad), std::move(carrier), std::move(rel));
}

bool TVStructure::partial() const noexcept {
  for (bool u : undefined_rows)
    if (u)
      return true;
  return false;
}

Report check_category(const TVStructure& s) {
  return check_category(s, s.monad->extend(s.rel));
}

Report check_category(const TVStructure& s, const VRel& ta) {
  Report rep("category " + s.name);
  rep.checked("cat-unit");
  rep.checked("cat-mult");
  const auto& q = *s.quantale;
  const auto& m = *s.monad;
  const SetRef& x = s.carrier;
  const SetRef& tx = s.tcarrier();
  const SetRef& ttx = ta.source();
  const Map e = m.unit_at(x, tx);
  const Map mu = m.mult_at(x, tx, ttx);

  for (std::size_t p = 0; p < x->size(); ++p)
    if (s.defined(e(p)) && !q.leq(q.unit(), s.at(e(p), p)))
      rep.fail("cat-unit", {x->label(p)}, {p}, "k <= a(e x, x) fails");

  for (std::size_t big = 0; big < ttx->size(); ++big) {
    if (!mu.defined(big) || !s.defined(mu(big)))
      continue;
    const std::size_t flat = mu(big);
    for (std::size_t mid = 0; mid < tx->size(); ++mid) {
      const Value t = ta.at(big, mid);
      if (t == q.bottom())
        continue;
      for (std::size_t p = 0; p < x->size(); ++p) {
        const Value lhs = q.tensor(t, s.at(mid, p));
        if (!q.leq(lhs, s.at(flat, p)))
          rep.fail("cat-mult", {ttx->label(big), tx->label(mid), x->label(p)}, {big, mid, p},
                   "Ta * a = " + q.value_name(lhs) + " above a(m X, x) = " + q.value_name(s.at(flat, p)));
      }
    }
  }
  return rep;
}

Verdict check_functor(const TVStructure& a, const TVStructure& b, const Map& f) {
  require_compatible(a, b, f);
  const auto& q = *a.quantale;
  const Map tf = a.monad->on_map(f, a.tcarrier(), b.tcarrier());
  for (std::size_t t = 0; t < a.tcarrier()->size(); ++t) {
    if (!tf.defined(t) || !b.defined(tf(t)))
      continue;
    for (std::size_t p = 0; p < a.carrier->size(); ++p) {
      if (!f.defined(p))
        continue;
      if (!q.leq(a.at(t, p), b.at(tf(t), f(p))))
        return Verdict::no({a.tcarrier()->label(t), a.carrier->label(p)}, {t, p});
    }
  }
  return Verdict::yes();
}

Verdict functor_leq(const TVStructure& a, const TVStructure& b, const Map& f, const Map& g) {
  require_compatible(a, b, f);
  require_compatible(a, b, g);
  const auto& q = *a.quantale;
  const Map e = b.monad->unit_at(b.carrier, b.tcarrier());
  for (std::size_t p = 0; p < a.carrier->size(); ++p)
    if (f.defined(p) && g.defined(p) && b.defined(e(f(p))) && !q.leq(q.unit(), b.at(e(f(p)), g(p))))
      return Verdict::no({a.carrier->label(p)}, {p});
  return Verdict::yes();
}

void record_functor(Report& rep, const std::string& law, const TVStructure& a, const TVStructure& b,
                    const Map& f) {
  rep.checked(law);
  if (auto v = check_functor(a, b, f); !v)
    rep.fail(law, v.witness, v.coords, "'" + a.name + "' -> '" + b.name + "' is not a functor");
}

Checked<TVStructure> underlying_vcat(const TVStructure& s) {
  const Map e = s.monad->unit_at(s.carrier, s.tcarrier());
  VRel c(s.quantale, s.carrier, s.carrier);
  for (std::size_t p = 0; p < s.carrier->size(); ++p)
    for (std::size_t r = 0; r < s.carrier->size(); ++r)
      c.set(p, r, s.at(e(p), r));
  auto out = TVStructure::make(s.name + "_e", identity_monad(), s.carrier, std::move(c));
  if (s.partial()) {
    out.undefined_rows.assign(s.carrier->size(), false);
    for (std::size_t p = 0; p < s.carrier->size(); ++p)
      out.undefined_rows[p] = !s.defined(e(p));
  }
  auto rep = check_category(out);
  return {std::move(out), std::move(rep)};
}

Checked<TVStructure> free_tvcat(const TVStructure& c, const MonadRef& monad) {
  require_vcat(c, "free_tvcat");
  require_category(c, "free_tvcat");
  const SetRef tz = monad->apply(c.carrier);
  const Map e = monad->unit_at(c.carrier, tz);
  VRel sharp(c.quantale, tz, c.carrier);
  for (std::size_t t = 0; t < tz->size(); ++t)
    for (std::size_t z = 0; z < c.carrier->size(); ++z)
      sharp.set(t, z, monad->extend_entry(c.rel, tz, t, tz, e(z)));
  auto out = TVStructure::make(c.name + "_free", monad, c.carrier, std::move(sharp));
  auto rep = check_category(out);
  return {std::move(out), std::move(rep)};
}

Verdict adjoint_equality(const TVStructure& a, const TVStructure& b, const Map& f, const Map& g) {
  require_compatible(a, b, f);
  require_compatible(b, a, g);
  const Map tf = a.monad->on_map(f, a.tcarrier(), b.tcarrier());
  for (std::size_t t = 0; t < a.tcarrier()->size(); ++t) {
    if (!tf.defined(t) || !a.defined(t) || !b.defined(tf(t)))
      continue;
    for (std::size_t y = 0; y < b.carrier->size(); ++y)
      if (a.at(t, g(y)) != b.at(tf(t), y))
        return Verdict::no({a.tcarrier()->label(t), b.carrier->label(y)}, {t, y});
  }
  return Verdict::yes();
}

Verdict adjunction_holds(const TVStructure& a, const TVStructure& b, const Map& f, const Map& g) {
  if (auto v = check_functor(b, a, g); !v)
    return v;
  if (auto v = functor_leq(a, a, Map::identity(a.carrier), f.then(g)); !v)
    return v;
  return functor_leq(b, b, g.then(f), Map::identity(b.carrier));
}

AdjointSearch find_right_adjoint(const TVStructure& a, const TVStructure& b, const Map& f) {
  if (auto v = check_functor(a, b, f); !v)
    throw PreconditionError("find_right_adjoint: the map is not a functor");
  const std::size_t nx = a.carrier->size(), ny = b.carrier->size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < ny; ++i) {
    if (nx != 0 && total > max_adjoint_candidates / nx)
      throw BudgetError("adjoint search exceeds " + std::to_string(max_adjoint_candidates) + " candidates");
    total *= nx;
  }
  AdjointSearch out;
  if (nx == 0)
    return out;
  std::vector<std::size_t> img(ny, 0);
  for (std::size_t k = 0; k < total; ++k) {
    ++out.candidates;
    Map g(b.carrier, a.carrier, img);
    if (adjunction_holds(a, b, f, g)) {
      out.equality = adjoint_equality(a, b, f, g);
      out.right = std::move(g);
      return out;
    }
    for (std::size_t pos = ny; pos-- > 0;) {
      if (++img[pos] < nx)
        break;
      img[pos] = 0;
    }
  }
  return out;
}

Checked<TVStructure> lift_to_vcat(const MonadRef& monad, const TVStructure& c) {
  require_vcat(c, "lift_to_vcat");
  require_category(c, "lift_to_vcat");
  const VRel tc = monad->extend(c.rel);
  auto lifted = TVStructure::make("T" + c.name, identity_monad(), tc.source(), tc);
  Report rep = check_category(lifted);
  rep.set_subject("lift of " + c.name + " along " + monad->name());

  const Map e = monad->unit_at(c.carrier, lifted.carrier);
  record_functor(rep, "fun-e", c, lifted, e);

  const VRel ttc = monad->extend(tc);
  auto twice = TVStructure::make("TT" + c.name, identity_monad(), ttc.source(), ttc);
  const Map mu = monad->mult_at(c.carrier, lifted.carrier, twice.carrier);
  record_functor(rep, "fun-m", twice, lifted, mu);
  return {std::move(lifted), std::move(rep)};
}

Report check_two_monad(const MonadRef& monad, const TVStructure& c) {
  auto lifted = lift_to_vcat(monad, c);
  Report rep("2-monad " + monad->name() + " on " + c.name);
  rep.absorb(lifted.report);
  const auto& l = lifted.value;
  const VRel ttc = monad->extend(l.rel);
  auto twice = TVStructure::make("TT" + c.name, identity_monad(), ttc.source(), ttc);

  const SetRef& x = c.carrier;
  const SetRef& tx = l.carrier;
  const SetRef& ttx = twice.carrier;
  const Map e = monad->unit_at(x, tx);
  const Map et = monad->unit_at(tx, ttx);
  const Map te = monad->on_map(e, tx, ttx);
  const Map mu = monad->mult_at(x, tx, ttx);
  record_functor(rep, "fun-eT", l, twice, et);
  record_functor(rep, "fun-Te", l, twice, te);

  rep.checked("monad-unit");
  rep.checked("monad-assoc");
  for (std::size_t t = 0; t < tx->size(); ++t) {
    if (mu(et(t)) != t)
      rep.fail("monad-unit", {tx->label(t)}, {t}, "m.e_T != 1");
    if (mu(te(t)) != t)
      rep.fail("monad-unit", {tx->label(t)}, {t}, "m.Te != 1");
  }
  const SetRef tttx = monad->apply(ttx);
  const Map mt = monad->mult_at(tx, ttx, tttx);
  const Map tm = monad->on_map(mu, tttx, ttx);
  for (std::size_t big = 0; big < tttx->size(); ++big) {
    if (!mt.defined(big) || !tm.defined(big))
      continue;
    const std::size_t l1 = mu(tm(big)), l2 = mu(mt(big));
    if (l1 != Map::undefined && l2 != Map::undefined && l1 != l2)
      rep.fail("monad-assoc", {tttx->label(big)}, {big}, "m.Tm != m.m_T");
  }
  return rep;
}

} // namespace tvcat
