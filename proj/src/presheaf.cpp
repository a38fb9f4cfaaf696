#include "tvcat/presheaf.hpp"

#include "tvcat/errors.hpp"

namespace tvcat {

namespace {

void require_same_base(const TVStructure& a, const TVStructure& b) {
  if (a.monad != b.monad || a.quantale != b.quantale)
    throw ShapeError("structures '" + a.name + "' and '" + b.name + "' differ in monad or quantale");
}

Map require_xi(const QuantaleRef& q, const MonadRef& m) {
  auto xi = m->xi(*q);
  if (!xi)
    throw PreconditionError("monad " + m->name() + " has no algebra xi: TV -> V");
  return *xi;
}

std::string presheaf_label(const Quantale& q, const std::vector<Value>& vals) {
  std::string out = "<";
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i)
      out += ' ';
    out += q.value_name(vals[i]);
  }
  return out + ">";
}

// Map from X x Y to V reading off a relation TX -|-> Y on the pair carrier.
Map relation_as_map(const SetRef& pairs, const VRel& r, const Quantale& q) {
  std::vector<std::size_t> img(pairs->size());
  for (std::size_t i = 0; i < pairs->size(); ++i)
    img[i] = r.at(pairs->first(i), pairs->second(i));
  return Map(pairs, q.carrier(), std::move(img));
}

} // namespace

TVRel TVRel::make(TVStructure source, TVStructure target, VRel rel) {
  require_same_base(source, target);
  if (!same_set(rel.source(), source.tcarrier()) || !same_set(rel.target(), target.carrier))
    throw ShapeError("relation does not run from T'" + source.name + "' to '" + target.name + "'");
  return TVRel{std::move(source), std::move(target), std::move(rel)};
}

TVRel identity_tvrel(const TVStructure& s) { return TVRel{s, s, s.rel}; }

TVRel kleisli_compose(const TVRel& r, const TVRel& s) {
  require_same_base(r.source, s.target);
  if (!same_set(r.target.carrier, s.source.carrier))
    throw ShapeError("Kleisli composition with mismatched middle structure");
  const auto& q = *r.rel.quantale();
  const auto& m = *r.source.monad;
  const VRel tr = m.extend(r.rel);
  const VRel through = compose(tr, s.rel);
  const SetRef& tx = r.source.tcarrier();
  const Map mu = m.mult_at(r.source.carrier, tx, tr.source());
  VRel out(r.rel.quantale(), tx, s.target.carrier);
  for (std::size_t big = 0; big < through.rows(); ++big) {
    if (!mu.defined(big))
      continue;
    const std::size_t row = mu(big);
    for (std::size_t z = 0; z < through.cols(); ++z)
      out.set(row, z, q.join(out.at(row, z), through.at(big, z)));
  }
  return TVRel{r.source, s.target, std::move(out)};
}

namespace {

// Equality on the rows where the source structure is defined.
Verdict rows_equal(const TVStructure& source, const VRel& lhs, const VRel& rhs, const char* side) {
  require_same_shape(lhs, rhs, "is_module");
  for (std::size_t t = 0; t < lhs.rows(); ++t) {
    if (!source.defined(t))
      continue;
    for (std::size_t y = 0; y < lhs.cols(); ++y)
      if (lhs.at(t, y) != rhs.at(t, y))
        return Verdict::no({side, lhs.source()->label(t), lhs.target()->label(y)}, {t, y});
  }
  return Verdict::yes();
}

} // namespace

Verdict is_module(const TVRel& r) {
  if (auto v = rows_equal(r.source, kleisli_compose(identity_tvrel(r.source), r).rel, r.rel, "r after a"); !v)
    return v;
  return rows_equal(r.source, kleisli_compose(r, identity_tvrel(r.target)).rel, r.rel, "b after r");
}

Checked<TVStructure> hom_structure(const QuantaleRef& q, const MonadRef& m) {
  const Map xi = require_xi(q, m);
  const SetRef& v = q->carrier();
  VRel rel(q, xi.source, v);
  for (std::size_t t = 0; t < xi.source->size(); ++t)
    for (std::size_t w = 0; w < v->size(); ++w)
      rel.set(t, w, q->hom(static_cast<Value>(xi(t)), static_cast<Value>(w)));
  auto out = TVStructure::make("hom_xi", m, v, std::move(rel));
  auto rep = check_category(out);
  return {std::move(out), std::move(rep)};
}

Checked<TVStructure> tensor_tvcat(const TVStructure& a, const TVStructure& b) {
  require_same_base(a, b);
  const auto& q = *a.quantale;
  const auto& m = *a.monad;
  const SetRef xy = FinSet::pairs(a.carrier, b.carrier);
  const SetRef txy = m.apply(xy);
  std::vector<std::size_t> p1(xy->size()), p2(xy->size());
  for (std::size_t i = 0; i < xy->size(); ++i) {
    p1[i] = xy->first(i);
    p2[i] = xy->second(i);
  }
  const Map tp1 = m.on_map(Map(xy, a.carrier, std::move(p1)), txy, a.tcarrier());
  const Map tp2 = m.on_map(Map(xy, b.carrier, std::move(p2)), txy, b.tcarrier());
  VRel rel(a.quantale, txy, xy);
  std::vector<bool> undefined(txy->size(), false);
  for (std::size_t w = 0; w < txy->size(); ++w) {
    undefined[w] = !a.defined(tp1(w)) || !b.defined(tp2(w));
    if (undefined[w])
      continue;
    for (std::size_t i = 0; i < xy->size(); ++i)
      rel.set(w, i, q.tensor(a.at(tp1(w), xy->first(i)), b.at(tp2(w), xy->second(i))));
  }
  auto out = TVStructure::make(a.name + "*" + b.name, a.monad, xy, std::move(rel));
  if (a.partial() || b.partial())
    out.undefined_rows = std::move(undefined);
  auto rep = check_category(out);
  return {std::move(out), std::move(rep)};
}

ModuleFunctorComparison module_functor_equiv(const TVRel& r) {
  ModuleFunctorComparison out;
  out.report = Report("modules vs functors for a relation " + r.source.name + " -> " + r.target.name);
  out.module = is_module(r);

  auto dual = dual_tvcat(r.source);
  auto tensor = tensor_tvcat(dual.value, r.target);
  auto hom = hom_structure(r.rel.quantale(), r.source.monad);
  if (!dual.report.ok())
    out.report.note("dual of '" + r.source.name + "' is not a category");
  if (!tensor.report.ok())
    out.report.note("tensor with '" + r.target.name + "' is not a category");
  if (!hom.report.ok())
    out.report.note("hom_xi is not a category");

  const Map phi = relation_as_map(tensor.value.carrier, r.rel, *r.rel.quantale());
  out.functor = check_functor(tensor.value, hom.value, phi);

  out.report.checked("mod-vs-fun");
  out.report.note(std::string("module: ") + (out.module ? "yes" : "no"));
  out.report.note(std::string("functor: ") + (out.functor ? "yes" : "no"));
  if (!out.agree()) {
    const Verdict& w = out.module ? out.functor : out.module;
    out.report.fail("mod-vs-fun", w.witness, w.coords,
                    out.module ? "module but not a functor" : "functor but not a module");
  }
  return out;
}

TVStructure point_structure(const MonadRef& m, const QuantaleRef& q) {
  const SetRef one = FinSet::atoms({"*"});
  const SetRef t1 = m->apply(one);
  VRel rel(q, t1, one);
  rel.set(m->unit_at(one, t1)(0), 0, q->unit());
  return TVStructure::make("1", m, one, std::move(rel));
}

PresheafSpace presheaf_space(const TVStructure& s) {
  const auto& qref = s.quantale;
  const auto& q = *qref;
  const auto& m = *s.monad;
  const Map xi = require_xi(qref, s.monad);
  const SetRef& tx = s.tcarrier();
  const std::size_t ntx = tx->size(), nv = q.size();

  std::size_t total = 1;
  for (std::size_t i = 0; i < ntx; ++i) {
    if (total > max_presheaf_candidates / nv)
      throw BudgetError("presheaf candidates exceed " + std::to_string(max_presheaf_candidates));
    total *= nv;
  }

  const TVStructure one = point_structure(s.monad, qref);
  PresheafSpace out;
  std::vector<std::string> labels;
  std::vector<Value> vals(ntx, 0);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    VRel phi(qref, tx, one.carrier);
    // First TX element varies slowest so enumeration is lexicographic.
    for (std::size_t i = ntx; i-- > 0;) {
      vals[i] = static_cast<Value>(c % nv);
      c /= nv;
      phi.set(i, 0, vals[i]);
    }
    if (is_module(TVRel{s, one, phi})) {
      out.presheaves.push_back(vals);
      labels.push_back(presheaf_label(q, vals));
    }
  }
  const SetRef hat = FinSet::atoms(std::move(labels));
  const std::size_t nh = hat->size();

  const TVStructure dual = dual_tvcat(s).value;
  const VRel& aop = dual.rel;
  const SetRef w = FinSet::pairs(tx, hat);
  const SetRef tw = m.apply(w);
  std::vector<std::size_t> p1(w->size()), p2(w->size()), ev(w->size());
  for (std::size_t i = 0; i < w->size(); ++i) {
    p1[i] = w->first(i);
    p2[i] = w->second(i);
    ev[i] = out.presheaves[w->second(i)][w->first(i)];
  }
  const SetRef thet = m.apply(hat);
  const Map tp1 = m.on_map(Map(w, tx, std::move(p1)), tw, aop.source());
  const Map tp2 = m.on_map(Map(w, hat, std::move(p2)), tw, thet);
  const Map tev = m.on_map(Map(w, q.carrier(), std::move(ev)), tw, xi.source);

  VRel c(qref, thet, hat, q.top());
  for (std::size_t big = 0; big < tw->size(); ++big) {
    const std::size_t p = tp2(big);
    const std::size_t first = tp1(big);
    if (!dual.defined(first))
      continue;
    const auto u = static_cast<Value>(xi(tev(big)));
    for (std::size_t psi = 0; psi < nh; ++psi) {
      Value acc = c.at(p, psi);
      for (std::size_t t = 0; t < ntx; ++t)
        acc = q.meet(acc, q.hom(aop.at(first, t), q.hom(u, out.presheaves[psi][t])));
      c.set(p, psi, acc);
    }
  }
  out.space = TVStructure::make(s.name + "_presheaves", s.monad, hat, std::move(c));
  out.report = check_category(out.space);
  out.report.set_subject("presheaves on " + s.name);
  return out;
}

Verdict evaluation_functor(const TVStructure& s, const PresheafSpace& p) {
  auto dual = dual_tvcat(s);
  auto tensor = tensor_tvcat(dual.value, p.space);
  auto hom = hom_structure(s.quantale, s.monad);
  const SetRef& pairs = tensor.value.carrier;
  std::vector<std::size_t> img(pairs->size());
  for (std::size_t i = 0; i < pairs->size(); ++i)
    img[i] = p.presheaves[pairs->second(i)][pairs->first(i)];
  return check_functor(tensor.value, hom.value, Map(pairs, s.quantale->carrier(), std::move(img)));
}

Report yoneda_check(const TVStructure& s) { return yoneda_check(s, presheaf_space(s)); }

Report yoneda_check(const TVStructure& s, const PresheafSpace& p) {
  Report rep("Yoneda on " + s.name);
  if (!p.report.ok()) {
    rep.absorb(p.report, "presheaves");
    rep.vacuous("yoneda", "quarantined: presheaf space is not a category");
    return rep;
  }
  rep.checked("yoneda-membership");
  rep.checked("yoneda-functor");
  rep.checked("yoneda-equality");

  const auto& q = *s.quantale;
  const SetRef& x = s.carrier;
  const SetRef& tx = s.tcarrier();
  std::vector<std::size_t> img(x->size(), Map::undefined);
  for (std::size_t p0 = 0; p0 < x->size(); ++p0) {
    std::vector<Value> column(tx->size());
    for (std::size_t t = 0; t < tx->size(); ++t)
      column[t] = s.at(t, p0);
    for (std::size_t i = 0; i < p.presheaves.size(); ++i)
      if (p.presheaves[i] == column)
        img[p0] = i;
    if (img[p0] == Map::undefined)
      rep.fail("yoneda-membership", {x->label(p0)}, {p0}, "a(-, x) is not a module");
  }
  const Map y(x, p.space.carrier, img);
  if (!y.total())
    return rep;

  if (auto v = check_functor(s, p.space, y); !v)
    rep.fail("yoneda-functor", v.witness, v.coords, "y is not a functor");

  const Map ty = s.monad->on_map(y, tx, p.space.tcarrier());
  for (std::size_t t = 0; t < tx->size(); ++t)
    for (std::size_t psi = 0; psi < p.presheaves.size(); ++psi) {
      const Value lhs = p.space.at(ty(t), psi);
      const Value rhs = p.presheaves[psi][t];
      if (lhs != rhs)
        rep.fail("yoneda-equality", {tx->label(t), p.space.carrier->label(psi)}, {t, psi},
                 "c(Ty x', psi) = " + q.value_name(lhs) + ", psi(x') = " + q.value_name(rhs));
    }
  return rep;
}

} // namespace tvcat
