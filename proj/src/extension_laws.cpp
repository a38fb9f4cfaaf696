#include "tvcat/errors.hpp"
#include "tvcat/laxmonad.hpp"

#include <map>
#include <mutex>
#include <random>

namespace tvcat {

namespace {

constexpr std::size_t exhaustive_limit = 65536;
constexpr std::size_t map_sample_limit = 64;

std::mt19937_64 seeded(const LawOptions& opts, std::size_t a, std::size_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  return std::mt19937_64(seq);
}

std::vector<Map> map_pool(const SetRef& x, const SetRef& y, const LawOptions& opts) {
  std::vector<Map> out;
  const std::size_t nx = x->size(), ny = y->size();
  if (ny == 0)
    return out;
  std::size_t total = 1;
  bool small = true;
  for (std::size_t i = 0; i < nx && small; ++i) {
    total *= ny;
    small = total <= map_sample_limit;
  }
  if (small) {
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<std::size_t> img(nx);
      std::size_t c = code;
      for (std::size_t i = 0; i < nx; ++i) {
        img[i] = c % ny;
        c /= ny;
      }
      out.emplace_back(x, y, std::move(img));
    }
    return out;
  }
  auto rng = seeded(opts, nx + 7919, ny);
  std::uniform_int_distribution<std::size_t> pick(0, ny - 1);
  for (std::size_t k = 0; k < map_sample_limit; ++k) {
    std::vector<std::size_t> img(nx);
    for (auto& v : img)
      v = pick(rng);
    out.emplace_back(x, y, std::move(img));
  }
  return out;
}

std::string set_tag(const SetRef& x) { return "|X|=" + std::to_string(x->size()); }

struct Shape {
  SetRef x, tx, ttx;
  Map e, m;
};

Shape shape_of(const LaxMonad& mon, const SetRef& x) {
  Shape s;
  s.x = x;
  s.tx = mon.apply(x);
  s.ttx = mon.apply(s.tx);
  s.e = mon.unit_at(x, s.tx);
  s.m = mon.mult_at(x, s.tx, s.ttx);
  return s;
}

// beta-hat and transpose-compat only (`full` = false), or every per-relation
// law of the suite.
void check_relation_laws(const LaxMonad& mon, const QuantaleRef& qref, const Shape& sx, const Shape& sy,
                         const LawOptions& opts, Report& rep, bool full) {
  const auto& q = *qref;
  bool exhaustive = false;
  auto pool = relation_pool(qref, sx.x, sy.x, opts, &exhaustive);
  rep.note("relations " + set_tag(sx.x) + " -> " + set_tag(sy.x) + ": " + std::to_string(pool.size()) +
           (exhaustive ? " (exhaustive)" : " (seeded sample)"));

  rep.checked("transpose-compat");
  rep.checked("beta-hat-iso");
  if (full) {
    rep.checked("oplax-alpha");
    rep.checked("oplax-beta");
  }

  const std::size_t ntx = sx.tx->size(), nty = sy.tx->size();
  const std::size_t nttx = sx.ttx->size(), ntty = sy.ttx->size();
  std::vector<Value> acc;
  for (const auto& r : pool) {
    const VRel tr = mon.extend(r);
    const std::string rl = "r=" + rel_literal(r);

    if (auto v = rel_eq(mon.extend(transpose(r)), transpose(tr)); !v)
      rep.fail("transpose-compat", {rl, v.witness[0], v.witness[1]}, v.coords, "T(r^o) != (Tr)^o");

    if (full) {
      // e_Y . r <= Tr . e_X
      for (std::size_t x = 0; x < sx.x->size(); ++x) {
        acc.assign(nty, q.bottom());
        for (std::size_t y = 0; y < sy.x->size(); ++y)
          acc[sy.e(y)] = q.join(acc[sy.e(y)], r.at(x, y));
        for (std::size_t b = 0; b < nty; ++b)
          if (!q.leq(acc[b], tr.at(sx.e(x), b)))
            rep.fail("oplax-alpha", {rl, sx.x->label(x), sy.tx->label(b)}, {x, b},
                     "e_Y.r = " + q.value_name(acc[b]) + ", Tr.e_X = " + q.value_name(tr.at(sx.e(x), b)));
      }
    }

    const VRel ttr = mon.extend(tr);
    if (full) {
      // m_Y . TTr <= Tr . m_X
      for (std::size_t big = 0; big < nttx; ++big) {
        if (!sx.m.defined(big))
          continue;
        acc.assign(nty, q.bottom());
        for (std::size_t bigy = 0; bigy < ntty; ++bigy)
          if (sy.m.defined(bigy))
            acc[sy.m(bigy)] = q.join(acc[sy.m(bigy)], ttr.at(big, bigy));
        for (std::size_t b = 0; b < nty; ++b)
          if (!q.leq(acc[b], tr.at(sx.m(big), b)))
            rep.fail("oplax-beta", {rl, sx.ttx->label(big), sy.tx->label(b)}, {big, b},
                     "m_Y.TTr = " + q.value_name(acc[b]) + ", Tr.m_X = " +
                         q.value_name(tr.at(sx.m(big), b)));
      }
    }

    // TTr . m_X^o = m_Y^o . Tr
    std::vector<Value> lhs(ntx * ntty, q.bottom());
    for (std::size_t big = 0; big < nttx; ++big) {
      if (!sx.m.defined(big))
        continue;
      const std::size_t a = sx.m(big);
      for (std::size_t bigy = 0; bigy < ntty; ++bigy)
        lhs[a * ntty + bigy] = q.join(lhs[a * ntty + bigy], ttr.at(big, bigy));
    }
    for (std::size_t a = 0; a < ntx; ++a)
      for (std::size_t bigy = 0; bigy < ntty; ++bigy) {
        if (!sy.m.defined(bigy))
          continue;
        const Value l = lhs[a * ntty + bigy];
        const Value rv = tr.at(a, sy.m(bigy));
        if (l != rv)
          rep.fail("beta-hat-iso", {rl, sx.tx->label(a), sy.ttx->label(bigy)}, {a, bigy},
                   "TTr.m_X^o = " + q.value_name(l) + ", m_Y^o.Tr = " + q.value_name(rv));
      }
  }
}

void check_lax(const LaxMonad& mon, const QuantaleRef& qref, const SetRef& x, const LawOptions& opts,
               Report& rep) {
  rep.checked("lax");
  rep.checked("lax-monotone");
  auto pool = relation_pool(qref, x, x, opts);
  std::vector<VRel> ext;
  ext.reserve(pool.size());
  for (const auto& r : pool)
    ext.push_back(mon.extend(r));

  const std::size_t n = pool.size();
  const bool all_pairs = n * n <= opts.max_pairs;
  auto rng = seeded(opts, x->size(), 0x1a5);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  const std::size_t rounds = all_pairs ? n * n : opts.random_pairs;
  rep.note("relation pairs on " + set_tag(x) + ": " + std::to_string(rounds) +
           (all_pairs ? " (all)" : " (seeded sample)"));

  const auto& q = *qref;
  for (std::size_t k = 0; k < rounds; ++k) {
    const std::size_t i = all_pairs ? k / n : pick(rng);
    const std::size_t j = all_pairs ? k % n : pick(rng);
    const VRel& r = pool[i];
    const VRel& s = pool[j];
    // Ts . Tr <= T(sr)
    if (auto v = rel_leq(compose(ext[i], ext[j]), mon.extend(compose(r, s))); !v)
      rep.fail("lax", {"r=" + rel_literal(r), "s=" + rel_literal(s), v.witness[0], v.witness[1]}, v.coords,
               "Ts.Tr is not below T(sr)");

    // r <= r' implies Tr <= Tr'; sampled mode builds r' as r v s.
    if (all_pairs) {
      if (rel_leq(r, s) && !rel_leq(ext[i], ext[j]))
        rep.fail("lax-monotone", {"r=" + rel_literal(r), "r'=" + rel_literal(s)}, {}, "Tr is not below Tr'");
    } else {
      VRel up = r;
      for (std::size_t a = 0; a < r.rows(); ++a)
        for (std::size_t b = 0; b < r.cols(); ++b)
          up.set(a, b, q.join(r.at(a, b), s.at(a, b)));
      if (auto v = rel_leq(ext[i], mon.extend(up)); !v)
        rep.fail("lax-monotone", {"r=" + rel_literal(r), "r'=" + rel_literal(up)}, v.coords,
                 "Tr is not below Tr'");
    }
  }
}

void check_xi(const LaxMonad& mon, const QuantaleRef& qref, Report& rep) {
  const auto& q = *qref;
  auto xi = mon.xi(q);
  if (!xi) {
    rep.note("no xi: TV -> V; xi-algebra laws not applicable");
    return;
  }
  rep.checked("xi-unit");
  rep.checked("xi-assoc");
  rep.checked("xi-monotone");
  const auto v = q.carrier();
  const Shape s = shape_of(mon, v);
  for (std::size_t a = 0; a < v->size(); ++a)
    if ((*xi)(s.e(a)) != a)
      rep.fail("xi-unit", {v->label(a)}, {a}, "xi(e(v)) != v");

  const Map txi = mon.on_map(*xi, s.ttx, s.tx);
  for (std::size_t big = 0; big < s.ttx->size(); ++big) {
    if (!s.m.defined(big) || !txi.defined(big))
      continue;
    if ((*xi)(txi(big)) != (*xi)(s.m(big)))
      rep.fail("xi-assoc", {s.ttx->label(big)}, {big}, "xi.Txi != xi.m");
  }

  VRel order(qref, v, v);
  for (std::size_t a = 0; a < v->size(); ++a)
    for (std::size_t b = 0; b < v->size(); ++b)
      if (q.leq(static_cast<Value>(a), static_cast<Value>(b)))
        order.set(a, b, q.unit());
  const VRel torder = mon.extend(order);
  for (std::size_t a = 0; a < s.tx->size(); ++a)
    for (std::size_t b = 0; b < s.tx->size(); ++b)
      if (q.leq(q.unit(), torder.at(a, b)) &&
          !q.leq(static_cast<Value>((*xi)(a)), static_cast<Value>((*xi)(b))))
        rep.fail("xi-monotone", {s.tx->label(a), s.tx->label(b)}, {a, b}, "T(<=) relates them, xi does not");
}

} // namespace

std::vector<VRel> relation_pool(const QuantaleRef& q, const SetRef& x, const SetRef& y,
                                const LawOptions& opts, bool* exhaustive) {
  const std::size_t cells = x->size() * y->size();
  const std::size_t nv = q->size();
  std::size_t total = 1;
  bool small = true;
  for (std::size_t i = 0; i < cells && small; ++i) {
    total *= nv;
    small = total <= exhaustive_limit;
  }
  std::vector<VRel> out;
  if (exhaustive)
    *exhaustive = small;
  if (small) {
    out.reserve(total);
    for (std::size_t code = 0; code < total; ++code) {
      VRel r(q, x, y);
      std::size_t c = code;
      for (std::size_t a = 0; a < x->size(); ++a)
        for (std::size_t b = 0; b < y->size(); ++b) {
          r.set(a, b, static_cast<Value>(c % nv));
          c /= nv;
        }
      out.push_back(std::move(r));
    }
    return out;
  }
  auto rng = seeded(opts, x->size(), y->size());
  std::uniform_int_distribution<std::size_t> pick(0, nv - 1);
  out.emplace_back(q, x, y);
  out.emplace_back(q, x, y, q->top());
  for (std::size_t k = 0; k < opts.random_pool; ++k) {
    VRel r(q, x, y);
    for (std::size_t a = 0; a < x->size(); ++a)
      for (std::size_t b = 0; b < y->size(); ++b)
        r.set(a, b, static_cast<Value>(pick(rng)));
    out.push_back(std::move(r));
  }
  return out;
}

Report check_monad_laws(const LaxMonad& mon, const QuantaleRef& q, const std::vector<SetRef>& samples,
                        const LawOptions& opts) {
  Report rep("monad " + mon.name());
  for (auto law : {"monad-unit", "monad-assoc", "monad-naturality", "graph-compat"})
    rep.checked(law);

  std::vector<Shape> shapes;
  for (const auto& x : samples) {
    const Shape s = shape_of(mon, x);
    const SetRef tttx = mon.apply(s.ttx);
    const Map et = mon.unit_at(s.tx, s.ttx);
    const Map te = mon.on_map(s.e, s.tx, s.ttx);
    const Map mt = mon.mult_at(s.tx, s.ttx, tttx);
    const Map tm = mon.on_map(s.m, tttx, s.ttx);
    for (std::size_t a = 0; a < s.tx->size(); ++a) {
      if (s.m(et(a)) != a)
        rep.fail("monad-unit", {s.tx->label(a)}, {a}, "m.e_T != 1");
      if (s.m(te(a)) != a)
        rep.fail("monad-unit", {s.tx->label(a)}, {a}, "m.Te != 1");
    }
    for (std::size_t big = 0; big < tttx->size(); ++big) {
      if (!tm.defined(big) || !mt.defined(big))
        continue;
      const std::size_t l = s.m(tm(big)), r = s.m(mt(big));
      if (l != Map::undefined && r != Map::undefined && l != r)
        rep.fail("monad-assoc", {tttx->label(big)}, {big}, "m.Tm != m.m_T");
    }
    shapes.push_back(s);
  }

  for (const auto& sx : shapes)
    for (const auto& sy : shapes)
      for (const auto& f : map_pool(sx.x, sy.x, opts)) {
        const Map tf = mon.on_map(f, sx.tx, sy.tx);
        const Map ttf = mon.on_map(tf, sx.ttx, sy.ttx);
        for (std::size_t x = 0; x < sx.x->size(); ++x)
          if (tf(sx.e(x)) != sy.e(f(x)))
            rep.fail("monad-naturality", {sx.x->label(x)}, {x}, "Tf.e != e.f");
        for (std::size_t big = 0; big < sx.ttx->size(); ++big) {
          if (!sx.m.defined(big))
            continue;
          const std::size_t l = tf(sx.m(big));
          const std::size_t r = ttf.defined(big) ? sy.m(ttf(big)) : Map::undefined;
          if (l != r)
            rep.fail("monad-naturality", {sx.ttx->label(big)}, {big}, "Tf.m != m.TTf");
        }
        const VRel g = graph(q, f);
        if (auto v = rel_eq(mon.extend(g), graph(q, tf)); !v)
          rep.fail("graph-compat", v.witness, v.coords, "T(graph f) != graph(Tf)");
        if (auto v = rel_eq(mon.extend(transpose(g)), transpose(graph(q, tf))); !v)
          rep.fail("graph-compat", v.witness, v.coords, "T(f^o) != (Tf)^o");
      }
  return rep;
}

Report check_extension_laws(const LaxMonad& mon, const QuantaleRef& q, const std::vector<SetRef>& samples,
                            const LawOptions& opts) {
  Report rep("extension " + mon.name() + " over " + q->name());
  rep.absorb(check_monad_laws(mon, q, samples, opts));
  rep.set_subject("extension " + mon.name() + " over " + q->name());

  std::vector<Shape> shapes;
  for (const auto& x : samples)
    shapes.push_back(shape_of(mon, x));
  for (const auto& sx : shapes)
    for (const auto& sy : shapes)
      check_relation_laws(mon, q, sx, sy, opts, rep, true);
  for (const auto& x : samples)
    check_lax(mon, q, x, opts, rep);
  check_xi(mon, q, rep);

  rep.vacuous("mon");
  rep.vacuous("coh");
  rep.vacuous("nat");
  return rep;
}

const Report& standing_assumptions(const MonadRef& m, const QuantaleRef& q) {
  struct Entry {
    MonadRef monad;
    QuantaleRef quantale;
    Report report;
  };
  static std::mutex lock;
  static std::map<std::pair<const void*, const void*>, Entry> cache;

  std::lock_guard<std::mutex> guard(lock);
  const auto key = std::make_pair(static_cast<const void*>(m.get()), static_cast<const void*>(q.get()));
  if (auto it = cache.find(key); it != cache.end())
    return it->second.report;

  Report rep("standing assumptions for " + m->name() + " over " + q->name());
  std::vector<Shape> shapes;
  shapes.push_back(shape_of(*m, FinSet::atoms({"p"})));
  const SetRef two = FinSet::atoms({"p", "q"});
  // Second iterates of larger list budgets outgrow a dense check.
  if (m->apply(two, 2)->size() <= 4096)
    shapes.push_back(shape_of(*m, two));
  else
    rep.note("two-point sample skipped: second iterate too large");
  LawOptions opts;
  opts.random_pool = 16;
  for (const auto& sx : shapes)
    for (const auto& sy : shapes)
      check_relation_laws(*m, q, sx, sy, opts, rep, false);
  return cache.emplace(key, Entry{m, q, std::move(rep)}).first->second.report;
}

} // namespace tvcat
