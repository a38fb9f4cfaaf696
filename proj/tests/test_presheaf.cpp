#include "pools.hpp"

#include "tvcat/errors.hpp"
#include "tvcat/presheaf.hpp"

#include <doctest.h>

#include <random>

using namespace tvcat;
using pools::bool2;
using pools::points;

namespace {

TVStructure chain2(const std::string& name = "C") { return pools::preorder({true, true, false, true}, 2, name); }

TVRel rel_from_mask(const TVStructure& a, const TVStructure& b, unsigned mask) {
  VRel r(a.quantale, a.tcarrier(), b.carrier);
  const std::size_t cols = b.carrier->size();
  for (std::size_t c = 0; c < r.rows() * cols; ++c)
    r.set(c / cols, c % cols, (mask >> c) & 1);
  return TVRel::make(a, b, std::move(r));
}

// Kleisli convolution by brute force: (x', z) -> join { Tr(X, y') * s(y', z) : m X = x' }.
oracle::Table convolve(const TVRel& r, const TVRel& s) {
  const auto& q = *r.rel.quantale();
  const auto kind = oracle::monad_kind(*r.source.monad);
  const auto& tx = *r.source.tcarrier();
  const auto ttx = r.source.monad->apply(r.source.tcarrier());
  const auto& ty = *s.source.tcarrier();
  const auto tr = oracle::table(r.rel), ts = oracle::table(s.rel);
  const std::size_t nz = s.rel.cols();
  oracle::Table out(tx.size(), std::vector<Value>(nz, q.bottom()));
  for (std::size_t big = 0; big < ttx->size(); ++big) {
    const auto xp = oracle::mult(kind, tx, *ttx, big);
    if (xp == oracle::undefined)
      continue;
    for (std::size_t yp = 0; yp < ty.size(); ++yp) {
      const Value lifted = oracle::extend(kind, q, tr, *ttx, big, ty, yp);
      for (std::size_t z = 0; z < nz; ++z)
        out[xp][z] = q.join(out[xp][z], q.tensor(lifted, ts[yp][z]));
    }
  }
  return out;
}

} // namespace

TEST_CASE("Kleisli convolution") {
  // Identity monad: plain composition.
  auto c = chain2();
  for (unsigned m1 = 0; m1 < 16; ++m1)
    for (unsigned m2 = 0; m2 < 16; ++m2) {
      auto r = rel_from_mask(c, c, m1), s = rel_from_mask(c, c, m2);
      CHECK(kleisli_compose(r, s).rel == compose(r.rel, s.rel));
    }

  // a after a is below a, with equality exactly when it is also above.
  for (const auto& s : pools::valid_structures(pools::powerset(), 2)) {
    auto a = identity_tvrel(s);
    auto aa = kleisli_compose(a, a);
    CHECK(rel_leq(aa.rel, s.rel));
    CHECK(static_cast<bool>(rel_eq(aa.rel, s.rel)) == static_cast<bool>(rel_leq(s.rel, aa.rel)));
  }

  // Powerset: matches the triple loop.
  auto structures = pools::valid_structures(pools::powerset(), 2);
  auto one = pools::valid_structures(pools::powerset(), 1);
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    const auto& x = structures[rng() % structures.size()];
    const auto& y = one[rng() % one.size()];
    const auto& z = structures[rng() % structures.size()];
    auto r = rel_from_mask(x, y, static_cast<unsigned>(rng() % 16));
    auto s = rel_from_mask(y, z, static_cast<unsigned>(rng() % 16));
    CHECK(oracle::table(kleisli_compose(r, s).rel) == convolve(r, s));
  }
}

TEST_CASE("a structure is a module over itself") {
  for (const auto& p : pools::preorders(3))
    CHECK(is_module(identity_tvrel(p)));
  for (const auto& s : pools::valid_structures(pools::powerset(), 2))
    CHECK(is_module(identity_tvrel(s)));
  CHECK(is_module(identity_tvrel(pools::list_unit_point())));
}

TEST_CASE("modules between preorders are up- and down-closed relations") {
  for (const auto& a : pools::preorders_on(2))
    for (const auto& b : pools::preorders_on(2))
      for (unsigned mask = 0; mask < 16; ++mask) {
        auto r = rel_from_mask(a, b, mask);
        // r(x, y), x' <= x and y <= y' give r(x', y').
        bool closed = true;
        for (std::size_t x = 0; x < 2; ++x)
          for (std::size_t y = 0; y < 2; ++y)
            for (std::size_t x2 = 0; x2 < 2; ++x2)
              for (std::size_t y2 = 0; y2 < 2; ++y2)
                if (r.rel.at(x, y) && a.at(x2, x) && b.at(y, y2) && !r.rel.at(x2, y2))
                  closed = false;
        CHECK(static_cast<bool>(is_module(r)) == closed);
      }
}

TEST_CASE("the bottom relation fails when the empty set relates to something") {
  auto top = TVStructure::constant("Top", pools::powerset(), bool2(), points(2), 1);
  REQUIRE(check_category(top).ok());
  auto bottom = rel_from_mask(top, top, 0);
  auto v = is_module(bottom);
  CHECK_FALSE(v);
  CHECK(v.witness.size() == 3);
}

TEST_CASE("hom structure on V") {
  auto q = bool2();
  auto id = hom_structure(q, identity_monad());
  CHECK(id.report.ok());
  for (Value v = 0; v < 2; ++v)
    for (Value w = 0; w < 2; ++w)
      CHECK(id.value.at(v, w) == q->hom(v, w));

  auto l = hom_structure(q, pools::list2());
  CHECK(l.report.ok());
  const auto& tv = *l.value.tcarrier();
  CHECK(tv.size() == 7);
  for (std::size_t t = 0; t < tv.size(); ++t) {
    Value fold = q->unit();
    for (auto v : tv.items(t))
      fold = q->tensor(fold, static_cast<Value>(v));
    for (Value w = 0; w < 2; ++w)
      CHECK(l.value.at(t, w) == q->hom(fold, w));
  }

  auto p = hom_structure(q, pools::powerset());
  CHECK(p.report.ok());
  for (std::size_t t = 0; t < 4; ++t) {
    Value meet = q->top();
    for (auto v : p.value.tcarrier()->items(t))
      meet = q->meet(meet, static_cast<Value>(v));
    for (Value w = 0; w < 2; ++w)
      CHECK(p.value.at(t, w) == q->hom(meet, w));
  }

  auto l3 = Quantale::make_builtin("lukasiewicz", std::vector<long long>{3});
  CHECK(hom_structure(l3, pools::list2()).report.ok());
  CHECK(hom_structure(l3, pools::powerset()).report.ok());
}

TEST_CASE("tensor of (T,V)-categories") {
  auto c = chain2();
  auto d = pools::preorder({true, false, false, true}, 2, "D");
  auto cd = tensor_tvcat(c, d);
  CHECK(cd.report.ok());
  const auto& xy = *cd.value.carrier;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(cd.value.at(i, j) == (c.at(xy.first(i), xy.first(j)) && d.at(xy.second(i), xy.second(j))));

  for (const auto& s : pools::valid_structures(pools::powerset(), 2)) {
    auto pt = point_structure(pools::powerset(), bool2());
    auto st = tensor_tvcat(s, pt).value;
    const auto& pairs = *st.carrier;
    const auto& tp = *st.tcarrier();
    for (std::size_t w = 0; w < tp.size(); ++w) {
      // Project the subset of pairs onto its first coordinates.
      std::size_t first = 0;
      for (auto i : tp.items(w))
        first |= std::size_t{1} << pairs.first(i);
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const Value point = tp.items(w).empty() ? pt.at(0, 0) : pt.at(1, 0);
        CHECK(st.at(w, i) == bool2()->tensor(s.at(first, pairs.first(i)), point));
      }
    }
  }
}

TEST_CASE("modules and functors into hom agree") {
  auto c = chain2();
  auto a = rel_from_mask(c, c, 0b1011); // a itself: (p,p), (p,q), (q,q)
  REQUIRE(a.rel == c.rel);
  auto same = module_functor_equiv(a);
  CHECK(same.module);
  CHECK(same.functor);

  auto complement = rel_from_mask(c, c, 0b0100);
  auto diff = module_functor_equiv(complement);
  CHECK_FALSE(diff.module);
  CHECK_FALSE(diff.functor);

  for (unsigned mask = 0; mask < 16; ++mask)
    CHECK(module_functor_equiv(rel_from_mask(c, c, mask)).agree());
}

TEST_CASE("presheaf spaces") {
  // 2-chain: the down-closed maps, ordered by containment.
  auto c = chain2();
  auto ps = presheaf_space(c);
  CHECK(ps.report.ok());
  REQUIRE(ps.presheaves.size() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      bool contained = true;
      for (std::size_t t = 0; t < 2; ++t)
        contained = contained && (!ps.presheaves[i][t] || ps.presheaves[j][t]);
      CHECK(ps.space.at(i, j) == (contained ? 1 : 0));
    }

  auto one = pools::preorder({true}, 1, "One");
  auto p1 = presheaf_space(one);
  REQUIRE(p1.presheaves.size() == 2);
  for (Value v = 0; v < 2; ++v)
    for (Value w = 0; w < 2; ++w)
      CHECK(p1.space.at(v, w) == bool2()->hom(p1.presheaves[v][0], p1.presheaves[w][0]));

  auto u = pools::list_unit_point();
  auto pu = presheaf_space(u);
  CHECK(pu.report.ok());
  // Brute-force filter of all 2^|TX| maps.
  std::size_t modules = 0;
  for (unsigned mask = 0; mask < 8; ++mask) {
    auto pt = point_structure(u.monad, bool2());
    VRel phi(bool2(), u.tcarrier(), pt.carrier);
    for (std::size_t t = 0; t < 3; ++t)
      phi.set(t, 0, (mask >> t) & 1);
    modules += static_cast<bool>(is_module(TVRel::make(u, pt, phi)));
  }
  CHECK(pu.presheaves.size() == modules);
  CHECK(evaluation_functor(u, pu));
}

TEST_CASE("Yoneda") {
  auto c = chain2();
  auto ps = presheaf_space(c);
  auto rep = yoneda_check(c, ps);
  CHECK(rep.ok());
  CHECK(rep.inventory().size() == 3);
  // The Yoneda image of x is its principal down-set.
  for (std::size_t x = 0; x < 2; ++x) {
    std::vector<Value> down{c.at(0, x), c.at(1, x)};
    CHECK(std::find(ps.presheaves.begin(), ps.presheaves.end(), down) != ps.presheaves.end());
  }
  CHECK(yoneda_check(pools::preorder({true}, 1, "One")).ok());
  CHECK(yoneda_check(pools::list_unit_point()).ok());
}

TEST_CASE("presheaves need xi and a small enough candidate space") {
  auto big = pools::valid_structures(pools::powerset(), 2).front();
  CHECK_THROWS_AS(presheaf_space(big), BudgetError);
}
