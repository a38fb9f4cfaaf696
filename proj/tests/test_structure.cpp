#include "pools.hpp"

#include "tvcat/errors.hpp"

#include <doctest.h>

using namespace tvcat;
using pools::bool2;
using pools::points;

namespace {

// p <= q as a two-point preorder.
TVStructure chain2(const std::string& name = "C") { return pools::preorder({true, true, false, true}, 2, name); }

TVStructure discrete(std::size_t n, const std::string& name = "D") {
  std::vector<bool> le(n * n, false);
  for (std::size_t i = 0; i < n; ++i)
    le[i * n + i] = true;
  return pools::preorder(le, n, name);
}

} // namespace

TEST_CASE("preorders are identity-monad categories") {
  auto c = chain2();
  CHECK(c.is_vcat());
  CHECK(check_category(c).ok());
  for (const auto& p : pools::preorders(3))
    CHECK(check_category(p).ok());

  auto broken = c;
  broken.rel.set(0, 0, 0);
  auto rep = check_category(broken);
  REQUIRE(rep.has("cat-unit"));
  CHECK(rep.violations().front().witness == std::vector<std::string>{"p"});

  // Relations on two points that are not preorders all fail.
  std::size_t valid = 0;
  auto x = points(2);
  for (unsigned mask = 0; mask < 16; ++mask) {
    VRel r(bool2(), x, x);
    for (unsigned k = 0; k < 4; ++k)
      r.set(k / 2, k % 2, (mask >> k) & 1);
    valid += check_category(TVStructure::make("R", identity_monad(), x, r)).ok();
  }
  CHECK(valid == 4);
}

TEST_CASE("constant-unit list structure on one point is a category") {
  auto u = pools::list_unit_point();
  CHECK(u.tcarrier()->size() == 3);
  CHECK(check_category(u).ok());
}

TEST_CASE("structures validate their shape") {
  auto x = points(2);
  VRel wrong(bool2(), x, x);
  CHECK_THROWS_AS(TVStructure::make("W", pools::powerset(), x, wrong), ShapeError);
}

TEST_CASE("functors between preorders are monotone maps") {
  auto c = chain2();
  CHECK(check_functor(c, c, Map::identity(c.carrier)));
  Map swap(c.carrier, c.carrier, {1, 0});
  auto v = check_functor(c, c, swap);
  CHECK_FALSE(v);
  CHECK(v.witness == std::vector<std::string>{"p", "q"});

  auto three = pools::preorder({true, true, true, false, true, true, false, false, true}, 3, "T");
  for (std::size_t m = 0; m < 9; ++m) {
    Map f(c.carrier, three.carrier, {m / 3, m % 3});
    CHECK(static_cast<bool>(check_functor(c, three, f)) == (f(0) <= f(1)));
  }

  // a(-, x0) is the unit everywhere on a top element.
  for (std::size_t x0 = 0; x0 < 3; ++x0)
    CHECK(static_cast<bool>(check_functor(c, three, Map::constant(c.carrier, three.carrier, x0))));
}

TEST_CASE("functor order is pointwise for preorders") {
  auto c = chain2();
  auto three = pools::preorder({true, true, true, false, true, true, false, false, true}, 3, "T");
  for (std::size_t m1 = 0; m1 < 9; ++m1)
    for (std::size_t m2 = 0; m2 < 9; ++m2) {
      Map f(c.carrier, three.carrier, {m1 / 3, m1 % 3});
      Map g(c.carrier, three.carrier, {m2 / 3, m2 % 3});
      const bool pointwise = f(0) <= g(0) && f(1) <= g(1);
      CHECK(static_cast<bool>(functor_leq(c, three, f, g)) == pointwise);
    }
  CHECK(functor_leq(c, c, Map::identity(c.carrier), Map::identity(c.carrier)));

  auto d = discrete(2);
  Map f = Map::constant(d.carrier, d.carrier, 0), g = Map::constant(d.carrier, d.carrier, 1);
  CHECK_FALSE(functor_leq(d, d, f, g));
}

TEST_CASE("underlying V-category") {
  auto c = chain2();
  auto same = underlying_vcat(c);
  CHECK(same.report.ok());
  CHECK(same.value.rel == c.rel);

  auto u = underlying_vcat(pools::list_unit_point());
  CHECK(u.value.is_vcat());
  CHECK(u.value.at(0, 0) == bool2()->unit());

  for (const auto& s : pools::valid_structures(pools::powerset(), 2)) {
    auto e = underlying_vcat(s);
    CHECK(e.report.ok());
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < 2; ++y)
        CHECK(e.value.at(x, y) == s.at(std::size_t{1} << x, y));
  }
}

TEST_CASE("free (T,V)-category on a V-category") {
  auto c = chain2();
  auto same = free_tvcat(c, identity_monad());
  CHECK(same.value.rel == c.rel);

  auto z = discrete(1, "Z");
  auto lz = free_tvcat(z, pools::list2());
  CHECK(lz.report.ok());
  for (std::size_t t = 0; t < lz.value.tcarrier()->size(); ++t)
    CHECK(lz.value.at(t, 0) == (lz.value.tcarrier()->label(t) == "[p]" ? 1 : 0));

  auto d = discrete(2);
  auto pd = free_tvcat(d, pools::powerset());
  CHECK(pd.report.ok());
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t x = 0; x < 2; ++x)
      CHECK(pd.value.at(a, x) == (a == (std::size_t{1} << x) ? 1 : 0));

  auto bad = c;
  bad.rel.set(1, 1, 0);
  CHECK_THROWS_AS(free_tvcat(bad, pools::powerset()), PreconditionError);
}

TEST_CASE("right adjoints between preorders") {
  auto c = chain2();
  auto id = find_right_adjoint(c, c, Map::identity(c.carrier));
  REQUIRE(id.right);
  CHECK(*id.right == Map::identity(c.carrier));
  CHECK(id.equality);

  // A bijective monotone map onto another chain: the adjoint is the inverse.
  auto two = chain2("B");
  Map f(c.carrier, two.carrier, {0, 1});
  auto found = find_right_adjoint(c, two, f);
  REQUIRE(found.right);
  CHECK(*found.right == Map(two.carrier, c.carrier, {0, 1}));
  CHECK(found.candidates <= 4);
  // a(x, g y) = b(f x, y) entrywise.
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      CHECK(c.at(x, (*found.right)(y)) == two.at(f(x), y));

  // A constant map from a discrete pair to a point has no right adjoint.
  auto d = discrete(2);
  auto one = discrete(1, "One");
  auto none = find_right_adjoint(d, one, Map::constant(d.carrier, one.carrier, 0));
  CHECK_FALSE(none.right);
  CHECK(none.candidates == 2);

  Map swap(c.carrier, c.carrier, {1, 0});
  CHECK_THROWS_AS(find_right_adjoint(c, c, swap), PreconditionError);
}

TEST_CASE("lifting V-categories along the monad") {
  auto c = chain2();
  auto same = lift_to_vcat(identity_monad(), c);
  CHECK(same.value.rel == c.rel);

  // One object with c = v over lukasiewicz(3): equal-length lists get v^length.
  // Only v = unit is a V-category, so the other values go through extend().
  auto q = Quantale::make_builtin("lukasiewicz", std::vector<long long>{3});
  for (Value v = 0; v < 3; ++v) {
    VRel r(q, points(1), points(1), v);
    auto tc = pools::list2()->extend(r);
    const auto& tz = tc.source();
    for (std::size_t a = 0; a < tz->size(); ++a)
      for (std::size_t b = 0; b < tz->size(); ++b) {
        const auto la = tz->length(a), lb = tz->length(b);
        Value expect = q->bottom();
        if (la == lb) {
          expect = q->unit();
          for (std::size_t k = 0; k < la; ++k)
            expect = q->tensor(expect, v);
        }
        CHECK(tc.at(a, b) == expect);
      }
    if (v == q->unit()) {
      auto one = TVStructure::make("V", identity_monad(), points(1), r);
      auto lifted = lift_to_vcat(pools::list2(), one);
      CHECK(lifted.report.ok());
      CHECK(lifted.value.rel == tc);
    }
  }

  // Egli-Milner order on subsets of {p <= q}, which is a preorder.
  auto em = lift_to_vcat(pools::powerset(), c);
  CHECK(em.report.ok());
  const auto& t = em.value;
  CHECK(check_category(t).ok());
  auto at = [&](const char* a, const char* b) { return t.at(*t.carrier->find(a), *t.carrier->find(b)); };
  CHECK(at("{p}", "{p,q}") == 1);
  CHECK(at("{p,q}", "{q}") == 1);
  CHECK(at("{q}", "{p}") == 0);
  CHECK(at("{}", "{p}") == 0);
  CHECK(at("{}", "{}") == 1);
}

TEST_CASE("2-monad equalities on lifted preorders") {
  for (const auto& p : pools::preorders(2)) {
    CHECK(check_two_monad(pools::powerset(), p).ok());
    CHECK(check_two_monad(pools::list2(), p).ok());
  }
}
