#include <algorithm>

#include "doctest.h"
#include "exwlex/builders.hpp"
#include "exwlex/catalog.hpp"
#include "exwlex/error.hpp"
#include "exwlex/limits.hpp"
#include "oracle.hpp"

using namespace exwlex;

namespace {

LimitContext ctx_for(FinCategory c, unsigned workers = 1) {
  SearchOptions o;
  o.workers = workers;
  return LimitContext(share(std::move(c)), o);
}

}  // namespace

TEST_CASE("cone enumeration agrees with the brute-force oracle") {
  auto ctx = ctx_for(catalog::chain(3));
  const auto& c = ctx.category();
  CHECK(ctx.enumerate_cones(Diagram::terminal()).size() == 3);

  auto pair11 = Diagram::product({c.object("1"), c.object("1")});
  auto cones = ctx.enumerate_cones(pair11);
  CHECK(cones == oracle::cones(c, pair11));
  REQUIRE(cones.size() == 2);
  CHECK(cones[0].apex == c.object("0"));
  CHECK(cones[1].apex == c.object("1"));

  auto pp = ctx_for(catalog::parallel_pair());
  const auto& p = pp.category();
  auto eq = Diagram::equalizer(p, p.morphism("f"), p.morphism("g"));
  auto found = pp.enumerate_cones(eq);
  CHECK(found == oracle::cones(p, eq));
  // no leg into a equalizes f and g
  CHECK(found.empty());
  auto ff = Diagram::equalizer(p, p.morphism("f"), p.morphism("f"));
  CHECK(pp.enumerate_cones(ff) == oracle::cones(p, ff));
  CHECK(pp.enumerate_cones(ff).size() == 1);
}

TEST_CASE("weak limits in a chain") {
  auto ctx = ctx_for(catalog::chain(3));
  const auto& c = ctx.category();
  const ObjId o1 = c.object("1"), o2 = c.object("2");
  auto d = Diagram::product({o1, o2});
  Cone meet{o1, {c.morphism("id_1"), c.morphism("1->2")}};
  auto v = ctx.is_weak_limit(d, meet);
  CHECK(v.holds);
  CHECK(recheck_factorizations(c, meet, v));
  CHECK(v.table.size() == oracle::cones(c, d).size());

  Cone low{c.object("0"), {c.morphism("0->1"), c.morphism("0->2")}};
  auto w = ctx.is_weak_limit(d, low);
  CHECK_FALSE(w.holds);
  REQUIRE(w.counterexample);
  CHECK(w.counterexample->apex == o1);

  CHECK(ctx.is_limit(d, meet).holds);
  auto term = ctx.weak_limits(Diagram::terminal());
  REQUIRE(term.size() == 1);
  CHECK(term[0].apex == o2);
  CHECK(ctx.is_limit(Diagram::terminal(), term[0]).holds);
}

TEST_CASE("weak limit that is not a limit reports two mediators") {
  auto ctx = ctx_for(catalog::projections());
  const auto& c = ctx.category();
  const ObjId t = c.object("T"), v = c.object("V");
  auto d = Diagram::product({t, t});
  Cone cone{v, {c.morphism("!V"), c.morphism("!V")}};
  CHECK(ctx.is_weak_limit(d, cone).holds);
  CHECK(oracle::weak_limit(c, d, cone));
  auto strict = ctx.is_limit(d, cone);
  CHECK_FALSE(strict.holds);
  REQUIRE(strict.non_unique_mediators);
  CHECK(strict.non_unique_mediators->first != strict.non_unique_mediators->second);
  CHECK_FALSE(oracle::limit(c, d, cone));
}

TEST_CASE("find_weak_limits matches the oracle on every small shape") {
  for (auto build : {+[] { return catalog::chain(3); }, +[] { return catalog::m3(); }, +[] { return catalog::projections(); },
                     +[] { return catalog::noneffective(); }, +[] { return catalog::parallel_pair(); }}) {
    auto ctx = ctx_for(build());
    const auto& c = ctx.category();
    const auto n = static_cast<ObjId>(c.num_objects());
    CHECK(find_weak_limits(ctx, Diagram::terminal()) == oracle::weak_limits(c, Diagram::terminal()));
    for (ObjId a = 0; a < n; ++a)
      for (ObjId b = 0; b < n; ++b) {
        auto d = Diagram::product({a, b});
        CHECK(find_weak_limits(ctx, d) == oracle::weak_limits(c, d));
      }
    for (MorId f = 0; f < static_cast<MorId>(c.num_morphisms()); ++f)
      for (MorId g : c.incoming(c.cod(f))) {
        auto d = Diagram::pullback(c, f, g);
        CHECK(find_weak_limits(ctx, d) == oracle::weak_limits(c, d));
        if (c.dom(f) == c.dom(g)) {
          auto e = Diagram::equalizer(c, f, g);
          CHECK(find_weak_limits(ctx, e) == oracle::weak_limits(c, e));
        }
      }
  }
}

TEST_CASE("parallel pair has no weak product of (b, b)") {
  auto ctx = ctx_for(catalog::parallel_pair());
  const ObjId b = ctx.category().object("b");
  CHECK(find_weak_limits(ctx, Diagram::product({b, b})).empty());
}

TEST_CASE("weak limits are closed under covering the apex by split epis") {
  auto ctx = ctx_for(catalog::projections());
  const auto& c = ctx.category();
  const auto n = static_cast<ObjId>(c.num_objects());
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b) {
      auto d = Diagram::product({a, b});
      const auto& wl = ctx.weak_limits(d);
      for (const auto& cone : wl)
        for (MorId e : c.incoming(cone.apex)) {
          if (!classify_morphism(c, e).split_epi) continue;
          auto pre = precompose(c, cone, e);
          CHECK(std::find(wl.begin(), wl.end(), pre) != wl.end());
        }
    }
}

TEST_CASE("budget exceeded is an error, not a partial verdict") {
  SearchOptions o;
  o.cone_budget = 2;
  LimitContext ctx(share(catalog::chain(4)), o);
  try {
    ctx.enumerate_cones(Diagram::terminal());
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
}

TEST_CASE("determined by projections") {
  auto ctx = ctx_for(catalog::projections());
  const auto& c = ctx.category();
  Cone cone{c.object("V"), {c.morphism("!V"), c.morphism("!V")}};
  CHECK(determined_by_projections(ctx, cone, cone.legs[0]).holds);
  auto v = determined_by_projections(ctx, cone, c.morphism("f"));
  CHECK_FALSE(v.holds);
  REQUIRE(v.counterexample);
  const auto [a, b] = *v.counterexample;
  // oracle: equalized by both legs, separated by f
  CHECK(c.compose(cone.legs[0], a) == c.compose(cone.legs[0], b));
  CHECK(c.compose(c.morphism("f"), a) != c.compose(c.morphism("f"), b));

  // monic pairing: every arrow is determined by projections
  auto chain = ctx_for(catalog::chain(3));
  const auto& k = chain.category();
  Cone meet{k.object("1"), {k.morphism("id_1"), k.morphism("1->2")}};
  CHECK(determined_by_projections(chain, meet, k.morphism("1->2")).holds);
}

TEST_CASE("weak exponentials in chains match Heyting implication") {
  for (int n : {3, 4}) {
    auto ctx = ctx_for(catalog::chain(n));
    const auto& c = ctx.category();
    for (ObjId x = 0; x < n; ++x)
      for (ObjId y = 0; y < n; ++y) {
        auto found = find_weak_exponentials(ctx, x, y);
        REQUIRE_FALSE(found.empty());
        for (const auto& w : found) {
          CHECK(w.w == oracle::implication(c, x, y));
          CHECK(is_weak_exponential(ctx, w).holds);
        }
      }
  }
}

TEST_CASE("M3 has no weak exponential for X = b, Y = a") {
  auto ctx = ctx_for(catalog::m3());
  const auto& c = ctx.category();
  CHECK(oracle::implication(c, c.object("b"), c.object("a")) == -1);
  CHECK(find_weak_exponentials(ctx, c.object("b"), c.object("a")).empty());
  for (const auto& d : admissible_exponential_data(ctx, c.object("b"), c.object("a"))) {
    auto v = is_weak_exponential(ctx, d);
    CHECK_FALSE(v.holds);
    CHECK(v.counterexample.has_value());
  }
  // Y terminal: W terminal works
  auto t = find_weak_exponentials(ctx, c.object("b"), c.object("1"));
  REQUIRE_FALSE(t.empty());
  CHECK(t.front().w == c.object("1"));
}

TEST_CASE("weak dependent products in chains are relative implications") {
  auto ctx = ctx_for(catalog::chain(3));
  const auto& c = ctx.category();
  // identity case
  auto id1 = c.morphism("id_1");
  auto idp = find_weak_dependent_products(ctx, id1, id1);
  REQUIRE_FALSE(idp.empty());
  CHECK(c.dom(idp.front().u) == c.object("1"));
  for (MorId x = 0; x < static_cast<MorId>(c.num_morphisms()); ++x)
    for (MorId y : c.incoming(c.dom(x))) {
      auto found = find_weak_dependent_products(ctx, y, x);
      REQUIRE_FALSE(found.empty());
      // oracle: largest U <= J with U meet X <= Y
      ObjId expect = oracle::implication(c, c.dom(x), c.dom(y), c.cod(x));
      for (const auto& d : found) {
        CHECK(c.dom(d.u) == expect);
        CHECK(is_weak_dependent_product(ctx, d).holds);
      }
    }
}

TEST_CASE("M3 has a composable pair without weak dependent product") {
  auto ctx = ctx_for(catalog::m3());
  const auto& c = ctx.category();
  CHECK(find_weak_dependent_products(ctx, c.morphism("0->b"), c.morphism("b->1")).empty());
}

TEST_CASE("kernel pairs, coequalizers, regular epis, images") {
  auto ctx = ctx_for(catalog::chain(3));
  const auto& c = ctx.category();
  auto id = c.identity(1);
  auto kp = kernel_pair(ctx, id);
  REQUIRE(kp);
  CHECK(kp->legs[0] == id);
  CHECK(ctx.is_regular_epi(id));
  auto img = image_factorization(ctx, id);
  REQUIRE(img);
  CHECK(img->cover == id);
  for (MorId f = 0; f < static_cast<MorId>(c.num_morphisms()); ++f)
    CHECK(ctx.is_regular_epi(f) == c.is_identity(f));

  auto fs = ctx_for(make_finset({{"1", 1}, {"2", 2}, {"3", 3}}));
  const auto& s = fs.category();
  // 3 -> 3 with image of size 2
  auto f = s.morphism("3->3:001");
  auto im = image_factorization(fs, f);
  REQUIRE(im);
  CHECK(s.cod(im->cover) == s.object("2"));
  CHECK(s.compose(im->mono, im->cover) == f);
  CHECK(fs.is_regular_epi(im->cover));
  CHECK(classify_morphism(s, im->mono).mono);
  // identifying 0 and 1 coequalizes (id, swap of 0 and 1); the kernel pair
  // itself (5 elements) is not in the category
  auto q = s.morphism("3->2:001");
  CHECK_FALSE(kernel_pair(fs, q));
  auto id3 = s.identity(s.object("3")), sw = s.morphism("3->3:102");
  CHECK(is_coequalizer(fs, q, id3, sw));
  auto found = coequalizer(fs, id3, sw);
  REQUIRE(found != kNoMorphism);
  CHECK(s.cod(found) == s.object("2"));
  CHECK_FALSE(fs.is_regular_epi(s.morphism("2->3:01")));
}
