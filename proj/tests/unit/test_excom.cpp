#include <algorithm>

#include "doctest.h"
#include "exwlex/builders.hpp"
#include "exwlex/catalog.hpp"
#include "exwlex/error.hpp"
#include "exwlex/excom.hpp"

using namespace exwlex;

namespace {

LimitContext ctx_for(FinCategory c, unsigned workers = 1) {
  SearchOptions o;
  o.workers = workers;
  return LimitContext(share(std::move(c)), o);
}

const ExactnessClause& clause(const ExactnessReport& r, const std::string& name) {
  auto it = std::find_if(r.clauses.begin(), r.clauses.end(), [&](const auto& c) { return c.name == name; });
  REQUIRE(it != r.clauses.end());
  return *it;
}

// Embedding is a bijection on every hom-set.
bool full_and_faithful(const Functor& f) {
  const auto& s = *f.source;
  const auto& t = *f.target;
  for (ObjId a = 0; a < static_cast<ObjId>(s.num_objects()); ++a)
    for (ObjId b = 0; b < static_cast<ObjId>(s.num_objects()); ++b) {
      std::vector<MorId> img;
      for (MorId m : s.hom(a, b)) img.push_back(f.map_morphism(m));
      std::sort(img.begin(), img.end());
      if (std::adjacent_find(img.begin(), img.end()) != img.end()) return false;
      if (img.size() != t.hom(f.map_object(a), f.map_object(b)).size()) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("free relations are pseudo-equivalence relations") {
  auto ctx = ctx_for(catalog::chain(3));
  const auto& c = ctx.category();
  for (ObjId x = 0; x < 3; ++x) {
    auto v = is_pseudo_eq_relation(ctx, x, x, c.identity(x), c.identity(x));
    CHECK(v.holds);
    REQUIRE(v.relation);
    CHECK(v.relation->rho == c.identity(x));
    CHECK(v.relation->sigma == c.identity(x));
    CHECK(v.relation->is_free(c));
  }
}

TEST_CASE("in a poset (r, r) is a relation only when R = X") {
  auto ctx = ctx_for(catalog::chain(3));
  const auto& c = ctx.category();
  // oracle: reflexivity needs X -> R, so R and X are mutually reachable
  for (MorId r = 0; r < static_cast<MorId>(c.num_morphisms()); ++r) {
    auto v = is_pseudo_eq_relation(ctx, c.cod(r), c.dom(r), r, r);
    CHECK(v.holds == c.is_identity(r));
    if (!v.holds) CHECK(v.failed_axiom == "reflexivity");
  }
}

TEST_CASE("symmetry failure is named") {
  // X = {0, 1}, R = {(0,0), (1,1), (0,1)} with no swap available
  auto c = make_concrete({{"X", 2}, {"R", 3}}, {{"r1", "R", "X", {0, 1, 0}},
                                                 {"r2", "R", "X", {0, 1, 1}},
                                                 {"d", "X", "R", {0, 1}}});
  auto ctx = ctx_for(std::move(c));
  const auto& k = ctx.category();
  auto v = is_pseudo_eq_relation(ctx, k.object("X"), k.object("R"), k.morphism("r1"), k.morphism("r2"));
  CHECK_FALSE(v.holds);
  CHECK(v.failed_axiom == "symmetry");
}

TEST_CASE("tracks and related") {
  auto ctx = ctx_for(catalog::chain(3));
  const auto& c = ctx.category();
  auto free_rel = [&](ObjId x) { return *is_pseudo_eq_relation(ctx, x, x, c.identity(x), c.identity(x)).relation; };
  auto r0 = free_rel(0), r2 = free_rel(2);
  auto f = c.morphism("0->2");
  auto k = tracks(c, r0, r2, f);
  REQUIRE(k);
  CHECK(*k == f);
  CHECK(tracks(c, r0, r0, c.identity(0)) == c.identity(0));
  CHECK_FALSE(tracks(c, r2, r0, c.identity(2)).has_value());
  CHECK(related(c, r2, f, f) == f);
}

TEST_CASE("wlex audit rejects the parallel pair") {
  auto ctx = ctx_for(catalog::parallel_pair());
  auto a = wlex_audit(ctx);
  CHECK_FALSE(a.passed);
  // (a, b) is the first pair in audit order; (b, b) fails too
  CHECK(a.missing == "weak product of (a, b)");
  try {
    build_excom(ctx);
    FAIL("expected NotWeaklyLex");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotWeaklyLex);
  }
}

TEST_CASE("excom of the terminal category is terminal") {
  auto ctx = ctx_for(catalog::terminal());
  auto e = build_excom(ctx);
  CHECK(e.completed->num_objects() == 1);
  CHECK(e.completed->num_morphisms() == 1);
  CHECK(full_and_faithful(e.embedding));
}

TEST_CASE("excom of a poset is isomorphic to it") {
  for (auto build : {+[] { return catalog::chain(3); }, +[] { return catalog::diamond(); },
                     +[] { return catalog::boolean_square(); }}) {
    auto base = share(build());
    LimitContext ctx(base, {});
    auto e = build_excom(ctx);
    CHECK(full_and_faithful(e.embedding));
    // oracle: every relation is free and every class a singleton
    for (const auto& rel : e.relations) CHECK(rel.is_free(*base));
    for (const auto& cls : e.arrow_classes) CHECK(cls.size() == 1);
    CHECK(find_isomorphism(e.completed, base).has_value());
    auto r = reduce_excom(e);
    CHECK(r.reduced);
    CHECK(r.completed->num_objects() <= e.completed->num_objects());
  }
}

TEST_CASE("isomorphic objects give non-free relations that reduce away") {
  auto base = share(catalog::chain_dup());
  LimitContext ctx(base, {});
  auto e = build_excom(ctx);
  CHECK(full_and_faithful(e.embedding));
  CHECK(std::any_of(e.relations.begin(), e.relations.end(), [&](const auto& r) { return !r.is_free(*base); }));
  auto r = reduce_excom(e);
  CHECK(find_isomorphism(r.completed, share(catalog::chain(3))).has_value());
}

TEST_CASE("excom output is exact with the embedding as projective cover") {
  for (auto build : {+[] { return catalog::terminal(); }, +[] { return catalog::chain(3); },
                     +[] { return catalog::boolean_square(); }}) {
    auto base = LimitContext(share(build()), {});
    auto e = build_excom(base);
    LimitContext ex(e.completed, {});
    auto rep = verify_exactness(ex);
    CHECK(rep.holds());
    CHECK(rep.clauses.size() == 4);
    auto pc = verify_projective_cover(ex, e.projective_objects());
    CHECK(pc.holds);
    CHECK(pc.covers.size() == e.completed->num_objects());
  }
}

TEST_CASE("projective cover: omitted object is reported") {
  auto ctx = ctx_for(catalog::chain(3));
  auto all = verify_projective_cover(ctx, {0, 1, 2});
  CHECK(all.holds);
  auto part = verify_projective_cover(ctx, {0, 2});
  CHECK_FALSE(part.holds);
  REQUIRE(part.uncovered);
  CHECK(*part.uncovered == 1);
}

TEST_CASE("non-effective equivalence relation fails the effectivity clause") {
  auto ctx = ctx_for(catalog::noneffective());
  auto rep = verify_exactness(ctx);
  CHECK_FALSE(rep.holds());
  const auto& eff = clause(rep, "effective_equivalence_relations");
  CHECK_FALSE(eff.holds);
  CHECK_FALSE(eff.counterexample.empty());
}

TEST_CASE("excom json round trip") {
  auto ctx = ctx_for(catalog::chain(3));
  auto e = build_excom(ctx);
  auto doc = excom_to_json(e);
  auto back = load_excom(doc);
  CHECK(back.completed->num_morphisms() == e.completed->num_morphisms());
  CHECK(back.projective == e.projective_objects());
  CHECK_FALSE(back.reduced);
}

TEST_CASE("transitivity does not depend on the chosen weak pullback") {
  auto ctx = ctx_for(catalog::projections());
  const auto& c = ctx.category();
  for (ObjId x = 0; x < static_cast<ObjId>(c.num_objects()); ++x) {
    auto v = is_pseudo_eq_relation(ctx, x, x, c.identity(x), c.identity(x));
    REQUIRE(v.holds);
    CHECK(transitivity_choice_independent(ctx, *v.relation));
  }
}
