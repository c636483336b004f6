#include <functional>
#include <string>

#include "doctest.h"
#include "exwlex/catalog.hpp"
#include "exwlex/error.hpp"
#include "exwlex/homotopy.hpp"

using namespace exwlex;

namespace {

using Build = FinCategory (*)();

const std::vector<Build> kLattices = {
    +[] { return catalog::terminal(); }, +[] { return catalog::chain(3); }, +[] { return catalog::chain(4); },
    +[] { return catalog::diamond(); },  +[] { return catalog::boolean_square(); }, +[] { return catalog::chain_dup(); },
    +[] { return catalog::m3(); },       +[] { return catalog::n5(); },
};

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("trivial path structures are valid and homotopically discrete") {
  for (auto build : kLattices) {
    LimitContext ctx(share(build()), {});
    const auto& c = ctx.category();
    auto ps = trivial_path_structure(ctx);
    CHECK_NOTHROW(validate_path_structure(ctx, ps));
    for (MorId f = 0; f < static_cast<MorId>(c.num_morphisms()); ++f)
      for (MorId g : c.hom(c.dom(f), c.cod(f))) CHECK((are_homotopic(ps, f, g) != kNoMorphism) == (f == g));
    auto k = homotopy_congruence(ps);
    CHECK(k.num_classes() == c.num_morphisms());
    auto ho = homotopy_category(ps);
    CHECK(find_isomorphism(ho.category, ctx.category_ptr()).has_value());
  }
}

TEST_CASE("path structure round trip through the marked section") {
  LimitContext ctx(share(catalog::chain(3)), {});
  auto ps = trivial_path_structure(ctx);
  json doc = category_to_json(ctx.category());
  doc["marked"] = path_structure_to_json(ps);
  auto back = load_path_structure(ctx, doc, false);
  CHECK(back.fibration == ps.fibration);
  CHECK(back.weq == ps.weq);
  CHECK(back.fibrewise.size() == ps.fibrewise.size());
  CHECK(path_structure_to_json(back) == doc["marked"]);
}

TEST_CASE("each violated axiom is named") {
  LimitContext ctx(share(catalog::chain(3)), {});
  const auto& c = ctx.category();

  auto all_weq = trivial_path_structure(ctx);
  all_weq.weq.assign(c.num_morphisms(), 1);
  try {
    validate_path_structure(ctx, all_weq);
    FAIL("expected MissingSection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingSection);
    REQUIRE(e.witnesses().size() == 1);
    const MorId w = c.morphism(e.witnesses().front());
    CHECK(c.dom(w) != c.cod(w));
  }

  auto missing = trivial_path_structure(ctx);
  missing.path_objects[1].reset();
  CHECK(kind_of([&] { validate_path_structure(ctx, missing); }) == ErrorKind::MissingPathObject);

  auto bad = trivial_path_structure(ctx);
  bad.path_objects[2]->r = c.morphism("1->2");
  CHECK(kind_of([&] { validate_path_structure(ctx, bad); }) == ErrorKind::BadPathObject);

  auto isos_only = trivial_path_structure(ctx);
  isos_only.fibration = isos_only.weq;
  CHECK(kind_of([&] { validate_path_structure(ctx, isos_only); }) == ErrorKind::TerminalArrowNotFibration);

  auto open = trivial_path_structure(ctx);
  open.fibration[c.morphism("0->2")] = 0;
  CHECK(kind_of([&] { validate_path_structure(ctx, open); }) == ErrorKind::ClassNotClosed);

  LimitContext k4(share(catalog::chain(4)), {});
  const auto& d = k4.category();
  auto six = trivial_path_structure(k4);
  six.weq[d.morphism("0->2")] = 1;
  six.weq[d.morphism("1->3")] = 1;
  CHECK(kind_of([&] { validate_path_structure(k4, six); }) == ErrorKind::TwoOutOfSixViolation);

  LimitContext pp(share(catalog::parallel_pair()), {});
  PathStructure none;
  none.base = pp.category_ptr();
  none.fibration.assign(4, 1);
  none.weq.assign(4, 0);
  none.path_objects.resize(2);
  CHECK(kind_of([&] { validate_path_structure(pp, none); }) == ErrorKind::NoTerminalObject);
}

TEST_CASE("homotopies in the interval") {
  LimitContext ctx(share(catalog::interval()), {});
  const auto& c = ctx.category();
  auto ps = interval_structure(ctx);
  const MorId a0 = c.morphism("T->A:0"), a1 = c.morphism("T->A:1");
  CHECK(are_homotopic(ps, a0, a1) != kNoMorphism);
  CHECK(are_homotopic(ps, a0, a0) == c.compose(ps.path_objects[c.object("A")]->r, a0));
  const MorId bang = c.morphism("A->T:00");
  CHECK(are_fibrewise_homotopic(ps, bang, c.morphism("A->A:00"), c.identity(c.object("A"))) != kNoMorphism);
  CHECK(kind_of([&] { are_fibrewise_homotopic(ps, c.identity(c.object("A")), a0, a0); }) == ErrorKind::MissingFibrewisePathObject);
  CHECK(kind_of([&] { are_homotopic(ps, c.morphism("T->AA:0"), c.morphism("T->AA:1")); }) == ErrorKind::MissingPathObject);
}

TEST_CASE("homotopy relations that are not congruences") {
  LimitContext ctx(share(catalog::interval()), {});
  const auto& c = ctx.category();
  auto ps = interval_structure(ctx);
  // A is contractible but AA is compared by equality; the diagonal separates a0 and a1
  try {
    homotopy_congruence(ps);
    FAIL("expected NotACongruence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotACongruence);
    CHECK(std::string(e.what()).find("left composition") != std::string::npos);
  }
  // p lands in {00, 01, 11}: a0 ~ a1 but not a1 ~ a0
  ps.path_objects[c.object("A")]->p = c.morphism("AA->AA:0113");
  const MorId a0 = c.morphism("T->A:0"), a1 = c.morphism("T->A:1");
  CHECK(are_homotopic(ps, a0, a1) != kNoMorphism);
  CHECK(are_homotopic(ps, a1, a0) == kNoMorphism);
  try {
    homotopy_congruence(ps);
    FAIL("expected NotACongruence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotACongruence);
    CHECK(std::string(e.what()).find("symmetry") != std::string::npos);
  }
  ps.local_mode = false;
  CHECK(kind_of([&] { homotopy_congruence(ps); }) == ErrorKind::MissingPathObject);
}

TEST_CASE("strictification") {
  LimitContext chain(share(catalog::chain(3)), {});
  const auto& c = chain.category();
  auto ps = trivial_path_structure(chain);
  CHECK(strictify(ps, c.morphism("1->2"), c.morphism("0->2"), c.morphism("0->1")) == c.morphism("0->1"));

  LimitContext ctx(share(catalog::interval()), {});
  const auto& i = ctx.category();
  auto is = interval_structure(ctx);
  const MorId id_a = i.identity(i.object("A")), k0 = i.morphism("A->A:00"), k1 = i.morphism("A->A:11");
  const MorId k = strictify(is, id_a, k0, k1);
  CHECK(k == k0);
  CHECK(k != k1);
  CHECK(are_homotopic(is, k, k1) != kNoMorphism);
  // already strict
  const MorId bang = i.morphism("A->T:00");
  CHECK(strictify(is, bang, bang, k1) == k1);
}

TEST_CASE("homotopy diagonal fillers") {
  LimitContext chain(share(catalog::chain(3)), {});
  const auto& c = chain.category();
  auto ps = trivial_path_structure(chain);
  // f iso: d = k f^-1
  const MorId id1 = c.identity(1);
  auto r = homotopy_diagonal_filler(chain, ps, id1, c.morphism("1->2"), c.identity(2), c.morphism("1->2"));
  CHECK(r.d == c.morphism("1->2"));
  CHECK(r.fillers.size() == 1);
  CHECK(r.unique_up_to_homotopy);

  LimitContext ctx(share(catalog::interval()), {});
  const auto& i = ctx.category();
  auto is = interval_structure(ctx);
  const MorId bang = i.morphism("A->T:00");
  auto f = homotopy_diagonal_filler(ctx, is, bang, i.identity(i.object("A")), bang, i.identity(i.object("T")));
  CHECK(f.constructed);
  CHECK(f.fillers == std::vector<MorId>{i.morphism("T->A:0"), i.morphism("T->A:1")});
  CHECK(f.unique_up_to_homotopy);
  CHECK(i.compose(bang, f.d) == i.identity(i.object("T")));

  CHECK(kind_of([&] { homotopy_diagonal_filler(chain, ps, c.morphism("0->1"), c.morphism("0->2"), c.identity(2), c.morphism("1->2")); }) ==
        ErrorKind::InvalidInput);
}

TEST_CASE("homotopy pullbacks in a trivial structure are weak pullbacks") {
  for (auto build : {+[] { return catalog::chain(3); }, +[] { return catalog::diamond(); }}) {
    LimitContext ctx(share(build()), {});
    const auto& c = ctx.category();
    auto ps = trivial_path_structure(ctx);
    for (ObjId t = 0; t < static_cast<ObjId>(c.num_objects()); ++t)
      for (MorId f : c.incoming(t))
        for (MorId g : c.incoming(t)) {
          Diagram d = Diagram::pullback(c, f, g);
          for (const auto& cone : ctx.enumerate_cones(d))
            CHECK(is_homotopy_pullback(ps, f, g, cone).holds == ctx.is_weak_limit(d, cone, false).holds);
        }
  }
  LimitContext ctx(share(catalog::chain(3)), {});
  const auto& c = ctx.category();
  auto ps = trivial_path_structure(ctx);
  const MorId f = c.morphism("1->2");
  auto v = is_homotopy_pullback(ps, f, f, Cone{0, {c.morphism("0->1"), c.morphism("0->1"), c.morphism("0->2")}});
  CHECK_FALSE(v.holds);
  REQUIRE(v.counterexample);
  CHECK(v.counterexample->apex == 1);
  const MorId id1 = c.identity(1);
  CHECK(is_homotopy_pullback(ps, id1, id1, Cone{1, {id1, id1, id1}}).holds);
}

TEST_CASE("homotopy weak dependent products in a trivial structure") {
  LimitContext ctx(share(catalog::chain(3)), {});
  const auto& c = ctx.category();
  auto ps = trivial_path_structure(ctx);
  // g = id: u = id_I with the projection
  const MorId id1 = c.identity(1), f = c.morphism("1->2");
  auto pb = ctx.first_limit(Diagram::pullback(c, c.identity(2), f));
  REQUIRE(pb);
  CHECK(is_hwdp(ctx, ps, HwdpDatum{id1, f, c.identity(2), *pb, pb->legs[1]}).holds);

  for (MorId x = 0; x < static_cast<MorId>(c.num_morphisms()); ++x)
    for (MorId y : c.incoming(c.dom(x))) {
      for (MorId u : c.incoming(c.cod(x))) {
        auto sq = ctx.first_limit(Diagram::pullback(c, u, x));
        REQUIRE(sq);
        for (MorId e : c.hom(sq->apex, c.dom(y))) {
          if (c.compose(y, e) != sq->legs[1]) continue;
          HwdpDatum d{y, x, u, *sq, e};
          CHECK(is_hwdp(ctx, ps, d).holds == is_weak_dependent_product(ctx, d.as_dependent()).holds);
        }
      }
      for (const auto& w : find_weak_dependent_products(ctx, y, x)) {
        auto h = hwdp_from_wdp(ctx, ps, w);
        CHECK(is_hwdp(ctx, ps, h).holds);
      }
    }
}

TEST_CASE("homotopy slack in the interval") {
  LimitContext ctx(share(catalog::interval()), {});
  const auto& c = ctx.category();
  auto ps = interval_structure(ctx);
  const MorId g = c.morphism("A->T:00"), id_t = c.identity(c.object("T"));
  auto pb = ctx.first_limit(Diagram::pullback(c, id_t, id_t));
  REQUIRE(pb);
  HwdpDatum d{g, id_t, id_t, *pb, c.morphism("T->A:0")};
  auto v = is_hwdp(ctx, ps, d);
  CHECK(v.holds);
  CHECK_FALSE(is_weak_dependent_product(ctx, d.as_dependent()).holds);
}

TEST_CASE("homotopy full diagrams and their image in Ho") {
  LimitContext ctx(share(catalog::chain(3)), {});
  const auto& c = ctx.category();
  auto ps = trivial_path_structure(ctx);
  auto ho = homotopy_category(ps);
  for (MorId x = 0; x < static_cast<MorId>(c.num_morphisms()); ++x)
    for (MorId y : c.incoming(c.dom(x))) {
      for (const auto& d : find_hwdp(ctx, ps, y, x)) {
        CHECK(is_homotopy_full_diagram(ps, d.as_dependent()).holds);
        CHECK(ho_image_full_check(ps, ho, d.as_dependent()).holds);
      }
      for (const auto& d : admissible_dependent_data(ctx, y, x, false))
        CHECK(is_homotopy_full_diagram(ps, d).holds == is_dependent_full_diagram(ctx, d).holds);
    }
}

TEST_CASE("the lccexh pipeline") {
  LimitContext ctx(share(catalog::chain(3)), {});
  auto ps = trivial_path_structure(ctx);
  auto rep = pipeline_lccexh(ctx, ps);
  CHECK(rep.holds);
  REQUIRE(rep.stages.size() == 7);
  CHECK(rep.stages.back().name == "verify_lcc");
  for (const auto& s : rep.stages) CHECK_MESSAGE(s.holds, s.name);

  LimitContext m3(share(catalog::m3()), {});
  auto bad = pipeline_lccexh(m3, trivial_path_structure(m3));
  CHECK_FALSE(bad.holds);
  CHECK(bad.stages.back().name == "wdp_audit");
}

TEST_CASE("fibrant replacement of a weak dependent product in the interval") {
  LimitContext ctx(share(catalog::interval()), {});
  const auto& c = ctx.category();
  auto ps = interval_structure(ctx);
  const MorId g = c.morphism("A->T:00"), id_t = c.identity(c.object("T"));
  // U = A: the sections of g over T, evaluated by the projection
  const MorId u = g;
  auto sq = ctx.first_limit(Diagram::pullback(c, u, id_t));
  REQUIRE(sq);
  DependentDatum wdp{g, id_t, u, *sq, sq->legs[0]};
  REQUIRE(is_weak_dependent_product(ctx, wdp).holds);
  auto h = hwdp_from_wdp(ctx, ps, wdp);
  CHECK(ps.is_fibration(h.u));
  CHECK(is_hwdp(ctx, ps, h).holds);
}

TEST_CASE("finite categories with every self-product are thin") {
  // |hom(Y, X^(2^k))| = |hom(Y, X)|^(2^k) is bounded by the morphism count
  for (const auto& e : catalog::all()) {
    LimitContext ctx(share(e.build()), {});
    const auto& c = ctx.category();
    bool squares = true;
    for (ObjId x = 0; x < static_cast<ObjId>(c.num_objects()) && squares; ++x)
      squares = ctx.first_limit(Diagram::product({x, x})).has_value();
    if (!squares) continue;
    INFO(e.name);
    for (ObjId a = 0; a < static_cast<ObjId>(c.num_objects()); ++a)
      for (ObjId b = 0; b < static_cast<ObjId>(c.num_objects()); ++b) CHECK(c.hom(a, b).size() <= 1);
  }
}
