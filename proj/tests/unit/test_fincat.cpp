#include <set>

#include "doctest.h"
#include "exwlex/builders.hpp"
#include "exwlex/catalog.hpp"
#include "exwlex/error.hpp"
#include "exwlex/io.hpp"

using namespace exwlex;

namespace {

ErrorKind kind_of(const RawCategory& raw) {
  try {
    validate_category(raw);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected validation to fail");
  return ErrorKind::InvalidInput;
}

RawCategory two_arrows() {
  RawCategory raw;
  raw.objects = {"a", "b"};
  raw.morphisms = {{"id_a", "a", "a"}, {"id_b", "b", "b"}, {"f", "a", "b"}};
  raw.identities = {{"a", "id_a"}, {"b", "id_b"}};
  raw.compose = {{"id_a", "id_a", "id_a"}, {"id_b", "id_b", "id_b"}, {"f", "id_a", "f"}, {"id_b", "f", "f"}};
  return raw;
}

}  // namespace

TEST_CASE("terminal and chain validate with the expected sizes") {
  auto t = catalog::terminal();
  CHECK(t.num_objects() == 1);
  CHECK(t.num_morphisms() == 1);
  auto c = catalog::chain(3);
  CHECK(c.num_objects() == 3);
  CHECK(c.num_morphisms() == 6);
  CHECK(check_associativity(c));
  CHECK(c.is_poset());
}

TEST_CASE("validation errors name the broken law") {
  auto raw = two_arrows();
  CHECK_NOTHROW(validate_category(raw));

  auto missing = raw;
  missing.compose.pop_back();
  CHECK(kind_of(missing) == ErrorKind::MissingComposite);

  auto dup = raw;
  dup.morphisms.push_back({"f", "a", "b"});
  CHECK(kind_of(dup) == ErrorKind::DuplicateId);

  auto bad_id = raw;
  bad_id.compose[2] = {"f", "id_a", "id_a"};
  ErrorKind k = kind_of(bad_id);
  CHECK((k == ErrorKind::BadComposite || k == ErrorKind::IdentityLawViolation));

  auto unknown = raw;
  unknown.compose.push_back({"g", "f", "f"});
  k = kind_of(unknown);
  CHECK((k == ErrorKind::UnknownMorphism || k == ErrorKind::BadComposite));
}

TEST_CASE("non-associative table is rejected") {
  // One object, three morphisms {e, x, y}; x∘x = y but the table makes
  // (x∘x)∘x != x∘(x∘x).
  RawCategory raw;
  raw.objects = {"o"};
  raw.morphisms = {{"e", "o", "o"}, {"x", "o", "o"}, {"y", "o", "o"}};
  raw.identities = {{"o", "e"}};
  const char* t[3][3] = {{"e", "x", "y"}, {"x", "y", "x"}, {"y", "y", "y"}};
  const char* names[3] = {"e", "x", "y"};
  for (int g = 0; g < 3; ++g)
    for (int f = 0; f < 3; ++f) raw.compose.push_back({names[g], names[f], t[g][f]});
  CHECK(kind_of(raw) == ErrorKind::NonAssociative);
}

TEST_CASE("json round trip keeps ids and order") {
  auto c = catalog::m3();
  auto doc = category_to_json(c);
  auto back = validate_category(parse_raw_category(doc));
  CHECK(category_to_json(back) == doc);
  doc["format_version"] = 99;
  CHECK_THROWS_AS(parse_raw_category(doc), Error);
}

TEST_CASE("slice of chain over 1 is the two-element chain") {
  auto c = share(catalog::chain(3));
  auto s = slice_category(c, c->object("1"));
  // oracle: objects = arrows into 1; morphisms = commuting triangles
  int objs = 0, tris = 0;
  for (MorId a = 0; a < static_cast<MorId>(c->num_morphisms()); ++a) {
    if (c->cod(a) != c->object("1")) continue;
    ++objs;
    for (MorId b = 0; b < static_cast<MorId>(c->num_morphisms()); ++b) {
      if (c->cod(b) != c->object("1")) continue;
      for (MorId m : c->hom(c->dom(a), c->dom(b)))
        if (c->compose(b, m) == a) ++tris;
    }
  }
  CHECK(s.category->num_objects() == static_cast<std::size_t>(objs));
  CHECK(s.category->num_morphisms() == static_cast<std::size_t>(tris));
  CHECK(objs == 2);
  CHECK(tris == 3);
  CHECK_NOTHROW(validate_functor(s.forget));
  auto two = share(catalog::chain(2));
  CHECK(find_isomorphism(s.category, two).has_value());

  auto t = share(catalog::terminal());
  auto st = slice_category(t, 0);
  CHECK(find_isomorphism(st.category, t).has_value());
  auto s0 = slice_category(c, c->object("0"));
  CHECK(s0.category->num_objects() == 1);
  CHECK_THROWS_AS(slice_category(c, 17), Error);
}

TEST_CASE("slice forgetful functor is injective fibrewise") {
  auto c = share(catalog::projections());
  for (ObjId x = 0; x < static_cast<ObjId>(c->num_objects()); ++x) {
    auto s = slice_category(c, x);
    const auto& sc = *s.category;
    for (ObjId a = 0; a < static_cast<ObjId>(sc.num_objects()); ++a)
      for (ObjId b = 0; b < static_cast<ObjId>(sc.num_objects()); ++b) {
        std::set<MorId> under;
        for (MorId m : sc.hom(a, b)) CHECK(under.insert(s.forget.map_morphism(m)).second);
      }
  }
}

TEST_CASE("quotients: discrete and total collapse") {
  auto c = share(catalog::projections());
  auto q = quotient_by_congruence(Congruence::discrete(c));
  CHECK(find_isomorphism(q.category, c).has_value());
  CHECK_NOTHROW(validate_functor(q.projection));

  // one-object monoid {e, x} with x∘x = x, collapsed per hom-set
  RawCategory raw;
  raw.objects = {"o"};
  raw.morphisms = {{"e", "o", "o"}, {"x", "o", "o"}};
  raw.identities = {{"o", "e"}};
  raw.compose = {{"e", "e", "e"}, {"e", "x", "x"}, {"x", "e", "x"}, {"x", "x", "x"}};
  auto mono = share(validate_category(raw));
  auto total = Congruence::from_classes(mono, {0, 0});
  auto qq = quotient_by_congruence(total);
  CHECK(qq.category->num_morphisms() == 1);
  CHECK(qq.projection.map_morphism(1) == qq.projection.map_morphism(0));

  // not compatible with composition: identify a0 and a1 only
  auto a0 = c->morphism("a0"), a1 = c->morphism("a1");
  std::vector<std::pair<MorId, MorId>> pairs{{a0, a1}};
  CHECK_THROWS_AS(Congruence::from_pairs(c, pairs), Error);
}

TEST_CASE("classify_morphism matches exhaustive definitions") {
  auto c = catalog::chain(2);
  auto up = c.morphism("0->1");
  auto fl = classify_morphism(c, up);
  CHECK(fl.mono);
  CHECK(fl.epi);
  CHECK_FALSE(fl.split_epi);
  CHECK_FALSE(fl.split_mono);
  CHECK_FALSE(fl.iso);
  auto id = classify_morphism(c, c.identity(0));
  CHECK((id.mono && id.epi && id.split_mono && id.split_epi && id.iso));

  auto d = catalog::chain_dup();
  auto iso = classify_morphism(d, d.morphism("1->1b"));
  CHECK((iso.iso && iso.split_mono && iso.split_epi));

  // oracle for mono on a concrete category: injective tables
  auto p = catalog::projections();
  CHECK(classify_morphism(p, p.morphism("a0")).split_mono);
  CHECK_FALSE(classify_morphism(p, p.morphism("!V")).mono);
  CHECK(classify_morphism(p, p.morphism("!V")).split_epi);
}

TEST_CASE("skeleton collapses isomorphic objects") {
  auto d = share(catalog::chain_dup());
  auto sk = skeleton(d);
  CHECK(sk.sub.category->num_objects() == 3);
  CHECK(find_isomorphism(sk.sub.category, share(catalog::chain(3))).has_value());
  CHECK_FALSE(find_isomorphism(share(catalog::m3()), share(catalog::n5())).has_value());
}

TEST_CASE("make_finset has every function") {
  auto c = make_finset({{"T", 1}, {"A", 2}});
  // T->T, T->A, A->T, A->A: 1 + 2 + 1 + 4
  CHECK(c.num_morphisms() == 8);
  auto iv = catalog::interval();
  // sum over pairs of |C|^|D| for sizes 1, 2, 4
  int total = 0;
  int sizes[3] = {1, 2, 4};
  for (int d : sizes)
    for (int k : sizes) {
      int n = 1;
      for (int i = 0; i < d; ++i) n *= k;
      total += n;
    }
  CHECK(iv.num_morphisms() == static_cast<std::size_t>(total));
  CHECK(total == 301);
}
