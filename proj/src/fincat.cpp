#include "exwlex/fincat.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "exwlex/disjoint_set.hpp"
#include "exwlex/error.hpp"

namespace exwlex {

std::optional<ObjId> FinCategory::find_object(std::string_view name) const {
  auto it = object_index_.find(std::string(name));
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<MorId> FinCategory::find_morphism(std::string_view name) const {
  auto it = morphism_index_.find(std::string(name));
  if (it == morphism_index_.end()) return std::nullopt;
  return it->second;
}

ObjId FinCategory::object(std::string_view name) const {
  auto x = find_object(name);
  if (!x) fail(ErrorKind::UnknownObject, "unknown object '" + std::string(name) + "'", {std::string(name)});
  return *x;
}

MorId FinCategory::morphism(std::string_view name) const {
  auto f = find_morphism(name);
  if (!f) fail(ErrorKind::UnknownMorphism, "unknown morphism '" + std::string(name) + "'", {std::string(name)});
  return *f;
}

bool FinCategory::is_thin() const {
  for (const auto& h : homs_)
    if (h.size() > 1) return false;
  return true;
}

bool FinCategory::is_poset() const {
  if (!is_thin()) return false;
  for (ObjId a = 0; a < static_cast<ObjId>(num_objects()); ++a)
    for (ObjId b = a + 1; b < static_cast<ObjId>(num_objects()); ++b)
      if (!hom(a, b).empty() && !hom(b, a).empty()) return false;
  return true;
}

RawCategory FinCategory::to_raw() const {
  RawCategory raw;
  raw.objects = object_names_;
  for (MorId f = 0; f < static_cast<MorId>(num_morphisms()); ++f)
    raw.morphisms.push_back({morphism_names_[f], object_names_[dom_[f]], object_names_[cod_[f]]});
  for (ObjId x = 0; x < static_cast<ObjId>(num_objects()); ++x)
    raw.identities.emplace_back(object_names_[x], morphism_names_[identity_[x]]);
  for (MorId f = 0; f < static_cast<MorId>(num_morphisms()); ++f)
    for (MorId g : outgoing_[cod_[f]])
      raw.compose.push_back({morphism_names_[g], morphism_names_[f], morphism_names_[compose(g, f)]});
  return raw;
}

FinCategory validate_category(const RawCategory& raw) {
  FinCategory c;
  const std::size_t n = raw.objects.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& name = raw.objects[i];
    if (!c.object_index_.emplace(name, static_cast<ObjId>(i)).second)
      fail(ErrorKind::DuplicateId, "duplicate object id '" + name + "'", {name});
    c.object_names_.push_back(name);
  }
  for (std::size_t i = 0; i < raw.morphisms.size(); ++i) {
    const auto& m = raw.morphisms[i];
    if (!c.morphism_index_.emplace(m.id, static_cast<MorId>(i)).second)
      fail(ErrorKind::DuplicateId, "duplicate morphism id '" + m.id + "'", {m.id});
    if (c.object_index_.count(m.id) != 0)
      fail(ErrorKind::DuplicateId, "id '" + m.id + "' names both an object and a morphism", {m.id});
    c.morphism_names_.push_back(m.id);
    c.dom_.push_back(c.object(m.dom));
    c.cod_.push_back(c.object(m.cod));
  }
  const std::size_t m = c.morphism_names_.size();

  c.identity_.assign(n, kNoMorphism);
  for (const auto& [obj, mor] : raw.identities) {
    ObjId x = c.object(obj);
    MorId f = c.morphism(mor);
    if (c.identity_[x] != kNoMorphism)
      fail(ErrorKind::DuplicateId, "object '" + obj + "' has two identities", {obj, mor});
    if (c.dom_[f] != x || c.cod_[f] != x)
      fail(ErrorKind::IdentityLawViolation, "identity '" + mor + "' is not an endomorphism of '" + obj + "'", {obj, mor});
    c.identity_[x] = f;
  }
  for (ObjId x = 0; x < static_cast<ObjId>(n); ++x)
    if (c.identity_[x] == kNoMorphism)
      fail(ErrorKind::IdentityLawViolation, "object '" + c.object_names_[x] + "' has no identity", {c.object_names_[x]});

  c.table_.assign(m * m, kNoMorphism);
  for (const auto& [gs, fs, gfs] : raw.compose) {
    MorId g = c.morphism(gs), f = c.morphism(fs), gf = c.morphism(gfs);
    if (c.cod_[f] != c.dom_[g])
      fail(ErrorKind::BadComposite, "'" + gs + "' and '" + fs + "' are not composable", {gs, fs});
    if (c.dom_[gf] != c.dom_[f] || c.cod_[gf] != c.cod_[g])
      fail(ErrorKind::BadComposite, "composite '" + gfs + "' of '" + gs + "' and '" + fs + "' has wrong dom/cod",
           {gs, fs, gfs});
    auto& slot = c.table_[static_cast<std::size_t>(g) * m + f];
    if (slot != kNoMorphism) fail(ErrorKind::DuplicateId, "composite of '" + gs + "' and '" + fs + "' listed twice", {gs, fs});
    slot = gf;
  }

  c.homs_.assign(n * n, {});
  c.outgoing_.assign(n, {});
  c.incoming_.assign(n, {});
  for (MorId f = 0; f < static_cast<MorId>(m); ++f) {
    c.homs_[static_cast<std::size_t>(c.dom_[f]) * n + c.cod_[f]].push_back(f);
    c.outgoing_[c.dom_[f]].push_back(f);
    c.incoming_[c.cod_[f]].push_back(f);
  }

  for (MorId f = 0; f < static_cast<MorId>(m); ++f)
    for (MorId g : c.outgoing_[c.cod_[f]])
      if (c.compose(g, f) == kNoMorphism)
        fail(ErrorKind::MissingComposite, "no composite for ('" + c.morphism_names_[g] + "', '" + c.morphism_names_[f] + "')",
             {c.morphism_names_[g], c.morphism_names_[f]});

  for (MorId f = 0; f < static_cast<MorId>(m); ++f) {
    if (c.compose(f, c.identity_[c.dom_[f]]) != f || c.compose(c.identity_[c.cod_[f]], f) != f)
      fail(ErrorKind::IdentityLawViolation, "identity law fails for '" + c.morphism_names_[f] + "'", {c.morphism_names_[f]});
  }

  for (MorId f = 0; f < static_cast<MorId>(m); ++f)
    for (MorId g : c.outgoing_[c.cod_[f]]) {
      MorId gf = c.compose(g, f);
      for (MorId h : c.outgoing_[c.cod_[g]])
        if (c.compose(c.compose(h, g), f) != c.compose(h, gf))
          fail(ErrorKind::NonAssociative, "associativity fails", {c.morphism_names_[h], c.morphism_names_[g], c.morphism_names_[f]});
    }
  return c;
}

bool check_associativity(const FinCategory& c) {
  for (MorId f = 0; f < static_cast<MorId>(c.num_morphisms()); ++f)
    for (MorId g : c.outgoing(c.cod(f)))
      for (MorId h : c.outgoing(c.cod(g)))
        if (c.compose(c.compose(h, g), f) != c.compose(h, c.compose(g, f))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Functors

void validate_functor(const Functor& fn) {
  const auto& s = *fn.source;
  const auto& t = *fn.target;
  if (fn.on_objects.size() != s.num_objects() || fn.on_morphisms.size() != s.num_morphisms())
    fail(ErrorKind::NotAFunctor, "object or morphism map has the wrong size");
  for (ObjId x : fn.on_objects)
    if (x < 0 || x >= static_cast<ObjId>(t.num_objects())) fail(ErrorKind::NotAFunctor, "object map leaves the target");
  for (MorId f = 0; f < static_cast<MorId>(s.num_morphisms()); ++f) {
    MorId g = fn.on_morphisms[f];
    if (g < 0 || g >= static_cast<MorId>(t.num_morphisms())) fail(ErrorKind::NotAFunctor, "morphism map leaves the target");
    if (t.dom(g) != fn.on_objects[s.dom(f)] || t.cod(g) != fn.on_objects[s.cod(f)])
      fail(ErrorKind::NotAFunctor, "dom/cod not preserved", {s.morphism_name(f)});
  }
  for (ObjId x = 0; x < static_cast<ObjId>(s.num_objects()); ++x)
    if (fn.on_morphisms[s.identity(x)] != t.identity(fn.on_objects[x]))
      fail(ErrorKind::NotAFunctor, "identity not preserved", {s.object_name(x)});
  for (MorId f = 0; f < static_cast<MorId>(s.num_morphisms()); ++f)
    for (MorId g : s.outgoing(s.cod(f)))
      if (fn.on_morphisms[s.compose(g, f)] != t.compose(fn.on_morphisms[g], fn.on_morphisms[f]))
        fail(ErrorKind::NotAFunctor, "composition not preserved", {s.morphism_name(g), s.morphism_name(f)});
}

Functor identity_functor(const CategoryPtr& c) {
  Functor f{c, c, {}, {}};
  for (ObjId x = 0; x < static_cast<ObjId>(c->num_objects()); ++x) f.on_objects.push_back(x);
  for (MorId m = 0; m < static_cast<MorId>(c->num_morphisms()); ++m) f.on_morphisms.push_back(m);
  return f;
}

Functor compose_functors(const Functor& g, const Functor& f) {
  Functor out{f.source, g.target, {}, {}};
  for (ObjId x : f.on_objects) out.on_objects.push_back(g.on_objects[x]);
  for (MorId m : f.on_morphisms) out.on_morphisms.push_back(g.on_morphisms[m]);
  return out;
}

bool is_full(const Functor& fn) {
  const auto& s = *fn.source;
  const auto& t = *fn.target;
  for (ObjId a = 0; a < static_cast<ObjId>(s.num_objects()); ++a)
    for (ObjId b = 0; b < static_cast<ObjId>(s.num_objects()); ++b) {
      std::set<MorId> image;
      for (MorId f : s.hom(a, b)) image.insert(fn.on_morphisms[f]);
      if (image.size() != t.hom(fn.on_objects[a], fn.on_objects[b]).size()) return false;
    }
  return true;
}

bool is_faithful(const Functor& fn) {
  const auto& s = *fn.source;
  for (ObjId a = 0; a < static_cast<ObjId>(s.num_objects()); ++a)
    for (ObjId b = 0; b < static_cast<ObjId>(s.num_objects()); ++b) {
      std::set<MorId> image;
      for (MorId f : s.hom(a, b)) image.insert(fn.on_morphisms[f]);
      if (image.size() != s.hom(a, b).size()) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Congruences

Congruence Congruence::from_classes(CategoryPtr base, std::vector<int> class_of) {
  const auto& c = *base;
  if (class_of.size() != c.num_morphisms()) fail(ErrorKind::NotACongruence, "class table has the wrong size");
  // Renumber by first occurrence so class order follows declaration order.
  std::map<int, int> renumber;
  for (int& k : class_of) {
    auto [it, inserted] = renumber.emplace(k, static_cast<int>(renumber.size()));
    k = it->second;
  }
  Congruence k;
  k.base_ = std::move(base);
  k.class_of_ = std::move(class_of);
  k.members_.assign(renumber.size(), {});
  for (MorId f = 0; f < static_cast<MorId>(c.num_morphisms()); ++f) k.members_[k.class_of_[f]].push_back(f);
  for (const auto& cls : k.members_)
    for (MorId f : cls)
      if (c.dom(f) != c.dom(cls.front()) || c.cod(f) != c.cod(cls.front()))
        fail(ErrorKind::NotACongruence, "related morphisms are not parallel", {c.morphism_name(cls.front()), c.morphism_name(f)});
  // f ~ f' implies g f ~ g f' and f h ~ f' h; checking against the class
  // representative suffices since the relation is an equivalence.
  for (const auto& cls : k.members_) {
    MorId r = cls.front();
    for (MorId f : cls) {
      if (f == r) continue;
      for (MorId g : c.outgoing(c.cod(r)))
        if (!k.related(c.compose(g, r), c.compose(g, f)))
          fail(ErrorKind::NotACongruence, "not compatible with postcomposition",
               {c.morphism_name(g), c.morphism_name(r), c.morphism_name(f)});
      for (MorId h : c.incoming(c.dom(r)))
        if (!k.related(c.compose(r, h), c.compose(f, h)))
          fail(ErrorKind::NotACongruence, "not compatible with precomposition",
               {c.morphism_name(r), c.morphism_name(f), c.morphism_name(h)});
    }
  }
  return k;
}

Congruence Congruence::from_pairs(CategoryPtr base, std::span<const std::pair<MorId, MorId>> related) {
  DisjointSet ds(static_cast<int>(base->num_morphisms()));
  for (auto [f, g] : related) ds.unite(f, g);
  return from_classes(std::move(base), ds.finalize());
}

Congruence Congruence::discrete(CategoryPtr base) {
  std::vector<int> cls(base->num_morphisms());
  for (std::size_t i = 0; i < cls.size(); ++i) cls[i] = static_cast<int>(i);
  return from_classes(std::move(base), std::move(cls));
}

// ---------------------------------------------------------------------------
// Constructions

SliceCategory slice_category(const CategoryPtr& cp, ObjId x) {
  const auto& c = *cp;
  if (x < 0 || x >= static_cast<ObjId>(c.num_objects())) fail(ErrorKind::UnknownObject, "slice over unknown object");
  SliceCategory out;
  out.base_object = x;
  out.object_of_arrow.assign(c.num_morphisms(), -1);
  RawCategory raw;
  for (MorId a : c.incoming(x)) {
    out.object_of_arrow[a] = static_cast<ObjId>(raw.objects.size());
    out.arrow_of_object.push_back(a);
    raw.objects.push_back(c.morphism_name(a));
  }
  // Slice morphism (m, b) is the triangle m: dom a -> dom b with b m = a;
  // a is determined by (m, b).
  std::map<std::pair<MorId, MorId>, std::string> name_of;
  std::vector<std::pair<MorId, MorId>> triangles;
  Functor forget;
  for (MorId a : out.arrow_of_object)
    for (MorId b : out.arrow_of_object)
      for (MorId m : c.hom(c.dom(a), c.dom(b)))
        if (c.compose(b, m) == a) {
          std::string name = c.morphism_name(m) + ":" + c.morphism_name(a) + "=>" + c.morphism_name(b);
          raw.morphisms.push_back({name, c.morphism_name(a), c.morphism_name(b)});
          name_of[{m, b}] = name;
          triangles.emplace_back(m, b);
          forget.on_morphisms.push_back(m);
        }
  for (MorId a : out.arrow_of_object) raw.identities.emplace_back(c.morphism_name(a), name_of.at({c.identity(c.dom(a)), a}));
  // (m2, b2) after (m1, b1) when b1 is the source of the second triangle
  for (auto [m1, b1] : triangles)
    for (auto [m2, b2] : triangles)
      if (c.cod(m1) == c.dom(m2) && c.compose(b2, m2) == b1)
        raw.compose.push_back({name_of.at({m2, b2}), name_of.at({m1, b1}), name_of.at({c.compose(m2, m1), b2})});
  out.category = share(validate_category(raw));
  forget.source = out.category;
  forget.target = cp;
  for (MorId a : out.arrow_of_object) forget.on_objects.push_back(c.dom(a));
  out.forget = std::move(forget);
  return out;
}

QuotientCategory quotient_by_congruence(const Congruence& k) {
  const auto& c = *k.base();
  RawCategory raw;
  raw.objects = c.to_raw().objects;
  auto name = [&](int cls) { return "[" + c.morphism_name(k.representative(cls)) + "]"; };
  for (int cls = 0; cls < static_cast<int>(k.num_classes()); ++cls) {
    MorId r = k.representative(cls);
    raw.morphisms.push_back({name(cls), c.object_name(c.dom(r)), c.object_name(c.cod(r))});
  }
  for (ObjId x = 0; x < static_cast<ObjId>(c.num_objects()); ++x)
    raw.identities.emplace_back(c.object_name(x), name(k.class_of(c.identity(x))));
  for (int cf = 0; cf < static_cast<int>(k.num_classes()); ++cf) {
    MorId rf = k.representative(cf);
    for (MorId g : c.outgoing(c.cod(rf))) {
      int cg = k.class_of(g);
      if (g != k.representative(cg)) continue;
      int cgf = k.class_of(c.compose(g, rf));
      for (MorId f2 : k.members(cf))
        for (MorId g2 : k.members(cg))
          if (k.class_of(c.compose(g2, f2)) != cgf)
            fail(ErrorKind::NotACongruence, "composite depends on representatives",
                 {c.morphism_name(g2), c.morphism_name(f2)});
      raw.compose.push_back({name(cg), name(cf), name(cgf)});
    }
  }
  QuotientCategory out;
  out.category = share(validate_category(raw));
  out.projection.source = k.base();
  out.projection.target = out.category;
  for (ObjId x = 0; x < static_cast<ObjId>(c.num_objects()); ++x) out.projection.on_objects.push_back(x);
  for (MorId f = 0; f < static_cast<MorId>(c.num_morphisms()); ++f) out.projection.on_morphisms.push_back(k.class_of(f));
  return out;
}

Subcategory full_subcategory(const CategoryPtr& cp, std::span<const ObjId> objects) {
  const auto& c = *cp;
  Subcategory out;
  out.objects.assign(objects.begin(), objects.end());
  RawCategory raw;
  std::vector<MorId> kept;
  std::vector<MorId> index(c.num_morphisms(), kNoMorphism);
  for (ObjId x : objects) raw.objects.push_back(c.object_name(x));
  for (ObjId a : objects)
    for (ObjId b : objects)
      for (MorId f : c.hom(a, b)) {
        index[f] = static_cast<MorId>(kept.size());
        kept.push_back(f);
        raw.morphisms.push_back({c.morphism_name(f), c.object_name(a), c.object_name(b)});
      }
  for (ObjId x : objects) raw.identities.emplace_back(c.object_name(x), c.morphism_name(c.identity(x)));
  for (MorId f : kept)
    for (MorId g : c.outgoing(c.cod(f)))
      if (index[g] != kNoMorphism)
        raw.compose.push_back({c.morphism_name(g), c.morphism_name(f), c.morphism_name(c.compose(g, f))});
  out.category = share(validate_category(raw));
  out.inclusion = {out.category, cp, out.objects, kept};
  return out;
}

// ---------------------------------------------------------------------------
// Morphism classification

bool is_mono(const FinCategory& c, MorId f) {
  for (ObjId z = 0; z < static_cast<ObjId>(c.num_objects()); ++z) {
    auto h = c.hom(z, c.dom(f));
    for (std::size_t i = 0; i < h.size(); ++i)
      for (std::size_t j = i + 1; j < h.size(); ++j)
        if (c.compose(f, h[i]) == c.compose(f, h[j])) return false;
  }
  return true;
}

bool is_epi(const FinCategory& c, MorId f) {
  for (ObjId z = 0; z < static_cast<ObjId>(c.num_objects()); ++z) {
    auto h = c.hom(c.cod(f), z);
    for (std::size_t i = 0; i < h.size(); ++i)
      for (std::size_t j = i + 1; j < h.size(); ++j)
        if (c.compose(h[i], f) == c.compose(h[j], f)) return false;
  }
  return true;
}

MorId inverse_of(const FinCategory& c, MorId f) {
  for (MorId g : c.hom(c.cod(f), c.dom(f)))
    if (c.is_identity(c.compose(g, f)) && c.is_identity(c.compose(f, g))) return g;
  return kNoMorphism;
}

MorId find_iso(const FinCategory& c, ObjId a, ObjId b) {
  for (MorId f : c.hom(a, b))
    if (inverse_of(c, f) != kNoMorphism) return f;
  return kNoMorphism;
}

MorphismFlags classify_morphism(const FinCategory& c, MorId f) {
  if (f < 0 || f >= static_cast<MorId>(c.num_morphisms())) fail(ErrorKind::UnknownMorphism, "morphism index out of range");
  MorphismFlags flags;
  flags.mono = is_mono(c, f);
  flags.epi = is_epi(c, f);
  for (MorId r : c.hom(c.cod(f), c.dom(f))) {
    if (c.is_identity(c.compose(r, f))) flags.split_mono = true;
    if (c.is_identity(c.compose(f, r))) flags.split_epi = true;
  }
  flags.iso = inverse_of(c, f) != kNoMorphism;
  return flags;
}

// ---------------------------------------------------------------------------
// Isomorphism search

namespace {

struct IsoSearch {
  const FinCategory& a;
  const FinCategory& b;
  std::vector<ObjId> obj;       // a-object -> b-object
  std::vector<bool> obj_used;
  std::vector<MorId> mor;       // a-morphism -> b-morphism
  std::vector<bool> mor_used;
  std::vector<MorId> order;     // a-morphisms, identities first

  bool hom_sizes_match(ObjId x, ObjId y) const {
    return a.hom(x, x).size() == b.hom(y, y).size();
  }

  bool assign_objects(std::size_t i) {
    if (i == a.num_objects()) return assign_morphisms(0);
    ObjId x = static_cast<ObjId>(i);
    for (ObjId y = 0; y < static_cast<ObjId>(b.num_objects()); ++y) {
      if (obj_used[y] || !hom_sizes_match(x, y)) continue;
      bool ok = true;
      for (ObjId x2 = 0; x2 < x && ok; ++x2)
        ok = a.hom(x, x2).size() == b.hom(y, obj[x2]).size() && a.hom(x2, x).size() == b.hom(obj[x2], y).size();
      if (!ok) continue;
      obj[x] = y;
      obj_used[y] = true;
      if (assign_objects(i + 1)) return true;
      obj_used[y] = false;
    }
    return false;
  }

  bool consistent(MorId f) const {
    MorId bf = mor[f];
    for (MorId g : a.outgoing(a.cod(f))) {
      MorId gf = a.compose(g, f);
      if (mor[g] != kNoMorphism && mor[gf] != kNoMorphism && b.compose(mor[g], bf) != mor[gf]) return false;
    }
    for (MorId h : a.incoming(a.dom(f))) {
      MorId fh = a.compose(f, h);
      if (mor[h] != kNoMorphism && mor[fh] != kNoMorphism && b.compose(bf, mor[h]) != mor[fh]) return false;
    }
    for (MorId h : a.outgoing(a.dom(f))) {
      if (mor[h] == kNoMorphism) continue;
      for (MorId g : a.hom(a.cod(h), a.cod(f)))
        if (mor[g] != kNoMorphism && a.compose(g, h) == f && b.compose(mor[g], mor[h]) != bf) return false;
    }
    return true;
  }

  bool assign_morphisms(std::size_t i) {
    if (i == order.size()) return true;
    MorId f = order[i];
    if (a.is_identity(f)) {
      MorId t = b.identity(obj[a.dom(f)]);
      mor[f] = t;
      mor_used[t] = true;
      if (consistent(f) && assign_morphisms(i + 1)) return true;
      mor_used[t] = false;
      mor[f] = kNoMorphism;
      return false;
    }
    for (MorId t : b.hom(obj[a.dom(f)], obj[a.cod(f)])) {
      if (mor_used[t] || b.is_identity(t)) continue;
      mor[f] = t;
      mor_used[t] = true;
      if (consistent(f) && assign_morphisms(i + 1)) return true;
      mor_used[t] = false;
      mor[f] = kNoMorphism;
    }
    return false;
  }
};

}  // namespace

std::optional<Functor> find_isomorphism(const CategoryPtr& ap, const CategoryPtr& bp) {
  const auto& a = *ap;
  const auto& b = *bp;
  if (a.num_objects() != b.num_objects() || a.num_morphisms() != b.num_morphisms()) return std::nullopt;
  IsoSearch s{a, b, std::vector<ObjId>(a.num_objects(), -1), std::vector<bool>(b.num_objects(), false),
              std::vector<MorId>(a.num_morphisms(), kNoMorphism), std::vector<bool>(b.num_morphisms(), false), {}};
  for (MorId f = 0; f < static_cast<MorId>(a.num_morphisms()); ++f)
    if (a.is_identity(f)) s.order.push_back(f);
  for (MorId f = 0; f < static_cast<MorId>(a.num_morphisms()); ++f)
    if (!a.is_identity(f)) s.order.push_back(f);
  if (!s.assign_objects(0)) return std::nullopt;
  Functor fn{ap, bp, s.obj, s.mor};
  validate_functor(fn);
  return fn;
}

Skeleton skeleton(const CategoryPtr& cp) {
  const auto& c = *cp;
  Skeleton out;
  std::vector<ObjId> reps;
  out.representative.assign(c.num_objects(), -1);
  out.to_rep.assign(c.num_objects(), kNoMorphism);
  for (ObjId x = 0; x < static_cast<ObjId>(c.num_objects()); ++x) {
    for (ObjId r : reps) {
      MorId iso = find_iso(c, x, r);
      if (iso != kNoMorphism) {
        out.representative[x] = r;
        out.to_rep[x] = iso;
        break;
      }
    }
    if (out.representative[x] < 0) {
      reps.push_back(x);
      out.representative[x] = x;
      out.to_rep[x] = c.identity(x);
    }
  }
  out.sub = full_subcategory(cp, reps);
  std::vector<ObjId> sub_index(c.num_objects(), -1);
  for (std::size_t i = 0; i < reps.size(); ++i) sub_index[reps[i]] = static_cast<ObjId>(i);
  std::vector<MorId> sub_mor(c.num_morphisms(), kNoMorphism);
  for (std::size_t i = 0; i < out.sub.inclusion.on_morphisms.size(); ++i)
    sub_mor[out.sub.inclusion.on_morphisms[i]] = static_cast<MorId>(i);
  out.retraction.source = cp;
  out.retraction.target = out.sub.category;
  for (ObjId x = 0; x < static_cast<ObjId>(c.num_objects()); ++x)
    out.retraction.on_objects.push_back(sub_index[out.representative[x]]);
  for (MorId f = 0; f < static_cast<MorId>(c.num_morphisms()); ++f) {
    MorId back = inverse_of(c, out.to_rep[c.dom(f)]);
    MorId g = c.compose(out.to_rep[c.cod(f)], c.compose(f, back));
    out.retraction.on_morphisms.push_back(sub_mor[g]);
  }
  validate_functor(out.retraction);
  return out;
}

}  // namespace exwlex
