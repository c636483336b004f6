#include "exwlex/lcc.hpp"

#include <algorithm>

#include "exwlex/error.hpp"

namespace exwlex {

// --- posets ----------------------------------------------------------------------

int PosetReflection::class_of_element(int e) const {
  auto it = std::find(elements.begin(), elements.end(), e);
  return it == elements.end() ? -1 : class_of[it - elements.begin()];
}

PosetReflection reflect_preorder(std::vector<int> elements, const std::function<bool(int, int)>& le,
                                 const std::function<std::string(int)>& label) {
  const std::size_t n = elements.size();
  std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rel[i][j] = i == j || le(elements[i], elements[j]);
  PosetReflection out;
  out.class_of.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (out.class_of[i] >= 0) continue;
    const int cls = static_cast<int>(out.representative.size());
    out.representative.push_back(static_cast<int>(i));
    for (std::size_t j = i; j < n; ++j)
      if (rel[i][j] && rel[j][i]) out.class_of[j] = cls;
  }
  const std::size_t k = out.representative.size();
  out.poset.leq.assign(k, std::vector<char>(k, 0));
  for (std::size_t a = 0; a < k; ++a) {
    out.poset.labels.push_back(label(elements[out.representative[a]]));
    for (std::size_t b = 0; b < k; ++b) out.poset.leq[a][b] = rel[out.representative[a]][out.representative[b]];
  }
  out.elements = std::move(elements);
  return out;
}

PosetReflection poset_reflection(const FinCategory& c) {
  std::vector<int> objs(c.num_objects());
  for (std::size_t i = 0; i < objs.size(); ++i) objs[i] = static_cast<int>(i);
  return reflect_preorder(
      std::move(objs), [&](int a, int b) { return !c.hom(a, b).empty(); }, [&](int a) { return c.object_name(a); });
}

namespace {

bool factors_through(const FinCategory& c, MorId a, MorId b) {
  for (MorId m : c.hom(c.dom(a), c.dom(b)))
    if (c.compose(b, m) == a) return true;
  return false;
}

}  // namespace

PosetReflection poset_reflection_slice(const FinCategory& c, ObjId x) {
  auto in = c.incoming(x);
  return reflect_preorder(
      std::vector<int>(in.begin(), in.end()), [&](int a, int b) { return factors_through(c, a, b); },
      [&](int a) { return c.morphism_name(a); });
}

bool is_monotone(const FinitePoset& p, const FinitePoset& q, const std::vector<int>& m) {
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b)
      if (p.le(a, b) && !q.le(m[a], m[b])) return false;
  return true;
}

RightAdjoint right_adjoint(const FinitePoset& p, const FinitePoset& q, const std::vector<int>& m) {
  RightAdjoint out;
  out.map.assign(q.size(), -1);
  for (std::size_t y = 0; y < q.size(); ++y) {
    std::vector<int> below;
    for (std::size_t a = 0; a < p.size(); ++a)
      if (q.le(m[a], y)) below.push_back(static_cast<int>(a));
    for (int g : below) {
      bool greatest = true;
      for (int s : below) greatest = greatest && p.le(s, g);
      if (greatest) {
        out.map[y] = g;
        break;
      }
    }
    if (out.map[y] < 0) {
      out.witness = static_cast<int>(y);
      out.map.clear();
      return out;
    }
  }
  out.exists = galois_law(p, q, m, out.map);
  return out;
}

bool galois_law(const FinitePoset& p, const FinitePoset& q, const std::vector<int>& m, const std::vector<int>& r) {
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t y = 0; y < q.size(); ++y)
      if (q.le(m[a], y) != p.le(a, r[y])) return false;
  return true;
}

WeakPullbackMap weak_pullback_functor(LimitContext& ctx, MorId f) {
  const auto& c = ctx.category();
  WeakPullbackMap out;
  out.f = f;
  out.source = poset_reflection_slice(c, c.cod(f));
  out.target = poset_reflection_slice(c, c.dom(f));
  std::vector<int> per_element(out.source.elements.size(), -1);
  for (std::size_t i = 0; i < per_element.size(); ++i) {
    const MorId a = out.source.elements[i];
    const auto& wl = ctx.weak_limits(Diagram::pullback(c, a, f));
    if (wl.empty())
      fail(ErrorKind::NoWeakPullback, "no weak pullback of (" + c.morphism_name(a) + ", " + c.morphism_name(f) + ")",
           {c.morphism_name(a), c.morphism_name(f)});
    for (const auto& cone : wl) {
      const int cls = out.target.class_of_element(cone.legs[1]);
      if (per_element[i] < 0) per_element[i] = cls;
      if (cls != per_element[i])
        fail(ErrorKind::InvalidInput, "weak pullbacks of " + c.morphism_name(a) + " along " + c.morphism_name(f) + " disagree",
             {c.morphism_name(a), c.morphism_name(f)});
    }
  }
  out.map.assign(out.source.poset.size(), -1);
  for (std::size_t i = 0; i < per_element.size(); ++i) {
    int& slot = out.map[out.source.class_of[i]];
    if (slot >= 0 && slot != per_element[i])
      fail(ErrorKind::InvalidInput, "weak pullback along " + c.morphism_name(f) + " is not defined on classes",
           {c.morphism_name(out.source.elements[i])});
    slot = per_element[i];
  }
  if (!is_monotone(out.source.poset, out.target.poset, out.map))
    fail(ErrorKind::InvalidInput, "weak pullback along " + c.morphism_name(f) + " is not monotone", {c.morphism_name(f)});
  return out;
}

AdjointsReport weak_pullback_adjoints(LimitContext& ctx) {
  const auto& c = ctx.category();
  const std::size_t n = c.num_morphisms();
  AdjointsReport out;
  out.maps.resize(n);
  out.adjoints.resize(n);
  parallel_for(n, ctx.workers(), [&](std::size_t f) {
    out.maps[f] = weak_pullback_functor(ctx, static_cast<MorId>(f));
    out.adjoints[f] = right_adjoint(out.maps[f].source.poset, out.maps[f].target.poset, out.maps[f].map);
  });
  for (std::size_t f = 0; f < n; ++f)
    if (!out.adjoints[f].exists) {
      out.holds = false;
      out.failing = static_cast<MorId>(f);
      out.witness = out.adjoints[f].witness;
      break;
    }
  return out;
}

// --- subobjects ------------------------------------------------------------------

SubobjectLattice subobject_lattice(LimitContext& ctx, ObjId a) {
  const auto& c = ctx.category();
  std::vector<int> monos;
  for (MorId m : c.incoming(a))
    if (is_mono(c, m)) monos.push_back(m);
  SubobjectLattice out;
  out.object = a;
  out.classes = reflect_preorder(
      std::move(monos), [&](int m, int n) { return factors_through(c, m, n); }, [&](int m) { return c.morphism_name(m); });
  return out;
}

int inverse_image(LimitContext& ctx, MorId f, const SubobjectLattice& over_cod, const SubobjectLattice& over_dom, int cls) {
  const auto& c = ctx.category();
  const MorId m = over_cod.representative(cls);
  auto pb = ctx.first_limit(Diagram::pullback(c, m, f));
  if (!pb)
    fail(ErrorKind::DoesNotExist, "no pullback of (" + c.morphism_name(m) + ", " + c.morphism_name(f) + ")",
         {c.morphism_name(m), c.morphism_name(f)});
  const int out = over_dom.class_of(pb->legs[1]);
  if (out < 0) fail(ErrorKind::InvalidInput, "pullback of a mono is not monic", {c.morphism_name(pb->legs[1])});
  return out;
}

std::vector<int> inverse_image_map(LimitContext& ctx, MorId f, const SubobjectLattice& over_cod,
                                   const SubobjectLattice& over_dom) {
  std::vector<int> out(over_cod.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = inverse_image(ctx, f, over_cod, over_dom, static_cast<int>(k));
  return out;
}

InverseImageAdjoints inverse_image_adjoints(LimitContext& ctx) {
  const auto& c = ctx.category();
  std::vector<SubobjectLattice> subs(c.num_objects());
  parallel_for(subs.size(), ctx.workers(), [&](std::size_t a) { subs[a] = subobject_lattice(ctx, static_cast<ObjId>(a)); });
  std::vector<RightAdjoint> adj(c.num_morphisms());
  parallel_for(adj.size(), ctx.workers(), [&](std::size_t f) {
    const auto& sb = subs[c.cod(static_cast<MorId>(f))];
    const auto& sa = subs[c.dom(static_cast<MorId>(f))];
    adj[f] = right_adjoint(sb.classes.poset, sa.classes.poset, inverse_image_map(ctx, static_cast<MorId>(f), sb, sa));
  });
  InverseImageAdjoints out;
  for (std::size_t f = 0; f < adj.size(); ++f)
    if (!adj[f].exists) {
      out.holds = false;
      out.failing = static_cast<MorId>(f);
      out.witness = adj[f].witness;
      break;
    }
  return out;
}

namespace {

// Checks that a map from element classes to subobject classes is an order
// isomorphism; returns the reason it is not.
std::string order_iso_failure(const PosetReflection& from, const SubobjectLattice& to, const std::vector<int>& per_element,
                              std::vector<int>& map) {
  map.assign(from.poset.size(), -1);
  for (std::size_t i = 0; i < per_element.size(); ++i) {
    int& slot = map[from.class_of[i]];
    if (slot >= 0 && slot != per_element[i]) return "class " + from.poset.labels[from.class_of[i]] + " has two images";
    slot = per_element[i];
  }
  std::vector<char> hit(to.size(), 0);
  for (std::size_t k = 0; k < map.size(); ++k) {
    if (map[k] < 0) return "class " + from.poset.labels[k] + " has no image";
    if (hit[map[k]]) return "not injective at " + from.poset.labels[k];
    hit[map[k]] = 1;
  }
  for (std::size_t s = 0; s < hit.size(); ++s)
    if (!hit[s]) return "subobject " + to.classes.poset.labels[s] + " is not hit";
  for (std::size_t a = 0; a < map.size(); ++a)
    for (std::size_t b = 0; b < map.size(); ++b)
      if (from.poset.le(a, b) != to.classes.poset.le(map[a], map[b]))
        return "order differs at (" + from.poset.labels[a] + ", " + from.poset.labels[b] + ")";
  return {};
}

// Class of the image of f in the given lattice.
int image_class(LimitContext& ctx, const SubobjectLattice& sub, MorId f) {
  auto img = image_factorization(ctx, f);
  if (!img) fail(ErrorKind::DoesNotExist, "no image factorization", {ctx.category().morphism_name(f)});
  return sub.class_of(img->mono);
}

}  // namespace

SliceSubobjectIso slice_vs_subobjects(LimitContext& completed, const ExCompletion& ex, ObjId x) {
  const auto& base = *ex.base;
  SliceSubobjectIso out;
  auto pos = poset_reflection_slice(base, x);
  auto sub = subobject_lattice(completed, ex.embedding.map_object(x));
  std::vector<int> per(pos.elements.size());
  for (std::size_t i = 0; i < per.size(); ++i) per[i] = image_class(completed, sub, ex.embedding.map_morphism(pos.elements[i]));
  out.failure = order_iso_failure(pos, sub, per, out.map);
  out.holds = out.failure.empty();
  return out;
}

SpanCorrespondence spans_vs_subobjects(LimitContext& base, LimitContext& completed, const ExCompletion& ex, ObjId z,
                                       ObjId x, ObjId y) {
  const auto& c = base.category();
  const auto& e = completed.category();
  const auto& g = ex.embedding;
  SpanCorrespondence out;
  for (ObjId s = 0; s < static_cast<ObjId>(c.num_objects()); ++s)
    for (MorId a : c.hom(s, z))
      for (MorId b : c.hom(s, x))
        for (MorId k : c.hom(s, y)) out.span_data.push_back({a, b, k});
  std::vector<int> idx(out.span_data.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  const auto& sd = out.span_data;
  out.spans = reflect_preorder(
      idx,
      [&](int i, int j) {
        for (MorId m : c.hom(c.dom(sd[i][0]), c.dom(sd[j][0])))
          if (c.compose(sd[j][0], m) == sd[i][0] && c.compose(sd[j][1], m) == sd[i][1] && c.compose(sd[j][2], m) == sd[i][2])
            return true;
        return false;
      },
      [&](int i) {
        return "(" + c.morphism_name(sd[i][0]) + ", " + c.morphism_name(sd[i][1]) + ", " + c.morphism_name(sd[i][2]) + ")";
      });

  const ObjId gz = g.map_object(z), gx = g.map_object(x), gy = g.map_object(y);
  auto triple = completed.first_limit(Diagram::product({gz, gx, gy}));
  auto pair = completed.first_limit(Diagram::product({gz, gx}));
  if (!triple || !pair) {
    out.failure = "completion lacks the product";
    return out;
  }
  out.subobjects = subobject_lattice(completed, triple->apex);
  std::vector<int> per(sd.size());
  for (std::size_t i = 0; i < sd.size(); ++i) {
    Cone cone{g.map_object(c.dom(sd[i][0])), {g.map_morphism(sd[i][0]), g.map_morphism(sd[i][1]), g.map_morphism(sd[i][2])}};
    const MorId m = completed.mediator(*triple, cone);
    if (m == kNoMorphism) {
      out.failure = "product cone has no mediator";
      return out;
    }
    per[i] = image_class(completed, out.subobjects, m);
  }
  out.failure = order_iso_failure(out.spans, out.subobjects, per, out.map);
  out.holds = out.failure.empty();
  if (!out.holds) return out;

  out.regular_epi_restriction = true;
  out.iso_restriction = true;
  for (std::size_t i = 0; i < sd.size(); ++i) {
    const MorId r = out.subobjects.representative(per[i]);
    const MorId to_pair =
        completed.mediator(*pair, Cone{e.dom(r), {e.compose(triple->legs[0], r), e.compose(triple->legs[1], r)}});
    Cone span{c.dom(sd[i][0]), {sd[i][0], sd[i][1]}};
    const bool weak = base.is_weak_limit(Diagram::product({z, x}), span, false).holds;
    if (completed.is_regular_epi(to_pair) != weak) out.regular_epi_restriction = false;
    const bool graph = weak && determined_by_projections(base, span, sd[i][2]).holds;
    if (classify_morphism(e, to_pair).iso != graph) out.iso_restriction = false;
  }
  return out;
}

// --- exponentials -----------------------------------------------------------------

namespace {

// g x X: Z x X -> W x X for the chosen product cones.
MorId times_x(LimitContext& ctx, const Cone& wx, const Cone& zx, MorId g) {
  const auto& c = ctx.category();
  return ctx.mediator(wx, Cone{zx.apex, {c.compose(g, zx.legs[0]), zx.legs[1]}});
}

}  // namespace

bool is_exponential(LimitContext& ctx, ObjId x, ObjId b, const Exponential& e) {
  const auto& c = ctx.category();
  for (ObjId z = 0; z < static_cast<ObjId>(c.num_objects()); ++z) {
    auto zx = ctx.first_limit(Diagram::product({z, x}));
    if (!zx) return false;
    auto hom = c.hom(z, e.w);
    if (hom.size() != c.hom(zx->apex, b).size()) return false;
    std::vector<MorId> images;
    for (MorId g : hom) {
      ctx.meter().charge();
      const MorId gx = times_x(ctx, e.product, *zx, g);
      if (gx == kNoMorphism) return false;
      images.push_back(c.compose(e.eval, gx));
    }
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
  }
  return true;
}

std::optional<Exponential> find_exponential(LimitContext& ctx, ObjId x, ObjId b) {
  const auto& c = ctx.category();
  for (ObjId w = 0; w < static_cast<ObjId>(c.num_objects()); ++w) {
    auto wx = ctx.first_limit(Diagram::product({w, x}));
    if (!wx) continue;
    for (MorId ev : c.hom(wx->apex, b)) {
      Exponential e{w, *wx, ev};
      if (is_exponential(ctx, x, b, e)) return e;
    }
  }
  return std::nullopt;
}

CartesianClosedReport verify_cartesian_closed(LimitContext& ctx) {
  const auto n = static_cast<ObjId>(ctx.category().num_objects());
  CartesianClosedReport out;
  out.pairs.resize(static_cast<std::size_t>(n) * n);
  parallel_for(out.pairs.size(), ctx.workers(), [&](std::size_t i) {
    auto& p = out.pairs[i];
    p.x = static_cast<ObjId>(i / n);
    p.b = static_cast<ObjId>(i % n);
    p.exponential = find_exponential(ctx, p.x, p.b);
    if (!p.exponential) p.reason = "no object satisfies the exponential universal property";
  });
  for (const auto& p : out.pairs)
    if (!p.exponential) {
      out.holds = false;
      out.failing.emplace_back(p.x, p.b);
    }
  return out;
}

LccReport verify_lcc(LimitContext& ctx) {
  const auto& c = ctx.category();
  LccReport out;
  for (ObjId i = 0; i < static_cast<ObjId>(c.num_objects()); ++i) {
    auto s = slice_category(ctx.category_ptr(), i);
    LimitContext sctx(s.category, ctx.options());
    out.slices.push_back({i, verify_cartesian_closed(sctx)});
    out.holds = out.holds && out.slices.back().report.holds;
  }
  return out;
}

// --- the construction from a full diagram ------------------------------------------

bool weakly_terminal(LimitContext& completed, const std::vector<ObjId>& projective, ObjId x, ObjId b, ObjId w,
                     const Cone& wx, MorId eval) {
  const auto& e = completed.category();
  for (ObjId z : projective) {
    auto zx = completed.first_limit(Diagram::product({z, x}));
    if (!zx) return false;
    for (MorId g : e.hom(zx->apex, b)) {
      bool found = false;
      for (MorId h : e.hom(z, w)) {
        completed.meter().charge();
        const MorId hx = times_x(completed, wx, *zx, h);
        if (hx != kNoMorphism && e.compose(eval, hx) == g) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  }
  return true;
}

namespace {

// First regular epi into `target` from a projective object.
MorId projective_cover_of(LimitContext& ctx, const std::vector<ObjId>& projective, ObjId target) {
  for (ObjId p : projective)
    for (MorId m : ctx.category().hom(p, target))
      if (ctx.is_regular_epi(m)) return m;
  return kNoMorphism;
}

Cone require_limit(LimitContext& ctx, const Diagram& d, const std::string& what) {
  auto l = ctx.first_limit(d);
  if (!l) fail(ErrorKind::DoesNotExist, "completion lacks " + what);
  return *l;
}

}  // namespace

WccResult construct_exponential_wcc(LimitContext& base, LimitContext& completed, const ExCompletion& ex, ObjId x, ObjId b) {
  const auto& c = base.category();
  const auto& e = completed.category();
  const auto& g = ex.embedding;
  const auto projective = ex.projective_objects();
  WccResult r;

  r.cover_b = projective_cover_of(completed, projective, b);
  if (r.cover_b == kNoMorphism) fail(ErrorKind::NoCover, "no projective cover of " + e.object_name(b), {e.object_name(b)});
  for (ObjId y = 0; y < static_cast<ObjId>(c.num_objects()) && r.y < 0; ++y)
    if (g.map_object(y) == e.dom(r.cover_b)) r.y = y;

  auto fulls = find_full_diagrams(base, x, r.y);
  if (fulls.empty())
    fail(ErrorKind::NoFullDiagram, "no full diagram from " + c.object_name(x) + " to " + c.object_name(r.y),
         {c.object_name(x), c.object_name(r.y)});
  r.full = fulls.front();

  const ObjId gu = g.map_object(r.full.u), gx = g.map_object(x);
  r.triple = require_limit(completed, Diagram::product({gu, gx, b}), "the product U x X x B");
  Cone v{g.map_object(r.full.top()),
         {g.map_morphism(r.full.p1()), g.map_morphism(r.full.p2()), e.compose(r.cover_b, g.map_morphism(r.full.f))}};
  const MorId pairing = completed.mediator(r.triple, v);
  if (pairing == kNoMorphism) fail(ErrorKind::CriterionCheckFailed, "product cone has no mediator");
  auto img = image_factorization(completed, pairing);
  if (!img) fail(ErrorKind::DoesNotExist, "no image of <p1, p2, bf>");
  r.gamma = img->mono;
  const MorId g1 = e.compose(r.triple.legs[0], r.gamma), g2 = e.compose(r.triple.legs[1], r.gamma),
              g3 = e.compose(r.triple.legs[2], r.gamma);

  // For a: A >-> U: the pullback A x_U I, the arrow A x_U I -> A x X, and
  // whether g3 pi2 coequalizes its kernel pair.
  struct Stage {
    Cone q;
    Cone ax;
    MorId a_gamma2;
  };
  auto stage = [&](MorId a) {
    Stage s;
    s.q = require_limit(completed, Diagram::pullback(e, a, g1), "a pullback along gamma1");
    s.ax = require_limit(completed, Diagram::product({e.dom(a), gx}), "a product with X");
    s.a_gamma2 = completed.mediator(s.ax, Cone{s.q.apex, {s.q.legs[0], e.compose(g2, s.q.legs[1])}});
    if (s.a_gamma2 == kNoMorphism) fail(ErrorKind::CriterionCheckFailed, "product cone has no mediator");
    return s;
  };

  r.sub_u = subobject_lattice(completed, gu);
  const auto& lat = r.sub_u.classes.poset;
  r.criterion.assign(r.sub_u.size(), 0);
  for (std::size_t k = 0; k < r.sub_u.size(); ++k) {
    auto s = stage(r.sub_u.representative(static_cast<int>(k)));
    auto h = kernel_pair(completed, s.a_gamma2);
    if (!h) fail(ErrorKind::DoesNotExist, "completion lacks a kernel pair");
    const MorId t = e.compose(g3, s.q.legs[1]);
    r.criterion[k] = e.compose(t, h->legs[0]) == e.compose(t, h->legs[1]);
  }
  for (std::size_t k = 0; k < r.sub_u.size() && r.phi < 0; ++k) {
    if (!r.criterion[k]) continue;
    bool top = true;
    for (std::size_t j = 0; j < r.sub_u.size(); ++j) top = top && (!r.criterion[j] || lat.le(j, k));
    if (top) r.phi = static_cast<int>(k);
  }
  if (r.phi < 0) fail(ErrorKind::CriterionCheckFailed, "no largest subobject satisfies the criterion");
  for (std::size_t k = 0; k < r.sub_u.size(); ++k)
    if (lat.le(k, r.phi) != static_cast<bool>(r.criterion[k]))
      fail(ErrorKind::CriterionCheckFailed, "criterion is not a downset at " + lat.labels[k], {lat.labels[k]});
  r.phi_mono = r.sub_u.representative(r.phi);

  auto s = stage(r.phi_mono);
  r.fx = s.ax;
  const MorId t = e.compose(g3, s.q.legs[1]);
  int count = 0;
  for (MorId m : e.hom(r.fx.apex, b))
    if (e.compose(m, s.a_gamma2) == t) {
      if (count++ == 0) r.eval = m;
    }
  if (count != 1) fail(ErrorKind::CriterionCheckFailed, "evaluation is not uniquely determined");
  const ObjId f_obj = e.dom(r.phi_mono);
  r.weakly_terminal = weakly_terminal(completed, projective, gx, b, f_obj, r.fx, r.eval);

  r.cover_w = projective_cover_of(completed, projective, f_obj);
  if (r.cover_w == kNoMorphism) fail(ErrorKind::NoCover, "no projective cover of F", {e.object_name(f_obj)});
  r.w = e.dom(r.cover_w);
  r.wx = require_limit(completed, Diagram::product({r.w, gx}), "the product W x X");
  const MorId wx_to_fx = times_x(completed, r.fx, r.wx, r.cover_w);
  if (wx_to_fx == kNoMorphism) fail(ErrorKind::CriterionCheckFailed, "product cone has no mediator");
  r.eval_w = e.compose(r.eval, wx_to_fx);
  r.w_weakly_terminal = weakly_terminal(completed, projective, gx, b, r.w, r.wx, r.eval_w);
  return r;
}

}  // namespace exwlex
