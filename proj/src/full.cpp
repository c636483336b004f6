#include "exwlex/full.hpp"

#include "exwlex/error.hpp"

namespace exwlex {

std::vector<FullDiagramDatum> full_candidates(LimitContext& ctx, ObjId x, ObjId y) {
  const auto& c = ctx.category();
  std::vector<FullDiagramDatum> out;
  for (ObjId u = 0; u < static_cast<ObjId>(c.num_objects()); ++u)
    for (const auto& cone : ctx.weak_limits(Diagram::product({u, x})))
      for (MorId f : c.hom(cone.apex, y)) out.push_back({u, x, y, cone, f});
  return out;
}

namespace {

std::string full_precondition(LimitContext& ctx, const FullDiagramDatum& d) {
  const auto& c = ctx.category();
  Diagram shape = Diagram::product({d.u, d.x});
  if (!is_cone(c, shape, d.product)) return "product cone is not a cone over (U, X)";
  if (c.dom(d.f) != d.top() || c.cod(d.f) != d.y) return "f has the wrong domain or codomain";
  if (!ctx.is_weak_limit(shape, d.product, false).holds) return "cone is not a weak product";
  return {};
}

std::optional<FullWitness> full_factor(LimitContext& ctx, const FullDiagramDatum& d, const FullDiagramDatum& comp) {
  const auto& c = ctx.category();
  for (MorId h : c.hom(comp.u, d.u)) {
    for (const auto& p : ctx.weak_limits(Diagram::pullback(c, h, d.p1()))) {
      const MorId a = p.legs[0], b = p.legs[1];
      const MorId p2b = c.compose(d.p2(), b), fb = c.compose(d.f, b);
      for (MorId k : c.hom(p.apex, comp.top())) {
        ctx.meter().charge();
        if (c.compose(comp.p1(), k) == a && c.compose(comp.p2(), k) == p2b && c.compose(comp.f, k) == fb)
          return FullWitness{comp, h, p, k};
      }
    }
  }
  return std::nullopt;
}

FullnessVerdict full_against(LimitContext& ctx, const FullDiagramDatum& d, const std::vector<FullDiagramDatum>& comps,
                             unsigned workers) {
  FullnessVerdict v;
  std::vector<std::optional<FullWitness>> found(comps.size());
  std::size_t bad = first_failure(comps.size(), workers, [&](std::size_t i) {
    found[i] = full_factor(ctx, d, comps[i]);
    return found[i].has_value();
  });
  v.holds = bad == comps.size();
  if (!v.holds) {
    v.counterexample = comps[bad];
    return v;
  }
  for (auto& w : found) v.table.push_back(std::move(*w));
  return v;
}

}  // namespace

FullnessVerdict is_full_diagram(LimitContext& ctx, const FullDiagramDatum& d) {
  FullnessVerdict v;
  v.precondition_failure = full_precondition(ctx, d);
  if (!v.precondition_failure.empty()) return v;
  return full_against(ctx, d, full_candidates(ctx, d.x, d.y), ctx.workers());
}

std::vector<FullDiagramDatum> find_full_diagrams(LimitContext& ctx, ObjId x, ObjId y) {
  auto cands = full_candidates(ctx, x, y);
  std::vector<char> ok(cands.size(), 0);
  parallel_for(cands.size(), ctx.workers(), [&](std::size_t i) {
    ok[i] = first_failure(cands.size(), 1, [&](std::size_t j) { return full_factor(ctx, cands[i], cands[j]).has_value(); }) ==
            cands.size();
  });
  std::vector<FullDiagramDatum> out;
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (ok[i]) out.push_back(cands[i]);
  return out;
}

bool recheck_full(LimitContext& ctx, const FullDiagramDatum& d, const FullnessVerdict& v) {
  const auto& c = ctx.category();
  for (const auto& w : v.table) {
    const auto& comp = w.competitor;
    Diagram pb = Diagram::pullback(c, w.h, d.p1());
    if (!is_cone(c, pb, w.p) || !ctx.is_weak_limit(pb, w.p, false).holds) return false;
    const MorId a = w.p.legs[0], b = w.p.legs[1];
    if (c.dom(w.k) != w.p.apex || c.cod(w.k) != comp.top()) return false;
    if (c.compose(comp.p1(), w.k) != a || c.compose(comp.p2(), w.k) != c.compose(d.p2(), b) ||
        c.compose(comp.f, w.k) != c.compose(d.f, b))
      return false;
  }
  return true;
}

// --- dependent full diagrams ----------------------------------------------------

namespace {

std::optional<DepFullWitness> dep_full_factor(LimitContext& ctx, const DependentDatum& d, const DependentDatum& comp) {
  const auto& c = ctx.category();
  for (MorId h : c.hom(c.dom(comp.u), c.dom(d.u))) {
    if (c.compose(d.u, h) != comp.u) continue;
    for (const auto& p : ctx.weak_limits(Diagram::pullback(c, d.p1(), h))) {
      const MorId b = p.legs[0], a = p.legs[1];
      const MorId p2b = c.compose(d.p2(), b), fb = c.compose(d.f, b);
      for (MorId k : c.hom(p.apex, comp.top())) {
        ctx.meter().charge();
        if (c.compose(comp.p1(), k) == a && c.compose(comp.p2(), k) == p2b && c.compose(comp.f, k) == fb)
          return DepFullWitness{comp, h, p, k};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

DepFullnessVerdict is_dependent_full_diagram(LimitContext& ctx, const DependentDatum& d) {
  DepFullnessVerdict v;
  v.precondition_failure = check_dependent_shape(ctx, d, false);
  if (!v.precondition_failure.empty()) return v;
  auto comps = admissible_dependent_data(ctx, d.y, d.x, false);
  std::vector<std::optional<DepFullWitness>> found(comps.size());
  std::size_t bad = first_failure(comps.size(), ctx.workers(), [&](std::size_t i) {
    found[i] = dep_full_factor(ctx, d, comps[i]);
    return found[i].has_value();
  });
  v.holds = bad == comps.size();
  if (!v.holds) {
    v.counterexample = comps[bad];
    return v;
  }
  for (auto& w : found) v.table.push_back(std::move(*w));
  return v;
}

std::vector<DependentDatum> find_dependent_full_diagrams(LimitContext& ctx, MorId y, MorId x) {
  auto cands = admissible_dependent_data(ctx, y, x, false);
  std::vector<char> ok(cands.size(), 0);
  parallel_for(cands.size(), ctx.workers(), [&](std::size_t i) {
    ok[i] = first_failure(cands.size(), 1,
                          [&](std::size_t j) { return dep_full_factor(ctx, cands[i], cands[j]).has_value(); }) == cands.size();
  });
  std::vector<DependentDatum> out;
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (ok[i]) out.push_back(cands[i]);
  return out;
}

bool recheck_dependent_full(LimitContext& ctx, const DependentDatum& d, const DepFullnessVerdict& v) {
  const auto& c = ctx.category();
  for (const auto& w : v.table) {
    const auto& comp = w.competitor;
    if (c.compose(d.u, w.h) != comp.u) return false;
    Diagram pb = Diagram::pullback(c, d.p1(), w.h);
    if (!is_cone(c, pb, w.p) || !ctx.is_weak_limit(pb, w.p, false).holds) return false;
    const MorId b = w.p.legs[0], a = w.p.legs[1];
    if (c.dom(w.k) != w.p.apex || c.cod(w.k) != comp.top()) return false;
    if (c.compose(comp.p1(), w.k) != a || c.compose(comp.p2(), w.k) != c.compose(d.p2(), b) ||
        c.compose(comp.f, w.k) != c.compose(d.f, b))
      return false;
  }
  return true;
}

// --- converters -------------------------------------------------------------------

bool has_binary_products(LimitContext& ctx) {
  const auto n = static_cast<ObjId>(ctx.category().num_objects());
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = a; b < n; ++b)
      if (!ctx.first_limit(Diagram::product({a, b}))) return false;
  return true;
}

bool has_pullbacks(LimitContext& ctx) {
  const auto& c = ctx.category();
  for (ObjId t = 0; t < static_cast<ObjId>(c.num_objects()); ++t) {
    auto in = c.incoming(t);
    for (std::size_t i = 0; i < in.size(); ++i)
      for (std::size_t j = i; j < in.size(); ++j)
        if (!ctx.first_limit(Diagram::pullback(c, in[i], in[j]))) return false;
  }
  return true;
}

FullDiagramDatum full_from_weak_exponential(LimitContext& ctx, const WeakExponentialDatum& w) {
  if (!has_binary_products(ctx)) fail(ErrorKind::NoBinaryProducts, "category lacks binary products");
  return {w.w, w.x, w.y, w.product, w.eval};
}

WeakExponentialDatum weak_exponential_from_full(LimitContext& ctx, const FullDiagramDatum& d) {
  if (!has_binary_products(ctx)) fail(ErrorKind::NoBinaryProducts, "category lacks binary products");
  const auto& c = ctx.category();
  Cone prod = *ctx.first_limit(Diagram::product({d.u, d.x}));
  // section s of the retraction V -> U x X
  MorId s = ctx.mediator(d.product, prod);
  if (s == kNoMorphism) fail(ErrorKind::DoesNotExist, "weak product does not cover the product", {c.object_name(d.top())});
  return {d.u, d.x, d.y, prod, c.compose(d.f, s)};
}

FullDiagramDatum full_from_dependent(LimitContext& ctx, ObjId x, ObjId y) {
  const auto& c = ctx.category();
  const auto& ts = ctx.weak_limits(Diagram::terminal());
  if (ts.empty()) fail(ErrorKind::NotWeaklyLex, "no weakly terminal object");
  const ObjId t = ts.front().apex;
  const auto& u0s = ctx.weak_limits(Diagram::product({x, t}));
  if (u0s.empty()) fail(ErrorKind::NotWeaklyLex, "no weak product of X and T", {c.object_name(x), c.object_name(t)});
  const Cone u0 = u0s.front();
  const auto& v0s = ctx.weak_limits(Diagram::product({u0.apex, y}));
  if (v0s.empty()) fail(ErrorKind::NotWeaklyLex, "no weak product of U and Y", {c.object_name(u0.apex), c.object_name(y)});
  const Cone v0 = v0s.front();
  const MorId b = v0.legs[0], to_t = u0.legs[1], a = u0.legs[0], cy = v0.legs[1];

  auto cands = admissible_dependent_data(ctx, b, to_t, false);
  std::size_t pick = cands.size();
  for (std::size_t i = 0; i < cands.size() && pick == cands.size(); ++i) {
    bool full = true;
    for (std::size_t j = 0; j < cands.size() && full; ++j) full = dep_full_factor(ctx, cands[i], cands[j]).has_value();
    if (full) pick = i;
  }
  if (pick == cands.size())
    fail(ErrorKind::NoFullDiagram, "no dependent full diagram over the chain V -> U -> T",
         {c.morphism_name(b), c.morphism_name(to_t)});
  const auto& dd = cands[pick];
  return {c.dom(dd.u), x, y, Cone{dd.top(), {dd.p1(), c.compose(a, dd.p2())}}, c.compose(cy, dd.f)};
}

// --- slices ---------------------------------------------------------------------

namespace {

MorId slice_arrow(const SliceCategory& s, MorId m, ObjId from, ObjId to) {
  const auto& sc = *s.category;
  for (MorId mu : sc.hom(from, to))
    if (s.forget.map_morphism(mu) == m) return mu;
  fail(ErrorKind::InvalidInput, "arrow does not lie over the slice base");
}

}  // namespace

SliceTransfer transfer_to_slice(LimitContext& ctx, MorId j, const DependentDatum& d) {
  const auto& c = ctx.category();
  if (c.dom(j) != c.cod(d.x)) fail(ErrorKind::InvalidInput, "j must start at the codomain of x", {c.morphism_name(j)});
  SliceTransfer out{slice_category(ctx.category_ptr(), c.cod(j))};
  const auto& s = out.slice;
  auto obj = [&](MorId to_j) { return s.object_of_arrow[to_j]; };
  const MorId jx = c.compose(j, d.x), ju = c.compose(j, d.u);
  const ObjId sy = obj(c.compose(jx, d.y)), sx = obj(jx), sk = obj(j), su = obj(ju), sv = obj(c.compose(ju, d.p1()));
  DependentDatum in;
  in.y = slice_arrow(s, d.y, sy, sx);
  in.x = slice_arrow(s, d.x, sx, sk);
  in.u = slice_arrow(s, d.u, su, sk);
  in.square = Cone{sv, {slice_arrow(s, d.p1(), sv, su), slice_arrow(s, d.p2(), sv, sx), slice_arrow(s, d.square.legs[2], sv, sk)}};
  in.f = slice_arrow(s, d.f, sv, sy);
  out.in_slice = in;

  DependentDatum back{s.forget.map_morphism(in.y), s.forget.map_morphism(in.x), s.forget.map_morphism(in.u),
                      Cone{s.forget.map_object(in.square.apex), {}}, s.forget.map_morphism(in.f)};
  for (MorId l : in.square.legs) back.square.legs.push_back(s.forget.map_morphism(l));
  out.round_trip = back == d;

  out.verdict_base = is_dependent_full_diagram(ctx, d).holds;
  LimitContext sctx(s.category, ctx.options());
  out.verdict_slice = is_dependent_full_diagram(sctx, in).holds;
  return out;
}

}  // namespace exwlex
