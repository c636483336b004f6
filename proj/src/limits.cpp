#include "exwlex/limits.hpp"

#include <algorithm>

#include "exwlex/error.hpp"

namespace exwlex {

Diagram Diagram::pullback(const FinCategory& c, MorId f, MorId g) {
  if (c.cod(f) != c.cod(g)) fail(ErrorKind::InvalidInput, "pullback of arrows with different codomains",
                                 {c.morphism_name(f), c.morphism_name(g)});
  return {{c.dom(f), c.dom(g), c.cod(f)}, {{0, 2, f}, {1, 2, g}}};
}

Diagram Diagram::equalizer(const FinCategory& c, MorId f, MorId g) {
  if (c.dom(f) != c.dom(g) || c.cod(f) != c.cod(g))
    fail(ErrorKind::InvalidInput, "equalizer of non-parallel arrows", {c.morphism_name(f), c.morphism_name(g)});
  return {{c.dom(f), c.cod(f)}, {{0, 1, f}, {0, 1, g}}};
}

void validate_diagram(const FinCategory& c, const Diagram& d) {
  for (ObjId x : d.nodes)
    if (x < 0 || x >= static_cast<ObjId>(c.num_objects())) fail(ErrorKind::UnknownObject, "diagram node out of range");
  for (const auto& e : d.edges) {
    if (e.from < 0 || e.to < 0 || e.from >= static_cast<int>(d.nodes.size()) || e.to >= static_cast<int>(d.nodes.size()))
      fail(ErrorKind::InvalidInput, "diagram edge endpoint out of range");
    if (e.arrow < 0 || e.arrow >= static_cast<MorId>(c.num_morphisms()))
      fail(ErrorKind::UnknownMorphism, "diagram edge arrow out of range");
    if (c.dom(e.arrow) != d.nodes[e.from] || c.cod(e.arrow) != d.nodes[e.to])
      fail(ErrorKind::InvalidInput, "diagram edge arrow does not match its endpoints", {c.morphism_name(e.arrow)});
  }
}

bool is_cone(const FinCategory& c, const Diagram& d, const Cone& cone) {
  if (cone.apex < 0 || cone.apex >= static_cast<ObjId>(c.num_objects())) return false;
  if (cone.legs.size() != d.nodes.size()) return false;
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    MorId l = cone.legs[i];
    if (l < 0 || l >= static_cast<MorId>(c.num_morphisms())) return false;
    if (c.dom(l) != cone.apex || c.cod(l) != d.nodes[i]) return false;
  }
  for (const auto& e : d.edges)
    if (c.compose(e.arrow, cone.legs[e.from]) != cone.legs[e.to]) return false;
  return true;
}

Cone precompose(const FinCategory& c, const Cone& cone, MorId m) {
  Cone out{c.dom(m), {}};
  for (MorId l : cone.legs) out.legs.push_back(c.compose(l, m));
  return out;
}

Cone pullback_cone(const FinCategory& c, const Diagram& d, MorId to_left, MorId to_right) {
  return {c.dom(to_left), {to_left, to_right, c.compose(d.edges[0].arrow, to_left)}};
}

bool recheck_factorizations(const FinCategory& c, const Cone& cone, const WeakLimitVerdict& v) {
  for (const auto& [competitor, m] : v.table)
    if (c.dom(m) != competitor.apex || c.cod(m) != cone.apex || precompose(c, cone, m) != competitor) return false;
  return true;
}

// ---------------------------------------------------------------------------

LimitContext::LimitContext(CategoryPtr c, SearchOptions options)
    : cat_(std::move(c)), options_(options), meter_(options.search_budget),
      regular_epi_(new std::atomic<signed char>[cat_->num_morphisms() + 1]) {
  for (std::size_t i = 0; i <= cat_->num_morphisms(); ++i) regular_epi_[i].store(-1);
}

const std::vector<Cone>& LimitContext::cones_at(const Diagram& d, ObjId apex) {
  auto key = std::make_pair(d, apex);
  {
    std::lock_guard lock(mu_);
    auto it = cones_.find(key);
    if (it != cones_.end()) return it->second;
  }
  const auto& c = *cat_;
  const std::size_t n = d.nodes.size();
  // edges checked once both endpoints are assigned
  std::vector<std::vector<const Diagram::Edge*>> checks(n);
  for (const auto& e : d.edges) checks[std::max(e.from, e.to)].push_back(&e);
  std::vector<Cone> out;
  std::vector<MorId> legs(n, kNoMorphism);
  std::vector<std::span<const MorId>> choices(n);
  for (std::size_t i = 0; i < n; ++i) choices[i] = c.hom(apex, d.nodes[i]);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      out.push_back({apex, legs});
      if (out.size() > options_.cone_budget)
        fail(ErrorKind::BudgetExceeded, "more than " + std::to_string(options_.cone_budget) + " cones at one apex");
      return;
    }
    for (MorId l : choices[i]) {
      meter_.charge();
      legs[i] = l;
      bool ok = true;
      for (const auto* e : checks[i])
        if (c.compose(e->arrow, legs[e->from]) != legs[e->to]) {
          ok = false;
          break;
        }
      if (ok) self(self, i + 1);
    }
  };
  rec(rec, 0);
  std::lock_guard lock(mu_);
  return cones_.emplace(std::move(key), std::move(out)).first->second;
}

std::vector<Cone> LimitContext::enumerate_cones(const Diagram& d) {
  validate_diagram(*cat_, d);
  std::vector<Cone> out;
  for (ObjId a = 0; a < static_cast<ObjId>(cat_->num_objects()); ++a) {
    const auto& here = cones_at(d, a);
    out.insert(out.end(), here.begin(), here.end());
    if (out.size() > options_.cone_budget)
      fail(ErrorKind::BudgetExceeded, "more than " + std::to_string(options_.cone_budget) + " cones");
  }
  return out;
}

namespace {

// Index of `legs` in a lexicographically sorted cone list, or -1.
long find_cone(const std::vector<Cone>& cones, const std::vector<MorId>& legs) {
  auto it = std::lower_bound(cones.begin(), cones.end(), legs,
                             [](const Cone& a, const std::vector<MorId>& l) { return a.legs < l; });
  if (it == cones.end() || it->legs != legs) return -1;
  return it - cones.begin();
}

}  // namespace

bool LimitContext::weak_limit_fast(const Diagram& d, const Cone& cone) {
  const auto& c = *cat_;
  std::vector<MorId> legs(cone.legs.size());
  for (ObjId a = 0; a < static_cast<ObjId>(c.num_objects()); ++a) {
    const auto& competitors = cones_at(d, a);
    if (competitors.empty()) continue;
    auto maps = c.hom(a, cone.apex);
    if (maps.size() < competitors.size()) return false;
    std::vector<char> hit(competitors.size(), 0);
    std::size_t covered = 0;
    for (MorId m : maps) {
      meter_.charge(legs.size());
      for (std::size_t i = 0; i < legs.size(); ++i) legs[i] = c.compose(cone.legs[i], m);
      long idx = find_cone(competitors, legs);
      if (idx >= 0 && !hit[idx]) {
        hit[idx] = 1;
        ++covered;
      }
    }
    if (covered != competitors.size()) return false;
  }
  return true;
}

namespace {

WeakLimitVerdict factorization_scan(LimitContext& ctx, const Diagram& d, const Cone& cone, bool strict, bool with_table) {
  const auto& c = ctx.category();
  if (!is_cone(c, d, cone)) fail(ErrorKind::InvalidInput, "not a cone over the diagram");
  WeakLimitVerdict v;
  v.holds = true;
  std::vector<MorId> legs(cone.legs.size());
  for (ObjId a = 0; a < static_cast<ObjId>(c.num_objects()); ++a) {
    const auto& competitors = ctx.cones_at(d, a);
    if (competitors.empty()) continue;
    std::vector<MorId> first(competitors.size(), kNoMorphism);
    for (MorId m : c.hom(a, cone.apex)) {
      ctx.meter().charge(legs.size());
      for (std::size_t i = 0; i < legs.size(); ++i) legs[i] = c.compose(cone.legs[i], m);
      long idx = find_cone(competitors, legs);
      if (idx < 0) continue;
      if (first[idx] == kNoMorphism) {
        first[idx] = m;
      } else if (strict && !v.non_unique_for) {
        v.holds = false;
        v.non_unique_for = competitors[idx];
        v.non_unique_mediators = std::make_pair(first[idx], m);
      }
    }
    for (std::size_t i = 0; i < competitors.size(); ++i) {
      if (first[i] == kNoMorphism) {
        if (!v.counterexample) v.counterexample = competitors[i];
        v.holds = false;
      } else if (with_table) {
        v.table.push_back({competitors[i], first[i]});
      }
    }
  }
  return v;
}

}  // namespace

WeakLimitVerdict LimitContext::is_weak_limit(const Diagram& d, const Cone& cone, bool with_table) {
  validate_diagram(*cat_, d);
  return factorization_scan(*this, d, cone, false, with_table);
}

WeakLimitVerdict LimitContext::is_limit(const Diagram& d, const Cone& cone, bool with_table) {
  validate_diagram(*cat_, d);
  return factorization_scan(*this, d, cone, true, with_table);
}

const std::vector<Cone>& LimitContext::weak_limits(const Diagram& d) {
  {
    std::lock_guard lock(mu_);
    auto it = weak_limits_.find(d);
    if (it != weak_limits_.end()) return it->second;
  }
  std::vector<Cone> all = enumerate_cones(d);
  // warm the per-apex cache before fanning out
  for (ObjId a = 0; a < static_cast<ObjId>(cat_->num_objects()); ++a) cones_at(d, a);
  std::vector<char> ok(all.size(), 0);
  parallel_for(all.size(), options_.workers, [&](std::size_t i) { ok[i] = weak_limit_fast(d, all[i]) ? 1 : 0; });
  std::vector<Cone> out;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (ok[i]) out.push_back(std::move(all[i]));
  std::lock_guard lock(mu_);
  return weak_limits_.emplace(d, std::move(out)).first->second;
}

const std::vector<Cone>& LimitContext::limits(const Diagram& d) {
  {
    std::lock_guard lock(mu_);
    auto it = limits_.find(d);
    if (it != limits_.end()) return it->second;
  }
  const auto& weak = weak_limits(d);
  std::vector<Cone> out;
  for (const auto& cone : weak)
    if (factorization_scan(*this, d, cone, true, false).holds) out.push_back(cone);
  std::lock_guard lock(mu_);
  return limits_.emplace(d, std::move(out)).first->second;
}

std::optional<Cone> LimitContext::first_limit(const Diagram& d) {
  const auto& l = limits(d);
  if (l.empty()) return std::nullopt;
  return l.front();
}

MorId LimitContext::mediator(const Cone& target, const Cone& source) {
  const auto& c = *cat_;
  for (MorId m : c.hom(source.apex, target.apex)) {
    meter_.charge();
    bool ok = true;
    for (std::size_t i = 0; i < target.legs.size() && ok; ++i) ok = c.compose(target.legs[i], m) == source.legs[i];
    if (ok) return m;
  }
  return kNoMorphism;
}

std::vector<MorId> LimitContext::mediators(const Cone& target, const Cone& source) {
  const auto& c = *cat_;
  std::vector<MorId> out;
  for (MorId m : c.hom(source.apex, target.apex)) {
    bool ok = true;
    for (std::size_t i = 0; i < target.legs.size() && ok; ++i) ok = c.compose(target.legs[i], m) == source.legs[i];
    if (ok) out.push_back(m);
  }
  return out;
}

bool LimitContext::is_regular_epi(MorId e) {
  signed char cached = regular_epi_[e].load();
  if (cached >= 0) return cached == 1;
  const auto& c = *cat_;
  bool result = false;
  if (is_epi(c, e)) {
    const ObjId d = c.dom(e);
    // For each q' out of D: does it factor uniquely through e?
    std::vector<std::pair<MorId, bool>> outs;
    for (MorId q : c.outgoing(d)) {
      int count = 0;
      for (MorId m : c.hom(c.cod(e), c.cod(q)))
        if (c.compose(m, e) == q && ++count > 1) break;
      outs.emplace_back(q, count == 1);
    }
    for (ObjId a = 0; a < static_cast<ObjId>(c.num_objects()) && !result; ++a) {
      auto h = c.hom(a, d);
      for (std::size_t i = 0; i < h.size() && !result; ++i)
        for (std::size_t j = i; j < h.size() && !result; ++j) {
          if (c.compose(e, h[i]) != c.compose(e, h[j])) continue;
          bool universal = true;
          for (const auto& [q, unique] : outs) {
            meter_.charge();
            if (c.compose(q, h[i]) == c.compose(q, h[j]) && !unique) {
              universal = false;
              break;
            }
          }
          result = universal;
        }
    }
  }
  regular_epi_[e].store(result ? 1 : 0);
  return result;
}

// ---------------------------------------------------------------------------

std::vector<Cone> find_weak_limits(LimitContext& ctx, const Diagram& d) {
  validate_diagram(ctx.category(), d);
  return ctx.weak_limits(d);
}

DeterminedByProjections determined_by_projections(LimitContext& ctx, const Cone& cone, MorId f) {
  const auto& c = ctx.category();
  if (c.dom(f) != cone.apex) fail(ErrorKind::InvalidInput, "arrow does not start at the cone apex", {c.morphism_name(f)});
  DeterminedByProjections out;
  for (ObjId a = 0; a < static_cast<ObjId>(c.num_objects()); ++a) {
    auto h = c.hom(a, cone.apex);
    for (std::size_t i = 0; i < h.size(); ++i)
      for (std::size_t j = i + 1; j < h.size(); ++j) {
        ctx.meter().charge();
        bool joint = true;
        for (MorId l : cone.legs)
          if (c.compose(l, h[i]) != c.compose(l, h[j])) {
            joint = false;
            break;
          }
        if (joint && c.compose(f, h[i]) != c.compose(f, h[j])) {
          out.holds = false;
          out.counterexample = std::make_pair(h[i], h[j]);
          return out;
        }
      }
  }
  return out;
}

// --- weak exponentials --------------------------------------------------------

std::vector<WeakExponentialDatum> admissible_exponential_data(LimitContext& ctx, ObjId x, ObjId y) {
  const auto& c = ctx.category();
  std::vector<WeakExponentialDatum> out;
  for (ObjId w = 0; w < static_cast<ObjId>(c.num_objects()); ++w)
    for (const auto& cone : ctx.weak_limits(Diagram::product({w, x})))
      for (MorId e : c.hom(cone.apex, y))
        if (determined_by_projections(ctx, cone, e).holds) out.push_back({w, x, y, cone, e});
  return out;
}

namespace {

std::string exponential_precondition(LimitContext& ctx, const WeakExponentialDatum& d) {
  const auto& c = ctx.category();
  Diagram shape = Diagram::product({d.w, d.x});
  if (!is_cone(c, shape, d.product)) return "product cone is not a cone over (W, X)";
  if (c.dom(d.eval) != d.product.apex || c.cod(d.eval) != d.y) return "evaluation has the wrong domain or codomain";
  if (!ctx.is_weak_limit(shape, d.product, false).holds) return "cone is not a weak product";
  if (!determined_by_projections(ctx, d.product, d.eval).holds) return "evaluation is not determined by projections";
  return {};
}

std::optional<std::pair<MorId, MorId>> exponential_factor(LimitContext& ctx, const WeakExponentialDatum& d,
                                                          const WeakExponentialDatum& comp) {
  const auto& c = ctx.category();
  const MorId p1 = d.product.legs[0], p2 = d.product.legs[1];
  const MorId q1 = comp.product.legs[0], q2 = comp.product.legs[1];
  for (MorId h : c.hom(comp.w, d.w)) {
    MorId hq1 = c.compose(h, q1);
    for (MorId k : c.hom(comp.product.apex, d.product.apex)) {
      ctx.meter().charge();
      if (c.compose(p1, k) == hq1 && c.compose(p2, k) == q2 && c.compose(d.eval, k) == comp.eval) return std::make_pair(h, k);
    }
  }
  return std::nullopt;
}

}  // namespace

WeakExponentialVerdict is_weak_exponential(LimitContext& ctx, const WeakExponentialDatum& datum) {
  WeakExponentialVerdict v;
  v.precondition_failure = exponential_precondition(ctx, datum);
  if (!v.precondition_failure.empty()) return v;
  auto competitors = admissible_exponential_data(ctx, datum.x, datum.y);
  std::vector<std::optional<std::pair<MorId, MorId>>> found(competitors.size());
  std::size_t bad = first_failure(competitors.size(), ctx.workers(), [&](std::size_t i) {
    found[i] = exponential_factor(ctx, datum, competitors[i]);
    return found[i].has_value();
  });
  v.holds = bad == competitors.size();
  if (!v.holds) {
    v.counterexample = competitors[bad];
    return v;
  }
  for (std::size_t i = 0; i < competitors.size(); ++i) v.table.push_back({competitors[i], found[i]->first, found[i]->second});
  return v;
}

std::vector<WeakExponentialDatum> find_weak_exponentials(LimitContext& ctx, ObjId x, ObjId y) {
  auto data = admissible_exponential_data(ctx, x, y);
  std::vector<char> ok(data.size(), 0);
  // Each candidate is checked against the same competitor list.
  parallel_for(data.size(), ctx.workers(), [&](std::size_t i) {
    const auto& d = data[i];
    ok[i] = first_failure(data.size(), 1, [&](std::size_t j) { return exponential_factor(ctx, d, data[j]).has_value(); }) ==
            data.size();
  });
  std::vector<WeakExponentialDatum> out;
  for (std::size_t i = 0; i < data.size(); ++i)
    if (ok[i]) out.push_back(data[i]);
  return out;
}

// --- weak dependent products --------------------------------------------------

std::string check_dependent_shape(LimitContext& ctx, const DependentDatum& d, bool require_dbp) {
  const auto& c = ctx.category();
  if (c.cod(d.y) != c.dom(d.x)) return "y and x are not composable";
  if (c.cod(d.u) != c.cod(d.x)) return "u does not land in the codomain of x";
  Diagram shape = Diagram::pullback(c, d.u, d.x);
  if (!is_cone(c, shape, d.square)) return "square does not commute over (u, x)";
  if (c.dom(d.f) != d.square.apex || c.cod(d.f) != c.dom(d.y)) return "f has the wrong domain or codomain";
  if (c.compose(d.y, d.f) != d.p2()) return "y f != p2";
  if (!ctx.is_weak_limit(shape, d.square, false).holds) return "square is not a weak pullback";
  if (require_dbp && !determined_by_projections(ctx, d.square, d.f).holds) return "f is not determined by projections";
  return {};
}

std::vector<DependentDatum> admissible_dependent_data(LimitContext& ctx, MorId y, MorId x, bool require_dbp) {
  const auto& c = ctx.category();
  if (c.cod(y) != c.dom(x)) fail(ErrorKind::InvalidInput, "arrows are not composable", {c.morphism_name(y), c.morphism_name(x)});
  const ObjId j = c.cod(x);
  std::vector<DependentDatum> out;
  for (ObjId uo = 0; uo < static_cast<ObjId>(c.num_objects()); ++uo)
    for (MorId u : c.hom(uo, j))
      for (const auto& sq : ctx.weak_limits(Diagram::pullback(c, u, x)))
        for (MorId f : c.hom(sq.apex, c.dom(y))) {
          if (c.compose(y, f) != sq.legs[1]) continue;
          if (require_dbp && !determined_by_projections(ctx, sq, f).holds) continue;
          out.push_back({y, x, u, sq, f});
        }
  return out;
}

namespace {

std::optional<std::pair<MorId, MorId>> dependent_factor(LimitContext& ctx, const DependentDatum& d, const DependentDatum& comp) {
  const auto& c = ctx.category();
  const ObjId uo = c.dom(d.u), uo2 = c.dom(comp.u);
  for (MorId h : c.hom(uo2, uo)) {
    if (c.compose(d.u, h) != comp.u) continue;
    MorId hq1 = c.compose(h, comp.p1());
    for (MorId k : c.hom(comp.top(), d.top())) {
      ctx.meter().charge();
      if (c.compose(d.p1(), k) == hq1 && c.compose(d.p2(), k) == comp.p2() && c.compose(d.f, k) == comp.f)
        return std::make_pair(h, k);
    }
  }
  return std::nullopt;
}

}  // namespace

DependentProductVerdict is_weak_dependent_product(LimitContext& ctx, const DependentDatum& datum) {
  DependentProductVerdict v;
  v.precondition_failure = check_dependent_shape(ctx, datum, true);
  if (!v.precondition_failure.empty()) return v;
  auto competitors = admissible_dependent_data(ctx, datum.y, datum.x, true);
  std::vector<std::optional<std::pair<MorId, MorId>>> found(competitors.size());
  std::size_t bad = first_failure(competitors.size(), ctx.workers(), [&](std::size_t i) {
    found[i] = dependent_factor(ctx, datum, competitors[i]);
    return found[i].has_value();
  });
  v.holds = bad == competitors.size();
  if (!v.holds) {
    v.counterexample = competitors[bad];
    return v;
  }
  for (std::size_t i = 0; i < competitors.size(); ++i) v.table.push_back({competitors[i], found[i]->first, found[i]->second});
  return v;
}

std::vector<DependentDatum> find_weak_dependent_products(LimitContext& ctx, MorId y, MorId x) {
  auto data = admissible_dependent_data(ctx, y, x, true);
  std::vector<char> ok(data.size(), 0);
  parallel_for(data.size(), ctx.workers(), [&](std::size_t i) {
    ok[i] = first_failure(data.size(), 1, [&](std::size_t j) { return dependent_factor(ctx, data[i], data[j]).has_value(); }) ==
            data.size();
  });
  std::vector<DependentDatum> out;
  for (std::size_t i = 0; i < data.size(); ++i)
    if (ok[i]) out.push_back(data[i]);
  return out;
}

// --- exactness machinery ------------------------------------------------------

std::optional<Cone> kernel_pair(LimitContext& ctx, MorId f) {
  return ctx.first_limit(Diagram::pullback(ctx.category(), f, f));
}

bool is_coequalizer(LimitContext& ctx, MorId q, MorId a, MorId b) {
  const auto& c = ctx.category();
  if (c.dom(a) != c.dom(b) || c.cod(a) != c.cod(b) || c.cod(a) != c.dom(q)) return false;
  if (c.compose(q, a) != c.compose(q, b)) return false;
  for (MorId q2 : c.outgoing(c.dom(q))) {
    if (c.compose(q2, a) != c.compose(q2, b)) continue;
    int count = 0;
    for (MorId m : c.hom(c.cod(q), c.cod(q2))) {
      ctx.meter().charge();
      if (c.compose(m, q) == q2) ++count;
    }
    if (count != 1) return false;
  }
  return true;
}

MorId coequalizer(LimitContext& ctx, MorId a, MorId b) {
  const auto& c = ctx.category();
  if (c.dom(a) != c.dom(b) || c.cod(a) != c.cod(b)) fail(ErrorKind::InvalidInput, "coequalizer of non-parallel arrows");
  for (MorId q : c.outgoing(c.cod(a)))
    if (is_coequalizer(ctx, q, a, b)) return q;
  return kNoMorphism;
}

std::optional<ImageFactorization> image_factorization(LimitContext& ctx, MorId f) {
  const auto& c = ctx.category();
  for (MorId e : c.outgoing(c.dom(f))) {
    if (!ctx.is_regular_epi(e)) continue;
    for (MorId m : c.hom(c.cod(e), c.cod(f)))
      if (c.compose(m, e) == f && is_mono(c, m)) return ImageFactorization{e, m};
  }
  return std::nullopt;
}

}  // namespace exwlex
