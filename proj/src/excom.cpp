#include "exwlex/excom.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "exwlex/disjoint_set.hpp"
#include "exwlex/error.hpp"

namespace exwlex {

namespace {

std::optional<MorId> find_tau(const FinCategory& c, ObjId r, MorId r1, MorId r2, const Cone& pb) {
  // pb is over (r2, r1): legs [pi1, pi2, r2 pi1]
  const MorId a = c.compose(r1, pb.legs[0]);
  const MorId b = c.compose(r2, pb.legs[1]);
  for (MorId t : c.hom(pb.apex, r))
    if (c.compose(r1, t) == a && c.compose(r2, t) == b) return t;
  return std::nullopt;
}

}  // namespace

PerVerdict is_pseudo_eq_relation(LimitContext& ctx, ObjId x, ObjId r, MorId r1, MorId r2) {
  const auto& c = ctx.category();
  if (c.dom(r1) != r || c.dom(r2) != r || c.cod(r1) != x || c.cod(r2) != x)
    fail(ErrorKind::InvalidInput, "relation legs are not parallel arrows R -> X", {c.morphism_name(r1), c.morphism_name(r2)});
  PerVerdict v;
  PseudoEqRelation rel{x, r, r1, r2};
  const MorId id = c.identity(x);
  for (MorId m : c.hom(x, r))
    if (c.compose(r1, m) == id && c.compose(r2, m) == id) {
      rel.rho = m;
      break;
    }
  if (rel.rho == kNoMorphism) {
    v.failed_axiom = "reflexivity";
    return v;
  }
  for (MorId m : c.hom(r, r))
    if (c.compose(r1, m) == r2 && c.compose(r2, m) == r1) {
      rel.sigma = m;
      break;
    }
  if (rel.sigma == kNoMorphism) {
    v.failed_axiom = "symmetry";
    return v;
  }
  const auto& pbs = ctx.weak_limits(Diagram::pullback(c, r2, r1));
  if (pbs.empty())
    fail(ErrorKind::NoWeakPullback, "no weak pullback of (r2, r1)", {c.morphism_name(r2), c.morphism_name(r1)});
  rel.pullback = pbs.front();
  auto t = find_tau(c, r, r1, r2, rel.pullback);
  if (!t) {
    v.failed_axiom = "transitivity";
    return v;
  }
  rel.tau = *t;
  v.holds = true;
  v.relation = rel;
  return v;
}

bool transitivity_choice_independent(LimitContext& ctx, const PseudoEqRelation& rel) {
  const auto& c = ctx.category();
  for (const auto& pb : ctx.weak_limits(Diagram::pullback(c, rel.r2, rel.r1)))
    if (!find_tau(c, rel.r, rel.r1, rel.r2, pb)) return false;
  return true;
}

std::optional<MorId> tracks(const FinCategory& c, const PseudoEqRelation& from, const PseudoEqRelation& to, MorId f) {
  const MorId a = c.compose(f, from.r1), b = c.compose(f, from.r2);
  for (MorId k : c.hom(from.r, to.r))
    if (c.compose(to.r1, k) == a && c.compose(to.r2, k) == b) return k;
  return std::nullopt;
}

std::optional<MorId> related(const FinCategory& c, const PseudoEqRelation& to, MorId f, MorId g) {
  for (MorId h : c.hom(c.dom(f), to.r))
    if (c.compose(to.r1, h) == f && c.compose(to.r2, h) == g) return h;
  return std::nullopt;
}

WlexAudit wlex_audit(LimitContext& ctx) {
  const auto& c = ctx.category();
  const auto n = static_cast<ObjId>(c.num_objects());
  WlexAudit out;
  auto missing = [&](std::string what, std::vector<std::string> w) {
    out.passed = false;
    out.missing = std::move(what);
    out.witnesses = std::move(w);
  };
  if (ctx.weak_limits(Diagram::terminal()).empty()) {
    missing("weak terminal object", {});
    return out;
  }
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = a; b < n; ++b)
      if (ctx.weak_limits(Diagram::product({a, b})).empty()) {
        missing("weak product of (" + c.object_name(a) + ", " + c.object_name(b) + ")", {c.object_name(a), c.object_name(b)});
        return out;
      }
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b) {
      auto h = c.hom(a, b);
      for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = i + 1; j < h.size(); ++j)
          if (ctx.weak_limits(Diagram::equalizer(c, h[i], h[j])).empty()) {
            missing("weak equalizer of (" + c.morphism_name(h[i]) + ", " + c.morphism_name(h[j]) + ")",
                    {c.morphism_name(h[i]), c.morphism_name(h[j])});
            return out;
          }
    }
  return out;
}

std::string relation_name(const FinCategory& c, const PseudoEqRelation& rel) {
  if (rel.is_free(c)) return "Gamma(" + c.object_name(rel.x) + ")";
  return "Rel(" + c.object_name(rel.x) + ";" + c.object_name(rel.r) + ";" + c.morphism_name(rel.r1) + ";" +
         c.morphism_name(rel.r2) + ")";
}

std::vector<ObjId> ExCompletion::projective_objects() const {
  std::vector<ObjId> out(embedding.on_objects.begin(), embedding.on_objects.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Tracking arrows between two relations, partitioned into relatedness classes.
struct HomClasses {
  std::vector<std::vector<MorId>> classes;  // ascending members, classes ordered by representative
};

HomClasses hom_classes(const FinCategory& c, const PseudoEqRelation& a, const PseudoEqRelation& b) {
  std::vector<MorId> tracking;
  for (MorId f : c.hom(a.x, b.x))
    if (tracks(c, a, b, f)) tracking.push_back(f);
  std::unordered_map<MorId, int> pos;
  for (std::size_t i = 0; i < tracking.size(); ++i) pos[tracking[i]] = static_cast<int>(i);
  DisjointSet ds(static_cast<int>(tracking.size()));
  for (MorId h : c.hom(a.x, b.r)) {
    auto i = pos.find(c.compose(b.r1, h)), j = pos.find(c.compose(b.r2, h));
    if (i != pos.end() && j != pos.end()) ds.unite(i->second, j->second);
  }
  auto label = ds.finalize();
  HomClasses out;
  for (std::size_t i = 0; i < tracking.size(); ++i) {
    if (label[i] >= static_cast<int>(out.classes.size())) out.classes.resize(label[i] + 1);
    out.classes[label[i]].push_back(tracking[i]);
  }
  return out;
}

}  // namespace

ExCompletion build_excom(LimitContext& ctx) {
  const auto& c = ctx.category();
  auto audit = wlex_audit(ctx);
  if (!audit.passed) fail(ErrorKind::NotWeaklyLex, "input is not weakly lex: no " + audit.missing, audit.witnesses);

  // Candidate relations (X, R, r1, r2) in declaration order.
  struct Candidate {
    ObjId x, r;
    MorId r1, r2;
  };
  std::vector<Candidate> cands;
  for (ObjId x = 0; x < static_cast<ObjId>(c.num_objects()); ++x)
    for (ObjId r = 0; r < static_cast<ObjId>(c.num_objects()); ++r) {
      auto h = c.hom(r, x);
      for (MorId r1 : h)
        for (MorId r2 : h) cands.push_back({x, r, r1, r2});
    }
  std::vector<std::optional<PseudoEqRelation>> found(cands.size());
  parallel_for(cands.size(), ctx.workers(), [&](std::size_t i) {
    const auto& k = cands[i];
    found[i] = is_pseudo_eq_relation(ctx, k.x, k.r, k.r1, k.r2).relation;
  });

  ExCompletion out;
  out.base = ctx.category_ptr();
  for (auto& f : found)
    if (f) out.relations.push_back(std::move(*f));
  const std::size_t n = out.relations.size();

  std::vector<HomClasses> homs(n * n);
  parallel_for(n * n, ctx.workers(), [&](std::size_t i) { homs[i] = hom_classes(c, out.relations[i / n], out.relations[i % n]); });

  RawCategory raw;
  for (const auto& rel : out.relations) raw.objects.push_back(relation_name(c, rel));
  // Completed morphism ids, pair-major.
  std::vector<std::vector<MorId>> ids(n * n);
  std::vector<std::unordered_map<MorId, MorId>> lookup(n * n);  // base morphism -> completed morphism
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t p = a * n + b;
      for (const auto& cls : homs[p].classes) {
        const auto id = static_cast<MorId>(raw.morphisms.size());
        ids[p].push_back(id);
        for (MorId f : cls) lookup[p][f] = id;
        raw.morphisms.push_back({"[" + c.morphism_name(cls.front()) + "]:" + raw.objects[a] + "=>" + raw.objects[b],
                                 raw.objects[a], raw.objects[b]});
        out.arrow_classes.push_back(cls);
      }
    }
  for (std::size_t a = 0; a < n; ++a) {
    auto it = lookup[a * n + a].find(c.identity(out.relations[a].x));
    if (it == lookup[a * n + a].end()) fail(ErrorKind::InvalidInput, "identity does not track");
    raw.identities.emplace_back(raw.objects[a], raw.morphisms[it->second].id);
  }
  // Composition through representatives; every choice must land in one class.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t d = 0; d < n; ++d) {
        const auto& ab = homs[a * n + b].classes;
        const auto& bd = homs[b * n + d].classes;
        const auto& target = lookup[a * n + d];
        for (std::size_t i = 0; i < ab.size(); ++i)
          for (std::size_t j = 0; j < bd.size(); ++j) {
            auto it = target.find(c.compose(bd[j].front(), ab[i].front()));
            if (it == target.end()) fail(ErrorKind::NotACongruence, "composite of tracking arrows does not track");
            for (MorId f : ab[i])
              for (MorId g : bd[j]) {
                ctx.meter().charge();
                auto jt = target.find(c.compose(g, f));
                if (jt == target.end() || jt->second != it->second)
                  fail(ErrorKind::NotACongruence, "composition depends on representatives",
                       {c.morphism_name(g), c.morphism_name(f)});
              }
            raw.compose.push_back({raw.morphisms[ids[b * n + d][j]].id, raw.morphisms[ids[a * n + b][i]].id,
                                   raw.morphisms[it->second].id});
          }
      }
  out.completed = share(validate_category(raw));

  // Embedding: X -> Gamma(X), f -> [f].
  std::vector<int> free_of(c.num_objects(), -1);
  for (std::size_t i = 0; i < n; ++i)
    if (out.relations[i].is_free(c)) free_of[out.relations[i].x] = static_cast<int>(i);
  out.embedding.source = out.base;
  out.embedding.target = out.completed;
  for (ObjId x = 0; x < static_cast<ObjId>(c.num_objects()); ++x) out.embedding.on_objects.push_back(free_of[x]);
  for (MorId f = 0; f < static_cast<MorId>(c.num_morphisms()); ++f) {
    const std::size_t p = static_cast<std::size_t>(free_of[c.dom(f)]) * n + free_of[c.cod(f)];
    out.embedding.on_morphisms.push_back(lookup[p].at(f));
  }
  validate_functor(out.embedding);
  return out;
}

ExCompletion reduce_excom(const ExCompletion& full) {
  Skeleton sk = skeleton(full.completed);
  ExCompletion out;
  out.base = full.base;
  out.completed = sk.sub.category;
  out.reduced = true;
  for (ObjId x : sk.sub.objects) out.relations.push_back(full.relations[x]);
  for (MorId m : sk.sub.inclusion.on_morphisms) out.arrow_classes.push_back(full.arrow_classes[m]);
  out.embedding = compose_functors(sk.retraction, full.embedding);
  return out;
}

namespace {

json relation_json(const FinCategory& c, const PseudoEqRelation& rel) {
  json legs = json::array();
  for (MorId l : rel.pullback.legs) legs.push_back(c.morphism_name(l));
  return {{"X", c.object_name(rel.x)},
          {"R", c.object_name(rel.r)},
          {"r1", c.morphism_name(rel.r1)},
          {"r2", c.morphism_name(rel.r2)},
          {"rho", c.morphism_name(rel.rho)},
          {"sigma", c.morphism_name(rel.sigma)},
          {"tau", c.morphism_name(rel.tau)},
          {"pullback", {{"apex", c.object_name(rel.pullback.apex)}, {"legs", legs}}}};
}

}  // namespace

json excom_to_json(const ExCompletion& e) {
  const auto& c = *e.base;
  const auto& k = *e.completed;
  json doc = category_to_json(k);
  doc["reduced"] = e.reduced;
  doc["base_digest"] = content_digest(category_to_json(c).dump());
  json prov = json::object();
  for (ObjId x = 0; x < static_cast<ObjId>(k.num_objects()); ++x) prov[k.object_name(x)] = relation_json(c, e.relations[x]);
  doc["provenance"] = std::move(prov);
  json classes = json::object();
  for (MorId m = 0; m < static_cast<MorId>(k.num_morphisms()); ++m) {
    json members = json::array();
    for (MorId f : e.arrow_classes[m]) members.push_back(c.morphism_name(f));
    classes[k.morphism_name(m)] = std::move(members);
  }
  doc["arrow_classes"] = std::move(classes);
  json cover = json::array();
  for (ObjId x : e.projective_objects()) cover.push_back(k.object_name(x));
  doc["projective_cover"] = std::move(cover);
  json emb = json::object();
  for (ObjId x = 0; x < static_cast<ObjId>(c.num_objects()); ++x) emb[c.object_name(x)] = k.object_name(e.embedding.on_objects[x]);
  doc["embedding"] = std::move(emb);
  return doc;
}

LoadedExcom load_excom(const json& doc) {
  LoadedExcom out;
  out.completed = share(validate_category(parse_raw_category(doc)));
  if (!doc.contains("projective_cover") || !doc["projective_cover"].is_array())
    fail(ErrorKind::InvalidInput, "excom document has no projective_cover list");
  for (const auto& name : doc["projective_cover"]) {
    if (!name.is_string()) fail(ErrorKind::InvalidInput, "projective_cover entries must be strings");
    out.projective.push_back(out.completed->object(name.get<std::string>()));
  }
  out.reduced = doc.value("reduced", false);
  return out;
}

// ---------------------------------------------------------------------------

ProjectiveCoverReport verify_projective_cover(LimitContext& ctx, const std::vector<ObjId>& p) {
  const auto& c = ctx.category();
  ProjectiveCoverReport out;
  std::vector<MorId> regular;
  for (MorId e = 0; e < static_cast<MorId>(c.num_morphisms()); ++e)
    if (ctx.is_regular_epi(e)) regular.push_back(e);
  for (ObjId q : p) {
    for (MorId e : regular) {
      for (MorId g : c.hom(q, c.cod(e))) {
        bool lifted = false;
        for (MorId l : c.hom(q, c.dom(e)))
          if (c.compose(e, l) == g) {
            lifted = true;
            break;
          }
        if (!lifted) {
          out.holds = false;
          out.not_projective = ProjectiveCoverReport::NotProjective{q, e, g};
          break;
        }
      }
      if (out.not_projective) break;
    }
    if (out.not_projective) break;
  }
  out.covers.assign(c.num_objects(), kNoMorphism);
  for (ObjId b = 0; b < static_cast<ObjId>(c.num_objects()); ++b) {
    for (ObjId q : p) {
      for (MorId e : c.hom(q, b))
        if (ctx.is_regular_epi(e)) {
          out.covers[b] = e;
          break;
        }
      if (out.covers[b] != kNoMorphism) break;
    }
    if (out.covers[b] == kNoMorphism && !out.uncovered) {
      out.holds = false;
      out.uncovered = b;
    }
  }
  return out;
}

bool ExactnessReport::holds() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const ExactnessClause& c) { return c.holds; });
}

namespace {

ExactnessClause finite_limits_clause(LimitContext& ctx) {
  const auto& c = ctx.category();
  const auto n = static_cast<ObjId>(c.num_objects());
  ExactnessClause out{"finite_limits"};
  auto bad = [&](std::string what, std::vector<std::string> w) {
    out.holds = false;
    out.counterexample = std::move(what);
    out.witnesses = std::move(w);
  };
  if (!ctx.first_limit(Diagram::terminal())) {
    bad("no terminal object", {});
    return out;
  }
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = a; b < n; ++b)
      if (!ctx.first_limit(Diagram::product({a, b}))) {
        bad("no product of (" + c.object_name(a) + ", " + c.object_name(b) + ")", {c.object_name(a), c.object_name(b)});
        return out;
      }
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b) {
      auto h = c.hom(a, b);
      for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = i + 1; j < h.size(); ++j)
          if (!ctx.first_limit(Diagram::equalizer(c, h[i], h[j]))) {
            bad("no equalizer of (" + c.morphism_name(h[i]) + ", " + c.morphism_name(h[j]) + ")",
                {c.morphism_name(h[i]), c.morphism_name(h[j])});
            return out;
          }
    }
  for (ObjId t = 0; t < n; ++t) {
    auto in = c.incoming(t);
    for (std::size_t i = 0; i < in.size(); ++i)
      for (std::size_t j = i; j < in.size(); ++j)
        if (!ctx.first_limit(Diagram::pullback(c, in[i], in[j]))) {
          bad("no pullback of (" + c.morphism_name(in[i]) + ", " + c.morphism_name(in[j]) + ")",
              {c.morphism_name(in[i]), c.morphism_name(in[j])});
          return out;
        }
  }
  return out;
}

ExactnessClause image_clause(LimitContext& ctx) {
  const auto& c = ctx.category();
  ExactnessClause out{"image_factorizations"};
  for (MorId f = 0; f < static_cast<MorId>(c.num_morphisms()); ++f)
    if (!image_factorization(ctx, f)) {
      out.holds = false;
      out.counterexample = "no image factorization of " + c.morphism_name(f);
      out.witnesses = {c.morphism_name(f)};
      return out;
    }
  return out;
}

// (r1, r2): R -> X is an equivalence relation, tested on generalized elements.
bool is_equivalence_relation(const FinCategory& c, MorId r1, MorId r2) {
  const ObjId r = c.dom(r1), x = c.cod(r1);
  for (ObjId z = 0; z < static_cast<ObjId>(c.num_objects()); ++z) {
    std::set<std::pair<MorId, MorId>> rel;
    for (MorId a : c.hom(z, r))
      if (!rel.insert({c.compose(r1, a), c.compose(r2, a)}).second) return false;  // not jointly monic
    for (MorId e : c.hom(z, x))
      if (!rel.count({e, e})) return false;
    for (const auto& [p, q] : rel)
      if (!rel.count({q, p})) return false;
    for (const auto& [p, q] : rel)
      for (auto it = rel.lower_bound({q, kNoMorphism}); it != rel.end() && it->first == q; ++it)
        if (!rel.count({p, it->second})) return false;
  }
  return true;
}

ExactnessClause effective_clause(LimitContext& ctx) {
  const auto& c = ctx.category();
  ExactnessClause out{"effective_equivalence_relations"};
  for (ObjId x = 0; x < static_cast<ObjId>(c.num_objects()); ++x)
    for (ObjId r = 0; r < static_cast<ObjId>(c.num_objects()); ++r) {
      auto h = c.hom(r, x);
      for (MorId r1 : h)
        for (MorId r2 : h) {
          ctx.meter().charge();
          if (!is_equivalence_relation(c, r1, r2)) continue;
          MorId q = coequalizer(ctx, r1, r2);
          std::string why;
          if (q == kNoMorphism) {
            why = "no coequalizer";
          } else {
            Diagram kp = Diagram::pullback(c, q, q);
            Cone cone{r, {r1, r2, c.compose(q, r1)}};
            if (!ctx.is_limit(kp, cone, false).holds) why = "not the kernel pair of its coequalizer";
          }
          if (!why.empty()) {
            out.holds = false;
            out.counterexample = "equivalence relation (" + c.morphism_name(r1) + ", " + c.morphism_name(r2) + ") " + why;
            out.witnesses = {c.morphism_name(r1), c.morphism_name(r2)};
            return out;
          }
        }
    }
  return out;
}

ExactnessClause stability_clause(LimitContext& ctx) {
  const auto& c = ctx.category();
  ExactnessClause out{"pullback_stable_regular_epis"};
  for (MorId e = 0; e < static_cast<MorId>(c.num_morphisms()); ++e) {
    if (!ctx.is_regular_epi(e)) continue;
    for (MorId g : c.incoming(c.cod(e))) {
      auto pb = ctx.first_limit(Diagram::pullback(c, e, g));
      std::string why;
      if (!pb)
        why = "has no pullback along ";
      else if (!ctx.is_regular_epi(pb->legs[1]))
        why = "is not stable under pullback along ";
      if (!why.empty()) {
        out.holds = false;
        out.counterexample = "regular epi " + c.morphism_name(e) + " " + why + c.morphism_name(g);
        out.witnesses = {c.morphism_name(e), c.morphism_name(g)};
        return out;
      }
    }
  }
  return out;
}

}  // namespace

ExactnessReport verify_exactness(LimitContext& ctx) {
  ExactnessReport out;
  out.clauses.push_back(finite_limits_clause(ctx));
  out.clauses.push_back(image_clause(ctx));
  out.clauses.push_back(effective_clause(ctx));
  out.clauses.push_back(stability_clause(ctx));
  return out;
}

}  // namespace exwlex
