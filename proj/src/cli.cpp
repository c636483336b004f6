#include "exwlex/cli.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "CLI11.hpp"
#include "exwlex/corpus.hpp"
#include "exwlex/error.hpp"
#include "exwlex/excom.hpp"
#include "exwlex/full.hpp"
#include "exwlex/homotopy.hpp"
#include "exwlex/io.hpp"
#include "exwlex/lcc.hpp"
#include "exwlex/report.hpp"

namespace exwlex {

namespace {

struct Globals {
  SearchOptions search;
  bool recheck = false;
  bool local_mode = false;
  bool reduce = false;
  std::string output;
};

CategoryPtr load_cat(RunReport& r, const std::string& path) {
  r.add_input(path);
  return share(load_category(path));
}

json load_doc(RunReport& r, const std::string& path) {
  r.add_input(path);
  return load_json_file(path);
}

std::string mname(const FinCategory& c, MorId m) { return m == kNoMorphism ? std::string() : c.morphism_name(m); }

json pair_json(const FinCategory& c, ObjId a, ObjId b) { return json::array({c.object_name(a), c.object_name(b)}); }

/// Reads {"diagram": {...}, "cone": {...}} from a "cone" document.
std::pair<Diagram, Cone> load_cone(RunReport& r, const FinCategory& c, const std::string& path) {
  const json doc = load_doc(r, path);
  const json& d = datum_payload(doc, "cone");
  if (!d.contains("diagram") || !d.contains("cone")) fail(ErrorKind::InvalidInput, "cone file needs 'diagram' and 'cone'");
  Diagram dia = diagram_from_json(c, d.at("diagram"));
  Cone cone = cone_from_json(c, d.at("cone"));
  if (!is_cone(c, dia, cone)) fail(ErrorKind::InvalidInput, "the legs do not form a cone over the diagram");
  return {std::move(dia), std::move(cone)};
}

PathStructure load_structure(RunReport& r, LimitContext*& ctx_out, std::unique_ptr<LimitContext>& holder,
                             const std::string& path, const Globals& g) {
  json doc = load_doc(r, path);
  auto cat = share(validate_category(parse_raw_category(doc)));
  holder = std::make_unique<LimitContext>(cat, g.search);
  ctx_out = holder.get();
  r.set_local_mode(g.local_mode);
  return load_path_structure(*holder, doc, g.local_mode);
}

json exactness_json(const ExactnessReport& e) {
  json out = json::array();
  for (const auto& cl : e.clauses) {
    json j = {{"clause", cl.name}, {"holds", cl.holds}};
    if (!cl.counterexample.empty()) j["counterexample"] = cl.counterexample;
    if (!cl.witnesses.empty()) j["witnesses"] = cl.witnesses;
    out.push_back(std::move(j));
  }
  return out;
}

json cc_table(const FinCategory& c, const CartesianClosedReport& rep) {
  json pairs = json::array();
  for (const auto& p : rep.pairs) {
    json j = {{"x", c.object_name(p.x)}, {"b", c.object_name(p.b)}};
    if (p.exponential) {
      j["w"] = c.object_name(p.exponential->w);
      j["eval"] = c.morphism_name(p.exponential->eval);
    } else {
      j["reason"] = p.reason;
    }
    pairs.push_back(std::move(j));
  }
  return pairs;
}

json failing_pairs(const FinCategory& c, const CartesianClosedReport& rep) {
  json out = json::array();
  for (auto [x, b] : rep.failing) out.push_back(pair_json(c, x, b));
  return out;
}

std::string class_label(const FinCategory& c, const PosetReflection& p, int cls) {
  if (cls < 0) return {};
  return c.morphism_name(p.elements[p.representative[cls]]);
}

// --- command bodies -------------------------------------------------------------

void cmd_validate(RunReport& r, const Globals& g, const std::string& file) {
  json doc = load_doc(r, file);
  auto cat = share(validate_category(parse_raw_category(doc)));
  r.pass("validate", {{"objects", cat->num_objects()}, {"morphisms", cat->num_morphisms()}});
  if (doc.contains("marked")) {
    LimitContext ctx(cat, g.search);
    r.set_local_mode(g.local_mode);
    load_path_structure(ctx, doc, g.local_mode);
    r.pass("path_structure", g.local_mode ? json("skipped (local-mode)") : json(nullptr));
  }
}

void cmd_limits_find(RunReport& r, const Globals& g, const std::string& file, const std::string& shape,
                     const std::vector<std::string>& at) {
  auto cat = load_cat(r, file);
  LimitContext ctx(cat, g.search);
  Diagram d = diagram_from_json(*cat, {{"shape", shape}, {"at", at}});
  json weak = json::array(), strict = json::array();
  for (const auto& k : ctx.weak_limits(d)) weak.push_back(cone_to_json(*cat, k));
  for (const auto& k : ctx.limits(d)) strict.push_back(cone_to_json(*cat, k));
  if (weak.empty()) {
    r.fail("find", {{"shape", shape}, {"at", at}}, "no weak limit");
    return;
  }
  if (g.recheck) {
    bool ok = true;
    for (const auto& k : ctx.weak_limits(d)) ok = ok && ctx.is_weak_limit(d, k, false).holds;
    for (const auto& k : ctx.limits(d)) ok = ok && ctx.is_limit(d, k, false).holds;
    ok ? r.pass("recheck") : r.fail("recheck");
  }
  r.pass("find", {{"weak_limits", weak}, {"limits", strict}});
}

void cmd_limits_check(RunReport& r, const Globals& g, const std::string& file, const std::string& cone_file) {
  auto cat = load_cat(r, file);
  LimitContext ctx(cat, g.search);
  auto [d, cone] = load_cone(r, *cat, cone_file);
  auto v = ctx.is_weak_limit(d, cone);
  if (!v.holds) {
    r.fail("check_weak", cone_to_json(*cat, *v.counterexample), "competing cone without a mediator");
    return;
  }
  json table = json::array();
  for (const auto& f : v.table) table.push_back({{"competitor", cone_to_json(*cat, f.competitor)}, {"mediator", mname(*cat, f.mediator)}});
  r.pass("check_weak", {{"limit", ctx.is_limit(d, cone, false).holds}, {"table", table}});
  if (g.recheck) recheck_factorizations(*cat, cone, v) ? r.pass("recheck") : r.fail("recheck");
}

void cmd_limits_dbp(RunReport& r, const Globals& g, const std::string& file, const std::string& cone_file,
                    const std::string& arrow) {
  auto cat = load_cat(r, file);
  LimitContext ctx(cat, g.search);
  auto [d, cone] = load_cone(r, *cat, cone_file);
  const MorId f = cat->morphism(arrow);
  if (cat->dom(f) != cone.apex) fail(ErrorKind::InvalidInput, "arrow does not start at the cone apex");
  auto v = determined_by_projections(ctx, cone, f);
  if (v.holds)
    r.pass("dbp", {{"arrow", arrow}});
  else
    r.fail("dbp", json::array({mname(*cat, v.counterexample->first), mname(*cat, v.counterexample->second)}),
           "pair equalized by the legs but not by the arrow");
}

void cmd_excom_build(RunReport& r, const Globals& g, const std::string& file) {
  auto cat = load_cat(r, file);
  LimitContext ctx(cat, g.search);
  Stopwatch clock;
  auto ex = build_excom(ctx);
  const auto full_objects = ex.completed->num_objects();
  if (g.reduce) ex = reduce_excom(ex);
  r.stage_time("build", clock.ms());
  json doc = excom_to_json(ex);
  if (!g.output.empty()) write_json_file(g.output, doc);
  r.pass("build", {{"pass", g.reduce ? "reduced" : "full"},
                   {"objects", ex.completed->num_objects()},
                   {"morphisms", ex.completed->num_morphisms()},
                   {"unreduced_objects", full_objects},
                   {"digest", content_digest(doc.dump())}});
}

void cmd_excom_verify(RunReport& r, const Globals& g, const std::string& file) {
  auto ex = load_excom(load_doc(r, file));
  LimitContext ctx(ex.completed, g.search);
  const auto& c = *ex.completed;
  Stopwatch clock;
  auto exact = verify_exactness(ctx);
  r.stage_time("exactness", clock.ms());
  exact.holds() ? r.pass("exactness", exactness_json(exact)) : r.fail("exactness", exactness_json(exact));
  auto cover = verify_projective_cover(ctx, ex.projective);
  r.stage_time("projective_cover", clock.ms());
  if (cover.holds) {
    json covers = json::object();
    for (std::size_t x = 0; x < cover.covers.size(); ++x) covers[c.object_name(static_cast<ObjId>(x))] = mname(c, cover.covers[x]);
    r.pass("projective_cover", {{"pass", ex.reduced ? "reduced" : "full"}, {"covers", covers}});
  } else if (cover.not_projective) {
    const auto& np = *cover.not_projective;
    r.fail("projective_cover", {{"object", c.object_name(np.object)}, {"epi", mname(c, np.epi)}, {"map", mname(c, np.map)}},
           "object of the cover is not projective");
  } else {
    r.fail("projective_cover", {{"uncovered", c.object_name(*cover.uncovered)}}, "object without a cover");
  }
}

void report_full(RunReport& r, LimitContext& ctx, const FullDiagramDatum& d, const Globals& g, const std::string& check) {
  const auto& c = ctx.category();
  auto v = is_full_diagram(ctx, d);
  if (!v.precondition_failure.empty()) {
    r.fail(check, full_datum_to_json(c, d), v.precondition_failure);
    return;
  }
  if (!v.holds) {
    r.fail(check, full_datum_to_json(c, *v.counterexample), "competitor without (h, P, k)");
    return;
  }
  json table = json::array();
  for (const auto& w : v.table)
    table.push_back({{"competitor", full_datum_to_json(c, w.competitor)}, {"h", mname(c, w.h)}, {"p", cone_to_json(c, w.p)}, {"k", mname(c, w.k)}});
  r.pass(check, {{"datum", full_datum_to_json(c, d)}, {"table", table}});
  if (g.recheck) recheck_full(ctx, d, v) ? r.pass(check + ".recheck") : r.fail(check + ".recheck");
}

void report_depfull(RunReport& r, LimitContext& ctx, const DependentDatum& d, const Globals& g, const std::string& check) {
  const auto& c = ctx.category();
  auto v = is_dependent_full_diagram(ctx, d);
  if (!v.precondition_failure.empty()) {
    r.fail(check, dependent_datum_to_json(c, d), v.precondition_failure);
    return;
  }
  if (!v.holds) {
    r.fail(check, dependent_datum_to_json(c, *v.counterexample), "competitor without (h, P, k)");
    return;
  }
  json table = json::array();
  for (const auto& w : v.table)
    table.push_back({{"competitor", dependent_datum_to_json(c, w.competitor)}, {"h", mname(c, w.h)}, {"p", cone_to_json(c, w.p)}, {"k", mname(c, w.k)}});
  r.pass(check, {{"datum", dependent_datum_to_json(c, d)}, {"table", table}});
  if (g.recheck) recheck_dependent_full(ctx, d, v) ? r.pass(check + ".recheck") : r.fail(check + ".recheck");
}

void report_wexp(RunReport& r, LimitContext& ctx, const WeakExponentialDatum& d, const std::string& check) {
  const auto& c = ctx.category();
  auto v = is_weak_exponential(ctx, d);
  if (!v.precondition_failure.empty())
    r.fail(check, wexp_datum_to_json(c, d), v.precondition_failure);
  else if (!v.holds)
    r.fail(check, wexp_datum_to_json(c, *v.counterexample), "competitor without (h, k)");
  else
    r.pass(check, {{"datum", wexp_datum_to_json(c, d)}, {"competitors", v.table.size()}});
}

void cmd_full_check(RunReport& r, const Globals& g, const std::string& file, const std::string& datum) {
  auto cat = load_cat(r, file);
  LimitContext ctx(cat, g.search);
  report_full(r, ctx, full_datum_from_json(*cat, datum_payload(load_doc(r, datum), "full")), g, "full");
}

void cmd_full_find(RunReport& r, const Globals& g, const std::string& file, const std::string& x, const std::string& y) {
  auto cat = load_cat(r, file);
  LimitContext ctx(cat, g.search);
  auto found = find_full_diagrams(ctx, cat->object(x), cat->object(y));
  json list = json::array();
  for (const auto& d : found) list.push_back(full_datum_to_json(*cat, d));
  if (found.empty()) {
    r.fail("find", json::array({x, y}), "no full diagram");
    return;
  }
  r.pass("find", list);
  if (g.recheck) {
    bool ok = std::all_of(found.begin(), found.end(), [&](const auto& d) { return is_full_diagram(ctx, d).holds; });
    ok ? r.pass("recheck") : r.fail("recheck");
  }
}

void cmd_full_convert(RunReport& r, const Globals& g, const std::string& file, const std::string& datum,
                      const std::string& from, const std::string& to) {
  if ((from == "wexp") == (to == "wexp")) fail(ErrorKind::InvalidInput, "give exactly one of --from wexp or --to wexp");
  auto cat = load_cat(r, file);
  LimitContext ctx(cat, g.search);
  json doc = load_doc(r, datum);
  json converted;
  if (from == "wexp") {
    auto w = wexp_datum_from_json(*cat, datum_payload(doc, "wexp"));
    auto d = full_from_weak_exponential(ctx, w);
    converted = datum_document("full", full_datum_to_json(*cat, d));
    report_full(r, ctx, d, g, "converted");
  } else {
    auto d = full_datum_from_json(*cat, datum_payload(doc, "full"));
    auto w = weak_exponential_from_full(ctx, d);
    converted = datum_document("wexp", wexp_datum_to_json(*cat, w));
    report_wexp(r, ctx, w, "converted");
  }
  if (!g.output.empty()) write_json_file(g.output, converted);
  r.stat("converted", converted);
}

void cmd_depfull_check(RunReport& r, const Globals& g, const std::string& file, const std::string& datum) {
  auto cat = load_cat(r, file);
  LimitContext ctx(cat, g.search);
  report_depfull(r, ctx, dependent_datum_from_json(*cat, datum_payload(load_doc(r, datum), "dependent")), g, "depfull");
}

void cmd_depfull_find(RunReport& r, const Globals& g, const std::string& file, const std::string& y, const std::string& x) {
  auto cat = load_cat(r, file);
  LimitContext ctx(cat, g.search);
  const MorId ym = cat->morphism(y), xm = cat->morphism(x);
  if (cat->cod(ym) != cat->dom(xm)) fail(ErrorKind::InvalidInput, "y and x are not composable");
  auto found = find_dependent_full_diagrams(ctx, ym, xm);
  json list = json::array();
  for (const auto& d : found) list.push_back(dependent_datum_to_json(*cat, d));
  if (found.empty()) {
    r.fail("find", json::array({y, x}), "no dependent full diagram");
    return;
  }
  r.pass("find", list);
  if (g.recheck) {
    bool ok = std::all_of(found.begin(), found.end(), [&](const auto& d) { return is_dependent_full_diagram(ctx, d).holds; });
    ok ? r.pass("recheck") : r.fail("recheck");
  }
}

void cmd_depfull_totfull(RunReport& r, const Globals& g, const std::string& file, const std::string& x, const std::string& y) {
  auto cat = load_cat(r, file);
  LimitContext ctx(cat, g.search);
  auto d = full_from_dependent(ctx, cat->object(x), cat->object(y));
  report_full(r, ctx, d, g, "totfull");
}

void cmd_lcc_adjoints(RunReport& r, const Globals& g, const std::string& file) {
  auto cat = load_cat(r, file);
  LimitContext ctx(cat, g.search);
  auto rep = weak_pullback_adjoints(ctx);
  json table = json::array();
  for (std::size_t i = 0; i < rep.maps.size(); ++i) {
    const auto& m = rep.maps[i];
    json map = json::object();
    for (std::size_t k = 0; k < m.map.size(); ++k)
      map[class_label(*cat, m.source, static_cast<int>(k))] = class_label(*cat, m.target, m.map[k]);
    json j = {{"f", mname(*cat, m.f)}, {"map", map}};
    if (i < rep.adjoints.size() && rep.adjoints[i].exists) {
      json adj = json::object();
      for (std::size_t q = 0; q < rep.adjoints[i].map.size(); ++q)
        adj[class_label(*cat, m.target, static_cast<int>(q))] = class_label(*cat, m.source, rep.adjoints[i].map[q]);
      j["right_adjoint"] = adj;
    }
    table.push_back(std::move(j));
  }
  if (rep.holds) {
    r.pass("adjoints", table);
    if (g.recheck) {
      bool ok = true;
      for (std::size_t i = 0; i < rep.maps.size(); ++i)
        ok = ok && galois_law(rep.maps[i].source.poset, rep.maps[i].target.poset, rep.maps[i].map, rep.adjoints[i].map);
      ok ? r.pass("recheck") : r.fail("recheck");
    }
    return;
  }
  std::string witness;
  for (const auto& m : rep.maps)
    if (m.f == rep.failing) witness = class_label(*cat, m.source, rep.witness);
  r.fail("adjoints", {{"f", mname(*cat, rep.failing)}, {"class", witness}, {"table", table}},
         "weak pullback functor without a right adjoint");
}

void cmd_lcc_wcc(RunReport& r, const Globals& g, const std::string& file, const std::string& x_name, const std::string& b_name) {
  auto cat = load_cat(r, file);
  LimitContext base(cat, g.search);
  auto ex = build_excom(base);
  if (g.reduce) ex = reduce_excom(ex);
  LimitContext completed(ex.completed, g.search);
  const auto& e = *ex.completed;
  const auto projective = ex.projective_objects();

  std::vector<ObjId> xs, bs;
  if (x_name.empty())
    for (ObjId x = 0; x < static_cast<ObjId>(cat->num_objects()); ++x) xs.push_back(x);
  else
    xs.push_back(cat->object(x_name));
  if (b_name.empty()) {
    for (ObjId b = 0; b < static_cast<ObjId>(e.num_objects()); ++b) bs.push_back(b);
  } else if (auto b = e.find_object(b_name)) {
    bs.push_back(*b);
  } else {
    bs.push_back(ex.embedding.map_object(cat->object(b_name)));
  }

  json table = json::array();
  std::size_t both = 0, agree = 0;
  json bad = nullptr;
  for (ObjId x : xs)
    for (ObjId b : bs) {
      json row = {{"x", cat->object_name(x)}, {"b", e.object_name(b)}};
      std::optional<WccResult> w;
      try {
        w = construct_exponential_wcc(base, completed, ex, x, b);
      } catch (const Error& err) {
        if (err.kind() == ErrorKind::BudgetExceeded) throw;
        row["construction"] = std::string(to_string(err.kind()));
      }
      auto exp = find_exponential(completed, ex.embedding.map_object(x), b);
      row["search"] = exp ? json(e.object_name(exp->w)) : json(nullptr);
      if (w) {
        const bool audit = w->weakly_terminal && w->w_weakly_terminal &&
                           std::find(projective.begin(), projective.end(), w->w) != projective.end();
        row["w"] = e.object_name(w->w);
        row["f"] = e.object_name(e.dom(w->phi_mono));
        row["weakly_terminal"] = audit;
        if (!audit && bad.is_null()) bad = row;
        if (exp) {
          ++both;
          const bool iso = find_iso(e, e.dom(w->phi_mono), exp->w) != kNoMorphism;
          agree += iso;
          row["agrees"] = iso;
          if (!iso && bad.is_null()) bad = row;
        }
      }
      table.push_back(std::move(row));
    }
  r.stat("pairs", table.size());
  if (bad.is_null())
    r.pass("wcc", {{"both_succeeded", both}, {"agreements", agree}, {"table", table}});
  else
    r.fail("wcc", bad, "construction failed the weak-terminality audit or disagreed with search");
}

void cmd_verify_cc(RunReport& r, const Globals& g, const std::string& file) {
  auto ex = load_excom(load_doc(r, file));
  LimitContext ctx(ex.completed, g.search);
  const auto& c = *ex.completed;
  auto rep = verify_cartesian_closed(ctx);
  const std::string pass = ex.reduced ? "reduced" : "full";
  if (rep.holds) {
    r.pass("cartesian_closed", {{"pass", pass}, {"pairs", cc_table(c, rep)}});
    if (g.recheck) {
      bool ok = true;
      for (const auto& p : rep.pairs) ok = ok && is_exponential(ctx, p.x, p.b, *p.exponential);
      ok ? r.pass("recheck") : r.fail("recheck");
    }
  } else {
    r.fail("cartesian_closed",
           {{"pass", pass}, {"first", failing_pairs(c, rep)[0]}, {"failing", failing_pairs(c, rep)}, {"pairs", cc_table(c, rep)}},
           "pair without an exponential");
  }
}

void cmd_verify_lcc(RunReport& r, const Globals& g, const std::string& file) {
  auto ex = load_excom(load_doc(r, file));
  LimitContext ctx(ex.completed, g.search);
  const auto& c = *ex.completed;
  auto rep = verify_lcc(ctx);
  json slices = json::array();
  json bad = nullptr;
  for (const auto& s : rep.slices) {
    slices.push_back({{"slice", c.object_name(s.base)}, {"holds", s.report.holds}, {"pairs", s.report.pairs.size()}});
    if (!s.report.holds && bad.is_null()) bad = {{"slice", c.object_name(s.base)}, {"failing_pairs", s.report.failing.size()}};
  }
  if (rep.holds)
    r.pass("locally_cartesian_closed", {{"pass", ex.reduced ? "reduced" : "full"}, {"slices", slices}});
  else
    r.fail("locally_cartesian_closed", bad, "slice that is not cartesian closed");
}

void cmd_path_validate(RunReport& r, const Globals& g, const std::string& file) {
  LimitContext* ctx = nullptr;
  std::unique_ptr<LimitContext> holder;
  auto ps = load_structure(r, ctx, holder, file, g);
  std::size_t fib = std::count(ps.fibration.begin(), ps.fibration.end(), 1);
  std::size_t weq = std::count(ps.weq.begin(), ps.weq.end(), 1);
  r.pass("path_structure", {{"fibrations", fib}, {"weak_equivalences", weq}, {"validated", !g.local_mode}});
}

void cmd_path_ho(RunReport& r, const Globals& g, const std::string& file) {
  LimitContext* ctx = nullptr;
  std::unique_ptr<LimitContext> holder;
  auto ps = load_structure(r, ctx, holder, file, g);
  auto ho = homotopy_category(ps);
  r.pass("ho", {{"objects", ho.category->num_objects()}, {"morphisms", ho.category->num_morphisms()},
                {"category", category_to_json(*ho.category)}});
}

void cmd_hwdp_check(RunReport& r, const Globals& g, const std::string& file, const std::string& datum) {
  LimitContext* ctx = nullptr;
  std::unique_ptr<LimitContext> holder;
  auto ps = load_structure(r, ctx, holder, file, g);
  const auto& c = ctx->category();
  auto d = hwdp_datum_from_json(c, datum_payload(load_doc(r, datum), "hwdp"));
  auto v = is_hwdp(*ctx, ps, d);
  if (!v.precondition_failure.empty()) {
    r.fail("hwdp", hwdp_datum_to_json(c, d), v.precondition_failure);
  } else if (!v.holds) {
    r.fail("hwdp", {{"u_prime", mname(c, v.counterexample->first)}, {"e_prime", mname(c, v.counterexample->second)}},
           "competitor without a homotopy factorization");
  } else {
    json table = json::array();
    for (const auto& w : v.table)
      table.push_back({{"u_prime", mname(c, w.u_prime)}, {"e_prime", mname(c, w.e_prime)}, {"k", mname(c, w.k)}, {"homotopy", mname(c, w.homotopy)}});
    r.pass("hwdp", {{"datum", hwdp_datum_to_json(c, d)}, {"table", table}});
  }
}

void cmd_hwdp_from_wdp(RunReport& r, const Globals& g, const std::string& file, const std::string& datum) {
  LimitContext* ctx = nullptr;
  std::unique_ptr<LimitContext> holder;
  auto ps = load_structure(r, ctx, holder, file, g);
  const auto& c = ctx->category();
  auto wdp = dependent_datum_from_json(c, datum_payload(load_doc(r, datum), "dependent"));
  auto h = hwdp_from_wdp(*ctx, ps, wdp);
  auto v = is_hwdp(*ctx, ps, h);
  json out = datum_document("hwdp", hwdp_datum_to_json(c, h));
  if (!g.output.empty()) write_json_file(g.output, out);
  if (v.holds)
    r.pass("from_wdp", {{"hwdp", out}, {"u_fibration", static_cast<bool>(ps.is_fibration(h.u))}});
  else
    r.fail("from_wdp", out, v.precondition_failure.empty() ? "result is not an hwdp" : v.precondition_failure);
}

void cmd_hofull_check(RunReport& r, const Globals& g, const std::string& file, const std::string& datum) {
  LimitContext* ctx = nullptr;
  std::unique_ptr<LimitContext> holder;
  auto ps = load_structure(r, ctx, holder, file, g);
  const auto& c = ctx->category();
  auto d = dependent_datum_from_json(c, datum_payload(load_doc(r, datum), "dependent"));
  auto v = is_homotopy_full_diagram(ps, d);
  if (!v.precondition_failure.empty())
    r.fail("hofull", dependent_datum_to_json(c, d), v.precondition_failure);
  else if (!v.holds)
    r.fail("hofull", dependent_datum_to_json(c, *v.counterexample), "competitor without a homotopy factorization");
  else
    r.pass("hofull", dependent_datum_to_json(c, d));
}

void cmd_pipeline(RunReport& r, const Globals& g, const std::string& file) {
  LimitContext* ctx = nullptr;
  std::unique_ptr<LimitContext> holder;
  auto ps = load_structure(r, ctx, holder, file, g);
  Stopwatch clock;
  auto rep = pipeline_lccexh(*ctx, ps);
  r.stage_time("pipeline", clock.ms());
  for (const auto& s : rep.stages) {
    json w = {{"detail", s.detail}};
    if (!s.witnesses.empty()) w["witnesses"] = s.witnesses;
    if (s.holds)
      r.pass("pipeline." + s.name, w);
    else
      r.fail("pipeline." + s.name, w, s.detail);
  }
}

void cmd_corpus_list(RunReport& r, const std::string& dir) {
  auto corpus = load_corpus(dir);
  r.add_input(corpus.file);
  json list = json::array();
  for (const auto& e : corpus.entries) {
    json j = {{"name", e.name}};
    if (e.category) j["category"] = e.category->filename().string();
    if (e.path_structure) j["path_structure"] = e.path_structure->filename().string();
    if (e.local_mode) j["local_mode"] = true;
    if (!e.suite.empty()) j["suite"] = e.suite;
    list.push_back(std::move(j));
  }
  r.pass("list", list);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite checks for exact completions of weakly lex categories", "exwlex"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--budget-cones", g.search.cone_budget, "cone enumeration cap");
  app.add_option("--budget-search", g.search.search_budget, "search step cap");
  app.add_option("--workers", g.search.workers, "worker threads")->check(CLI::Range(1u, 256u));
  app.add_flag("--recheck", g.recheck, "re-verify every reported witness");
  app.add_flag("--local-mode", g.local_mode, "skip global path-structure validation");
  app.add_option("-o,--output", g.output, "output file");

  std::function<void(RunReport&)> action;
  std::string command;
  std::string file, file2, shape, arrow, x, y, from, to, only;
  std::vector<std::string> at;

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    auto* s = parent->add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  auto bind = [&](CLI::App* s, std::string label, std::function<void(RunReport&)> body) {
    s->callback([&, label = std::move(label), body = std::move(body)] {
      command = label;
      action = body;
    });
  };
  auto need_file = [&](CLI::App* s, const char* what = "input file") { s->add_option("file", file, what)->required(); };

  auto* validate = leaf(&app, "validate", "validate a category file");
  need_file(validate);
  bind(validate, "validate", [&](RunReport& r) { cmd_validate(r, g, file); });

  auto* limits = leaf(&app, "limits", "weak and strict limits");
  limits->require_subcommand(1);
  auto* lfind = leaf(limits, "find", "all weak limits of a named diagram");
  need_file(lfind);
  lfind->add_option("--shape", shape)->required()->check(CLI::IsMember({"terminal", "product", "pullback", "equalizer"}));
  lfind->add_option("--at", at, "object or morphism ids");
  bind(lfind, "limits find", [&](RunReport& r) { cmd_limits_find(r, g, file, shape, at); });
  auto* lcheck = leaf(limits, "check-weak", "weak limit verdict for a cone");
  need_file(lcheck);
  lcheck->add_option("--cone", file2)->required();
  bind(lcheck, "limits check-weak", [&](RunReport& r) { cmd_limits_check(r, g, file, file2); });
  auto* ldbp = leaf(limits, "dbp", "determined by projections");
  need_file(ldbp);
  ldbp->add_option("--cone", file2)->required();
  ldbp->add_option("--arrow", arrow)->required();
  bind(ldbp, "limits dbp", [&](RunReport& r) { cmd_limits_dbp(r, g, file, file2, arrow); });

  auto* excom = leaf(&app, "excom", "exact completion");
  excom->require_subcommand(1);
  auto* ebuild = leaf(excom, "build", "build the completion");
  need_file(ebuild);
  ebuild->add_flag("--reduce", g.reduce, "one object per isomorphism class");
  bind(ebuild, "excom build", [&](RunReport& r) { cmd_excom_build(r, g, file); });
  auto* everify = leaf(excom, "verify", "exactness and projective cover audits");
  need_file(everify);
  bind(everify, "excom verify", [&](RunReport& r) { cmd_excom_verify(r, g, file); });

  auto* full = leaf(&app, "full", "full diagrams");
  full->require_subcommand(1);
  auto* fcheck = leaf(full, "check", "check a full diagram datum");
  need_file(fcheck);
  fcheck->add_option("--datum", file2)->required();
  bind(fcheck, "full check", [&](RunReport& r) { cmd_full_check(r, g, file, file2); });
  auto* ffind = leaf(full, "find", "all full diagrams for (X, Y)");
  need_file(ffind);
  ffind->add_option("--x", x)->required();
  ffind->add_option("--y", y)->required();
  bind(ffind, "full find", [&](RunReport& r) { cmd_full_find(r, g, file, x, y); });
  auto* fconv = leaf(full, "convert", "weak exponential <-> full diagram");
  need_file(fconv);
  fconv->add_option("--datum", file2)->required();
  fconv->add_option("--from", from)->check(CLI::IsMember({"wexp"}));
  fconv->add_option("--to", to)->check(CLI::IsMember({"wexp"}));
  bind(fconv, "full convert", [&](RunReport& r) { cmd_full_convert(r, g, file, file2, from, to); });

  auto* dep = leaf(&app, "depfull", "dependent full diagrams");
  dep->require_subcommand(1);
  auto* dcheck = leaf(dep, "check", "check a dependent datum");
  need_file(dcheck);
  dcheck->add_option("--datum", file2)->required();
  bind(dcheck, "depfull check", [&](RunReport& r) { cmd_depfull_check(r, g, file, file2); });
  auto* dfind = leaf(dep, "find", "all dependent full diagrams over (y, x)");
  need_file(dfind);
  dfind->add_option("--y", y)->required();
  dfind->add_option("--x", x)->required();
  bind(dfind, "depfull find", [&](RunReport& r) { cmd_depfull_find(r, g, file, y, x); });
  auto* dtot = leaf(dep, "totfull", "full diagram from a dependent one over the terminal object");
  need_file(dtot);
  dtot->add_option("--x", x)->required();
  dtot->add_option("--y", y)->required();
  bind(dtot, "depfull totfull", [&](RunReport& r) { cmd_depfull_totfull(r, g, file, x, y); });

  auto* lcc = leaf(&app, "lcc", "cartesian closure");
  lcc->require_subcommand(1);
  auto* adj = leaf(lcc, "adjoints", "right adjoints to weak pullback functors");
  need_file(adj);
  bind(adj, "lcc adjoints", [&](RunReport& r) { cmd_lcc_adjoints(r, g, file); });
  auto* wcc = leaf(lcc, "wcc", "exponential built from a full diagram");
  need_file(wcc);
  wcc->add_option("--x", x, "base object (all when omitted)");
  wcc->add_option("--b", y, "completed object, or base object through the embedding (all when omitted)");
  wcc->add_flag("--reduce", g.reduce);
  bind(wcc, "lcc wcc", [&](RunReport& r) { cmd_lcc_wcc(r, g, file, x, y); });
  auto* vcc = leaf(lcc, "verify-cc", "exponentials for all pairs");
  need_file(vcc, "excom file");
  bind(vcc, "lcc verify-cc", [&](RunReport& r) { cmd_verify_cc(r, g, file); });
  auto* vlcc = leaf(lcc, "verify-lcc", "every slice cartesian closed");
  need_file(vlcc, "excom file");
  bind(vlcc, "lcc verify-lcc", [&](RunReport& r) { cmd_verify_lcc(r, g, file); });

  auto* path = leaf(&app, "path", "path structures");
  path->require_subcommand(1);
  auto* pval = leaf(path, "validate", "check the path-category axioms");
  need_file(pval);
  bind(pval, "path validate", [&](RunReport& r) { cmd_path_validate(r, g, file); });
  auto* pho = leaf(path, "ho", "homotopy category");
  need_file(pho);
  bind(pho, "path ho", [&](RunReport& r) { cmd_path_ho(r, g, file); });
  auto* hwdp = leaf(path, "hwdp", "homotopy weak dependent products");
  hwdp->require_subcommand(1);
  auto* hcheck = leaf(hwdp, "check", "check an hwdp datum");
  need_file(hcheck);
  hcheck->add_option("--datum", file2)->required();
  bind(hcheck, "path hwdp check", [&](RunReport& r) { cmd_hwdp_check(r, g, file, file2); });
  auto* hfrom = leaf(hwdp, "from-wdp", "fibrant replacement of a weak dependent product");
  need_file(hfrom);
  hfrom->add_option("--datum", file2)->required();
  bind(hfrom, "path hwdp from-wdp", [&](RunReport& r) { cmd_hwdp_from_wdp(r, g, file, file2); });
  auto* hofull = leaf(path, "hofull", "homotopy full diagrams");
  hofull->require_subcommand(1);
  auto* hfcheck = leaf(hofull, "check", "check a dependent datum up to homotopy");
  need_file(hfcheck);
  hfcheck->add_option("--datum", file2)->required();
  bind(hfcheck, "path hofull check", [&](RunReport& r) { cmd_hofull_check(r, g, file, file2); });
  auto* ppipe = leaf(path, "pipeline-lccexh", "base -> Ho -> dependent full audit -> excom -> verify-lcc");
  need_file(ppipe);
  bind(ppipe, "path pipeline-lccexh", [&](RunReport& r) { cmd_pipeline(r, g, file); });

  auto* pipe = leaf(&app, "pipeline-lccexh", "same as path pipeline-lccexh");
  need_file(pipe);
  bind(pipe, "pipeline-lccexh", [&](RunReport& r) { cmd_pipeline(r, g, file); });

  auto* corpus = leaf(&app, "corpus", "fixture corpus");
  corpus->require_subcommand(1);
  auto* clist = leaf(corpus, "list", "list fixtures");
  need_file(clist, "corpus directory or file");
  bind(clist, "corpus list", [&](RunReport& r) { cmd_corpus_list(r, file); });
  auto* crun = leaf(corpus, "run", "run the acceptance matrix");
  need_file(crun, "corpus directory or file");
  crun->add_option("--only", only, "single fixture");
  std::optional<RunReport> batch;
  bind(crun, "corpus run", [&](RunReport&) {
    auto c = load_corpus(file);
    batch = run_corpus(c, g.search, only);
  });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "exwlex: " << e.what() << "\n" << app.help();
    return 2;
  }

  RunReport report(command);
  try {
    action(report);
    if (batch) report = std::move(*batch);
  } catch (const Error& e) {
    report.error(command, e);
  } catch (const json::exception& e) {
    report.error(command, Error(ErrorKind::InvalidInput, e.what()));
  } catch (const std::exception& e) {
    report.error(command, Error(ErrorKind::InvalidInput, e.what()));
  }
  report.stat("budget", {{"cones", g.search.cone_budget}, {"search", g.search.search_budget}, {"workers", g.search.workers}});
  const json doc = report.to_json();
  const bool writes_data = command == "excom build" || command == "path hwdp from-wdp" || command == "full convert";
  if (!g.output.empty() && !writes_data) write_json_file(g.output, doc);
  out << doc.dump(2) << '\n';
  return report.exit_code();
}

}  // namespace exwlex
