#include "exwlex/corpus.hpp"

#include "exwlex/error.hpp"
#include "exwlex/excom.hpp"
#include "exwlex/lcc.hpp"

namespace exwlex {

namespace {

json opt(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

template <class Pred>
bool all_pairs(ObjId n, Pred&& ok) {
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      if (!ok(x, y)) return false;
  return true;
}

template <class Pred>
bool all_composable(const FinCategory& c, Pred&& ok) {
  for (MorId x = 0; x < static_cast<MorId>(c.num_morphisms()); ++x)
    for (MorId y : c.incoming(c.dom(x)))
      if (!ok(y, x)) return false;
  return true;
}

json names(const FinCategory& c, std::initializer_list<MorId> ms) {
  json out = json::array();
  for (MorId m : ms) out.push_back(c.morphism_name(m));
  return out;
}

}  // namespace

json FixtureProperties::to_json() const {
  json j = {{"wlex", wlex}};
  if (!wlex) j["wlex_missing"] = wlex_missing;
  j["poset"] = poset;
  j["binary_products"] = binary_products;
  j["pullbacks"] = pullbacks;
  j["adjoints"] = opt(adjoints);
  j["full"] = opt(full);
  j["wexp"] = opt(wexp);
  j["depfull"] = opt(depfull);
  j["wdp"] = opt(wdp);
  j["cc"] = opt(cc);
  j["lcc"] = opt(lcc);
  return j;
}

FixtureProperties compute_properties(LimitContext& ctx) {
  const auto& c = ctx.category();
  const auto n = static_cast<ObjId>(c.num_objects());
  FixtureProperties p;
  auto audit = wlex_audit(ctx);
  p.wlex = audit.passed;
  p.wlex_missing = audit.missing;
  p.poset = c.is_poset();
  p.binary_products = has_binary_products(ctx);
  p.pullbacks = has_pullbacks(ctx);
  try {
    p.adjoints = weak_pullback_adjoints(ctx).holds;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoWeakPullback) throw;
  }
  p.full = all_pairs(n, [&](ObjId x, ObjId y) { return !find_full_diagrams(ctx, x, y).empty(); });
  p.wexp = all_pairs(n, [&](ObjId x, ObjId y) { return !find_weak_exponentials(ctx, x, y).empty(); });
  p.depfull = all_composable(c, [&](MorId y, MorId x) { return !find_dependent_full_diagrams(ctx, y, x).empty(); });
  p.wdp = all_composable(c, [&](MorId y, MorId x) { return !find_weak_dependent_products(ctx, y, x).empty(); });
  if (p.wlex) {
    auto ex = reduce_excom(build_excom(ctx));
    LimitContext ectx(ex.completed, ctx.options());
    p.cc = verify_cartesian_closed(ectx).holds;
    p.lcc = verify_lcc(ectx).holds;
  }
  return p;
}

std::vector<Implication> implication_matrix(const FixtureProperties& p) {
  auto both = [](std::optional<bool> a, std::optional<bool> b) -> std::optional<bool> {
    if (!a || !b) return std::nullopt;
    return *a && *b;
  };
  return {
      {"adjoints_and_full_imply_cc", both(p.adjoints, p.full), p.cc},
      {"adjoints_and_cc_imply_wexp", both(p.adjoints, p.cc), p.wexp},
      {"products_and_wexp_imply_full", both(p.binary_products, p.wexp), p.full},
      {"depfull_implies_lcc", p.depfull, p.lcc},
      {"lcc_implies_wdp", p.lcc, p.wdp},
      {"pullbacks_and_wdp_imply_depfull", both(p.pullbacks, p.wdp), p.depfull},
  };
}

// --- homotopy suites --------------------------------------------------------------

RunReport path_suite(LimitContext& ctx, const PathStructure& ps) {
  const auto& c = ctx.category();
  const auto n = static_cast<MorId>(c.num_morphisms());
  RunReport r("path-suite");
  Stopwatch clock;

  std::optional<QuotientCategory> ho;
  try {
    ho = homotopy_category(ps);
    r.pass("congruence", {{"classes", ho->category->num_morphisms()}});
  } catch (const Error& e) {
    r.error("congruence", e);
    return r;
  }

  try {
    std::size_t cases = 0;
    json bad = nullptr;
    for (MorId f = 0; f < n && bad.is_null(); ++f) {
      if (!ps.is_fibration(f)) continue;
      for (MorId g : c.incoming(c.cod(f)))
        for (MorId k : c.hom(c.dom(g), c.dom(f))) {
          if (!bad.is_null() || are_homotopic(ps, c.compose(f, k), g) == kNoMorphism) continue;
          ++cases;
          try {
            strictify(ps, f, g, k);
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoStrictification) throw;
            bad = names(c, {f, g, k});
          }
        }
    }
    if (bad.is_null())
      r.pass("strictification", {{"triangles", cases}});
    else
      r.fail("strictification", bad, "homotopy triangle without strictification");
  } catch (const Error& e) {
    r.error("strictification", e);
  }

  try {
    std::size_t squares = 0, constructed = 0;
    json bad = nullptr;
    for (MorId f = 0; f < n && bad.is_null(); ++f) {
      if (!ps.is_weq(f)) continue;
      for (MorId k : c.outgoing(c.dom(f)))
        for (MorId g : c.outgoing(c.cod(k))) {
          if (!ps.is_fibration(g)) continue;
          for (MorId l : c.hom(c.cod(f), c.cod(g))) {
            if (!bad.is_null() || c.compose(g, k) != c.compose(l, f)) continue;
            ++squares;
            try {
              auto fr = homotopy_diagonal_filler(ctx, ps, f, k, g, l);
              constructed += fr.constructed;
              if (!fr.unique_up_to_homotopy) bad = names(c, {f, k, g, l});
            } catch (const Error& e) {
              if (e.kind() != ErrorKind::NoFiller) throw;
              bad = names(c, {f, k, g, l});
            }
          }
        }
    }
    if (bad.is_null())
      r.pass("filler_uniqueness", {{"squares", squares}, {"constructed", constructed}});
    else
      r.fail("filler_uniqueness", bad, "filler missing or not unique up to fibrewise homotopy");
  } catch (const Error& e) {
    r.error("filler_uniqueness", e);
  }

  try {
    std::size_t data = 0;
    json bad = nullptr;
    for (MorId f = 0; f < n && bad.is_null(); ++f) {
      if (!ps.is_fibration(f)) continue;
      for (MorId g : c.incoming(c.dom(f))) {
        if (!ps.is_fibration(g) || !bad.is_null()) continue;
        for (const auto& d : find_hwdp(ctx, ps, g, f)) {
          ++data;
          if (!is_homotopy_full_diagram(ps, d.as_dependent()).holds) {
            bad = hwdp_datum_to_json(c, d);
            break;
          }
        }
      }
    }
    if (bad.is_null())
      r.pass("hwdp_implies_hofull", {{"data", data}});
    else
      r.fail("hwdp_implies_hofull", bad);
  } catch (const Error& e) {
    r.error("hwdp_implies_hofull", e);
  }

  try {
    std::size_t data = 0;
    json bad = nullptr;
    for (MorId x = 0; x < n && bad.is_null(); ++x)
      for (MorId y : c.incoming(c.dom(x))) {
        if (!bad.is_null()) break;
        for (const auto& d : homotopy_dependent_data(ps, y, x)) {
          if (!is_homotopy_full_diagram(ps, d).holds) continue;
          ++data;
          if (!ho_image_full_check(ps, *ho, d).holds) {
            bad = dependent_datum_to_json(c, d);
            break;
          }
        }
      }
    if (bad.is_null())
      r.pass("hofull_image_in_ho", {{"data", data}});
    else
      r.fail("hofull_image_in_ho", bad);
  } catch (const Error& e) {
    r.error("hofull_image_in_ho", e);
  }
  r.stage_time("path_suite", clock.ms());
  return r;
}

RunReport interval_suite(LimitContext& ctx, const PathStructure& ps) {
  const auto& c = ctx.category();
  RunReport r("interval-suite");
  r.set_local_mode(true);
  auto run = [&](const std::string& name, auto&& body) {
    try {
      body();
    } catch (const Error& e) {
      r.error(name, e);
    }
  };
  const MorId a0 = c.morphism("T->A:0"), a1 = c.morphism("T->A:1"), bang = c.morphism("A->T:00");
  const MorId id_a = c.identity(c.object("A")), id_t = c.identity(c.object("T"));

  run("homotopic_pair", [&] {
    const MorId h = are_homotopic(ps, a0, a1);
    if (h != kNoMorphism)
      r.pass("homotopic_pair", {{"f", c.morphism_name(a0)}, {"g", c.morphism_name(a1)}, {"H", c.morphism_name(h)}});
    else
      r.fail("homotopic_pair", names(c, {a0, a1}));
  });
  run("strictify", [&] {
    const MorId k = c.morphism("A->A:11"), g = c.morphism("A->A:00");
    const MorId k2 = strictify(ps, id_a, g, k);
    if (k2 != k)
      r.pass("strictify", {{"k", c.morphism_name(k)}, {"k_prime", c.morphism_name(k2)}});
    else
      r.fail("strictify", names(c, {k}), "expected a different strict lift");
  });
  run("filler", [&] {
    auto f = homotopy_diagonal_filler(ctx, ps, bang, id_a, bang, id_t);
    json fillers = json::array();
    for (MorId d : f.fillers) fillers.push_back(c.morphism_name(d));
    if (f.constructed && f.unique_up_to_homotopy && f.fillers.size() > 1)
      r.pass("filler", {{"d", c.morphism_name(f.d)}, {"fillers", fillers}});
    else
      r.fail("filler", fillers);
  });
  run("hwdp_slack", [&] {
    auto pb = ctx.first_limit(Diagram::pullback(c, id_t, id_t));
    HwdpDatum d{bang, id_t, id_t, *pb, a0};
    const bool ho = is_hwdp(ctx, ps, d).holds;
    const bool strict = is_weak_dependent_product(ctx, d.as_dependent()).holds;
    if (ho && !strict)
      r.pass("hwdp_slack", hwdp_datum_to_json(c, d));
    else
      r.fail("hwdp_slack", hwdp_datum_to_json(c, d), "expected homotopy pass and strict failure");
  });
  run("from_wdp", [&] {
    auto sq = ctx.first_limit(Diagram::pullback(c, bang, id_t));
    DependentDatum wdp{bang, id_t, bang, *sq, sq->legs[0]};
    auto h = hwdp_from_wdp(ctx, ps, wdp);
    if (ps.is_fibration(h.u) && is_hwdp(ctx, ps, h).holds)
      r.pass("from_wdp", hwdp_datum_to_json(c, h));
    else
      r.fail("from_wdp", hwdp_datum_to_json(c, h));
  });
  run("congruence_rejected", [&] {
    try {
      homotopy_congruence(ps);
      r.fail("congruence_rejected", nullptr, "expected the closure check to fail");
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotACongruence) throw;
      r.pass("congruence_rejected", {{"message", e.what()}, {"witnesses", e.witnesses()}});
    }
  });
  return r;
}

// --- corpus -----------------------------------------------------------------------

Corpus load_corpus(const std::filesystem::path& where) {
  Corpus out;
  out.file = std::filesystem::is_directory(where) ? where / "corpus.json" : where;
  json doc = load_json_file(out.file);
  check_format_version(doc);
  if (!doc.contains("fixtures") || !doc["fixtures"].is_array()) fail(ErrorKind::InvalidInput, "corpus has no fixtures list");
  const auto dir = out.file.parent_path();
  for (const auto& f : doc["fixtures"]) {
    CorpusEntry e;
    e.name = f.value("name", std::string());
    if (e.name.empty()) fail(ErrorKind::InvalidInput, "corpus entry without name");
    if (f.contains("category")) e.category = dir / f["category"].get<std::string>();
    if (f.contains("path_structure")) e.path_structure = dir / f["path_structure"].get<std::string>();
    e.local_mode = f.value("local_mode", false);
    e.suite = f.value("suite", std::string());
    out.entries.push_back(std::move(e));
  }
  if (out.entries.empty()) fail(ErrorKind::InvalidInput, "corpus lists no fixtures");
  return out;
}

RunReport run_entry(const CorpusEntry& e, const SearchOptions& options) {
  RunReport r(e.name);
  if (e.category) {
    Stopwatch clock;
    try {
      r.add_input(*e.category);
      auto cat = share(load_category(*e.category));
      r.pass("validate", {{"objects", cat->num_objects()}, {"morphisms", cat->num_morphisms()}});
      LimitContext ctx(cat, options);
      auto props = compute_properties(ctx);
      r.pass("properties", props.to_json());
      r.stage_time("properties", clock.ms());

      if (props.wlex) {
        auto ex = build_excom(ctx);
        LimitContext ectx(ex.completed, options);
        auto exact = verify_exactness(ectx);
        json clauses = json::object();
        for (const auto& cl : exact.clauses) clauses[cl.name] = cl.holds;
        if (exact.holds())
          r.pass("excom.exactness", clauses);
        else
          r.fail("excom.exactness", clauses);
        auto cover = verify_projective_cover(ectx, ex.projective_objects());
        if (cover.holds)
          r.pass("excom.projective_cover", {{"objects", ex.completed->num_objects()}});
        else
          r.fail("excom.projective_cover");
        if (props.poset) {
          if (find_isomorphism(ex.completed, cat))
            r.pass("excom.poset_iso");
          else
            r.fail("excom.poset_iso");
        }
      }
      r.stage_time("excom", clock.ms());

      if (props.binary_products) {
        const auto n = static_cast<ObjId>(cat->num_objects());
        json bad = nullptr;
        std::size_t converted = 0;
        for (ObjId x = 0; x < n && bad.is_null(); ++x)
          for (ObjId y = 0; y < n && bad.is_null(); ++y) {
            auto we = find_weak_exponentials(ctx, x, y);
            auto fd = find_full_diagrams(ctx, x, y);
            bool ok = we.empty() == fd.empty();
            for (const auto& w : we) ok = ok && is_full_diagram(ctx, full_from_weak_exponential(ctx, w)).holds;
            for (const auto& d : fd) ok = ok && is_weak_exponential(ctx, weak_exponential_from_full(ctx, d)).holds;
            converted += we.size() + fd.size();
            if (!ok) bad = json::array({cat->object_name(x), cat->object_name(y)});
          }
        if (bad.is_null())
          r.pass("wexp_full_equivalence", {{"converted", converted}});
        else
          r.fail("wexp_full_equivalence", bad);
      }

      for (const auto& imp : implication_matrix(props)) {
        json w = {{"antecedent", opt(imp.antecedent)}, {"consequent", opt(imp.consequent)}};
        if (imp.violated())
          r.fail("implication." + imp.name, w);
        else
          r.pass("implication." + imp.name, w);
      }
    } catch (const Error& err) {
      r.error("category", err);
    }
    r.stage_time("category", clock.ms());
  }

  if (e.path_structure) {
    Stopwatch clock;
    try {
      r.add_input(*e.path_structure);
      json doc = load_json_file(*e.path_structure);
      auto cat = share(validate_category(parse_raw_category(doc)));
      LimitContext ctx(cat, options);
      auto ps = load_path_structure(ctx, doc, e.local_mode);
      r.set_local_mode(e.local_mode);
      if (e.local_mode)
        r.pass("path.validate", "skipped (local-mode)");
      else
        r.pass("path.validate");
      if (e.suite == "interval")
        r.merge("path.", interval_suite(ctx, ps));
      else if (!e.local_mode)
        r.merge("path.", path_suite(ctx, ps));
    } catch (const Error& err) {
      r.error("path", err);
    }
    r.stage_time("path", clock.ms());
  }
  return r;
}

RunReport run_corpus(const Corpus& corpus, const SearchOptions& options, const std::string& only) {
  RunReport all("corpus run");
  all.add_input(corpus.file);
  bool any = false;
  for (const auto& e : corpus.entries) {
    if (!only.empty() && e.name != only) continue;
    any = true;
    all.merge(e.name + ".", run_entry(e, options));
  }
  if (!any) fail(ErrorKind::InvalidInput, "no corpus entry named '" + only + "'");
  return all;
}

}  // namespace exwlex
