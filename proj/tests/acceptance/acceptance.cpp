// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "exwlex/catalog.hpp"
#include "exwlex/cli.hpp"
#include "exwlex/corpus.hpp"
#include "exwlex/error.hpp"
#include "exwlex/excom.hpp"
#include "exwlex/full.hpp"
#include "exwlex/homotopy.hpp"
#include "exwlex/lcc.hpp"

using namespace exwlex;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = EXWLEX_FIXTURES;

struct Outcome {
  bool ok = true;
  std::string detail;
  std::string slowest;
  double worst_ms = 0;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
  void timed(const std::string& name, double ms, double limit_s) {
    if (ms > worst_ms) {
      worst_ms = ms;
      slowest = name;
    }
    require(ms <= limit_s * 1000, name + " took " + std::to_string(ms / 1000) + " s (limit " + std::to_string(limit_s) + " s)");
  }
};

struct CliRun {
  int code;
  json doc;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  json doc = out.str().empty() || out.str()[0] != '{' ? json() : json::parse(out.str());
  return {code, doc};
}

std::string fx(const std::string& name) { return (kFixtures / name).string(); }

CategoryPtr load(const std::string& name) { return share(load_category(kFixtures / (name + ".json"))); }

const std::vector<std::string> kWlex = {"terminal", "chain3", "chain4", "diamond", "boolean_square"};
const std::vector<std::string> kPosets = {"terminal", "chain3", "chain4", "diamond", "boolean_square", "m3", "n5"};
const std::vector<std::string> kLattices = {"terminal", "chain3", "chain4", "diamond", "boolean_square", "chain_dup", "m3", "n5"};

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& e : catalog::all()) out.push_back(e.name);
  return out;
}

json check_named(const json& doc, const std::string& name) {
  for (const auto& c : doc["report"]["checks"])
    if (c["check"] == name) return c;
  return nullptr;
}

// --- criteria ----------------------------------------------------------------------

Outcome excom_soundness() {
  Outcome o;
  const auto dir = fs::temp_directory_path() / "exwlex_acceptance";
  fs::create_directories(dir);
  for (const auto& name : kWlex) {
    Stopwatch clock;
    const auto out = (dir / (name + ".excom.json")).string();
    auto b = cli({"excom", "build", fx(name + ".json"), "-o", out});
    o.require(b.code == 0, name + ": excom build exit " + std::to_string(b.code));
    auto v = cli({"excom", "verify", out});
    o.require(v.code == 0, name + ": excom verify exit " + std::to_string(v.code));
    o.timed(name, clock.ms(), 10);
  }
  o.detail = o.ok ? std::to_string(kWlex.size()) + " wlex fixtures, exactness and projective cover pass" : o.detail;
  return o;
}

Outcome poset_collapse() {
  Outcome o;
  for (const auto& name : kPosets) {
    Stopwatch clock;
    auto cat = load(name);
    LimitContext ctx(cat, {});
    auto ex = build_excom(ctx);
    o.require(find_isomorphism(ex.completed, cat).has_value(), name + ": completion not isomorphic to the input");
    o.timed(name, clock.ms(), 5);
  }
  if (o.ok) o.detail = std::to_string(kPosets.size()) + " posets, isomorphism found for each";
  return o;
}

Outcome wexpfull_equivalence() {
  Outcome o;
  int fixtures = 0;
  std::size_t pairs = 0, converted = 0;
  for (const auto& name : catalog_names()) {
    Stopwatch clock;
    LimitContext ctx(load(name), {});
    if (!has_binary_products(ctx)) continue;
    ++fixtures;
    const auto n = static_cast<ObjId>(ctx.category().num_objects());
    for (ObjId x = 0; x < n; ++x)
      for (ObjId y = 0; y < n; ++y) {
        ++pairs;
        auto we = find_weak_exponentials(ctx, x, y);
        auto fd = find_full_diagrams(ctx, x, y);
        o.require(we.empty() == fd.empty(), name + ": existence differs at (" + ctx.category().object_name(x) + ", " +
                                                ctx.category().object_name(y) + ")");
        for (const auto& w : we) o.require(is_full_diagram(ctx, full_from_weak_exponential(ctx, w)).holds, name + ": wexp -> full");
        for (const auto& d : fd) o.require(is_weak_exponential(ctx, weak_exponential_from_full(ctx, d)).holds, name + ": full -> wexp");
        converted += we.size() + fd.size();
      }
    o.timed(name, clock.ms(), 60);
  }
  if (o.ok)
    o.detail = std::to_string(fixtures) + " fixtures with products, " + std::to_string(pairs) + " pairs, " +
               std::to_string(converted) + " conversions round-trip";
  return o;
}

Outcome ccex() {
  Outcome o;
  Stopwatch clock;
  int applicable = 0;
  for (const auto& name : catalog_names()) {
    LimitContext ctx(load(name), {});
    if (!wlex_audit(ctx).passed) continue;
    bool adjoints = false;
    try {
      adjoints = weak_pullback_adjoints(ctx).holds;
    } catch (const Error&) {
      continue;
    }
    const auto n = static_cast<ObjId>(ctx.category().num_objects());
    bool full = true;
    for (ObjId x = 0; x < n && full; ++x)
      for (ObjId y = 0; y < n && full; ++y) full = !find_full_diagrams(ctx, x, y).empty();
    if (!adjoints || !full) continue;
    ++applicable;
    auto ex = reduce_excom(build_excom(ctx));
    LimitContext ectx(ex.completed, {});
    o.require(verify_cartesian_closed(ectx).holds, name + ": completion not cartesian closed");
  }
  auto m3 = cli({"lcc", "verify-cc", fx("m3.excom.json")});
  o.require(m3.code == 1, "m3 verify-cc exit " + std::to_string(m3.code));
  const json c = check_named(m3.doc, "cartesian_closed");
  const json want = json::array({"Gamma(b)", "Gamma(a)"});
  bool found = false;
  if (c.is_object())
    for (const auto& p : c["counterexample"]["failing"]) found = found || p == want;
  o.require(found, "m3: pair (b, a) not among the failures");
  o.timed("all", clock.ms(), 120);
  if (o.ok) o.detail = std::to_string(applicable) + " fixtures cartesian closed; m3 fails with (b, a)";
  return o;
}

Outcome lccex() {
  Outcome o;
  Stopwatch clock;
  for (const auto& name : {std::string("chain3"), std::string("chain4")}) {
    LimitContext ctx(load(name), {});
    const auto& c = ctx.category();
    for (MorId x = 0; x < static_cast<MorId>(c.num_morphisms()); ++x)
      for (MorId y : c.incoming(c.dom(x)))
        o.require(!find_dependent_full_diagrams(ctx, y, x).empty(), name + ": no dependent full diagram over (" +
                                                                        c.morphism_name(y) + ", " + c.morphism_name(x) + ")");
    auto ex = reduce_excom(build_excom(ctx));
    LimitContext ectx(ex.completed, {});
    o.require(verify_lcc(ectx).holds, name + ": completion not locally cartesian closed");
  }
  o.timed("chains", clock.ms(), 300);
  if (o.ok) o.detail = "chain3, chain4: dependent full diagrams everywhere, verify-lcc passes";
  return o;
}

Outcome wcc() {
  Outcome o;
  Stopwatch clock;
  long both = 0, agree = 0;
  for (const auto& name : catalog_names()) {
    LimitContext ctx(load(name), {});
    if (!wlex_audit(ctx).passed) continue;
    auto r = cli({"lcc", "wcc", fx(name + ".json")});
    const json c = check_named(r.doc, "wcc");
    o.require(r.code == 0 && c.is_object(), name + ": wcc exit " + std::to_string(r.code));
    if (!c.is_object() || !c.contains("witness")) continue;
    both += c["witness"]["both_succeeded"].get<long>();
    agree += c["witness"]["agreements"].get<long>();
  }
  o.require(both == agree, "agreement " + std::to_string(agree) + "/" + std::to_string(both));
  o.timed("all", clock.ms(), 120);
  if (o.ok) o.detail = "audit passes everywhere; agreement " + std::to_string(agree) + "/" + std::to_string(both);
  return o;
}

Outcome implications() {
  Outcome o;
  int applicable = 0, violations = 0;
  for (const auto& name : catalog_names()) {
    LimitContext ctx(load(name), {});
    for (const auto& imp : implication_matrix(compute_properties(ctx))) {
      applicable += imp.applicable();
      if (imp.violated()) {
        ++violations;
        o.require(false, name + ": " + imp.name);
      }
    }
  }
  if (o.ok) o.detail = std::to_string(catalog_names().size()) + " fixtures, " + std::to_string(applicable) + " applicable rows, 0 violations";
  return o;
}

Outcome homotopy_suite() {
  Outcome o;
  std::size_t checks = 0;
  for (const auto& name : kLattices) {
    Stopwatch clock;
    json doc = load_json_file(kFixtures / (name + ".path.json"));
    LimitContext ctx(share(validate_category(parse_raw_category(doc))), {});
    auto ps = load_path_structure(ctx, doc, false);
    auto r = path_suite(ctx, ps);
    for (const auto& c : r.checks()) o.require(c.verdict == Verdict::Pass, name + ": " + c.check + " " + c.message);
    checks += r.checks().size();
    o.timed(name, clock.ms(), 60);
  }
  if (o.ok) o.detail = std::to_string(kLattices.size()) + " valid structures, " + std::to_string(checks) + " checks pass";
  return o;
}

Outcome pipeline() {
  Outcome o;
  Stopwatch clock;
  auto r = cli({"path", "pipeline-lccexh", fx("chain.path.json")});
  o.require(r.code == 0, "exit " + std::to_string(r.code));
  std::vector<std::string> stages;
  for (const auto& c : r.doc["report"]["checks"]) stages.push_back(c["check"].get<std::string>().substr(9));
  for (const auto* s : {"validate", "ho", "depfull_audit", "excom", "verify_lcc"})
    o.require(std::find(stages.begin(), stages.end(), s) != stages.end(), std::string("missing stage ") + s);
  o.timed("pipeline", clock.ms(), 300);
  if (o.ok) o.detail = std::to_string(stages.size()) + " stages pass on the chain";
  return o;
}

Outcome determinism() {
  Outcome o;
  std::string first;
  std::string verdict;
  for (const char* w : {"1", "2", "8"}) {
    auto r = cli({"--workers", w, "corpus", "run", kFixtures.string()});
    const std::string section = r.doc["report"].dump();
    if (first.empty()) {
      first = section;
      verdict = r.doc["report"]["verdict"];
    }
    o.require(section == first, std::string("verdict section differs at ") + w + " workers");
  }
  if (o.ok) o.detail = "verdict sections identical at 1, 2, 8 workers (corpus verdict: " + verdict + ")";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"excom soundness", excom_soundness},
      {"poset collapse", poset_collapse},
      {"weak exponentials vs full diagrams", wexpfull_equivalence},
      {"cartesian closure of the completion", ccex},
      {"local cartesian closure on chains", lccex},
      {"exponential from a full diagram", wcc},
      {"implication matrices", implications},
      {"homotopy suite", homotopy_suite},
      {"pipeline lccexh", pipeline},
      {"determinism across workers", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Stopwatch clock;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.ok;
    std::printf("criterion %2zu %s  %-38s %8.1f ms  %s\n", i + 1, o.ok ? "PASS" : "FAIL", criteria[i].first, clock.ms(),
                o.detail.c_str());
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
