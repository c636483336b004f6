#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "exwlex/cli.hpp"
#include "exwlex/io.hpp"

using namespace exwlex;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = EXWLEX_FIXTURES;

struct Run {
  int code;
  json doc;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  json doc;
  if (!out.str().empty() && out.str()[0] == '{') doc = json::parse(out.str());
  return {code, doc, err.str()};
}

std::string fx(const std::string& name) { return (kFixtures / name).string(); }

const json& check(const json& doc, const std::string& name) {
  for (const auto& c : doc["report"]["checks"])
    if (c["check"] == name) return c;
  FAIL("no check " << name);
  static json none;
  return none;
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "exwlex_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

// FNV-1a, 64 bit
std::string fnv(const std::string& bytes) {
  unsigned long long h = 14695981039346656037ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream s;
  s << std::hex;
  s.width(16);
  s.fill('0');
  s << h;
  return s.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream b;
  b << in.rdbuf();
  return b.str();
}

}  // namespace

TEST_CASE("validate reports counts and a content digest") {
  auto r = run({"validate", fx("chain.json")});
  CHECK(r.code == 0);
  CHECK(r.doc["format_version"] == kFormatVersion);
  CHECK(r.doc["tool"] == "exwlex");
  CHECK(r.doc["report"]["verdict"] == "pass");
  CHECK(check(r.doc, "validate")["witness"]["morphisms"] == 6);
  CHECK(r.doc["report"]["inputs"][0]["digest"] == fnv(slurp(fx("chain.json"))));
  CHECK(r.doc.contains("stats"));
  CHECK_FALSE(r.doc["report"].contains("stats"));
}

TEST_CASE("exit codes") {
  SUBCASE("verdict failure") {
    auto r = run({"lcc", "verify-cc", fx("m3.excom.json")});
    CHECK(r.code == 1);
    const auto& failing = check(r.doc, "cartesian_closed")["counterexample"]["failing"];
    CHECK(std::find(failing.begin(), failing.end(), json::array({"Gamma(b)", "Gamma(a)"})) != failing.end());
  }
  SUBCASE("not weakly lex") {
    auto r = run({"excom", "build", fx("parallel_pair.json")});
    CHECK(r.code == 2);
    CHECK(check(r.doc, "excom build")["error"] == "NotWeaklyLex");
  }
  SUBCASE("budget") {
    auto r = run({"--budget-search", "50", "excom", "build", fx("chain4.json")});
    CHECK(r.code == 3);
    CHECK(r.doc["report"]["checks"][0]["error"] == "BudgetExceeded");
  }
  SUBCASE("usage errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"limits", "find", fx("chain.json"), "--shape", "coproduct"}).code == 2);
    CHECK(run({"--workers", "0", "validate", fx("chain.json")}).code == 2);
  }
}

TEST_CASE("malformed input never crashes") {
  auto bad = scratch("bad.json");
  const std::vector<std::string> docs = {
      "{\"format_version\": 1, \"objects\": [",
      "{\"format_version\": 2, \"objects\": [], \"morphisms\": [], \"identities\": {}, \"compose\": []}",
      "{\"objects\": []}",
      "[1, 2, 3]",
      "{\"format_version\": 1, \"objects\": [\"a\"], \"morphisms\": [{\"id\": 3}], \"identities\": {}, \"compose\": []}",
      "{\"format_version\": 1, \"objects\": [\"a\"], \"morphisms\": [], \"identities\": {\"a\": \"nope\"}, \"compose\": []}",
  };
  for (const auto& text : docs) {
    std::ofstream(bad) << text;
    auto r = run({"validate", bad.string()});
    CHECK(r.code == 2);
    CHECK(r.doc["report"]["verdict"] == "error");
  }
  CHECK(run({"validate", fx("does-not-exist.json")}).code == 2);
  // a datum of the wrong kind
  CHECK(run({"full", "check", fx("chain.json"), "--datum", fx("chain.wexp.json")}).code == 2);
  // ids that are not in the category
  CHECK(run({"full", "find", fx("chain.json"), "--x", "7", "--y", "1"}).code == 2);
}

TEST_CASE("limits subcommands") {
  auto find = run({"limits", "find", fx("chain.json"), "--shape", "product", "--at", "1", "2"});
  CHECK(find.code == 0);
  CHECK(check(find.doc, "find")["witness"]["limits"][0]["apex"] == "1");

  auto weak = run({"--recheck", "limits", "check-weak", fx("chain.json"), "--cone", fx("chain.product12.cone.json")});
  CHECK(weak.code == 0);
  CHECK(check(weak.doc, "recheck")["verdict"] == "pass");

  auto not_weak = run({"limits", "check-weak", fx("chain.json"), "--cone", fx("chain.product12.apex0.cone.json")});
  CHECK(not_weak.code == 1);
  CHECK(check(not_weak.doc, "check_weak")["counterexample"]["apex"] == "1");

  auto dbp = run({"limits", "dbp", fx("projections.json"), "--cone", fx("projections.weakprod.cone.json"), "--arrow", "f"});
  CHECK(dbp.code == 1);
  CHECK(check(dbp.doc, "dbp")["counterexample"] == json::array({"a0", "a1"}));
}

TEST_CASE("excom build writes a file that verifies") {
  auto out = scratch("chain4.excom.json");
  auto b = run({"excom", "build", fx("chain4.json"), "--reduce", "-o", out.string()});
  CHECK(b.code == 0);
  CHECK(check(b.doc, "build")["witness"]["pass"] == "reduced");
  auto v = run({"excom", "verify", out.string()});
  CHECK(v.code == 0);
  CHECK(check(v.doc, "exactness")["verdict"] == "pass");
  CHECK(check(v.doc, "projective_cover")["verdict"] == "pass");
}

TEST_CASE("full and depfull subcommands with recheck") {
  CHECK(run({"--recheck", "full", "check", fx("chain.json"), "--datum", fx("chain.full.json")}).code == 0);
  CHECK(run({"full", "find", fx("m3.json"), "--x", "b", "--y", "a"}).code == 1);
  auto conv = scratch("converted.json");
  CHECK(run({"full", "convert", fx("chain.json"), "--datum", fx("chain.wexp.json"), "--from", "wexp", "-o", conv.string()}).code == 0);
  // the converted datum feeds straight back into the checker
  CHECK(run({"full", "check", fx("chain.json"), "--datum", conv.string()}).code == 0);
  CHECK(run({"full", "convert", fx("chain.json"), "--datum", fx("chain.full.json")}).code == 2);
  CHECK(run({"--recheck", "depfull", "check", fx("chain.json"), "--datum", fx("chain.dependent.json")}).code == 0);
  CHECK(run({"depfull", "find", fx("chain.json"), "--y", "0->1", "--x", "1->2"}).code == 0);
  CHECK(run({"depfull", "find", fx("chain.json"), "--y", "0->1", "--x", "0->1"}).code == 2);
  CHECK(run({"depfull", "totfull", fx("chain.json"), "--x", "1", "--y", "2"}).code == 0);
}

TEST_CASE("lcc subcommands") {
  CHECK(run({"--recheck", "lcc", "adjoints", fx("chain.json")}).code == 0);
  CHECK(run({"lcc", "adjoints", fx("m3.json")}).code == 1);
  auto wcc = run({"lcc", "wcc", fx("chain.json")});
  CHECK(wcc.code == 0);
  const auto& w = check(wcc.doc, "wcc")["witness"];
  CHECK(w["agreements"] == w["both_succeeded"]);
  CHECK(w["both_succeeded"] == 9);  // 3 base objects x 3 completed objects
  CHECK(run({"--recheck", "lcc", "verify-cc", fx("chain.excom.json")}).code == 0);
  CHECK(run({"lcc", "verify-lcc", fx("chain.excom.json")}).code == 0);
  CHECK(run({"lcc", "verify-lcc", fx("m3.excom.json")}).code == 1);
}

TEST_CASE("path subcommands") {
  CHECK(run({"path", "validate", fx("chain.path.json")}).code == 0);
  auto ho = run({"path", "ho", fx("diamond.path.json")});
  CHECK(ho.code == 0);
  CHECK(check(ho.doc, "ho")["witness"]["morphisms"] == 14);

  // the interval is only valid locally
  CHECK(run({"path", "validate", fx("interval.path.json")}).code == 2);
  auto local = run({"--local-mode", "path", "validate", fx("interval.path.json")});
  CHECK(local.code == 0);
  CHECK(local.doc["report"]["watermark"] == "local-mode");
  CHECK(run({"--local-mode", "path", "hwdp", "check", fx("interval.path.json"), "--datum", fx("interval.hwdp.json")}).code == 0);
  CHECK(run({"--local-mode", "path", "hwdp", "from-wdp", fx("interval.path.json"), "--datum", fx("interval.wdp.json")}).code == 0);
  CHECK(run({"path", "hofull", "check", fx("chain.path.json"), "--datum", fx("chain.dependent.json")}).code == 0);

  auto pipe = run({"path", "pipeline-lccexh", fx("chain.path.json")});
  CHECK(pipe.code == 0);
  CHECK(check(pipe.doc, "pipeline.verify_lcc")["verdict"] == "pass");
  auto top = run({"pipeline-lccexh", fx("m3.path.json")});
  CHECK(top.code == 1);
  CHECK(check(top.doc, "pipeline.wdp_audit")["verdict"] == "fail");
}

TEST_CASE("corpus list and run") {
  auto list = run({"corpus", "list", kFixtures.string()});
  CHECK(list.code == 0);
  CHECK(check(list.doc, "list")["witness"].size() == 20);
  CHECK(run({"corpus", "run", fx("empty")}).code == 2);
  CHECK(run({"corpus", "run", kFixtures.string(), "--only", "nope"}).code == 2);

  auto one = run({"corpus", "run", kFixtures.string(), "--only", "chain3"});
  CHECK(one.code == 0);
  for (const auto& c : one.doc["report"]["checks"]) CHECK(c["check"].get<std::string>().rfind("chain3.", 0) == 0);
}

TEST_CASE("reports are deterministic and -o matches stdout") {
  auto out = scratch("report.json");
  auto a = run({"--workers", "1", "corpus", "run", kFixtures.string(), "--only", "diamond", "-o", out.string()});
  auto b = run({"--workers", "4", "corpus", "run", kFixtures.string(), "--only", "diamond"});
  CHECK(a.code == 0);
  CHECK(a.doc["report"].dump() == b.doc["report"].dump());
  CHECK(load_json_file(out)["report"].dump() == a.doc["report"].dump());
}
