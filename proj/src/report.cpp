#include "exwlex/report.hpp"

#include <fstream>
#include <sstream>

#include "exwlex/error.hpp"

namespace exwlex {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Error:
      return "error";
  }
  return "error";
}

void RunReport::add_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  add_input_digest(path.filename().string(), content_digest(buf.str()));
}

void RunReport::add_input_digest(const std::string& name, const std::string& digest) {
  inputs_.push_back({{"name", name}, {"digest", digest}});
}

CheckResult& RunReport::add(CheckResult r) {
  checks_.push_back(std::move(r));
  return checks_.back();
}

CheckResult& RunReport::pass(std::string check, json witness) {
  return add({std::move(check), Verdict::Pass, std::move(witness), nullptr, {}, {}});
}

CheckResult& RunReport::fail(std::string check, json counterexample, std::string message) {
  return add({std::move(check), Verdict::Fail, nullptr, std::move(counterexample), std::move(message), {}});
}

CheckResult& RunReport::error(std::string check, const Error& e) {
  if (e.kind() == ErrorKind::BudgetExceeded) budget_hit_ = true;
  json w = e.witnesses().empty() ? json(nullptr) : json(e.witnesses());
  return add({std::move(check), Verdict::Error, std::move(w), nullptr, e.what(), std::string(to_string(e.kind()))});
}

void RunReport::merge(const std::string& prefix, const RunReport& other) {
  for (auto r : other.checks_) {
    r.check = prefix + r.check;
    checks_.push_back(std::move(r));
  }
  budget_hit_ = budget_hit_ || other.budget_hit_;
  local_mode_ = local_mode_ || other.local_mode_;
  for (const auto& in : other.inputs_) inputs_.push_back(in);
  if (!other.stats_.empty()) stats_[prefix.empty() ? other.command_ : prefix] = other.stats_;
}

Verdict RunReport::overall() const {
  Verdict v = Verdict::Pass;
  for (const auto& r : checks_) {
    if (r.verdict == Verdict::Error) return Verdict::Error;
    if (r.verdict == Verdict::Fail) v = Verdict::Fail;
  }
  return v;
}

int RunReport::exit_code() const {
  switch (overall()) {
    case Verdict::Pass:
      return 0;
    case Verdict::Fail:
      return 1;
    case Verdict::Error:
      return budget_hit_ ? 3 : 2;
  }
  return 2;
}

json RunReport::verdict_section() const {
  json checks = json::array();
  for (const auto& r : checks_) {
    json j = {{"check", r.check}, {"verdict", to_string(r.verdict)}};
    if (!r.witness.is_null()) j["witness"] = r.witness;
    if (!r.counterexample.is_null()) j["counterexample"] = r.counterexample;
    if (!r.message.empty()) j["message"] = r.message;
    if (!r.error_kind.empty()) j["error"] = r.error_kind;
    checks.push_back(std::move(j));
  }
  json out = {{"command", command_}, {"inputs", inputs_}, {"verdict", to_string(overall())}, {"checks", std::move(checks)}};
  if (local_mode_) out["watermark"] = "local-mode";
  return out;
}

json RunReport::to_json() const {
  json out = {{"format_version", kFormatVersion}, {"tool", "exwlex"}, {"version", kToolVersion}};
  out["report"] = verdict_section();
  out["stats"] = stats_;
  return out;
}

// --- data files ------------------------------------------------------------------

namespace {

std::string str(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) fail(ErrorKind::InvalidInput, std::string("datum field '") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

MorId mor(const FinCategory& c, const json& j, const char* key) { return c.morphism(str(j, key)); }
ObjId obj(const FinCategory& c, const json& j, const char* key) { return c.object(str(j, key)); }

const json& sub(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_object()) fail(ErrorKind::InvalidInput, std::string("datum field '") + key + "' must be an object");
  return j.at(key);
}

}  // namespace

json cone_to_json(const FinCategory& c, const Cone& k) {
  json legs = json::array();
  for (MorId l : k.legs) legs.push_back(c.morphism_name(l));
  return {{"apex", c.object_name(k.apex)}, {"legs", std::move(legs)}};
}

Cone cone_from_json(const FinCategory& c, const json& j) {
  if (!j.is_object() || !j.contains("legs") || !j.at("legs").is_array()) fail(ErrorKind::InvalidInput, "cone needs apex and legs");
  Cone k;
  k.apex = obj(c, j, "apex");
  for (const auto& l : j.at("legs")) {
    if (!l.is_string()) fail(ErrorKind::InvalidInput, "cone legs must be morphism ids");
    k.legs.push_back(c.morphism(l.get<std::string>()));
  }
  return k;
}

Diagram diagram_from_json(const FinCategory& c, const json& j) {
  const std::string shape = str(j, "shape");
  std::vector<std::string> at;
  if (j.contains("at")) {
    if (!j.at("at").is_array()) fail(ErrorKind::InvalidInput, "'at' must be a list of ids");
    for (const auto& a : j.at("at")) at.push_back(a.get<std::string>());
  }
  auto need = [&](std::size_t n) {
    if (at.size() != n) fail(ErrorKind::InvalidInput, shape + " needs " + std::to_string(n) + " ids");
  };
  if (shape == "terminal") {
    need(0);
    return Diagram::terminal();
  }
  if (shape == "product") {
    std::vector<ObjId> f;
    for (const auto& a : at) f.push_back(c.object(a));
    return Diagram::product(std::move(f));
  }
  if (shape == "pullback" || shape == "equalizer") {
    need(2);
    const MorId f = c.morphism(at[0]), g = c.morphism(at[1]);
    if (shape == "pullback") {
      if (c.cod(f) != c.cod(g)) fail(ErrorKind::InvalidInput, "pullback of arrows with different codomains");
      return Diagram::pullback(c, f, g);
    }
    if (c.dom(f) != c.dom(g) || c.cod(f) != c.cod(g)) fail(ErrorKind::InvalidInput, "equalizer of non-parallel arrows");
    return Diagram::equalizer(c, f, g);
  }
  fail(ErrorKind::InvalidInput, "unknown shape '" + shape + "'");
}

json diagram_to_json(const FinCategory& c, const Diagram& d) {
  json nodes = json::array(), edges = json::array();
  for (ObjId x : d.nodes) nodes.push_back(c.object_name(x));
  for (const auto& e : d.edges) edges.push_back({e.from, e.to, c.morphism_name(e.arrow)});
  return {{"nodes", nodes}, {"edges", edges}};
}

json full_datum_to_json(const FinCategory& c, const FullDiagramDatum& d) {
  return {{"u", c.object_name(d.u)}, {"x", c.object_name(d.x)}, {"y", c.object_name(d.y)},
          {"product", cone_to_json(c, d.product)}, {"f", c.morphism_name(d.f)}};
}

FullDiagramDatum full_datum_from_json(const FinCategory& c, const json& j) {
  return {obj(c, j, "u"), obj(c, j, "x"), obj(c, j, "y"), cone_from_json(c, sub(j, "product")), mor(c, j, "f")};
}

json dependent_datum_to_json(const FinCategory& c, const DependentDatum& d) {
  return {{"y", c.morphism_name(d.y)}, {"x", c.morphism_name(d.x)}, {"u", c.morphism_name(d.u)},
          {"square", cone_to_json(c, d.square)}, {"f", c.morphism_name(d.f)}};
}

DependentDatum dependent_datum_from_json(const FinCategory& c, const json& j) {
  return {mor(c, j, "y"), mor(c, j, "x"), mor(c, j, "u"), cone_from_json(c, sub(j, "square")), mor(c, j, "f")};
}

json wexp_datum_to_json(const FinCategory& c, const WeakExponentialDatum& d) {
  return {{"w", c.object_name(d.w)}, {"x", c.object_name(d.x)}, {"y", c.object_name(d.y)},
          {"product", cone_to_json(c, d.product)}, {"eval", c.morphism_name(d.eval)}};
}

WeakExponentialDatum wexp_datum_from_json(const FinCategory& c, const json& j) {
  return {obj(c, j, "w"), obj(c, j, "x"), obj(c, j, "y"), cone_from_json(c, sub(j, "product")), mor(c, j, "eval")};
}

json hwdp_datum_to_json(const FinCategory& c, const HwdpDatum& d) {
  return {{"g", c.morphism_name(d.g)}, {"f", c.morphism_name(d.f)}, {"u", c.morphism_name(d.u)},
          {"pullback", cone_to_json(c, d.pullback)}, {"e", c.morphism_name(d.e)}};
}

HwdpDatum hwdp_datum_from_json(const FinCategory& c, const json& j) {
  return {mor(c, j, "g"), mor(c, j, "f"), mor(c, j, "u"), cone_from_json(c, sub(j, "pullback")), mor(c, j, "e")};
}

json datum_document(const std::string& kind, json datum) {
  return {{"format_version", kFormatVersion}, {"kind", kind}, {"datum", std::move(datum)}};
}

const json& datum_payload(const json& doc, const std::string& kind) {
  check_format_version(doc);
  if (doc.value("kind", std::string()) != kind)
    fail(ErrorKind::InvalidInput, "expected a '" + kind + "' datum, got '" + doc.value("kind", std::string()) + "'");
  return sub(doc, "datum");
}

}  // namespace exwlex
