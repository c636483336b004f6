#include "exwlex/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "exwlex/error.hpp"

namespace exwlex {

void check_format_version(const json& doc) {
  if (!doc.is_object() || !doc.contains("format_version"))
    fail(ErrorKind::UnsupportedFormat, "document has no format_version");
  const auto& v = doc.at("format_version");
  if (!v.is_number_integer() || v.get<int>() != kFormatVersion)
    fail(ErrorKind::UnsupportedFormat, "unsupported format_version " + v.dump());
}

namespace {

std::string as_string(const json& v, const char* what) {
  if (!v.is_string()) fail(ErrorKind::InvalidInput, std::string(what) + " must be a string, got " + v.dump());
  return v.get<std::string>();
}

const json& field(const json& doc, const char* key) {
  if (!doc.contains(key)) fail(ErrorKind::InvalidInput, std::string("missing field '") + key + "'");
  return doc.at(key);
}

}  // namespace

RawCategory parse_raw_category(const json& doc) {
  check_format_version(doc);
  RawCategory raw;
  const auto& objects = field(doc, "objects");
  if (!objects.is_array()) fail(ErrorKind::InvalidInput, "'objects' must be a list");
  for (const auto& o : objects) raw.objects.push_back(as_string(o, "object id"));

  const auto& morphisms = field(doc, "morphisms");
  if (!morphisms.is_array()) fail(ErrorKind::InvalidInput, "'morphisms' must be a list");
  for (const auto& m : morphisms) {
    if (!m.is_object()) fail(ErrorKind::InvalidInput, "morphism records must be objects");
    raw.morphisms.push_back(
        {as_string(field(m, "id"), "morphism id"), as_string(field(m, "dom"), "dom"), as_string(field(m, "cod"), "cod")});
  }

  const auto& ids = field(doc, "identities");
  if (!ids.is_object()) fail(ErrorKind::InvalidInput, "'identities' must be a map");
  for (auto it = ids.begin(); it != ids.end(); ++it) raw.identities.emplace_back(it.key(), as_string(it.value(), "identity"));

  const auto& comp = field(doc, "compose");
  if (!comp.is_array()) fail(ErrorKind::InvalidInput, "'compose' must be a list");
  for (const auto& t : comp) {
    if (!t.is_array() || t.size() != 3) fail(ErrorKind::InvalidInput, "compose entries must be [g, f, gf] triples");
    raw.compose.push_back({as_string(t[0], "g"), as_string(t[1], "f"), as_string(t[2], "gf")});
  }
  return raw;
}

json category_to_json(const FinCategory& c) {
  RawCategory raw = c.to_raw();
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["objects"] = raw.objects;
  json mors = json::array();
  for (const auto& m : raw.morphisms) mors.push_back({{"id", m.id}, {"dom", m.dom}, {"cod", m.cod}});
  doc["morphisms"] = std::move(mors);
  json ids = json::object();
  for (const auto& [o, m] : raw.identities) ids[o] = m;
  doc["identities"] = std::move(ids);
  json comp = json::array();
  for (const auto& t : raw.compose) comp.push_back({t[0], t[1], t[2]});
  doc["compose"] = std::move(comp);
  return doc;
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidInput, "cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, "'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::InvalidInput, "cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
}

FinCategory load_category(const std::filesystem::path& path) { return validate_category(parse_raw_category(load_json_file(path))); }

std::string content_digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace exwlex
