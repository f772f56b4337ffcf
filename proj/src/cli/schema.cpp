#include <regex>

#include "aszeta/cli.hpp"
#include "aszeta/schemas.hpp"

namespace aszeta::cli {

namespace {

bool has_type(const json& doc, const std::string& t) {
  if (t == "object") return doc.is_object();
  if (t == "array") return doc.is_array();
  if (t == "string") return doc.is_string();
  if (t == "integer") return doc.is_number_integer();
  if (t == "number") return doc.is_number();
  if (t == "boolean") return doc.is_boolean();
  if (t == "null") return doc.is_null();
  return false;
}

void check(const json& doc, const json& schema, const json& root, const std::string& path,
           std::vector<std::string>& errors) {
  if (schema.contains("$ref")) {
    const std::string ref = schema["$ref"].get<std::string>();
    const std::string prefix = "#/$defs/";
    if (ref.rfind(prefix, 0) != 0 || !root.contains("$defs") || !root["$defs"].contains(ref.substr(prefix.size())))
      throw Error("unsupported schema reference " + ref);
    check(doc, root["$defs"][ref.substr(prefix.size())], root, path, errors);
    return;
  }
  auto fail = [&](const std::string& msg) { errors.push_back((path.empty() ? "/" : path) + ": " + msg); };

  if (schema.contains("type")) {
    const auto& t = schema["type"];
    bool ok = false;
    if (t.is_string())
      ok = has_type(doc, t.get<std::string>());
    else
      for (const auto& x : t) ok = ok || has_type(doc, x.get<std::string>());
    if (!ok) {
      fail("expected type " + t.dump());
      return;
    }
  }
  if (schema.contains("const") && doc != schema["const"]) fail("expected " + schema["const"].dump());
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& v : schema["enum"]) found = found || v == doc;
    if (!found) fail("value " + doc.dump() + " not in enum");
  }
  if (schema.contains("minimum") && doc.is_number() && doc.get<double>() < schema["minimum"].get<double>())
    fail("below minimum " + schema["minimum"].dump());
  if (schema.contains("pattern") && doc.is_string() &&
      !std::regex_match(doc.get<std::string>(), std::regex(schema["pattern"].get<std::string>())))
    fail("does not match pattern " + schema["pattern"].get<std::string>());
  if (schema.contains("anyOf")) {
    bool any = false;
    for (const auto& alt : schema["anyOf"]) {
      std::vector<std::string> sub;
      check(doc, alt, root, path, sub);
      any = any || sub.empty();
    }
    if (!any) fail("matches none of anyOf");
  }
  if (doc.is_object()) {
    if (schema.contains("required"))
      for (const auto& k : schema["required"])
        if (!doc.contains(k.get<std::string>())) fail("missing required property " + k.dump());
    const json props = schema.value("properties", json::object());
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      if (props.contains(it.key())) {
        check(it.value(), props[it.key()], root, path + "/" + it.key(), errors);
      } else if (schema.contains("additionalProperties")) {
        const auto& ap = schema["additionalProperties"];
        if (ap.is_boolean() && !ap.get<bool>())
          fail("unexpected property \"" + it.key() + "\"");
        else if (ap.is_object())
          check(it.value(), ap, root, path + "/" + it.key(), errors);
      }
    }
  }
  if (doc.is_array()) {
    if (schema.contains("minItems") && doc.size() < schema["minItems"].get<std::size_t>())
      fail("fewer than " + schema["minItems"].dump() + " items");
    if (schema.contains("items"))
      for (std::size_t i = 0; i < doc.size(); ++i)
        check(doc[i], schema["items"], root, path + "/" + std::to_string(i), errors);
  }
}

}  // namespace

const json& curve_spec_schema() {
  static const json schema = json::parse(kCurveSpecSchema);
  return schema;
}

const json& analysis_report_schema() {
  static const json schema = json::parse(kAnalysisReportSchema);
  return schema;
}

std::vector<std::string> validate(const json& doc, const json& schema) {
  std::vector<std::string> errors;
  check(doc, schema, schema, "", errors);
  return errors;
}

}  // namespace aszeta::cli
