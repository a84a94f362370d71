#include "json_schema.hpp"

#include <fstream>

namespace kgtest {

using nlohmann::json;

namespace {

bool type_matches(const std::string& type, const json& v) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "integer") return v.is_number_integer();
  if (type == "number") return v.is_number();
  if (type == "boolean") return v.is_boolean();
  if (type == "null") return v.is_null();
  return false;
}

}  // namespace

std::vector<std::string> validate_schema(const json& schema, const json& value, const std::string& pointer) {
  std::vector<std::string> errors;
  auto fail = [&](const std::string& msg) { errors.push_back((pointer.empty() ? "/" : pointer) + ": " + msg); };

  if (auto t = schema.find("type"); t != schema.end()) {
    bool ok = false;
    if (t->is_string()) ok = type_matches(*t, value);
    else
      for (const auto& x : *t) ok = ok || type_matches(x, value);
    if (!ok) {
      fail("expected type " + t->dump() + ", got " + value.type_name());
      return errors;
    }
  }
  if (auto e = schema.find("enum"); e != schema.end()) {
    bool found = false;
    for (const auto& x : *e) found = found || x == value;
    if (!found) fail("value " + value.dump() + " not in enum");
  }
  if (auto m = schema.find("minimum"); m != schema.end() && value.is_number())
    if (value.get<double>() < m->get<double>()) fail("below minimum");

  if (value.is_object()) {
    if (auto r = schema.find("required"); r != schema.end())
      for (const auto& k : *r)
        if (!value.contains(k.get<std::string>())) fail("missing required field " + k.get<std::string>());
    const auto props = schema.value("properties", json::object());
    for (const auto& [k, v] : value.items()) {
      const auto sub = pointer + "/" + k;
      if (props.contains(k)) {
        auto more = validate_schema(props[k], v, sub);
        errors.insert(errors.end(), more.begin(), more.end());
        continue;
      }
      auto ap = schema.find("additionalProperties");
      if (ap == schema.end()) continue;
      if (ap->is_boolean()) {
        if (!ap->get<bool>()) fail("unexpected field " + k);
      } else {
        auto more = validate_schema(*ap, v, sub);
        errors.insert(errors.end(), more.begin(), more.end());
      }
    }
  }
  if (value.is_array()) {
    if (auto m = schema.find("minItems"); m != schema.end() && value.size() < m->get<std::size_t>())
      fail("fewer than minItems");
    if (auto it = schema.find("items"); it != schema.end())
      for (std::size_t i = 0; i < value.size(); ++i) {
        auto more = validate_schema(*it, value[i], pointer + "/" + std::to_string(i));
        errors.insert(errors.end(), more.begin(), more.end());
      }
  }
  return errors;
}

json load_schema(const std::string& name) {
  std::ifstream f(std::string(KGFORGE_TEST_DATA) + "/schemas/" + name + ".json");
  if (!f) throw std::runtime_error("missing schema " + name);
  return json::parse(f);
}

}  // namespace kgtest
