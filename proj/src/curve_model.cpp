#include "curvel2/curve_model.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "curvel2/errors.hpp"

namespace curvel2 {

std::vector<std::string> validation_errors(const CurveSpec& spec) {
  std::vector<std::string> v;
  if (spec.components.empty()) v.push_back("curve has no components (m must be at least 1)");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < spec.components.size(); ++i) {
    const auto& c = spec.components[i];
    const std::string where = "component #" + std::to_string(i + 1);
    if (c.id.empty()) v.push_back(where + ": empty id");
    if (!ids.insert(c.id).second) v.push_back(where + ": duplicate id '" + c.id + "'");
    if (c.genus < 0) v.push_back("component '" + c.id + "': negative genus " + std::to_string(c.genus));
  }
  std::set<std::string> point_ids;
  for (std::size_t i = 0; i < spec.singular_points.size(); ++i) {
    const auto& p = spec.singular_points[i];
    const std::string where = "singular point '" + (p.id.empty() ? "#" + std::to_string(i + 1) : p.id) + "'";
    if (p.id.empty()) v.push_back(where + ": empty id");
    if (!point_ids.insert(p.id).second) v.push_back(where + ": duplicate id");
    if (p.branches.empty()) v.push_back(where + ": no branches");
    for (const auto& b : p.branches) {
      if (ids.count(b.component) == 0) v.push_back(where + ": branch references unknown component '" + b.component + "'");
      if (b.s < 1) v.push_back(where + ": branch multiplicity " + std::to_string(b.s) + " < 1");
    }
    if (p.branches.size() == 1 && p.branches[0].s == 1) v.push_back(where + ": not singular (single smooth branch)");
    if (p.delta && *p.delta < mult_prime(p)) v.push_back(where + ": delta below mult'");
    if (p.eta && *p.eta < 0) v.push_back(where + ": negative conductor exponent");
  }
  return v;
}

int mult_prime(const SingularPointSpec& p) {
  int total = 0;
  for (const auto& b : p.branches) total += b.s - 1;
  return total;
}

CheckedCurve validate(const CurveSpec& spec) {
  auto v = validation_errors(spec);
  if (!v.empty()) throw ValidationError(std::move(v));
  CheckedCurve c;
  c.spec = spec;
  c.m = static_cast<int>(spec.components.size());
  for (const auto& comp : spec.components) {
    c.g += comp.genus;
    c.genus_of[comp.id] = comp.genus;
    c.correction_of[comp.id] = 0;
  }
  for (const auto& p : spec.singular_points) {
    for (const auto& b : p.branches) c.correction_of[b.component] += b.s - 1;
    c.deg_z_minus_absz += mult_prime(p);
  }
  return c;
}

int deg_Z_minus_absZ(const CheckedCurve& c) { return c.deg_z_minus_absz; }

std::map<std::string, int> deg_Z_minus_absZ_per_component(const CheckedCurve& c) { return c.correction_of; }

LineBundleSpec trivial_bundle() {
  LineBundleSpec l;
  l.trivial = true;
  return l;
}

int degree_on(const LineBundleSpec& l, const std::string& component) {
  auto it = l.degrees.find(component);
  return it == l.degrees.end() ? 0 : it->second;
}

int bundle_degree(const CheckedCurve& c, const LineBundleSpec& l) {
  int total = 0;
  for (const auto& [id, d] : l.degrees) {
    if (c.genus_of.count(id) == 0) throw InputError("line bundle references unknown component '" + id + "'");
    total += d;
  }
  return total;
}

LineBundleSpec dual(const LineBundleSpec& l) {
  LineBundleSpec r = l;
  for (auto& [id, d] : r.degrees) d = -d;
  return r;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

const nlohmann::json& require(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  return j.at(key);
}

int as_int(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InputError(where + ": expected an integer");
  return j.get<int>();
}

std::string as_string(const nlohmann::json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where + ": expected a string");
  return j.get<std::string>();
}

}  // namespace

CurveSpec curve_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("curve spec: expected a JSON object");
  CurveSpec spec;
  const auto& comps = require(j, "components", "curve spec");
  if (!comps.is_array()) throw InputError("curve spec: 'components' must be an array");
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string where = "components[" + std::to_string(i) + "]";
    ComponentSpec c;
    c.id = as_string(require(comps[i], "id", where), where + ".id");
    c.genus = as_int(require(comps[i], "genus", where), where + ".genus");
    if (comps[i].contains("genus_source")) c.genus_source = as_string(comps[i]["genus_source"], where + ".genus_source");
    spec.components.push_back(std::move(c));
  }
  if (j.contains("singular_points")) {
    const auto& pts = j.at("singular_points");
    if (!pts.is_array()) throw InputError("curve spec: 'singular_points' must be an array");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::string where = "singular_points[" + std::to_string(i) + "]";
      SingularPointSpec p;
      p.id = as_string(require(pts[i], "id", where), where + ".id");
      const auto& br = require(pts[i], "branches", where);
      if (!br.is_array()) throw InputError(where + ".branches must be an array");
      for (std::size_t k = 0; k < br.size(); ++k) {
        const std::string bw = where + ".branches[" + std::to_string(k) + "]";
        BranchSpec b;
        b.component = as_string(require(br[k], "component", bw), bw + ".component");
        b.s = as_int(require(br[k], "s", bw), bw + ".s");
        p.branches.push_back(std::move(b));
      }
      if (pts[i].contains("delta")) p.delta = as_int(pts[i]["delta"], where + ".delta");
      if (pts[i].contains("eta")) p.eta = as_int(pts[i]["eta"], where + ".eta");
      spec.singular_points.push_back(std::move(p));
    }
  }
  if (j.contains("provenance") && !j.at("provenance").is_null()) {
    spec.provenance = as_string(j.at("provenance"), "provenance");
  }
  return spec;
}

nlohmann::json to_json(const CurveSpec& spec) {
  nlohmann::json j;
  j["components"] = nlohmann::json::array();
  for (const auto& c : spec.components) {
    j["components"].push_back({{"id", c.id}, {"genus", c.genus}, {"genus_source", c.genus_source}});
  }
  j["singular_points"] = nlohmann::json::array();
  for (const auto& p : spec.singular_points) {
    nlohmann::json pj;
    pj["id"] = p.id;
    pj["branches"] = nlohmann::json::array();
    for (const auto& b : p.branches) pj["branches"].push_back({{"component", b.component}, {"s", b.s}});
    if (p.delta) pj["delta"] = *p.delta;
    if (p.eta) pj["eta"] = *p.eta;
    j["singular_points"].push_back(std::move(pj));
  }
  if (spec.provenance) j["provenance"] = *spec.provenance;
  return j;
}

LineBundleSpec line_bundle_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("line bundle: expected a JSON object");
  LineBundleSpec l;
  if (j.contains("degrees")) {
    const auto& d = j.at("degrees");
    if (!d.is_object()) throw InputError("line bundle: 'degrees' must be an object");
    for (const auto& [id, v] : d.items()) l.degrees[id] = as_int(v, "degrees." + id);
  }
  if (j.contains("trivial")) {
    if (!j.at("trivial").is_boolean()) throw InputError("line bundle: 'trivial' must be a boolean");
    l.trivial = j.at("trivial").get<bool>();
  } else if (!j.contains("degrees")) {
    l.trivial = true;
  }
  if (l.trivial) {
    for (const auto& [id, d] : l.degrees) {
      if (d != 0) throw InputError("line bundle: marked trivial but degree on '" + id + "' is nonzero");
    }
  }
  return l;
}

nlohmann::json to_json(const LineBundleSpec& l) {
  nlohmann::json j;
  j["degrees"] = nlohmann::json::object();
  for (const auto& [id, d] : l.degrees) j["degrees"][id] = d;
  if (l.trivial) j["trivial"] = true;
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(what + ": invalid JSON (" + std::string(e.what()) + ")");
  }
}

}  // namespace curvel2
