#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "knit/classify.hpp"
#include "knit/cyclic.hpp"
#include "knit/deformation.hpp"

namespace knit {

using json = nlohmann::json;

inline json group_to_json(const FiniteGroup& g) {
  return json{{"kind", "table"},
              {"order", g.order},
              {"table", g.table},
              {"labels", g.labels},
              {"generators", g.generators}};
}

// Accepts {"kind":"cyclic","n":N} or {"kind":"table","order":N,
// "table":[[...]], "labels":[...], "generators":[...]}. Tables are
// row-major with 0-based entries; labels and generators are optional.
inline FiniteGroup group_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw malformed_error("group spec must be an object with a 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "cyclic") {
    const long long n = j.at("n").get<long long>();
    if (n < 1) throw precondition_error("cyclic group order must be positive");
    return cyclic_group(static_cast<int>(n));
  }
  if (kind != "table") throw malformed_error("unknown group kind: " + kind);
  Table table = j.at("table").get<Table>();
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  std::vector<int> generators;
  if (j.contains("generators"))
    generators = j.at("generators").get<std::vector<int>>();
  if (j.contains("order") &&
      j.at("order").get<int>() != static_cast<int>(table.size()))
    throw malformed_error("declared order does not match the table");
  return make_group(std::move(table), std::move(labels), std::move(generators));
}

inline json matched_pair_to_json(const MatchedPair& mp) {
  return json{{"H", group_to_json(mp.H)},
              {"G", group_to_json(mp.G)},
              {"alpha", mp.alpha},
              {"beta", mp.beta}};
}

inline MatchedPair matched_pair_from_json(const json& j) {
  if (!j.is_object())
    throw malformed_error("matched pair spec must be an object");
  FiniteGroup H = group_from_json(j.at("H"));
  FiniteGroup G = group_from_json(j.at("G"));
  return make_matched_pair(H, G, j.at("alpha").get<Table>(),
                           j.at("beta").get<Table>());
}

inline json rv_to_json(const RVDatum& d) {
  return json{{"sigma", d.sigma.images},
              {"r", d.r},
              {"v", d.v},
              {"bijective", d.v_bijective}};
}

inline json b2_to_json(const B2Morphism& m) {
  std::vector<int> v(m.source.G.order);
  std::iota(v.begin(), v.end(), 0);
  return json{{"sigma", identity_map(m.source.H).images},
              {"r", m.r},
              {"v", v},
              {"bijective", true}};
}

inline json classification_to_json(const Classification& cls) {
  json items = json::array();
  for (const MatchedPair& mp : cls.items)
    items.push_back(matched_pair_to_json(mp));
  json witnesses = json::array();
  for (const auto& [edge, datum] : cls.witnesses) {
    json w = rv_to_json(datum);
    w["from"] = edge.first;
    w["to"] = edge.second;
    witnesses.push_back(std::move(w));
  }
  json identifications = json::array();
  for (const auto& rep : cls.representatives())
    identifications.push_back(describe_group(bicrossed(cls.items[rep])));
  json out{{"items", std::move(items)},
           {"classes", cls.classes},
           {"representatives", cls.representatives()},
           {"witnesses", std::move(witnesses)},
           {"identifications", std::move(identifications)},
           {"nonequivalence_search_size", cls.nonequivalence_search_size}};
  if (cls.basepoint_class)
    out["basepoint_class"] = *cls.basepoint_class;
  else
    out["basepoint_class"] = nullptr;
  return out;
}

// "cyclic:N", inline JSON, or "@path" to a JSON file. The symbol is used
// for the labels of the cyclic shorthand only.
inline FiniteGroup parse_group_spec(const std::string& spec,
                                    const std::string& symbol = "b") {
  if (spec.rfind("cyclic:", 0) == 0) {
    const std::string num = spec.substr(7);
    std::size_t pos = 0;
    long long n = 0;
    try {
      n = std::stoll(num, &pos);
    } catch (const std::exception&) {
      throw malformed_error("bad cyclic group spec: " + spec);
    }
    if (pos != num.size())
      throw malformed_error("bad cyclic group spec: " + spec);
    if (n < 1) throw precondition_error("cyclic group order must be positive");
    return cyclic_group(static_cast<int>(n), symbol);
  }
  std::string text = spec;
  if (!spec.empty() && spec[0] == '@') {
    std::ifstream in(spec.substr(1));
    if (!in) throw malformed_error("cannot read file: " + spec.substr(1));
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw malformed_error(std::string("bad group spec JSON: ") + e.what());
  }
  return group_from_json(j);
}

inline json parse_json_arg(const std::string& spec) {
  std::string text = spec;
  if (!spec.empty() && spec[0] == '@') {
    std::ifstream in(spec.substr(1));
    if (!in) throw malformed_error("cannot read file: " + spec.substr(1));
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw malformed_error(std::string("bad JSON argument: ") + e.what());
  }
}

}  // namespace knit
