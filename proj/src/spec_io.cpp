#include "stm/spec_io.hpp"

#include <json.hpp>

#include "stm/error.hpp"

namespace stm {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  raise(ErrorKind::InvalidSpec, path + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) bad(path, std::string("missing field '") + key + "'");
  return *it;
}

int int_field(const json& j, const char* key, const std::string& path) {
  const json& f = field(j, key, path);
  if (!f.is_number_integer()) bad(path + "." + key, "expected an integer");
  return f.get<int>();
}

GroupSpec parse_group(const json& j, const std::string& path) {
  if (!j.is_object() || j.size() != 1) {
    bad(path, "expected an object with a single variant key");
  }
  const std::string kind = j.begin().key();
  const json& body = j.begin().value();
  if (kind == "torus") {
    return GroupSpec::torus(int_field(body, "rank", path + ".torus"));
  }
  if (kind == "unitary") {
    return GroupSpec::unitary(int_field(body, "n", path + ".unitary"));
  }
  if (kind == "special_unitary") {
    return GroupSpec::special_unitary(int_field(body, "n", path + ".special_unitary"));
  }
  if (kind == "finite_classes") {
    const std::string p = path + ".finite_classes";
    FiniteClassesSpec fc;
    fc.modulus = field(body, "modulus", p).get<std::int64_t>();
    fc.order = field(body, "order", p).get<std::int64_t>();
    const json& classes = field(body, "classes", p);
    if (!classes.is_array() || classes.empty()) bad(p + ".classes", "expected a nonempty array");
    for (const auto& c : classes) {
      ClassDatum d;
      d.size = field(c, "size", p + ".classes[]").get<std::int64_t>();
      const json& exps = field(c, "exponents", p + ".classes[]");
      if (!exps.is_array()) bad(p + ".classes[].exponents", "expected an array");
      for (const auto& e : exps) d.exponents.push_back(e.get<std::int64_t>());
      fc.classes.push_back(std::move(d));
    }
    return GroupSpec::finite(std::move(fc));
  }
  if (kind == "product") {
    const std::string p = path + ".product";
    const json& factors = field(body, "factors", p);
    if (!factors.is_array()) bad(p + ".factors", "expected an array");
    std::vector<GroupSpec> fs;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      fs.push_back(parse_group(factors[i], p + ".factors[" + std::to_string(i) + "]"));
    }
    return GroupSpec::product(std::move(fs));
  }
  bad(path, "unknown group variant '" + kind + "'");
}

RepPtr parse_rep(const json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "std") return RepSpec::std_rep();
    if (s == "finite_given") return RepSpec::finite_given();
    bad(path, "unknown representation shorthand '" + s + "'");
  }
  if (!j.is_object() || j.size() != 1) {
    bad(path, "expected a string shorthand or an object with a single variant key");
  }
  const std::string kind = j.begin().key();
  const json& body = j.begin().value();
  if (kind == "std") return RepSpec::std_rep();
  if (kind == "finite_given") return RepSpec::finite_given();
  if (kind == "torus_weights") {
    const json& ws = field(body, "weights", path + ".torus_weights");
    if (!ws.is_array() || ws.empty()) {
      bad(path + ".torus_weights.weights", "expected a nonempty array");
    }
    std::vector<WeightVector> weights;
    for (const auto& w : ws) {
      if (!w.is_array()) bad(path + ".torus_weights.weights[]", "expected an array");
      WeightVector v;
      for (const auto& c : w) v.push_back(c.get<std::int32_t>());
      weights.push_back(std::move(v));
    }
    return RepSpec::torus_weights(std::move(weights));
  }
  if (kind == "dual") {
    return RepSpec::dual(parse_rep(field(body, "of", path + ".dual"), path + ".dual.of"));
  }
  if (kind == "direct_sum") {
    const json& xs = field(body, "summands", path + ".direct_sum");
    if (!xs.is_array() || xs.empty()) bad(path + ".direct_sum.summands", "expected a nonempty array");
    std::vector<RepPtr> parts;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      parts.push_back(parse_rep(xs[i], path + ".direct_sum.summands[" + std::to_string(i) + "]"));
    }
    return RepSpec::direct_sum(std::move(parts));
  }
  if (kind == "tensor") {
    const json& xs = field(body, "factors", path + ".tensor");
    if (!xs.is_array() || xs.empty()) bad(path + ".tensor.factors", "expected a nonempty array");
    std::vector<RepPtr> parts;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      parts.push_back(parse_rep(xs[i], path + ".tensor.factors[" + std::to_string(i) + "]"));
    }
    return RepSpec::tensor(std::move(parts));
  }
  if (kind == "exterior") {
    return RepSpec::exterior(int_field(body, "k", path + ".exterior"),
                             parse_rep(field(body, "of", path + ".exterior"),
                                       path + ".exterior.of"));
  }
  if (kind == "symmetric") {
    return RepSpec::symmetric(int_field(body, "k", path + ".symmetric"),
                              parse_rep(field(body, "of", path + ".symmetric"),
                                        path + ".symmetric.of"));
  }
  if (kind == "external_tensor") {
    const json& xs = field(body, "legs", path + ".external_tensor");
    if (!xs.is_array() || xs.empty()) bad(path + ".external_tensor.legs", "expected a nonempty array");
    std::vector<RepPtr> parts;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      parts.push_back(parse_rep(xs[i], path + ".external_tensor.legs[" + std::to_string(i) + "]"));
    }
    return RepSpec::external_tensor(std::move(parts));
  }
  bad(path, "unknown representation variant '" + kind + "'");
}

json group_to_json(const GroupSpec& g) {
  return std::visit(
      [&](const auto& node) -> json {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, TorusSpec>) {
          return {{"torus", {{"rank", node.rank}}}};
        } else if constexpr (std::is_same_v<T, UnitarySpec>) {
          return {{"unitary", {{"n", node.n}}}};
        } else if constexpr (std::is_same_v<T, SpecialUnitarySpec>) {
          return {{"special_unitary", {{"n", node.n}}}};
        } else if constexpr (std::is_same_v<T, FiniteClassesSpec>) {
          json classes = json::array();
          for (const auto& c : node.classes) {
            classes.push_back({{"size", c.size}, {"exponents", c.exponents}});
          }
          return {{"finite_classes",
                   {{"modulus", node.modulus}, {"order", node.order},
                    {"classes", std::move(classes)}}}};
        } else {
          json factors = json::array();
          for (const auto& f : node.factors) factors.push_back(group_to_json(f));
          return {{"product", {{"factors", std::move(factors)}}}};
        }
      },
      g.node);
}

json rep_to_json(const RepSpec& v) {
  return std::visit(
      [&](const auto& node) -> json {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, RepStd>) {
          return {{"std", json::object()}};
        } else if constexpr (std::is_same_v<T, RepTorusWeights>) {
          json ws = json::array();
          for (const auto& w : node.weights) ws.push_back(w);
          return {{"torus_weights", {{"weights", std::move(ws)}}}};
        } else if constexpr (std::is_same_v<T, RepFiniteGiven>) {
          return {{"finite_given", json::object()}};
        } else if constexpr (std::is_same_v<T, RepDual>) {
          return {{"dual", {{"of", rep_to_json(*node.of)}}}};
        } else if constexpr (std::is_same_v<T, RepDirectSum>) {
          json xs = json::array();
          for (const auto& s : node.summands) xs.push_back(rep_to_json(*s));
          return {{"direct_sum", {{"summands", std::move(xs)}}}};
        } else if constexpr (std::is_same_v<T, RepTensor>) {
          json xs = json::array();
          for (const auto& f : node.factors) xs.push_back(rep_to_json(*f));
          return {{"tensor", {{"factors", std::move(xs)}}}};
        } else if constexpr (std::is_same_v<T, RepExterior>) {
          return {{"exterior", {{"k", node.k}, {"of", rep_to_json(*node.of)}}}};
        } else if constexpr (std::is_same_v<T, RepSymmetric>) {
          return {{"symmetric", {{"k", node.k}, {"of", rep_to_json(*node.of)}}}};
        } else {
          json xs = json::array();
          for (const auto& l : node.legs) xs.push_back(rep_to_json(*l));
          return {{"external_tensor", {{"legs", std::move(xs)}}}};
        }
      },
      v.node);
}

}  // namespace

SpecDocument parse_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    raise(ErrorKind::InvalidSpec, std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) raise(ErrorKind::InvalidSpec, "spec: expected a JSON object");
  SpecDocument out{doc.value("name", ""), parse_group(field(doc, "group", "spec"), "spec.group"),
                   parse_rep(field(doc, "rep", "spec"), "spec.rep")};
  validate_group(out.group);
  rep_dim(out.group, *out.rep);
  return out;
}

std::string serialize_group(const GroupSpec& g) { return group_to_json(g).dump(); }

std::string serialize_rep(const RepSpec& v) { return rep_to_json(v).dump(); }

std::string serialize_spec(const SpecDocument& doc) {
  json j;
  j["name"] = doc.name;
  j["group"] = group_to_json(doc.group);
  j["rep"] = rep_to_json(*doc.rep);
  return j.dump(2);
}

}  // namespace stm
