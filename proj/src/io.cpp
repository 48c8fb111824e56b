#include "splitter/io.hpp"

#include "splitter/error.hpp"

namespace splitter::io {

json to_json(const SplitterSet& set) {
  const auto& inst = set.instance();
  return json{{"q", inst.q()}, {"k1", inst.k1()}, {"k2", inst.k2()}, {"elements", set.elements()}};
}

namespace {

u64 field(const json& j, const char* key) {
  if (!j.contains(key)) throw PreconditionError(std::string("set JSON: missing field \"") + key + "\"");
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw PreconditionError(std::string("set JSON: field \"") + key + "\" must be a nonnegative integer");
  }
  return v.get<u64>();
}

}  // namespace

SplitterSet set_from_json(const json& j) {
  if (!j.is_object()) throw PreconditionError("set JSON: expected an object");
  const SplitterInstance inst(field(j, "q"), field(j, "k1"), field(j, "k2"));
  if (!j.contains("elements") || !j.at("elements").is_array()) {
    throw PreconditionError("set JSON: \"elements\" must be an array");
  }
  std::vector<u64> elems;
  for (const auto& e : j.at("elements")) {
    if (!e.is_number_integer() || e.get<long long>() < 0) {
      throw PreconditionError("set JSON: elements must be nonnegative integers");
    }
    elems.push_back(e.get<u64>());
  }
  return SplitterSet(inst, std::move(elems));
}

json to_json(const Verdict& verdict, u64 q) {
  json j{{"valid", verdict.valid}};
  if (verdict.violation) {
    const auto& v = *verdict.violation;
    j["violation"] = {{"kind", v.kind == Violation::Kind::zero_product ? "zero_product" : "collision"},
                      {"b1", v.b1},
                      {"m1", v.m1},
                      {"b2", v.b2},
                      {"m2", v.m2},
                      {"residue", v.residue},
                      {"text", v.describe(q)}};
  }
  return j;
}

json to_json(const Classification& c) {
  return json{{"kind", to_string(c.kind)}, {"size", c.size}, {"bound", c.bound}};
}

json to_json(const perfect::EvidenceValue& value) {
  return std::visit([](const auto& x) { return json(x); }, value);
}

json to_json(const std::vector<perfect::EvidenceItem>& evidence) {
  json j = json::object();
  for (const auto& item : evidence) j[item.name] = to_json(item.value);
  return j;
}

json to_json(const perfect::ExistenceVerdict& verdict) {
  return json{{"outcome", perfect::to_string(verdict.outcome)},
              {"criterion", perfect::to_string(verdict.criterion)},
              {"evidence", to_json(verdict.evidence)}};
}

}  // namespace splitter::io
