#pragma once

// JSON encodings shared by the command-line tool and the test suites.

#include "json.hpp"

#include "splitter/core.hpp"
#include "splitter/perfect.hpp"

namespace splitter::io {

using nlohmann::json;

/// {"q", "k1", "k2", "elements"} with ascending elements.
json to_json(const SplitterSet& set);

/// Accepts the canonical set object. Throws PreconditionError on a missing
/// or mistyped field, an element outside [1, q-1] or a duplicate.
SplitterSet set_from_json(const json& j);

json to_json(const Verdict& verdict, u64 q);
json to_json(const Classification& c);
json to_json(const perfect::EvidenceValue& value);
json to_json(const std::vector<perfect::EvidenceItem>& evidence);
json to_json(const perfect::ExistenceVerdict& verdict);

}  // namespace splitter::io
