#pragma once

#include <json.hpp>

#include "sigmapi/equivalence.hpp"
#include "sigmapi/semantics.hpp"
#include "sigmapi/typing.hpp"

namespace sigmapi {

using Json = nlohmann::ordered_json;

// Machine-readable trees.  Keys are stable and every map is written in
// sorted order so that output is deterministic.
Json to_json(const Protocol& p);
Json to_json(const Sequent& s);
Json to_json(const TypedTerm& t);
Json to_json(const Behaviour& b);
Json to_json(const Entailment& e);
Json to_json(const EntailmentSet& q);
Json to_json(const EPReport& r);
Json to_json(const EqualityResult& r);

}  // namespace sigmapi
