#pragma once

// JSON forms of the library's objects. Words are written in the
// presentation's text form; every document carries "schema" and "version".
//
// Diagram: {"top": "aabc", "layers": [[[offset, relation, "fwd"|"bwd"], ...], ...]}
// Rewrite edge: {"left": "a", "relation": 0, "direction": "fwd", "right": "c"}

#include <string>

#include <json.hpp>

#include "dgroup/diagram.hpp"
#include "dgroup/farley.hpp"
#include "dgroup/freeness.hpp"
#include "dgroup/presentation.hpp"
#include "dgroup/squier.hpp"

namespace dgroup {

using Json = nlohmann::json;

inline constexpr int schema_version = 1;

Json word_to_json(Presentation const& p, Word const& w);
Word word_from_json(Presentation const& p, Json const& j);

Json edge_to_json(Presentation const& p, RewriteEdge const& e);
RewriteEdge edge_from_json(Presentation const& p, Json const& j);

Json derivation_to_json(Presentation const& p, Derivation const& d);
Derivation derivation_from_json(Presentation const& p, Json const& j);

Json diagram_to_json(Diagram const& d);
// Throws std::invalid_argument unless the layers are exactly the canonical
// layering of the diagram they describe.
Diagram diagram_from_json(Presentation const& p, Json const& j);

Json component_to_json(SquierComponent const& c);
Json ball_to_json(FarleyBall const& b);
Json budget_to_json(Budget const& b);

Json certificate_to_json(Presentation const& p, TrivialityCertificate const& c);
Json split_witness_to_json(Presentation const& p, SplitWitness const& s);
SplitWitness split_witness_from_json(Presentation const& p, Json const& j);

// Self-contained witness documents (the presentation is embedded), one per
// kind: "z2", "nontrivial", "derivation", "self_intersection", "split".
Json z2_witness(Presentation const& p, Z2Witness const& z);
Json nontrivial_witness(Presentation const& p, Word const& w, Diagram const& element);
Json derivation_witness(Presentation const& p, Word const& from, Word const& to,
                        Derivation const& d);
Json self_intersection_witness(Presentation const& p, SelfIntersection const& s);
Json split_witness(Presentation const& p, SplitWitness const& s);

// Replays a witness document. Returns its kind; throws std::invalid_argument
// (or ParseError, or a json exception) when it does not check out.
std::string verify_witness(Json const& doc);

Json freeness_to_json(Presentation const& p, Word const& w, FreenessReport const& r);

}  // namespace dgroup
