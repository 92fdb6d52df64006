#pragma once

#include "symtensor/body.hpp"

#include <json.hpp>

#include <string>

namespace symtensor {

using Json = nlohmann::ordered_json;

// Body wire format "symtensor/1".  Rationals are canonical "p/q" strings,
// floating entries shortest round-trip decimals.  Oracle bodies serialize
// their construction recipe and are rebuilt by re-running it on load, so a
// round trip preserves gauges exactly.
Json body_to_json(const Body& body);
Body body_from_json(const Json& j);

std::string body_to_string(const Body& body);
Body body_from_string(const std::string& text);

void save_body(const Body& body, const std::string& path);
Body load_body(const std::string& path);

Json provenance_to_json(const Provenance& prov);

// rational vectors/matrices as arrays of canonical strings
Json vector_to_json(const VectorXq& v);
VectorXq vector_from_json(const Json& j);
Json matrix_to_json(const MatrixXq& m);
MatrixXq matrix_from_json(const Json& j);

}  // namespace symtensor
