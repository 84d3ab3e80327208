#pragma once

#include <json.hpp>
#include "resect/poly/multipoly.hpp"

namespace resect::poly {

// Terms are {"exponents": [[i, j, c, e], ...], "coeff": "a/b"} with 1-based
// image indices; auxiliary variable k is written as [0, k, 0, e].
nlohmann::json to_json(const MultiPoly& f);
MultiPoly poly_from_json(const nlohmann::json& j);

// {"name": ..., "blocks": [{"kind": "lex"|"grevlex", "vars": [[i, j, c], ...]}]}
nlohmann::json to_json(const MonomialOrder& ord, const Ring& ring);
// Accepts a bare name or an object with explicit blocks.
MonomialOrder order_from_json(const nlohmann::json& j, const Ring& ring);

}  // namespace resect::poly
