#pragma once

#include <string>

#include <json.hpp>

#include "sbal/balance.hpp"
#include "sbal/grassmann.hpp"
#include "sbal/integrate.hpp"
#include "sbal/projective.hpp"
#include "sbal/supermatrix.hpp"

namespace sbal {

using Json = nlohmann::json;

// {"n_pairs": N, "terms": [{"mask": m, "re": x, "im": y}, ...]}
// terms ascending by mask; round trip is bit-identical for pruned values
Json to_json(const Multivector& m);
Multivector multivector_from_json(const Json& j, double zero_tolerance = 1e-13);

// {"p": p, "q": q, "entries": [[<multivector>, ...], ...]} row-major
Json to_json(const SuperMatrix& g);
SuperMatrix supermatrix_from_json(const Json& j, double zero_tolerance = 1e-13);

// {"p": p, "q": q, "even": [...], "odd": [...]}
Json to_json(const ProjectivePoint& pt);
ProjectivePoint point_from_json(const Json& j, double zero_tolerance = 1e-13);

// {"n": n, "X": [mv, mv], "Theta": [mv, ...]}
Json to_json(const PointEmbedding& e);
PointEmbedding embedding_from_json(const Json& j, double zero_tolerance = 1e-13);

// {"radial": n, "angular": m, "tol": t}
Json to_json(const QuadratureSpec& s);
QuadratureSpec spec_from_json(const Json& j);

Json to_json(const SectionScaling& s);
SectionScaling scaling_from_json(const Json& j);

Json to_json(const BalanceReport& r);

// Berezin order, epsilon sign and contraction constant: attached to every
// CLI output so emitted numbers are reproducible
Json convention_constants(int n_pairs = 2);

}  // namespace sbal
