#pragma once

#include "opm/classify.hpp"
#include "opm/decompose.hpp"
#include "opm/mat.hpp"
#include "opm/pattern.hpp"
#include "opm/perm.hpp"

#include "json.hpp"

#include <string>

namespace opm {

using Json = nlohmann::ordered_json;

// Scalars serialize as "p/q" strings (exact) or JSON numbers (approx).
Json scalar_to_json(const Scalar& s);
std::string scalar_to_string(const Scalar& s);

// Matrix wire format: n arrays of n entries. Entries must be homogeneous:
// all strings (exact) or all numbers. Numbers are snapped to rationals with
// denominator up to 10^6 unless snap is false, in which case they load on
// the approx backend with the given tolerance.
Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& j, bool snap = true, double tol = kDefaultTol);

Json perm_to_json(const Perm& p);  // 1-based image array
Perm perm_from_json(const Json& j);

Json pattern_to_json(const Pattern& p);  // array of '0'/'1' row strings
Pattern pattern_from_json(const Json& j);

// [{"perm": "(12)", "coeff": "1/11"}, ...]
Json comb_to_json(const PermLinComb& c);
PermLinComb comb_from_json(const Json& j);

Json classification_to_json(const Classification& c);

Json two_perm_report_to_json(const TwoPermScanReport& r);
Json three_perm_report_to_json(const ThreePermScanReport& r);

}  // namespace opm
