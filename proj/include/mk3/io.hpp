#pragma once

// JSON descriptors (fields, algebras, orders, Gram matrices) and report
// serialization. Rationals are written as "p/q" strings; unknown keys in
// input descriptors are rejected.

#include <string>

#include <json.hpp>

#include "mk3/corestrict.hpp"
#include "mk3/k3fib.hpp"
#include "mk3/lattice.hpp"
#include "mk3/quat.hpp"
#include "mk3/ramification.hpp"
#include "mk3/recipes.hpp"

namespace mk3 {

using Json = nlohmann::ordered_json;

/// Throws Validation on unreadable files or malformed JSON.
Json read_json_file(const std::string& path);

/// { "min_poly": [c_0, ..., 1], "disc"?: int }
NumberField field_from_json(const Json& j);
/// Coefficient array (ints or "p/q") or a polynomial string in t.
FieldElement element_from_json(const NumberField& K, const Json& j);
/// { "field": {...}, "a": elem, "b": elem }
QuaternionAlgebra algebra_from_json(const Json& j);
/// { "algebra": {...}, "generators": [[x0, x1, x2, x3] x 4] }
QuatOrder order_from_json(const Json& j);
/// { "gram": [[ints]] }
IntMatrix gram_from_json(const Json& j);

Json rat_json(const Rat& x);
Json to_json(const NumberField& K);
Json to_json(const FieldElement& x);
Json to_json(const IntMatrix& m);
Json to_json(const RatMatrix& m);
Json to_json(const KMatrix& m);
Json to_json(const PrimeIdeal& P);
Json to_json(const RamificationReport& r);
Json to_json(const AdmissibilityCertificate& c);
Json to_json(const DiscForm& F);
Json to_json(const LambdaCanReport& r);
Json to_json(const Rank3Result& r);
Json to_json(const FibrationVerdict& v);
Json to_json(const DeductionReport& d);
Json to_json(const CmReport& r);
Json to_json(const Example31Report& r);

}  // namespace mk3
