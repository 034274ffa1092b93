#pragma once

#include "polarlab/dieudonne.hpp"
#include "polarlab/fmodule.hpp"
#include "polarlab/graded.hpp"
#include "polarlab/hopf.hpp"
#include "polarlab/polar.hpp"
#include "polarlab/witt.hpp"

#include <json.hpp>

#include <string>

namespace polarlab {

using Json = nlohmann::ordered_json;

Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

// Algebra schema or {"preset": kind, ...} with kind one of
// truncated_polynomial, exterior, tensor_product, quotient_monomial_ideal,
// dual_of.
GradedAlgebra algebra_from_json(const Json& j);
Json to_json(const GradedAlgebra& a);

// Polar schema, {"preset": "free_polar", ...}, or {"polarize": algebra}.
PolarAlgebra polar_from_json(const Json& j);
Json to_json(const PolarAlgebra& a);

WittVector witt_vector_from_json(const Json& j, const GradedModule& m);
Json to_json(const WittVector& v, const GradedModule& m);

FModule fmodule_from_json(const Json& j);
Json to_json(const FModule& m);
Json to_json(const VModule& m);
Json to_json(const Barcode& b);

DieudonneModule dieudonne_from_json(const Json& j);
Json to_json(const DieudonneModule& m);

// Algebra schema plus "coproducts".
HopfAlgebra hopf_from_json(const Json& j);
Json to_json(const HopfAlgebra& h);

Json to_json(const CofreeReport& r);
Json to_json(const HopfReport& r);

SparseVec combination_from_json(const Json& j, const GradedModule& m);
Json combination_to_json(const SparseVec& v, const GradedModule& m);

}  // namespace polarlab
