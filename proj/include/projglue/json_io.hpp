#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "projglue/census.hpp"
#include "projglue/cohomology.hpp"
#include "projglue/gluing.hpp"
#include "projglue/hexlattice.hpp"
#include "projglue/slice.hpp"
#include "projglue/triangle.hpp"

// JSON readers throw Error(kInvalidInput) on malformed documents. Writers use
// ordered objects so output field order is fixed.
namespace projglue::json_io {

using Json = nlohmann::ordered_json;

Json parse(const std::string& text);
Json read_file(const std::string& path);  // io-error if unreadable

// Numbers are accepted as JSON numbers or decimal strings.
double number_from_json(const Json& j);
// Decimal string with 17 significant digits; strtod recovers the same double.
std::string decimal_string(double v);

Json matrix_to_json(const MatX& m);
MatX matrix_from_json(const Json& j, int rows, int cols);
Mat4 mat4_from_json(const Json& j);

Json rational_to_json(const Rational& q);  // "p/q", or "p" when integral
Json shape_to_json(const hexlattice::HexShape& a);
hexlattice::HexShape shape_from_json(const Json& j);
Json exact_matrix_to_json(const hexlattice::IntMat2& m);
Json witness_to_json(const hexlattice::QIsometryWitness& w);

// {"generators", "relators", "matrices", "peripherals"}.
struct CohomologyInput {
  cohomology::Representation rep;
  std::vector<std::vector<cohomology::Word>> peripherals;
};
CohomologyInput cohomology_input_from_json(const Json& j);
// Writes matrix entries as decimal strings so reading back is bit-exact.
Json cohomology_input_to_json(const CohomologyInput& in);
Json dims_to_json(const cohomology::CohomologyDims& d);
Json restriction_to_json(const cohomology::RestrictionReport& r);

std::vector<census::CensusEntry> census_from_json(const Json& j);
Json census_to_json(const std::vector<census::CensusEntry>& entries);
census::GluingPlan plan_from_json(const Json& j);
Json plan_to_json(const census::GluingPlan& plan);
Json plan_report_to_json(const census::GluingPlan& plan, const census::PlanReport& r);
Json edge_to_json(const census::CompatibilityEdge& e);

gluing::PeripheralRep peripheral_from_json(const Json& j);  // {"M1", "M2"}
Json matching_to_json(const gluing::MatchingSolution& s);
Json midcond_to_json(const gluing::MiddleEigenReport& r);
Json pingpong_to_json(const gluing::PingPongReport& r);
// {"gens1", "gens2", "peripheral_words", "gluing_matrix", "type"}.
gluing::GluedGroup glued_group_from_json(const Json& j);

Json tiles_to_json(const std::vector<triangle::Tile>& tiles, double tau);

Json transversality_to_json(const slice::TransversalityReport& r);
Json bivector_to_json(const slice::BivectorReport& r);
Json pitfall_to_json(const slice::PitfallReport& r);

Json error_to_json(const std::string& kind, const std::string& message);

}  // namespace projglue::json_io
