#pragma once

#include <json.hpp>

#include "crn/fir_geometry.hpp"
#include "crn/jpac.hpp"
#include "crn/scenario.hpp"
#include "crn/throughput_gp.hpp"

namespace crn {

using Json = nlohmann::json;

// Non-finite doubles map to null.
Json number_json(double v);
double number_from_json(const Json& j);
Json vector_json(const Vector& v);
Json matrix_json(const Matrix& m);
Vector vector_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);

// Explicit network document. Targets may be given linear ("target_sinr") or
// in dB ("target_sinr_db").
Json network_to_json(const NetworkInstance& net);
NetworkInstance network_from_json(const Json& j);

// Region document: a, c, phi_max, noise, titl, axis intercepts and, for two
// PBSs, the vertex list and sampled boundary lines.
Json fcir_to_json(const FcirPolyhedron& fcir, const FtirBox* ftir = nullptr,
                  int boundary_samples = 64);
FcirPolyhedron fcir_from_json(const Json& j);

Json scenario_to_json(const ScenarioConfig& cfg);
// Keys absent from j keep the defaults of the scenario kind.
ScenarioConfig scenario_from_json(const Json& j);
// Overlays the keys present in patch onto cfg.
void apply_scenario_patch(ScenarioConfig& cfg, const Json& patch);

Json jpac_to_json(const NetworkInstance& net, const JpacOutcome& out);
Json gp_to_json(const NetworkInstance& net, const GpRun& run);

}  // namespace crn
