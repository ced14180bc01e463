#pragma once

#include "qcorr/assemblage.hpp"
#include "qcorr/catalog.hpp"
#include "qcorr/state.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace qcorr {

struct StateSpec {
    std::string kind;  // matrix | pauli | catalog
    std::string catalog_id;
    CatalogParams params;
    nlohmann::json source;
};

struct LoadedState {
    StateSpec spec;
    DensityMatrix state;
};

// Parses a state spec document. Throws ParseError for malformed JSON or
// missing fields, and the usual validation errors for invalid states.
LoadedState state_from_json(const nlohmann::json& doc);
LoadedState load_state_file(const std::string& path);

// Accepts either a path to a state spec file or "catalog:<id>[:k=v,...]".
LoadedState load_state_argument(const std::string& argument);

NoSignalingBox box_from_json(const nlohmann::json& doc);
NoSignalingBox load_box_file(const std::string& path);

nlohmann::json state_to_json(const DensityMatrix& rho);
nlohmann::json pauli_to_json(const PauliRepresentation& rep);
nlohmann::json box_to_json(const NoSignalingBox& box);
nlohmann::json vec_to_json(const Vec3& v);

nlohmann::json read_json_file(const std::string& path);

}  // namespace qcorr
