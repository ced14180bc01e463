#pragma once

#include "qcorr/assemblage.hpp"
#include "qcorr/state.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace qcorr {

enum class CatalogKind { State, Box };

struct CatalogParameter {
    std::string name;
    double default_value = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::string description;
};

struct CatalogEntry {
    std::string id;
    CatalogKind kind = CatalogKind::State;
    std::vector<CatalogParameter> parameters;
    std::string reference;
    std::string summary;
};

using CatalogParams = std::map<std::string, double>;
using CatalogObject = std::variant<DensityMatrix, NoSignalingBox>;

const std::vector<CatalogEntry>& catalog_entries();
const CatalogEntry& catalog_entry(const std::string& id);

// Throws UnknownId or BadParams. Missing parameters take their defaults.
CatalogObject catalog_get(const std::string& id, const CatalogParams& params = {});
DensityMatrix catalog_state(const std::string& id, const CatalogParams& params = {});
NoSignalingBox catalog_box(const std::string& id, const CatalogParams& params = {});

// |theta,phi> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
Eigen::Vector2cd qubit_ket(double theta, double phi);

// Box (1 + (-1)^(a+b+xy) [x==y] V)/4.
NoSignalingBox bb84_box(double v);

// Werner state V|beta_11><beta_11| + (1-V) 1/4.
DensityMatrix werner_state(double v);

}  // namespace qcorr
