#pragma once

#include "qcorr/measurement.hpp"
#include "qcorr/state.hpp"

#include <string>

namespace qcorr {

// B|A: Alice measures and Bob's Bloch vector is steered. A|B is the reverse.
enum class SteeringDirection { BA, AB };

std::string direction_name(SteeringDirection d);

inline constexpr double kSemiAxisZero = 1e-7;

struct SteeringEllipsoid {
    Vec3 center = Vec3::Zero();
    Mat3 orientation = Mat3::Zero();
    Vec3 semi_axes = Vec3::Zero();  // descending
    Mat3 axes = Mat3::Identity();   // columns match semi_axes
    int dimension_class = 0;
    SteeringDirection direction = SteeringDirection::BA;

    double volume() const { return semi_axes.prod(); }

    // (v-c)^T Q^+ (v-c) on the span of the nonzero axes.
    double normalized_radius(const Vec3& v) const;
    // Distance of v-c from the span of the nonzero axes.
    double off_span_distance(const Vec3& v) const;
};

// (b + T^T m)/(1 + a·m) for Alice's POVM element a0(1 + m·σ).
Vec3 steered_bloch(const DensityMatrix& rho, const PovmElement& povm);
Vec3 steered_bloch(const PauliRepresentation& rep, const PovmElement& povm);

SteeringEllipsoid steering_ellipsoid(const DensityMatrix& rho, SteeringDirection direction = SteeringDirection::BA);
SteeringEllipsoid steering_ellipsoid(const PauliRepresentation& rep, SteeringDirection direction = SteeringDirection::BA);

double qse_volume_normalized(const DensityMatrix& rho, SteeringDirection direction = SteeringDirection::BA);

// Sufficient condition: the steering party's marginal is maximally mixed.
bool is_complete_steering(const DensityMatrix& rho, SteeringDirection direction = SteeringDirection::BA);

struct QseClassification {
    int dimension_class = 0;
    bool complete_steering = false;
    // Alice's ellipsoid (A|B) is a point or a segment on a line through the origin.
    bool discord_zero_needle = false;
};

QseClassification classify_qse_state(const DensityMatrix& rho);

std::string ellipsoid_to_json(const SteeringEllipsoid& e, int indent = 2);

// UV-sphere surface mesh as CSV rows "i,j,x,y,z".
std::string ellipsoid_mesh_csv(const SteeringEllipsoid& e, int n_lat = 32, int n_lon = 64);

}  // namespace qcorr
