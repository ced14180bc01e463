#pragma once

#include "qcorr/state.hpp"

#include <vector>

namespace qcorr {

// Projective qubit measurement along a Bloch direction; outcome 0 is +n.
class QubitBasis {
public:
    explicit QubitBasis(const Vec3& n);

    const Vec3& bloch() const { return n_; }
    Mat2c projector(int outcome) const;

private:
    Vec3 n_;
};

// POVM element a0 (1 + m·σ).
struct PovmElement {
    double a0 = 0.5;
    Vec3 m = Vec3::Zero();

    Mat2c op() const;
};

void validate_povm_element(const PovmElement& e);

// One setting: a list of effects on the measured party that sum to identity.
struct MeasurementSetting {
    std::vector<CMatrix> effects;

    static MeasurementSetting from_basis(const QubitBasis& basis);
    static MeasurementSetting from_povm(const PovmElement& e0, const PovmElement& e1);
};

void validate_setting(const MeasurementSetting& setting, int dim);

// Unit vector with a positive first nonzero component.
Vec3 canonical_direction(const Vec3& n);

// Angle between the axes spanned by n1 and n2, identifying n with -n.
double axis_angle(const Vec3& n1, const Vec3& n2);

}  // namespace qcorr
