#include "qcorr/measurement.hpp"

#include "qcorr/error.hpp"

#include <algorithm>
#include <cmath>

namespace qcorr {

QubitBasis::QubitBasis(const Vec3& n) : n_(n) {
    if (!n.allFinite() || std::abs(n.norm() - 1.0) > 1e-12)
        throw Error(ErrorCode::InvalidMeasurement, "basis direction must be a unit vector");
}

Mat2c QubitBasis::projector(int outcome) const {
    const double sign = outcome == 0 ? 1.0 : -1.0;
    return 0.5 * (pauli(0) + sign * bloch_operator(n_));
}

Mat2c PovmElement::op() const {
    return a0 * (pauli(0) + bloch_operator(m));
}

void validate_povm_element(const PovmElement& e) {
    if (!(e.a0 >= 0.0) || !e.m.allFinite() || e.m.norm() > 1.0 + 1e-12)
        throw Error(ErrorCode::InvalidMeasurement, "POVM element needs a0 >= 0 and |m| <= 1");
}

MeasurementSetting MeasurementSetting::from_basis(const QubitBasis& basis) {
    return {{CMatrix(basis.projector(0)), CMatrix(basis.projector(1))}};
}

MeasurementSetting MeasurementSetting::from_povm(const PovmElement& e0, const PovmElement& e1) {
    validate_povm_element(e0);
    validate_povm_element(e1);
    return {{CMatrix(e0.op()), CMatrix(e1.op())}};
}

void validate_setting(const MeasurementSetting& setting, int dim) {
    if (setting.effects.empty())
        throw Error(ErrorCode::InvalidMeasurement, "measurement has no effects");
    CMatrix total = CMatrix::Zero(dim, dim);
    for (const CMatrix& e : setting.effects) {
        if (e.rows() != dim || e.cols() != dim)
            throw Error(ErrorCode::InvalidMeasurement, "effect has wrong dimension");
        if ((e - e.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
            throw Error(ErrorCode::InvalidMeasurement, "effect is not Hermitian");
        if (hermitian_eigenvalues(e).minCoeff() < -kPsdTol)
            throw Error(ErrorCode::InvalidMeasurement, "effect is not positive semidefinite");
        total += e;
    }
    if ((total - CMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-10)
        throw Error(ErrorCode::InvalidMeasurement, "effects do not sum to the identity");
}

Vec3 canonical_direction(const Vec3& n) {
    Vec3 u = n.normalized();
    for (int i = 0; i < 3; ++i) {
        if (std::abs(u(i)) > 1e-12) {
            if (u(i) < 0.0)
                u = -u;
            break;
        }
    }
    return u;
}

double axis_angle(const Vec3& n1, const Vec3& n2) {
    const double c = std::abs(n1.normalized().dot(n2.normalized()));
    return std::acos(std::min(1.0, c));
}

}  // namespace qcorr
