#include "qcorr/qse.hpp"

#include "qcorr/error.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

namespace qcorr {

namespace {

PauliRepresentation oriented(const PauliRepresentation& rep, SteeringDirection d) {
    if (d == SteeringDirection::BA)
        return rep;
    PauliRepresentation r;
    r.a = rep.b;
    r.b = rep.a;
    r.T = rep.T.transpose();
    return r;
}

void require_two_qubit(const DensityMatrix& rho) {
    if (rho.dim_a() != 2 || rho.dim_b() != 2)
        throw Error(ErrorCode::WrongDimension, "steering ellipsoids are defined for two qubits");
}

}  // namespace

std::string direction_name(SteeringDirection d) {
    return d == SteeringDirection::BA ? "B|A" : "A|B";
}

double SteeringEllipsoid::normalized_radius(const Vec3& v) const {
    const Vec3 d = v - center;
    double r = 0.0;
    for (int i = 0; i < 3; ++i) {
        if (semi_axes(i) > kSemiAxisZero) {
            const double t = axes.col(i).dot(d) / semi_axes(i);
            r += t * t;
        }
    }
    return r;
}

double SteeringEllipsoid::off_span_distance(const Vec3& v) const {
    const Vec3 d = v - center;
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
        if (semi_axes(i) <= kSemiAxisZero) {
            const double t = axes.col(i).dot(d);
            s += t * t;
        }
    }
    return std::sqrt(s);
}

Vec3 steered_bloch(const PauliRepresentation& rep, const PovmElement& povm) {
    validate_povm_element(povm);
    const double w = 1.0 + rep.a.dot(povm.m);
    if (!(povm.a0 > 0.0) || w <= 1e-12)
        throw Error(ErrorCode::DegenerateOutcome, "POVM element has zero probability");
    return (rep.b + rep.T.transpose() * povm.m) / w;
}

Vec3 steered_bloch(const DensityMatrix& rho, const PovmElement& povm) {
    require_two_qubit(rho);
    return steered_bloch(pauli_decompose(rho), povm);
}

SteeringEllipsoid steering_ellipsoid(const PauliRepresentation& input, SteeringDirection direction) {
    const PauliRepresentation rep = oriented(input, direction);
    const double a2 = rep.a.squaredNorm();
    if (a2 > 1.0 - 1e-9)
        throw Error(ErrorCode::SingularMarginal, "steering party's Bloch vector has norm " + std::to_string(std::sqrt(a2)));
    const double k = 1.0 - a2;
    SteeringEllipsoid e;
    e.direction = direction;
    e.center = (rep.b - rep.T.transpose() * rep.a) / k;
    const Mat3 m = rep.T - rep.a * rep.b.transpose();
    const Mat3 metric = Mat3::Identity() + rep.a * rep.a.transpose() / k;
    Mat3 q = m.transpose() * metric * m / k;
    q = 0.5 * (q + q.transpose());
    e.orientation = q;

    Eigen::SelfAdjointEigenSolver<Mat3> es(q);
    for (int i = 0; i < 3; ++i) {
        const int src = 2 - i;
        e.semi_axes(i) = std::sqrt(std::max(0.0, es.eigenvalues()(src)));
        e.axes.col(i) = es.eigenvectors().col(src);
    }
    if (e.axes.determinant() < 0.0)
        e.axes.col(2) = -e.axes.col(2);
    e.dimension_class = 0;
    for (int i = 0; i < 3; ++i)
        if (e.semi_axes(i) > kSemiAxisZero)
            ++e.dimension_class;
    return e;
}

SteeringEllipsoid steering_ellipsoid(const DensityMatrix& rho, SteeringDirection direction) {
    require_two_qubit(rho);
    return steering_ellipsoid(pauli_decompose(rho), direction);
}

double qse_volume_normalized(const DensityMatrix& rho, SteeringDirection direction) {
    return steering_ellipsoid(rho, direction).volume();
}

bool is_complete_steering(const DensityMatrix& rho, SteeringDirection direction) {
    require_two_qubit(rho);
    const PauliRepresentation rep = oriented(pauli_decompose(rho), direction);
    return rep.a.norm() <= 1e-9;
}

QseClassification classify_qse_state(const DensityMatrix& rho) {
    require_two_qubit(rho);
    const PauliRepresentation rep = pauli_decompose(rho);
    QseClassification c;
    c.dimension_class = steering_ellipsoid(rep, SteeringDirection::BA).dimension_class;
    c.complete_steering = rep.a.norm() <= 1e-9;

    if (rep.b.squaredNorm() > 1.0 - 1e-9) {
        // Bob's marginal is pure, so the state is a product.
        c.discord_zero_needle = true;
        return c;
    }
    const SteeringEllipsoid alice = steering_ellipsoid(rep, SteeringDirection::AB);
    if (alice.dimension_class == 0) {
        c.discord_zero_needle = true;
    } else if (alice.dimension_class == 1) {
        const Vec3 u = alice.axes.col(0);
        const Vec3 perp = alice.center - alice.center.dot(u) * u;
        c.discord_zero_needle = perp.norm() <= kSemiAxisZero;
    }
    return c;
}

std::string ellipsoid_to_json(const SteeringEllipsoid& e, int indent) {
    nlohmann::json j;
    j["direction"] = direction_name(e.direction);
    j["center"] = {e.center(0), e.center(1), e.center(2)};
    j["semiAxes"] = {e.semi_axes(0), e.semi_axes(1), e.semi_axes(2)};
    nlohmann::json axes = nlohmann::json::array();
    for (int i = 0; i < 3; ++i)
        axes.push_back({e.axes(0, i), e.axes(1, i), e.axes(2, i)});
    j["axes"] = axes;
    j["class"] = e.dimension_class;
    j["volume"] = e.volume();
    return j.dump(indent);
}

std::string ellipsoid_mesh_csv(const SteeringEllipsoid& e, int n_lat, int n_lon) {
    std::ostringstream os;
    os.precision(17);
    os << "i,j,x,y,z\n";
    for (int i = 0; i < n_lat; ++i) {
        const double theta = std::numbers::pi * i / std::max(1, n_lat - 1);
        for (int j = 0; j < n_lon; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / n_lon;
            const Vec3 s(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
            Vec3 p = e.center;
            for (int k = 0; k < 3; ++k)
                p += e.semi_axes(k) * s(k) * e.axes.col(k);
            os << i << ',' << j << ',' << p(0) << ',' << p(1) << ',' << p(2) << '\n';
        }
    }
    return os.str();
}

}  // namespace qcorr
