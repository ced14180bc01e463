#include "qcorr/bell_diagonal.hpp"

#include "qcorr/entropy.hpp"
#include "qcorr/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qcorr {

Eigen::Vector4cd bell_vector(int a, int b) {
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    const double r = 1.0 / std::sqrt(2.0);
    // index = 2*alice + bob
    v(b) = r;
    v(2 + (1 - b)) = (a == 0 ? 1.0 : -1.0) * r;
    return v;
}

std::array<std::array<double, 2>, 2> bd_eigenvalues(const Vec3& c) {
    std::array<std::array<double, 2>, 2> l{};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const double sa = a == 0 ? 1.0 : -1.0;
            const double sb = b == 0 ? 1.0 : -1.0;
            l[a][b] = 0.25 * (1.0 + sa * c(0) - sa * sb * c(1) + sb * c(2));
        }
    return l;
}

void validate_bd(const Vec3& c) {
    if (!c.allFinite())
        throw Error(ErrorCode::DomainError, "non-finite correlators");
    const auto l = bd_eigenvalues(c);
    for (const auto& row : l)
        for (double v : row)
            if (v < -1e-12)
                throw Error(ErrorCode::NotPSD, "Bell-diagonal weight " + std::to_string(v) + " is negative");
}

DensityMatrix bd_compose(const Vec3& c) {
    validate_bd(c);
    PauliRepresentation rep;
    rep.T = c.asDiagonal();
    return pauli_compose(rep);
}

BdCanonical bd_canonicalize(const Vec3& c) {
    BdCanonical out;
    std::iota(out.permutation.begin(), out.permutation.end(), 0);
    std::stable_sort(out.permutation.begin(), out.permutation.end(),
                     [&](int i, int j) { return std::abs(c(i)) > std::abs(c(j)); });
    const auto sgn = [](double v) { return v < 0.0 ? -1 : 1; };
    out.signs[0] = sgn(c(out.permutation[0]));
    out.signs[1] = sgn(c(out.permutation[1]));
    // Even number of flips keeps the triple on its local-unitary orbit.
    out.signs[2] = out.signs[0] * out.signs[1];
    for (int i = 0; i < 3; ++i)
        out.c(i) = out.signs[i] * c(out.permutation[i]) + 0.0;
    return out;
}

bool bd_is_canonical(const Vec3& c, double tol) {
    const BdCanonical can = bd_canonicalize(c);
    return (can.c - c).cwiseAbs().maxCoeff() <= tol;
}

double bd_correlation_curve(double x) {
    return 1.0 - binary_entropy(0.5 * (1.0 + std::min(1.0, std::abs(x))));
}

BdProfile bd_profile(const Vec3& c) {
    validate_bd(c);
    if (!bd_is_canonical(c))
        throw Error(ErrorCode::DomainError, "bd_profile expects canonical correlators; call bd_canonicalize first");
    BdProfile p;
    p.eigenvalues = bd_eigenvalues(c);
    double lmax = 0.0;
    double mi = 0.0;
    for (const auto& row : p.eigenvalues)
        for (double l : row) {
            lmax = std::max(lmax, l);
            if (l > 0.0)
                mi += l * std::log2(4.0 * l);
        }
    p.entangled = lmax > 0.5 + 1e-12;
    p.concurrence = std::max(0.0, 2.0 * lmax - 1.0);
    p.c1 = bd_correlation_curve(c(0));
    p.q2 = bd_correlation_curve(c(1));
    p.q3 = bd_correlation_curve(c(2));
    p.ss2 = std::abs(c(1));
    p.ss3 = std::abs(c(2));
    p.mutual_info = std::max(0.0, mi);
    p.discord = std::max(0.0, p.mutual_info - p.c1);
    p.qse_volume = std::abs(c(0) * c(1) * c(2));
    return p;
}

bool bd_two_param_valid(double p, double q, double tol) {
    return q >= -tol && q <= p + tol && p + q <= 1.0 + tol;
}

BdTwoParam bd_two_param(double p, double q) {
    if (!std::isfinite(p) || !std::isfinite(q) || !bd_two_param_valid(p, q))
        throw Error(ErrorCode::DomainError, "tau(p,q) needs 0 <= q <= p and p + q <= 1");
    auto proj = [](int a, int b) {
        const Eigen::Vector4cd v = bell_vector(a, b);
        return CMatrix(v * v.adjoint());
    };
    const CMatrix m = p * proj(0, 0) + 0.5 * q * (proj(1, 0) + proj(1, 1)) +
                      0.25 * (1.0 - p - q) * CMatrix::Identity(4, 4);
    DensityMatrix state = density_from_matrix(m, 2, 2);
    const PauliRepresentation rep = pauli_decompose(state);

    Vec3 c = rep.T.diagonal();
    Mat3 off = rep.T;
    off.diagonal().setZero();
    if (off.cwiseAbs().maxCoeff() > 1e-12 || rep.a.norm() > 1e-12 || rep.b.norm() > 1e-12)
        throw Error(ErrorCode::SolverFailure, "tau(p,q) is not Bell-diagonal");
    std::array<double, 3> got{std::abs(c(0)), std::abs(c(1)), std::abs(c(2))};
    std::array<double, 3> want{p, p, p - q};
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    for (int i = 0; i < 3; ++i)
        if (std::abs(got[i] - want[i]) > 1e-12)
            throw Error(ErrorCode::SolverFailure, "tau(p,q) correlators differ from {p, p, p-q}");

    const BdCanonical can = bd_canonicalize(c);
    return {c, bd_profile(can.c), std::move(state)};
}

}  // namespace qcorr
