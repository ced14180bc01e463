#pragma once

#include "qcorr/state.hpp"

#include <array>

namespace qcorr {

// Bell basis |beta_ab> = (|0,b> + (-1)^a |1,1⊕b>)/sqrt(2).
Eigen::Vector4cd bell_vector(int a, int b);

// lambda_ab = (1 + (-1)^a c1 - (-1)^(a+b) c2 + (-1)^b c3)/4, indexed [a][b].
std::array<std::array<double, 2>, 2> bd_eigenvalues(const Vec3& c);

void validate_bd(const Vec3& c);

DensityMatrix bd_compose(const Vec3& c);

struct BdCanonical {
    Vec3 c;
    // c_canonical(i) = signs(i) * c(permutation(i)).
    std::array<int, 3> permutation{0, 1, 2};
    std::array<int, 3> signs{1, 1, 1};
};

BdCanonical bd_canonicalize(const Vec3& c);
bool bd_is_canonical(const Vec3& c, double tol = 1e-12);

struct BdProfile {
    std::array<std::array<double, 2>, 2> eigenvalues{};
    bool entangled = false;
    double c1 = 0.0;
    double q2 = 0.0;
    double q3 = 0.0;
    double ss2 = 0.0;
    double ss3 = 0.0;
    double discord = 0.0;
    double mutual_info = 0.0;
    double qse_volume = 0.0;
    double concurrence = 0.0;
};

// Requires canonical input; throws DomainError otherwise.
BdProfile bd_profile(const Vec3& c);

// 1 - h((1+x)/2), the common closed form of C1, Q2 and Q3.
double bd_correlation_curve(double x);

struct BdTwoParam {
    Vec3 c;
    BdProfile profile;
    DensityMatrix state;
};

// p |b00><b00| + q/2 (|b10><b10| + |b11><b11|) + (1-p-q)/4 · 1.
BdTwoParam bd_two_param(double p, double q);
bool bd_two_param_valid(double p, double q, double tol = 1e-12);

}  // namespace qcorr
