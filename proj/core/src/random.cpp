#include "qcorr/random.hpp"

#include <cmath>

namespace qcorr {

namespace {

CMatrix ginibre(Rng& rng, int dim) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            m(i, j) = cplx(g(rng), g(rng));
    return m;
}

}  // namespace

DensityMatrix random_state(Rng& rng, int dim_a, int dim_b) {
    const CMatrix g = ginibre(rng, dim_a * dim_b);
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return density_from_matrix(rho, dim_a, dim_b);
}

DensityMatrix random_qubit(Rng& rng) {
    return random_state(rng, 2, 1);
}

CMatrix random_unitary(Rng& rng, int dim) {
    Eigen::HouseholderQR<CMatrix> qr(ginibre(rng, dim));
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < dim; ++i) {
        const cplx d = r(i, i);
        const double mag = std::abs(d);
        if (mag > 0.0)
            q.col(i) *= d / mag;
    }
    return q;
}

Vec3 random_unit_vector(Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vec3 v;
    do {
        v = Vec3(g(rng), g(rng), g(rng));
    } while (v.norm() < 1e-12);
    return v.normalized();
}

Vec3 random_bell_diagonal_c(Rng& rng) {
    std::exponential_distribution<double> e(1.0);
    double lam[2][2];
    double total = 0.0;
    for (auto& row : lam)
        for (double& l : row) {
            l = e(rng);
            total += l;
        }
    Vec3 c = Vec3::Zero();
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const double l = lam[a][b] / total;
            const double sa = a == 0 ? 1.0 : -1.0;
            const double sb = b == 0 ? 1.0 : -1.0;
            c(0) += sa * l;
            c(1) -= sa * sb * l;
            c(2) += sb * l;
        }
    }
    return c;
}

DensityMatrix random_cq_state(Rng& rng) {
    std::uniform_real_distribution<double> u(0.05, 0.95);
    const double p = u(rng);
    const CMatrix basis = random_unitary(rng, 2);
    const DensityMatrix r0 = random_qubit(rng);
    const DensityMatrix r1 = random_qubit(rng);
    const Eigen::VectorXcd v0 = basis.col(0);
    const Eigen::VectorXcd v1 = basis.col(1);
    const CMatrix m = p * kron(v0 * v0.adjoint(), r0.matrix()) + (1.0 - p) * kron(v1 * v1.adjoint(), r1.matrix());
    return density_from_matrix(m, 2, 2);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t k) {
    // splitmix64 step
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (k + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace qcorr
