#include "qcorr/entropy.hpp"

#include "qcorr/error.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qcorr {

namespace {

double xlog2x(double p) {
    return p > 0.0 ? p * std::log2(p) : 0.0;
}

void require_two_qubit(const DensityMatrix& rho, const char* what) {
    if (rho.dim_a() != 2 || rho.dim_b() != 2)
        throw Error(ErrorCode::WrongDimension, std::string(what) + " needs a two-qubit state");
}

}  // namespace

double entropy_of_spectrum(const Eigen::VectorXd& eigenvalues) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        double p = eigenvalues(i);
        if (p < 0.0 && p >= -kPsdTol)
            p = 0.0;
        s -= xlog2x(p);
    }
    return std::max(0.0, s);
}

double von_neumann_entropy(const DensityMatrix& rho) {
    return entropy_of_spectrum(hermitian_eigenvalues(rho.matrix()));
}

double binary_entropy(double x) {
    if (!(x >= -1e-12 && x <= 1.0 + 1e-12))
        throw Error(ErrorCode::DomainError, "binary entropy argument " + std::to_string(x) + " outside [0,1]");
    x = std::clamp(x, 0.0, 1.0);
    return -xlog2x(x) - xlog2x(1.0 - x);
}

double qubit_entropy(double r) {
    r = std::clamp(r, 0.0, 1.0);
    return binary_entropy(0.5 * (1.0 + r));
}

MutualInformation mutual_information_terms(const DensityMatrix& rho) {
    MutualInformation mi;
    mi.entropy_a = von_neumann_entropy(partial_trace(rho, Side::B));
    mi.entropy_b = von_neumann_entropy(partial_trace(rho, Side::A));
    mi.entropy_ab = von_neumann_entropy(rho);
    mi.conditional_entropy_b_given_a = mi.entropy_ab - mi.entropy_a;
    mi.value = std::max(0.0, mi.entropy_b - mi.conditional_entropy_b_given_a);
    return mi;
}

double mutual_information(const DensityMatrix& rho) {
    return mutual_information_terms(rho).value;
}

double concurrence(const DensityMatrix& rho) {
    require_two_qubit(rho, "concurrence");
    const CMatrix& m = rho.matrix();
    const CMatrix yy = kron(CMatrix(pauli(2)), CMatrix(pauli(2)));
    const CMatrix flipped = yy * m.conjugate() * yy;

    Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
    const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const CMatrix root = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    const CMatrix r = root * flipped * root;

    Eigen::VectorXd mu = hermitian_eigenvalues(r);
    std::vector<double> l(4);
    for (int i = 0; i < 4; ++i)
        l[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, mu(i)));
    std::sort(l.begin(), l.end(), std::greater<>());
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

bool is_separable_ppt(const DensityMatrix& rho) {
    require_two_qubit(rho, "is_separable_ppt");
    return hermitian_eigenvalues(partial_transpose(rho)).minCoeff() >= -kPsdTol;
}

}  // namespace qcorr
