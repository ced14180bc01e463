#include "qcorr/state.hpp"

#include "qcorr/error.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace qcorr {

namespace {

std::string magnitude(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

void require_two_qubit(const DensityMatrix& rho, const char* what) {
    if (rho.dim_a() != 2 || rho.dim_b() != 2)
        throw Error(ErrorCode::WrongDimension, std::string(what) + " needs a two-qubit state, got " +
                                                   std::to_string(rho.dim_a()) + "x" + std::to_string(rho.dim_b()));
}

}  // namespace

const Mat2c& pauli(int k) {
    static const std::array<Mat2c, 4> table = [] {
        std::array<Mat2c, 4> s;
        const cplx i(0.0, 1.0);
        s[0] << 1, 0, 0, 1;
        s[1] << 0, 1, 1, 0;
        s[2] << 0, -i, i, 0;
        s[3] << 1, 0, 0, -1;
        return s;
    }();
    return table.at(static_cast<std::size_t>(k));
}

CMatrix kron(const CMatrix& x, const CMatrix& y) {
    CMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    return out;
}

Mat2c bloch_operator(const Vec3& n) {
    return n(0) * pauli(1) + n(1) * pauli(2) + n(2) * pauli(3);
}

Eigen::VectorXd hermitian_eigenvalues(const CMatrix& m) {
    CMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

DensityMatrix::DensityMatrix(CMatrix rho, int dim_a, int dim_b)
    : rho_(std::move(rho)), dim_a_(dim_a), dim_b_(dim_b) {}

double DensityMatrix::purity() const {
    return (rho_ * rho_).trace().real();
}

DensityMatrix density_from_matrix(const CMatrix& entries, int dim_a, int dim_b) {
    if (dim_a < 1 || dim_b < 1)
        throw Error(ErrorCode::WrongDimension, "subsystem dimensions must be positive");
    const Eigen::Index n = static_cast<Eigen::Index>(dim_a) * dim_b;
    if (entries.rows() != n || entries.cols() != n)
        throw Error(ErrorCode::WrongDimension, "expected a " + std::to_string(n) + "x" + std::to_string(n) +
                                                   " matrix, got " + std::to_string(entries.rows()) + "x" +
                                                   std::to_string(entries.cols()));
    if (!entries.allFinite())
        throw Error(ErrorCode::NotHermitian, "matrix has non-finite entries");

    const double herm = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermitianTol)
        throw Error(ErrorCode::NotHermitian, "max |rho - rho^dagger| = " + magnitude(herm));

    const cplx tr = entries.trace();
    const double trace_dev = std::max(std::abs(tr.real() - 1.0), std::abs(tr.imag()));
    if (trace_dev > kTraceTol)
        throw Error(ErrorCode::NotUnitTrace, "|tr rho - 1| = " + magnitude(trace_dev));

    CMatrix h = 0.5 * (entries + entries.adjoint());
    const double min_eig = hermitian_eigenvalues(h).minCoeff();
    if (min_eig < -kPsdTol)
        throw Error(ErrorCode::NotPSD, "minimum eigenvalue " + magnitude(min_eig));

    return DensityMatrix(std::move(h), dim_a, dim_b);
}

void validate_pauli(const PauliRepresentation& rep) {
    const double slack = 1e-12;
    if (!rep.a.allFinite() || !rep.b.allFinite() || !rep.T.allFinite())
        throw Error(ErrorCode::DomainError, "non-finite Pauli coefficients");
    if (rep.a.norm() > 1.0 + slack)
        throw Error(ErrorCode::DomainError, "|a| = " + magnitude(rep.a.norm()) + " exceeds 1");
    if (rep.b.norm() > 1.0 + slack)
        throw Error(ErrorCode::DomainError, "|b| = " + magnitude(rep.b.norm()) + " exceeds 1");
    if (rep.T.cwiseAbs().maxCoeff() > 1.0 + slack)
        throw Error(ErrorCode::DomainError, "correlation entry exceeds 1 in magnitude");
}

PauliRepresentation pauli_decompose(const DensityMatrix& rho) {
    require_two_qubit(rho, "pauli_decompose");
    const CMatrix& m = rho.matrix();
    PauliRepresentation rep;
    const CMatrix id = pauli(0);
    for (int j = 1; j <= 3; ++j) {
        const CMatrix sj = pauli(j);
        rep.a(j - 1) = (m * kron(sj, id)).trace().real();
        rep.b(j - 1) = (m * kron(id, sj)).trace().real();
        for (int k = 1; k <= 3; ++k)
            rep.T(j - 1, k - 1) = (m * kron(sj, CMatrix(pauli(k)))).trace().real();
    }
    return rep;
}

DensityMatrix pauli_compose(const PauliRepresentation& rep) {
    validate_pauli(rep);
    const CMatrix id = pauli(0);
    CMatrix m = kron(id, id);
    for (int j = 1; j <= 3; ++j) {
        const CMatrix sj = pauli(j);
        m += rep.a(j - 1) * kron(sj, id);
        m += rep.b(j - 1) * kron(id, sj);
        for (int k = 1; k <= 3; ++k)
            m += rep.T(j - 1, k - 1) * kron(sj, CMatrix(pauli(k)));
    }
    return density_from_matrix(0.25 * m, 2, 2);
}

DensityMatrix partial_trace(const DensityMatrix& rho, Side side) {
    const int da = rho.dim_a();
    const int db = rho.dim_b();
    const CMatrix& m = rho.matrix();
    if (side == Side::A) {
        CMatrix out = CMatrix::Zero(db, db);
        for (int i = 0; i < da; ++i)
            out += m.block(i * db, i * db, db, db);
        return density_from_matrix(out, db, 1);
    }
    CMatrix out = CMatrix::Zero(da, da);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
            out(i, j) = m.block(i * db, j * db, db, db).trace();
    return density_from_matrix(out, da, 1);
}

DensityMatrix swap_subsystems(const DensityMatrix& rho) {
    const int da = rho.dim_a();
    const int db = rho.dim_b();
    const CMatrix& m = rho.matrix();
    CMatrix out(m.rows(), m.cols());
    for (int i = 0; i < da; ++i)
        for (int k = 0; k < db; ++k)
            for (int j = 0; j < da; ++j)
                for (int l = 0; l < db; ++l)
                    out(k * da + i, l * da + j) = m(i * db + k, j * db + l);
    return density_from_matrix(out, db, da);
}

CMatrix partial_transpose(const DensityMatrix& rho) {
    const int da = rho.dim_a();
    const int db = rho.dim_b();
    CMatrix out = rho.matrix();
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
            out.block(i * db, j * db, db, db).transposeInPlace();
    return out;
}

DensityMatrix pure_state(const Eigen::VectorXcd& psi, int dim_a, int dim_b) {
    const double norm = psi.norm();
    if (norm == 0.0)
        throw Error(ErrorCode::DomainError, "zero state vector");
    const Eigen::VectorXcd v = psi / norm;
    return density_from_matrix(v * v.adjoint(), dim_a, dim_b);
}

DensityMatrix product_state(const DensityMatrix& rho_a, const DensityMatrix& rho_b) {
    return density_from_matrix(kron(rho_a.matrix(), rho_b.matrix()), rho_a.dim(), rho_b.dim());
}

DensityMatrix mix(const DensityMatrix& x, const DensityMatrix& y, double weight_x) {
    if (x.dim_a() != y.dim_a() || x.dim_b() != y.dim_b())
        throw Error(ErrorCode::WrongDimension, "cannot mix states of different dimensions");
    if (weight_x < 0.0 || weight_x > 1.0)
        throw Error(ErrorCode::DomainError, "mixing weight outside [0,1]");
    return density_from_matrix(weight_x * x.matrix() + (1.0 - weight_x) * y.matrix(), x.dim_a(), x.dim_b());
}

DensityMatrix maximally_mixed(int dim_a, int dim_b) {
    const int n = dim_a * dim_b;
    return density_from_matrix(CMatrix::Identity(n, n) / static_cast<double>(n), dim_a, dim_b);
}

DensityMatrix qubit_state(const Vec3& r) {
    if (r.norm() > 1.0 + 1e-12)
        throw Error(ErrorCode::DomainError, "Bloch vector longer than 1");
    return density_from_matrix(0.5 * (CMatrix(pauli(0)) + CMatrix(bloch_operator(r))), 2, 1);
}

}  // namespace qcorr
