#pragma once

#include <Eigen/Dense>

#include <complex>

namespace qcorr {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat2c = Eigen::Matrix2cd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-9;

// Pauli matrices; index 0 is the identity.
const Mat2c& pauli(int k);

CMatrix kron(const CMatrix& x, const CMatrix& y);

// Operator n·σ for a real 3-vector.
Mat2c bloch_operator(const Vec3& n);

class DensityMatrix {
public:
    int dim_a() const { return dim_a_; }
    int dim_b() const { return dim_b_; }
    int dim() const { return dim_a_ * dim_b_; }
    const CMatrix& matrix() const { return rho_; }

    double purity() const;

    friend DensityMatrix density_from_matrix(const CMatrix& entries, int dim_a, int dim_b);

private:
    DensityMatrix(CMatrix rho, int dim_a, int dim_b);

    CMatrix rho_;
    int dim_a_ = 1;
    int dim_b_ = 1;
};

// Throws NotHermitian, NotUnitTrace, NotPSD or WrongDimension.
DensityMatrix density_from_matrix(const CMatrix& entries, int dim_a, int dim_b);

struct PauliRepresentation {
    Vec3 a = Vec3::Zero();
    Vec3 b = Vec3::Zero();
    Mat3 T = Mat3::Zero();
};

void validate_pauli(const PauliRepresentation& rep);

PauliRepresentation pauli_decompose(const DensityMatrix& rho);
DensityMatrix pauli_compose(const PauliRepresentation& rep);

enum class Side { A, B };

// Traces out `side`; the result is a single-party state stored with dims (d, 1).
DensityMatrix partial_trace(const DensityMatrix& rho, Side side);

// Exchanges the roles of A and B.
DensityMatrix swap_subsystems(const DensityMatrix& rho);

// Partial transpose on B.
CMatrix partial_transpose(const DensityMatrix& rho);

DensityMatrix pure_state(const Eigen::VectorXcd& psi, int dim_a, int dim_b);
DensityMatrix product_state(const DensityMatrix& rho_a, const DensityMatrix& rho_b);
DensityMatrix mix(const DensityMatrix& x, const DensityMatrix& y, double weight_x);
DensityMatrix maximally_mixed(int dim_a, int dim_b);

// Single-qubit state (1 + r·σ)/2.
DensityMatrix qubit_state(const Vec3& r);

Eigen::VectorXd hermitian_eigenvalues(const CMatrix& m);

}  // namespace qcorr
