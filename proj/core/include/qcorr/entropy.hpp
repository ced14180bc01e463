#pragma once

#include "qcorr/state.hpp"

namespace qcorr {

// Entropies are in bits.
double von_neumann_entropy(const DensityMatrix& rho);
double entropy_of_spectrum(const Eigen::VectorXd& eigenvalues);
double binary_entropy(double x);

// Entropy of the qubit state with Bloch vector length r.
double qubit_entropy(double r);

struct MutualInformation {
    double value = 0.0;
    double entropy_a = 0.0;
    double entropy_b = 0.0;
    double entropy_ab = 0.0;
    // S(rho_AB) - S(rho_A), the unmeasured conditional entropy.
    double conditional_entropy_b_given_a = 0.0;
};

MutualInformation mutual_information_terms(const DensityMatrix& rho);
double mutual_information(const DensityMatrix& rho);

// Wootters concurrence for two qubits.
double concurrence(const DensityMatrix& rho);

// Peres–Horodecki test; exact for two qubits.
bool is_separable_ppt(const DensityMatrix& rho);

}  // namespace qcorr
