#pragma once

#include "qcorr/measurement.hpp"
#include "qcorr/state.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qcorr {

// Holevo quantity of Bob's conditional ensemble when Alice measures `basis`.
double holevo_quantity(const DensityMatrix& rho, const QubitBasis& basis);

// Same quantity from Pauli coefficients; n need not be normalized to the
// caller's liking but must be nonzero.
double holevo_quantity(const PauliRepresentation& rep, const Vec3& n);

struct OptimizerOptions {
    double grid_step_deg = 2.0;
    double refine_tolerance = 1e-10;
    double eps_opt = 1e-6;
    double cluster_deg = 1.0;
    int max_seeds = 24;
    double circle_step_deg = 1.0;
};

struct BasisOptimum {
    double value = 0.0;
    std::vector<QubitBasis> optimal_bases;
    double eps_opt = 1e-6;
    int evaluations = 0;
};

BasisOptimum classical_correlation(const DensityMatrix& rho, const OptimizerOptions& options = {});
BasisOptimum classical_correlation(const PauliRepresentation& rep, const OptimizerOptions& options = {});

double quantum_discord(const DensityMatrix& rho, const OptimizerOptions& options = {});

struct MubPair {
    Vec3 n1;
    Vec3 n2;
    double value = 0.0;
};

struct ScmubResult {
    double c1 = 0.0;
    double q2 = 0.0;
    double q3 = 0.0;
    Vec3 c1_basis = Vec3::UnitZ();
    Vec3 q2_basis = Vec3::UnitX();
    Vec3 q3_basis = Vec3::UnitY();
    // Retained (C1-basis, Q2-basis) pairs reaching Q2 within eps_opt.
    std::vector<MubPair> retained_pairs;
    int c1_clusters = 0;
};

ScmubResult scmub(const DensityMatrix& rho, const OptimizerOptions& options = {});

struct ScmubValue {
    double value = 0.0;
    QubitBasis basis{Vec3::UnitX()};
};

ScmubValue scmub_q2(const DensityMatrix& rho, const OptimizerOptions& options = {});
ScmubValue scmub_q3(const DensityMatrix& rho, const OptimizerOptions& options = {});

struct ScmubProfile {
    double c1 = 0.0;
    double q2 = 0.0;
    double q3 = 0.0;
    Vec3 c1_basis = Vec3::UnitZ();
    Vec3 q2_basis = Vec3::UnitX();
    Vec3 q3_basis = Vec3::UnitY();
    double discord = 0.0;
    double mutual_info = 0.0;
    int correlation_rank = 0;
    bool global_coherence = false;
    int c1_clusters = 0;
    double eps_opt = 1e-6;
};

ScmubProfile scmub_profile(const DensityMatrix& rho, const OptimizerOptions& options = {});

// Orthonormal Hermitian operator basis, first element 1/sqrt(d).
std::vector<CMatrix> hermitian_operator_basis(int dim);

RMatrix correlation_matrix(const DensityMatrix& rho);
int correlation_rank(const DensityMatrix& rho, double sv_tolerance = 1e-7);
bool has_global_coherence(const DensityMatrix& rho, double sv_tolerance = 1e-7);

bool is_cq_state(const DensityMatrix& rho, double tol = 1e-6);

// Columns of basis_a / basis_b are the local basis vectors; empty means computational.
bool is_bipartite_incoherent(const DensityMatrix& rho, const CMatrix& basis_a = CMatrix(),
                             const CMatrix& basis_b = CMatrix(), double tol = 1e-10);

enum class Region { I, II, III, IV, V, VI };

std::string region_name(Region r);

struct HierarchyOptions {
    double zero_tol = 1e-6;
    double ss_tol = 1e-3;
    OptimizerOptions optimizer;
    // Caller-supplied SS2 (from the steering module) for the class-2 sub-flag.
    std::optional<double> ss2;
};

struct HierarchyClass {
    Region region = Region::I;
    int taxonomy_class = 0;
    std::optional<bool> ss2_positive;
    double discord_forward = 0.0;
    double discord_backward = 0.0;
    bool global_coherence = false;
    bool entangled = false;
    double q2 = 0.0;
    double q3 = 0.0;
};

HierarchyClass classify_hierarchy(const DensityMatrix& rho, const HierarchyOptions& options = {});

// Classification from already computed quantities.
HierarchyClass classify_from_values(double discord_forward, double discord_backward, bool global_coherence,
                                    bool entangled, double q2, double q3, const HierarchyOptions& options);

}  // namespace qcorr
