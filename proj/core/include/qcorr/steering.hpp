#pragma once

#include "qcorr/assemblage.hpp"
#include "qcorr/random.hpp"
#include "qcorr/state.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qcorr {

// Default trusted directions for n settings: x, y, z in order.
std::vector<Vec3> default_trusted_directions(int n);

struct LhsOptions {
    int max_iterations = 100000;
    double tolerance = 1e-7;
};

// Hidden states indexed by deterministic strategy lambda; outcome of setting x
// is bit x of lambda.
struct LhsModel {
    std::vector<Mat2c> hidden;
    double residual = 0.0;
};

struct LhsResult {
    bool feasible = false;
    double residual = 0.0;
    int iterations = 0;
    std::optional<LhsModel> model;
};

LhsResult lhs_feasibility_1sdi(const Assemblage& assemblage, const LhsOptions& options = {});
LhsResult lhs_feasibility_1sdi(const NoSignalingBox& box, const std::vector<Vec3>& trusted,
                               const LhsOptions& options = {});

struct LhvLhsOptions {
    int d_lambda = 2;
    double resolution = 0.05;
    bool exhaustive = false;
    double exhaustive_resolution = 0.01;
    int starts = 64;
    std::uint64_t seed = kDefaultSeed;
    double tolerance = 1e-9;
    std::size_t max_grid = 250000;
    int refine_top = 8;
};

struct LhvLhsModel {
    std::vector<double> weights;                              // p(lambda)
    std::vector<std::vector<std::array<double, 2>>> response;  // [lambda][x][a]
    std::vector<Vec3> hidden;                                 // r_lambda
    double residual = 0.0;
};

struct LhvLhsResult {
    bool found = false;
    double best_residual = 0.0;
    std::optional<LhvLhsModel> model;
    double effective_resolution = 0.0;
    std::size_t grid_points = 0;
    std::size_t lp_solves = 0;
    std::uint64_t seed = kDefaultSeed;
};

LhvLhsResult lhvlhs_search_1ssdi(const NoSignalingBox& box, const std::vector<Vec3>& trusted,
                                 const LhvLhsOptions& options = {});

// max |p(ab|xy) - sum_l p(l) p(a|x,l) (1 + (-1)^b n_y·r_l)/2|
double lhvlhs_reconstruction_residual(const NoSignalingBox& box, const std::vector<Vec3>& trusted,
                                      const LhvLhsModel& model);

enum class Verdict { NotApplicable, Superunsteerable, ModelFound };

std::string verdict_name(Verdict v);

struct VerdictResult {
    Verdict verdict = Verdict::NotApplicable;
    LhsResult lhs;
    std::optional<LhvLhsResult> search;
};

VerdictResult superunsteerability_verdict(const NoSignalingBox& box, const std::vector<Vec3>& trusted,
                                          const LhvLhsOptions& search = {}, const LhsOptions& lhs = {});

struct SsOptions {
    LhsOptions lhs;
    double rank_tolerance = 1e-9;
    double entry_tolerance = 1e-12;
};

struct SsResult {
    bool found = false;
    double value = 0.0;
    NoSignalingBox steerable_part;
    NoSignalingBox unsteerable_part;
    double certificate_residual = 0.0;
    double reconstruction_error = 0.0;
    std::string candidate;
    int candidates_tested = 0;
};

// Extremal box (1 + (-1)^(a+b) O_xy)/4 for an orthogonal n x n matrix O.
NoSignalingBox extremal_box(const Eigen::MatrixXd& o);

// Correlator matrix E_xy of a dichotomic box.
Eigen::MatrixXd correlator_matrix(const NoSignalingBox& box);

SsResult schrodinger_strength_box(const NoSignalingBox& box, const std::vector<Vec3>& trusted,
                                  const SsOptions& options = {});

struct SsStateOptions {
    SsOptions box;
    double grid_step_deg = 15.0;
    bool widen_alice = false;
    int refine_top = 4;
    int refine_evaluations = 400;
};

struct SsStateResult {
    double value = 0.0;
    std::vector<Vec3> alice;
    std::vector<Vec3> bob;
    SsResult box_result;
    int evaluations = 0;
};

SsStateResult schrodinger_strength_state(const DensityMatrix& rho, int n_settings,
                                         const SsStateOptions& options = {});

}  // namespace qcorr
