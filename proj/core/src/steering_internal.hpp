#pragma once

#include "qcorr/steering.hpp"

namespace qcorr::detail {

// Assemblage in Bloch coordinates sigma = (t + s·sigma)/2 with s restricted to
// the span of `span` (3 x k, orthonormal columns). Column index is 2x + a;
// row 0 holds t, rows 1..k the span coordinates of s.
struct BlochAssemblage {
    int n_settings = 0;
    Eigen::MatrixXd span;
    Eigen::MatrixXd g;
};

BlochAssemblage bloch_from_assemblage(const Assemblage& assemblage);
BlochAssemblage bloch_from_box(const NoSignalingBox& box, const std::vector<Vec3>& trusted);

// Orthonormal basis of span{directions}.
Eigen::MatrixXd span_basis(const std::vector<Vec3>& directions);

LhsResult solve_lhs(const BlochAssemblage& s, const LhsOptions& options);

void require_dichotomic(const NoSignalingBox& box, int max_settings);

}  // namespace qcorr::detail
