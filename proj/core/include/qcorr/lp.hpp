#pragma once

#include <Eigen/Dense>

namespace qcorr::lp {

// minimize c^T x  s.t.  A_eq x = b_eq,  A_ub x <= b_ub,  x >= 0
struct Problem {
    Eigen::VectorXd c;
    Eigen::MatrixXd a_eq;
    Eigen::VectorXd b_eq;
    Eigen::MatrixXd a_ub;
    Eigen::VectorXd b_ub;
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct Result {
    Status status = Status::Infeasible;
    Eigen::VectorXd x;
    double objective = 0.0;
    int iterations = 0;
};

// Dense two-phase simplex. Dantzig pricing, switching to Bland's rule after a
// run of degenerate pivots.
Result solve(const Problem& problem, int max_iterations = 20000);

}  // namespace qcorr::lp
