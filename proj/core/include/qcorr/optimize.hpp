#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>

namespace qcorr::opt {

struct NelderMeadOptions {
    double initial_step = 0.05;
    double f_tolerance = 1e-12;
    double x_tolerance = 1e-10;
    int max_evaluations = 4000;
};

struct NelderMeadResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int evaluations = 0;
};

// Minimizes f starting from x0.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x0,
                             const NelderMeadOptions& options = {});

// Runs body(i) for i in [0, n) on up to `threads` workers. Callers write results
// into slot i so that reductions afterwards are order-independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned threads = 0);

unsigned default_threads();

}  // namespace qcorr::opt
