#include "qcorr/lp.hpp"

#include "qcorr/error.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace qcorr::lp {

namespace {

constexpr double kEps = 1e-11;

class Tableau {
public:
    Tableau(int rows, int cols) : m_(rows), n_(cols), t_(static_cast<std::size_t>((rows + 1) * (cols + 1)), 0.0) {}

    double& at(int r, int c) { return t_[static_cast<std::size_t>(r * (n_ + 1) + c)]; }
    double at(int r, int c) const { return t_[static_cast<std::size_t>(r * (n_ + 1) + c)]; }
    double& rhs(int r) { return at(r, n_); }
    double& cost(int c) { return at(m_, c); }

    void pivot(int r, int c) {
        const int w = n_ + 1;
        double* pr = &t_[static_cast<std::size_t>(r * w)];
        const double inv = 1.0 / pr[c];
        for (int j = 0; j < w; ++j)
            pr[j] *= inv;
        pr[c] = 1.0;
        for (int i = 0; i <= m_; ++i) {
            if (i == r)
                continue;
            double* pi = &t_[static_cast<std::size_t>(i * w)];
            const double f = pi[c];
            if (f == 0.0)
                continue;
            for (int j = 0; j < w; ++j)
                pi[j] -= f * pr[j];
            pi[c] = 0.0;
        }
    }

    int rows() const { return m_; }
    int cols() const { return n_; }

private:
    int m_, n_;
    std::vector<double> t_;
};

// Returns false on unboundedness. `allowed` limits entering columns.
bool run_simplex(Tableau& t, std::vector<int>& basis, int allowed, int max_iterations, int& iterations) {
    int degenerate = 0;
    while (iterations < max_iterations) {
        const bool bland = degenerate > 50;
        int enter = -1;
        double best = -kEps;
        for (int j = 0; j < allowed; ++j) {
            const double d = t.cost(j);
            if (d < best) {
                enter = j;
                if (bland)
                    break;
                best = d;
            }
        }
        if (enter < 0)
            return true;

        int leave = -1;
        double ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < t.rows(); ++i) {
            const double a = t.at(i, enter);
            if (a > kEps) {
                const double r = t.rhs(i) / a;
                if (r < ratio - 1e-14 || (r <= ratio + 1e-14 && leave >= 0 && basis[i] < basis[leave])) {
                    ratio = r;
                    leave = i;
                }
            }
        }
        if (leave < 0)
            return false;
        degenerate = ratio < 1e-14 ? degenerate + 1 : 0;
        t.pivot(leave, enter);
        basis[leave] = enter;
        ++iterations;
    }
    return true;
}

}  // namespace

Result solve(const Problem& p, int max_iterations) {
    const int n = static_cast<int>(p.c.size());
    const int m_eq = static_cast<int>(p.a_eq.rows());
    const int m_ub = static_cast<int>(p.a_ub.rows());
    if ((m_eq > 0 && p.a_eq.cols() != n) || (m_ub > 0 && p.a_ub.cols() != n) || p.b_eq.size() != m_eq ||
        p.b_ub.size() != m_ub)
        throw Error(ErrorCode::SolverFailure, "inconsistent LP dimensions");

    const int m = m_eq + m_ub;
    const int n_slack = m_ub;
    const int n_art = m;
    const int cols = n + n_slack + n_art;
    Tableau t(m, cols);
    std::vector<int> basis(static_cast<std::size_t>(m));

    for (int i = 0; i < m; ++i) {
        const bool eq = i < m_eq;
        const int row = eq ? i : i - m_eq;
        double b = eq ? p.b_eq(row) : p.b_ub(row);
        const double sign = b < 0.0 ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j)
            t.at(i, j) = sign * (eq ? p.a_eq(row, j) : p.a_ub(row, j));
        if (!eq)
            t.at(i, n + row) = sign;
        t.at(i, n + n_slack + i) = 1.0;
        t.rhs(i) = sign * b;
        basis[static_cast<std::size_t>(i)] = n + n_slack + i;
    }
    // Phase 1 objective: sum of artificials, expressed in non-basic terms.
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= cols; ++j)
            if (j < n + n_slack || j == cols)
                t.at(m, j) -= t.at(i, j);

    Result res;
    int iterations = 0;
    run_simplex(t, basis, cols, max_iterations, iterations);
    if (iterations >= max_iterations) {
        res.status = Status::IterationLimit;
        res.iterations = iterations;
        return res;
    }
    if (-t.rhs(m) > 1e-9) {
        res.status = Status::Infeasible;
        res.iterations = iterations;
        return res;
    }

    // Drive remaining artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
        if (basis[static_cast<std::size_t>(i)] < n + n_slack)
            continue;
        for (int j = 0; j < n + n_slack; ++j) {
            if (std::abs(t.at(i, j)) > 1e-9) {
                t.pivot(i, j);
                basis[static_cast<std::size_t>(i)] = j;
                break;
            }
        }
    }

    // Phase 2 objective row.
    for (int j = 0; j <= cols; ++j)
        t.at(m, j) = j < n ? p.c(j) : 0.0;
    for (int i = 0; i < m; ++i) {
        const int bj = basis[static_cast<std::size_t>(i)];
        const double cb = bj < n ? p.c(bj) : 0.0;
        if (cb == 0.0)
            continue;
        for (int j = 0; j <= cols; ++j)
            t.at(m, j) -= cb * t.at(i, j);
    }

    const bool bounded = run_simplex(t, basis, n + n_slack, max_iterations, iterations);
    res.iterations = iterations;
    if (!bounded) {
        res.status = Status::Unbounded;
        return res;
    }
    if (iterations >= max_iterations) {
        res.status = Status::IterationLimit;
        return res;
    }
    res.x = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i) {
        const int bj = basis[static_cast<std::size_t>(i)];
        if (bj < n)
            res.x(bj) = std::max(0.0, t.rhs(i));
    }
    res.objective = p.c.dot(res.x);
    res.status = Status::Optimal;
    return res;
}

}  // namespace qcorr::lp
