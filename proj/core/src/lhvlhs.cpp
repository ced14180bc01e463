#include "steering_internal.hpp"

#include "qcorr/error.hpp"
#include "qcorr/lp.hpp"
#include "qcorr/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace qcorr {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Fit {
    double residual = 1e300;
    VectorXd q;  // q(a,x,lambda) at index (lambda*n + x)*2 + a
    MatrixXd u;  // k x d hidden vectors in span coordinates
};

class Searcher {
public:
    Searcher(const NoSignalingBox& box, const std::vector<Vec3>& trusted, const LhvLhsOptions& opt)
        : box_(box), opt_(opt), n_(box.nx()), ny_(box.ny()), d_(opt.d_lambda) {
        span_ = detail::span_basis(trusted);
        k_ = static_cast<int>(span_.cols());
        nproj_ = MatrixXd(ny_, k_);
        for (int y = 0; y < ny_; ++y)
            nproj_.row(y) = trusted[static_cast<std::size_t>(y)].transpose() * span_;
        build_static_rows();
    }

    int k() const { return k_; }
    int d() const { return d_; }
    const MatrixXd& span() const { return span_; }
    std::size_t lp_solves() const { return lp_solves_; }

    int angles_per_hidden() const { return k_ == 3 ? 2 : 1; }

    MatrixXd hidden_from_angles(const VectorXd& ang) const {
        MatrixXd u(k_, d_);
        const int m = angles_per_hidden();
        for (int l = 0; l < d_; ++l)
            u.col(l) = point(ang.segment(l * m, m));
        return u;
    }

    VectorXd point(const VectorXd& a) const {
        VectorXd v(k_);
        if (k_ == 1) {
            v(0) = std::cos(a(0));
        } else if (k_ == 2) {
            v << std::cos(a(0)), std::sin(a(0));
        } else {
            v << std::sin(a(0)) * std::cos(a(1)), std::sin(a(0)) * std::sin(a(1)), std::cos(a(0));
        }
        return v;
    }

    VectorXd angles_of(const VectorXd& v) const {
        VectorXd a(angles_per_hidden());
        if (k_ == 1) {
            a(0) = std::acos(std::clamp(v(0), -1.0, 1.0));
        } else if (k_ == 2) {
            a(0) = std::atan2(v(1), v(0));
        } else {
            const VectorXd w = v.norm() > 0 ? VectorXd(v.normalized()) : VectorXd(VectorXd::Unit(3, 2));
            a(0) = std::acos(std::clamp(w(2), -1.0, 1.0));
            a(1) = std::atan2(w(1), w(0));
        }
        return a;
    }

    Fit solve(const MatrixXd& u) {
        ++lp_solves_;
        const int nq = 2 * n_ * d_;
        lp::Problem prob;
        prob.c = VectorXd::Zero(nq + 1);
        prob.c(nq) = 1.0;
        const int rows = 2 * n_ * ny_ * 4;
        prob.a_ub = MatrixXd::Zero(rows, nq + 1);
        prob.b_ub = VectorXd(rows);
        int r = 0;
        for (int x = 0; x < n_; ++x)
            for (int y = 0; y < ny_; ++y)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        const double p = box_(x, y, a, b);
                        const double sb = b == 0 ? 1.0 : -1.0;
                        for (int l = 0; l < d_; ++l) {
                            const double pb = 0.5 * (1.0 + sb * nproj_.row(y).dot(u.col(l)));
                            prob.a_ub(r, idx(a, x, l)) = pb;
                            prob.a_ub(r + 1, idx(a, x, l)) = -pb;
                        }
                        prob.a_ub(r, nq) = -1.0;
                        prob.a_ub(r + 1, nq) = -1.0;
                        prob.b_ub(r) = p;
                        prob.b_ub(r + 1) = -p;
                        r += 2;
                    }
        prob.a_eq = a_eq_;
        prob.b_eq = b_eq_;
        const lp::Result res = lp::solve(prob);
        Fit f;
        f.u = u;
        if (res.status != lp::Status::Optimal)
            return f;
        f.q = res.x.head(nq);
        f.residual = reconstruction(f.q, u);
        return f;
    }

    double reconstruction(const VectorXd& q, const MatrixXd& u) const {
        double worst = 0.0;
        for (int x = 0; x < n_; ++x)
            for (int y = 0; y < ny_; ++y)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        const double sb = b == 0 ? 1.0 : -1.0;
                        double m = 0.0;
                        for (int l = 0; l < d_; ++l)
                            m += q(idx(a, x, l)) * 0.5 * (1.0 + sb * nproj_.row(y).dot(u.col(l)));
                        worst = std::max(worst, std::abs(m - box_(x, y, a, b)));
                    }
        return worst;
    }

    // Least-squares update of the hidden vectors for fixed q, clamped to the ball.
    MatrixXd hidden_update(const VectorXd& q) const {
        const int rows = n_ * ny_ * 4;
        MatrixXd a = MatrixXd::Zero(rows, k_ * d_);
        VectorXd rhs(rows);
        int r = 0;
        for (int x = 0; x < n_; ++x)
            for (int y = 0; y < ny_; ++y)
                for (int aa = 0; aa < 2; ++aa)
                    for (int b = 0; b < 2; ++b) {
                        const double sb = b == 0 ? 1.0 : -1.0;
                        double base = 0.0;
                        for (int l = 0; l < d_; ++l) {
                            const double w = q(idx(aa, x, l));
                            base += 0.5 * w;
                            a.block(r, l * k_, 1, k_) = 0.5 * sb * w * nproj_.row(y);
                        }
                        rhs(r) = box_(x, y, aa, b) - base;
                        ++r;
                    }
        const VectorXd sol = a.completeOrthogonalDecomposition().solve(rhs);
        MatrixXd u(k_, d_);
        for (int l = 0; l < d_; ++l) {
            VectorXd v = sol.segment(l * k_, k_);
            if (v.norm() > 1.0)
                v.normalize();
            u.col(l) = v;
        }
        return u;
    }

    Fit polish(Fit f, int rounds = 60) {
        for (int i = 0; i < rounds && f.residual > 0.01 * opt_.tolerance && f.q.size() > 0; ++i) {
            Fit g = solve(hidden_update(f.q));
            if (!(g.residual < f.residual * (1.0 - 1e-9)))
                break;
            f = std::move(g);
        }
        return f;
    }

    Fit refine(const VectorXd& angles0, int max_evals) {
        opt::NelderMeadOptions nm;
        nm.initial_step = 0.1;
        nm.f_tolerance = 1e-14;
        nm.x_tolerance = 1e-10;
        nm.max_evaluations = max_evals;
        const auto res = opt::nelder_mead([&](const VectorXd& a) { return solve(hidden_from_angles(a)).residual; },
                                          angles0, nm);
        return solve(hidden_from_angles(res.x));
    }

    // Chord through the conditional Bloch vectors, extended to the unit sphere.
    MatrixXd chord_seed(const detail::BlochAssemblage& s) const {
        std::vector<VectorXd> pts;
        std::vector<double> wts;
        for (Eigen::Index c = 0; c < s.g.cols(); ++c) {
            const double t = s.g(0, c);
            if (t > 1e-12) {
                pts.push_back(s.g.col(c).tail(k_) / t);
                wts.push_back(t);
            }
        }
        VectorXd mean = VectorXd::Zero(k_);
        double wsum = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            mean += wts[i] * pts[i];
            wsum += wts[i];
        }
        mean /= std::max(wsum, 1e-300);
        MatrixXd cov = MatrixXd::Zero(k_, k_);
        for (std::size_t i = 0; i < pts.size(); ++i)
            cov += wts[i] * (pts[i] - mean) * (pts[i] - mean).transpose();
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(cov);
        MatrixXd u(k_, d_);
        if (es.eigenvalues()(k_ - 1) < 1e-24) {
            // Bob is uncorrelated with Alice; every hidden state sits at the common point.
            u.colwise() = mean;
            return u;
        }
        VectorXd dir = es.eigenvectors().col(k_ - 1);
        const double md = mean.dot(dir);
        const double disc = std::max(0.0, md * md - mean.squaredNorm() + 1.0);
        const double t0 = -md - std::sqrt(disc);
        const double t1 = -md + std::sqrt(disc);
        for (int l = 0; l < d_; ++l) {
            const double t = l == 0 ? t0 : (l == 1 ? t1 : t0 + (t1 - t0) * l / std::max(1, d_ - 1));
            u.col(l) = mean + t * dir;
        }
        return u;
    }

    std::vector<VectorXd> grid_points(double h, std::size_t& n_points, double& effective) const {
        auto count_tuples = [&](std::size_t n) {
            double c = 1.0;
            for (int i = 0; i < d_; ++i)
                c = c * static_cast<double>(n + static_cast<std::size_t>(i)) / static_cast<double>(i + 1);
            return c;
        };
        std::size_t n = 0;
        if (k_ == 1)
            n = static_cast<std::size_t>(std::ceil(std::numbers::pi / h)) + 1;
        else if (k_ == 2)
            n = static_cast<std::size_t>(std::ceil(2.0 * std::numbers::pi / h));
        else
            n = static_cast<std::size_t>(std::ceil(4.0 * std::numbers::pi / (h * h)));
        while (n > 2 && count_tuples(n) > static_cast<double>(opt_.max_grid))
            --n;
        n_points = n;

        std::vector<VectorXd> pts;
        if (k_ == 1) {
            effective = std::numbers::pi / static_cast<double>(n - 1);
            for (std::size_t i = 0; i < n; ++i)
                pts.push_back(VectorXd::Constant(1, effective * static_cast<double>(i)));
        } else if (k_ == 2) {
            effective = 2.0 * std::numbers::pi / static_cast<double>(n);
            for (std::size_t i = 0; i < n; ++i)
                pts.push_back(VectorXd::Constant(1, effective * static_cast<double>(i)));
        } else {
            effective = std::sqrt(4.0 * std::numbers::pi / static_cast<double>(n));
            const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
            for (std::size_t i = 0; i < n; ++i) {
                const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
                VectorXd a(2);
                a << std::acos(z), golden * static_cast<double>(i);
                pts.push_back(a);
            }
        }
        return pts;
    }

private:
    int idx(int a, int x, int l) const { return (l * n_ + x) * 2 + a; }

    void build_static_rows() {
        const int nq = 2 * n_ * d_;
        const int rows = d_ * (n_ - 1) + 1;
        a_eq_ = MatrixXd::Zero(rows, nq + 1);
        b_eq_ = VectorXd::Zero(rows);
        int r = 0;
        for (int l = 0; l < d_; ++l)
            for (int x = 1; x < n_; ++x) {
                for (int a = 0; a < 2; ++a) {
                    a_eq_(r, idx(a, x, l)) += 1.0;
                    a_eq_(r, idx(a, 0, l)) -= 1.0;
                }
                ++r;
            }
        for (int l = 0; l < d_; ++l)
            for (int a = 0; a < 2; ++a)
                a_eq_(r, idx(a, 0, l)) = 1.0;
        b_eq_(r) = 1.0;
    }

    const NoSignalingBox& box_;
    LhvLhsOptions opt_;
    int n_, ny_, d_, k_ = 0;
    MatrixXd span_;
    MatrixXd nproj_;
    MatrixXd a_eq_;
    VectorXd b_eq_;
    std::size_t lp_solves_ = 0;
};

// Visits all nondecreasing index tuples of length d over [0, n).
template <typename F>
void for_each_multiset(std::size_t n, int d, F&& f) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    while (true) {
        f(idx);
        int pos = d - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - 1)
            --pos;
        if (pos < 0)
            return;
        const std::size_t v = idx[static_cast<std::size_t>(pos)] + 1;
        for (int i = pos; i < d; ++i)
            idx[static_cast<std::size_t>(i)] = v;
    }
}

}  // namespace

double lhvlhs_reconstruction_residual(const NoSignalingBox& box, const std::vector<Vec3>& trusted,
                                      const LhvLhsModel& model) {
    double worst = 0.0;
    for (int x = 0; x < box.nx(); ++x)
        for (int y = 0; y < box.ny(); ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const double sb = b == 0 ? 1.0 : -1.0;
                    double m = 0.0;
                    for (std::size_t l = 0; l < model.weights.size(); ++l)
                        m += model.weights[l] * model.response[l][static_cast<std::size_t>(x)][static_cast<std::size_t>(a)] *
                             0.5 * (1.0 + sb * trusted[static_cast<std::size_t>(y)].dot(model.hidden[l]));
                    worst = std::max(worst, std::abs(m - box(x, y, a, b)));
                }
    return worst;
}

LhvLhsResult lhvlhs_search_1ssdi(const NoSignalingBox& box, const std::vector<Vec3>& trusted,
                                 const LhvLhsOptions& opt) {
    detail::require_dichotomic(box, 3);
    if (opt.d_lambda < 1 || opt.d_lambda > 4)
        throw Error(ErrorCode::UnsupportedScenario, "hidden-variable dimension must be between 1 and 4");
    const detail::BlochAssemblage bloch = detail::bloch_from_box(box, trusted);

    Searcher s(box, trusted, opt);
    LhvLhsResult out;
    out.seed = opt.seed;
    Fit best;
    auto consider = [&](Fit f) {
        if (f.residual < best.residual)
            best = std::move(f);
    };
    auto done = [&] { return best.residual < opt.tolerance; };

    consider(s.polish(s.solve(s.chord_seed(bloch))));

    const double h = opt.exhaustive ? opt.exhaustive_resolution : opt.resolution;
    std::size_t n_points = 0;
    const std::vector<VectorXd> pts = s.grid_points(h, n_points, out.effective_resolution);
    const int m = s.angles_per_hidden();

    if (!done()) {
        std::vector<std::vector<std::size_t>> tuples;
        for_each_multiset(n_points, s.d(), [&](const std::vector<std::size_t>& t) { tuples.push_back(t); });
        out.grid_points = tuples.size();
        auto angles_of_tuple = [&](const std::vector<std::size_t>& t) {
            VectorXd a(m * s.d());
            for (int l = 0; l < s.d(); ++l)
                a.segment(l * m, m) = pts[t[static_cast<std::size_t>(l)]];
            return a;
        };
        std::vector<double> residuals(tuples.size());
        const unsigned threads = opt::default_threads();
        std::vector<std::size_t> solves(threads, 0);
        // Each worker owns a Searcher so LP bookkeeping stays thread-local.
        const std::size_t chunk = (tuples.size() + threads - 1) / threads;
        opt::parallel_for(threads, [&](std::size_t w) {
            Searcher local(box, trusted, opt);
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(tuples.size(), lo + chunk);
            for (std::size_t i = lo; i < hi; ++i)
                residuals[i] = local.solve(s.hidden_from_angles(angles_of_tuple(tuples[i]))).residual;
            solves[w] = local.lp_solves();
        });
        for (std::size_t c : solves)
            out.lp_solves += c;

        std::vector<std::size_t> order(tuples.size());
        std::iota(order.begin(), order.end(), 0);
        const std::size_t top = std::min<std::size_t>(static_cast<std::size_t>(opt.refine_top), order.size());
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(top), order.end(),
                          [&](std::size_t a, std::size_t b) {
                              return residuals[a] < residuals[b] || (residuals[a] == residuals[b] && a < b);
                          });
        for (std::size_t i = 0; i < top && !done(); ++i)
            consider(s.polish(s.refine(angles_of_tuple(tuples[order[i]]), 300)));
    }

    std::vector<Fit> starts(static_cast<std::size_t>(done() ? 0 : opt.starts));
    std::vector<std::size_t> start_solves(starts.size(), 0);
    opt::parallel_for(starts.size(), [&](std::size_t i) {
        Rng rng(derive_seed(opt.seed, i));
        Searcher local(box, trusted, opt);
        VectorXd a(m * local.d());
        for (int l = 0; l < local.d(); ++l) {
            const Vec3 v = random_unit_vector(rng);
            VectorXd w = VectorXd::Zero(local.k());
            for (int j = 0; j < local.k(); ++j)
                w(j) = v(j);
            a.segment(l * m, m) = local.angles_of(w);
        }
        starts[i] = local.polish(local.refine(a, 200));
        start_solves[i] = local.lp_solves();
    });
    for (std::size_t c : start_solves)
        out.lp_solves += c;
    for (std::size_t i = 0; i < starts.size(); ++i)
        if (starts[i].residual < best.residual)
            best = starts[i];
    out.lp_solves += s.lp_solves();

    out.best_residual = best.residual;
    if (best.residual < opt.tolerance && best.q.size() > 0) {
        const int n = box.nx();
        LhvLhsModel model;
        for (int l = 0; l < s.d(); ++l) {
            double w = 0.0;
            for (int a = 0; a < 2; ++a)
                w += best.q((l * n + 0) * 2 + a);
            model.weights.push_back(w);
            std::vector<std::array<double, 2>> resp;
            for (int x = 0; x < n; ++x) {
                std::array<double, 2> r{0.5, 0.5};
                if (w > 1e-15)
                    for (int a = 0; a < 2; ++a)
                        r[static_cast<std::size_t>(a)] = best.q((l * n + x) * 2 + a) / w;
                resp.push_back(r);
            }
            model.response.push_back(resp);
            model.hidden.push_back(s.span() * best.u.col(l));
        }
        model.residual = lhvlhs_reconstruction_residual(box, trusted, model);
        if (model.residual < opt.tolerance) {
            out.found = true;
            out.best_residual = model.residual;
            out.model = std::move(model);
        }
    }
    return out;
}

std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::NotApplicable: return "NotApplicable";
    case Verdict::Superunsteerable: return "Superunsteerable";
    case Verdict::ModelFound: return "ModelFound";
    }
    return "?";
}

VerdictResult superunsteerability_verdict(const NoSignalingBox& box, const std::vector<Vec3>& trusted,
                                          const LhvLhsOptions& search, const LhsOptions& lhs) {
    VerdictResult v;
    v.lhs = lhs_feasibility_1sdi(box, trusted, lhs);
    if (!v.lhs.feasible) {
        v.verdict = Verdict::NotApplicable;
        return v;
    }
    v.search = lhvlhs_search_1ssdi(box, trusted, search);
    v.verdict = v.search->found ? Verdict::ModelFound : Verdict::Superunsteerable;
    return v;
}

}  // namespace qcorr
