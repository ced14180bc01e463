#include "steering_internal.hpp"

#include "qcorr/error.hpp"
#include "qcorr/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace qcorr {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Candidate {
    MatrixXd o;
    std::string name;
};

std::vector<Candidate> signed_permutations(int n) {
    std::vector<Candidate> out;
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        for (int signs = 0; signs < (1 << n); ++signs) {
            Candidate c;
            c.o = MatrixXd::Zero(n, n);
            std::ostringstream name;
            name << "perm[";
            for (int x = 0; x < n; ++x) {
                const double s = ((signs >> x) & 1) ? -1.0 : 1.0;
                c.o(x, perm[static_cast<std::size_t>(x)]) = s;
                name << (s < 0 ? "-" : "+") << perm[static_cast<std::size_t>(x)];
            }
            name << "]";
            c.name = name.str();
            out.push_back(std::move(c));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

bool orthonormal(const std::vector<Vec3>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (std::abs(v[i].dot(v[j]) - (i == j ? 1.0 : 0.0)) > 1e-9)
                return false;
    return true;
}

NoSignalingBox residual_box(const NoSignalingBox& box, const NoSignalingBox& ext, double p) {
    NoSignalingBox r(box.nx(), box.ny(), box.na(), box.nb());
    for (std::size_t i = 0; i < r.data().size(); ++i)
        r.data()[i] = (box.data()[i] - p * ext.data()[i]) / (1.0 - p);
    return r;
}

}  // namespace

NoSignalingBox extremal_box(const MatrixXd& o) {
    const int n = static_cast<int>(o.rows());
    NoSignalingBox box(n, static_cast<int>(o.cols()), 2, 2);
    for (int x = 0; x < box.nx(); ++x)
        for (int y = 0; y < box.ny(); ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    box(x, y, a, b) = 0.25 * (1.0 + ((a + b) % 2 == 0 ? 1.0 : -1.0) * o(x, y));
    return box;
}

MatrixXd correlator_matrix(const NoSignalingBox& box) {
    MatrixXd e(box.nx(), box.ny());
    for (int x = 0; x < box.nx(); ++x)
        for (int y = 0; y < box.ny(); ++y)
            e(x, y) = box.correlator(x, y);
    return e;
}

SsResult schrodinger_strength_box(const NoSignalingBox& box, const std::vector<Vec3>& trusted, const SsOptions& opt) {
    validate_box(box);
    detail::require_dichotomic(box, 3);
    const int n = box.nx();
    if (box.ny() != n || n < 2)
        throw Error(ErrorCode::UnsupportedScenario, "Schrodinger strength needs 2 or 3 settings on each side");
    if (static_cast<int>(trusted.size()) != n || !orthonormal(trusted))
        throw Error(ErrorCode::UnsupportedScenario, "trusted directions must be orthonormal");

    const MatrixXd e = correlator_matrix(box);
    std::vector<Candidate> cands = signed_permutations(n);
    {
        Eigen::JacobiSVD<MatrixXd> svd(e, Eigen::ComputeFullU | Eigen::ComputeFullV);
        cands.push_back({svd.matrixU() * svd.matrixV().transpose(), "svd"});
    }

    struct Root {
        double p;
        std::size_t cand;
    };
    std::vector<Root> roots;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        Eigen::EigenSolver<MatrixXd> es(cands[i].o.transpose() * e, false);
        for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
            const auto ev = es.eigenvalues()(k);
            if (std::abs(ev.imag()) > 1e-9)
                continue;
            double p = ev.real();
            if (p < -1e-12 || p >= 1.0 - 1e-12)
                continue;
            roots.push_back({std::max(p, 0.0), i});
        }
    }
    std::stable_sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) { return a.p < b.p; });

    SsResult res;
    auto accept = [&](double p, const NoSignalingBox& ext, const std::string& name) {
        const NoSignalingBox r = p > 0.0 ? residual_box(box, ext, p) : box;
        ++res.candidates_tested;
        if (*std::min_element(r.data().begin(), r.data().end()) < -opt.entry_tolerance)
            return false;
        Eigen::JacobiSVD<MatrixXd> svd(correlator_matrix(r));
        if (svd.singularValues().minCoeff() > opt.rank_tolerance)
            return false;
        // Tiny negative entries within tolerance are clipped before the LHS test.
        NoSignalingBox clipped = r;
        for (double& v : clipped.data())
            v = std::max(v, 0.0);
        const LhsResult lhs = lhs_feasibility_1sdi(clipped, trusted, opt.lhs);
        if (!lhs.feasible)
            return false;
        res.found = true;
        res.value = p;
        res.steerable_part = ext;
        res.unsteerable_part = r;
        res.certificate_residual = lhs.residual;
        double err = 0.0;
        for (std::size_t i = 0; i < r.data().size(); ++i)
            err = std::max(err, std::abs(p * ext.data()[i] + (1.0 - p) * r.data()[i] - box.data()[i]));
        res.reconstruction_error = err;
        res.candidate = name;
        return true;
    };

    if (accept(0.0, extremal_box(cands.back().o), "none"))
        return res;
    for (const Root& r : roots) {
        const Candidate& c = cands[r.cand];
        if (accept(r.p, extremal_box(c.o), c.name))
            return res;
    }
    return res;
}

namespace {

// First n columns of base * exp([w]x).
std::vector<Vec3> frame(const Mat3& base, const Eigen::Vector3d& w, int n) {
    Mat3 r = base;
    const double angle = w.norm();
    if (angle > 0.0)
        r = base * Eigen::AngleAxisd(angle, w / angle).toRotationMatrix();
    std::vector<Vec3> out;
    for (int i = 0; i < n; ++i)
        out.push_back(r.col(i));
    return out;
}

Mat3 complete(const std::vector<Vec3>& f) {
    Mat3 m;
    m.col(0) = f[0];
    m.col(1) = f[1];
    m.col(2) = f.size() > 2 ? f[2] : Vec3(f[0].cross(f[1]));
    return m;
}

Mat3 euler_zyz(double a, double b, double g) {
    return (Eigen::AngleAxisd(a, Vec3::UnitZ()) * Eigen::AngleAxisd(b, Vec3::UnitY()) *
            Eigen::AngleAxisd(g, Vec3::UnitZ()))
        .toRotationMatrix();
}

Vec3 sphere(double t, double p) {
    return Vec3(std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t));
}

struct Seed {
    Mat3 alice;
    Mat3 bob;
    double value = -1.0;
};

// Alice frame maximizing the overlap with T * Bob.
Mat3 align_alice(const Mat3& t, const Mat3& bob, int n) {
    const Eigen::MatrixXd m = t * bob.leftCols(n);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    std::vector<Vec3> f;
    const Eigen::MatrixXd a = svd.matrixU().leftCols(n) * svd.matrixV().transpose();
    for (int i = 0; i < n; ++i)
        f.push_back(a.col(i));
    return complete(f);
}

}  // namespace

SsStateResult schrodinger_strength_state(const DensityMatrix& rho, int n, const SsStateOptions& opt) {
    if (n < 2 || n > 3)
        throw Error(ErrorCode::UnsupportedScenario, "Schrodinger strength needs 2 or 3 settings");
    if (rho.dim_a() != 2 || rho.dim_b() != 2)
        throw Error(ErrorCode::WrongDimension, "two-qubit state expected");
    const PauliRepresentation rep = pauli_decompose(rho);

    std::atomic<int> evaluations{0};
    auto eval_frames = [&](const std::vector<Vec3>& alice, const std::vector<Vec3>& bob) {
        ++evaluations;
        return schrodinger_strength_box(box_from_directions(rho, alice, bob), bob, opt.box);
    };
    auto cols = [n](const Mat3& m) {
        std::vector<Vec3> f;
        for (int i = 0; i < n; ++i)
            f.push_back(m.col(i));
        return f;
    };

    std::vector<Seed> seeds;
    for (const Mat3& t : {Mat3(rep.T), Mat3(rep.T - rep.a * rep.b.transpose())}) {
        Eigen::JacobiSVD<Mat3> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
        seeds.push_back({svd.matrixU(), svd.matrixV()});
    }
    {
        std::vector<Mat3> coordinate;
        std::array<int, 3> perm{0, 1, 2};
        do {
            Mat3 m = Mat3::Zero();
            for (int i = 0; i < 3; ++i)
                m(perm[static_cast<std::size_t>(i)], i) = 1.0;
            coordinate.push_back(m);
        } while (std::next_permutation(perm.begin(), perm.end()));
        // For two settings the six permutations give the six ordered axis pairs.
        for (const Mat3& a : coordinate)
            for (const Mat3& b : coordinate)
                seeds.push_back({a, b});
    }
    const double step = opt.grid_step_deg * std::numbers::pi / 180.0;
    for (double a = 0.0; a < std::numbers::pi - 1e-9; a += step)
        for (double b = 0.0; b <= std::numbers::pi + 1e-9; b += step)
            for (double g = 0.0; g < std::numbers::pi - 1e-9; g += step) {
                const Mat3 bob = euler_zyz(a, b, g);
                seeds.push_back({align_alice(rep.T, bob, n), bob});
            }

    opt::parallel_for(seeds.size(), [&](std::size_t i) {
        seeds[i].value = eval_frames(cols(seeds[i].alice), cols(seeds[i].bob)).value;
    });

    std::vector<std::size_t> order(seeds.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return seeds[a].value > seeds[b].value; });
    const std::size_t top = std::min<std::size_t>(static_cast<std::size_t>(opt.refine_top), order.size());

    struct Refined {
        std::vector<Vec3> alice, bob;
        double value = -1.0;
    };
    std::vector<Refined> refined(top);
    opt::parallel_for(top, [&](std::size_t r) {
        const Seed& s = seeds[order[r]];
        const std::vector<Vec3> alice0 = cols(s.alice);
        // Parameters: Bob rotation vector, then Alice rotation vector or 2n angles.
        const int na = opt.widen_alice ? 2 * n : 3;
        VectorXd x0 = VectorXd::Zero(3 + na);
        if (opt.widen_alice)
            for (int i = 0; i < n; ++i) {
                const Vec3& v = alice0[static_cast<std::size_t>(i)];
                x0(3 + 2 * i) = std::acos(std::clamp(v(2), -1.0, 1.0));
                x0(4 + 2 * i) = std::atan2(v(1), v(0));
            }
        auto decode = [&](const VectorXd& x, std::vector<Vec3>& alice, std::vector<Vec3>& bob) {
            bob = frame(s.bob, x.head<3>(), n);
            if (opt.widen_alice) {
                alice.clear();
                for (int i = 0; i < n; ++i)
                    alice.push_back(sphere(x(3 + 2 * i), x(4 + 2 * i)));
            } else {
                alice = frame(s.alice, x.segment<3>(3), n);
            }
        };
        opt::NelderMeadOptions nm;
        nm.initial_step = 0.05;
        nm.max_evaluations = opt.refine_evaluations;
        nm.f_tolerance = 1e-10;
        const auto res = opt::nelder_mead(
            [&](const VectorXd& x) {
                std::vector<Vec3> alice, bob;
                decode(x, alice, bob);
                return -eval_frames(alice, bob).value;
            },
            x0, nm);
        Refined out;
        decode(res.x, out.alice, out.bob);
        out.value = -res.value;
        if (out.value < s.value) {
            out.alice = alice0;
            out.bob = cols(s.bob);
            out.value = s.value;
        }
        refined[r] = std::move(out);
    });

    SsStateResult best;
    best.value = -1.0;
    for (const Refined& r : refined)
        if (r.value > best.value) {
            best.value = r.value;
            best.alice = r.alice;
            best.bob = r.bob;
        }
    if (best.alice.empty()) {
        best.alice = cols(Mat3::Identity());
        best.bob = best.alice;
    }
    best.box_result = eval_frames(best.alice, best.bob);
    best.value = best.box_result.value;
    best.evaluations = evaluations.load();
    return best;
}

}  // namespace qcorr
