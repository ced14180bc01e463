#include "steering_internal.hpp"

#include "qcorr/error.hpp"

#include <cmath>

namespace qcorr {

std::vector<Vec3> default_trusted_directions(int n) {
    if (n < 1 || n > 3)
        throw Error(ErrorCode::UnsupportedScenario, "trusted qubit measurements support 1 to 3 settings");
    std::vector<Vec3> out{Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
    out.resize(static_cast<std::size_t>(n));
    return out;
}

namespace detail {

void require_dichotomic(const NoSignalingBox& box, int max_settings) {
    if (box.na() != 2 || box.nb() != 2)
        throw Error(ErrorCode::UnsupportedScenario, "only dichotomic outcomes are supported");
    if (box.nx() < 1 || box.nx() > max_settings || box.ny() < 1 || box.ny() > 3)
        throw Error(ErrorCode::UnsupportedScenario, "unsupported number of settings");
}

Eigen::MatrixXd span_basis(const std::vector<Vec3>& directions) {
    Eigen::MatrixXd n(3, static_cast<Eigen::Index>(directions.size()));
    for (std::size_t i = 0; i < directions.size(); ++i)
        n.col(static_cast<Eigen::Index>(i)) = directions[i];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(n, Eigen::ComputeFullU);
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > 1e-9)
            ++rank;
    return svd.matrixU().leftCols(rank);
}

BlochAssemblage bloch_from_assemblage(const Assemblage& s) {
    validate_assemblage(s);
    if (s.dim != 2 || s.n_outcomes != 2)
        throw Error(ErrorCode::UnsupportedScenario, "LHS feasibility needs a qubit assemblage with two outcomes");
    if (s.n_settings > 3)
        throw Error(ErrorCode::UnsupportedScenario, "at most three settings are supported");
    BlochAssemblage b;
    b.n_settings = s.n_settings;
    b.span = Eigen::MatrixXd::Identity(3, 3);
    b.g = Eigen::MatrixXd::Zero(4, 2 * s.n_settings);
    for (int x = 0; x < s.n_settings; ++x)
        for (int a = 0; a < 2; ++a) {
            const CMatrix& m = s.at(x, a);
            b.g(0, 2 * x + a) = m.trace().real();
            for (int j = 1; j <= 3; ++j)
                b.g(j, 2 * x + a) = (m * CMatrix(pauli(j))).trace().real();
        }
    return b;
}

BlochAssemblage bloch_from_box(const NoSignalingBox& box, const std::vector<Vec3>& trusted) {
    validate_box(box);
    require_dichotomic(box, 3);
    if (static_cast<int>(trusted.size()) != box.ny())
        throw Error(ErrorCode::UnsupportedScenario, "one trusted direction is needed per Bob setting");
    for (const Vec3& n : trusted)
        if (!n.allFinite() || std::abs(n.norm() - 1.0) > 1e-9)
            throw Error(ErrorCode::InvalidMeasurement, "trusted directions must be unit vectors");

    BlochAssemblage b;
    b.n_settings = box.nx();
    b.span = span_basis(trusted);
    const int k = static_cast<int>(b.span.cols());
    Eigen::MatrixXd nt(box.ny(), 3);
    for (int y = 0; y < box.ny(); ++y)
        nt.row(y) = trusted[static_cast<std::size_t>(y)].transpose();
    const Eigen::MatrixXd proj = nt * b.span;  // ny x k
    const Eigen::MatrixXd pinv = proj.completeOrthogonalDecomposition().pseudoInverse();

    b.g = Eigen::MatrixXd::Zero(1 + k, 2 * box.nx());
    for (int x = 0; x < box.nx(); ++x)
        for (int a = 0; a < 2; ++a) {
            Eigen::VectorXd c(box.ny());
            for (int y = 0; y < box.ny(); ++y)
                c(y) = box(x, y, a, 0) - box(x, y, a, 1);
            b.g(0, 2 * x + a) = box.marginal_a(x, a);
            b.g.block(1, 2 * x + a, k, 1) = pinv * c;
        }
    return b;
}

LhsResult solve_lhs(const BlochAssemblage& s, const LhsOptions& options) {
    const int n = s.n_settings;
    const int strategies = 1 << n;
    const int comps = static_cast<int>(s.g.rows());
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2 * n, strategies);
    for (int lam = 0; lam < strategies; ++lam)
        for (int x = 0; x < n; ++x)
            d(2 * x + ((lam >> x) & 1), lam) = 1.0;
    const Eigen::MatrixXd dp = d.completeOrthogonalDecomposition().pseudoInverse();
    const Eigen::MatrixXd dt = d.transpose();
    const Eigen::MatrixXd dpt = dp.transpose();

    auto project_psd = [&](Eigen::MatrixXd& y) {
        for (int lam = 0; lam < strategies; ++lam) {
            const double w = y(0, lam);
            const double r = y.col(lam).tail(comps - 1).norm();
            if (r <= w)
                continue;
            if (r <= -w) {
                y.col(lam).setZero();
                continue;
            }
            const double alpha = 0.5 * (w + r);
            y.col(lam).tail(comps - 1) *= alpha / r;
            y(0, lam) = alpha;
        }
    };

    Eigen::MatrixXd y = s.g * dpt;
    Eigen::MatrixXd z = y;
    Eigen::MatrixXd z_prev = Eigen::MatrixXd::Constant(comps, strategies, 1e300);
    LhsResult res;
    res.residual = 1e300;
    int it = 0;
    for (; it < options.max_iterations; ++it) {
        z = y;
        project_psd(z);
        const double residual = (z * dt - s.g).cwiseAbs().maxCoeff();
        res.residual = residual;
        if (residual < options.tolerance) {
            res.feasible = true;
            break;
        }
        if ((z - z_prev).cwiseAbs().maxCoeff() < 1e-15)
            break;
        z_prev = z;
        y = z - (z * dt - s.g) * dpt;
    }
    res.iterations = it + 1;
    if (res.feasible) {
        LhsModel model;
        model.residual = res.residual;
        for (int lam = 0; lam < strategies; ++lam) {
            const Vec3 v = s.span * z.col(lam).tail(comps - 1);
            model.hidden.push_back(0.5 * (z(0, lam) * pauli(0) + bloch_operator(v)));
        }
        res.model = std::move(model);
    }
    return res;
}

}  // namespace detail

LhsResult lhs_feasibility_1sdi(const Assemblage& assemblage, const LhsOptions& options) {
    return detail::solve_lhs(detail::bloch_from_assemblage(assemblage), options);
}

LhsResult lhs_feasibility_1sdi(const NoSignalingBox& box, const std::vector<Vec3>& trusted, const LhsOptions& options) {
    return detail::solve_lhs(detail::bloch_from_box(box, trusted), options);
}

}  // namespace qcorr
