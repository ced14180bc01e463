#include "qcorr/measures.hpp"

#include "qcorr/entropy.hpp"
#include "qcorr/error.hpp"
#include "qcorr/optimize.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace qcorr {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

void require_two_qubit(const DensityMatrix& rho, const char* what) {
    if (rho.dim_a() != 2 || rho.dim_b() != 2)
        throw Error(ErrorCode::WrongDimension, std::string(what) + " needs a two-qubit state");
}

Vec3 sphere_point(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// Orthonormal e1, e2 spanning the plane orthogonal to n.
std::pair<Vec3, Vec3> orthogonal_frame(const Vec3& n) {
    Vec3 ref = Vec3::UnitX();
    if (std::abs(n(0)) > std::abs(n(1)) && std::abs(n(0)) > std::abs(n(2)))
        ref = std::abs(n(1)) < std::abs(n(2)) ? Vec3::UnitY() : Vec3::UnitZ();
    else if (std::abs(n(1)) > std::abs(n(2)))
        ref = std::abs(n(0)) < std::abs(n(2)) ? Vec3::UnitX() : Vec3::UnitZ();
    else
        ref = std::abs(n(0)) < std::abs(n(1)) ? Vec3::UnitX() : Vec3::UnitY();
    const Vec3 e1 = n.cross(ref).normalized();
    const Vec3 e2 = n.cross(e1).normalized();
    return {e1, e2};
}

struct Candidate {
    Vec3 n;
    double value;
};

// Greedy angular clustering; input sorted by decreasing value.
std::vector<Candidate> cluster_directions(const std::vector<Candidate>& sorted, double cluster_rad) {
    std::vector<Candidate> reps;
    for (const Candidate& c : sorted) {
        bool merged = false;
        for (const Candidate& r : reps) {
            if (axis_angle(c.n, r.n) < cluster_rad) {
                merged = true;
                break;
            }
        }
        if (!merged)
            reps.push_back({canonical_direction(c.n), c.value});
    }
    return reps;
}

void sort_by_value(std::vector<Candidate>& v) {
    std::stable_sort(v.begin(), v.end(), [](const Candidate& x, const Candidate& y) { return x.value > y.value; });
}

struct CircleMax {
    Vec3 n;
    double value;
};

// Maxima of chi over directions orthogonal to n1.
std::vector<CircleMax> circle_maxima(const PauliRepresentation& rep, const Vec3& n1, const OptimizerOptions& opt,
                                     int& evaluations) {
    const auto [e1, e2] = orthogonal_frame(n1);
    auto dir = [&](double t) { return Vec3(std::cos(t) * e1 + std::sin(t) * e2); };
    auto chi = [&](double t) {
        ++evaluations;
        return holevo_quantity(rep, dir(t));
    };

    const int steps = std::max(4, static_cast<int>(std::lround(180.0 / opt.circle_step_deg)));
    const double h = std::numbers::pi / steps;
    std::vector<double> vals(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i)
        vals[static_cast<std::size_t>(i)] = chi(i * h);

    std::vector<int> peaks;
    for (int i = 0; i < steps; ++i) {
        const double v = vals[static_cast<std::size_t>(i)];
        const double prev = vals[static_cast<std::size_t>((i + steps - 1) % steps)];
        const double next = vals[static_cast<std::size_t>((i + 1) % steps)];
        if (v >= prev && v >= next)
            peaks.push_back(i);
    }
    std::stable_sort(peaks.begin(), peaks.end(), [&](int x, int y) {
        return vals[static_cast<std::size_t>(x)] > vals[static_cast<std::size_t>(y)];
    });
    if (peaks.size() > 6)
        peaks.resize(6);

    std::vector<CircleMax> out;
    for (int i : peaks) {
        const double t0 = i * h;
        const auto res = boost::math::tools::brent_find_minima([&](double t) { return -chi(t); }, t0 - h, t0 + h, 40);
        double t = res.first;
        double v = -res.second;
        if (vals[static_cast<std::size_t>(i)] > v) {
            t = t0;
            v = vals[static_cast<std::size_t>(i)];
        }
        out.push_back({dir(t), v});
    }
    return out;
}

}  // namespace

double holevo_quantity(const PauliRepresentation& rep, const Vec3& direction) {
    const double norm = direction.norm();
    if (!(norm > 0.0))
        throw Error(ErrorCode::InvalidMeasurement, "zero measurement direction");
    const Vec3 n = direction / norm;
    const double an = rep.a.dot(n);
    const Vec3 tn = rep.T.transpose() * n;
    double chi = qubit_entropy(rep.b.norm());
    const double p_plus = 0.5 * (1.0 + an);
    const double p_minus = 0.5 * (1.0 - an);
    if (p_plus > 1e-15)
        chi -= p_plus * qubit_entropy(((rep.b + tn) / (1.0 + an)).norm());
    if (p_minus > 1e-15)
        chi -= p_minus * qubit_entropy(((rep.b - tn) / (1.0 - an)).norm());
    return std::max(0.0, chi);
}

double holevo_quantity(const DensityMatrix& rho, const QubitBasis& basis) {
    if (rho.dim_a() != 2)
        throw Error(ErrorCode::WrongDimension, "holevo_quantity measures a qubit on Alice's side");
    const int db = rho.dim_b();
    const CMatrix& m = rho.matrix();
    double chi = von_neumann_entropy(partial_trace(rho, Side::A));
    for (int k = 0; k < 2; ++k) {
        const Mat2c proj = basis.projector(k);
        CMatrix sigma = CMatrix::Zero(db, db);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                sigma += proj(j, i) * m.block(i * db, j * db, db, db);
        const double p = sigma.trace().real();
        if (p > 1e-15)
            chi -= p * entropy_of_spectrum(hermitian_eigenvalues(sigma / p));
    }
    return std::max(0.0, chi);
}

BasisOptimum classical_correlation(const PauliRepresentation& rep, const OptimizerOptions& opt) {
    BasisOptimum out;
    out.eps_opt = opt.eps_opt;
    int evals = 0;
    auto chi = [&](const Vec3& n) {
        ++evals;
        return holevo_quantity(rep, n);
    };

    // n and -n define the same basis, so the upper hemisphere suffices.
    const double g = opt.grid_step_deg * kDeg;
    const int n_theta = std::max(1, static_cast<int>(std::lround(90.0 / opt.grid_step_deg)));
    const int n_phi = std::max(4, static_cast<int>(std::lround(360.0 / opt.grid_step_deg)));
    std::vector<Candidate> grid;
    grid.push_back({Vec3::UnitZ(), chi(Vec3::UnitZ())});
    for (int i = 1; i <= n_theta; ++i)
        for (int j = 0; j < n_phi; ++j) {
            const Vec3 n = sphere_point(i * g, j * 2.0 * std::numbers::pi / n_phi);
            grid.push_back({n, chi(n)});
        }
    sort_by_value(grid);

    std::vector<Candidate> seeds;
    const double separation = 3.0 * g;
    for (const Candidate& c : grid) {
        if (static_cast<int>(seeds.size()) >= opt.max_seeds)
            break;
        bool close = false;
        for (const Candidate& s : seeds)
            if (axis_angle(c.n, s.n) < separation) {
                close = true;
                break;
            }
        if (!close)
            seeds.push_back(c);
    }

    std::vector<Candidate> refined;
    opt::NelderMeadOptions nm;
    nm.initial_step = g;
    nm.f_tolerance = 0.01 * opt.refine_tolerance;
    nm.x_tolerance = 1e-9;
    nm.max_evaluations = 600;
    for (const Candidate& s : seeds) {
        const auto [e1, e2] = orthogonal_frame(s.n);
        auto chart = [&](const Eigen::VectorXd& u) { return Vec3((s.n + u(0) * e1 + u(1) * e2).normalized()); };
        const auto res = opt::nelder_mead([&](const Eigen::VectorXd& u) { return -chi(chart(u)); },
                                          Eigen::VectorXd::Zero(2), nm);
        if (-res.value >= s.value)
            refined.push_back({chart(res.x), -res.value});
        else
            refined.push_back(s);
    }
    sort_by_value(refined);

    out.value = std::max(refined.front().value, grid.front().value);
    std::vector<Candidate> optimal;
    for (const Candidate& c : refined)
        if (c.value >= out.value - opt.eps_opt)
            optimal.push_back(c);
    for (const Candidate& c : cluster_directions(optimal, opt.cluster_deg * kDeg))
        out.optimal_bases.emplace_back(c.n);
    out.evaluations = evals;
    return out;
}

BasisOptimum classical_correlation(const DensityMatrix& rho, const OptimizerOptions& options) {
    require_two_qubit(rho, "classical_correlation");
    return classical_correlation(pauli_decompose(rho), options);
}

double quantum_discord(const DensityMatrix& rho, const OptimizerOptions& options) {
    require_two_qubit(rho, "quantum_discord");
    const double mi = mutual_information(rho);
    const double c1 = classical_correlation(rho, options).value;
    return std::max(0.0, mi - c1);
}

ScmubResult scmub(const DensityMatrix& rho, const OptimizerOptions& opt) {
    require_two_qubit(rho, "scmub");
    const PauliRepresentation rep = pauli_decompose(rho);
    const BasisOptimum c1 = classical_correlation(rep, opt);

    ScmubResult out;
    out.c1 = c1.value;
    out.c1_clusters = static_cast<int>(c1.optimal_bases.size());
    out.c1_basis = c1.optimal_bases.front().bloch();

    int evals = 0;
    struct PerCluster {
        Vec3 n1;
        std::vector<CircleMax> maxima;
        double best = 0.0;
    };
    std::vector<PerCluster> clusters;
    out.q2 = 0.0;
    for (const QubitBasis& b : c1.optimal_bases) {
        PerCluster pc{b.bloch(), circle_maxima(rep, b.bloch(), opt, evals), 0.0};
        for (const CircleMax& m : pc.maxima)
            pc.best = std::max(pc.best, m.value);
        out.q2 = std::max(out.q2, pc.best);
        clusters.push_back(std::move(pc));
    }

    bool first = true;
    out.q3 = 0.0;
    for (const PerCluster& pc : clusters) {
        if (pc.best < out.q2 - opt.eps_opt)
            continue;
        std::vector<Candidate> partners;
        for (const CircleMax& m : pc.maxima)
            if (m.value >= out.q2 - opt.eps_opt)
                partners.push_back({m.n, m.value});
        sort_by_value(partners);
        for (const Candidate& p : cluster_directions(partners, opt.cluster_deg * kDeg)) {
            const Vec3 n3 = canonical_direction(pc.n1.cross(p.n));
            const double v3 = holevo_quantity(rep, n3);
            out.retained_pairs.push_back({pc.n1, p.n, p.value});
            if (first || v3 > out.q3) {
                out.c1_basis = pc.n1;
                out.q2_basis = canonical_direction(p.n);
                out.q3 = v3;
                out.q3_basis = n3;
                first = false;
            }
        }
    }

    // Numeric floor: keep the chain C1 >= Q2 >= Q3 consistent with the
    // candidates actually evaluated.
    out.q2 = std::max(out.q2, out.q3);
    out.c1 = std::max(out.c1, out.q2);
    return out;
}

ScmubValue scmub_q2(const DensityMatrix& rho, const OptimizerOptions& options) {
    const ScmubResult r = scmub(rho, options);
    return {r.q2, QubitBasis(r.q2_basis)};
}

ScmubValue scmub_q3(const DensityMatrix& rho, const OptimizerOptions& options) {
    const ScmubResult r = scmub(rho, options);
    return {r.q3, QubitBasis(r.q3_basis)};
}

ScmubProfile scmub_profile(const DensityMatrix& rho, const OptimizerOptions& options) {
    const ScmubResult r = scmub(rho, options);
    ScmubProfile p;
    p.mutual_info = mutual_information(rho);
    p.c1 = std::min(r.c1, p.mutual_info);
    p.q2 = std::min(r.q2, p.c1);
    p.q3 = std::min(r.q3, p.q2);
    p.c1_basis = r.c1_basis;
    p.q2_basis = r.q2_basis;
    p.q3_basis = r.q3_basis;
    p.discord = p.mutual_info - p.c1;
    p.correlation_rank = correlation_rank(rho);
    p.global_coherence = p.correlation_rank > std::min(rho.dim_a(), rho.dim_b());
    p.c1_clusters = r.c1_clusters;
    p.eps_opt = options.eps_opt;
    return p;
}

std::vector<CMatrix> hermitian_operator_basis(int d) {
    std::vector<CMatrix> basis;
    basis.push_back(CMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d)));
    const double r2 = 1.0 / std::sqrt(2.0);
    const cplx i(0.0, 1.0);
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            CMatrix s = CMatrix::Zero(d, d);
            s(j, k) = r2;
            s(k, j) = r2;
            basis.push_back(s);
            CMatrix a = CMatrix::Zero(d, d);
            a(j, k) = -i * r2;
            a(k, j) = i * r2;
            basis.push_back(a);
        }
    for (int l = 1; l < d; ++l) {
        CMatrix g = CMatrix::Zero(d, d);
        const double norm = std::sqrt(static_cast<double>(l) * (l + 1));
        for (int m = 0; m < l; ++m)
            g(m, m) = 1.0 / norm;
        g(l, l) = -static_cast<double>(l) / norm;
        basis.push_back(g);
    }
    return basis;
}

RMatrix correlation_matrix(const DensityMatrix& rho) {
    const auto ga = hermitian_operator_basis(rho.dim_a());
    const auto gb = hermitian_operator_basis(rho.dim_b());
    RMatrix r(static_cast<Eigen::Index>(ga.size()), static_cast<Eigen::Index>(gb.size()));
    for (std::size_t n = 0; n < ga.size(); ++n)
        for (std::size_t m = 0; m < gb.size(); ++m)
            r(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m)) =
                (rho.matrix() * kron(ga[n], gb[m])).trace().real();
    return r;
}

int correlation_rank(const DensityMatrix& rho, double sv_tolerance) {
    const RMatrix r = correlation_matrix(rho);
    Eigen::JacobiSVD<RMatrix> svd(r);
    const Eigen::VectorXd sv = svd.singularValues();
    const double cutoff = sv_tolerance * sv.maxCoeff();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff)
            ++rank;
    return rank;
}

bool has_global_coherence(const DensityMatrix& rho, double sv_tolerance) {
    return correlation_rank(rho, sv_tolerance) > std::min(rho.dim_a(), rho.dim_b());
}

bool is_cq_state(const DensityMatrix& rho, double tol) {
    return quantum_discord(rho) <= tol;
}

bool is_bipartite_incoherent(const DensityMatrix& rho, const CMatrix& basis_a, const CMatrix& basis_b, double tol) {
    const CMatrix ua = basis_a.size() == 0 ? CMatrix::Identity(rho.dim_a(), rho.dim_a()) : basis_a;
    const CMatrix ub = basis_b.size() == 0 ? CMatrix::Identity(rho.dim_b(), rho.dim_b()) : basis_b;
    if (ua.rows() != rho.dim_a() || ua.cols() != rho.dim_a() || ub.rows() != rho.dim_b() || ub.cols() != rho.dim_b())
        throw Error(ErrorCode::WrongDimension, "product basis does not match the state");
    const CMatrix u = kron(ua, ub);
    if ((u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() > 1e-10)
        throw Error(ErrorCode::DomainError, "product basis is not orthonormal");
    CMatrix m = u.adjoint() * rho.matrix() * u;
    m.diagonal().setZero();
    return m.cwiseAbs().maxCoeff() <= tol;
}

std::string region_name(Region r) {
    switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    case Region::IV: return "IV";
    case Region::V: return "V";
    case Region::VI: return "VI";
    }
    return "?";
}

HierarchyClass classify_from_values(double discord_forward, double discord_backward, bool global_coherence,
                                    bool entangled, double q2, double q3, const HierarchyOptions& options) {
    HierarchyClass h;
    h.discord_forward = discord_forward;
    h.discord_backward = discord_backward;
    h.global_coherence = global_coherence;
    h.entangled = entangled;
    h.q2 = q2;
    h.q3 = q3;
    const double tol = options.zero_tol;
    const bool fwd = discord_forward > tol;
    const bool bwd = discord_backward > tol;
    const bool q2_pos = q2 > tol;
    const bool q3_pos = q3 > tol;

    if (!fwd && !bwd)
        h.region = Region::I;
    else if (!global_coherence || !q2_pos)
        h.region = (fwd && bwd) ? Region::III : Region::II;
    else if (!q3_pos)
        h.region = Region::IV;
    else
        h.region = entangled ? Region::VI : Region::V;

    if (!fwd)
        h.taxonomy_class = 0;
    else if (!q2_pos)
        h.taxonomy_class = 1;
    else if (!q3_pos)
        h.taxonomy_class = 2;
    else
        h.taxonomy_class = 3;

    if (h.taxonomy_class == 2 && options.ss2)
        h.ss2_positive = *options.ss2 > options.ss_tol;
    return h;
}

HierarchyClass classify_hierarchy(const DensityMatrix& rho, const HierarchyOptions& options) {
    require_two_qubit(rho, "classify_hierarchy");
    const ScmubProfile p = scmub_profile(rho, options.optimizer);
    const double backward = quantum_discord(swap_subsystems(rho), options.optimizer);
    return classify_from_values(p.discord, backward, p.global_coherence, !is_separable_ppt(rho), p.q2, p.q3, options);
}

}  // namespace qcorr
