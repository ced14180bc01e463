#include "qcorr/catalog.hpp"

#include "qcorr/bell_diagonal.hpp"
#include "qcorr/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qcorr {

namespace {

constexpr double kPi = std::numbers::pi;

CMatrix ket_projector(const Eigen::VectorXcd& v) { return v * v.adjoint(); }

std::vector<CatalogEntry> build_entries() {
    using K = CatalogKind;
    return {
        {"bell_diagonal", K::State,
         {{"c1", 0.5, -1.0, 1.0, "correlation along x"},
          {"c2", 0.3, -1.0, 1.0, "correlation along y"},
          {"c3", 0.1, -1.0, 1.0, "correlation along z"}},
         "Bell-diagonal family", "(1 + sum_i c_i sigma_i x sigma_i)/4"},
        {"tau_pq", K::State,
         {{"p", 0.6, 0.0, 1.0, "weight of beta_00"}, {"q", 0.2, 0.0, 1.0, "weight on beta_10 and beta_11"}},
         "two-parameter Bell-diagonal family", "p beta_00 + q/2 (beta_10 + beta_11) + (1-p-q) 1/4"},
        {"tau_prime", K::State, {}, "tetrahedral Z-set mixture", "1/4 sum_k Z_k x Z_k, equal to bell_diagonal(1/3,1/3,1/3)"},
        {"tau_dprime", K::State, {}, "W-set mixture", "1/3 sum_k W_k x W_k, locally equivalent to bell_diagonal(1/2,1/2,0)"},
        {"rank2_1way", K::State, {}, "rank-2 separable state, one-way discord", "(|00><00| + |+1><+1|)/2"},
        {"rank2_2way", K::State, {}, "rank-2 separable state, two-way discord", "(|00><00| + |++><++|)/2"},
        {"giorgi_n3", K::State, {}, "separable state with incomplete steering",
         "a=(0.4,0,0), b=(0.4,0,-0.4), T=diag(0,0,0.2)"},
        {"werner", K::State, {{"V", 0.5, 0.0, 1.0, "singlet visibility"}}, "Werner state",
         "V beta_11 + (1-V) 1/4"},
        {"pure_theta_phi", K::State,
         {{"thetaA", 0.0, 0.0, kPi, "polar angle of Alice"},
          {"phiA", 0.0, 0.0, 2.0 * kPi, "azimuth of Alice"},
          {"thetaB", 0.0, 0.0, kPi, "polar angle of Bob"},
          {"phiB", 0.0, 0.0, 2.0 * kPi, "azimuth of Bob"}},
         "product of pure qubit states", "|thetaA,phiA> x |thetaB,phiB>"},
        {"cq_generic", K::State,
         {{"p", 0.5, 0.0, 1.0, "weight of |0> on Alice"},
          {"r0", 0.8, 0.0, 1.0, "Bloch length of Bob's first state"},
          {"r1", 0.6, 0.0, 1.0, "Bloch length of Bob's second state"},
          {"angle", kPi / 3.0, 0.0, kPi, "angle between Bob's Bloch vectors"}},
         "classical-quantum state", "p |0><0| x rho_0 + (1-p) |1><1| x rho_1"},
        {"box_bb84", K::Box, {{"V", 0.5, 0.0, 1.0, "visibility"}}, "white-noise BB84 box",
         "(1 + (-1)^(a+b+xy) [x==y] V)/4"},
        {"box_extremal", K::Box, {{"n", 2.0, 2.0, 3.0, "number of settings"}}, "extremal correlation box",
         "(1 + (-1)^(a+b+xy) [x==y])/4"},
        {"box_noise", K::Box, {{"n", 2.0, 1.0, 3.0, "number of settings"}}, "white-noise box", "1/4"},
    };
}

std::map<std::string, double> resolve(const CatalogEntry& e, const CatalogParams& params) {
    std::map<std::string, double> out;
    for (const auto& p : e.parameters)
        out[p.name] = p.default_value;
    for (const auto& [name, value] : params) {
        auto it = std::find_if(e.parameters.begin(), e.parameters.end(),
                               [&](const CatalogParameter& p) { return p.name == name; });
        if (it == e.parameters.end())
            throw Error(ErrorCode::BadParams, e.id + " has no parameter '" + name + "'");
        if (!std::isfinite(value) || value < it->min - 1e-12 || value > it->max + 1e-12)
            throw Error(ErrorCode::BadParams, e.id + ": " + name + " out of range");
        out[name] = value;
    }
    return out;
}

int settings_param(double v, const std::string& id) {
    if (std::abs(v - std::round(v)) > 1e-12)
        throw Error(ErrorCode::BadParams, id + ": n must be an integer");
    return static_cast<int>(std::lround(v));
}

DensityMatrix tau_prime() {
    const double ts = std::acos(-1.0 / 3.0);
    const std::array<Eigen::Vector2cd, 4> z{qubit_ket(0.0, 0.0), qubit_ket(ts, 0.0), qubit_ket(ts, 2.0 * kPi / 3.0),
                                            qubit_ket(ts, 4.0 * kPi / 3.0)};
    CMatrix rho = CMatrix::Zero(4, 4);
    for (const auto& k : z)
        rho += 0.25 * kron(ket_projector(k), ket_projector(k));
    DensityMatrix out = density_from_matrix(rho, 2, 2);
    const double dev = (out.matrix() - bd_compose(Vec3::Constant(1.0 / 3.0)).matrix()).cwiseAbs().maxCoeff();
    if (dev > 1e-12)
        throw Error(ErrorCode::DomainError, "tau_prime construction does not match bell_diagonal(1/3,1/3,1/3)");
    return out;
}

DensityMatrix tau_dprime() {
    const std::array<Eigen::Vector2cd, 3> w{qubit_ket(0.0, 0.0), qubit_ket(2.0 * kPi / 3.0, 0.0),
                                            qubit_ket(2.0 * kPi / 3.0, kPi)};
    CMatrix rho = CMatrix::Zero(4, 4);
    for (const auto& k : w)
        rho += kron(ket_projector(k), ket_projector(k)) / 3.0;
    DensityMatrix out = density_from_matrix(rho, 2, 2);
    const PauliRepresentation rep = pauli_decompose(out);
    Eigen::JacobiSVD<Mat3> svd(rep.T);
    const Vec3 sv = svd.singularValues();
    if (rep.a.norm() > 1e-12 || rep.b.norm() > 1e-12 || (sv - Vec3(0.5, 0.5, 0.0)).cwiseAbs().maxCoeff() > 1e-12)
        throw Error(ErrorCode::DomainError, "tau_dprime is not locally equivalent to bell_diagonal(1/2,1/2,0)");
    return out;
}

DensityMatrix rank2(bool two_way) {
    Eigen::Vector2cd zero(1.0, 0.0), one(0.0, 1.0), plus(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
    const CMatrix first = kron(ket_projector(zero), ket_projector(zero));
    const CMatrix second = kron(ket_projector(plus), ket_projector(two_way ? plus : one));
    return density_from_matrix(0.5 * (first + second), 2, 2);
}

DensityMatrix giorgi() {
    PauliRepresentation rep;
    rep.a = Vec3(0.4, 0.0, 0.0);
    rep.b = Vec3(0.4, 0.0, -0.4);
    rep.T(2, 2) = 0.2;
    return pauli_compose(rep);
}

DensityMatrix cq_generic(const std::map<std::string, double>& p) {
    const Vec3 r0 = p.at("r0") * Vec3::UnitZ();
    const Vec3 r1 = p.at("r1") * Vec3(std::sin(p.at("angle")), 0.0, std::cos(p.at("angle")));
    const CMatrix rho = p.at("p") * kron(qubit_state(Vec3::UnitZ()).matrix(), qubit_state(r0).matrix()) +
                        (1.0 - p.at("p")) * kron(qubit_state(-Vec3::UnitZ()).matrix(), qubit_state(r1).matrix());
    return density_from_matrix(rho, 2, 2);
}

}  // namespace

Eigen::Vector2cd qubit_ket(double theta, double phi) {
    return {std::cos(theta / 2.0), std::polar(1.0, phi) * std::sin(theta / 2.0)};
}

NoSignalingBox bb84_box(double v) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0)
        throw Error(ErrorCode::BadParams, "BB84 visibility must lie in [0, 1]");
    NoSignalingBox box(2, 2, 2, 2);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const double sign = ((a ^ b ^ (x * y)) & 1) ? -1.0 : 1.0;
                    box(x, y, a, b) = 0.25 * (1.0 + sign * (x == y ? v : 0.0));
                }
    return box;
}

DensityMatrix werner_state(double v) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0)
        throw Error(ErrorCode::BadParams, "Werner visibility must lie in [0, 1]");
    const Eigen::Vector4cd s = bell_vector(1, 1);
    const CMatrix rho = v * ket_projector(s) + (1.0 - v) * CMatrix::Identity(4, 4) / 4.0;
    return density_from_matrix(rho, 2, 2);
}

const std::vector<CatalogEntry>& catalog_entries() {
    static const std::vector<CatalogEntry> entries = build_entries();
    return entries;
}

const CatalogEntry& catalog_entry(const std::string& id) {
    for (const auto& e : catalog_entries())
        if (e.id == id)
            return e;
    throw Error(ErrorCode::UnknownId, "unknown catalog id '" + id + "'");
}

CatalogObject catalog_get(const std::string& id, const CatalogParams& params) {
    const CatalogEntry& e = catalog_entry(id);
    const auto p = resolve(e, params);

    if (id == "bell_diagonal") {
        const Vec3 c(p.at("c1"), p.at("c2"), p.at("c3"));
        try {
            validate_bd(c);
        } catch (const Error& err) {
            throw Error(ErrorCode::BadParams, err.what());
        }
        return bd_compose(c);
    }
    if (id == "tau_pq") {
        if (!bd_two_param_valid(p.at("p"), p.at("q")))
            throw Error(ErrorCode::BadParams, "tau_pq needs p + q <= 1 and a positive spectrum");
        return bd_two_param(p.at("p"), p.at("q")).state;
    }
    if (id == "tau_prime")
        return tau_prime();
    if (id == "tau_dprime")
        return tau_dprime();
    if (id == "rank2_1way")
        return rank2(false);
    if (id == "rank2_2way")
        return rank2(true);
    if (id == "giorgi_n3")
        return giorgi();
    if (id == "werner")
        return werner_state(p.at("V"));
    if (id == "pure_theta_phi") {
        const Eigen::Vector4cd psi = kron(qubit_ket(p.at("thetaA"), p.at("phiA")), qubit_ket(p.at("thetaB"), p.at("phiB")));
        return pure_state(psi, 2, 2);
    }
    if (id == "cq_generic")
        return cq_generic(p);
    if (id == "box_bb84")
        return bb84_box(p.at("V"));
    if (id == "box_extremal") {
        const int n = settings_param(p.at("n"), id);
        NoSignalingBox box(n, n, 2, 2);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        const double sign = ((a ^ b ^ (x * y)) & 1) ? -1.0 : 1.0;
                        box(x, y, a, b) = 0.25 * (1.0 + sign * (x == y ? 1.0 : 0.0));
                    }
        return box;
    }
    if (id == "box_noise") {
        const int n = settings_param(p.at("n"), id);
        NoSignalingBox box(n, n, 2, 2);
        for (double& v : box.data())
            v = 0.25;
        return box;
    }
    throw Error(ErrorCode::UnknownId, "unknown catalog id '" + id + "'");
}

DensityMatrix catalog_state(const std::string& id, const CatalogParams& params) {
    CatalogObject o = catalog_get(id, params);
    if (auto* s = std::get_if<DensityMatrix>(&o))
        return *s;
    throw Error(ErrorCode::BadParams, id + " is a box, not a state");
}

NoSignalingBox catalog_box(const std::string& id, const CatalogParams& params) {
    CatalogObject o = catalog_get(id, params);
    if (auto* b = std::get_if<NoSignalingBox>(&o))
        return *b;
    throw Error(ErrorCode::BadParams, id + " is a state, not a box");
}

}  // namespace qcorr
