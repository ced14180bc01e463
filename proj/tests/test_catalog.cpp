#include "qcorr/bell_diagonal.hpp"
#include "qcorr/catalog.hpp"
#include "qcorr/error.hpp"
#include "qcorr/entropy.hpp"
#include "qcorr/measures.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace qcorr;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an exception";
    return ErrorCode::SolverFailure;
}

void expect_valid_state(const DensityMatrix& rho, const std::string& id) {
    const CMatrix& m = rho.matrix();
    EXPECT_LE((m - m.adjoint()).cwiseAbs().maxCoeff(), 1e-12) << id;
    EXPECT_NEAR(m.trace().real(), 1.0, 1e-12) << id;
    EXPECT_GE(hermitian_eigenvalues(m).minCoeff(), -1e-9) << id;
}

}  // namespace

TEST(Catalog, EntriesAreUniqueAndComplete) {
    const std::set<std::string> expected{"bell_diagonal", "tau_pq",         "tau_prime",  "tau_dprime", "rank2_1way",
                                         "rank2_2way",    "giorgi_n3",      "werner",     "pure_theta_phi",
                                         "cq_generic",    "box_bb84",       "box_extremal", "box_noise"};
    std::set<std::string> ids;
    for (const CatalogEntry& e : catalog_entries()) {
        EXPECT_TRUE(ids.insert(e.id).second) << e.id;
        EXPECT_FALSE(e.reference.empty()) << e.id;
        EXPECT_EQ(catalog_entry(e.id).id, e.id);
    }
    EXPECT_EQ(ids, expected);
}

TEST(Catalog, DefaultsAndRangeEndpointsConstruct) {
    for (const CatalogEntry& e : catalog_entries()) {
        std::vector<CatalogParams> variants{{}};
        for (const CatalogParameter& p : e.parameters) {
            variants.push_back({{p.name, p.min}});
            variants.push_back({{p.name, p.max}});
        }
        for (const CatalogParams& params : variants) {
            if (e.id == "tau_pq" && !params.empty()) {
                const double p = params.count("p") ? params.at("p") : 0.6;
                const double q = params.count("q") ? params.at("q") : 0.2;
                if (!bd_two_param_valid(p, q))
                    continue;
            }
            if (e.id == "bell_diagonal" && !params.empty())
                continue;
            const CatalogObject obj = catalog_get(e.id, params);
            if (e.kind == CatalogKind::State) {
                ASSERT_TRUE(std::holds_alternative<DensityMatrix>(obj)) << e.id;
                expect_valid_state(std::get<DensityMatrix>(obj), e.id);
            } else {
                ASSERT_TRUE(std::holds_alternative<NoSignalingBox>(obj)) << e.id;
                const BoxDiagnostics d = diagnose_box(std::get<NoSignalingBox>(obj));
                EXPECT_GE(d.min_entry, -1e-12) << e.id;
                EXPECT_LE(d.normalization, 1e-10) << e.id;
                EXPECT_LE(d.signaling_a, 1e-10) << e.id;
                EXPECT_LE(d.signaling_b, 1e-10) << e.id;
            }
        }
    }
}

TEST(Catalog, Errors) {
    EXPECT_EQ(code_of([] { catalog_get("nope"); }), ErrorCode::UnknownId);
    EXPECT_EQ(code_of([] { catalog_entry("nope"); }), ErrorCode::UnknownId);
    EXPECT_EQ(code_of([] { catalog_get("werner", {{"W", 0.3}}); }), ErrorCode::BadParams);
    EXPECT_EQ(code_of([] { catalog_get("werner", {{"V", 1.5}}); }), ErrorCode::BadParams);
    EXPECT_EQ(code_of([] { catalog_get("box_extremal", {{"n", 4}}); }), ErrorCode::BadParams);
    EXPECT_EQ(code_of([] { catalog_state("box_bb84"); }), ErrorCode::BadParams);
    EXPECT_EQ(code_of([] { catalog_box("werner"); }), ErrorCode::BadParams);
}

TEST(Catalog, TauPrimeAndDoublePrime) {
    EXPECT_LT((catalog_state("tau_prime").matrix() - bd_compose(Vec3::Constant(1.0 / 3.0)).matrix()).norm(), 1e-12);
    EXPECT_NEAR(quantum_discord(catalog_state("tau_prime")), 0.3333, 1e-3);

    const PauliRepresentation rep = pauli_decompose(catalog_state("tau_dprime"));
    const Vec3 sv = Eigen::JacobiSVD<Mat3>(rep.T).singularValues();
    EXPECT_LT((sv - Vec3(0.5, 0.5, 0.0)).norm(), 1e-12);
    EXPECT_LT(rep.a.norm() + rep.b.norm(), 1e-12);
}

TEST(Catalog, Rank2DiscordAsymmetry) {
    const DensityMatrix one = catalog_state("rank2_1way");
    EXPECT_NEAR(quantum_discord(one), 0.2018, 1e-3);
    EXPECT_NEAR(quantum_discord(swap_subsystems(one)), 0.0, 1e-9);
    const DensityMatrix two = catalog_state("rank2_2way");
    EXPECT_NEAR(quantum_discord(two), 0.1442, 1e-3);
    EXPECT_NEAR(quantum_discord(swap_subsystems(two)), quantum_discord(two), 1e-9);
}

TEST(Catalog, GiorgiDiscord) { EXPECT_NEAR(quantum_discord(catalog_state("giorgi_n3")), 0.026, 1e-3); }

TEST(Catalog, TauPqMatchesTwoParamFamily) {
    const DensityMatrix t = catalog_state("tau_pq", {{"p", 0.5}, {"q", 0.3}});
    EXPECT_LT((t.matrix() - bd_two_param(0.5, 0.3).state.matrix()).norm(), 1e-15);
    EXPECT_EQ(code_of([] { catalog_state("tau_pq", {{"p", 0.2}, {"q", 0.5}}); }), ErrorCode::BadParams);
}

TEST(Catalog, Boxes) {
    const NoSignalingBox zero = catalog_box("box_bb84", {{"V", 0.0}});
    EXPECT_LT(zero.max_abs_difference(catalog_box("box_noise", {{"n", 2}})), 1e-15);
    EXPECT_LT(catalog_box("box_extremal", {{"n", 2}}).max_abs_difference(bb84_box(1.0)), 1e-15);
    const NoSignalingBox noise = catalog_box("box_noise", {{"n", 3}});
    for (double p : noise.data())
        EXPECT_EQ(p, 0.25);
}

// With Alice on (x, y) and Bob on (-x, y) the Werner box is the BB84 box at the
// same visibility.
TEST(Catalog, Bb84IsWernerBox) {
    for (double v = 0.0; v <= 1.0; v += 0.1) {
        const NoSignalingBox from_state =
            box_from_directions(werner_state(v), {Vec3::UnitX(), Vec3::UnitY()}, {-Vec3::UnitX(), Vec3::UnitY()});
        EXPECT_LT(from_state.max_abs_difference(catalog_box("box_bb84", {{"V", v}})), 1e-14) << v;
    }
}

TEST(Catalog, PureProductAndCqStates) {
    const DensityMatrix pure = catalog_state("pure_theta_phi", {{"thetaA", 1.0}, {"phiB", 2.0}, {"thetaB", 0.5}});
    EXPECT_NEAR(pure.purity(), 1.0, 1e-12);
    EXPECT_NEAR(mutual_information(pure), 0.0, 1e-12);
    const DensityMatrix cq = catalog_state("cq_generic");
    EXPECT_TRUE(is_cq_state(cq));
    EXPECT_NEAR(std::abs(qubit_ket(1.0, 0.3).norm()), 1.0, 1e-15);
}
