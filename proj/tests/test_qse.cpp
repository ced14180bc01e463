#include "qcorr/bell_diagonal.hpp"
#include "qcorr/catalog.hpp"
#include "qcorr/error.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/qse.hpp"
#include "qcorr/random.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <sstream>

using namespace qcorr;

namespace {

const std::vector<std::string> kMixedMarginalStates{"bell_diagonal", "tau_pq",    "tau_prime", "tau_dprime", "rank2_1way",
                                                    "rank2_2way",    "giorgi_n3", "werner",    "cq_generic"};

Vec3 random_in_ball(Rng& rng) {
    std::uniform_real_distribution<> u(0.0, 1.0);
    return random_unit_vector(rng) * std::cbrt(u(rng));
}

}  // namespace

TEST(SteeredBloch, Examples) {
    Rng rng(1);
    const DensityMatrix rho = random_state(rng);
    const PauliRepresentation rep = pauli_decompose(rho);
    EXPECT_LT((steered_bloch(rho, {0.5, Vec3::Zero()}) - rep.b).norm(), 1e-14);

    const DensityMatrix singlet = bd_compose(Vec3(-1, -1, -1));
    EXPECT_LT((steered_bloch(singlet, {0.5, Vec3::UnitZ()}) + Vec3::UnitZ()).norm(), 1e-14);

    const Vec3 c(0.5, 0.3, 0.1);
    EXPECT_LT((steered_bloch(bd_compose(c), {0.5, Vec3::UnitX()}) - Vec3(0.5, 0, 0)).norm(), 1e-14);
}

TEST(SteeredBloch, DegenerateOutcome) {
    PauliRepresentation rep;
    rep.a = Vec3::UnitZ();
    try {
        steered_bloch(rep, {0.5, -Vec3::UnitZ()});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateOutcome);
    }
}

TEST(Ellipsoid, BellDiagonal) {
    const Vec3 c(-0.5, 0.3, -0.1);
    const SteeringEllipsoid e = steering_ellipsoid(bd_compose(c));
    EXPECT_LT(e.center.norm(), 1e-14);
    EXPECT_LT((e.semi_axes - Vec3(0.5, 0.3, 0.1)).norm(), 1e-10);
    EXPECT_EQ(e.dimension_class, 3);
    EXPECT_NEAR(qse_volume_normalized(bd_compose(c)), 0.015, 1e-12);
}

TEST(Ellipsoid, ProductAndSinglet) {
    Rng rng(2);
    const DensityMatrix b = random_qubit(rng);
    const DensityMatrix prod = product_state(qubit_state(Vec3(0.3, 0.1, -0.2)), b);
    const SteeringEllipsoid e = steering_ellipsoid(prod);
    EXPECT_EQ(e.dimension_class, 0);
    EXPECT_LT(e.semi_axes.norm(), 1e-7);
    EXPECT_LT((e.center - pauli_decompose(prod).b).norm(), 1e-12);

    const SteeringEllipsoid s = steering_ellipsoid(bd_compose(Vec3(-1, -1, -1)));
    EXPECT_EQ(s.dimension_class, 3);
    EXPECT_LT((s.semi_axes - Vec3::Ones()).norm(), 1e-10);
    EXPECT_NEAR(qse_volume_normalized(bd_compose(Vec3(-1, -1, -1))), 1.0, 1e-10);
}

TEST(Ellipsoid, VolumeExamples) {
    EXPECT_NEAR(qse_volume_normalized(bd_compose(Vec3(0.5, 0.5, 0.0))), 0.0, 1e-15);
    EXPECT_NEAR(qse_volume_normalized(bd_compose(Vec3::Constant(1.0 / 3.0))), 1.0 / 27.0, 1e-12);
}

TEST(Ellipsoid, SingularMarginal) {
    try {
        steering_ellipsoid(catalog_state("pure_theta_phi"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SingularMarginal);
    }
}

TEST(Ellipsoid, OrientationIsSymmetricPsd) {
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const SteeringEllipsoid e = steering_ellipsoid(random_state(rng));
        EXPECT_LT((e.orientation - e.orientation.transpose()).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_GE(Eigen::SelfAdjointEigenSolver<Mat3>(e.orientation).eigenvalues().minCoeff(), -1e-10);
        EXPECT_GE(e.semi_axes(0), e.semi_axes(1));
        EXPECT_GE(e.semi_axes(1), e.semi_axes(2));
        EXPECT_LT((e.axes * e.semi_axes.cwiseAbs2().asDiagonal() * e.axes.transpose() - e.orientation).norm(), 1e-10);
    }
}

TEST(Ellipsoid, SteeredStatesAreContained) {
    Rng rng(4);
    std::uniform_real_distribution<> u(0.05, 1.0);
    for (const std::string& id : kMixedMarginalStates) {
        const DensityMatrix rho = catalog_state(id);
        for (SteeringDirection dir : {SteeringDirection::BA, SteeringDirection::AB}) {
            const SteeringEllipsoid e = steering_ellipsoid(rho, dir);
            const DensityMatrix steered_on = dir == SteeringDirection::BA ? rho : swap_subsystems(rho);
            double worst_radius = 0.0, worst_off = 0.0;
            for (int k = 0; k < 1000; ++k) {
                const PovmElement povm{0.5 * u(rng), random_in_ball(rng)};
                const Vec3 v = steered_bloch(steered_on, povm);
                worst_radius = std::max(worst_radius, e.normalized_radius(v));
                worst_off = std::max(worst_off, e.off_span_distance(v));
            }
            EXPECT_LE(worst_radius, 1.0 + 1e-8) << id << " " << direction_name(dir);
            EXPECT_LE(worst_off, 1e-8) << id << " " << direction_name(dir);
        }
    }
}

TEST(Ellipsoid, ProjectiveExtremesReachSurface) {
    const DensityMatrix rho = catalog_state("giorgi_n3");
    const SteeringEllipsoid e = steering_ellipsoid(rho);
    Rng rng(5);
    double best = 0.0;
    for (int k = 0; k < 2000; ++k)
        best = std::max(best, e.normalized_radius(steered_bloch(rho, {0.5, random_unit_vector(rng)})));
    EXPECT_NEAR(best, 1.0, 1e-6);
}

TEST(Ellipsoid, BellDiagonalDimensionAndQ3) {
    Rng rng(6);
    for (int i = 0; i < 100; ++i) {
        Vec3 c = bd_canonicalize(random_bell_diagonal_c(rng)).c;
        if (i % 3 == 0)
            c = Vec3(0.5 * c(0), 0.5 * c(1), 0.0);
        const DensityMatrix rho = bd_compose(c);
        const SteeringEllipsoid e = steering_ellipsoid(rho);
        int nonzero = 0;
        for (int k = 0; k < 3; ++k)
            nonzero += std::abs(c(k)) > 1e-7;
        EXPECT_EQ(e.dimension_class, nonzero);
        const double q3 = scmub_q3(rho).value;
        EXPECT_EQ(q3 > 1e-6, e.dimension_class == 3) << c.transpose();
        EXPECT_EQ(e.volume() > 1e-12, e.dimension_class == 3);
    }
}

TEST(Classification, CatalogStates) {
    EXPECT_EQ(classify_qse_state(catalog_state("rank2_1way")).dimension_class, 1);
    EXPECT_EQ(classify_qse_state(catalog_state("tau_dprime")).dimension_class, 2);
    EXPECT_EQ(classify_qse_state(catalog_state("tau_prime")).dimension_class, 3);

    EXPECT_TRUE(is_complete_steering(catalog_state("tau_dprime")));
    EXPECT_FALSE(is_complete_steering(catalog_state("giorgi_n3")));
    EXPECT_TRUE(is_complete_steering(maximally_mixed(2, 2)));
    EXPECT_TRUE(classify_qse_state(catalog_state("tau_dprime")).complete_steering);
    EXPECT_FALSE(classify_qse_state(catalog_state("giorgi_n3")).complete_steering);
}

TEST(Classification, NeedleOnZeroDiscordStates) {
    EXPECT_TRUE(classify_qse_state(catalog_state("cq_generic")).discord_zero_needle);
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        const DensityMatrix rho = random_cq_state(rng);
        ASSERT_LT(quantum_discord(rho), 1e-6);
        EXPECT_TRUE(classify_qse_state(rho).discord_zero_needle) << i;
    }
    EXPECT_FALSE(classify_qse_state(catalog_state("rank2_1way")).discord_zero_needle);
    EXPECT_FALSE(classify_qse_state(catalog_state("tau_prime")).discord_zero_needle);
}

TEST(Export, JsonAndMesh) {
    const SteeringEllipsoid e = steering_ellipsoid(bd_compose(Vec3(0.5, 0.3, 0.1)));
    const auto j = nlohmann::json::parse(ellipsoid_to_json(e));
    EXPECT_TRUE(j.contains("center"));
    EXPECT_TRUE(j.contains("semiAxes"));
    EXPECT_TRUE(j.contains("axes"));
    EXPECT_EQ(j.at("class").get<int>(), 3);

    std::istringstream mesh(ellipsoid_mesh_csv(e, 4, 8));
    std::string line;
    int rows = 0;
    std::getline(mesh, line);
    while (std::getline(mesh, line)) {
        double x, y, z;
        int i, k;
        char sep;
        std::istringstream in(line);
        in >> i >> sep >> k >> sep >> x >> sep >> y >> sep >> z;
        EXPECT_NEAR(e.normalized_radius(Vec3(x, y, z)), 1.0, 1e-9);
        ++rows;
    }
    EXPECT_GT(rows, 0);
}
