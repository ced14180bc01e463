#include "oracles.hpp"

#include "qcorr/bell_diagonal.hpp"
#include "qcorr/entropy.hpp"
#include "qcorr/error.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/random.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qcorr;

namespace {

CMatrix bell_projector(int a, int b) {
    const Eigen::Vector4cd v = bell_vector(a, b);
    return v * v.adjoint();
}

bool same_orbit(const Vec3& from, const BdCanonical& can) {
    int flips = 0;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(can.c(i) - can.signs[static_cast<std::size_t>(i)] * from(can.permutation[static_cast<std::size_t>(i)])) > 1e-15)
            return false;
        flips += can.signs[static_cast<std::size_t>(i)] < 0;
    }
    return flips % 2 == 0;
}

}  // namespace

TEST(BellDiagonal, Compose) {
    EXPECT_LT((bd_compose(Vec3::Zero()).matrix() - maximally_mixed(2, 2).matrix()).norm(), 1e-15);
    EXPECT_LT((bd_compose(Vec3(1, -1, 1)).matrix() - bell_projector(0, 0)).norm(), 1e-14);
    try {
        bd_compose(Vec3(1, 1, 1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotPSD);
    }
}

TEST(BellDiagonal, EigenvaluesMatchSpectrum) {
    Rng rng(1);
    for (int i = 0; i < 50; ++i) {
        const Vec3 c = random_bell_diagonal_c(rng);
        const auto l = bd_eigenvalues(c);
        const DensityMatrix rho = bd_compose(c);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                const double direct = (bell_vector(a, b).adjoint() * rho.matrix() * bell_vector(a, b))(0).real();
                EXPECT_NEAR(l[a][b], direct, 1e-14);
            }
    }
}

TEST(BellDiagonal, Canonicalize) {
    const Vec3 inputs[] = {Vec3(0.1, 0.5, 0.3), Vec3(0.5, 0.0, 0.5), Vec3(-1, -1, -1), Vec3(-0.2, 0.4, -0.1)};
    for (const Vec3& c : inputs) {
        const BdCanonical can = bd_canonicalize(c);
        EXPECT_TRUE(bd_is_canonical(can.c));
        EXPECT_TRUE(same_orbit(c, can));
        EXPECT_NEAR(std::abs(can.c(0)), c.cwiseAbs().maxCoeff(), 1e-15);
    }
    EXPECT_LT((bd_canonicalize(Vec3(0.1, 0.5, 0.3)).c.cwiseAbs() - Vec3(0.5, 0.3, 0.1)).norm(), 1e-15);
    EXPECT_LT((bd_canonicalize(Vec3(0.5, 0.0, 0.5)).c - Vec3(0.5, 0.5, 0.0)).norm(), 1e-15);
    EXPECT_LT((bd_canonicalize(Vec3(-1, -1, -1)).c - Vec3(1, 1, -1)).norm(), 1e-15);
}

TEST(BellDiagonal, CanonicalizationPreservesSpectrumAndMeasures) {
    Rng rng(2);
    for (int i = 0; i < 50; ++i) {
        const Vec3 c = random_bell_diagonal_c(rng);
        const Vec3 cc = bd_canonicalize(c).c;
        auto sorted = [](const Vec3& v) {
            const auto l = bd_eigenvalues(v);
            std::array<double, 4> s{l[0][0], l[0][1], l[1][0], l[1][1]};
            std::sort(s.begin(), s.end());
            return s;
        };
        const auto s1 = sorted(c), s2 = sorted(cc);
        for (std::size_t k = 0; k < 4; ++k)
            EXPECT_NEAR(s1[k], s2[k], 1e-14);
    }
}

TEST(BellDiagonal, ProfileExamples) {
    const BdProfile tp = bd_profile(Vec3::Constant(1.0 / 3.0));
    EXPECT_NEAR(tp.discord, 0.3333, 1e-4);
    EXPECT_NEAR(tp.ss2, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(tp.ss3, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(tp.qse_volume, 1.0 / 27.0, 1e-15);

    const BdProfile td = bd_profile(Vec3(0.5, 0.5, 0.0));
    EXPECT_NEAR(td.discord, 0.3113, 1e-4);
    EXPECT_NEAR(td.ss2, 0.5, 1e-15);
    EXPECT_EQ(td.ss3, 0.0);

    const BdProfile z = bd_profile(Vec3::Zero());
    EXPECT_EQ(z.c1 + z.q2 + z.q3 + z.ss2 + z.ss3 + z.discord + z.qse_volume, 0.0);
}

TEST(BellDiagonal, ProfileRequiresCanonicalInput) {
    try {
        bd_profile(Vec3(0.1, 0.5, 0.3));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DomainError);
    }
}

TEST(BellDiagonal, ProfileClosedForms) {
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const Vec3 c = bd_canonicalize(random_bell_diagonal_c(rng)).c;
        const BdProfile p = bd_profile(c);
        EXPECT_NEAR(p.c1, oracle::bd_curve(c(0)), 1e-14);
        EXPECT_NEAR(p.q2, oracle::bd_curve(p.ss2), 1e-14);
        EXPECT_NEAR(p.q3, oracle::bd_curve(p.ss3), 1e-14);
        EXPECT_NEAR(p.ss2, std::abs(c(1)), 1e-15);
        EXPECT_NEAR(p.ss3, std::abs(c(2)), 1e-15);
        EXPECT_NEAR(p.qse_volume, std::abs(c.prod()), 1e-15);
        EXPECT_EQ(p.discord > 1e-12, std::abs(c(1)) > 1e-9);
        const oracle::M4 m = bd_compose(c).matrix();
        const double mi = 2.0 - oracle::entropy(m);
        EXPECT_NEAR(p.discord, mi - p.c1, 1e-12);
    }
}

TEST(BellDiagonal, ProfileMatchesGenericMeasures) {
    Rng rng(4);
    for (int i = 0; i < 50; ++i) {
        const Vec3 c = bd_canonicalize(random_bell_diagonal_c(rng)).c;
        const BdProfile p = bd_profile(c);
        const ScmubProfile g = scmub_profile(bd_compose(c));
        EXPECT_NEAR(p.c1, g.c1, 1e-4);
        EXPECT_NEAR(p.q2, g.q2, 1e-4);
        EXPECT_NEAR(p.q3, g.q3, 1e-4);
        EXPECT_NEAR(p.discord, g.discord, 1e-4);
    }
}

TEST(BellDiagonal, Q2IsMonotoneInSs2) {
    double prev = -1.0;
    for (int i = 0; i <= 100; ++i) {
        const double s = i / 100.0;
        const double q2 = bd_profile(Vec3(0.5, 0.5 * s, 0.0)).q2;
        EXPECT_GE(q2 - prev, 0.0);
        prev = q2;
    }
}

TEST(BellDiagonal, EntanglementFlagMatchesPpt) {
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        const Vec3 c = bd_canonicalize(random_bell_diagonal_c(rng)).c;
        const BdProfile p = bd_profile(c);
        EXPECT_EQ(p.entangled, !is_separable_ppt(bd_compose(c))) << c.transpose();
        EXPECT_NEAR(p.concurrence, oracle::concurrence(bd_compose(c).matrix()), 1e-10);
    }
}

TEST(TwoParam, Examples) {
    const BdTwoParam zero = bd_two_param(0.0, 0.0);
    EXPECT_LT((zero.state.matrix() - maximally_mixed(2, 2).matrix()).norm(), 1e-15);
    EXPECT_EQ(zero.profile.c1 + zero.profile.q2 + zero.profile.discord, 0.0);

    const BdTwoParam eq = bd_two_param(0.4, 0.4);
    EXPECT_NEAR(eq.profile.ss3, 0.0, 1e-15);
    EXPECT_NEAR(eq.profile.ss2, 0.4, 1e-15);
    EXPECT_GT(eq.profile.discord, 0.0);
    EXPECT_NEAR(eq.profile.qse_volume, 0.0, 1e-15);

    const BdTwoParam sep = bd_two_param(0.3, 0.1);
    EXPECT_FALSE(sep.profile.entangled);
    EXPECT_NEAR(sep.profile.ss2, 0.3, 1e-15);
    EXPECT_NEAR(sep.profile.ss3, 0.2, 1e-15);
}

TEST(TwoParam, MixtureOfBellProjectors) {
    Rng rng(6);
    std::uniform_real_distribution<> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        double p = u(rng), q = u(rng) * p;
        if (p + q > 1.0) {
            p *= 0.5;
            q *= 0.5;
        }
        const BdTwoParam t = bd_two_param(p, q);
        const CMatrix expected = p * bell_projector(0, 0) + 0.5 * q * (bell_projector(1, 0) + bell_projector(1, 1)) +
                                 0.25 * (1.0 - p - q) * CMatrix::Identity(4, 4);
        EXPECT_LT((t.state.matrix() - expected).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LT((bd_compose(t.c).matrix() - expected).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_NEAR(t.profile.c1, oracle::bd_curve(p), 1e-14);
        EXPECT_NEAR(t.profile.eigenvalues[0][0] + t.profile.eigenvalues[0][1] + t.profile.eigenvalues[1][0] +
                        t.profile.eigenvalues[1][1],
                    1.0, 1e-14);
        EXPECT_EQ(t.profile.entangled, 3 * p - q > 1.0 + 1e-12);
    }
}

TEST(TwoParam, DomainErrors) {
    for (auto [p, q] : {std::pair{0.2, 0.3}, {0.7, 0.5}, {-0.1, 0.0}}) {
        try {
            bd_two_param(p, q);
            FAIL() << p << "," << q;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::DomainError);
        }
    }
}
