#include "cyclic_osc/variants.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace cyclic_osc;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> head_energies(const std::vector<double>& e, std::size_t count) {
    return {e.begin(), e.begin() + static_cast<std::ptrdiff_t>(count)};
}

// Independent evaluation of the PSSQM r constant straight from its defining sum.
double pssqm_r_oracle(const AlgebraParams& p, int mu) {
    const int order = p.lambda() - 1;
    double sum = 0;
    for (int nu = 3; nu <= order; ++nu) sum += (order - nu + 1) * p.alpha(mu + nu);
    return ((order - 2) * (p.alpha(mu + 2) + order) + 2 * sum) / order;
}

}  // namespace

TEST(Pssqm, ROrderTwoVanishes) {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = test_support::random_fock_params(rng, 3);
        for (int mu = 0; mu < 3; ++mu) EXPECT_EQ(pssqm_r(p, mu), 0.0);
    }
}

TEST(Pssqm, RMatchesOracle) {
    std::mt19937_64 rng(67);
    for (int lambda = 3; lambda <= 7; ++lambda)
        for (int trial = 0; trial < 10; ++trial) {
            const auto p = test_support::random_fock_params(rng, lambda);
            for (int mu = 0; mu < lambda; ++mu)
                EXPECT_NEAR(pssqm_r(p, mu), pssqm_r_oracle(p, mu), 1e-13);
        }
    EXPECT_DOUBLE_EQ(pssqm_r(new_params(4, {0.0, 0.0, 0.0}), 0), 1.0);
}

TEST(Pssqm, OrderThreeSpectrum) {
    const auto s = pssqm_build(build_rep(new_params(4, {0.0, 0.0, 0.0}), 24), 0);
    EXPECT_EQ(s.r_values.at("r_2"), 1.0);
    EXPECT_EQ(head_energies(s.energies(), 10),
              (std::vector<double>{-1, 3, 3, 3, 3, 7, 7, 7, 7, 11}));
    const auto g = ground_state_analysis(s, 1e-9);
    EXPECT_EQ(g.energy, -1.0);
    EXPECT_EQ(g.multiplicity, 1);
    EXPECT_FALSE(g.broken);
}

TEST(Pssqm, BrokenGroundStateDegeneracy) {
    const auto r = build_rep(new_params(3, {1.0, -0.5}), 30);
    const auto s = pssqm_build(r, 1);
    const auto levels = variant_levels(s, 1e-9);
    EXPECT_EQ(levels.front().multiplicity(), 2);
    EXPECT_EQ(ground_state_analysis(s, 1e-9).multiplicity, 2);
}

TEST(Pssqm, RejectsBadFamily) {
    const auto r = build_rep(new_params(3, {1.0, -0.5}), 12);
    EXPECT_THROW(pssqm_build(r, 3), DomainError);
    EXPECT_THROW(pssqm_build(r, -1), DomainError);
}

TEST(PssqmCheck, Examples) {
    const auto r = build_rep(new_params(3, {1.0, -0.5}), 42);
    const auto rep = pssqm_check(pssqm_build(r, 0), 1e-10);
    for (const auto& x : rep.relations) EXPECT_TRUE(x.pass) << x.name << " " << x.residual;
    EXPECT_EQ(rep.headroom, 4);

    std::mt19937_64 rng(71);
    const auto p5 = test_support::random_fock_params(rng, 5);
    const auto r5 = build_rep<long double>(p5, 60);
    for (int mu = 0; mu <= 4; ++mu) {
        const auto rep5 = pssqm_check(pssqm_build(r5, mu), 1e-10);
        EXPECT_TRUE(rep5.all_pass()) << mu << " " << rep5.max_residual();
        EXPECT_EQ(rep5.headroom, 6);
    }
}

TEST(PssqmCheck, BareCreationFailsMultilinear) {
    const auto r = build_rep(new_params(3, {1.0, -0.5}), 30);
    auto s = pssqm_build(r, 0);
    s.Q = r.adag;
    const auto rep = pssqm_check(s, 1e-10);
    EXPECT_FALSE(rep.find("sum_j Q^{p-j} Q^dag Q^j = 2p Q^{p-1} H")->pass);
}

TEST(PssqmCheck, NilpotencyIsExact) {
    std::mt19937_64 rng(73);
    for (int lambda = 3; lambda <= 5; ++lambda) {
        const auto r = build_rep(test_support::random_fock_params(rng, lambda), 30);
        const int p = lambda - 1;
        for (int mu = 0; mu <= p; ++mu) {
            const auto s = pssqm_build(r, mu);
            const Eigen::MatrixXcd qp1 = detail::power(s.Q, p + 1);
            const Eigen::MatrixXcd qp = detail::power(s.Q, p);
            EXPECT_EQ(qp1.cwiseAbs().maxCoeff(), 0.0);
            EXPECT_GT(qp.topLeftCorner(30 - p - 2, 30 - p - 2).cwiseAbs().maxCoeff(), 1.0);
        }
    }
}

TEST(PssqmCheck, ChargeRaisesGradeByOne) {
    const auto r = build_rep(new_params(5, {0.3, -0.2, 0.1, 0.4}), 30);
    for (int mu = 0; mu <= 4; ++mu) {
        const auto s = pssqm_build(r, mu);
        for (int nu = 0; nu < 5; ++nu) {
            const Eigen::MatrixXcd qp = s.Q * r.P(nu);
            EXPECT_EQ((r.P(nu + 1) * qp - qp).cwiseAbs().maxCoeff(), 0.0);
            // only grade mu is annihilated
            EXPECT_EQ(qp.cwiseAbs().maxCoeff() == 0.0, nu == mu) << mu << " " << nu;
        }
    }
}

TEST(Pssqm, DegeneracyStructureAndGroundSign) {
    std::mt19937_64 rng(79);
    for (int p = 2; p <= 4; ++p) {
        bool negative = false, positive = false;
        for (int trial = 0; trial < 40; ++trial) {
            const auto params = test_support::random_fock_params(rng, p + 1, -0.9, 2.5);
            const auto r = build_rep(params, 12 * (p + 1));
            for (int mu = 0; mu <= p; ++mu) {
                const auto s = pssqm_build(r, mu);
                const auto levels = variant_levels(s, 1e-9);
                ASSERT_GE(levels.size(), 4u);
                EXPECT_EQ(levels.front().multiplicity(), mu + 1);
                for (std::size_t i = 1; i < levels.size(); ++i)
                    EXPECT_EQ(levels[i].multiplicity(), p + 1) << p << " " << mu << " " << i;
                const auto g = ground_state_analysis(s, 1e-9);
                if (mu >= p - 1) {
                    EXPECT_GT(g.energy, 0.0);
                } else {
                    negative |= g.energy < 0;
                    positive |= g.energy > 0;
                }
            }
        }
        EXPECT_TRUE(negative) << p;
        EXPECT_TRUE(positive) << p;
    }
}

TEST(PssqmCubic, OnAndOffLocus) {
    const auto on = build_rep<long double>(new_params(3, {0.5, 0.5}), 42);
    const auto s_on = pssqm_build(on, 0);
    EXPECT_TRUE(pssqm_check(s_on, 1e-10).all_pass());
    EXPECT_TRUE(pssqm_cubic_check(s_on, 1e-10).all_pass());

    const auto off = build_rep<long double>(new_params(3, {1.0, -0.5}), 42);
    const auto s_off = pssqm_build(off, 0);
    EXPECT_TRUE(pssqm_check(s_off, 1e-10).all_pass());
    const auto cubic = pssqm_cubic_check(s_off, 1e-10);
    EXPECT_FALSE(cubic.all_pass());
    EXPECT_FALSE(cubic.degenerate);
}

TEST(PssqmCubic, LocusIsAlphaMuPlusTwoMinusOne) {
    std::mt19937_64 rng(83);
    std::uniform_real_distribution<double> u(-0.5, 1.5);
    for (int trial = 0; trial < 20; ++trial) {
        const int mu = trial % 3;
        // Put alpha_{mu+2} = -1 and keep the Fock condition.
        std::vector<double> alpha(3);
        alpha[wrap(mu + 2, 3)] = -1.0;
        const double x = u(rng);
        alpha[wrap(mu, 3)] = x;
        alpha[wrap(mu + 1, 3)] = 1.0 - x;
        const auto p = AlgebraParams::from_alpha(3, alpha);
        if (!validate_fock(p).ok()) continue;
        const auto s = pssqm_build(build_rep<long double>(p, 36), mu);
        EXPECT_TRUE(pssqm_cubic_check(s, 1e-10).all_pass()) << mu << " " << x;
    }
}

TEST(PssqmCubic, ZeroChargeIsDegenerate) {
    auto s = pssqm_build(build_rep(new_params(3, {1.0, -0.5}), 20), 0);
    s.Q.setZero();
    const auto rep = pssqm_cubic_check(s, 1e-10);
    EXPECT_TRUE(rep.all_pass());
    EXPECT_TRUE(rep.degenerate);
    const auto order3 = pssqm_build(build_rep(new_params(4, {0.0, 0.0, 0.0}), 20), 0);
    EXPECT_THROW(pssqm_cubic_check(order3, 1e-10), DomainError);
}

TEST(PseudoFamily1, CanonicalMember) {
    const auto r = build_rep(new_params(3, {1.0, -0.5}), 30);
    for (double c : {1.0, 0.7, -1.3}) {
        const auto s = pseudo_family1_build(r, 0, c, std::sqrt(2.0) * std::abs(c), 0.0);
        EXPECT_EQ(s.r_values.at("r_2"), 0.0);
        const Eigen::MatrixXcd expect = std::abs(c) * std::sqrt(2.0) * (r.adag + r.a) * r.P(2);
        EXPECT_LT((s.Q - expect).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(PseudoFamily1, RValueAndDomain) {
    const auto r = build_rep(new_params(3, {0.0, 0.0}), 30);
    const auto s = pseudo_family1_build(r, 0, 1.0, 1.0, kPi / 2);
    EXPECT_DOUBLE_EQ(s.r_values.at("r_2"), -0.5);
    EXPECT_THROW(pseudo_family1_build(r, 0, 1.0, 2.0, 0.0), DomainError);
    EXPECT_THROW(pseudo_family1_build(r, 0, 1.0, 0.0, 0.0), DomainError);
    EXPECT_THROW(pseudo_family1_build(r, 0, 0.0, 1.0, 0.0), DomainError);
    EXPECT_THROW(pseudo_family1_build(r, 0, 1.0, 1.0, 2 * kPi), DomainError);
    EXPECT_THROW(pseudo_family1_build(build_rep(new_params(4, {0.0, 0.0, 0.0}), 30), 0, 1.0,
                                      1.0, 0.0),
                 DomainError);
}

TEST(PseudoFamily2, SpectraAndGroundStates) {
    const auto r = build_rep(new_params(3, {0.0, 0.0}), 30);
    const auto eq = pseudo_family2_build(r, 0, 0.5, 3.0);
    EXPECT_EQ(family2_equal_spacing_r(r.params, 0), 3.0);
    EXPECT_EQ(head_energies(eq.energies(), 9), (std::vector<double>{2, 2, 2, 5, 5, 5, 8, 8, 8}));
    EXPECT_TRUE(spacing_report(variant_levels(eq, 1e-9), 1e-9).equally_spaced());

    const auto small = pseudo_family2_build(r, 0, 0.5, 0.0);
    EXPECT_FALSE(spacing_report(variant_levels(small, 1e-9), 1e-9).equally_spaced());
    EXPECT_EQ(ground_state_analysis(small, 1e-9).multiplicity, 1);

    const auto large = pseudo_family2_build(r, 0, 0.5, 10.0);
    const auto g = ground_state_analysis(large, 1e-9);
    EXPECT_EQ(g.multiplicity, 2);
    EXPECT_GT(g.energy, 0.0);
    EXPECT_TRUE(g.broken);
}

TEST(PseudoCheck, Examples) {
    const auto r = build_rep(new_params(3, {1.0, -0.5}), 42);
    const auto f1 = pseudo_check(pseudo_family1_build(r, 0, 1.0, std::sqrt(2.0), 0.0), 1e-10);
    for (const auto& x : f1.relations) EXPECT_TRUE(x.pass) << x.name << " " << x.residual;
    EXPECT_EQ(f1.headroom, 4);

    const auto r0 = build_rep(new_params(3, {0.0, 0.0}), 42);
    EXPECT_TRUE(pseudo_check(pseudo_family2_build(r0, 0, 0.5, 3.0), 1e-10).all_pass());

    const auto bad = pseudo_check(pseudo_family1_raw(r, 0, 1.0, 2.5, 0.0), 1e-10);
    EXPECT_FALSE(bad.find("Q Q^dag Q = 4 c^2 Q H")->pass);
}

TEST(PseudoCheck, RandomMembers) {
    std::mt19937_64 rng(89);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const auto p = test_support::random_fock_params(rng, 3);
        const auto r = build_rep(p, 30);
        const int mu = trial % 3;
        const double c = (u(rng) < 0.5 ? -1 : 1) * (0.2 + 2 * u(rng));
        const double eta = 2 * std::abs(c) * (0.02 + 0.96 * u(rng));
        const double phi = 2 * kPi * u(rng);
        EXPECT_TRUE(pseudo_check(pseudo_family1_build(r, mu, c, eta, phi), 1e-10).all_pass());
        const double rmu = -6 + 12 * u(rng);
        EXPECT_TRUE(pseudo_check(pseudo_family2_build(r, mu, c, rmu), 1e-10).all_pass());
    }
}

TEST(PseudoFamily2, EqualSpacingOnlyAtRepresentative) {
    std::mt19937_64 rng(97);
    for (int trial = 0; trial < 30; ++trial) {
        const auto p = test_support::random_fock_params(rng, 3);
        const auto r = build_rep(p, 36);
        const int mu = trial % 3;
        const double r0 = family2_equal_spacing_r(p, mu);
        EXPECT_GE(r0, 0.0);
        EXPECT_LT(r0, 6.0);
        EXPECT_TRUE(
            spacing_report(variant_levels(pseudo_family2_build(r, mu, 1.0, r0), 1e-9), 1e-9)
                .equally_spaced());
        const double next = family2_equal_spacing_r(p, mu, 1);
        EXPECT_TRUE(
            spacing_report(variant_levels(pseudo_family2_build(r, mu, 1.0, next), 1e-9), 1e-9)
                .equally_spaced());
        for (double d : {-0.5, 0.5})
            EXPECT_FALSE(spacing_report(
                             variant_levels(pseudo_family2_build(r, mu, 1.0, r0 + d), 1e-9), 1e-9)
                             .equally_spaced());
    }
    EXPECT_EQ(family2_equal_spacing_r(new_params(3, {0.0, 0.0}), 0, 1), 9.0);
}

TEST(Coincidence, PssqmAndPseudoHamiltoniansAgree) {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const auto r = build_rep(test_support::random_fock_params(rng, 3), 30);
        const int mu = trial % 3;
        const double c = 0.3 + 0.1 * trial;
        const auto a = pssqm_build(r, mu);
        const auto b = pseudo_family1_build(r, mu, c, std::sqrt(2.0) * c, 0.0);
        EXPECT_TRUE((a.H.array() == b.H.array()).all());
        EXPECT_GT((a.Q - b.Q).cwiseAbs().maxCoeff(), 0.1);
    }
}

TEST(Ossqm, Examples) {
    const auto r1 = build_rep(new_params(3, {0.5, 0.5}), 42);
    const auto s1 = ossqm_build(r1, 1, 1.0, 0.0);
    EXPECT_EQ(head_energies(s1.energies(), 7), (std::vector<double>{0, 3, 3, 3, 6, 6, 6}));
    const auto g1 = ground_state_analysis(s1, 1e-9);
    EXPECT_EQ(g1.energy, 0.0);
    EXPECT_EQ(g1.multiplicity, 1);
    EXPECT_FALSE(g1.broken);
    const auto c1 = ossqm_check(s1, 1e-12);
    for (const auto& x : c1.relations) EXPECT_TRUE(x.pass) << x.name << " " << x.residual;
    EXPECT_EQ(c1.relations.size(), 10u);

    const auto r0 = build_rep(new_params(3, {0.0, -1.0}), 42);
    const auto s0 = ossqm_build(r0, 0, std::sqrt(2.0), 0.0);
    EXPECT_EQ(head_energies(s0.energies(), 6), (std::vector<double>{1, 1, 1, 4, 4, 4}));
    const auto g0 = ground_state_analysis(s0, 1e-9);
    EXPECT_EQ(g0.energy, 1.0);
    EXPECT_EQ(g0.multiplicity, 3);
    EXPECT_TRUE(g0.broken);
    EXPECT_TRUE(ossqm_check(s0, 1e-12).all_pass());
}

TEST(Ossqm, Domain) {
    const auto r = build_rep(new_params(3, {0.5, 0.5}), 30);
    try {
        ossqm_build(r, 2, 1.0, 0.0);
        FAIL() << "expected DomainError";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("absence of a third family"), std::string::npos);
    }
    EXPECT_THROW(ossqm_build(r, 0, 1.0, 0.0), DomainError);  // alpha_1 = 0.5
    EXPECT_THROW(ossqm_build(r, 1, 0.0, 0.0), DomainError);
    EXPECT_THROW(ossqm_build(r, 1, 1.5, 0.0), DomainError);
    EXPECT_NO_THROW(ossqm_build(r, 1, std::sqrt(2.0), 0.0));
}

TEST(Ossqm, UnrenormalizedPerturbationFails) {
    const auto r = build_rep(new_params(3, {0.5, 0.5}), 42);
    auto s = ossqm_build(r, 1, 1.0, 0.0);
    const Eigen::MatrixXcd lower = r.a * r.P(0);
    const Eigen::MatrixXcd upper = r.adag * r.P(1);
    s.Q += 0.2 * lower;
    s.Q2 += 0.2 * upper;
    const auto rep = ossqm_check(s, 1e-10);
    EXPECT_FALSE(rep.find("Q_1 Q_1^dag + sum_t Q_t^dag Q_t = 2H")->pass);
    EXPECT_FALSE(rep.all_pass());
}

TEST(Ossqm, RandomMembers) {
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const int mu = trial % 2;
        // alpha_{mu+1} = -1, alpha_0 = x > -1 keeps F(1), F(2) > 0 for both families.
        const double x = -0.9 + 2.9 * u(rng);
        std::vector<double> alpha(3);
        alpha[mu + 1] = -1.0;
        alpha[0] = x;
        alpha[mu == 0 ? 2 : 1] = 1.0 - x;
        const auto p = AlgebraParams::from_alpha(3, alpha);
        ASSERT_TRUE(validate_fock(p).ok());
        const auto s = ossqm_build(build_rep(p, 30), mu, std::sqrt(2.0) * (0.05 + 0.95 * u(rng)),
                                   2 * kPi * u(rng));
        const auto rep = ossqm_check(s, 1e-10);
        EXPECT_TRUE(rep.all_pass()) << mu << " " << rep.max_residual();
    }
}
