#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "tv/enumerate.hpp"

using namespace tv;

namespace {

AngleParams random_admissible(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;) {
        const double eta = 0.05 + u(rng) * (M_PI / 2 - 0.1);
        const double lo = eta + 0.05, hi = M_PI - eta - 0.05;
        if (lo >= hi) continue;
        const double lambda = lo + u(rng) * (hi - lo);
        const double half = lambda - eta - 0.03;
        if (half <= 0) continue;
        const double mu = -half + u(rng) * 2 * half;
        const AngleParams p{eta, lambda, mu};
        if (is_admissible(p)) return p;
    }
}

void check_sum_rules(const RefinedPartition& rp) {
    double hit = 0, top = 0;
    for (int L = 1; L <= rp.n; ++L) {
        hit += rp.byHitH[L] + rp.byHitD[L];
        top += rp.byTopV[L] + rp.byTopD[L];
    }
    CHECK(hit == doctest::Approx(rp.total).epsilon(1e-12));
    CHECK(top == doctest::Approx(rp.total).epsilon(1e-12));
}

}  // namespace

TEST_CASE("20V configuration counts") {
    const WeightOracle uni = make_uniform_oracle();
    CHECK(enumerate_20v(1, BoundaryCondition::DWBC2, uni).total == doctest::Approx(1.0));
    // n=2 has exactly three configurations (hand enumeration of the forced grid)
    CHECK(enumerate_20v(2, BoundaryCondition::DWBC2, uni).total == doctest::Approx(3.0));
    CHECK(enumerate_20v(3, BoundaryCondition::DWBC1, uni).total == doctest::Approx(23.0));
    for (int n : {1, 2, 3})
        CHECK(enumerate_20v(n, BoundaryCondition::DWBC1, uni).total ==
              doctest::Approx(enumerate_20v(n, BoundaryCondition::DWBC2, uni).total));
    CHECK(enumerate_configs(3, BoundaryCondition::DWBC1).size() == 23);
}

TEST_CASE("cap exceeded raises a size error") {
    CHECK_THROWS_AS(enumerate_20v(5, BoundaryCondition::DWBC2, make_uniform_oracle()),
                    std::length_error);
    CHECK_THROWS_AS(enumerate_6v(7, 1, 1, 1), std::length_error);
}

TEST_CASE("memoized frontier enumeration equals naive DFS") {
    std::mt19937_64 rng(5);
    const AngleParams p = random_admissible(rng);
    std::vector<WeightOracle> oracles;
    oracles.push_back(make_uniform_oracle());
    oracles.push_back(make_oracle(compute_weights(p)));
    oracles.push_back(make_theta_oracle_20v(p, 0.2, 3));
    for (const auto& oracle : oracles) {
        for (BoundaryCondition bc : {BoundaryCondition::DWBC1, BoundaryCondition::DWBC2}) {
            for (int n : {1, 2, 3}) {
                const RefinedPartition a = enumerate_20v(n, bc, oracle);
                const RefinedPartition b = enumerate_20v_dfs(n, bc, oracle);
                CHECK(a.total == doctest::Approx(b.total).epsilon(1e-13));
                for (int L = 1; L <= n; ++L) {
                    CHECK(a.byHitH[L] == doctest::Approx(b.byHitH[L]).epsilon(1e-13));
                    CHECK(a.byHitD[L] == doctest::Approx(b.byHitD[L]).epsilon(1e-13));
                    CHECK(a.byTopV[L] == doctest::Approx(b.byTopV[L]).epsilon(1e-13));
                    CHECK(a.byTopD[L] == doctest::Approx(b.byTopD[L]).epsilon(1e-13));
                }
                check_sum_rules(a);
            }
        }
    }
}

TEST_CASE("classify stays within the 20 valid patterns") {
    for (const Configuration& c : enumerate_configs(3, BoundaryCondition::DWBC2))
        for (int x = 1; x <= 3; ++x)
            for (int y = 1; y <= 3; ++y) CHECK(pattern_class(classify_vertex(c, x, y)) >= 0);
}

TEST_CASE("6V enumeration") {
    SUBCASE("n=1 is a single c vertex") {
        CHECK(enumerate_6v(1, 0.7, 0.4, 0.9).total == doctest::Approx(0.9));
    }
    SUBCASE("n=3 uniform counts alternating sign matrices") {
        CHECK(enumerate_6v(3, 1, 1, 1).total == doctest::Approx(7.0));
        CHECK(enumerate_6v(4, 1, 1, 1).total == doctest::Approx(42.0));
    }
    SUBCASE("unit last-column scale is a no-op") {
        const RefinedPartition a = enumerate_6v(3, 0.8, 0.5, 0.6);
        const RefinedPartition b = enumerate_6v(3, 0.8, 0.5, 0.6, {1.0, 1.0, 1.0});
        CHECK(a.total == doctest::Approx(b.total));
    }
}

TEST_CASE("Thm 2.1 identity oracle") {
    std::mt19937_64 rng(71);
    SUBCASE("n = 1 reduces to single-vertex products") {
        for (int k = 0; k < 10; ++k) CHECK(verify_thm1(1, random_admissible(rng)) < 1e-12);
    }
    SUBCASE("n = 2, mu = 0") {
        AngleParams p = random_admissible(rng);
        p.mu = 0.0;
        REQUIRE(is_admissible(p));
        CHECK(verify_thm1(2, p) < 1e-12);
    }
    SUBCASE("n = 3, random admissible parameters") {
        for (int k = 0; k < 20; ++k) CHECK(verify_thm1(3, random_admissible(rng)) < 1e-10);
    }
}

TEST_CASE("Thm 3.1/3.2 refined identity oracle") {
    std::mt19937_64 rng(73);
    const std::vector<double> sigmas = {0.25, 0.45, 0.7, 0.9, 1.0, 1.15, 1.4, 1.8, 2.3, 3.0};
    SUBCASE("generic parameters at n = 2, 3") {
        for (int k = 0; k < 8; ++k) {
            const AngleParams p = random_admissible(rng);
            CHECK(verify_thm2(2, p, sigmas) < 1e-10);
            CHECK(verify_thm2(3, p, sigmas) < 1e-10);
        }
    }
    SUBCASE("strict proportionality at mu = lambda - 5 eta") {
        int done = 0;
        while (done < 5) {
            AngleParams p = random_admissible(rng);
            p.mu = p.lambda - 5 * p.eta;
            if (!is_admissible(p)) continue;
            CHECK(verify_thm2(3, p, sigmas) < 1e-10);
            // g == 1: the hit polynomial alone reproduces the 6V side
            const RefinedPartition r20 =
                enumerate_20v(3, BoundaryCondition::DWBC2, make_oracle(compute_weights(p)));
            const double a = std::sin(p.lambda + p.eta), b = std::sin(p.lambda - p.eta),
                         c = std::sin(2 * p.eta);
            const RefinedPartition r6 = enumerate_6v(3, a, b, c);
            const double pref = std::pow(std::sin(4 * p.eta) * std::sin(p.lambda - p.eta), 9);
            for (double sigma : {0.6, 1.3}) {
                const RefinedMap m = refined_map(sigma, p);
                const double lhs = r20.hit_poly_h(m.tau) + r20.hit_poly_d(m.tau);
                const double rhs = pref * r6.hit_poly_h(sigma);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
            }
            ++done;
        }
    }
}

TEST_CASE("theta-modified unraveling identity") {
    std::mt19937_64 rng(79);
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    for (int n : {1, 2, 3}) {
        for (int k = 0; k < 5; ++k) {
            const AngleParams p = random_admissible(rng);
            const double chi = u(rng);
            CHECK(verify_theta_route(n, p, chi) < 1e-10);
        }
    }
}

TEST_CASE("refined vectors against per-configuration tracing") {
    // byHit / byTop must agree with explicit uppermost-path observables
    const AngleParams p{0.3, 1.35, 0.25};
    const PatternWeights pw = vertex_weight_map(compute_weights(p));
    for (BoundaryCondition bc : {BoundaryCondition::DWBC1, BoundaryCondition::DWBC2}) {
        const int n = 3;
        RefinedPartition manual(n);
        for (const Configuration& c : enumerate_configs(n, bc)) {
            const double w = config_weight(c, pw);
            manual.total += w;
            const HitPosition hp = hit_position(c);
            (hp.last == HitStep::H ? manual.byHitH : manual.byHitD)[hp.L] += w;
            const TopExit te = top_exit_position(c);
            (te.first == TopStep::V ? manual.byTopV : manual.byTopD)[te.L] += w;
        }
        const RefinedPartition dp = enumerate_20v(n, bc, make_oracle(pw));
        CHECK(dp.total == doctest::Approx(manual.total).epsilon(1e-12));
        for (int L = 1; L <= n; ++L) {
            CHECK(dp.byHitH[L] == doctest::Approx(manual.byHitH[L]).epsilon(1e-12));
            CHECK(dp.byHitD[L] == doctest::Approx(manual.byHitD[L]).epsilon(1e-12));
            CHECK(dp.byTopV[L] == doctest::Approx(manual.byTopV[L]).epsilon(1e-12));
            CHECK(dp.byTopD[L] == doctest::Approx(manual.byTopD[L]).epsilon(1e-12));
        }
    }
}
