#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tv/enumerate.hpp"
#include "tv/lattice.hpp"

using namespace tv;

TEST_CASE("n=1 boundary forcing") {
    SUBCASE("DWBC2: the unique node is W->S") {
        Configuration c(1, BoundaryCondition::DWBC2);
        REQUIRE(is_valid(c));
        CHECK(classify_vertex(c, 1, 1) == pat::make(pat::IN_W, pat::OUT_S));
        const VertexWeights w = compute_weights({0.3, 1.4, 0.2});
        CHECK(config_weight(c, vertex_weight_map(w)) == doctest::Approx(w[4]));
        CHECK(hit_position(c).L == 1);
        CHECK(hit_position(c).last == HitStep::H);
        CHECK(top_exit_position(c).L == 1);
        CHECK(top_exit_position(c).first == TopStep::V);
    }
    SUBCASE("DWBC1: the unique node is {W,NW}->{SE,S}, weight omega4") {
        Configuration c(1, BoundaryCondition::DWBC1);
        REQUIRE(is_valid(c));
        CHECK(classify_vertex(c, 1, 1) ==
              pat::make(pat::IN_W | pat::IN_NW, pat::OUT_SE | pat::OUT_S));
        const VertexWeights w = compute_weights({0.3, 1.4, 0.2});
        CHECK(config_weight(c, vertex_weight_map(w)) == doctest::Approx(w[4]));
    }
}

TEST_CASE("extremal diagonal configurations are valid") {
    for (int n : {1, 2, 3, 4, 5}) {
        CHECK(is_valid(extremal_diagonal(n, BoundaryCondition::DWBC1)));
        CHECK(is_valid(extremal_diagonal(n, BoundaryCondition::DWBC2)));
        CHECK(is_valid(extremal_diagonal(n, BoundaryCondition::SIXV_DWBC)));
    }
}

TEST_CASE("flipping any boundary edge is rejected by validation") {
    Configuration c = extremal_diagonal(3, BoundaryCondition::DWBC2);
    REQUIRE(is_valid(c));
    c.H(0, 2) ^= 1;
    CHECK_FALSE(is_valid(c));
    c.H(0, 2) ^= 1;
    c.V(2, 0) ^= 1;
    CHECK_FALSE(is_valid(c));
    c.V(2, 0) ^= 1;
    c.D(0, 3) ^= 1;  // the DWBC2-excluded corner
    CHECK_FALSE(is_valid(c));
    c.D(0, 3) ^= 1;
    CHECK(is_valid(c));
}

TEST_CASE("classify_vertex raises carrying the node on conservation failure") {
    Configuration c = extremal_diagonal(3, BoundaryCondition::DWBC2);
    c.H(1, 2) ^= 1;  // break an interior edge
    bool caught = false;
    for (int x = 1; x <= 3 && !caught; ++x)
        for (int y = 1; y <= 3 && !caught; ++y) {
            try {
                classify_vertex(c, x, y);
            } catch (const InvalidConfiguration& e) {
                caught = true;
                CHECK((e.node.x >= 1 && e.node.x <= 3));
            }
        }
    CHECK(caught);
}

TEST_CASE("uniform weight of any valid n=3 configuration is (sqrt2/2)^9") {
    const VertexWeights w = compute_weights({M_PI / 8, 5 * M_PI / 8, 0.0});
    const PatternWeights pw = vertex_weight_map(w);
    for (const Configuration& c : enumerate_configs(3, BoundaryCondition::DWBC2))
        CHECK(config_weight(c, pw) == doctest::Approx(std::pow(std::sqrt(2.0) / 2, 9)));
}

TEST_CASE("rotate180 + complement is an involution mapping DWBC1 onto DWBC2") {
    const auto c1 = enumerate_configs(3, BoundaryCondition::DWBC1);
    const auto c2 = enumerate_configs(3, BoundaryCondition::DWBC2);
    REQUIRE(c1.size() == c2.size());

    const VertexWeights w = compute_weights({0.25, 1.1, 0.3});
    const PatternWeights pw = vertex_weight_map(w);
    for (const Configuration& c : c1) {
        const Configuration img = rotate180_complement(c);
        CHECK(img.bc == BoundaryCondition::DWBC2);
        CHECK(is_valid(img));
        const Configuration back = rotate180_complement(img);
        CHECK(back == c);
        CHECK(config_weight(img, pw) == doctest::Approx(config_weight(c, pw)));
    }
}

TEST_CASE("transpose realizes the mu -> -mu symmetry") {
    const AngleParams p{0.3, 1.2, 0.4};
    const PatternWeights pw_pos = vertex_weight_map(compute_weights(p));
    const PatternWeights pw_neg = vertex_weight_map(compute_weights(p.with_mu_negated()));
    for (int n : {2, 3, 4}) {
        for (const Configuration& c : enumerate_configs(n, BoundaryCondition::DWBC2)) {
            const Configuration t = transpose_xy(c);
            CHECK(is_valid(t));
            CHECK(config_weight(t, pw_pos) ==
                  doctest::Approx(config_weight(c, pw_neg)).epsilon(1e-11));
        }
    }
}

TEST_CASE("shear image: per-node weights match the inverted dictionary") {
    const AngleParams p{0.3, 1.3, 0.35};
    const VertexWeights w = compute_weights(p);
    const VertexWeights wbar = inverted_weights(w);
    for (int n : {1, 2, 3}) {
        for (const Configuration& c : enumerate_configs(n, BoundaryCondition::DWBC2)) {
            const InvertedConfiguration ic = shear_image(c);
            for (int x = 1; x <= n; ++x)
                for (int y = 1; y <= n; ++y) {
                    const int korig = pattern_class(classify_vertex(c, x, y));
                    CHECK(wbar[ic.weight_class(x, y)] == doctest::Approx(w[korig]));
                }
            CHECK(inverted_weight(ic, w) ==
                  doctest::Approx(config_weight(c, vertex_weight_map(w))));
        }
    }
}

TEST_CASE("shear image: the DWBC2 total weight is preserved (bijection)") {
    const AngleParams p{0.28, 1.5, -0.3};
    const VertexWeights w = compute_weights(p);
    const PatternWeights pw = vertex_weight_map(w);
    for (int n : {2, 3}) {
        double z = 0, zbar = 0;
        for (const Configuration& c : enumerate_configs(n, BoundaryCondition::DWBC2)) {
            z += config_weight(c, pw);
            zbar += inverted_weight(shear_image(c), w);
        }
        CHECK(zbar == doctest::Approx(z).epsilon(1e-12));
    }
}

TEST_CASE("shear image boundary structure (rhombus prescription)") {
    const int n = 3;
    const Configuration c = extremal_diagonal(n, BoundaryCondition::DWBC2);
    const InvertedConfiguration ic = shear_image(c);
    // upper boundary of the rhombus: n upward exits (complemented top verticals)
    for (int i = 1; i <= n; ++i) CHECK((pat::out_bits(ic.pattern(i, n)) & 4) != 0);
    // lower boundary: the n-1 old bottom diagonals become horizontal finals;
    // the excluded DWBC2 corner carries none
    for (int i = 1; i <= n - 1; ++i) CHECK((pat::out_bits(ic.pattern(i, 1)) & 1) != 0);
    CHECK(c.D(n, 0) == 0);
}

TEST_CASE("trace of the uppermost path on extremal configurations") {
    SUBCASE("DWBC2, n=3") {
        const Configuration c = extremal_diagonal(3, BoundaryCondition::DWBC2);
        CHECK(hit_position(c).L == 1);
        CHECK(hit_position(c).last == HitStep::H);
        CHECK(top_exit_position(c).L == 1);
        CHECK(top_exit_position(c).first == TopStep::V);
    }
    SUBCASE("DWBC1, n=3: the corner path hugs the anti-diagonal") {
        const Configuration c = extremal_diagonal(3, BoundaryCondition::DWBC1);
        CHECK(hit_position(c).L == 1);
        CHECK(hit_position(c).last == HitStep::D);
        const auto tr = trace_uppermost(c);
        REQUIRE(tr.size() == 3);
        CHECK(tr[0].x == 1);
        CHECK(tr[0].y == 3);
        CHECK(tr[2].x == 3);
        CHECK(tr[2].y == 1);
    }
}

TEST_CASE("serialization round trip") {
    for (BoundaryCondition bc :
         {BoundaryCondition::DWBC1, BoundaryCondition::DWBC2, BoundaryCondition::SIXV_DWBC}) {
        const Configuration c = extremal_diagonal(4, bc);
        const Configuration back = from_text(to_text(c));
        CHECK(back == c);
    }
    for (const Configuration& c : enumerate_configs(3, BoundaryCondition::DWBC1))
        CHECK(from_text(to_text(c)) == c);
}
