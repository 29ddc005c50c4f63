#include <doctest.h>

#include <cmath>

#include "sybil/generators.hpp"
#include "test_support.hpp"

using namespace sybil;

TEST_CASE("sample_sbm with zero connectivity yields the empty graph") {
    BlockModelParams p;
    p.n = 50;
    p.k = 2;
    p.c_in = 0.0;
    p.c_out = 0.0;
    const PlantedGraph pg = sample_sbm(p, 1);
    CHECK(pg.graph.edge_count() == 0);
    CHECK(pg.phi == doctest::Approx(1.0));
}

TEST_CASE("sample_sbm is bit-identical under a fixed seed") {
    const auto p = BlockModelParams::two_block_from_cout(300, 5.0, 1.0);
    const PlantedGraph a = sample_sbm(p, 99);
    const PlantedGraph b = sample_sbm(p, 99);
    CHECK(a.graph.edges() == b.graph.edges());
    CHECK(a.communities == b.communities);
    const PlantedGraph c = sample_sbm(p, 100);
    CHECK(a.graph.edges() != c.graph.edges());
}

TEST_CASE("sample_sbm rejects probabilities above one") {
    BlockModelParams p;
    p.n = 10;
    p.c_in = 11.0;
    p.c_out = 1.0;
    CHECK_THROWS_AS(sample_sbm(p, 1), parameter_error);
}

TEST_CASE("sample_sbm mean degree approaches (c_in + c_out) / 2") {
    // Fig. 2 dense setting: d_ave = 20, c_out = 1 -> c_in = 39.
    const auto p = BlockModelParams::two_block_from_cout(3000, 20.0, 1.0);
    double total = 0.0;
    const int seeds = 20;
    for (int s = 0; s < seeds; ++s) {
        const PlantedGraph pg = sample_sbm(p, 1000 + s);
        total += degrees(pg.graph).d_ave;
    }
    CHECK(std::abs(total / seeds - 20.0) < 0.5);
}

TEST_CASE("sample_sbm block densities match the model within 3 sigma") {
    BlockModelParams p;
    p.n = 1000;
    p.k = 2;
    p.c_in = 5.0;
    p.c_out = 5.0;
    const PlantedGraph pg = sample_sbm(p, 7);

    std::size_t within = 0, between = 0;
    for (auto [u, v] : pg.graph.edges()) {
        (pg.communities[u] == pg.communities[v] ? within : between) += 1;
    }
    // within pairs: 2 * C(500,2), between pairs: 500 * 500, both at p = 5/1000
    const double prob = 5.0 / 1000.0;
    const double within_pairs = 2.0 * (500.0 * 499.0 / 2.0);
    const double between_pairs = 500.0 * 500.0;
    const double sd_w = std::sqrt(within_pairs * prob * (1 - prob));
    const double sd_b = std::sqrt(between_pairs * prob * (1 - prob));
    CHECK(std::abs(within - within_pairs * prob) < 3.0 * sd_w);
    CHECK(std::abs(between - between_pairs * prob) < 3.0 * sd_b);
}

TEST_CASE("sample_dcsbm with constant theta behaves like the SBM") {
    const auto p = BlockModelParams::two_block_from_cout(1000, 5.0, 1.0);
    double mean_sbm = 0.0, mean_dcsbm = 0.0;
    for (int s = 0; s < 20; ++s) {
        mean_sbm += degrees(sample_sbm(p, 50 + s).graph).d_ave;
        mean_dcsbm += degrees(sample_dcsbm(p, 450 + s).graph).d_ave;
    }
    CHECK(std::abs(mean_sbm / 20 - mean_dcsbm / 20) < 0.3);

    const PlantedGraph pg = sample_dcsbm(p, 3);
    CHECK(pg.phi == doctest::Approx(1.0));  // theta == 1 everywhere
}

TEST_CASE("sample_dcsbm degree follows theta") {
    auto p = BlockModelParams::two_block_from_cout(1000, 5.0, 1.0);
    p.theta = ThetaSpec::cube_uniform(3.0, 7.0);
    double corr_total = 0.0;
    for (int s = 0; s < 20; ++s) {
        const PlantedGraph pg = sample_dcsbm(p, 700 + s);
        // sample mean of theta is exactly 1 by construction
        double mean_theta = 0.0;
        for (double t : pg.theta) mean_theta += t;
        CHECK(std::abs(mean_theta / p.n - 1.0) < 1e-12);
        CHECK(pg.phi > 1.0);  // heterogeneous propensities

        const DegreeVector deg = degrees(pg.graph);
        double md = deg.d_ave;
        double num = 0.0, var_d = 0.0, var_t = 0.0;
        for (int i = 0; i < p.n; ++i) {
            num += (deg.d[i] - md) * (pg.theta[i] - 1.0);
            var_d += (deg.d[i] - md) * (deg.d[i] - md);
            var_t += (pg.theta[i] - 1.0) * (pg.theta[i] - 1.0);
        }
        corr_total += num / std::sqrt(var_d * var_t);
    }
    CHECK(corr_total / 20 > 0.8);
}

TEST_CASE("detectability_margin signs and scaling") {
    // equal connectivities are never detectable
    CHECK(detectability_margin(5.0, 5.0) == doctest::Approx(-std::sqrt(5.0)));
    // d_ave = 5, phi = 1: threshold at (c_in - c_out)/2 = sqrt(5)
    const double at_threshold = std::sqrt(5.0);
    CHECK(detectability_margin(5.0 + at_threshold, 5.0 - at_threshold) ==
          doctest::Approx(0.0).epsilon(1e-9));
    CHECK_THROWS_AS(detectability_margin(3.0, 5.0), parameter_error);
}

TEST_CASE("detectability threshold scales as 1/sqrt(phi)") {
    const double c_in = 7.0, c_out = 3.0;
    const double gap = (c_in - c_out) / 2.0;
    const double t1 = gap - detectability_margin(c_in, c_out, 1.0);
    const double t4 = gap - detectability_margin(c_in, c_out, 4.0);
    CHECK(t1 == doctest::Approx(2.0 * t4));
}

TEST_CASE("sample_labels draws the documented counts from the right regions") {
    BlockModelParams p;
    p.n = 1000;
    p.k = 2;
    p.c_in = 6.0;
    p.c_out = 4.0;
    const PlantedGraph pg = sample_sbm(p, 11);

    const LabelSet labels = sample_labels(pg, {0}, 0.1, 3, 21);
    CHECK(labels.benign.size() == 50);  // floor(0.1 * 500)
    CHECK(labels.sybil.size() == 50);
    for (int i : labels.benign) CHECK(pg.communities[i] == 0);
    for (int i : labels.sybil) CHECK(pg.communities[i] == 1);

    // min-count floor: region of 17 gets max(3, floor(1.7)) = 3
    BlockModelParams small;
    small.n = 34;
    small.k = 2;
    small.c_in = 2.0;
    small.c_out = 1.0;
    const PlantedGraph sg = sample_sbm(small, 12);
    const LabelSet few = sample_labels(sg, {0}, 0.1, 3, 22);
    CHECK(few.benign.size() == 3);
    CHECK(few.sybil.size() == 3);

    // full selection
    const LabelSet all = sample_labels(sg, {0}, 1.0, 0, 23);
    CHECK(all.benign.size() + all.sybil.size() == 34);

    // label budget beyond the region
    CHECK_THROWS_AS(sample_labels(sg, {0}, 0.1, 40, 24), label_budget_error);
}

TEST_CASE("sample_labels is deterministic and disjoint") {
    const auto p = BlockModelParams::two_block_from_cout(200, 5.0, 1.0);
    const PlantedGraph pg = sample_sbm(p, 31);
    LabelSet a = sample_labels(pg, {0}, 0.1, 3, 77);
    LabelSet b = sample_labels(pg, {0}, 0.1, 3, 77);
    CHECK(a.sybil == b.sybil);
    CHECK(a.benign == b.benign);
    a.validate(200);  // throws if overlapping
}
