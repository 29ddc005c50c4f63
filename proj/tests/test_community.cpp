#include <doctest.h>

#include <cmath>

#include "sybil/community.hpp"
#include "sybil/generators.hpp"
#include "test_support.hpp"

using namespace sybil;

TEST_CASE("kmeans: k = 1 puts everything in one cluster") {
    const Eigen::MatrixXd points = Eigen::MatrixXd::Random(20, 3);
    const auto assignment = kmeans(points, 1, 5);
    for (int a : assignment) CHECK(a == 0);
}

TEST_CASE("kmeans separates two distant clouds exactly") {
    Eigen::MatrixXd points(20, 2);
    Rng rng(6);
    for (int i = 0; i < 10; ++i) {
        points(i, 0) = rng.uniform(-0.1, 0.1);
        points(i, 1) = rng.uniform(-0.1, 0.1);
        points(10 + i, 0) = 100.0 + rng.uniform(-0.1, 0.1);
        points(10 + i, 1) = rng.uniform(-0.1, 0.1);
    }
    const auto assignment = kmeans(points, 2, 7);
    for (int i = 1; i < 10; ++i) CHECK(assignment[i] == assignment[0]);
    for (int i = 11; i < 20; ++i) CHECK(assignment[i] == assignment[10]);
    CHECK(assignment[0] != assignment[10]);
}

TEST_CASE("kmeans is deterministic under a fixed seed") {
    const Eigen::MatrixXd points = Eigen::MatrixXd::Random(50, 4);
    CHECK(kmeans(points, 3, 42) == kmeans(points, 3, 42));
}

TEST_CASE("spectral clustering recovers two disjoint cliques") {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 5; ++i) {
        for (int j = i + 1; j < 5; ++j) {
            edges.emplace_back(i, j);
            edges.emplace_back(5 + i, 5 + j);
        }
    }
    const Graph g = Graph::from_edge_list(edges, 10);
    const Clustering found =
        spectral_clustering(build_shift(g, ShiftKind::MaxDegreeLaplacian), 2, 3);

    Clustering truth;
    truth.k = 2;
    truth.assignment = {0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
    CHECK(nmi(found, truth) == doctest::Approx(1.0));
}

TEST_CASE("spectral clustering is permutation invariant up to relabeling") {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 6; ++i) {
        for (int j = i + 1; j < 6; ++j) {
            edges.emplace_back(i, j);
            edges.emplace_back(6 + i, 6 + j);
        }
    }
    edges.emplace_back(0, 6);  // weak bridge keeps it connected
    const Graph g = Graph::from_edge_list(edges, 12);

    const int n = 12;
    std::vector<int> pi(n);
    for (int i = 0; i < n; ++i) pi[i] = (5 * i + 2) % n;
    std::vector<std::pair<int, int>> permuted_edges;
    for (auto [u, v] : g.edges()) permuted_edges.emplace_back(pi[u], pi[v]);
    const Graph permuted = Graph::from_edge_list(permuted_edges, n);

    const Clustering a =
        spectral_clustering(build_shift(g, ShiftKind::RegularizedLaplacian), 2, 9);
    const Clustering b =
        spectral_clustering(build_shift(permuted, ShiftKind::RegularizedLaplacian), 2, 9);
    Clustering a_moved;
    a_moved.k = 2;
    a_moved.assignment.resize(n);
    for (int i = 0; i < n; ++i) a_moved.assignment[pi[i]] = a.assignment[i];
    // the k-means seed stream sees a permuted point order, so agreement is
    // up to relabeling on this clearly separated instance
    CHECK(nmi(a_moved, b) == doctest::Approx(1.0));
}

TEST_CASE("nmi basics: identity, label permutation, symmetry") {
    Clustering a;
    a.k = 3;
    a.assignment = {0, 0, 1, 1, 2, 2, 0, 1};
    CHECK(nmi(a, a) == doctest::Approx(1.0));

    Clustering relabeled;
    relabeled.k = 3;
    for (int v : a.assignment) relabeled.assignment.push_back((v + 1) % 3);
    CHECK(nmi(a, relabeled) == doctest::Approx(1.0));

    Clustering b;
    b.k = 2;
    b.assignment = {0, 1, 0, 1, 0, 1, 0, 1};
    CHECK(nmi(a, b) == doctest::Approx(nmi(b, a)));
    CHECK(nmi(a, b) >= 0.0);
    CHECK(nmi(a, b) <= 1.0);
}

TEST_CASE("nmi of independent balanced clusterings is near zero") {
    Rng rng(11);
    const int n = 1000;
    double total = 0.0;
    const int pairs = 100;
    for (int t = 0; t < pairs; ++t) {
        Clustering a, b;
        a.k = b.k = 2;
        a.assignment.resize(n);
        b.assignment.resize(n);
        for (int i = 0; i < n; ++i) {
            a.assignment[i] = static_cast<int>(rng.uniform_int(2));
            b.assignment[i] = static_cast<int>(rng.uniform_int(2));
        }
        total += nmi(a, b);
    }
    CHECK(total / pairs < 0.01);
}

TEST_CASE("detectable SBM clusters well, undetectable does not") {
    // light version of the acceptance sweep; 100-rep runs live there
    const double threshold = std::sqrt(5.0);
    int reps = 12;

    auto mean_nmi = [&](double margin) {
        const auto params = BlockModelParams::two_block_from_margin(400, 5.0, margin);
        double total = 0.0;
        for (int rep = 0; rep < reps; ++rep) {
            const PlantedGraph pg = sample_sbm(params, 4000 + rep);
            auto [lcc, map] = largest_connected_component(pg.graph);
            Clustering truth;
            truth.k = 2;
            truth.assignment.resize(lcc.node_count());
            for (int i = 0; i < pg.graph.node_count(); ++i) {
                if (map[i] != -1) truth.assignment[map[i]] = pg.communities[i];
            }
            const Clustering found = spectral_clustering(
                build_shift(lcc, ShiftKind::BetheHessian), 2, 5000 + rep);
            total += nmi(truth, found);
        }
        return total / reps;
    };

    CHECK(mean_nmi(1.8 * threshold) > 0.3);
    CHECK(mean_nmi(0.3 * threshold) < 0.1);
}
