#include <doctest.h>

#include <cmath>

#include "sybil/spectral.hpp"
#include "test_support.hpp"

using namespace sybil;

namespace {

/// Modified Bessel function of the first kind, integer order, by its power
/// series. Independent oracle for the heat-kernel Chebyshev coefficients:
/// c_k = 2 e^{-s} (-1)^k I_k(s).
long double bessel_i(int order, long double z) {
    long double term = 1.0L;
    for (int m = 1; m <= order; ++m) term *= z / 2.0L / m;  // (z/2)^k / k!
    long double sum = term;
    const long double quarter_z2 = z * z / 4.0L;
    for (int m = 1; m < 200; ++m) {
        term *= quarter_z2 / (static_cast<long double>(m) * (m + order));
        sum += term;
        if (term < 1e-30L * sum) break;
    }
    return sum;
}

}  // namespace

TEST_CASE("eig: triangle random-walk Laplacian has eigenvalues {0, 3/2, 3/2}") {
    const Graph tri = Graph::from_edge_list({{0, 1}, {1, 2}, {0, 2}}, 3);
    const Spectrum spec = eig(build_shift(tri, ShiftKind::RandomWalkLaplacian));
    CHECK(spec.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(spec.eigenvalues[1] == doctest::Approx(1.5));
    CHECK(spec.eigenvalues[2] == doctest::Approx(1.5));
}

TEST_CASE("eig: lambda_1 = 0 of the random-walk Laplacian has eigenvector ~ d") {
    const Graph g = test::random_connected_graph(50, 0.1, 5);
    const Spectrum spec = eig(build_shift(g, ShiftKind::RandomWalkLaplacian));
    CHECK(std::abs(spec.eigenvalues[0]) < 1e-10);
    Eigen::VectorXd v = spec.basis.col(0);
    Eigen::VectorXd d = test::dense_degrees(g);
    v /= v.norm();
    d /= d.norm();
    CHECK((v - d).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("eig reconstructs S V = V Lambda and V^{-1} V = I for all kinds") {
    const Graph g = test::random_connected_graph(40, 0.12, 17);
    const LabelSet labels = test::random_labels(40, 4, 4, 18);
    for (ShiftKind kind :
         {ShiftKind::RandomWalkLaplacian, ShiftKind::AugmentedNormalizedLaplacian,
          ShiftKind::MaxDegreeLaplacian, ShiftKind::BetheHessian,
          ShiftKind::RegularizedLaplacian}) {
        const ShiftMatrix s = build_shift(g, kind, &labels);
        const Spectrum spec = eig(s);
        const Eigen::MatrixXd recon =
            Eigen::MatrixXd(s.matrix) * spec.basis -
            spec.basis * spec.eigenvalues.asDiagonal();
        CHECK(recon.cwiseAbs().maxCoeff() < 1e-8);
        const Eigen::MatrixXd identity = spec.inverse_basis * spec.basis;
        CHECK((identity - Eigen::MatrixXd::Identity(40, 40)).cwiseAbs().maxCoeff() < 1e-8);
        // ascending order
        for (int i = 1; i < spec.size(); ++i) {
            CHECK(spec.eigenvalues[i] >= spec.eigenvalues[i - 1]);
        }
    }
}

TEST_CASE("eig guards the dense size limit") {
    ShiftMatrix fake;
    fake.kind = ShiftKind::MaxDegreeLaplacian;
    fake.matrix.resize(kDenseEigenLimit + 1, kDenseEigenLimit + 1);
    CHECK_THROWS_AS(eig(fake), parameter_error);
}

TEST_CASE("gft/igft roundtrip and eigenbasis impulses") {
    const Graph g = test::random_connected_graph(100, 0.06, 23);
    const LabelSet labels = test::random_labels(100, 8, 8, 24);
    for (ShiftKind kind :
         {ShiftKind::RandomWalkLaplacian, ShiftKind::AugmentedNormalizedLaplacian,
          ShiftKind::MaxDegreeLaplacian, ShiftKind::BetheHessian,
          ShiftKind::RegularizedLaplacian}) {
        const Spectrum spec = eig(build_shift(g, kind, &labels));

        const Eigen::VectorXd x = test::random_vector(100, 91);
        const Eigen::VectorXd roundtrip = igft(spec, gft(spec, x));
        CHECK((roundtrip - x).norm() < 1e-10 * x.norm());

        // x = v_1 -> xhat = e_1
        const Eigen::VectorXd impulse = gft(spec, spec.basis.col(0));
        CHECK(std::abs(impulse[0] - 1.0) < 1e-9);
        CHECK(impulse.tail(99).cwiseAbs().maxCoeff() < 1e-9);

        // x = 0 -> xhat = 0
        CHECK(gft(spec, Eigen::VectorXd::Zero(100)).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("gft rejects dimension mismatches") {
    const Graph g = Graph::from_edge_list({{0, 1}, {1, 2}}, 3);
    const Spectrum spec = eig(build_shift(g, ShiftKind::MaxDegreeLaplacian));
    CHECK_THROWS_AS(gft(spec, Eigen::VectorXd::Zero(5)), malformed_input_error);
}

TEST_CASE("apply_filter: constant and zero-scale heat kernels are the identity") {
    const Graph g = test::random_connected_graph(30, 0.15, 41);
    const Spectrum spec = eig(build_shift(g, ShiftKind::RegularizedLaplacian));
    const Eigen::VectorXd q = test::random_vector(30, 42);
    CHECK((apply_filter(spec, FilterKernel::constant(), q) - q).cwiseAbs().maxCoeff() <
          1e-10);
    CHECK((apply_filter(spec, FilterKernel::heat(0.0), q) - q).cwiseAbs().maxCoeff() <
          1e-10);
}

TEST_CASE("apply_filter: CIA kernel equals the dense resolvent") {
    const Graph g = test::random_connected_graph(50, 0.1, 43);
    const double alpha = 0.85;
    const Spectrum spec = eig(build_shift(g, ShiftKind::RandomWalkLaplacian));
    const Eigen::VectorXd q = test::random_vector(50, 44);

    const Eigen::MatrixXd a = test::dense_adjacency(g);
    const Eigen::VectorXd d = test::dense_degrees(g);
    const Eigen::MatrixXd walk = a * d.cwiseInverse().asDiagonal();
    const Eigen::VectorXd direct =
        (1.0 - alpha) *
        (Eigen::MatrixXd::Identity(50, 50) - alpha * walk).partialPivLu().solve(q);

    const Eigen::VectorXd filtered = apply_filter(spec, FilterKernel::cia(alpha), q);
    CHECK((filtered - direct).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("apply_filter: inverse kernel equals the dense solve when nonsingular") {
    const Graph g = test::random_connected_graph(40, 0.12, 45);
    const ShiftMatrix s = build_shift(g, ShiftKind::BetheHessian);
    const Spectrum spec = eig(s);
    REQUIRE(std::abs(spec.eigenvalues[0]) > 1e-8);  // generically nonsingular
    const Eigen::VectorXd q = test::random_vector(40, 46);
    const Eigen::VectorXd solved = Eigen::MatrixXd(s.matrix).partialPivLu().solve(q);
    const Eigen::VectorXd filtered = apply_filter(spec, FilterKernel::inverse(), q);
    CHECK((filtered - solved).cwiseAbs().maxCoeff() < 1e-8 * solved.cwiseAbs().maxCoeff());
}

TEST_CASE("apply_filter: pole with weight raises, pseudo-inverse mode drops") {
    const Graph g = test::random_connected_graph(20, 0.2, 47);
    // the random-walk Laplacian always has eigenvalue 0
    const Spectrum spec = eig(build_shift(g, ShiftKind::RandomWalkLaplacian));
    const Eigen::VectorXd q = Eigen::VectorXd::Ones(20);
    CHECK_THROWS_AS(apply_filter(spec, FilterKernel::inverse(), q), singular_filter_error);
    CHECK_NOTHROW(apply_filter(spec, FilterKernel::inverse(true), q));

    // a signal with no weight on the zero mode passes
    Eigen::VectorXd clean = q;
    Eigen::VectorXd qhat = gft(spec, q);
    qhat[0] = 0.0;
    clean = igft(spec, qhat);
    CHECK_NOTHROW(apply_filter(spec, FilterKernel::inverse(), clean));
}

TEST_CASE("chebyshev_coeffs: constant and linear kernels are exact") {
    const auto flat = chebyshev_coeffs(FilterKernel::constant(), 5);
    CHECK(flat[0] == doctest::Approx(2.0).epsilon(1e-12));
    for (int k = 1; k <= 5; ++k) CHECK(std::abs(flat[k]) < 1e-12);

    const auto linear =
        chebyshev_coeffs(FilterKernel::custom([](double x) { return x; }), 5);
    CHECK(linear[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(linear[1] == doctest::Approx(1.0).epsilon(1e-12));
    for (int k = 2; k <= 5; ++k) CHECK(std::abs(linear[k]) < 1e-12);
}

TEST_CASE("chebyshev_coeffs: heat kernel matches the Bessel series") {
    const double s = 8.0;
    const auto coeffs = chebyshev_coeffs(FilterKernel::heat(s), 40);
    for (int k = 0; k <= 40; ++k) {
        const double expected = static_cast<double>(
            2.0L * std::exp(-static_cast<long double>(s)) * (k % 2 == 0 ? 1.0L : -1.0L) *
            bessel_i(k, s));
        CHECK(std::abs(coeffs[k] - expected) < 1e-10);
    }
}

TEST_CASE("chebyshev_apply: order zero with the constant kernel is the identity") {
    const Graph g = test::random_connected_graph(25, 0.2, 51);
    const ShiftMatrix s = build_shift(g, ShiftKind::RegularizedLaplacian);
    const Eigen::VectorXd q = test::random_vector(25, 52);
    const auto coeffs = chebyshev_coeffs(FilterKernel::constant(), 0);
    CHECK((chebyshev_apply(s, coeffs, q) - q).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("chebyshev_apply matches dense heat filtering and improves with order") {
    const Graph g = test::random_connected_graph(200, 0.03, 53);
    const ShiftMatrix s = build_shift(g, ShiftKind::RegularizedLaplacian);
    const Spectrum spec = eig(s);
    const Eigen::VectorXd q = test::random_vector(200, 54);
    const Eigen::VectorXd exact = apply_filter(spec, FilterKernel::heat(8.0), q);

    const auto c30 = chebyshev_coeffs(FilterKernel::heat(8.0), 30);
    const Eigen::VectorXd approx30 = chebyshev_apply(s, c30, q);
    CHECK((approx30 - exact).norm() < 1e-6 * exact.norm());

    const auto c5 = chebyshev_coeffs(FilterKernel::heat(8.0), 5);
    const Eigen::VectorXd approx5 = chebyshev_apply(s, c5, q);
    CHECK((approx5 - exact).norm() > (approx30 - exact).norm());
}

TEST_CASE("chebyshev error decays with order beyond K ~ s") {
    const Graph g = test::random_connected_graph(150, 0.05, 55);
    const ShiftMatrix s = build_shift(g, ShiftKind::RegularizedLaplacian);
    const Spectrum spec = eig(s);
    const Eigen::VectorXd q = test::random_vector(150, 56);
    const Eigen::VectorXd exact = apply_filter(spec, FilterKernel::heat(8.0), q);

    double prev = std::numeric_limits<double>::infinity();
    for (int order : {10, 15, 20, 25, 30}) {
        const auto coeffs = chebyshev_coeffs(FilterKernel::heat(8.0), order);
        const double err = (chebyshev_apply(s, coeffs, q) - exact).norm() / exact.norm();
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-6);
}

TEST_CASE("chebyshev_apply rejects shifts with support outside [0,2]") {
    const Graph g = test::random_connected_graph(20, 0.2, 57);
    const ShiftMatrix s = build_shift(g, ShiftKind::BetheHessian);  // support beyond 2
    const auto coeffs = chebyshev_coeffs(FilterKernel::heat(1.0), 10);
    CHECK_THROWS_AS(chebyshev_apply(s, coeffs, test::random_vector(20, 58)), domain_error);
}

TEST_CASE("regularized Laplacian eigenvalues stay within [0, 2]") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const Graph g = test::random_connected_graph(80, 0.06, 300 + seed);
        const Spectrum spec = eig(build_shift(g, ShiftKind::RegularizedLaplacian));
        CHECK(spec.eigenvalues[0] > -1e-10);
        CHECK(spec.eigenvalues[spec.size() - 1] < 2.0 + 1e-10);
    }
}
