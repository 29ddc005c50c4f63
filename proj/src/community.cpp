#include "sybil/community.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sybil/rng.hpp"

namespace sybil {

namespace {

double assign_to_nearest(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids,
                         std::vector<int>& assignment) {
    const int n = static_cast<int>(points.rows());
    const int k = static_cast<int>(centroids.rows());
    double wcss = 0.0;
    for (int i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        int best_c = 0;
        for (int c = 0; c < k; ++c) {
            const double d2 = (points.row(i) - centroids.row(c)).squaredNorm();
            if (d2 < best) {
                best = d2;
                best_c = c;
            }
        }
        assignment[i] = best_c;
        wcss += best;
    }
    return wcss;
}

}  // namespace

std::vector<int> kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed,
                        int restarts, int max_iter) {
    const int n = static_cast<int>(points.rows());
    const int dim = static_cast<int>(points.cols());
    if (k < 1) throw parameter_error("kmeans needs k >= 1");
    if (n < k) throw parameter_error("kmeans needs at least k points");
    if (restarts < 1) throw parameter_error("kmeans needs restarts >= 1");

    Rng rng(seed);
    std::vector<int> best_assignment(n, 0);
    double best_wcss = std::numeric_limits<double>::infinity();

    for (int run = 0; run < restarts; ++run) {
        // Greedy farthest-point seeding from a random start.
        Eigen::MatrixXd centroids(k, dim);
        centroids.row(0) = points.row(rng.uniform_int(n));
        Eigen::VectorXd dist2 =
            (points.rowwise() - centroids.row(0)).rowwise().squaredNorm();
        for (int c = 1; c < k; ++c) {
            int far = 0;
            dist2.maxCoeff(&far);
            centroids.row(c) = points.row(far);
            dist2 = dist2.cwiseMin(
                (points.rowwise() - centroids.row(c)).rowwise().squaredNorm());
        }

        std::vector<int> assignment(n, 0);
        double wcss = assign_to_nearest(points, centroids, assignment);
        for (int iter = 0; iter < max_iter; ++iter) {
            Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, dim);
            std::vector<int> counts(k, 0);
            for (int i = 0; i < n; ++i) {
                sums.row(assignment[i]) += points.row(i);
                ++counts[assignment[i]];
            }
            bool reseeded = false;
            for (int c = 0; c < k; ++c) {
                if (counts[c] == 0) {
                    // empty cluster: reseed at a random point
                    centroids.row(c) = points.row(rng.uniform_int(n));
                    reseeded = true;
                } else {
                    centroids.row(c) = sums.row(c) / counts[c];
                }
            }
            const double next_wcss = assign_to_nearest(points, centroids, assignment);
            if (!reseeded && std::abs(wcss - next_wcss) <= 1e-12 * std::max(1.0, wcss)) {
                wcss = next_wcss;
                break;
            }
            wcss = next_wcss;
        }
        if (wcss < best_wcss) {
            best_wcss = wcss;
            best_assignment = assignment;
        }
    }
    return best_assignment;
}

Clustering spectral_clustering(const ShiftMatrix& shift, int k, std::uint64_t seed,
                               int restarts) {
    const int n = shift.size();
    if (k < 2) throw parameter_error("spectral clustering needs k >= 2");
    if (k > n) throw parameter_error("spectral clustering needs k <= n");

    const Spectrum spec = eig(shift);
    Eigen::MatrixXd rows = spec.basis.leftCols(k);
    for (int i = 0; i < n; ++i) {
        const double norm = rows.row(i).norm();
        if (norm > 0.0) rows.row(i) /= norm;
        // zero rows stay zero and fall to the nearest centroid
    }
    Clustering out;
    out.k = k;
    out.assignment = kmeans(rows, k, seed, restarts);
    return out;
}

double nmi(const Clustering& a, const Clustering& b) {
    if (a.assignment.size() != b.assignment.size()) {
        throw malformed_input_error("nmi: clusterings must cover the same nodes");
    }
    const int n = static_cast<int>(a.assignment.size());
    if (n == 0) throw undefined_metric_error("nmi of empty clusterings");

    int ka = a.k > 0 ? a.k : 1;
    int kb = b.k > 0 ? b.k : 1;
    for (int v : a.assignment) {
        if (v < 0) throw malformed_input_error("nmi: negative community id");
        ka = std::max(ka, v + 1);
    }
    for (int v : b.assignment) {
        if (v < 0) throw malformed_input_error("nmi: negative community id");
        kb = std::max(kb, v + 1);
    }
    Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(ka, kb);
    for (int i = 0; i < n; ++i) joint(a.assignment[i], b.assignment[i]) += 1.0;
    joint /= n;

    const Eigen::VectorXd pa = joint.rowwise().sum();
    const Eigen::VectorXd pb = joint.colwise().sum();

    double mi = 0.0, ha = 0.0, hb = 0.0;
    for (int i = 0; i < ka; ++i) {
        if (pa[i] > 0.0) ha -= pa[i] * std::log(pa[i]);
    }
    for (int j = 0; j < kb; ++j) {
        if (pb[j] > 0.0) hb -= pb[j] * std::log(pb[j]);
    }
    for (int i = 0; i < ka; ++i) {
        for (int j = 0; j < kb; ++j) {
            if (joint(i, j) > 0.0) {
                mi += joint(i, j) * std::log(joint(i, j) / (pa[i] * pb[j]));
            }
        }
    }
    const double denom = 0.5 * (ha + hb);
    if (denom == 0.0) {
        // both clusterings are trivial; identical iff the (single) labels match
        return 1.0;
    }
    return std::clamp(mi / denom, 0.0, 1.0);
}

}  // namespace sybil
