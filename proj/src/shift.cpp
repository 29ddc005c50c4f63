#include "sybil/shift.hpp"

#include <cmath>
#include <vector>

namespace sybil {

std::string shift_kind_id(ShiftKind kind) {
    switch (kind) {
        case ShiftKind::RandomWalkLaplacian: return "rw";
        case ShiftKind::AugmentedNormalizedLaplacian: return "aug";
        case ShiftKind::MaxDegreeLaplacian: return "maxdeg";
        case ShiftKind::BetheHessian: return "bethe";
        case ShiftKind::RegularizedLaplacian: return "reg";
    }
    throw parameter_error("unknown shift kind");
}

ShiftKind shift_kind_from_id(const std::string& id) {
    if (id == "rw") return ShiftKind::RandomWalkLaplacian;
    if (id == "aug") return ShiftKind::AugmentedNormalizedLaplacian;
    if (id == "maxdeg") return ShiftKind::MaxDegreeLaplacian;
    if (id == "bethe") return ShiftKind::BetheHessian;
    if (id == "reg") return ShiftKind::RegularizedLaplacian;
    throw parameter_error("unknown shift kind id: " + id);
}

double bethe_hessian_r(const Graph& g) {
    if (g.edge_count() == 0) {
        throw degenerate_degree_error("Bethe-Hessian r is undefined on an edgeless graph");
    }
    double sum_d = 0.0, sum_d2 = 0.0;
    for (int i = 0; i < g.node_count(); ++i) {
        const double d = g.degree(i);
        sum_d += d;
        sum_d2 += d * d;
    }
    return std::sqrt(sum_d2 / sum_d - 1.0);
}

namespace {

using Triplet = Eigen::Triplet<double>;

Eigen::SparseMatrix<double> from_triplets(int n, std::vector<Triplet>& trips) {
    Eigen::SparseMatrix<double> m(n, n);
    m.setFromTriplets(trips.begin(), trips.end());
    m.makeCompressed();
    return m;
}

}  // namespace

ShiftMatrix build_shift(const Graph& g, ShiftKind kind, const LabelSet* labels,
                        std::optional<double> parameter) {
    const int n = g.node_count();
    const DegreeVector deg = degrees(g);

    ShiftMatrix out;
    out.kind = kind;
    std::vector<Triplet> trips;
    trips.reserve(2 * g.edge_count() + n);

    switch (kind) {
        case ShiftKind::RandomWalkLaplacian: {
            // I - A D^{-1}; column j scaled by 1/d_j.
            if (deg.d_min == 0) {
                throw degenerate_degree_error(
                    "random-walk Laplacian requires a graph without isolated nodes");
            }
            for (int i = 0; i < n; ++i) trips.emplace_back(i, i, 1.0);
            for (auto [u, v] : g.edges()) {
                trips.emplace_back(u, v, -1.0 / deg.d[v]);
                trips.emplace_back(v, u, -1.0 / deg.d[u]);
            }
            out.matrix = from_triplets(n, trips);
            out.symmetric = false;
            out.spectral_support = {{0.0, 2.0}};
            Eigen::VectorXd sigma(n);
            for (int i = 0; i < n; ++i) sigma[i] = std::sqrt(static_cast<double>(deg.d[i]));
            out.symmetrizer = std::move(sigma);
            break;
        }
        case ShiftKind::AugmentedNormalizedLaplacian: {
            // I - Dhat^{-1} A over the user-node block, Dhat = D + I_labeled.
            if (labels == nullptr) {
                throw parameter_error("augmented normalized Laplacian requires a label set");
            }
            LabelSet checked = *labels;
            checked.validate(n);
            std::vector<double> dhat(deg.d.begin(), deg.d.end());
            for (int i : checked.sybil) dhat[i] += 1.0;
            for (int i : checked.benign) dhat[i] += 1.0;
            for (int i = 0; i < n; ++i) {
                if (dhat[i] == 0.0) {
                    throw degenerate_degree_error(
                        "node " + std::to_string(i) + " is isolated and unlabeled");
                }
            }
            for (int i = 0; i < n; ++i) trips.emplace_back(i, i, 1.0);
            for (auto [u, v] : g.edges()) {
                trips.emplace_back(u, v, -1.0 / dhat[u]);
                trips.emplace_back(v, u, -1.0 / dhat[v]);
            }
            out.matrix = from_triplets(n, trips);
            out.symmetric = false;
            out.spectral_support = {{0.0, 2.0}};
            Eigen::VectorXd sigma(n);
            for (int i = 0; i < n; ++i) sigma[i] = 1.0 / std::sqrt(dhat[i]);
            out.symmetrizer = std::move(sigma);
            break;
        }
        case ShiftKind::MaxDegreeLaplacian: {
            if (deg.d_max == 0) {
                throw degenerate_degree_error("max-degree Laplacian of an edgeless graph");
            }
            for (int i = 0; i < n; ++i) trips.emplace_back(i, i, 1.0);
            const double w = 1.0 / deg.d_max;
            for (auto [u, v] : g.edges()) {
                trips.emplace_back(u, v, -w);
                trips.emplace_back(v, u, -w);
            }
            out.matrix = from_triplets(n, trips);
            out.symmetric = true;
            out.spectral_support = {{0.0, 2.0}};
            break;
        }
        case ShiftKind::BetheHessian: {
            const double r = parameter ? *parameter : bethe_hessian_r(g);
            for (int i = 0; i < n; ++i) {
                trips.emplace_back(i, i, r * r - 1.0 + deg.d[i]);
            }
            for (auto [u, v] : g.edges()) {
                trips.emplace_back(u, v, -r);
                trips.emplace_back(v, u, -r);
            }
            out.matrix = from_triplets(n, trips);
            out.symmetric = true;
            out.parameter = r;
            // Gershgorin bound.
            if (n > 0) {
                double lo = r * r - 1.0 + deg.d_min - std::abs(r) * deg.d_max;
                double hi = r * r - 1.0 + deg.d_max + std::abs(r) * deg.d_max;
                out.spectral_support = {{lo, hi}};
            }
            break;
        }
        case ShiftKind::RegularizedLaplacian: {
            const double tau = parameter ? *parameter : deg.d_ave;
            if (deg.d_min + tau <= 0.0) {
                throw degenerate_degree_error(
                    "regularized Laplacian needs d_min + tau > 0");
            }
            std::vector<double> scale(n);
            for (int i = 0; i < n; ++i) scale[i] = 1.0 / std::sqrt(deg.d[i] + tau);
            for (int i = 0; i < n; ++i) trips.emplace_back(i, i, 1.0);
            for (auto [u, v] : g.edges()) {
                const double w = scale[u] * scale[v];
                trips.emplace_back(u, v, -w);
                trips.emplace_back(v, u, -w);
            }
            out.matrix = from_triplets(n, trips);
            out.symmetric = true;
            out.parameter = tau;
            if (tau >= 0.0) out.spectral_support = {{0.0, 2.0}};
            break;
        }
    }
    return out;
}

}  // namespace sybil
