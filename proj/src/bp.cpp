#include "sybil/bp.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace sybil {

namespace {

constexpr double kMuFloor = 1e-15;  // keeps atanh finite at saturation

void check_open_unit(double x, const char* what) {
    if (!(x > 0.0 && x < 1.0)) {
        throw parameter_error(std::string(what) + " must lie strictly in (0, 1)");
    }
}

/// Directed-edge index tables, aligned with the sorted neighbor lists:
/// in_ids[i][a] is the directed id of the message neighbors(i)[a] -> i,
/// out_ids[i][a] of i -> neighbors(i)[a], edge_of[i][a] the undirected edge.
struct EdgeIndex {
    std::vector<std::vector<int>> in_ids;
    std::vector<std::vector<int>> out_ids;
    std::vector<std::vector<int>> edge_of;

    explicit EdgeIndex(const Graph& g) {
        const int n = g.node_count();
        in_ids.resize(n);
        out_ids.resize(n);
        edge_of.resize(n);
        for (int e = 0; e < static_cast<int>(g.edge_count()); ++e) {
            const auto [u, v] = g.edges()[e];
            // u < v: directed id 2e is u->v, 2e+1 is v->u
            out_ids[u].push_back(2 * e);
            in_ids[v].push_back(2 * e);
            out_ids[v].push_back(2 * e + 1);
            in_ids[u].push_back(2 * e + 1);
            edge_of[u].push_back(e);
            edge_of[v].push_back(e);
        }
        for (int i = 0; i < n; ++i) {
            // realign with the sorted neighbors(i); neighbor ids are unique
            std::vector<int> nbr(edge_of[i].size());
            for (std::size_t a = 0; a < nbr.size(); ++a) {
                const auto [x, y] = g.edges()[edge_of[i][a]];
                nbr[a] = x == i ? y : x;
            }
            std::vector<int> order(nbr.size());
            for (std::size_t a = 0; a < order.size(); ++a) order[a] = static_cast<int>(a);
            std::sort(order.begin(), order.end(),
                      [&](int x, int y) { return nbr[x] < nbr[y]; });
            auto permute = [&](std::vector<int>& v) {
                std::vector<int> out(v.size());
                for (std::size_t a = 0; a < order.size(); ++a) out[a] = v[order[a]];
                v = std::move(out);
            };
            permute(in_ids[i]);
            permute(out_ids[i]);
            permute(edge_of[i]);
        }
    }
};

Eigen::VectorXd mu_step(const PairwiseMRF& mrf, const EdgeIndex& index,
                        const Eigen::VectorXd& mu_plus) {
    const Graph& g = mrf.graph();
    Eigen::VectorXd next(mu_plus.size());
    for (int i = 0; i < g.node_count(); ++i) {
        const int d = g.degree(i);
        for (int a = 0; a < d; ++a) {
            double prod_plus = mrf.node_prior(i);
            double prod_minus = 1.0 - mrf.node_prior(i);
            for (int b = 0; b < d; ++b) {
                if (b == a) continue;
                const double mu_in = mu_plus[index.in_ids[i][b]];
                prod_plus *= mu_in;
                prod_minus *= 1.0 - mu_in;
            }
            const double w = mrf.edge_weight(index.edge_of[i][a]);
            const double raw_plus = w * prod_plus + (1.0 - w) * prod_minus;
            const double raw_minus = (1.0 - w) * prod_plus + w * prod_minus;
            next[index.out_ids[i][a]] = raw_plus / (raw_plus + raw_minus);
        }
    }
    return next;
}

}  // namespace

PairwiseMRF PairwiseMRF::from_potentials(Graph g, Eigen::VectorXd node_priors,
                                         std::vector<double> edge_weights) {
    if (node_priors.size() != g.node_count()) {
        throw malformed_input_error("node_priors size must equal node count");
    }
    if (edge_weights.size() != g.edge_count()) {
        throw malformed_input_error("edge_weights size must equal edge count");
    }
    PairwiseMRF mrf;
    mrf.beta_ = 1.0;
    mrf.theta_.resize(node_priors.size());
    mrf.coupling_.resize(edge_weights.size());
    for (int i = 0; i < node_priors.size(); ++i) {
        check_open_unit(node_priors[i], "node prior");
        // q = sigma(2 beta theta)  <=>  beta theta = atanh(2q - 1)
        mrf.theta_[i] = std::atanh(2.0 * node_priors[i] - 1.0);
    }
    for (std::size_t e = 0; e < edge_weights.size(); ++e) {
        check_open_unit(edge_weights[e], "edge weight");
        mrf.coupling_[e] = std::atanh(2.0 * edge_weights[e] - 1.0);
    }
    mrf.graph_ = std::move(g);
    mrf.node_priors_ = std::move(node_priors);
    mrf.edge_weights_ = std::move(edge_weights);
    return mrf;
}

PairwiseMRF PairwiseMRF::from_fields(Graph g, double beta, Eigen::VectorXd theta,
                                     std::vector<double> coupling) {
    if (theta.size() != g.node_count()) {
        throw malformed_input_error("theta size must equal node count");
    }
    if (coupling.size() != g.edge_count()) {
        throw malformed_input_error("coupling size must equal edge count");
    }
    PairwiseMRF mrf;
    mrf.beta_ = beta;
    mrf.node_priors_.resize(theta.size());
    mrf.edge_weights_.resize(coupling.size());
    for (int i = 0; i < theta.size(); ++i) {
        mrf.node_priors_[i] = 0.5 * (1.0 + std::tanh(beta * theta[i]));
    }
    for (std::size_t e = 0; e < coupling.size(); ++e) {
        mrf.edge_weights_[e] = 0.5 * (1.0 + std::tanh(beta * coupling[e]));
    }
    mrf.graph_ = std::move(g);
    mrf.theta_ = std::move(theta);
    mrf.coupling_ = std::move(coupling);
    return mrf;
}

MessageSet MessageSet::uniform(int directed_edges) {
    MessageSet m;
    m.mu_plus = Eigen::VectorXd::Constant(directed_edges, 0.5);
    m.nu = Eigen::VectorXd::Zero(directed_edges);
    return m;
}

MessageSet MessageSet::from_mu(Eigen::VectorXd mu_plus) {
    MessageSet m;
    m.nu.resize(mu_plus.size());
    for (int i = 0; i < mu_plus.size(); ++i) {
        mu_plus[i] = std::clamp(mu_plus[i], kMuFloor, 1.0 - kMuFloor);
        m.nu[i] = std::atanh(2.0 * mu_plus[i] - 1.0);
    }
    m.mu_plus = std::move(mu_plus);
    return m;
}

MessageSet MessageSet::from_nu(Eigen::VectorXd nu) {
    MessageSet m;
    m.mu_plus.resize(nu.size());
    for (int i = 0; i < nu.size(); ++i) {
        m.mu_plus[i] = 0.5 * (1.0 + std::tanh(nu[i]));
    }
    m.nu = std::move(nu);
    return m;
}

MessageSet mu_update(const PairwiseMRF& mrf, const MessageSet& messages) {
    const EdgeIndex index(mrf.graph());
    return MessageSet::from_mu(mu_step(mrf, index, messages.mu_plus));
}

MessageSet nu_update(const PairwiseMRF& mrf, const MessageSet& messages) {
    const Graph& g = mrf.graph();
    const EdgeIndex index(g);
    Eigen::VectorXd next(messages.size());
    for (int i = 0; i < g.node_count(); ++i) {
        const int d = g.degree(i);
        double total = mrf.beta() * mrf.theta(i);
        for (int b = 0; b < d; ++b) total += messages.nu[index.in_ids[i][b]];
        for (int a = 0; a < d; ++a) {
            const double h = total - messages.nu[index.in_ids[i][a]];
            const double t = std::tanh(mrf.beta() * mrf.coupling(index.edge_of[i][a]));
            next[index.out_ids[i][a]] = std::atanh(t * std::tanh(h));
        }
    }
    return MessageSet::from_nu(std::move(next));
}

LbpResult lbp_run(const PairwiseMRF& mrf, int max_iter, double tol, double damping) {
    if (damping < 0.0 || damping >= 1.0) {
        throw parameter_error("damping must lie in [0, 1)");
    }
    const Graph& g = mrf.graph();
    const EdgeIndex index(g);

    LbpResult result;
    result.messages = MessageSet::uniform(mrf.directed_edge_count());

    for (int iter = 1; iter <= max_iter; ++iter) {
        Eigen::VectorXd raw = mu_step(mrf, index, result.messages.mu_plus);
        Eigen::VectorXd mixed = damping * result.messages.mu_plus + (1.0 - damping) * raw;
        const double diff = (mixed - result.messages.mu_plus).cwiseAbs().maxCoeff();
        result.messages = MessageSet::from_mu(std::move(mixed));
        result.iterations = iter;
        if (diff < tol) {
            result.converged = true;
            break;
        }
    }

    result.marginal_plus.resize(g.node_count());
    for (int i = 0; i < g.node_count(); ++i) {
        double plus = mrf.node_prior(i);
        double minus = 1.0 - mrf.node_prior(i);
        for (int id : index.in_ids[i]) {
            plus *= result.messages.mu_plus[id];
            minus *= 1.0 - result.messages.mu_plus[id];
        }
        result.marginal_plus[i] = plus / (plus + minus);
    }
    return result;
}

namespace {

double power_iteration_radius(const Eigen::SparseMatrix<double>& m, int iterations = 300) {
    if (m.rows() == 0 || m.nonZeros() == 0) return 0.0;
    Eigen::VectorXd v = Eigen::VectorXd::Ones(m.rows()).normalized();
    double radius = 0.0;
    for (int it = 0; it < iterations; ++it) {
        Eigen::VectorXd next = m * v;
        const double norm = next.norm();
        if (norm == 0.0) return 0.0;
        v = next / norm;
        radius = norm;
    }
    return radius;
}

}  // namespace

NonBacktracking jacobian_at(const PairwiseMRF& mrf, const MessageSet& messages) {
    const Graph& g = mrf.graph();
    const EdgeIndex index(g);
    const int m2 = mrf.directed_edge_count();

    std::vector<Eigen::Triplet<double>> trips;
    for (int i = 0; i < g.node_count(); ++i) {
        const int d = g.degree(i);
        double total = mrf.beta() * mrf.theta(i);
        for (int b = 0; b < d; ++b) total += messages.nu[index.in_ids[i][b]];
        for (int a = 0; a < d; ++a) {
            // row: message i -> neighbors(i)[a]; columns: messages k -> i, k != recipient
            const double th = std::tanh(total - messages.nu[index.in_ids[i][a]]);
            const double tj = std::tanh(mrf.beta() * mrf.coupling(index.edge_of[i][a]));
            const double value = tj * (1.0 - th * th) / (1.0 - tj * tj * th * th);
            for (int b = 0; b < d; ++b) {
                if (b == a) continue;
                trips.emplace_back(index.out_ids[i][a], index.in_ids[i][b], value);
            }
        }
    }
    NonBacktracking nb;
    nb.matrix.resize(m2, m2);
    nb.matrix.setFromTriplets(trips.begin(), trips.end());
    nb.matrix.makeCompressed();
    nb.spectral_radius = power_iteration_radius(nb.matrix);
    return nb;
}

NonBacktracking non_backtracking_matrix(const Graph& g) {
    const EdgeIndex index(g);
    const int m2 = 2 * static_cast<int>(g.edge_count());
    std::vector<Eigen::Triplet<double>> trips;
    for (int i = 0; i < g.node_count(); ++i) {
        const int d = g.degree(i);
        for (int a = 0; a < d; ++a) {
            for (int b = 0; b < d; ++b) {
                if (b == a) continue;
                trips.emplace_back(index.out_ids[i][a], index.in_ids[i][b], 1.0);
            }
        }
    }
    NonBacktracking nb;
    nb.matrix.resize(m2, m2);
    nb.matrix.setFromTriplets(trips.begin(), trips.end());
    nb.matrix.makeCompressed();
    nb.spectral_radius = power_iteration_radius(nb.matrix);
    return nb;
}

Eigen::VectorXd magnetization(const PairwiseMRF& mrf, const MessageSet& converged) {
    const Graph& g = mrf.graph();
    const EdgeIndex index(g);
    Eigen::VectorXd m(g.node_count());
    for (int i = 0; i < g.node_count(); ++i) {
        double h = mrf.beta() * mrf.theta(i);
        for (int id : index.in_ids[i]) h += converged.nu[id];
        m[i] = std::tanh(h);
    }
    return m;
}

double bethe_hessian_nullspace_residual(const Graph& g, double eta, const Eigen::VectorXd& m) {
    if (m.size() != g.node_count()) {
        throw malformed_input_error("magnetization size must equal node count");
    }
    const double norm = m.norm();
    if (norm == 0.0) {
        throw undefined_metric_error("null-space residual undefined for m = 0");
    }
    // (eta^2 - 1 + d_i) m_i - eta sum_{k in di} m_k, assembled directly.
    Eigen::VectorXd hm(m.size());
    for (int i = 0; i < g.node_count(); ++i) {
        double acc = (eta * eta - 1.0 + g.degree(i)) * m[i];
        for (int k : g.neighbors(i)) acc -= eta * m[k];
        hm[i] = acc;
    }
    return hm.norm() / norm;
}

}  // namespace sybil
