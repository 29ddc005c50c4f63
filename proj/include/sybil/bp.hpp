#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "sybil/graph.hpp"

namespace sybil {

/// Ising-type pairwise Markov random field over a graph, kept in both the
/// potential parametrization (node prior q_i, edge weight w_ij, both in
/// (0,1)) and the exponential-family one (beta, local field theta_i,
/// coupling J_ij). The two are linked by q = sigma(2 beta theta) and
/// w = sigma(2 beta J).
class PairwiseMRF {
public:
    static PairwiseMRF from_potentials(Graph g, Eigen::VectorXd node_priors,
                                       std::vector<double> edge_weights);
    static PairwiseMRF from_fields(Graph g, double beta, Eigen::VectorXd theta,
                                   std::vector<double> coupling);

    const Graph& graph() const noexcept { return graph_; }
    double beta() const noexcept { return beta_; }

    double node_prior(int i) const { return node_priors_[i]; }
    double edge_weight(int e) const { return edge_weights_[e]; }
    double theta(int i) const { return theta_[i]; }
    double coupling(int e) const { return coupling_[e]; }

    const Eigen::VectorXd& node_priors() const noexcept { return node_priors_; }
    const Eigen::VectorXd& theta_field() const noexcept { return theta_; }

    int directed_edge_count() const { return 2 * static_cast<int>(graph_.edge_count()); }

    /// Directed-edge ids: edge e = (i, j) with i < j gets 2e for i->j and
    /// 2e+1 for j->i.
    int directed_id(int e, bool reversed) const { return 2 * e + (reversed ? 1 : 0); }

private:
    PairwiseMRF() = default;

    Graph graph_;
    Eigen::VectorXd node_priors_;       // q
    std::vector<double> edge_weights_;  // w, aligned with graph().edges()
    double beta_ = 1.0;
    Eigen::VectorXd theta_;             // theta
    std::vector<double> coupling_;      // J
};

/// Messages over directed edges, in both the probability form mu and the
/// one-parameter form nu = atanh(mu(+1) - mu(-1)). Kept consistent.
struct MessageSet {
    Eigen::VectorXd mu_plus;  // mu(+1) per directed edge; mu(-1) = 1 - mu(+1)
    Eigen::VectorXd nu;

    static MessageSet uniform(int directed_edges);
    static MessageSet from_mu(Eigen::VectorXd mu_plus);
    static MessageSet from_nu(Eigen::VectorXd nu);

    int size() const { return static_cast<int>(mu_plus.size()); }
};

/// One synchronous sum-product step in the probability parametrization.
MessageSet mu_update(const PairwiseMRF& mrf, const MessageSet& messages);

/// One synchronous step in the one-parameter form:
/// tanh(nu_ij') = tanh(beta J_ij) tanh(beta theta_i + sum_{k in di\j} nu_ki).
/// Equivalent to mu_update under the change of variables.
MessageSet nu_update(const PairwiseMRF& mrf, const MessageSet& messages);

struct LbpResult {
    Eigen::VectorXd marginal_plus;  // b_i(+1)
    MessageSet messages;
    bool converged = false;
    int iterations = 0;
};

/// Damped synchronous loopy belief propagation from uniform messages.
/// Non-convergence is reported through the flag, never thrown.
LbpResult lbp_run(const PairwiseMRF& mrf, int max_iter = 1000, double tol = 1e-12,
                  double damping = 0.5);

/// Sparse 2|E| x 2|E| operator on directed edges; entry (ij, ki) is nonzero
/// only for consecutive non-backtracking pairs (k -> i -> j, k != j).
struct NonBacktracking {
    Eigen::SparseMatrix<double> matrix;
    double spectral_radius = 0.0;
};

/// Jacobian of the nu-space update at the given messages.
NonBacktracking jacobian_at(const PairwiseMRF& mrf, const MessageSet& messages);

/// Unweighted non-backtracking matrix B of a graph.
NonBacktracking non_backtracking_matrix(const Graph& g);

/// m_i = tanh(beta theta_i + sum_{k in di} nu_ki); equals b_i(+1) - b_i(-1).
Eigen::VectorXd magnetization(const PairwiseMRF& mrf, const MessageSet& converged);

/// |H(eta) m| / |m| with H the Bethe-Hessian of g; small residuals certify
/// the magnetization null-space identity. Throws undefined_metric_error on m = 0.
double bethe_hessian_nullspace_residual(const Graph& g, double eta, const Eigen::VectorXd& m);

}  // namespace sybil
