#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <optional>
#include <string>

#include "sybil/graph.hpp"

namespace sybil {

enum class ShiftKind {
    RandomWalkLaplacian,           // I - A D^{-1}
    AugmentedNormalizedLaplacian,  // I - Dhat^{-1} A, Dhat = D + I_labeled (user-node block)
    MaxDegreeLaplacian,            // I - A / d_max
    BetheHessian,                  // (r^2 - 1) I + D - r A
    RegularizedLaplacian,          // I - Dtau^{-1/2} A Dtau^{-1/2}, Dtau = D + tau I
};

/// Short stable identifier, e.g. "rw" or "bethe"; used in CSV output and CLI flags.
std::string shift_kind_id(ShiftKind kind);
ShiftKind shift_kind_from_id(const std::string& id);

/// One of the five operator constructions over a graph. Off-diagonal entries
/// are nonzero only on edges. Immutable after construction.
struct ShiftMatrix {
    ShiftKind kind;
    Eigen::SparseMatrix<double> matrix;
    bool symmetric = true;
    /// r for BetheHessian, tau for RegularizedLaplacian, unused otherwise.
    double parameter = 0.0;
    /// Interval known to contain every eigenvalue, when analytically available.
    std::optional<std::pair<double, double>> spectral_support;
    /// For the non-symmetric kinds: diagonal sigma with
    /// S = diag(sigma) M diag(sigma)^{-1} and M symmetric, so the eigenproblem
    /// reduces to a symmetric one.
    std::optional<Eigen::VectorXd> symmetrizer;

    int size() const { return static_cast<int>(matrix.rows()); }
};

/// Bethe-Hessian parameter r = sqrt(sum(d^2)/sum(d) - 1).
/// Throws degenerate_degree_error on an edgeless graph.
double bethe_hessian_r(const Graph& g);

/// Builds a shift matrix. `labels` is required exactly for
/// AugmentedNormalizedLaplacian. `parameter` overrides r (BetheHessian,
/// default bethe_hessian_r) or tau (RegularizedLaplacian, default d_ave).
/// Kinds that invert a degree reject graphs with the relevant zero degree.
ShiftMatrix build_shift(const Graph& g, ShiftKind kind,
                        const LabelSet* labels = nullptr,
                        std::optional<double> parameter = std::nullopt);

}  // namespace sybil
