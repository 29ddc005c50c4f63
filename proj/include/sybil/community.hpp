#pragma once

#include <cstdint>

#include "sybil/spectral.hpp"

namespace sybil {

struct Clustering {
    std::vector<int> assignment;  // per node, in [0, k)
    int k = 0;
};

/// Lloyd's algorithm with greedy farthest-point seeding, best of `restarts`
/// runs by within-cluster sum of squares. Deterministic under a fixed seed.
std::vector<int> kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed,
                        int restarts = 10, int max_iter = 300);

/// k smallest eigenvectors of the shift, row-normalized (zero rows kept as
/// zero), clustered by k-means.
Clustering spectral_clustering(const ShiftMatrix& shift, int k, std::uint64_t seed,
                               int restarts = 10);

/// Normalized mutual information in [0, 1]; mutual information divided by
/// the arithmetic mean of the entropies. Symmetric and label-permutation
/// invariant; 1 when both clusterings are trivial and equal.
double nmi(const Clustering& a, const Clustering& b);

}  // namespace sybil
