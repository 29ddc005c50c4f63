#pragma once

#include <cstdint>
#include <vector>

#include "sybil/graph.hpp"

namespace sybil {

/// Degree-propensity distribution for the DCSBM: theta ~ U(low, high)^power,
/// normalized so the sample mean is exactly 1. The default (low == high) is
/// constant theta == 1, which reduces the DCSBM to the plain SBM.
struct ThetaSpec {
    double low = 1.0;
    double high = 1.0;
    double power = 1.0;

    bool constant() const noexcept { return low == high; }

    static ThetaSpec cube_uniform(double low, double high) { return {low, high, 3.0}; }
};

struct BlockModelParams {
    int n = 0;
    int k = 2;
    double c_in = 0.0;
    double c_out = 0.0;
    /// Community sizes; empty means a near-even split of n over k.
    std::vector<int> sizes;
    ThetaSpec theta;

    /// Symmetric two-block parameterizations used by the experiments:
    /// margin = (c_in - c_out)/2 and d_ave = (c_in + c_out)/2.
    static BlockModelParams two_block_from_margin(int n, double d_ave, double margin);
    static BlockModelParams two_block_from_cout(int n, double d_ave, double c_out);

    double d_ave() const noexcept { return (c_in + (k - 1) * c_out) / k; }

    std::vector<int> resolved_sizes() const;
    void validate() const;
};

struct PlantedGraph {
    Graph graph;
    std::vector<int> communities;  // per node, in [0, k)
    std::vector<double> theta;     // all ones for SBM
    double phi = 1.0;              // empirical mean(theta^2)
};

/// Samples each unordered pair independently with probability
/// C_{l(i),l(j)} / n. Bit-identical output under a fixed seed.
PlantedGraph sample_sbm(const BlockModelParams& params, std::uint64_t seed);

/// Degree-corrected variant: pair probability theta_i theta_j C_{l(i),l(j)} / n,
/// clamped to 1 with a warning when the product overflows.
PlantedGraph sample_dcsbm(const BlockModelParams& params, std::uint64_t seed);

/// (c_in - c_out)/2 - sqrt((c_in + c_out)/(2 phi)); positive iff the two
/// symmetric communities are detectable.
double detectability_margin(double c_in, double c_out, double phi = 1.0);

/// Per region (benign = listed communities, Sybil = the rest), selects
/// max(min_count, floor(fraction * region size)) nodes uniformly without
/// replacement. Throws label_budget_error when a region is too small.
LabelSet sample_labels(const PlantedGraph& pg, const std::vector<int>& benign_communities,
                       double fraction, int min_count, std::uint64_t seed);

}  // namespace sybil
