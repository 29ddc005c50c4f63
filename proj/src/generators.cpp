#include "sybil/generators.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include "sybil/rng.hpp"

namespace sybil {

BlockModelParams BlockModelParams::two_block_from_margin(int n, double d_ave, double margin) {
    BlockModelParams p;
    p.n = n;
    p.k = 2;
    p.c_in = d_ave + margin;
    p.c_out = d_ave - margin;
    return p;
}

BlockModelParams BlockModelParams::two_block_from_cout(int n, double d_ave, double c_out) {
    BlockModelParams p;
    p.n = n;
    p.k = 2;
    p.c_in = 2.0 * d_ave - c_out;
    p.c_out = c_out;
    return p;
}

std::vector<int> BlockModelParams::resolved_sizes() const {
    if (!sizes.empty()) return sizes;
    std::vector<int> s(k, n / k);
    for (int i = 0; i < n % k; ++i) ++s[i];
    return s;
}

void BlockModelParams::validate() const {
    if (n <= 0) throw parameter_error("block model needs n > 0");
    if (k < 1 || k > n) throw parameter_error("block model needs 1 <= k <= n");
    if (c_in < 0.0 || c_out < 0.0) throw parameter_error("connectivities must be nonnegative");
    if (c_in > n || c_out > n) {
        throw parameter_error("edge probability c/n exceeds 1; reduce c_in/c_out");
    }
    const auto s = resolved_sizes();
    if (static_cast<int>(s.size()) != k) throw parameter_error("sizes must have k entries");
    if (std::accumulate(s.begin(), s.end(), 0) != n) {
        throw parameter_error("community sizes must sum to n");
    }
    for (int v : s) {
        if (v <= 0) throw parameter_error("community sizes must be positive");
    }
}

namespace {

std::vector<int> community_map(const BlockModelParams& params) {
    std::vector<int> comm(params.n);
    const auto sizes = params.resolved_sizes();
    int node = 0;
    for (int c = 0; c < params.k; ++c) {
        for (int j = 0; j < sizes[c]; ++j) comm[node++] = c;
    }
    return comm;
}

PlantedGraph sample_block_model(const BlockModelParams& params, std::uint64_t seed,
                                bool degree_corrected) {
    params.validate();
    const int n = params.n;
    Rng rng(seed);

    PlantedGraph out;
    out.communities = community_map(params);

    out.theta.assign(n, 1.0);
    if (degree_corrected && !params.theta.constant()) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const double raw = std::pow(rng.uniform(params.theta.low, params.theta.high),
                                        params.theta.power);
            out.theta[i] = raw;
            sum += raw;
        }
        // Normalize to unit sample mean so E[theta] = 1 holds empirically.
        const double mean = sum / n;
        for (double& t : out.theta) t /= mean;
    }
    double phi = 0.0;
    for (double t : out.theta) phi += t * t;
    out.phi = phi / n;

    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(0.6 * n * std::max(params.c_in, params.c_out)));
    bool clamped = false;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double c =
                out.communities[i] == out.communities[j] ? params.c_in : params.c_out;
            double p = out.theta[i] * out.theta[j] * c / n;
            if (p > 1.0) {
                p = 1.0;
                clamped = true;
            }
            if (rng.uniform() < p) edges.emplace_back(i, j);
        }
    }
    if (clamped) {
        std::cerr << "sample_dcsbm: edge probability theta_i theta_j c/n exceeded 1 "
                     "for some pairs; clamped\n";
    }
    out.graph = Graph::from_edge_list(edges, n);
    return out;
}

}  // namespace

PlantedGraph sample_sbm(const BlockModelParams& params, std::uint64_t seed) {
    if (!params.theta.constant()) {
        throw parameter_error("sample_sbm does not take a theta distribution; use sample_dcsbm");
    }
    return sample_block_model(params, seed, false);
}

PlantedGraph sample_dcsbm(const BlockModelParams& params, std::uint64_t seed) {
    return sample_block_model(params, seed, true);
}

double detectability_margin(double c_in, double c_out, double phi) {
    if (c_out < 0.0 || c_in < c_out) {
        throw parameter_error("detectability_margin expects c_in >= c_out >= 0");
    }
    if (phi <= 0.0) throw parameter_error("phi must be positive");
    return (c_in - c_out) / 2.0 - std::sqrt((c_in + c_out) / (2.0 * phi));
}

LabelSet sample_labels(const PlantedGraph& pg, const std::vector<int>& benign_communities,
                       double fraction, int min_count, std::uint64_t seed) {
    if (fraction <= 0.0 || fraction > 1.0) {
        throw parameter_error("label fraction must lie in (0, 1]");
    }
    std::vector<bool> benign_comm(
        *std::max_element(pg.communities.begin(), pg.communities.end()) + 1, false);
    for (int c : benign_communities) {
        if (c < 0 || c >= static_cast<int>(benign_comm.size())) {
            throw parameter_error("benign community id out of range");
        }
        benign_comm[c] = true;
    }

    std::vector<int> benign_region, sybil_region;
    for (int i = 0; i < static_cast<int>(pg.communities.size()); ++i) {
        (benign_comm[pg.communities[i]] ? benign_region : sybil_region).push_back(i);
    }

    Rng rng(seed);
    auto pick = [&](const std::vector<int>& region, const char* name) {
        const int want = std::max(min_count,
                                  static_cast<int>(std::floor(fraction * region.size())));
        if (want > static_cast<int>(region.size())) {
            throw label_budget_error(std::string(name) + " region has " +
                                     std::to_string(region.size()) + " nodes, needs " +
                                     std::to_string(want) + " labels");
        }
        auto idx = rng.sample_without_replacement(static_cast<int>(region.size()), want);
        std::vector<int> out(want);
        for (int i = 0; i < want; ++i) out[i] = region[idx[i]];
        std::sort(out.begin(), out.end());
        return out;
    };

    LabelSet labels;
    labels.benign = pick(benign_region, "benign");
    labels.sybil = pick(sybil_region, "sybil");
    return labels;
}

}  // namespace sybil
