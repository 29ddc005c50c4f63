#pragma once

#include <utility>
#include <vector>

#include "sybil/errors.hpp"

namespace sybil {

/// Unweighted undirected simple graph over dense 0-based node ids.
/// Immutable after construction; cheap to share by const reference.
class Graph {
public:
    Graph() = default;

    /// Builds a graph from unordered node pairs. Self-loops are dropped,
    /// duplicates (in either orientation) are collapsed, and adjacency is
    /// symmetric by construction. Throws malformed_input_error for ids
    /// outside [0, n).
    static Graph from_edge_list(const std::vector<std::pair<int, int>>& pairs, int n);

    int node_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    /// Canonical edge list: pairs (i, j) with i < j, sorted lexicographically.
    const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }

    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool has_edge(int u, int v) const;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
};

struct DegreeVector {
    std::vector<int> d;
    double d_ave = 0.0;
    int d_max = 0;
    int d_min = 0;
};

DegreeVector degrees(const Graph& g);

/// Disjoint sets of known-Sybil and known-benign node ids.
struct LabelSet {
    std::vector<int> sybil;
    std::vector<int> benign;

    bool empty() const noexcept { return sybil.empty() && benign.empty(); }

    /// Sorts, deduplicates, and checks range and disjointness.
    void validate(int n);
};

/// Per-node component id plus component count, 0-based.
std::pair<std::vector<int>, int> connected_components(const Graph& g);

/// Largest connected component (ties broken by smallest contained node id)
/// and the injective old-id -> new-id map; dropped nodes map to -1.
std::pair<Graph, std::vector<int>> largest_connected_component(const Graph& g);

struct AugmentedGraph {
    Graph graph;
    int sybil_label_node;
    int benign_label_node;
};

/// Appends a Sybil label node adjacent to exactly the labeled Sybils and a
/// benign label node adjacent to exactly the labeled benign nodes.
AugmentedGraph augment_graph(const Graph& g, const LabelSet& labels);

}  // namespace sybil
