#include "sybil/graph.hpp"

#include <algorithm>
#include <numeric>

namespace sybil {

Graph Graph::from_edge_list(const std::vector<std::pair<int, int>>& pairs, int n) {
    if (n < 0) throw malformed_input_error("node count must be nonnegative");

    std::vector<std::pair<int, int>> edges;
    edges.reserve(pairs.size());
    for (auto [u, v] : pairs) {
        if (u < 0 || v < 0 || u >= n || v >= n) {
            throw malformed_input_error("edge endpoint " + std::to_string(std::max(u, v)) +
                                        " outside [0, " + std::to_string(n) + ")");
        }
        if (u == v) continue;  // self-loops dropped
        if (u > v) std::swap(u, v);
        edges.emplace_back(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    Graph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.adj_.resize(n);
    for (auto [u, v] : g.edges_) {
        g.adj_[u].push_back(v);
        g.adj_[v].push_back(u);
    }
    for (auto& nbrs : g.adj_) std::sort(nbrs.begin(), nbrs.end());
    return g;
}

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
    const auto& nbrs = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    const int target = adj_[u].size() <= adj_[v].size() ? v : u;
    return std::binary_search(nbrs.begin(), nbrs.end(), target);
}

DegreeVector degrees(const Graph& g) {
    DegreeVector out;
    out.d.resize(g.node_count());
    for (int i = 0; i < g.node_count(); ++i) out.d[i] = g.degree(i);
    if (g.node_count() > 0) {
        out.d_max = *std::max_element(out.d.begin(), out.d.end());
        out.d_min = *std::min_element(out.d.begin(), out.d.end());
        out.d_ave = 2.0 * static_cast<double>(g.edge_count()) / g.node_count();
    }
    return out;
}

void LabelSet::validate(int n) {
    auto normalize = [n](std::vector<int>& ids, const char* which) {
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        if (!ids.empty() && (ids.front() < 0 || ids.back() >= n)) {
            throw malformed_input_error(std::string(which) + " label id outside [0, n)");
        }
    };
    normalize(sybil, "sybil");
    normalize(benign, "benign");

    std::vector<int> both;
    std::set_intersection(sybil.begin(), sybil.end(), benign.begin(), benign.end(),
                          std::back_inserter(both));
    if (!both.empty()) {
        throw malformed_input_error("node " + std::to_string(both.front()) +
                                    " labeled both Sybil and benign");
    }
}

std::pair<std::vector<int>, int> connected_components(const Graph& g) {
    const int n = g.node_count();
    std::vector<int> comp(n, -1);
    int count = 0;
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        comp[s] = count;
        stack.push_back(s);
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int v : g.neighbors(u)) {
                if (comp[v] == -1) {
                    comp[v] = count;
                    stack.push_back(v);
                }
            }
        }
        ++count;
    }
    return {std::move(comp), count};
}

std::pair<Graph, std::vector<int>> largest_connected_component(const Graph& g) {
    const int n = g.node_count();
    if (n == 0) return {Graph{}, {}};

    auto [comp, count] = connected_components(g);
    std::vector<int> sizes(count, 0);
    for (int c : comp) ++sizes[c];
    const int best =
        static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

    std::vector<int> map(n, -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        if (comp[i] == best) map[i] = next++;
    }
    std::vector<std::pair<int, int>> edges;
    edges.reserve(g.edge_count());
    for (auto [u, v] : g.edges()) {
        if (map[u] != -1 && map[v] != -1) edges.emplace_back(map[u], map[v]);
    }
    return {Graph::from_edge_list(edges, next), std::move(map)};
}

AugmentedGraph augment_graph(const Graph& g, const LabelSet& labels) {
    LabelSet checked = labels;
    checked.validate(g.node_count());

    const int n = g.node_count();
    const int l_s = n;
    const int l_b = n + 1;
    std::vector<std::pair<int, int>> edges = g.edges();
    edges.reserve(edges.size() + checked.sybil.size() + checked.benign.size());
    for (int i : checked.sybil) edges.emplace_back(i, l_s);
    for (int i : checked.benign) edges.emplace_back(i, l_b);
    return {Graph::from_edge_list(edges, n + 2), l_s, l_b};
}

}  // namespace sybil
