#include "sybil/datasets.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "sybil/rng.hpp"

namespace sybil {

namespace {

std::string strip_comment(const std::string& line) {
    const auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw malformed_input_error("cannot open " + path);
    return in;
}

}  // namespace

EdgeListFile read_edge_list(std::istream& in) {
    EdgeListFile out;
    std::map<std::string, int> ids;
    auto intern = [&](const std::string& token) {
        auto [it, inserted] = ids.emplace(token, static_cast<int>(out.names.size()));
        if (inserted) out.names.push_back(token);
        return it->second;
    };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(strip_comment(line));
        std::string u, v, extra;
        if (!(ss >> u)) continue;  // blank or comment-only line
        if (!(ss >> v)) {
            throw malformed_input_error("edge list line " + std::to_string(lineno) +
                                        ": expected two node tokens");
        }
        if (ss >> extra) {
            throw malformed_input_error("edge list line " + std::to_string(lineno) +
                                        ": trailing tokens");
        }
        const int a = intern(u);  // sequenced: first-seen order defines the ids
        const int b = intern(v);
        out.edges.emplace_back(a, b);
    }
    out.node_count = static_cast<int>(out.names.size());
    return out;
}

EdgeListFile read_edge_list_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_edge_list(in);
}

CommunityFile read_community_file(std::istream& in) {
    CommunityFile out;
    std::string line;
    int lineno = 0;
    bool saw_theta = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(strip_comment(line));
        std::string node;
        int community;
        if (!(ss >> node)) continue;
        if (!(ss >> community)) {
            throw malformed_input_error("community file line " + std::to_string(lineno) +
                                        ": expected 'node community [theta]'");
        }
        double theta;
        if (ss >> theta) {
            saw_theta = true;
            out.theta.push_back(theta);
        } else if (saw_theta) {
            throw malformed_input_error("community file line " + std::to_string(lineno) +
                                        ": theta column must be present on every line");
        }
        out.nodes.push_back(node);
        out.communities.push_back(community);
    }
    if (!out.theta.empty() && out.theta.size() != out.nodes.size()) {
        throw malformed_input_error("community file: ragged theta column");
    }
    return out;
}

CommunityFile read_community_file_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_community_file(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_community_file(std::ostream& out, const std::vector<int>& communities,
                          const std::vector<double>* theta) {
    char buf[64];
    for (std::size_t i = 0; i < communities.size(); ++i) {
        out << i << ' ' << communities[i];
        if (theta != nullptr) {
            std::snprintf(buf, sizeof(buf), "%.17g", (*theta)[i]);
            out << ' ' << buf;
        }
        out << '\n';
    }
}

void write_scores_csv(std::ostream& out, const ScoreVector& scores) {
    const char* orient = scores.orientation == ScoreVector::Orientation::HigherIsSybil
                             ? "higher-is-sybil"
                             : "higher-is-benign";
    out << "node,score,orientation\n";
    char buf[64];
    for (int i = 0; i < scores.scores.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", scores.scores[i]);
        out << i << ',' << buf << ',' << orient << '\n';
    }
}

void write_eigenvalues_csv(std::ostream& out, const Eigen::VectorXd& eigenvalues) {
    out << "eigenvalue\n";
    char buf[64];
    for (int i = 0; i < eigenvalues.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", eigenvalues[i]);
        out << buf << '\n';
    }
}

LabelSet Dataset::sample_labels(double fraction, int min_count, std::uint64_t seed) const {
    if (fraction <= 0.0 || fraction > 1.0) {
        throw parameter_error("label fraction must lie in (0, 1]");
    }
    std::vector<int> benign_region, sybil_region;
    for (int i = 0; i < graph.node_count(); ++i) {
        (is_sybil[i] ? sybil_region : benign_region).push_back(i);
    }
    Rng rng(seed);
    auto pick = [&](const std::vector<int>& region, const char* name) {
        const int want = std::max(
            min_count, static_cast<int>(std::floor(fraction * region.size())));
        if (want > static_cast<int>(region.size())) {
            throw label_budget_error(std::string(name) + " region too small for label budget");
        }
        auto idx = rng.sample_without_replacement(static_cast<int>(region.size()), want);
        std::vector<int> out(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) out[i] = region[idx[i]];
        std::sort(out.begin(), out.end());
        return out;
    };
    LabelSet labels;
    labels.benign = pick(benign_region, "benign");
    labels.sybil = pick(sybil_region, "sybil");
    return labels;
}

Dataset load_dataset(const std::string& edge_path, const std::string& community_path,
                     std::optional<std::uint64_t> split_seed) {
    const EdgeListFile ef = read_edge_list_file(edge_path);
    const CommunityFile cf = read_community_file_file(community_path);

    // Community ids by node token; every graph node must be covered.
    std::map<std::string, int> community_of;
    for (std::size_t i = 0; i < cf.nodes.size(); ++i) {
        community_of[cf.nodes[i]] = cf.communities[i];
    }
    std::map<std::string, int> graph_ids;
    for (int i = 0; i < ef.node_count; ++i) graph_ids[ef.names[i]] = i;
    for (const auto& name : cf.nodes) {
        if (!graph_ids.count(name)) {
            throw malformed_input_error("community file names node '" + name +
                                        "' absent from the edge list");
        }
    }

    const Graph raw = Graph::from_edge_list(ef.edges, ef.node_count);
    auto [lcc, map] = largest_connected_component(raw);

    Dataset out;
    out.names.resize(lcc.node_count());
    std::vector<int> raw_communities(lcc.node_count());
    for (int i = 0; i < raw.node_count(); ++i) {
        if (map[i] == -1) continue;
        out.names[map[i]] = ef.names[i];
        const auto it = community_of.find(ef.names[i]);
        if (it == community_of.end()) {
            throw malformed_input_error("node '" + ef.names[i] +
                                        "' missing from the community file");
        }
        raw_communities[map[i]] = it->second;
    }

    // Contiguous community ids ordered by the sorted original ids.
    std::vector<int> distinct = raw_communities;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    out.communities.k = static_cast<int>(distinct.size());
    out.communities.assignment.resize(lcc.node_count());
    for (int i = 0; i < lcc.node_count(); ++i) {
        out.communities.assignment[i] = static_cast<int>(
            std::lower_bound(distinct.begin(), distinct.end(), raw_communities[i]) -
            distinct.begin());
    }

    // Region split: first half of the community ids is benign, unless a split
    // seed shuffles the grouping.
    const int k = out.communities.k;
    std::vector<int> order(k);
    for (int c = 0; c < k; ++c) order[c] = c;
    if (split_seed) {
        Rng rng(*split_seed);
        rng.shuffle(order);
    }
    for (int c = 0; c < k / 2; ++c) out.benign_communities.push_back(order[c]);
    std::sort(out.benign_communities.begin(), out.benign_communities.end());

    out.is_sybil.resize(lcc.node_count());
    for (int i = 0; i < lcc.node_count(); ++i) {
        out.is_sybil[i] = !std::binary_search(out.benign_communities.begin(),
                                              out.benign_communities.end(),
                                              out.communities.assignment[i]);
    }
    out.graph = std::move(lcc);
    return out;
}

}  // namespace sybil
