#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sybil/community.hpp"
#include "sybil/detectors.hpp"
#include "sybil/generators.hpp"

namespace sybil {

/// Edge-list text format: one "u v" pair per line, whitespace-separated,
/// '#' starts a comment. Node tokens need not be dense integers; they are
/// mapped to dense 0-based ids in first-seen order.
struct EdgeListFile {
    std::vector<std::pair<int, int>> edges;
    std::vector<std::string> names;  // dense id -> original token
    int node_count = 0;
};

EdgeListFile read_edge_list(std::istream& in);
EdgeListFile read_edge_list_file(const std::string& path);

/// Companion community file: "node community_id [theta]" per line.
struct CommunityFile {
    std::vector<std::string> nodes;
    std::vector<int> communities;
    std::vector<double> theta;  // empty when the column is absent
};

CommunityFile read_community_file(std::istream& in);
CommunityFile read_community_file_file(const std::string& path);

void write_edge_list(std::ostream& out, const Graph& g);
void write_community_file(std::ostream& out, const std::vector<int>& communities,
                          const std::vector<double>* theta = nullptr);
void write_scores_csv(std::ostream& out, const ScoreVector& scores);
void write_eigenvalues_csv(std::ostream& out, const Eigen::VectorXd& eigenvalues);

/// A real network prepared for the detection experiments: largest connected
/// component extracted, ids dense, communities contiguous, and the
/// communities split into a benign and a Sybil region (first half of the
/// sorted community ids is benign; a split seed randomizes the grouping).
struct Dataset {
    Graph graph;
    std::vector<std::string> names;  // dense id -> original token
    Clustering communities;
    std::vector<int> benign_communities;
    std::vector<bool> is_sybil;

    /// Region-aware label sampling: max(min_count, floor(fraction * region))
    /// per region, uniform without replacement.
    LabelSet sample_labels(double fraction, int min_count, std::uint64_t seed) const;
};

Dataset load_dataset(const std::string& edge_path, const std::string& community_path,
                     std::optional<std::uint64_t> split_seed = std::nullopt);

}  // namespace sybil
