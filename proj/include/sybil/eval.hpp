#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sybil/community.hpp"
#include "sybil/detectors.hpp"
#include "sybil/generators.hpp"

namespace sybil {

/// AUC of the score ranking against binary truth, computed by midranks
/// (ties contribute 1/2); the normalized Mann-Whitney statistic.
/// Benign-oriented scores are negated before ranking.
/// Throws undefined_metric_error when only one class is present.
double auc(const ScoreVector& scores, const std::vector<bool>& is_sybil);

/// Moves round(epsilon * set size) uniformly chosen members of each labeled
/// set to the opposite set, independently per set. Total label count is
/// preserved.
LabelSet flip_labels(const LabelSet& labels, double epsilon, std::uint64_t seed);

enum class SweepAxis { Margin, Epsilon };
enum class GraphModel { Sbm, Dcsbm };

struct DatasetRef {
    std::string edge_path;
    std::string community_path;
    std::optional<std::uint64_t> split_seed;
};

struct ExperimentSpec {
    /// Exactly one of generator/dataset is set.
    std::optional<BlockModelParams> generator;
    GraphModel model = GraphModel::Sbm;
    std::optional<DatasetRef> dataset;

    /// Detector ids for run_experiment; shift-kind ids for
    /// detectability_experiment.
    std::vector<std::string> methods;

    SweepAxis axis = SweepAxis::Margin;
    std::vector<double> values;
    int repetitions = 1;
    std::uint64_t seed_base = 0;
    DetectorParams params;

    double label_fraction = 0.1;
    int label_min_count = 3;
    bool exclude_training_from_auc = false;
    int jobs = 1;

    void validate() const;
};

struct ResultRow {
    std::string method;
    double sweep = 0.0;
    int rep = 0;
    std::string metric;  // "auc" or "nmi"
    double value = 0.0;
    std::uint64_t seed = 0;
};

struct Aggregate {
    std::string method;
    double sweep = 0.0;
    double mean = 0.0;
    double stddev = 0.0;
    int count = 0;
};

struct ResultTable {
    std::vector<ResultRow> rows;

    std::vector<Aggregate> aggregate() const;
    void write_csv(std::ostream& out) const;            // method,sweep,rep,metric,value,seed
    void write_aggregate_csv(std::ostream& out) const;  // method,sweep,mean,std,n
};

/// Runs every method over the sweep grid, scoring AUC against the planted
/// communities (synthetic) or the dataset's community file. Per-run detector
/// errors leave missing cells and are logged, never propagated. Seeds are
/// derived deterministically from seed_base; the result is independent of
/// the parallelism degree.
ResultTable run_experiment(const ExperimentSpec& spec);

/// Spectral-clustering detectability over the margin grid, one curve per
/// shift kind listed in spec.methods, scored by NMI against the planted
/// communities.
ResultTable detectability_experiment(const ExperimentSpec& spec);

}  // namespace sybil
