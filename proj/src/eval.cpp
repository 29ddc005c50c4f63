#include "sybil/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include "sybil/datasets.hpp"
#include "sybil/rng.hpp"

namespace sybil {

double auc(const ScoreVector& scores, const std::vector<bool>& is_sybil) {
    const int n = static_cast<int>(scores.scores.size());
    if (static_cast<int>(is_sybil.size()) != n) {
        throw malformed_input_error("auc: truth size must match score size");
    }
    std::size_t n_sybil = 0;
    for (bool b : is_sybil) n_sybil += b;
    const std::size_t n_benign = n - n_sybil;
    if (n_sybil == 0 || n_benign == 0) {
        throw undefined_metric_error("AUC undefined with a single class");
    }

    const double sign =
        scores.orientation == ScoreVector::Orientation::HigherIsBenign ? -1.0 : 1.0;
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return sign * scores.scores[a] < sign * scores.scores[b];
    });

    // Midranks: tied scores share the average rank.
    double rank_sum_sybil = 0.0;
    int i = 0;
    while (i < n) {
        int j = i;
        while (j < n && scores.scores[order[j]] == scores.scores[order[i]]) ++j;
        const double midrank = 0.5 * (i + 1 + j);  // ranks are 1-based
        for (int t = i; t < j; ++t) {
            if (is_sybil[order[t]]) rank_sum_sybil += midrank;
        }
        i = j;
    }
    const double u = rank_sum_sybil - static_cast<double>(n_sybil) * (n_sybil + 1) / 2.0;
    return u / (static_cast<double>(n_sybil) * static_cast<double>(n_benign));
}

LabelSet flip_labels(const LabelSet& labels, double epsilon, std::uint64_t seed) {
    if (epsilon < 0.0 || epsilon > 0.5) {
        throw parameter_error("label noise epsilon must lie in [0, 0.5]");
    }
    Rng rng(seed);
    LabelSet out;

    // Per set independently: round(eps * size) members move to the other set.
    const int flip_s = static_cast<int>(std::llround(epsilon * labels.sybil.size()));
    const int flip_b = static_cast<int>(std::llround(epsilon * labels.benign.size()));

    auto split = [&rng](const std::vector<int>& src, int flips, std::vector<int>& stay,
                        std::vector<int>& move) {
        const int n = static_cast<int>(src.size());
        std::vector<int> idx = rng.sample_without_replacement(n, flips);
        std::vector<bool> flagged(n, false);
        for (int i : idx) flagged[i] = true;
        for (int i = 0; i < n; ++i) (flagged[i] ? move : stay).push_back(src[i]);
    };

    std::vector<int> s_to_b, b_to_s;
    split(labels.sybil, flip_s, out.sybil, s_to_b);
    split(labels.benign, flip_b, out.benign, b_to_s);
    out.sybil.insert(out.sybil.end(), b_to_s.begin(), b_to_s.end());
    out.benign.insert(out.benign.end(), s_to_b.begin(), s_to_b.end());
    std::sort(out.sybil.begin(), out.sybil.end());
    std::sort(out.benign.begin(), out.benign.end());
    return out;
}

void ExperimentSpec::validate() const {
    if (generator.has_value() == dataset.has_value()) {
        throw parameter_error("experiment needs exactly one of generator or dataset");
    }
    if (generator) generator->validate();
    if (repetitions < 1) throw parameter_error("repetitions must be >= 1");
    if (values.empty()) throw parameter_error("sweep values must be non-empty");
    if (methods.empty()) throw parameter_error("method list must be non-empty");
    if (label_fraction <= 0.0 || label_fraction > 1.0) {
        throw parameter_error("label fraction must lie in (0, 1]");
    }
}

std::vector<Aggregate> ResultTable::aggregate() const {
    std::map<std::pair<std::string, double>, std::vector<double>> cells;
    for (const auto& row : rows) {
        cells[{row.method, row.sweep}].push_back(row.value);
    }
    std::vector<Aggregate> out;
    out.reserve(cells.size());
    for (const auto& [key, values] : cells) {
        Aggregate a;
        a.method = key.first;
        a.sweep = key.second;
        a.count = static_cast<int>(values.size());
        double mean = 0.0;
        for (double v : values) mean += v;
        mean /= a.count;
        double var = 0.0;
        for (double v : values) var += (v - mean) * (v - mean);
        a.mean = mean;
        a.stddev = a.count > 1 ? std::sqrt(var / (a.count - 1)) : 0.0;
        out.push_back(std::move(a));
    }
    return out;
}

void ResultTable::write_csv(std::ostream& out) const {
    out << "method,sweep,rep,metric,value,seed\n";
    for (const auto& r : rows) {
        out << r.method << ',' << r.sweep << ',' << r.rep << ',' << r.metric << ','
            << r.value << ',' << r.seed << '\n';
    }
}

void ResultTable::write_aggregate_csv(std::ostream& out) const {
    out << "method,sweep,mean,std,n\n";
    for (const auto& a : aggregate()) {
        out << a.method << ',' << a.sweep << ',' << a.mean << ',' << a.stddev << ','
            << a.count << '\n';
    }
}

namespace {

struct PreparedGraph {
    Graph graph;
    std::vector<int> communities;
    std::vector<bool> is_sybil;
    std::vector<int> benign_communities;
    double d_ave = 0.0;
};

/// Samples the block model, extracts the largest connected component (the
/// detectors invert degrees, so isolated nodes must go), and remaps the
/// planted communities.
PreparedGraph prepare_synthetic(const BlockModelParams& params, GraphModel model,
                                std::uint64_t seed) {
    const PlantedGraph pg = model == GraphModel::Dcsbm ? sample_dcsbm(params, seed)
                                                       : sample_sbm(params, seed);
    auto [lcc, map] = largest_connected_component(pg.graph);

    PreparedGraph out;
    out.communities.resize(lcc.node_count());
    for (int i = 0; i < pg.graph.node_count(); ++i) {
        if (map[i] != -1) out.communities[map[i]] = pg.communities[i];
    }
    // First half of the community ids is the benign region.
    for (int c = 0; c < params.k / 2; ++c) out.benign_communities.push_back(c);
    out.is_sybil.resize(lcc.node_count());
    for (int i = 0; i < lcc.node_count(); ++i) {
        out.is_sybil[i] =
            std::find(out.benign_communities.begin(), out.benign_communities.end(),
                      out.communities[i]) == out.benign_communities.end();
    }
    out.d_ave = degrees(lcc).d_ave;
    out.graph = std::move(lcc);
    return out;
}

LabelSet sample_region_labels(const std::vector<int>& communities,
                              const std::vector<bool>& is_sybil, double fraction,
                              int min_count, std::uint64_t seed) {
    std::vector<int> benign_region, sybil_region;
    for (int i = 0; i < static_cast<int>(is_sybil.size()); ++i) {
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

/// Runs tasks 0..count-1 on `jobs` threads; results land in preallocated slots.
void parallel_for(int count, int jobs, const std::function<void(int)>& body) {
    jobs = std::max(1, jobs);
    if (jobs == 1) {
        for (int t = 0; t < count; ++t) body(t);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            for (int t = next.fetch_add(1); t < count; t = next.fetch_add(1)) body(t);
        });
    }
    for (auto& th : workers) th.join();
}

std::mutex log_mutex;

}  // namespace

ResultTable run_experiment(const ExperimentSpec& spec) {
    spec.validate();

    // Datasets are fixed across repetitions; load once and cache the spectra
    // that only depend on the graph.
    std::optional<Dataset> dataset;
    std::optional<Spectrum> bethe_spectrum, heat_spectrum;
    double dataset_heat_s = spec.params.s;
    if (spec.dataset) {
        dataset = load_dataset(spec.dataset->edge_path, spec.dataset->community_path,
                               spec.dataset->split_seed);
        for (const auto& m : spec.methods) {
            if (m == "sybilbelief") {
                bethe_spectrum = eig(build_shift(dataset->graph, ShiftKind::BetheHessian));
            } else if (m == "sybilheat") {
                heat_spectrum = eig(
                    build_shift(dataset->graph, ShiftKind::RegularizedLaplacian, nullptr,
                                spec.params.tau));
            }
        }
    }

    const int n_values = static_cast<int>(spec.values.size());
    const int n_tasks = n_values * spec.repetitions;
    std::vector<std::vector<ResultRow>> slots(n_tasks);

    parallel_for(n_tasks, spec.jobs, [&](int task) {
        const int v_idx = task / spec.repetitions;
        const int rep = task % spec.repetitions;
        const double value = spec.values[v_idx];
        const std::uint64_t seed = derive_seed(spec.seed_base, v_idx, rep);
        std::uint64_t stream = seed;
        const std::uint64_t graph_seed = splitmix64(stream);
        const std::uint64_t label_seed = splitmix64(stream);
        const std::uint64_t flip_seed = splitmix64(stream);

        try {
            PreparedGraph prep;
            if (dataset) {
                prep.graph = dataset->graph;
                prep.communities = dataset->communities.assignment;
                prep.is_sybil = dataset->is_sybil;
                prep.benign_communities = dataset->benign_communities;
            } else {
                BlockModelParams params = *spec.generator;
                if (spec.axis == SweepAxis::Margin) {
                    const double d_ave = (params.c_in + params.c_out) / 2.0;
                    params.c_in = d_ave + value;
                    params.c_out = d_ave - value;
                }
                prep = prepare_synthetic(params, spec.model, graph_seed);
            }

            LabelSet labels =
                sample_region_labels(prep.communities, prep.is_sybil, spec.label_fraction,
                                     spec.label_min_count, label_seed);
            if (spec.axis == SweepAxis::Epsilon && value > 0.0) {
                labels = flip_labels(labels, value, flip_seed);
            }

            std::vector<bool> truth = prep.is_sybil;
            std::vector<int> eval_nodes;
            if (spec.exclude_training_from_auc) {
                std::vector<bool> trained(prep.graph.node_count(), false);
                for (int i : labels.sybil) trained[i] = true;
                for (int i : labels.benign) trained[i] = true;
                for (int i = 0; i < prep.graph.node_count(); ++i) {
                    if (!trained[i]) eval_nodes.push_back(i);
                }
            }

            for (const auto& method : spec.methods) {
                try {
                    ScoreVector scores;
                    if (dataset && method == "sybilbelief" && bethe_spectrum) {
                        scores = sybilbelief_spectral(*bethe_spectrum, labels,
                                                      CutoffRule::negative_eigenvalues(
                                                          spec.params.lowpass_fallback_k));
                    } else if (dataset && method == "sybilheat" && heat_spectrum) {
                        scores = sybilheat_exact(*heat_spectrum, labels, dataset_heat_s);
                    } else {
                        scores = detect(method, prep.graph, labels, spec.params);
                    }

                    double value_auc;
                    if (spec.exclude_training_from_auc) {
                        ScoreVector sub;
                        sub.orientation = scores.orientation;
                        sub.scores.resize(eval_nodes.size());
                        std::vector<bool> sub_truth(eval_nodes.size());
                        for (std::size_t i = 0; i < eval_nodes.size(); ++i) {
                            sub.scores[i] = scores.scores[eval_nodes[i]];
                            sub_truth[i] = truth[eval_nodes[i]];
                        }
                        value_auc = auc(sub, sub_truth);
                    } else {
                        value_auc = auc(scores, truth);
                    }
                    slots[task].push_back({method, value, rep, "auc", value_auc, seed});
                } catch (const error& e) {
                    std::lock_guard<std::mutex> lock(log_mutex);
                    std::cerr << "run_experiment: " << method << " at sweep " << value
                              << " rep " << rep << " failed: " << e.what() << "\n";
                }
            }
        } catch (const error& e) {
            std::lock_guard<std::mutex> lock(log_mutex);
            std::cerr << "run_experiment: sweep " << value << " rep " << rep
                      << " failed: " << e.what() << "\n";
        }
    });

    ResultTable table;
    for (auto& slot : slots) {
        table.rows.insert(table.rows.end(), slot.begin(), slot.end());
    }
    return table;
}

ResultTable detectability_experiment(const ExperimentSpec& spec) {
    spec.validate();
    if (!spec.generator) {
        throw parameter_error("detectability experiment needs a generator");
    }

    const int n_values = static_cast<int>(spec.values.size());
    const int n_tasks = n_values * spec.repetitions;
    std::vector<std::vector<ResultRow>> slots(n_tasks);

    parallel_for(n_tasks, spec.jobs, [&](int task) {
        const int v_idx = task / spec.repetitions;
        const int rep = task % spec.repetitions;
        const double margin = spec.values[v_idx];
        const std::uint64_t seed = derive_seed(spec.seed_base, v_idx, rep);
        std::uint64_t stream = seed;
        const std::uint64_t graph_seed = splitmix64(stream);
        const std::uint64_t label_seed = splitmix64(stream);
        const std::uint64_t cluster_seed = splitmix64(stream);

        try {
            BlockModelParams params = *spec.generator;
            const double d_ave = (params.c_in + params.c_out) / 2.0;
            params.c_in = d_ave + margin;
            params.c_out = d_ave - margin;
            PreparedGraph prep = prepare_synthetic(params, spec.model, graph_seed);

            Clustering planted;
            planted.k = params.k;
            planted.assignment = prep.communities;

            const LabelSet labels =
                sample_region_labels(prep.communities, prep.is_sybil, spec.label_fraction,
                                     spec.label_min_count, label_seed);

            for (const auto& id : spec.methods) {
                try {
                    const ShiftKind kind = shift_kind_from_id(id);
                    const ShiftMatrix shift =
                        kind == ShiftKind::AugmentedNormalizedLaplacian
                            ? build_shift(prep.graph, kind, &labels)
                            : build_shift(prep.graph, kind);
                    const Clustering found =
                        spectral_clustering(shift, params.k, cluster_seed);
                    slots[task].push_back(
                        {id, margin, rep, "nmi", nmi(planted, found), seed});
                } catch (const error& e) {
                    std::lock_guard<std::mutex> lock(log_mutex);
                    std::cerr << "detectability_experiment: " << id << " at margin "
                              << margin << " rep " << rep << " failed: " << e.what()
                              << "\n";
                }
            }
        } catch (const error& e) {
            std::lock_guard<std::mutex> lock(log_mutex);
            std::cerr << "detectability_experiment: margin " << margin << " rep " << rep
                      << " failed: " << e.what() << "\n";
        }
    });

    ResultTable table;
    for (auto& slot : slots) {
        table.rows.insert(table.rows.end(), slot.begin(), slot.end());
    }
    return table;
}

}  // namespace sybil
