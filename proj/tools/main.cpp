// Experiment command line: dataset loading, graph generation, detector runs,
// and the sweep presets behind the figure/table CSVs.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "sybil/datasets.hpp"
#include "sybil/eval.hpp"
#include "sybil/rng.hpp"

namespace fs = std::filesystem;
using namespace sybil;

namespace {

struct CommonOptions {
    int n = 1000;
    int k = 2;
    double d_ave = 5.0;
    double c_out = 0.5;
    std::optional<double> margin;
    std::string model = "sbm";
    std::vector<double> theta_cube;  // lo hi
    std::uint64_t seed = 1;
    std::string out = "results";
    int reps = 100;
    int jobs = 1;
    bool quick = false;
    DetectorParams params;
};

BlockModelParams block_params(const CommonOptions& opt) {
    BlockModelParams p = opt.margin
                             ? BlockModelParams::two_block_from_margin(opt.n, opt.d_ave, *opt.margin)
                             : BlockModelParams::two_block_from_cout(opt.n, opt.d_ave, opt.c_out);
    p.k = opt.k;
    if (!opt.theta_cube.empty()) {
        p.theta = ThetaSpec::cube_uniform(opt.theta_cube.at(0), opt.theta_cube.at(1));
    }
    return p;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path);
    if (!out) throw malformed_input_error("cannot write " + path.string());
    body(out);
}

struct DatasetPaths {
    std::string edges;
    std::string communities;
    std::string name;
};

DatasetPaths resolve_dataset(const std::string& dataset, const std::string& communities,
                             const std::string& data_dir) {
    DatasetPaths out;
    if (dataset.find('/') != std::string::npos || dataset.ends_with(".edges")) {
        out.edges = dataset;
        out.communities = communities.empty()
                              ? fs::path(dataset).replace_extension(".communities").string()
                              : communities;
        out.name = fs::path(dataset).stem().string();
    } else {
        out.edges = (fs::path(data_dir) / (dataset + ".edges")).string();
        out.communities = communities.empty()
                              ? (fs::path(data_dir) / (dataset + ".communities")).string()
                              : communities;
        out.name = dataset;
    }
    return out;
}

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) out[i] = lo + (hi - lo) * i / (count - 1);
    return out;
}

// ---- generate --------------------------------------------------------------

int cmd_generate(const CommonOptions& opt) {
    const BlockModelParams params = block_params(opt);
    const PlantedGraph pg = opt.model == "dcsbm" ? sample_dcsbm(params, opt.seed)
                                                 : sample_sbm(params, opt.seed);
    const fs::path prefix = opt.out;
    write_file(prefix.string() + ".edges",
               [&](std::ostream& os) { write_edge_list(os, pg.graph); });
    write_file(prefix.string() + ".communities", [&](std::ostream& os) {
        const bool with_theta = opt.model == "dcsbm";
        write_community_file(os, pg.communities, with_theta ? &pg.theta : nullptr);
    });
    std::cout << "wrote " << prefix.string() << ".edges (" << pg.graph.node_count()
              << " nodes, " << pg.graph.edge_count() << " edges) and "
              << prefix.string() << ".communities\n";
    return 0;
}

// ---- detect ----------------------------------------------------------------

int cmd_detect(const CommonOptions& opt, const std::string& dataset,
               const std::string& communities, const std::string& data_dir,
               const std::string& method, double label_fraction, int label_min,
               double epsilon, bool compute_auc, bool allow_nonstandard, int auc_reps) {
    const DatasetPaths paths = resolve_dataset(dataset, communities, data_dir);
    const Dataset data = load_dataset(paths.edges, paths.communities);

    std::vector<std::string> methods;
    if (method == "all") {
        methods = detector_ids();
    } else {
        methods = {method};
    }

    const int reps = compute_auc ? auc_reps : 1;
    for (const auto& m : methods) {
        double total = 0.0;
        int completed = 0;
        for (int rep = 0; rep < reps; ++rep) {
            LabelSet labels =
                data.sample_labels(label_fraction, label_min, derive_seed(opt.seed, 0, rep));
            if (epsilon > 0.0) {
                labels = flip_labels(labels, epsilon, derive_seed(opt.seed, 1, rep));
            }
            const ScoreVector scores =
                detect(m, data.graph, labels, opt.params, allow_nonstandard);
            if (rep == 0) {
                const fs::path csv = fs::path(opt.out) / (paths.name + "_" + m + ".csv");
                write_file(csv, [&](std::ostream& os) { write_scores_csv(os, scores); });
            }
            if (compute_auc) {
                total += auc(scores, data.is_sybil);
                ++completed;
            }
        }
        if (compute_auc) {
            std::cout << m << " mean AUC over " << completed << " label seeds: "
                      << total / completed << "\n";
        }
    }
    return 0;
}

// ---- sweep -----------------------------------------------------------------

void write_tables(const fs::path& dir, const std::string& stem, const ResultTable& table) {
    write_file(dir / (stem + "_raw.csv"),
               [&](std::ostream& os) { table.write_csv(os); });
    write_file(dir / (stem + "_agg.csv"),
               [&](std::ostream& os) { table.write_aggregate_csv(os); });
    std::cout << "wrote " << (dir / (stem + "_raw.csv")).string() << " and aggregate\n";
}

ExperimentSpec base_spec(const CommonOptions& opt) {
    ExperimentSpec spec;
    spec.generator = block_params(opt);
    spec.repetitions = opt.quick ? std::min(opt.reps, 2) : opt.reps;
    spec.seed_base = opt.seed;
    spec.params = opt.params;
    spec.jobs = opt.jobs;
    return spec;
}

int preset_fig2(const CommonOptions& opt) {
    const int n = opt.quick ? 300 : 3000;
    const fs::path dir = fs::path(opt.out) / "fig2";
    for (const auto& [tag, d_ave] : {std::pair{"dense", 20.0}, std::pair{"sparse", 5.0}}) {
        const auto params = BlockModelParams::two_block_from_cout(n, d_ave, 1.0);
        const PlantedGraph pg = sample_sbm(params, opt.seed);
        auto [g, map] = largest_connected_component(pg.graph);
        std::vector<bool> is_sybil(g.node_count());
        for (int i = 0; i < pg.graph.node_count(); ++i) {
            if (map[i] != -1) is_sybil[map[i]] = pg.communities[i] == 1;
        }
        std::vector<int> benign, sybil;
        for (int i = 0; i < g.node_count(); ++i) (is_sybil[i] ? sybil : benign).push_back(i);
        Rng rng(derive_seed(opt.seed, 2, 0));
        LabelSet labels;
        auto bi = rng.sample_without_replacement(
            static_cast<int>(benign.size()),
            std::max(3, static_cast<int>(0.1 * benign.size())));
        auto si = rng.sample_without_replacement(
            static_cast<int>(sybil.size()), std::max(3, static_cast<int>(0.1 * sybil.size())));
        for (int i : bi) labels.benign.push_back(benign[i]);
        for (int i : si) labels.sybil.push_back(sybil[i]);
        labels.validate(g.node_count());

        for (ShiftKind kind :
             {ShiftKind::RandomWalkLaplacian, ShiftKind::AugmentedNormalizedLaplacian,
              ShiftKind::MaxDegreeLaplacian, ShiftKind::BetheHessian,
              ShiftKind::RegularizedLaplacian}) {
            const Spectrum spec = eig(build_shift(g, kind, &labels));
            write_file(dir / (std::string(tag) + "_" + shift_kind_id(kind) + ".csv"),
                       [&](std::ostream& os) { write_eigenvalues_csv(os, spec.eigenvalues); });
        }
        std::cout << "wrote " << dir.string() << "/" << tag << "_*.csv\n";
    }
    return 0;
}

int preset_fig3(const CommonOptions& opt) {
    const fs::path dir = fs::path(opt.out) / "fig3";
    for (const bool dcsbm : {false, true}) {
        CommonOptions o = opt;
        o.c_out = o.d_ave;  // margin axis rewrites c_in/c_out per value
        o.margin.reset();
        if (dcsbm) o.theta_cube = {3.0, 7.0};
        ExperimentSpec spec = base_spec(o);
        spec.model = dcsbm ? GraphModel::Dcsbm : GraphModel::Sbm;
        spec.methods = {"rw", "aug", "maxdeg", "bethe", "reg"};
        spec.axis = SweepAxis::Margin;
        spec.values = linspace(0.0, 4.0, opt.quick ? 3 : 9);
        write_tables(dir, dcsbm ? "dcsbm" : "sbm", detectability_experiment(spec));
    }
    return 0;
}

int preset_fig4(const CommonOptions& opt, bool dcsbm) {
    const fs::path dir = fs::path(opt.out) / "fig4";
    CommonOptions o = opt;
    o.c_out = o.d_ave;
    o.margin.reset();
    if (dcsbm) o.theta_cube = {3.0, 7.0};
    ExperimentSpec spec = base_spec(o);
    spec.model = dcsbm ? GraphModel::Dcsbm : GraphModel::Sbm;
    spec.methods = detector_ids();
    spec.axis = SweepAxis::Margin;
    spec.values = linspace(0.0, 4.0, opt.quick ? 3 : 9);
    write_tables(dir, dcsbm ? "dcsbm" : "sbm", run_experiment(spec));
    return 0;
}

int preset_fig5(const CommonOptions& opt, bool dcsbm) {
    const fs::path dir = fs::path(opt.out) / "fig5";
    CommonOptions o = opt;
    if (dcsbm) o.theta_cube = {3.0, 7.0};
    ExperimentSpec spec = base_spec(o);
    spec.model = dcsbm ? GraphModel::Dcsbm : GraphModel::Sbm;
    spec.methods = detector_ids();
    spec.axis = SweepAxis::Epsilon;
    spec.values = opt.quick ? std::vector<double>{0.0, 0.2} : linspace(0.0, 0.5, 11);
    write_tables(dir, dcsbm ? "dcsbm" : "sbm", run_experiment(spec));
    return 0;
}

int preset_table2(const CommonOptions& opt, const std::string& dataset,
                  const std::string& communities, const std::string& data_dir) {
    const fs::path dir = fs::path(opt.out) / "table2";
    std::vector<std::string> names;
    if (!dataset.empty()) {
        names = {dataset};
    } else {
        for (const char* candidate : {"karate", "dolphins", "football", "polblogs"}) {
            if (fs::exists(fs::path(data_dir) / (std::string(candidate) + ".edges"))) {
                names.push_back(candidate);
            } else {
                std::cerr << "table2: skipping " << candidate
                          << " (not present under " << data_dir << ")\n";
            }
        }
    }
    for (const auto& name : names) {
        const DatasetPaths paths = resolve_dataset(name, communities, data_dir);
        ExperimentSpec spec;
        spec.dataset = DatasetRef{paths.edges, paths.communities, std::nullopt};
        spec.methods = detector_ids();
        spec.axis = SweepAxis::Epsilon;
        spec.values = {0.0, 0.1, 0.2};
        spec.repetitions = opt.quick ? std::min(opt.reps, 2) : opt.reps;
        spec.seed_base = opt.seed;
        spec.params = opt.params;
        spec.jobs = opt.jobs;
        write_tables(dir, paths.name, run_experiment(spec));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph-based Sybil detection experiments"};
    app.set_config("--config");
    app.require_subcommand(1);

    CommonOptions opt;
    std::string dataset, communities, data_dir = "data";
    std::string method = "all";
    std::string preset;
    double label_fraction = 0.1;
    int label_min = 3;
    double epsilon = 0.0;
    bool compute_auc = false;
    bool allow_nonstandard = false;
    int auc_reps = 100;
    int gamma = -1;
    double tau = -1.0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", opt.seed, "RNG seed");
        cmd->add_option("--out", opt.out, "output directory or file prefix");
        cmd->add_option("--reps", opt.reps, "repetitions per sweep value");
        cmd->add_option("--jobs", opt.jobs, "parallel repetition workers");
        cmd->add_flag("--quick", opt.quick, "smoke-test sizing (tiny grids, reps <= 2)");
    };
    auto add_model = [&](CLI::App* cmd) {
        cmd->add_option("--model", opt.model, "sbm or dcsbm")
            ->check(CLI::IsMember({"sbm", "dcsbm"}));
        cmd->add_option("--n", opt.n, "node count");
        cmd->add_option("--k", opt.k, "community count");
        cmd->add_option("--d-ave", opt.d_ave, "average degree");
        cmd->add_option("--c-out", opt.c_out, "between-community connectivity");
        cmd->add_option("--margin", opt.margin, "(c_in - c_out) / 2, overrides --c-out");
        cmd->add_option("--theta-cube-uniform", opt.theta_cube,
                        "LO HI: theta ~ U(LO,HI)^3 normalized (DCSBM)")
            ->expected(2);
    };
    auto add_params = [&](CLI::App* cmd) {
        cmd->add_option("--alpha", opt.params.alpha, "CIA restart parameter");
        cmd->add_option("--gamma", gamma, "SybilRank steps (default floor(log n))");
        cmd->add_option("--theta", opt.params.theta, "SybilSCAR residual prior");
        cmd->add_option("--s", opt.params.s, "heat scale");
        cmd->add_option("--tau", tau, "regularization (default d_ave)");
        cmd->add_option("--cheb-order", opt.params.cheb_order, "Chebyshev order");
        cmd->add_flag("--allow-nonstandard", allow_nonstandard,
                      "permit sybilscar-d despite its unstable convergence");
    };
    auto add_dataset = [&](CLI::App* cmd) {
        cmd->add_option("--dataset", dataset, "dataset name under --data-dir, or an .edges path");
        cmd->add_option("--communities", communities, "community file (default: derived)");
        cmd->add_option("--data-dir", data_dir, "bundled dataset directory");
    };

    CLI::App* generate = app.add_subcommand("generate", "sample a block-model graph to files");
    add_model(generate);
    add_common(generate);

    CLI::App* detect_cmd = app.add_subcommand("detect", "run detectors on a dataset");
    add_dataset(detect_cmd);
    add_params(detect_cmd);
    add_common(detect_cmd);
    detect_cmd->add_option("--method", method, "detector id or 'all'");
    detect_cmd->add_option("--labels-fraction", label_fraction, "label fraction per region");
    detect_cmd->add_option("--label-min", label_min, "minimum labels per region");
    detect_cmd->add_option("--epsilon", epsilon, "label-noise fraction");
    detect_cmd->add_flag("--auc", compute_auc, "report mean AUC over label seeds");
    detect_cmd->add_option("--auc-reps", auc_reps, "label seeds for --auc");

    CLI::App* sweep = app.add_subcommand("sweep", "run a figure/table preset");
    sweep->add_option("--preset", preset,
                      "fig2 | fig3 | fig4-sbm | fig4-dcsbm | fig5-sbm | fig5-dcsbm | table2")
        ->required()
        ->check(CLI::IsMember(
            {"fig2", "fig3", "fig4-sbm", "fig4-dcsbm", "fig5-sbm", "fig5-dcsbm", "table2"}));
    add_dataset(sweep);
    add_model(sweep);
    add_params(sweep);
    add_common(sweep);
    sweep->add_option("--epsilon", epsilon, "single epsilon override (detect only)");

    CLI11_PARSE(app, argc, argv);

    if (gamma >= 0) opt.params.gamma = gamma;
    if (tau >= 0.0) opt.params.tau = tau;

    try {
        if (generate->parsed()) {
            if (opt.out == "results") opt.out = "graph";
            return cmd_generate(opt);
        }
        if (detect_cmd->parsed()) {
            if (dataset.empty()) {
                std::cerr << "detect: --dataset is required\n";
                return 2;
            }
            if (opt.out == "results") opt.out = ".";
            return cmd_detect(opt, dataset, communities, data_dir, method, label_fraction,
                              label_min, epsilon, compute_auc, allow_nonstandard, auc_reps);
        }
        if (sweep->parsed()) {
            if (preset == "fig2") return preset_fig2(opt);
            if (preset == "fig3") return preset_fig3(opt);
            if (preset == "fig4-sbm") return preset_fig4(opt, false);
            if (preset == "fig4-dcsbm") return preset_fig4(opt, true);
            if (preset == "fig5-sbm") return preset_fig5(opt, false);
            if (preset == "fig5-dcsbm") return preset_fig5(opt, true);
            if (preset == "table2") return preset_table2(opt, dataset, communities, data_dir);
        }
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
