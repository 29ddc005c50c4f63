#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sybil/bp.hpp"
#include "sybil/community.hpp"
#include "sybil/datasets.hpp"
#include "sybil/detectors.hpp"
#include "sybil/eval.hpp"
#include "sybil/generators.hpp"
#include "sybil/spectral.hpp"

namespace py = pybind11;
using namespace sybil;

namespace {

ShiftKind shift_kind_arg(const std::string& id) { return shift_kind_from_id(id); }

std::string orientation_str(ScoreVector::Orientation o) {
    return o == ScoreVector::Orientation::HigherIsSybil ? "higher-is-sybil"
                                                        : "higher-is-benign";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Graph-based Sybil detection as low-pass graph filtering";

    py::register_exception<error>(m, "SybilError", PyExc_RuntimeError);

    // ---- graph ----
    py::class_<Graph>(m, "Graph")
        .def(py::init([](const std::vector<std::pair<int, int>>& edges, int n) {
                 return Graph::from_edge_list(edges, n);
             }),
             py::arg("edges"), py::arg("n"))
        .def_property_readonly("n", &Graph::node_count)
        .def_property_readonly("edges", &Graph::edges)
        .def("degree", &Graph::degree, py::arg("node"))
        .def("neighbors", &Graph::neighbors, py::arg("node"))
        .def("has_edge", &Graph::has_edge, py::arg("u"), py::arg("v"))
        .def("__repr__", [](const Graph& g) {
            return "Graph(n=" + std::to_string(g.node_count()) +
                   ", edges=" + std::to_string(g.edge_count()) + ")";
        });

    py::class_<LabelSet>(m, "LabelSet")
        .def(py::init([](std::vector<int> sybil, std::vector<int> benign) {
                 LabelSet l;
                 l.sybil = std::move(sybil);
                 l.benign = std::move(benign);
                 return l;
             }),
             py::arg("sybil") = std::vector<int>{}, py::arg("benign") = std::vector<int>{})
        .def_readwrite("sybil", &LabelSet::sybil)
        .def_readwrite("benign", &LabelSet::benign);

    m.def("degrees", [](const Graph& g) {
        const DegreeVector d = degrees(g);
        return py::dict(py::arg("d") = d.d, py::arg("d_ave") = d.d_ave,
                        py::arg("d_max") = d.d_max, py::arg("d_min") = d.d_min);
    });
    m.def("largest_connected_component", &largest_connected_component, py::arg("graph"));
    m.def(
        "augment_graph",
        [](const Graph& g, const LabelSet& labels) {
            const AugmentedGraph aug = augment_graph(g, labels);
            return py::make_tuple(aug.graph, aug.sybil_label_node, aug.benign_label_node);
        },
        py::arg("graph"), py::arg("labels"));

    // ---- shift matrices ----
    py::class_<ShiftMatrix>(m, "ShiftMatrix")
        .def_property_readonly("kind",
                               [](const ShiftMatrix& s) { return shift_kind_id(s.kind); })
        .def_readonly("matrix", &ShiftMatrix::matrix)
        .def_readonly("symmetric", &ShiftMatrix::symmetric)
        .def_readonly("parameter", &ShiftMatrix::parameter)
        .def_readonly("spectral_support", &ShiftMatrix::spectral_support);

    m.def(
        "build_shift",
        [](const Graph& g, const std::string& kind, std::optional<LabelSet> labels,
           std::optional<double> parameter) {
            return build_shift(g, shift_kind_arg(kind), labels ? &*labels : nullptr,
                               parameter);
        },
        py::arg("graph"), py::arg("kind"), py::arg("labels") = std::nullopt,
        py::arg("parameter") = std::nullopt,
        "kind: rw | aug | maxdeg | bethe | reg");
    m.def("bethe_hessian_r", &bethe_hessian_r, py::arg("graph"));

    // ---- generators ----
    py::class_<BlockModelParams>(m, "BlockModelParams")
        .def(py::init())
        .def_readwrite("n", &BlockModelParams::n)
        .def_readwrite("k", &BlockModelParams::k)
        .def_readwrite("c_in", &BlockModelParams::c_in)
        .def_readwrite("c_out", &BlockModelParams::c_out)
        .def_readwrite("sizes", &BlockModelParams::sizes)
        .def("theta_cube_uniform",
             [](BlockModelParams& p, double lo, double hi) {
                 p.theta = ThetaSpec::cube_uniform(lo, hi);
             })
        .def_static("two_block_from_margin", &BlockModelParams::two_block_from_margin,
                    py::arg("n"), py::arg("d_ave"), py::arg("margin"))
        .def_static("two_block_from_cout", &BlockModelParams::two_block_from_cout,
                    py::arg("n"), py::arg("d_ave"), py::arg("c_out"));

    py::class_<PlantedGraph>(m, "PlantedGraph")
        .def_readonly("graph", &PlantedGraph::graph)
        .def_readonly("communities", &PlantedGraph::communities)
        .def_readonly("theta", &PlantedGraph::theta)
        .def_readonly("phi", &PlantedGraph::phi);

    m.def("sample_sbm", &sample_sbm, py::arg("params"), py::arg("seed"));
    m.def("sample_dcsbm", &sample_dcsbm, py::arg("params"), py::arg("seed"));
    m.def("detectability_margin", &detectability_margin, py::arg("c_in"), py::arg("c_out"),
          py::arg("phi") = 1.0);
    m.def("sample_labels", &sample_labels, py::arg("planted"), py::arg("benign_communities"),
          py::arg("fraction"), py::arg("min_count"), py::arg("seed"));

    // ---- spectral ----
    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("eigenvalues", &Spectrum::eigenvalues)
        .def_readonly("basis", &Spectrum::basis)
        .def_readonly("inverse_basis", &Spectrum::inverse_basis)
        .def_readonly("orthonormal", &Spectrum::orthonormal);

    py::class_<FilterKernel>(m, "FilterKernel")
        .def_static("constant", &FilterKernel::constant, py::arg("value") = 1.0)
        .def_static("cia", &FilterKernel::cia, py::arg("alpha"))
        .def_static("sybilrank", &FilterKernel::sybilrank, py::arg("gamma"))
        .def_static("inverse", &FilterKernel::inverse, py::arg("pseudo") = false)
        .def_static("ideal_low_pass", &FilterKernel::ideal_low_pass, py::arg("cutoff"))
        .def_static("heat", &FilterKernel::heat, py::arg("s"))
        .def_static("custom", &FilterKernel::custom, py::arg("h"))
        .def("__call__", &FilterKernel::operator(), py::arg("lambda_"));

    m.def("eig", &eig, py::arg("shift"));
    m.def("gft", &gft, py::arg("spectrum"), py::arg("x"));
    m.def("igft", &igft, py::arg("spectrum"), py::arg("xhat"));
    m.def("apply_filter", &apply_filter, py::arg("spectrum"), py::arg("kernel"),
          py::arg("q"));
    m.def("chebyshev_coeffs", &chebyshev_coeffs, py::arg("kernel"), py::arg("order"),
          py::arg("quadrature_points") = 8192);
    m.def("chebyshev_apply", &chebyshev_apply, py::arg("shift"), py::arg("coeffs"),
          py::arg("q"));

    // ---- detectors ----
    py::class_<DetectorParams>(m, "DetectorParams")
        .def(py::init())
        .def_readwrite("alpha", &DetectorParams::alpha)
        .def_readwrite("gamma", &DetectorParams::gamma)
        .def_readwrite("theta", &DetectorParams::theta)
        .def_readwrite("s", &DetectorParams::s)
        .def_readwrite("tau", &DetectorParams::tau)
        .def_readwrite("cheb_order", &DetectorParams::cheb_order)
        .def_readwrite("tol", &DetectorParams::tol)
        .def_readwrite("max_iter", &DetectorParams::max_iter);

    py::class_<ScoreVector>(m, "ScoreVector")
        .def_readonly("scores", &ScoreVector::scores)
        .def_property_readonly(
            "orientation", [](const ScoreVector& s) { return orientation_str(s.orientation); });

    m.def(
        "detect",
        [](const std::string& method, const Graph& g, const LabelSet& labels,
           const DetectorParams& params, bool allow_nonstandard) {
            return detect(method, g, labels, params, allow_nonstandard);
        },
        py::arg("method"), py::arg("graph"), py::arg("labels"),
        py::arg("params") = DetectorParams{}, py::arg("allow_nonstandard") = false);
    m.def("detector_ids", [] { return detector_ids(); });

    m.def(
        "cia",
        [](const Graph& g, const LabelSet& labels, const DetectorParams& p, bool spectral) {
            return cia(g, labels, p, spectral ? Form::Spectral : Form::Iterative);
        },
        py::arg("graph"), py::arg("labels"), py::arg("params") = DetectorParams{},
        py::arg("spectral") = false);
    m.def("sybilrank", &sybilrank, py::arg("graph"), py::arg("labels"),
          py::arg("params") = DetectorParams{});
    m.def(
        "sybilwalk",
        [](const Graph& g, const LabelSet& labels, const DetectorParams& p, bool spectral) {
            return sybilwalk(g, labels, p, spectral ? Form::Spectral : Form::Iterative);
        },
        py::arg("graph"), py::arg("labels"), py::arg("params") = DetectorParams{},
        py::arg("spectral") = false);
    m.def(
        "sybilscar",
        [](const Graph& g, const LabelSet& labels, const DetectorParams& p,
           const std::string& variant, bool spectral) {
            return sybilscar(g, labels, p, variant == "d" ? ScarVariant::D : ScarVariant::C,
                             spectral ? Form::Spectral : Form::Iterative);
        },
        py::arg("graph"), py::arg("labels"), py::arg("params") = DetectorParams{},
        py::arg("variant") = "c", py::arg("spectral") = false);
    m.def(
        "sybilbelief",
        [](const Graph& g, const LabelSet& labels, const DetectorParams& p) {
            return sybilbelief_spectral(g, labels, p);
        },
        py::arg("graph"), py::arg("labels"), py::arg("params") = DetectorParams{});
    m.def(
        "sybilheat",
        [](const Graph& g, const LabelSet& labels, const DetectorParams& p, bool exact) {
            return sybilheat(g, labels, p, exact ? HeatForm::Exact : HeatForm::Chebyshev);
        },
        py::arg("graph"), py::arg("labels"), py::arg("params") = DetectorParams{},
        py::arg("exact") = false);

    // ---- belief propagation ----
    py::class_<PairwiseMRF>(m, "PairwiseMRF")
        .def_static("from_potentials", &PairwiseMRF::from_potentials, py::arg("graph"),
                    py::arg("node_priors"), py::arg("edge_weights"))
        .def_static("from_fields", &PairwiseMRF::from_fields, py::arg("graph"),
                    py::arg("beta"), py::arg("theta"), py::arg("coupling"))
        .def_property_readonly("beta", &PairwiseMRF::beta)
        .def_property_readonly("node_priors", &PairwiseMRF::node_priors)
        .def_property_readonly("theta", &PairwiseMRF::theta_field);

    py::class_<MessageSet>(m, "MessageSet")
        .def_static("uniform", &MessageSet::uniform, py::arg("directed_edges"))
        .def_static("from_mu", &MessageSet::from_mu, py::arg("mu_plus"))
        .def_static("from_nu", &MessageSet::from_nu, py::arg("nu"))
        .def_readonly("mu_plus", &MessageSet::mu_plus)
        .def_readonly("nu", &MessageSet::nu);

    py::class_<LbpResult>(m, "LbpResult")
        .def_readonly("marginal_plus", &LbpResult::marginal_plus)
        .def_readonly("messages", &LbpResult::messages)
        .def_readonly("converged", &LbpResult::converged)
        .def_readonly("iterations", &LbpResult::iterations);

    py::class_<NonBacktracking>(m, "NonBacktracking")
        .def_readonly("matrix", &NonBacktracking::matrix)
        .def_readonly("spectral_radius", &NonBacktracking::spectral_radius);

    m.def("lbp_run", &lbp_run, py::arg("mrf"), py::arg("max_iter") = 1000,
          py::arg("tol") = 1e-12, py::arg("damping") = 0.5);
    m.def("mu_update", &mu_update, py::arg("mrf"), py::arg("messages"));
    m.def("nu_update", &nu_update, py::arg("mrf"), py::arg("messages"));
    m.def("jacobian_at", &jacobian_at, py::arg("mrf"), py::arg("messages"));
    m.def("non_backtracking_matrix", &non_backtracking_matrix, py::arg("graph"));
    m.def("magnetization", &magnetization, py::arg("mrf"), py::arg("messages"));
    m.def("bethe_hessian_nullspace_residual", &bethe_hessian_nullspace_residual,
          py::arg("graph"), py::arg("eta"), py::arg("m"));

    // ---- community ----
    py::class_<Clustering>(m, "Clustering")
        .def(py::init([](std::vector<int> assignment, int k) {
                 Clustering c;
                 c.assignment = std::move(assignment);
                 c.k = k;
                 return c;
             }),
             py::arg("assignment"), py::arg("k"))
        .def_readwrite("assignment", &Clustering::assignment)
        .def_readwrite("k", &Clustering::k);

    m.def("kmeans", &kmeans, py::arg("points"), py::arg("k"), py::arg("seed"),
          py::arg("restarts") = 10, py::arg("max_iter") = 300);
    m.def("spectral_clustering", &spectral_clustering, py::arg("shift"), py::arg("k"),
          py::arg("seed"), py::arg("restarts") = 10);
    m.def("nmi", &nmi, py::arg("a"), py::arg("b"));

    // ---- eval ----
    m.def("auc", &auc, py::arg("scores"), py::arg("is_sybil"));
    m.def("flip_labels", &flip_labels, py::arg("labels"), py::arg("epsilon"),
          py::arg("seed"));

    // ---- datasets ----
    py::class_<Dataset>(m, "Dataset")
        .def_readonly("graph", &Dataset::graph)
        .def_readonly("names", &Dataset::names)
        .def_readonly("communities", &Dataset::communities)
        .def_readonly("benign_communities", &Dataset::benign_communities)
        .def_readonly("is_sybil", &Dataset::is_sybil)
        .def("sample_labels", &Dataset::sample_labels, py::arg("fraction"),
             py::arg("min_count"), py::arg("seed"));

    m.def("load_dataset", &load_dataset, py::arg("edge_path"), py::arg("community_path"),
          py::arg("split_seed") = std::nullopt);
}
