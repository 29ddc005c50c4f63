#include "sybil/detectors.hpp"

#include <cmath>
#include <iostream>

namespace sybil {

int sybilrank_gamma(int n) {
    if (n < 1) throw parameter_error("sybilrank_gamma needs n >= 1");
    return std::max(1, static_cast<int>(std::floor(std::log(static_cast<double>(n)))));
}

namespace {

LabelSet checked_labels(const Graph& g, const LabelSet& labels) {
    LabelSet out = labels;
    out.validate(g.node_count());
    return out;
}

/// y = A D^{-1} x over the adjacency lists.
Eigen::VectorXd column_stochastic_step(const Graph& g, const std::vector<int>& deg,
                                       const Eigen::VectorXd& x) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(x.size());
    for (int i = 0; i < g.node_count(); ++i) {
        double acc = 0.0;
        for (int j : g.neighbors(i)) acc += x[j] / deg[j];
        y[i] = acc;
    }
    return y;
}

std::vector<int> positive_degrees(const Graph& g, const char* who) {
    std::vector<int> deg(g.node_count());
    for (int i = 0; i < g.node_count(); ++i) {
        deg[i] = g.degree(i);
        if (deg[i] == 0) {
            throw degenerate_degree_error(std::string(who) +
                                          " requires a graph without isolated nodes");
        }
    }
    return deg;
}

Eigen::VectorXd signed_prior(int n, const LabelSet& labels, double magnitude) {
    Eigen::VectorXd q = Eigen::VectorXd::Zero(n);
    for (int i : labels.sybil) q[i] = magnitude;
    for (int i : labels.benign) q[i] = -magnitude;
    return q;
}

}  // namespace

ScoreVector cia(const Graph& g, const LabelSet& labels, const DetectorParams& params,
                Form form) {
    const LabelSet lab = checked_labels(g, labels);
    if (lab.sybil.empty()) throw parameter_error("CIA needs at least one labeled Sybil");
    if (params.alpha < 0.0 || params.alpha >= 1.0) {
        throw parameter_error("CIA restart parameter must lie in [0, 1)");
    }
    const auto deg = positive_degrees(g, "CIA");
    const int n = g.node_count();

    Eigen::VectorXd q = Eigen::VectorXd::Zero(n);
    for (int i : lab.sybil) q[i] = 1.0;

    if (form == Form::Spectral) {
        const Spectrum spec = eig(build_shift(g, ShiftKind::RandomWalkLaplacian));
        return {apply_filter(spec, FilterKernel::cia(params.alpha), q),
                ScoreVector::Orientation::HigherIsSybil};
    }

    Eigen::VectorXd p = q;
    for (int iter = 0; iter < params.max_iter; ++iter) {
        Eigen::VectorXd next =
            params.alpha * column_stochastic_step(g, deg, p) + (1.0 - params.alpha) * q;
        const double diff = (next - p).cwiseAbs().maxCoeff();
        p = std::move(next);
        if (diff < params.tol) {
            return {std::move(p), ScoreVector::Orientation::HigherIsSybil};
        }
    }
    throw convergence_error("CIA did not converge within max_iter");
}

ScoreVector sybilrank(const Graph& g, const LabelSet& labels, const DetectorParams& params) {
    const LabelSet lab = checked_labels(g, labels);
    if (lab.benign.empty()) throw parameter_error("SybilRank needs at least one labeled benign");
    const int gamma = params.gamma ? *params.gamma : sybilrank_gamma(g.node_count());
    if (gamma < 0) throw parameter_error("SybilRank needs gamma >= 0");
    const auto deg = positive_degrees(g, "SybilRank");

    Eigen::VectorXd p = Eigen::VectorXd::Zero(g.node_count());
    const double init = 1.0 / static_cast<double>(lab.benign.size());
    for (int i : lab.benign) p[i] = init;

    // Exactly gamma propagation steps; early termination is the method.
    for (int t = 0; t < gamma; ++t) p = column_stochastic_step(g, deg, p);
    for (int i = 0; i < g.node_count(); ++i) p[i] /= deg[i];
    return {std::move(p), ScoreVector::Orientation::HigherIsBenign};
}

ScoreVector sybilwalk(const Graph& g, const LabelSet& labels, const DetectorParams& params,
                      Form form) {
    const LabelSet lab = checked_labels(g, labels);
    if (lab.sybil.empty() || lab.benign.empty()) {
        throw parameter_error("SybilWalk needs labeled nodes on both sides");
    }
    const int n = g.node_count();

    {
        auto [comp, count] = connected_components(g);
        if (count > 1) {
            std::vector<bool> reached(count, false);
            for (int i : lab.sybil) reached[comp[i]] = true;
            for (int i : lab.benign) reached[comp[i]] = true;
            for (int c = 0; c < count; ++c) {
                if (!reached[c]) {
                    std::cerr << "sybilwalk: component " << c
                              << " cannot reach either label node; its scores are "
                                 "ill-posed and resolve to 0\n";
                    break;
                }
            }
        }
    }

    std::vector<double> dhat(n);
    std::vector<bool> is_sybil_label(n, false), is_benign_label(n, false);
    for (int i = 0; i < n; ++i) dhat[i] = g.degree(i);
    for (int i : lab.sybil) {
        dhat[i] += 1.0;
        is_sybil_label[i] = true;
    }
    for (int i : lab.benign) {
        dhat[i] += 1.0;
        is_benign_label[i] = true;
    }
    for (int i = 0; i < n; ++i) {
        if (dhat[i] == 0.0) {
            throw degenerate_degree_error("SybilWalk: node " + std::to_string(i) +
                                          " is isolated and unlabeled");
        }
    }

    if (form == Form::Spectral) {
        Eigen::VectorXd q_s = Eigen::VectorXd::Zero(n);
        for (int i : lab.sybil) q_s[i] = 1.0 / dhat[i];
        const Spectrum spec =
            eig(build_shift(g, ShiftKind::AugmentedNormalizedLaplacian, &lab));
        return {apply_filter(spec, FilterKernel::inverse(), q_s),
                ScoreVector::Orientation::HigherIsSybil};
    }

    // Absorbing chain on the augmented graph with p(l_s) = 1, p(l_b) = 0.
    Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
    for (int iter = 0; iter < params.max_iter; ++iter) {
        double diff = 0.0;
        Eigen::VectorXd next(n);
        for (int i = 0; i < n; ++i) {
            double acc = is_sybil_label[i] ? 1.0 : 0.0;  // edge to l_s carries score 1
            for (int j : g.neighbors(i)) acc += p[j];
            next[i] = acc / dhat[i];
            diff = std::max(diff, std::abs(next[i] - p[i]));
        }
        p = std::move(next);
        if (diff < params.tol) {
            return {std::move(p), ScoreVector::Orientation::HigherIsSybil};
        }
    }
    throw convergence_error("SybilWalk did not converge within max_iter");
}

ScoreVector sybilscar(const Graph& g, const LabelSet& labels, const DetectorParams& params,
                      ScarVariant variant, Form form) {
    const LabelSet lab = checked_labels(g, labels);
    if (params.theta <= 0.0 || params.theta > 0.5) {
        throw parameter_error("SybilSCAR residual prior theta must lie in (0, 0.5]");
    }
    const int n = g.node_count();
    const Eigen::VectorXd q = signed_prior(n, lab, params.theta);

    if (form == Form::Spectral) {
        const ShiftMatrix shift =
            variant == ScarVariant::C ? build_shift(g, ShiftKind::MaxDegreeLaplacian)
                                      : build_shift(g, ShiftKind::RandomWalkLaplacian);
        const Spectrum spec = eig(shift);
        Eigen::VectorXd p = apply_filter(spec, FilterKernel::inverse(), q);
        p.array() += 0.5;
        return {std::move(p), ScoreVector::Orientation::HigherIsSybil};
    }

    const DegreeVector deg = degrees(g);
    if (deg.d_max == 0 && variant == ScarVariant::C) {
        throw degenerate_degree_error("SybilSCAR-C on an edgeless graph");
    }
    std::vector<int> d;
    if (variant == ScarVariant::D) d = positive_degrees(g, "SybilSCAR-D");

    // p_res <- 2 W p_res + q with 2W = A/d_max (C) or A D^{-1} (D).
    Eigen::VectorXd p = q;
    for (int iter = 0; iter < params.max_iter; ++iter) {
        Eigen::VectorXd next(n);
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            if (variant == ScarVariant::C) {
                for (int j : g.neighbors(i)) acc += p[j];
                acc /= deg.d_max;
            } else {
                for (int j : g.neighbors(i)) acc += p[j] / d[j];
            }
            next[i] = acc + q[i];
        }
        const double diff = (next - p).cwiseAbs().maxCoeff();
        p = std::move(next);
        if (diff < params.tol) {
            p.array() += 0.5;
            return {std::move(p), ScoreVector::Orientation::HigherIsSybil};
        }
    }
    throw convergence_error("SybilSCAR did not converge within max_iter");
}

ScoreVector sybilbelief_spectral(const Graph& g, const LabelSet& labels,
                                 const DetectorParams& params, CutoffRule rule) {
    const LabelSet lab = checked_labels(g, labels);
    const Spectrum spec = eig(build_shift(g, ShiftKind::BetheHessian));
    if (rule.kind == CutoffRule::Kind::NegativeEigenvalues) {
        rule.k = params.lowpass_fallback_k;
    }
    return sybilbelief_spectral(spec, lab, rule);
}

ScoreVector sybilbelief_spectral(const Spectrum& bethe_spectrum, const LabelSet& labels,
                                 CutoffRule rule) {
    const int n = bethe_spectrum.size();
    const Eigen::VectorXd q = signed_prior(n, labels, 1.0);

    int band = 0;  // eigenvalues are ascending, so a band is always a prefix
    switch (rule.kind) {
        case CutoffRule::Kind::NegativeEigenvalues:
            while (band < n && bethe_spectrum.eigenvalues[band] < 0.0) ++band;
            if (band == 0) band = std::min(rule.k, n);  // fallback band
            break;
        case CutoffRule::Kind::SmallestK:
            band = std::min(rule.k, n);
            break;
        case CutoffRule::Kind::Threshold:
            while (band < n && bethe_spectrum.eigenvalues[band] <= rule.cutoff) ++band;
            break;
    }
    if (band <= 0) {
        throw empty_band_error("ideal low-pass cutoff selected no eigenvectors");
    }

    const auto kept = bethe_spectrum.basis.leftCols(band);
    const auto kept_inv = bethe_spectrum.inverse_basis.topRows(band);
    return {kept * (kept_inv * q), ScoreVector::Orientation::HigherIsSybil};
}

ScoreVector sybilheat(const Graph& g, const LabelSet& labels, const DetectorParams& params,
                      HeatForm form) {
    const LabelSet lab = checked_labels(g, labels);
    if (params.s < 0.0) throw parameter_error("SybilHeat needs s >= 0");
    const ShiftMatrix shift =
        build_shift(g, ShiftKind::RegularizedLaplacian, nullptr, params.tau);

    if (form == HeatForm::Exact) {
        return sybilheat_exact(eig(shift), lab, params.s);
    }
    const Eigen::VectorXd q = signed_prior(g.node_count(), lab, 1.0);
    const auto coeffs = chebyshev_coeffs(FilterKernel::heat(params.s), params.cheb_order);
    return {chebyshev_apply(shift, coeffs, q), ScoreVector::Orientation::HigherIsSybil};
}

ScoreVector sybilheat_exact(const Spectrum& regularized_spectrum, const LabelSet& labels,
                            double s) {
    if (s < 0.0) throw parameter_error("SybilHeat needs s >= 0");
    const Eigen::VectorXd q = signed_prior(regularized_spectrum.size(), labels, 1.0);
    return {apply_filter(regularized_spectrum, FilterKernel::heat(s), q),
            ScoreVector::Orientation::HigherIsSybil};
}

const std::vector<std::string>& detector_ids() {
    static const std::vector<std::string> ids = {"cia",         "sybilrank",  "sybilwalk",
                                                 "sybilscar-c", "sybilbelief", "sybilheat"};
    return ids;
}

ScoreVector detect(std::string_view method, const Graph& g, const LabelSet& labels,
                   const DetectorParams& params, bool allow_nonstandard) {
    if (method == "cia") return cia(g, labels, params);
    if (method == "sybilrank") return sybilrank(g, labels, params);
    if (method == "sybilwalk") return sybilwalk(g, labels, params);
    if (method == "sybilscar-c") return sybilscar(g, labels, params, ScarVariant::C);
    if (method == "sybilscar-d") {
        if (!allow_nonstandard) {
            throw parameter_error(
                "sybilscar-d is excluded from standard runs (its convergence is not "
                "stable); pass the nonstandard flag to run it anyway");
        }
        return sybilscar(g, labels, params, ScarVariant::D);
    }
    if (method == "sybilbelief") return sybilbelief_spectral(g, labels, params);
    if (method == "sybilheat") return sybilheat(g, labels, params);
    throw parameter_error("unknown method id: " + std::string(method));
}

}  // namespace sybil
