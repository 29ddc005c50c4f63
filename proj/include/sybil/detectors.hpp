#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sybil/spectral.hpp"

namespace sybil {

/// Per-node reputation scores plus the direction in which "more Sybil" lies.
struct ScoreVector {
    enum class Orientation { HigherIsSybil, HigherIsBenign };

    Eigen::VectorXd scores;
    Orientation orientation = Orientation::HigherIsSybil;
};

struct DetectorParams {
    double alpha = 0.85;          // CIA restart
    std::optional<int> gamma;     // SybilRank steps; default floor(log n)
    double theta = 0.5;           // SybilSCAR residual prior, in (0, 0.5]
    double s = 8.0;               // heat scale
    std::optional<double> tau;    // regularization; default d_ave
    int cheb_order = 30;          // Chebyshev order K
    double tol = 1e-10;           // fixed-point stop criterion (L-inf)
    int max_iter = 10000;
    int lowpass_fallback_k = 2;   // SybilBelief band when no negative eigenvalue exists
};

/// Default SybilRank step count: floor(log n), natural logarithm.
int sybilrank_gamma(int n);

enum class Form { Iterative, Spectral };
enum class ScarVariant { C, D };
enum class HeatForm { Exact, Chebyshev };

/// Band selection for the ideal low-pass filter over the Bethe-Hessian
/// spectrum. The default keeps the negative eigenvalues (the informative
/// ones sit below zero at the standard r), falling back to the k smallest
/// when none are negative.
struct CutoffRule {
    enum class Kind { NegativeEigenvalues, SmallestK, Threshold };

    Kind kind = Kind::NegativeEigenvalues;
    int k = 2;
    double cutoff = 0.0;

    static CutoffRule negative_eigenvalues(int fallback_k = 2) {
        return {Kind::NegativeEigenvalues, fallback_k, 0.0};
    }
    static CutoffRule smallest_k(int k) { return {Kind::SmallestK, k, 0.0}; }
    static CutoffRule threshold(double cutoff) { return {Kind::Threshold, 0, cutoff}; }
};

/// Random walk with restart from the labeled Sybils; higher is Sybil.
ScoreVector cia(const Graph& g, const LabelSet& labels, const DetectorParams& params = {},
                Form form = Form::Iterative);

/// Early-terminated random walk from the labeled benign nodes with final
/// degree normalization; higher is benign. Exactly gamma steps, no tolerance.
ScoreVector sybilrank(const Graph& g, const LabelSet& labels, const DetectorParams& params = {});

/// Absorbing random walk on the label-augmented graph; higher is Sybil,
/// scores are absorption probabilities in [0, 1].
ScoreVector sybilwalk(const Graph& g, const LabelSet& labels, const DetectorParams& params = {},
                      Form form = Form::Iterative);

/// Residual score propagation with constant (C) or degree-normalized (D)
/// weights. Variant D is numerically degenerate on many graphs; calling it
/// through detect() requires the nonstandard flag.
ScoreVector sybilscar(const Graph& g, const LabelSet& labels, const DetectorParams& params = {},
                      ScarVariant variant = ScarVariant::C, Form form = Form::Iterative);

/// Ideal low-pass filtering of the signed label signal over the
/// Bethe-Hessian spectrum.
ScoreVector sybilbelief_spectral(const Graph& g, const LabelSet& labels,
                                 const DetectorParams& params = {}, CutoffRule rule = {});
ScoreVector sybilbelief_spectral(const Spectrum& bethe_spectrum, const LabelSet& labels,
                                 CutoffRule rule = {});

/// Heat-kernel filtering of the signed label signal over the regularized
/// Laplacian; exact dense form or the O(K |E|) Chebyshev form.
ScoreVector sybilheat(const Graph& g, const LabelSet& labels, const DetectorParams& params = {},
                      HeatForm form = HeatForm::Chebyshev);
ScoreVector sybilheat_exact(const Spectrum& regularized_spectrum, const LabelSet& labels,
                            double s);

/// Uniform dispatch by method id: cia, sybilrank, sybilwalk, sybilscar-c,
/// sybilbelief, sybilheat (and sybilscar-d behind allow_nonstandard).
ScoreVector detect(std::string_view method, const Graph& g, const LabelSet& labels,
                   const DetectorParams& params = {}, bool allow_nonstandard = false);

/// The six standard method ids in canonical order.
const std::vector<std::string>& detector_ids();

}  // namespace sybil
