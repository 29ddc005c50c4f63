#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "sybil/shift.hpp"

namespace sybil {

/// Full eigensystem of a shift matrix: S = basis * diag(eigenvalues) * inverse_basis.
struct Spectrum {
    Eigen::VectorXd eigenvalues;    // ascending
    Eigen::MatrixXd basis;          // V, eigenvectors as columns
    Eigen::MatrixXd inverse_basis;  // V^{-1}; equals V^T for symmetric shifts
    bool orthonormal = false;

    int size() const { return static_cast<int>(eigenvalues.size()); }
};

/// Dense decompositions are guarded to this size; the Chebyshev path is the
/// scalable alternative.
inline constexpr int kDenseEigenLimit = 5000;

/// Dense eigendecomposition. Symmetric kinds use a symmetric solver and set
/// inverse_basis = basis^T. Non-symmetric kinds (random-walk and augmented
/// Laplacians) are solved through their diagonal similarity to a symmetric
/// matrix, so the spectrum is real and the inverse basis is explicit.
/// Throws numerical_error if the reconstruction residual exceeds 1e-8 * |S|.
Spectrum eig(const ShiftMatrix& shift);

/// Filter kernel h(lambda) of one of the named families.
class FilterKernel {
public:
    enum class Kind { Constant, Cia, SybilRank, Inverse, IdealLowPass, Heat, Custom };

    static FilterKernel constant(double value = 1.0);
    static FilterKernel cia(double alpha);           // (1-a) / (1 - a(1-lambda))
    static FilterKernel sybilrank(int gamma);        // (1-lambda)^Gamma
    static FilterKernel inverse(bool pseudo = false);  // 1/lambda; pseudo: h(0) := 0
    static FilterKernel ideal_low_pass(double cutoff);  // 1 iff lambda <= cutoff
    static FilterKernel heat(double s);              // exp(-s lambda), s >= 0
    static FilterKernel custom(std::function<double(double)> h);

    double operator()(double lambda) const;

    /// True when the kernel has a pole at `lambda` (relative to `scale`).
    bool singular_at(double lambda, double scale) const;

    Kind kind() const noexcept { return kind_; }
    double parameter() const noexcept { return value_; }

private:
    FilterKernel(Kind kind, double value, int gamma, bool pseudo)
        : kind_(kind), value_(value), gamma_(gamma), pseudo_(pseudo) {}

    Kind kind_;
    double value_ = 0.0;
    int gamma_ = 0;
    bool pseudo_ = false;
    std::function<double(double)> fn_;
};

/// Graph Fourier transform V^{-1} x and its inverse V xhat.
Eigen::VectorXd gft(const Spectrum& spec, const Eigen::VectorXd& x);
Eigen::VectorXd igft(const Spectrum& spec, const Eigen::VectorXd& xhat);

/// Exact spectral filtering V h(Lambda) V^{-1} q. A kernel pole at an
/// eigenvalue raises singular_filter_error unless the input has no weight on
/// that mode, in which case the mode is dropped.
Eigen::VectorXd apply_filter(const Spectrum& spec, const FilterKernel& kernel,
                             const Eigen::VectorXd& q);

/// Coefficients of the shifted Chebyshev expansion of a kernel on [0, 2]:
/// c_k = (2/pi) Integral_0^pi h(cos t + 1) cos(k t) dt, computed by a
/// trapezoid rule (default 2^13 panels). Returns order+1 values.
std::vector<double> chebyshev_coeffs(const FilterKernel& kernel, int order,
                                     int quadrature_points = 8192);

/// h(S) q via the shifted three-term recursion, using only sparse
/// matrix-vector products; requires the shift's spectral support within [0, 2].
Eigen::VectorXd chebyshev_apply(const ShiftMatrix& shift, const std::vector<double>& coeffs,
                                const Eigen::VectorXd& q);

}  // namespace sybil
