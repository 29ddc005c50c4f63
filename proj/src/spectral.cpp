#include "sybil/spectral.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#ifdef SYBILFILTER_USE_LAPACK
#include <lapacke.h>
#endif

namespace sybil {

namespace {

/// Ascending eigensystem of a dense symmetric matrix (destroys the input).
void symmetric_eigen(Eigen::MatrixXd& m, Eigen::VectorXd& values) {
    const int n = static_cast<int>(m.rows());
    values.resize(n);
#ifdef SYBILFILTER_USE_LAPACK
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, m.data(), n,
                                           values.data());
    if (info != 0) {
        throw numerical_error("dsyevd failed with info=" + std::to_string(info));
    }
#else
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) {
        throw numerical_error("symmetric eigendecomposition failed");
    }
    values = solver.eigenvalues();
    m = solver.eigenvectors();
#endif
}

/// First-nonzero-entry-positive sign convention, for reproducible bases.
void fix_signs(Eigen::MatrixXd& vectors) {
    for (int c = 0; c < vectors.cols(); ++c) {
        auto col = vectors.col(c);
        const double cutoff = 1e-12 * col.cwiseAbs().maxCoeff();
        for (int i = 0; i < col.size(); ++i) {
            if (std::abs(col[i]) > cutoff) {
                if (col[i] < 0.0) col *= -1.0;
                break;
            }
        }
    }
}

}  // namespace

Spectrum eig(const ShiftMatrix& shift) {
    const int n = shift.size();
    if (n > kDenseEigenLimit) {
        throw parameter_error("dense eigendecomposition guarded to n <= " +
                              std::to_string(kDenseEigenLimit));
    }

    Spectrum spec;
    if (n == 0) return spec;

    Eigen::MatrixXd m = Eigen::MatrixXd(shift.matrix);
    if (shift.symmetrizer) {
        // S = diag(sigma) M diag(sigma)^{-1}: recover the symmetric M.
        const Eigen::VectorXd& sigma = *shift.symmetrizer;
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) m(i, j) *= sigma[j] / sigma[i];
        }
    }
    m = 0.5 * (m + m.transpose().eval());  // scrub rounding asymmetry

    symmetric_eigen(m, spec.eigenvalues);
    fix_signs(m);

    if (shift.symmetrizer) {
        const Eigen::VectorXd& sigma = *shift.symmetrizer;
        spec.basis = sigma.asDiagonal() * m;
        spec.inverse_basis = m.transpose() * sigma.cwiseInverse().asDiagonal();
        spec.orthonormal = false;
    } else {
        spec.basis = std::move(m);
        spec.inverse_basis = spec.basis.transpose();
        spec.orthonormal = true;
    }

    // Reconstruction residual against the original (possibly non-symmetric) S.
    const Eigen::MatrixXd residual =
        shift.matrix * spec.basis - spec.basis * spec.eigenvalues.asDiagonal();
    double norm_s = 0.0;
    for (int k = 0; k < shift.matrix.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(shift.matrix, k); it; ++it) {
            norm_s = std::max(norm_s, std::abs(it.value()));
        }
    }
    const double tol = 1e-8 * std::max(1.0, norm_s);
    if (residual.cwiseAbs().maxCoeff() > tol * std::max(1.0, spec.basis.cwiseAbs().maxCoeff())) {
        throw numerical_error("eigendecomposition residual above tolerance");
    }
    return spec;
}

FilterKernel FilterKernel::constant(double value) {
    return FilterKernel(Kind::Constant, value, 0, false);
}

FilterKernel FilterKernel::cia(double alpha) {
    if (alpha < 0.0 || alpha >= 1.0) throw parameter_error("CIA kernel needs alpha in [0, 1)");
    return FilterKernel(Kind::Cia, alpha, 0, false);
}

FilterKernel FilterKernel::sybilrank(int gamma) {
    if (gamma < 0) throw parameter_error("SybilRank kernel needs gamma >= 0");
    return FilterKernel(Kind::SybilRank, 0.0, gamma, false);
}

FilterKernel FilterKernel::inverse(bool pseudo) {
    return FilterKernel(Kind::Inverse, 0.0, 0, pseudo);
}

FilterKernel FilterKernel::ideal_low_pass(double cutoff) {
    return FilterKernel(Kind::IdealLowPass, cutoff, 0, false);
}

FilterKernel FilterKernel::heat(double s) {
    if (s < 0.0) throw parameter_error("heat kernel needs s >= 0");
    return FilterKernel(Kind::Heat, s, 0, false);
}

FilterKernel FilterKernel::custom(std::function<double(double)> h) {
    FilterKernel k(Kind::Custom, 0.0, 0, false);
    k.fn_ = std::move(h);
    return k;
}

double FilterKernel::operator()(double lambda) const {
    switch (kind_) {
        case Kind::Constant: return value_;
        case Kind::Cia: return (1.0 - value_) / (1.0 - value_ * (1.0 - lambda));
        case Kind::SybilRank: return std::pow(1.0 - lambda, gamma_);
        case Kind::Inverse:
            if (lambda == 0.0) return pseudo_ ? 0.0 : std::numeric_limits<double>::infinity();
            return 1.0 / lambda;
        case Kind::IdealLowPass: return lambda <= value_ ? 1.0 : 0.0;
        case Kind::Heat: return std::exp(-value_ * lambda);
        case Kind::Custom: return fn_(lambda);
    }
    return 0.0;
}

bool FilterKernel::singular_at(double lambda, double scale) const {
    const double tol = 1e-12 * std::max(1.0, scale);
    switch (kind_) {
        case Kind::Inverse: return !pseudo_ && std::abs(lambda) <= tol;
        case Kind::Cia:
            // pole of (1-a)/(1 - a(1-lambda)) at lambda = 1 - 1/a (negative for a<1,
            // outside [0,2] shift spectra, but guard anyway)
            return value_ > 0.0 && std::abs(1.0 - value_ * (1.0 - lambda)) <= tol;
        default: return false;
    }
}

Eigen::VectorXd gft(const Spectrum& spec, const Eigen::VectorXd& x) {
    if (x.size() != spec.size()) throw malformed_input_error("gft: dimension mismatch");
    return spec.inverse_basis * x;
}

Eigen::VectorXd igft(const Spectrum& spec, const Eigen::VectorXd& xhat) {
    if (xhat.size() != spec.size()) throw malformed_input_error("igft: dimension mismatch");
    return spec.basis * xhat;
}

Eigen::VectorXd apply_filter(const Spectrum& spec, const FilterKernel& kernel,
                             const Eigen::VectorXd& q) {
    if (q.size() != spec.size()) throw malformed_input_error("apply_filter: dimension mismatch");

    const double scale =
        spec.size() > 0
            ? std::max(std::abs(spec.eigenvalues[0]), std::abs(spec.eigenvalues[spec.size() - 1]))
            : 0.0;
    const double coeff_floor = 1e-12 * q.cwiseAbs().maxCoeff();

    Eigen::VectorXd qhat = spec.inverse_basis * q;
    for (int mu = 0; mu < spec.size(); ++mu) {
        const double lambda = spec.eigenvalues[mu];
        if (kernel.singular_at(lambda, scale)) {
            if (std::abs(qhat[mu]) <= coeff_floor) {
                qhat[mu] = 0.0;  // no weight on the singular mode; drop it
                continue;
            }
            throw singular_filter_error(
                "filter kernel has a pole at eigenvalue " + std::to_string(lambda) +
                    " and the input has weight on that mode",
                lambda);
        }
        const double h = kernel(lambda);
        if (!std::isfinite(h)) {
            throw singular_filter_error(
                "filter kernel not finite at eigenvalue " + std::to_string(lambda), lambda);
        }
        qhat[mu] *= h;
    }
    return spec.basis * qhat;
}

std::vector<double> chebyshev_coeffs(const FilterKernel& kernel, int order,
                                     int quadrature_points) {
    if (order < 0) throw parameter_error("chebyshev order must be >= 0");
    if (quadrature_points < 2) throw parameter_error("need at least 2 quadrature points");

    const int q = quadrature_points;
    const double h = std::numbers::pi / q;
    std::vector<double> fvals(q + 1);
    for (int j = 0; j <= q; ++j) {
        fvals[j] = kernel(std::cos(j * h) + 1.0);
    }
    std::vector<double> coeffs(order + 1);
    for (int k = 0; k <= order; ++k) {
        // trapezoid rule on [0, pi]; the integrand is smooth and the cosine
        // factors make the endpoints exact, so convergence is spectral
        double acc = 0.5 * (fvals[0] + fvals[q] * std::cos(k * std::numbers::pi));
        for (int j = 1; j < q; ++j) acc += fvals[j] * std::cos(k * j * h);
        coeffs[k] = 2.0 / std::numbers::pi * acc * h;
    }
    return coeffs;
}

Eigen::VectorXd chebyshev_apply(const ShiftMatrix& shift, const std::vector<double>& coeffs,
                                const Eigen::VectorXd& q) {
    if (q.size() != shift.size()) {
        throw malformed_input_error("chebyshev_apply: dimension mismatch");
    }
    if (coeffs.empty()) throw parameter_error("chebyshev_apply: empty coefficient vector");
    constexpr double slack = 1e-9;
    if (!shift.spectral_support || shift.spectral_support->first < -slack ||
        shift.spectral_support->second > 2.0 + slack) {
        throw domain_error(
            "chebyshev_apply needs a shift with spectral support within [0, 2]");
    }

    // Shifted recursion: T0 q = q, T1 q = (S - I) q,
    // Tk q = 2 (S - I) T_{k-1} q - T_{k-2} q.
    Eigen::VectorXd result = 0.5 * coeffs[0] * q;
    if (coeffs.size() == 1) return result;

    Eigen::VectorXd t_prev = q;
    Eigen::VectorXd t_cur = shift.matrix * q - q;
    result += coeffs[1] * t_cur;
    for (std::size_t k = 2; k < coeffs.size(); ++k) {
        Eigen::VectorXd t_next = 2.0 * (shift.matrix * t_cur - t_cur) - t_prev;
        result += coeffs[k] * t_next;
        t_prev = std::move(t_cur);
        t_cur = std::move(t_next);
    }
    return result;
}

}  // namespace sybil
