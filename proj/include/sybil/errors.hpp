#pragma once

#include <stdexcept>
#include <string>

namespace sybil {

/// Base class of every error thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad input data: out-of-range node ids, unparsable files, shape mismatches.
struct malformed_input_error : error {
    using error::error;
};

/// A construction needed to invert a degree that is zero (isolated node,
/// edgeless graph).
struct degenerate_degree_error : error {
    using error::error;
};

/// Parameter outside its documented range, or an unknown method id.
struct parameter_error : error {
    using error::error;
};

/// A label budget that cannot be met by the region it draws from.
struct label_budget_error : parameter_error {
    using parameter_error::parameter_error;
};

/// A filter kernel has a pole at an eigenvalue of the shift matrix and the
/// input signal has weight on that mode.
struct singular_filter_error : error {
    singular_filter_error(const std::string& what, double lambda)
        : error(what), eigenvalue(lambda) {}
    double eigenvalue;
};

/// A fixed-point iteration failed to reach tolerance within max_iter.
struct convergence_error : error {
    using error::error;
};

/// A numerical routine produced a result outside its validated tolerance.
struct numerical_error : error {
    using error::error;
};

/// An ideal low-pass cutoff selected no eigenvectors at all.
struct empty_band_error : error {
    using error::error;
};

/// A metric is undefined on the given input (single-class AUC, zero vector).
struct undefined_metric_error : error {
    using error::error;
};

/// Input outside the mathematical domain of the routine (e.g. a shift whose
/// spectrum is not contained in [0,2] handed to the Chebyshev recursion).
struct domain_error : error {
    using error::error;
};

}  // namespace sybil
