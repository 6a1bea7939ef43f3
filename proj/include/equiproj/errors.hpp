#pragma once

#include <stdexcept>
#include <string>

namespace equiproj {

/// Base class for every error this library throws on purpose.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operand shapes are incompatible (matrix products, vec/unvec, cells, ...).
struct shape_error : error {
    using error::error;
};

/// Input violates a value precondition (non-finite entries, bad ranges,
/// malformed group descriptions, unnormalized probability vectors, ...).
struct invalid_input_error : error {
    using error::error;
};

/// A matrix that must be normal (commute with its transpose) is not.
/// The message always carries the measured commutator norm.
struct not_normal_error : error {
    using error::error;
};

/// A denominator that the math requires to be positive is (numerically) zero:
/// zero-norm inputs to the relative error metric, zero-norm points of the
/// synthetic invariant-regression target, and the like.
struct degenerate_input_error : error {
    using error::error;
};

/// A size guard was exceeded (dense materialization of an operator that is
/// only intended for cross-checks at small sizes).
struct size_guard_error : error {
    using error::error;
};

/// Two computation routes that must agree disagreed beyond tolerance — an
/// internal cross-check failed, not a user input problem.
struct consistency_error : error {
    using error::error;
};

/// File I/O or file-format violation.
struct io_error : error {
    using error::error;
};

} // namespace equiproj
