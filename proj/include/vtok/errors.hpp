#ifndef VTOK_ERRORS_HPP
#define VTOK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vtok {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid values, violated invariants, infeasible parameters. CLI exit code 1.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A value outside its admissible interval (e.g. t > D).
class RangeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Feature vector with (near-)zero norm; cosine similarity undefined.
class DegenerateFeatureError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Pooling stride does not divide the feature-map dimensions.
class PoolingShapeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// An external scorer failed or broke its contract.
class PipelineError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Malformed or truncated on-disk data. CLI exit code 2.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Filesystem-level failure (open/read/write/rename). CLI exit code 2.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace vtok

#endif
