#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace pjflow {

enum class ErrorKind {
    invalid_input,
    monotonicity,
    domain_mismatch,
    out_of_image,
    blow_up,
    no_blow_up,
    off_sphere,
    tangency,
    boundary,
    shock,
    insufficient_data,
    unsupported,
    config,
    io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised when samples that must be strictly increasing (or strictly
/// positive, for derivative samples) are not. Carries the first bad index.
class MonotonicityError : public Error {
public:
    MonotonicityError(std::size_t index, const std::string& what)
        : Error(ErrorKind::monotonicity, what), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// A requested time lies at or beyond the first time the flow leaves the
/// diffeomorphism group.
class BlowUpError : public Error {
public:
    BlowUpError(double blowup_time, const std::string& what,
                ErrorKind kind = ErrorKind::blow_up)
        : Error(kind, what), blowup_time_(blowup_time) {}

    double blowup_time() const noexcept { return blowup_time_; }

private:
    double blowup_time_;
};

}  // namespace pjflow
