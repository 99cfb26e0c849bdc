#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "pjflow/errors.hpp"

namespace pjflow {

/// The metric exponent r: any nonzero real, or +infinity. Equivalently the
/// Proudman-Johnson parameter lambda = 1/r (lambda = 0 for r = inf).
class Exponent {
public:
    static Exponent from_r(double r) {
        if (std::isnan(r) || r == 0.0 || r == -std::numeric_limits<double>::infinity()) {
            throw Error(ErrorKind::invalid_input, "exponent r must be nonzero (or +inf)");
        }
        return Exponent(r);
    }
    static Exponent from_lambda(double lambda) {
        if (!std::isfinite(lambda)) throw Error(ErrorKind::invalid_input, "lambda must be finite");
        return Exponent(lambda == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / lambda);
    }
    static Exponent infinity() { return Exponent(std::numeric_limits<double>::infinity()); }

    double r() const noexcept { return r_; }
    double lambda() const noexcept { return is_infinite() ? 0.0 : 1.0 / r_; }
    bool is_infinite() const noexcept { return std::isinf(r_); }
    /// r >= 1: the Finsler (normed) range where the isometry statements hold.
    bool is_finsler() const noexcept { return r_ >= 1.0; }

    bool operator==(const Exponent&) const = default;

private:
    explicit Exponent(double r) : r_(r) {}
    double r_;
};

std::string format_exponent(const Exponent& e);

}  // namespace pjflow
