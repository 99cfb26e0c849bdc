#include "pjflow/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <omp.h>

#include "pjflow/errors.hpp"

namespace pjflow {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_input: return "invalid-input";
        case ErrorKind::monotonicity: return "monotonicity-violation";
        case ErrorKind::domain_mismatch: return "domain-mismatch";
        case ErrorKind::out_of_image: return "out-of-image";
        case ErrorKind::blow_up: return "blow-up";
        case ErrorKind::no_blow_up: return "no-blow-up";
        case ErrorKind::off_sphere: return "off-sphere";
        case ErrorKind::tangency: return "tangency";
        case ErrorKind::boundary: return "boundary";
        case ErrorKind::shock: return "shock";
        case ErrorKind::insufficient_data: return "insufficient-data";
        case ErrorKind::unsupported: return "unsupported";
        case ErrorKind::config: return "config";
        case ErrorKind::io: return "io";
    }
    return "unknown";
}

namespace {
int g_thread_limit = 0;
}

void set_thread_limit(int threads) {
    g_thread_limit = threads > 0 ? threads : 0;
    if (g_thread_limit > 0) omp_set_num_threads(g_thread_limit);
}

int thread_limit() { return g_thread_limit > 0 ? g_thread_limit : omp_get_max_threads(); }

// ---------------------------------------------------------------------------
// Domain / GridFunction

Domain Domain::line(double a, double b) {
    if (!(std::isfinite(a) && std::isfinite(b)) || !(b > a)) {
        throw Error(ErrorKind::invalid_input, "line window requires finite a < b");
    }
    return Domain(Kind::line, a, b);
}

Domain Domain::circle() { return Domain(Kind::circle, 0.0, 1.0); }

double Domain::spacing(std::size_t n) const {
    return is_line() ? (b_ - a_) / static_cast<double>(n - 1) : 1.0 / static_cast<double>(n);
}

double Domain::node(std::size_t i, std::size_t n) const {
    if (is_circle()) return static_cast<double>(i) / static_cast<double>(n);
    if (i + 1 == n) return b_;
    return a_ + (b_ - a_) * (static_cast<double>(i) / static_cast<double>(n - 1));
}

GridFunction::GridFunction(Domain domain, std::vector<double> values)
    : domain_(domain), values_(std::move(values)) {
    if (values_.size() < 4) {
        throw Error(ErrorKind::invalid_input, "grid functions need at least 4 samples");
    }
}

GridFunction GridFunction::sample(Domain domain, std::size_t n,
                                  const std::function<double(double)>& fn) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = fn(domain.node(i, n));
    return GridFunction(domain, std::move(v));
}

GridFunction GridFunction::constant(Domain domain, std::size_t n, double value) {
    return GridFunction(domain, std::vector<double>(n, value));
}

std::vector<double> GridFunction::nodes() const {
    std::vector<double> x(size());
    for (std::size_t i = 0; i < size(); ++i) x[i] = this->x(i);
    return x;
}

GridFunction GridFunction::with_values(std::vector<double> values) const {
    if (values.size() != values_.size()) {
        throw Error(ErrorKind::domain_mismatch, "sample count differs from grid");
    }
    return GridFunction(domain_, std::move(values));
}

// ---------------------------------------------------------------------------
// Quadrature

namespace {

double weighted_sum(const Domain& domain, std::span<const double> w, QuadratureRule rule) {
    const std::size_t n = w.size();
    const double h = domain.spacing(n);
    if (domain.is_circle()) {
        if (rule == QuadratureRule::simpson) {
            if (n % 2 != 0) {
                throw Error(ErrorKind::invalid_input, "periodic simpson requires even n");
            }
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += (i % 2 == 0 ? 2.0 : 4.0) * w[i];
            return s * h / 3.0;
        }
        double s = 0.0;
        for (double v : w) s += v;
        return s * h;
    }
    if (rule == QuadratureRule::simpson) {
        if (n % 2 == 0) throw Error(ErrorKind::invalid_input, "simpson requires odd n on a line");
        double s = w[0] + w[n - 1];
        for (std::size_t i = 1; i + 1 < n; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * w[i];
        return s * h / 3.0;
    }
    double s = 0.5 * (w[0] + w[n - 1]);
    for (std::size_t i = 1; i + 1 < n; ++i) s += w[i];
    return s * h;
}

void require_finite(const GridFunction& f, const char* op) {
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!std::isfinite(f[i])) {
            std::ostringstream msg;
            msg << op << ": non-finite sample at index " << i;
            throw Error(ErrorKind::invalid_input, msg.str());
        }
    }
}

}  // namespace

double integrate(const GridFunction& f, QuadratureRule rule) {
    require_finite(f, "integrate");
    return weighted_sum(f.domain(), f.values(), rule);
}

double lp_norm(const GridFunction& f, double r, QuadratureRule rule) {
    if (std::isnan(r) || r < 1.0) throw Error(ErrorKind::invalid_input, "lp_norm requires r >= 1");
    require_finite(f, "lp_norm");
    double peak = 0.0;
    for (double v : f.values()) peak = std::max(peak, std::abs(v));
    if (std::isinf(r) || peak == 0.0) return peak;
    // Scale by the peak so large r cannot overflow.
    std::vector<double> w(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) w[i] = std::pow(std::abs(f[i]) / peak, r);
    return peak * std::pow(weighted_sum(f.domain(), w, rule), 1.0 / r);
}

// ---------------------------------------------------------------------------
// Differentiation

GridFunction derivative(const GridFunction& f) {
    const std::size_t n = f.size();
    const double h = f.spacing();
    const auto v = f.values();
    std::vector<double> d(n);
    if (f.domain().is_circle()) {
        for (std::size_t i = 0; i < n; ++i) {
            d[i] = (v[(i + 1) % n] - v[(i + n - 1) % n]) / (2.0 * h);
        }
        return f.with_values(std::move(d));
    }
    d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    return f.with_values(std::move(d));
}

std::vector<double> derivative_fourth_order(const GridFunction& f) {
    const std::size_t n = f.size();
    const double h = f.spacing();
    const auto v = f.values();
    std::vector<double> d(n);
    if (f.domain().is_circle()) {
        for (std::size_t i = 0; i < n; ++i) {
            const double m2 = v[(i + n - 2) % n], m1 = v[(i + n - 1) % n];
            const double p1 = v[(i + 1) % n], p2 = v[(i + 2) % n];
            d[i] = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
        }
        return d;
    }
    if (n < 5) {
        const auto second = derivative(f);
        return {second.values().begin(), second.values().end()};
    }
    d[0] = (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]) / (12.0 * h);
    d[1] = (-3.0 * v[0] - 10.0 * v[1] + 18.0 * v[2] - 6.0 * v[3] + v[4]) / (12.0 * h);
    for (std::size_t i = 2; i + 2 < n; ++i) {
        d[i] = (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * h);
    }
    const std::size_t e = n - 1;
    d[e - 1] = (3.0 * v[e] + 10.0 * v[e - 1] - 18.0 * v[e - 2] + 6.0 * v[e - 3] - v[e - 4]) / (12.0 * h);
    d[e] = (25.0 * v[e] - 48.0 * v[e - 1] + 36.0 * v[e - 2] - 16.0 * v[e - 3] + 3.0 * v[e - 4]) /
           (12.0 * h);
    return d;
}

// ---------------------------------------------------------------------------
// Cumulative integrals

namespace {

// Integral over cell [x_i, x_{i+1}] for a line grid.
double cell_integral(std::span<const double> v, std::size_t i, double h, QuadratureRule rule) {
    if (rule == QuadratureRule::trapezoid) return 0.5 * h * (v[i] + v[i + 1]);
    const std::size_t n = v.size();
    if (i == 0) return h / 24.0 * (9.0 * v[0] + 19.0 * v[1] - 5.0 * v[2] + v[3]);
    if (i + 2 == n) {
        return h / 24.0 * (v[n - 4] - 5.0 * v[n - 3] + 19.0 * v[n - 2] + 9.0 * v[n - 1]);
    }
    return h / 24.0 * (-v[i - 1] + 13.0 * v[i] + 13.0 * v[i + 1] - v[i + 2]);
}

}  // namespace

GridFunction cumulative_integral(const GridFunction& f, QuadratureRule rule) {
    if (!f.domain().is_line()) {
        throw Error(ErrorKind::unsupported,
                    "cumulative_integral needs a line window; use cumulative_integral_periodic");
    }
    const auto v = f.values();
    const double h = f.spacing();
    std::vector<double> out(f.size());
    out[0] = 0.0;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) out[i + 1] = out[i] + cell_integral(v, i, h, rule);
    return f.with_values(std::move(out));
}

std::vector<double> cumulative_integral_periodic(const GridFunction& f, QuadratureRule rule) {
    if (!f.domain().is_circle()) {
        throw Error(ErrorKind::unsupported, "cumulative_integral_periodic needs a circle grid");
    }
    const std::size_t n = f.size();
    const double h = f.spacing();
    const auto v = f.values();
    auto at = [&](std::ptrdiff_t i) {
        const auto m = static_cast<std::ptrdiff_t>(n);
        return v[static_cast<std::size_t>(((i % m) + m) % m)];
    };
    std::vector<double> out(n + 1);
    out[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::ptrdiff_t>(i);
        const double cell = rule == QuadratureRule::trapezoid
                                ? 0.5 * h * (at(k) + at(k + 1))
                                : h / 24.0 * (-at(k - 1) + 13.0 * at(k) + 13.0 * at(k + 1) - at(k + 2));
        out[i + 1] = out[i] + cell;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Interpolation

HermiteInterpolant::HermiteInterpolant(std::vector<double> nodes, std::vector<double> values,
                                       std::vector<double> slopes, bool monotone)
    : nodes_(std::move(nodes)), values_(std::move(values)), slopes_(std::move(slopes)) {
    const std::size_t n = nodes_.size();
    if (n < 2 || values_.size() != n || slopes_.size() != n) {
        throw Error(ErrorKind::invalid_input, "interpolant needs matching node/value/slope arrays");
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!(nodes_[i + 1] > nodes_[i])) {
            throw MonotonicityError(i, "interpolation nodes must be strictly increasing");
        }
    }
    if (!monotone) return;
    // Fritsch-Carlson limiter.
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double d = (values_[k + 1] - values_[k]) / (nodes_[k + 1] - nodes_[k]);
        if (d == 0.0) {
            slopes_[k] = slopes_[k + 1] = 0.0;
            continue;
        }
        double alpha = slopes_[k] / d;
        double beta = slopes_[k + 1] / d;
        if (alpha < 0.0) { slopes_[k] = 0.0; alpha = 0.0; }
        if (beta < 0.0) { slopes_[k + 1] = 0.0; beta = 0.0; }
        const double s = alpha * alpha + beta * beta;
        if (s > 9.0) {
            const double tau = 3.0 / std::sqrt(s);
            slopes_[k] = tau * alpha * d;
            slopes_[k + 1] = tau * beta * d;
        }
    }
}

double HermiteInterpolant::operator()(double x) const {
    const std::size_t n = nodes_.size();
    if (x <= nodes_.front()) return values_.front() + slopes_.front() * (x - nodes_.front());
    if (x >= nodes_.back()) return values_.back() + slopes_.back() * (x - nodes_.back());
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    std::size_t k = static_cast<std::size_t>(it - nodes_.begin()) - 1;
    k = std::min(k, n - 2);
    const double H = nodes_[k + 1] - nodes_[k];
    const double t = (x - nodes_[k]) / H;
    const double omt = 1.0 - t;
    const double h00 = (1.0 + 2.0 * t) * omt * omt;
    const double h10 = t * omt * omt;
    const double h01 = t * t * (3.0 - 2.0 * t);
    const double h11 = t * t * (t - 1.0);
    return h00 * values_[k] + h10 * H * slopes_[k] + h01 * values_[k + 1] + h11 * H * slopes_[k + 1];
}

HermiteInterpolant make_interpolant(const GridFunction& f, bool monotone) {
    auto slopes = derivative_fourth_order(f);
    const auto v = f.values();
    if (f.domain().is_line()) {
        return HermiteInterpolant(f.nodes(), {v.begin(), v.end()}, std::move(slopes), monotone);
    }
    // Circle: close the period with the x = 1 copy of the first sample.
    auto x = f.nodes();
    x.push_back(1.0);
    std::vector<double> vals(v.begin(), v.end());
    vals.push_back(v[0]);
    slopes.push_back(slopes[0]);
    return HermiteInterpolant(std::move(x), std::move(vals), std::move(slopes), monotone);
}

namespace {

std::size_t first_non_increasing(std::span<const double> v) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (!(v[i + 1] > v[i])) return i;
    }
    return v.size();
}

GridFunction invert_with_slopes(const GridFunction& phi, std::vector<double> inv_slopes) {
    const auto v = phi.values();
    const std::size_t n = phi.size();
    HermiteInterpolant inverse({v.begin(), v.end()}, phi.nodes(), std::move(inv_slopes), true);
    const Domain image = Domain::line(v[0], v[n - 1]);
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = inverse(image.node(j, n));
    return GridFunction(image, std::move(out));
}

void require_increasing(const GridFunction& phi) {
    if (!phi.domain().is_line()) {
        throw Error(ErrorKind::unsupported, "invert_monotone works on line windows");
    }
    const std::size_t bad = first_non_increasing(phi.values());
    if (bad < phi.size()) {
        std::ostringstream msg;
        msg << "samples not strictly increasing at index " << bad;
        throw MonotonicityError(bad, msg.str());
    }
}

}  // namespace

GridFunction invert_monotone(const GridFunction& phi) {
    require_increasing(phi);
    const auto v = phi.values();
    const std::size_t n = phi.size();
    const double h = phi.spacing();
    auto d = derivative_fourth_order(phi);
    std::vector<double> inv(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = d[i];
        if (!(s > 0.0)) {
            // Fall back to the harmonic mean of the neighbouring secants.
            const double left = i > 0 ? (v[i] - v[i - 1]) / h : (v[1] - v[0]) / h;
            const double right = i + 1 < n ? (v[i + 1] - v[i]) / h : left;
            s = 2.0 * left * right / (left + right);
        }
        inv[i] = 1.0 / s;
    }
    return invert_with_slopes(phi, std::move(inv));
}

GridFunction invert_monotone(const GridFunction& phi, std::span<const double> phi_x) {
    require_increasing(phi);
    if (phi_x.size() != phi.size()) {
        throw Error(ErrorKind::domain_mismatch, "derivative samples must match the grid");
    }
    std::vector<double> inv(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) {
        if (!(phi_x[i] > 0.0)) {
            throw MonotonicityError(i, "derivative samples must be strictly positive");
        }
        inv[i] = 1.0 / phi_x[i];
    }
    return invert_with_slopes(phi, std::move(inv));
}

GridFunction compose(const GridFunction& f, const GridFunction& phi) {
    if (f.domain().kind() != phi.domain().kind()) {
        throw Error(ErrorKind::domain_mismatch, "compose needs the same grid family");
    }
    const auto interp = make_interpolant(f);
    std::vector<double> out(phi.size());
    if (f.domain().is_circle()) {
        for (std::size_t i = 0; i < phi.size(); ++i) out[i] = interp(phi[i] - std::floor(phi[i]));
        return phi.with_values(std::move(out));
    }
    const double a = f.domain().a(), b = f.domain().b();
    const double pad = 1e-9 * (b - a);
    for (std::size_t i = 0; i < phi.size(); ++i) {
        const double y = phi[i];
        if (!(y >= a - pad && y <= b + pad)) {
            std::ostringstream msg;
            msg << "compose: phi(x_" << i << ") = " << y << " outside [" << a << ", " << b << "]";
            throw Error(ErrorKind::domain_mismatch, msg.str());
        }
        out[i] = interp(std::clamp(y, a, b));
    }
    return phi.with_values(std::move(out));
}

double evaluate(const GridFunction& f, double x) {
    const auto interp = make_interpolant(f);
    if (f.domain().is_circle()) return interp(x - std::floor(x));
    return interp(x);
}

double max_abs_diff(const GridFunction& f, const GridFunction& g) {
    if (f.size() != g.size()) throw Error(ErrorKind::domain_mismatch, "sample counts differ");
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i] - g[i]));
    return m;
}

}  // namespace pjflow
