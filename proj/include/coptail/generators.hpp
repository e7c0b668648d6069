#ifndef COPTAIL_GENERATORS_HPP
#define COPTAIL_GENERATORS_HPP

#include <climits>
#include <cmath>
#include <string>
#include <type_traits>

#include "coptail/errors.hpp"
#include "coptail/precision.hpp"

namespace coptail {

namespace sg {

// Scalar-generic elementary functions; unqualified calls resolve through ADL
// for the multiprecision types.
template <class R> R exp_(const R& x) { using std::exp; return exp(x); }
template <class R> R log_(const R& x) { using std::log; return log(x); }
template <class R> R pow_(const R& x, const R& y) { using std::pow; return pow(x, y); }
template <class R> R sqrt_(const R& x) { using std::sqrt; return sqrt(x); }
template <class R> R fabs_(const R& x) { using std::fabs; return fabs(x); }

template <class R> R log1p_(const R& x) {
    if constexpr (std::is_same_v<R, double>) return std::log1p(x);
    else { using std::log; return log(R(1) + x); }
}
template <class R> R expm1_(const R& x) {
    if constexpr (std::is_same_v<R, double>) return std::expm1(x);
    else { using std::exp; return exp(x) - R(1); }
}

} // namespace sg

enum class generator_family {
    independence, // phi(t) = -log t
    clayton,      // phi(t) = (t^-theta - 1)/theta,            theta > 0
    frank,        // phi(t) = -log((e^-theta t - 1)/(e^-theta - 1)), theta > 0
    amh,          // phi(t) = log((1 - theta(1-t))/t),         theta in (0,1)
    gumbel,       // phi(t) = (-log t)^theta,                  theta >= 1
    log_generator,// phi(t) = (1-t)/(-log(1-t))^theta,         theta > 0
    acig          // Laplace transform of an inverse-Gamma(alpha) frailty
};

inline std::string family_name(generator_family f) {
    switch (f) {
        case generator_family::independence: return "independence";
        case generator_family::clayton: return "clayton";
        case generator_family::frank: return "frank";
        case generator_family::amh: return "amh";
        case generator_family::gumbel: return "gumbel";
        case generator_family::log_generator: return "log-generator";
        case generator_family::acig: return "acig";
    }
    return "?";
}

namespace detail {

// phi_inv for the acig family: E[exp(-s/X)] with X ~ Gamma(alpha,1), i.e.
// (1/Gamma(alpha)) * int_0^inf exp(-s/x) x^(alpha-1) e^-x dx. After x = e^y
// the integrand decays double-exponentially both ways; the trapezoid rule
// then converges geometrically in the step size. `power_shift` evaluates the
// companion integrals with x^(alpha-1+shift).
inline double acig_transform_quadrature(double alpha, double s, int power_shift = 0) {
    if (s < 0.0) throw validation_error("acig transform requires s >= 0");
    const double a = alpha + static_cast<double>(power_shift);
    const double lgamma_alpha = std::lgamma(alpha);
    if (s == 0.0) return std::exp(std::lgamma(a) - lgamma_alpha);
    // integrand exponent g(y) = -s e^-y - e^y + a y, peak where e^y solves
    // z^2 - a z - s = 0
    const double zpeak = 0.5 * (a + std::sqrt(a * a + 4.0 * s));
    const double ypeak = std::log(zpeak);
    auto logf = [&](double y) { return -s * std::exp(-y) - std::exp(y) + a * y; };
    const double peak = logf(ypeak);
    const double drop = 60.0; // e^-60 ~ 9e-27, far below the 1e-11 target
    double ylo = ypeak, yhi = ypeak;
    while (logf(ylo) > peak - drop) ylo -= 1.0;
    while (logf(yhi) > peak - drop) yhi += 1.0;

    double prev = 0.0;
    double value = 0.0;
    for (int level = 0; level < 14; ++level) {
        const int n = 16 << level;
        const double h = (yhi - ylo) / n;
        double acc = 0.5 * (std::exp(logf(ylo) - peak) + std::exp(logf(yhi) - peak));
        for (int i = 1; i < n; ++i) acc += std::exp(logf(ylo + h * i) - peak);
        value = acc * h;
        if (level > 2 && std::fabs(value - prev) <= 1e-12 * std::fabs(value)) break;
        prev = value;
    }
    return value * std::exp(peak - lgamma_alpha);
}

} // namespace detail

// Archimedean generator catalog. phi is continuous, strictly decreasing and
// convex on (0,1] with phi(1) = 0; phi_inv is its inverse with phi_inv(0) = 1.
// All catalog families are strict (phi(0+) = +inf). Closed-form families are
// scalar-generic; the acig family evaluates in double only.
class generator {
public:
    generator(generator_family f, double param = 0.0) : family_(f), theta_(param) {
        switch (f) {
            case generator_family::independence:
                theta_ = 0.0;
                break;
            case generator_family::clayton:
            case generator_family::frank:
            case generator_family::log_generator:
                if (!(param > 0.0)) throw validation_error(family_name(f) + " requires theta > 0");
                break;
            case generator_family::amh:
                if (!(param > 0.0 && param < 1.0))
                    throw validation_error("amh requires theta in (0,1)");
                break;
            case generator_family::gumbel:
                if (!(param >= 1.0)) throw validation_error("gumbel requires theta >= 1");
                break;
            case generator_family::acig:
                if (!(param > 0.0)) throw validation_error("acig requires alpha > 0");
                break;
        }
    }

    generator_family family() const { return family_; }
    double param() const { return theta_; }
    bool double_only() const { return family_ == generator_family::acig; }

    // Largest j for which (-1)^j (d/ds)^j phi_inv(0) is certified finite from
    // the family's analytic form; INT_MAX when every order is finite,
    // -1 when the catalog metadata is unavailable.
    int finite_inverse_derivatives() const {
        switch (family_) {
            case generator_family::independence:
            case generator_family::clayton:
            case generator_family::frank:
            case generator_family::amh:
                return INT_MAX;
            case generator_family::gumbel:
                return theta_ == 1.0 ? INT_MAX : 0;
            case generator_family::log_generator:
                return 0;
            case generator_family::acig:
                return static_cast<int>(std::ceil(theta_)) - 1; // j < alpha
        }
        return -1;
    }

    template <class R>
    R phi(const R& t) const {
        check_scalar<R>();
        if (!(t > R(0) && t <= R(1)))
            throw validation_error("phi requires t in (0,1]");
        switch (family_) {
            case generator_family::independence:
                return -sg::log_(t);
            case generator_family::clayton: {
                const R th(theta_);
                return (sg::pow_(t, -th) - R(1)) / th;
            }
            case generator_family::frank: {
                const R th(theta_);
                return -sg::log_(sg::expm1_(-th * t) / sg::expm1_(-th));
            }
            case generator_family::amh: {
                const R th(theta_);
                return sg::log_((R(1) - th * (R(1) - t)) / t);
            }
            case generator_family::gumbel: {
                const R th(theta_);
                return sg::pow_(-sg::log_(t), th);
            }
            case generator_family::log_generator: {
                const R th(theta_);
                const R w = R(1) - t;
                if (w == R(0)) return R(0);
                return w / sg::pow_(-sg::log_(w), th);
            }
            case generator_family::acig:
                if constexpr (std::is_same_v<R, double>) return acig_phi(t);
                else throw precision_error("acig generator evaluates in double precision only");
        }
        throw validation_error("unknown generator family");
    }

    template <class R>
    R phi_prime(const R& t) const {
        check_scalar<R>();
        if (!(t > R(0) && t <= R(1)))
            throw validation_error("phi_prime requires t in (0,1]");
        switch (family_) {
            case generator_family::independence:
                return -R(1) / t;
            case generator_family::clayton:
                return -sg::pow_(t, R(-theta_ - 1.0));
            case generator_family::frank: {
                const R th(theta_);
                return th * sg::exp_(-th * t) / sg::expm1_(-th * t);
            }
            case generator_family::amh: {
                const R th(theta_);
                return th / (R(1) - th * (R(1) - t)) - R(1) / t;
            }
            case generator_family::gumbel: {
                const R th(theta_);
                return -th * sg::pow_(-sg::log_(t), th - R(1)) / t;
            }
            case generator_family::log_generator: {
                const R th(theta_);
                const R w = R(1) - t;
                const R l = -sg::log_(w);
                return -(sg::pow_(l, -th) + th * sg::pow_(l, -th - R(1)));
            }
            case generator_family::acig:
                if constexpr (std::is_same_v<R, double>) {
                    const double s = acig_phi(t);
                    const double d = acig_inverse_derivative(s);
                    return 1.0 / d;
                } else {
                    throw precision_error("acig generator evaluates in double precision only");
                }
        }
        throw validation_error("unknown generator family");
    }

    template <class R>
    R phi_inv(const R& s) const {
        check_scalar<R>();
        if (!(s >= R(0))) throw validation_error("phi_inv requires s >= 0");
        if (s == R(0)) return R(1);
        switch (family_) {
            case generator_family::independence:
                return sg::exp_(-s);
            case generator_family::clayton: {
                const R th(theta_);
                return sg::pow_(R(1) + th * s, R(-1) / th);
            }
            case generator_family::frank: {
                const R th(theta_);
                return -sg::log1p_(sg::exp_(-s) * sg::expm1_(-th)) / th;
            }
            case generator_family::amh: {
                const R th(theta_);
                return (R(1) - th) / (sg::exp_(s) - th);
            }
            case generator_family::gumbel: {
                const R th(theta_);
                return sg::exp_(-sg::pow_(s, R(1) / th));
            }
            case generator_family::log_generator:
                return log_generator_inv(s);
            case generator_family::acig:
                if constexpr (std::is_same_v<R, double>)
                    return detail::acig_transform_quadrature(theta_, s);
                else
                    throw precision_error("acig generator evaluates in double precision only");
        }
        throw validation_error("unknown generator family");
    }

    // d phi_inv / ds for the acig family (negative).
    double acig_inverse_derivative(double s) const {
        return -detail::acig_transform_quadrature(theta_, s, -1);
    }

private:
    template <class R>
    static void check_scalar() {
        static_assert(std::is_same_v<R, double> || !std::is_arithmetic_v<R>,
                      "generator evaluates with double or multiprecision scalars");
    }

    // Inverse of w -> w / (-log w)^theta on w in (0,1), returned as t = 1 - w.
    // Double-precision seed by bisection in y = log(-log w), then Newton in
    // the requested scalar type; both sides of the equation are monotone.
    template <class R>
    R log_generator_inv(const R& s) const {
        const double sd = static_cast<double>(s);
        const double th = theta_;
        const double logs = std::log(sd);
        // g(y) = log phi - log s = -e^y - theta*y - log s, decreasing in y
        double ylo = -745.0, yhi = std::log(745.0);
        for (int it = 0; it < 200; ++it) {
            const double ym = 0.5 * (ylo + yhi);
            const double g = -std::exp(ym) - th * ym - logs;
            (g > 0.0 ? ylo : yhi) = ym;
            if (yhi - ylo < 1e-14 * std::max(1.0, std::fabs(ylo))) break;
        }
        const double y = 0.5 * (ylo + yhi);
        const double w_seed = std::exp(-std::exp(y));
        const int newton_iters = 4 + digits_of<R>() / 10;
        if (w_seed < 0.5) {
            // solve log w - theta log(-log w) = log s in w
            R w(w_seed);
            const R ls = sg::log_(R(s));
            const R thr(th);
            for (int it = 0; it < newton_iters; ++it) {
                const R l = -sg::log_(w);
                const R g = -l - thr * sg::log_(l) - ls;
                const R gp = (R(1) + thr / l) / w;
                w = w - g / gp;
                if (w <= R(0)) w = R(std::numeric_limits<double>::min());
                if (w >= R(1)) w = R(1) - R(std::numeric_limits<double>::epsilon());
            }
            return R(1) - w;
        }
        // w near 1: iterate in t = 1 - w to keep t accurate;
        // g(t) = log(1-t) - theta log(-log(1-t)) - log s, decreasing in t
        R t = R(1) - R(w_seed);
        const R ls = sg::log_(R(s));
        const R thr(th);
        for (int it = 0; it < newton_iters; ++it) {
            const R l = -sg::log1p_(-t);
            const R g = -l - thr * sg::log_(l) - ls;
            const R gp = -(R(1) + thr / l) / (R(1) - t);
            t = t - g / gp;
            if (t <= R(0)) t = R(std::numeric_limits<double>::min());
            if (t >= R(1)) t = R(1) - R(std::numeric_limits<double>::epsilon());
        }
        return t;
    }

    // phi for the acig family: solves phi_inv(s) = u for s by bracketing and
    // bisection/secant; phi_inv is strictly decreasing from 1 to 0.
    double acig_phi(double u) const {
        if (u >= 1.0) return 0.0;
        double lo = 0.0, hi = 1.0;
        while (detail::acig_transform_quadrature(theta_, hi) > u) {
            lo = hi;
            hi *= 4.0;
            if (hi > 1e12)
                throw numeric_error("acig phi bracketing failed");
        }
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double v = detail::acig_transform_quadrature(theta_, mid);
            (v > u ? lo : hi) = mid;
            if (hi - lo <= 1e-12 * std::max(1.0, hi)) break;
        }
        return 0.5 * (lo + hi);
    }

    generator_family family_;
    double theta_;
};

} // namespace coptail

#endif
