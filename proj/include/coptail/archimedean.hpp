#ifndef COPTAIL_ARCHIMEDEAN_HPP
#define COPTAIL_ARCHIMEDEAN_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "coptail/errors.hpp"
#include "coptail/generators.hpp"
#include "coptail/precision.hpp"
#include "coptail/subsets.hpp"
#include "coptail/survival.hpp"

namespace coptail {

// Exchangeable copula C(u) = phi_inv(sum_j phi(u_j)).
struct archimedean_model {
    generator gen;
    int d;

    archimedean_model(generator g, int dims) : gen(std::move(g)), d(dims) {
        if (d < 2 || d > max_enum_dim)
            throw validation_error("archimedean dimension must be in [2," +
                                   std::to_string(max_enum_dim) + "]");
    }

    int dim() const { return d; }
    bool exchangeable() const { return true; }

    template <class R>
    R copula_restricted(const index_subset& t, const std::vector<R>& v) const {
        t.check_within(d);
        if (v.size() == 1) return v.front();
        R s(0);
        for (const R& x : v) {
            if (x <= R(0)) return R(0);
            if (x < R(1)) s += gen.phi(x);
        }
        if (s == R(0)) return R(1);
        return gen.phi_inv(s);
    }
};

// -------- tail-limit estimate of r(u) = u |phi'(1-u)| / phi(1-u) --------

struct theta1_result {
    double value = 1.0;                 // deepest extrapolated estimate
    bool converged = false;             // extrapolated sequence Cauchy within 1e-4
    bool catalog_mismatch = false;      // computed limit disagrees with catalog value
    std::optional<double> catalog_value;
    std::vector<double> u_grid;
    std::vector<double> raw;            // r(u) on the grid
    std::vector<double> extrapolated;
};

// Catalog tall-table value of the limit; the gumbel family is tabulated at 1
// alongside the others even though the computed limit is theta, so the
// estimator reports a mismatch flag for it.
inline std::optional<double> catalog_theta1(const generator& g) {
    switch (g.family()) {
        case generator_family::independence:
        case generator_family::clayton:
        case generator_family::frank:
        case generator_family::amh:
        case generator_family::gumbel:
        case generator_family::log_generator:
            return 1.0;
        case generator_family::acig:
            return std::nullopt;
    }
    return std::nullopt;
}

namespace detail {

// One extrapolation level removing a c/L contribution from v over nodes L.
inline std::vector<double> strip_inverse_log_term(const std::vector<double>& v,
                                                  const std::vector<double>& weight) {
    std::vector<double> out;
    for (size_t i = 0; i + 1 < v.size(); ++i) {
        const double wa = weight[i], wb = weight[i + 1];
        out.push_back((v[i + 1] * wb - v[i] * wa) / (wb - wa));
    }
    return out;
}

} // namespace detail

// Estimates the limit of r(u) = -u phi'(1-u) / phi(1-u) as u -> 0 on a
// geometric grid, evaluated in extended precision, with two extrapolation
// levels that remove 1/log(1/u) and 1/log^2(1/u) corrections.
inline theta1_result theta1_estimate(const generator& g) {
    theta1_result res;
    res.catalog_value = catalog_theta1(g);
    const double u_floor = g.double_only() ? 1e-4 : 1e-10;
    for (double u = 1e-2; u >= u_floor * 0.99; u *= 0.1) res.u_grid.push_back(u);

    const int digits = g.double_only() ? 15 : 50;
    for (double u : res.u_grid) {
        const double r = with_working_precision(digits, [&](auto tag) -> double {
            using R = typename decltype(tag)::type;
            const R ur(u);
            const R t = R(1) - ur;
            const R num = -ur * g.phi_prime(t);
            const R den = g.phi(t);
            return static_cast<double>(num / den);
        });
        res.raw.push_back(r);
    }

    // Families with O(u) corrections settle to full accuracy on the raw grid;
    // extrapolation is only applied when corrections are 1/log(1/u)-type,
    // because the strips amplify any non-log structure.
    auto cauchy = [](const std::vector<double>& v, double tol) {
        if (v.size() < 2) return false;
        const double a = v[v.size() - 2], b = v.back();
        return std::fabs(b - a) <= tol * std::max(1.0, std::fabs(b));
    };
    std::vector<double> bigl;
    for (double u : res.u_grid) bigl.push_back(std::log(1.0 / u));
    if (cauchy(res.raw, 1e-8)) {
        res.extrapolated = res.raw;
        res.value = res.raw.back();
        res.converged = true;
    } else {
        std::vector<double> lvl1 = detail::strip_inverse_log_term(res.raw, bigl);
        if (cauchy(lvl1, 1e-4)) {
            res.extrapolated = lvl1;
            res.value = lvl1.back();
            res.converged = true;
        } else {
            std::vector<double> w2;
            for (size_t i = 0; i + 1 < bigl.size(); ++i) w2.push_back(bigl[i] * bigl[i + 1]);
            std::vector<double> lvl2 = lvl1.size() >= 2 ? detail::strip_inverse_log_term(lvl1, w2)
                                                        : lvl1;
            res.extrapolated = lvl2.empty() ? lvl1 : lvl2;
            if (res.extrapolated.empty()) res.extrapolated = res.raw;
            res.value = res.extrapolated.back();
            res.converged = cauchy(res.extrapolated, 1e-4);
        }
    }
    if (res.catalog_value && std::fabs(res.value - *res.catalog_value) > 1e-2)
        res.catalog_mismatch = true;
    return res;
}

// -------- mutual asymptotic-independence condition --------

enum class arch_verdict { mutual, pairwise_only, tail_dependent, inconclusive };

inline std::string to_string(arch_verdict v) {
    switch (v) {
        case arch_verdict::mutual: return "mutual";
        case arch_verdict::pairwise_only: return "pairwise-only";
        case arch_verdict::tail_dependent: return "tail-dependent";
        case arch_verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

struct arch_condition_report {
    arch_verdict verdict = arch_verdict::inconclusive;
    theta1_result theta1;
    std::optional<bool> derivatives_finite; // (-D)^j phi_inv(0) finite for all j <= d
    bool derivatives_from_metadata = false;
    std::optional<bool> slow_variation;     // L(u) = -phi'(1-u) - phi(1-u)/u slowly varying
    std::string rationale;
};

namespace detail {

// Forward divided-difference estimate of (-1)^j phi_inv^(j)(0+) at step h.
// Five-point stencils for j <= 4, binomial stencils above.
template <class R>
double inverse_derivative_estimate(const generator& g, int j, double h) {
    static const double w1[] = {-25.0 / 12, 4.0, -3.0, 4.0 / 3, -0.25};
    static const double w2[] = {35.0 / 12, -26.0 / 3, 9.5, -14.0 / 3, 11.0 / 12};
    static const double w3[] = {-2.5, 9.0, -12.0, 7.0, -1.5};
    static const double w4[] = {1.0, -4.0, 6.0, -4.0, 1.0};
    std::vector<double> w;
    if (j == 1) w.assign(w1, w1 + 5);
    else if (j == 2) w.assign(w2, w2 + 5);
    else if (j == 3) w.assign(w3, w3 + 5);
    else if (j == 4) w.assign(w4, w4 + 5);
    else {
        // binomial weights for the j-th forward difference
        w.assign(static_cast<size_t>(j + 1), 0.0);
        double c = 1.0;
        for (int i = 0; i <= j; ++i) {
            w[static_cast<size_t>(i)] = ((j - i) % 2 == 0 ? c : -c);
            c = c * (j - i) / (i + 1.0);
        }
    }
    R acc(0);
    const R hr(h);
    for (size_t i = 0; i < w.size(); ++i)
        acc += R(w[i]) * g.phi_inv(R(static_cast<double>(i)) * hr);
    R hj(1);
    for (int i = 0; i < j; ++i) hj *= hr;
    const double deriv = static_cast<double>(acc / hj);
    return (j % 2 == 0) ? deriv : -deriv; // (-1)^j f^(j)
}

// Numeric certificate that all inverse derivatives up to order d are finite:
// estimates at shrinking steps must stabilize (1%) rather than grow.
inline std::optional<bool> inverse_derivatives_finite_numeric(const generator& g, int d) {
    const double steps[] = {1e-2, 1e-3, 1e-4, 1e-5};
    for (int j = 1; j <= d; ++j) {
        std::vector<double> est;
        for (double h : steps)
            est.push_back(with_working_precision(100, [&](auto tag) {
                using R = typename decltype(tag)::type;
                return inverse_derivative_estimate<R>(g, j, h);
            }));
        int growth = 0;
        for (size_t i = 1; i < est.size(); ++i)
            if (std::fabs(est[i]) > 2.0 * std::fabs(est[i - 1]) && std::fabs(est[i]) > 1.0)
                ++growth;
        if (growth >= 2) return false; // magnitudes blow up as h shrinks
        const double a = est[est.size() - 2], b = est.back();
        if (!(std::fabs(b - a) <= 1e-2 * std::max(1.0, std::fabs(b))))
            return std::nullopt; // neither stable nor clearly divergent
    }
    return true;
}

// Slow-variation check for L(u) = -phi'(1-u) - phi(1-u)/u: positivity on the
// grid and L(cu)/L(u) -> 1 for c in {2, 10}. The ratio deviates from 1 by
// O(1/log(1/u)) at finite depth, so the sequence is extrapolated with the
// same 1/L strip before comparing against 1.
inline std::optional<bool> slow_variation_check(const generator& g) {
    const double u_floor = g.double_only() ? 1e-4 : 1e-10;
    const int digits = g.double_only() ? 15 : 50;
    auto bigL = [&](double u) {
        return with_working_precision(digits, [&](auto tag) -> double {
            using R = typename decltype(tag)::type;
            const R ur(u);
            const R t = R(1) - ur;
            return static_cast<double>(-g.phi_prime(t) - g.phi(t) / ur);
        });
    };
    std::vector<double> us;
    for (double u = 1e-2; u >= u_floor * 0.99; u *= 0.1) us.push_back(u);
    for (double u : us)
        if (!(bigL(u) > 0.0)) return false;
    const double tol = g.double_only() ? 0.05 : 0.01;
    for (double c : {2.0, 10.0}) {
        std::vector<double> ratio, bigl;
        for (double u : us) {
            if (c * u >= 1.0) continue;
            ratio.push_back(bigL(c * u) / bigL(u));
            bigl.push_back(std::log(1.0 / u));
        }
        if (ratio.size() < 3) return std::nullopt;
        std::vector<double> lvl1 = strip_inverse_log_term(ratio, bigl);
        std::vector<double> w2;
        for (size_t i = 0; i + 1 < bigl.size(); ++i) w2.push_back(bigl[i] * bigl[i + 1]);
        std::vector<double> lvl2 = lvl1.size() >= 2 ? strip_inverse_log_term(lvl1, w2) : lvl1;
        const double limit = lvl2.empty() ? lvl1.back() : lvl2.back();
        if (!(std::fabs(limit - 1.0) <= tol)) return false;
    }
    return true;
}

} // namespace detail

// Decides the joint-tail class of the d-dimensional Archimedean copula built
// from g: tail-dependent when the tail limit exceeds 1, mutual asymptotic
// independence when all inverse derivatives up to order d are certified
// finite, pairwise-only when the first-order tail remainder is slowly
// varying, inconclusive otherwise.
inline arch_condition_report arch_mutual_condition(const generator& g, int d) {
    if (d < 2 || d > max_enum_dim)
        throw validation_error("dimension must be in [2," + std::to_string(max_enum_dim) + "]");
    arch_condition_report rep;
    rep.theta1 = theta1_estimate(g);
    if (rep.theta1.converged && rep.theta1.value > 1.0 + 1e-3) {
        rep.verdict = arch_verdict::tail_dependent;
        rep.rationale = "tail limit " + std::to_string(rep.theta1.value) + " exceeds 1";
        return rep;
    }

    const int meta = g.finite_inverse_derivatives();
    if (meta >= d) {
        rep.derivatives_finite = true;
        rep.derivatives_from_metadata = true;
        rep.verdict = arch_verdict::mutual;
        rep.rationale = "catalog metadata certifies finite inverse derivatives to order " +
                        std::to_string(d);
        return rep;
    }
    if (meta >= 0) {
        rep.derivatives_finite = false;
        rep.derivatives_from_metadata = true;
    } else {
        rep.derivatives_finite = detail::inverse_derivatives_finite_numeric(g, d);
        if (rep.derivatives_finite && *rep.derivatives_finite) {
            rep.verdict = arch_verdict::mutual;
            rep.rationale = "divided-difference estimates of inverse derivatives stabilized";
            return rep;
        }
    }

    rep.slow_variation = detail::slow_variation_check(g);
    if (rep.slow_variation && *rep.slow_variation) {
        rep.verdict = arch_verdict::pairwise_only;
        rep.rationale = "first-order tail remainder is positive and slowly varying";
        return rep;
    }
    rep.verdict = arch_verdict::inconclusive;
    rep.rationale = "no certificate applied";
    return rep;
}

// -------- closed-form exponents for the acig family --------

struct acig_tail_report {
    double alpha = 1.0;
    int d = 2;
    std::vector<double> kappa; // kappa[k-2] is the order for subset size k
    bool pairwise = false;
    bool mutual = false;
    int max_k = 1; // largest k with k-wise asymptotic independence
    std::string case_label;
};

// kappa_k = max(1, min(alpha, k)); k-wise asymptotic independence holds
// exactly when alpha > k-1.
inline acig_tail_report acig_tail_orders(double alpha, int d) {
    if (!(alpha > 0.0)) throw validation_error("acig requires alpha > 0");
    if (d < 2 || d > max_enum_dim)
        throw validation_error("dimension must be in [2," + std::to_string(max_enum_dim) + "]");
    acig_tail_report rep;
    rep.alpha = alpha;
    rep.d = d;
    for (int k = 2; k <= d; ++k)
        rep.kappa.push_back(std::max(1.0, std::min(alpha, static_cast<double>(k))));
    rep.pairwise = alpha > 1.0;
    rep.mutual = alpha > static_cast<double>(d - 1);
    rep.max_k = 1;
    for (int k = 2; k <= d; ++k)
        if (alpha > static_cast<double>(k - 1)) rep.max_k = k;
    if (!rep.pairwise)
        rep.case_label = "tail-dependent pairs (alpha <= 1)";
    else if (rep.mutual)
        rep.case_label = "mutual asymptotic independence (alpha > d-1)";
    else
        rep.case_label = std::to_string(rep.max_k) + "-wise but not " +
                         std::to_string(rep.max_k + 1) + "-wise asymptotic independence";
    return rep;
}

} // namespace coptail

#endif
