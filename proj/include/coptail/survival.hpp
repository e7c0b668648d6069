#ifndef COPTAIL_SURVIVAL_HPP
#define COPTAIL_SURVIVAL_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "coptail/errors.hpp"
#include "coptail/precision.hpp"
#include "coptail/subsets.hpp"

namespace coptail {

// Compile-time model interface used by the scalar-generic evaluators:
//   int dim() const;
//   bool exchangeable() const;
//   template <class R> R copula_restricted(const index_subset& T,
//                                          const std::vector<R>& v) const;
// where v holds the arguments aligned with T.members(). Models evaluate the
// copula (lower orthant) C_T; survival values are assembled here.

template <class M, class R>
concept copula_evaluable = requires(const M& m, const index_subset& t, const std::vector<R>& v) {
    { m.dim() } -> std::convertible_to<int>;
    { m.exchangeable() } -> std::convertible_to<bool>;
    { m.template copula_restricted<R>(t, v) } -> std::convertible_to<R>;
};

// Survival copula by inclusion-exclusion over lower-orthant values:
// survival(u) = 1 + sum over non-empty T subseteq S of (-1)^|T| C_T(1-u_j : j in T).
// Arguments u are aligned with S.members(); all coordinates must be in [0,1].
// The alternating sum cancels catastrophically for small u, so call this
// through survival_via_inclusion_exclusion which picks the working precision.
template <class R, class M>
    requires copula_evaluable<M, R>
R survival_inclusion_exclusion_t(const M& model, const index_subset& s, const std::vector<R>& u) {
    const int k = s.size();
    if (static_cast<int>(u.size()) != k)
        throw validation_error("argument count does not match subset size");
    std::vector<R> w(u.size());
    for (size_t i = 0; i < u.size(); ++i) w[i] = R(1) - u[i];
    const auto& mem = s.members();
    R total = R(1);
    std::vector<int> tmem;
    std::vector<R> tv;
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        tmem.clear();
        tv.clear();
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i)) {
                tmem.push_back(mem[static_cast<size_t>(i)]);
                tv.push_back(w[static_cast<size_t>(i)]);
            }
        const index_subset t(tmem);
        const R term = model.template copula_restricted<R>(t, tv);
        if (std::popcount(mask) % 2 == 1)
            total -= term;
        else
            total += term;
    }
    return total;
}

// Diagonal of the survival copula for exchangeable models via the binomial
// reduction: survival(u*1_k) = sum_{j=0}^{k} (-1)^j binom(k,j) C(j copies of 1-u).
// Collapses 2^k inclusion-exclusion terms to k+1.
template <class R, class M>
    requires copula_evaluable<M, R>
R survival_diagonal_exchangeable_t(const M& model, int k, const R& u) {
    const R w = R(1) - u;
    R total = R(0);
    unsigned long long binom = 1; // binom(k, j)
    for (int j = 0; j <= k; ++j) {
        R term;
        if (j == 0) {
            term = R(1);
        } else {
            std::vector<int> mem(static_cast<size_t>(j));
            for (int i = 0; i < j; ++i) mem[static_cast<size_t>(i)] = i + 1;
            const std::vector<R> v(static_cast<size_t>(j), w);
            term = model.template copula_restricted<R>(index_subset(mem), v);
        }
        term *= R(binom);
        if (j % 2 == 1)
            total -= term;
        else
            total += term;
        binom = binom * static_cast<unsigned long long>(k - j) /
                static_cast<unsigned long long>(j + 1);
    }
    return total;
}

struct survival_eval {
    double value = 0.0;
    double se = 0.0;        // 0 for exact evaluations
    int working_digits = 15;
};

namespace detail {

inline int predict_survival_digits(int k, double u_min, const precision_request& prec) {
    int digits = 15;
    if (k >= 2 && u_min < 0.5) digits = working_digits_for(k, u_min);
    const int cap = std::min(std::max(prec.max_digits, 15), max_working_digits);
    if (digits > cap)
        throw precision_error("survival evaluation needs " + std::to_string(digits) +
                              " working digits, above the allowed maximum of " +
                              std::to_string(cap));
    return digits;
}

} // namespace detail

// General-argument survival value with cancellation-aware precision choice.
// Coordinates equal to 1 are marginalized out first; any coordinate equal to 0
// grounds the value at 0.
template <class M>
survival_eval survival_via_inclusion_exclusion(const M& model, const index_subset& s,
                                               const std::vector<double>& u,
                                               const precision_request& prec = {}) {
    if (static_cast<int>(u.size()) != s.size())
        throw validation_error("argument count does not match subset size");
    std::vector<int> mem;
    std::vector<double> uu;
    for (size_t i = 0; i < u.size(); ++i) {
        const double v = u[i];
        if (v < 0.0 || v > 1.0)
            throw validation_error("survival arguments must lie in [0,1]");
        if (v == 0.0) return {0.0, 0.0, 15};
        if (v < 1.0) {
            mem.push_back(s.members()[i]);
            uu.push_back(v);
        }
    }
    if (mem.empty()) return {1.0, 0.0, 15};
    const index_subset sr(mem);
    const double u_min = *std::min_element(uu.begin(), uu.end());
    const int digits = detail::predict_survival_digits(sr.size(), u_min, prec);
    const double value = with_working_precision(digits, [&](auto tag) -> double {
        using R = typename decltype(tag)::type;
        std::vector<R> ur(uu.size());
        for (size_t i = 0; i < uu.size(); ++i) ur[i] = R(uu[i]);
        return static_cast<double>(survival_inclusion_exclusion_t<R>(model, sr, ur));
    });
    return {value, 0.0, digits};
}

// Diagonal survival value; uses the binomial reduction for exchangeable
// models and full inclusion-exclusion otherwise.
template <class M>
survival_eval survival_diagonal_generic(const M& model, const index_subset& s, double u,
                                        const precision_request& prec = {}) {
    if (u < 0.0 || u > 1.0)
        throw validation_error("diagonal argument must lie in [0,1]");
    if (u == 0.0) return {0.0, 0.0, 15};
    if (u == 1.0) return {1.0, 0.0, 15};
    const int k = s.size();
    const int digits = detail::predict_survival_digits(k, u, prec);
    const double value = with_working_precision(digits, [&](auto tag) -> double {
        using R = typename decltype(tag)::type;
        if (model.exchangeable())
            return static_cast<double>(survival_diagonal_exchangeable_t<R>(model, k, R(u)));
        const std::vector<R> ur(static_cast<size_t>(k), R(u));
        return static_cast<double>(survival_inclusion_exclusion_t<R>(model, s, ur));
    });
    return {value, 0.0, digits};
}

// Product copula.
struct independence_model {
    int d = 2;
    int dim() const { return d; }
    bool exchangeable() const { return true; }
    template <class R>
    R copula_restricted(const index_subset& t, const std::vector<R>& v) const {
        t.check_within(d);
        R p(1);
        for (const R& x : v) p *= x;
        return p;
    }
};

// Upper Frechet bound (comonotone) copula.
struct comonotone_model {
    int d = 2;
    int dim() const { return d; }
    bool exchangeable() const { return true; }
    template <class R>
    R copula_restricted(const index_subset& t, const std::vector<R>& v) const {
        t.check_within(d);
        R m = v.front();
        for (const R& x : v) m = std::min(m, x);
        return m;
    }
};

} // namespace coptail

#endif
