#ifndef COPTAIL_MARSHALL_OLKIN_HPP
#define COPTAIL_MARSHALL_OLKIN_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "coptail/errors.hpp"
#include "coptail/generators.hpp"
#include "coptail/rates.hpp"
#include "coptail/report.hpp"
#include "coptail/subsets.hpp"

namespace coptail {

// Shock model: independent exponential shocks E_J with rate lambda_J kill all
// margins in J at once; X_j = min over J containing j. The survival copula is
// the product over shocks of min_{j in J} u_j^{eta_j^J} with eta_j^J =
// lambda_J / Delta_j, so every diagonal section is an exact power of u.
class mo_model {
public:
    explicit mo_model(rate_parameter_set rates) : rates_(std::move(rates)) {}

    int dim() const { return rates_.dim(); }
    bool exchangeable() const { return false; }
    const rate_parameter_set& rates() const { return rates_; }

    // log of the survival copula at a full-dimension point, exact up to the
    // final rounding: each shock term picks one coordinate, so the whole sum
    // collapses to sum_j c_j log u_j with exact rational coefficients c_j.
    template <class R>
    R log_survival_restricted(const index_subset& s, const std::vector<R>& u) const {
        s.check_within(dim());
        if (static_cast<int>(u.size()) != s.size())
            throw validation_error("argument count does not match subset size");
        const std::uint32_t smask = s.mask();
        std::vector<R> lu(u.size());
        for (size_t i = 0; i < u.size(); ++i) {
            if (!(u[i] > 0 && u[i] <= 1))
                throw validation_error("survival arguments must lie in (0,1]");
            lu[i] = sg::log_(u[i]);
        }
        // local position of each global margin in s
        std::vector<int> pos(static_cast<size_t>(dim()) + 1, -1);
        for (int i = 0; i < s.size(); ++i) pos[static_cast<size_t>(s.members()[static_cast<size_t>(i)])] = i;

        std::vector<rational> coeff(u.size(), rational(0));
        for (const auto& [mask, rate] : rates_.rates()) {
            const std::uint32_t inter = mask & smask;
            if (inter == 0) continue;
            int best = -1;
            R best_v{};
            rational best_eta;
            for (int j = 1; j <= dim(); ++j) {
                if (!(inter & (1u << (j - 1)))) continue;
                rational eta = rate / rates_.delta(j);
                const int p = pos[static_cast<size_t>(j)];
                R v = static_cast<R>(eta) * lu[static_cast<size_t>(p)];
                if (best < 0 || v < best_v || (v == best_v && eta > best_eta)) {
                    best = p;
                    best_v = v;
                    best_eta = eta;
                }
            }
            coeff[static_cast<size_t>(best)] += best_eta;
        }
        R acc{};
        for (size_t i = 0; i < u.size(); ++i) acc += static_cast<R>(coeff[i]) * lu[i];
        return acc;
    }

    template <class R>
    R survival_restricted(const index_subset& s, const std::vector<R>& u) const {
        for (const R& v : u)
            if (v == 0) return R(0);
        return sg::exp_(log_survival_restricted(s, u));
    }

    double log_survival(const std::vector<double>& u) const {
        return log_survival_restricted(index_subset::full(dim()), u);
    }
    double survival(const std::vector<double>& u) const {
        return survival_restricted(index_subset::full(dim()), u);
    }

    // Distribution function (the copula) via inclusion-exclusion over the
    // closed-form survival values of sub-subsets.
    template <class R>
    R copula_restricted(const index_subset& s, const std::vector<R>& u) const {
        s.check_within(dim());
        if (static_cast<int>(u.size()) != s.size())
            throw validation_error("argument count does not match subset size");
        const int k = s.size();
        std::vector<R> w(u.size());
        for (size_t i = 0; i < u.size(); ++i) {
            if (!(u[i] > 0 && u[i] <= 1))
                throw validation_error("copula arguments must lie in (0,1]");
            w[i] = R(1) - u[i];
        }
        R acc(1);
        const std::uint32_t lim = 1u << k;
        std::vector<int> tidx;
        std::vector<R> targ;
        for (std::uint32_t t = 1; t < lim; ++t) {
            tidx.clear();
            targ.clear();
            bool zero = false;
            for (int i = 0; i < k; ++i) {
                if (!(t & (1u << i))) continue;
                if (w[static_cast<size_t>(i)] == 0) {
                    zero = true;
                    break;
                }
                tidx.push_back(s.members()[static_cast<size_t>(i)]);
                targ.push_back(w[static_cast<size_t>(i)]);
            }
            if (zero) continue;
            const R term = survival_restricted(index_subset(tidx), targ);
            if (std::popcount(t) % 2)
                acc -= term;
            else
                acc += term;
        }
        return acc;
    }

private:
    rate_parameter_set rates_;
};

// ex(S): exact exponent of the diagonal section, survival(u 1_S) = u^{ex(S)}.
// Each shock J meeting S contributes its largest eta over J intersect S,
// i.e. lambda_J divided by the smallest Delta_j there.
inline rational mo_diagonal_exponent(const mo_model& model, const index_subset& s) {
    s.check_within(model.dim());
    const std::uint32_t smask = s.mask();
    const auto& rates = model.rates();
    rational ex(0);
    for (const auto& [mask, rate] : rates.rates()) {
        const std::uint32_t inter = mask & smask;
        if (inter == 0) continue;
        std::optional<rational> min_delta;
        for (int j = 1; j <= model.dim(); ++j)
            if (inter & (1u << (j - 1)))
                if (!min_delta || rates.delta(j) < *min_delta) min_delta = rates.delta(j);
        ex += rate / *min_delta;
    }
    return ex;
}

// Pair exponent assembled shock by shock: shocks hitting only j contribute
// eta_j, shocks hitting only l contribute eta_l, shocks hitting both
// contribute the larger of the two. Equals mo_diagonal_exponent on {j,l}.
inline rational mo_pairwise_exponent(const mo_model& model, int j, int l) {
    if (j == l) throw validation_error("pair exponent requires two distinct indices");
    index_subset({j, l}).check_within(model.dim());
    const std::uint32_t bj = 1u << (j - 1), bl = 1u << (l - 1);
    const auto& rates = model.rates();
    rational ex(0);
    for (const auto& [mask, rate] : rates.rates()) {
        const bool hj = (mask & bj) != 0, hl = (mask & bl) != 0;
        if (hj && hl) {
            const rational ej = rate / rates.delta(j), el = rate / rates.delta(l);
            ex += (ej > el) ? ej : el;
        } else if (hj) {
            ex += rate / rates.delta(j);
        } else if (hl) {
            ex += rate / rates.delta(l);
        }
    }
    if (rates.strictly_positive() && !(ex > 1))
        throw numeric_error("pair exponent not above 1 despite strictly positive rates");
    return ex;
}

inline constexpr int mo_classify_max_dim = 12;

// Exact classification from exponent gaps: the diagonal ratio for (S, l) is
// u^{ex(S) - ex(S minus l)} with no slowly varying factor, so the verdict is
// decided by an exact rational comparison. Under strictly positive rates the
// gap is bounded below by eta_l^{{l}} > 0 and the model is always mutual.
inline classification_report mo_classify(const mo_model& model, int max_k = 0) {
    const int d = model.dim();
    if (d > mo_classify_max_dim)
        throw validation_error("full subset classification is limited to dimension " +
                               std::to_string(mo_classify_max_dim));
    if (max_k <= 0) max_k = d;
    if (max_k < 2 || max_k > d) throw validation_error("max_k must lie in [2, dim]");
    const bool strict = model.rates().strictly_positive();

    classification_report rep;
    rep.dim = d;
    rep.max_k_checked = max_k;
    std::vector<std::optional<rational>> ex_cache(static_cast<size_t>(1) << d);
    const auto ex_of = [&](const index_subset& s) -> const rational& {
        auto& slot = ex_cache[s.mask()];
        if (!slot) slot = mo_diagonal_exponent(model, s);
        return *slot;
    };
    for_each_subset(d, 1, max_k, [&](const index_subset& s) { (void)ex_of(s); });
    for_each_subset(d, 2, max_k, [&](const index_subset& s) {
        const rational& ex_s = ex_of(s);
        for (int l : s.members()) {
            const rational& ex_m = *ex_cache[s.without(l).mask()];
            const rational gap = ex_s - ex_m;
            ratio_evidence ev;
            ev.subset = s;
            ev.removed = l;
            ev.verdict = gap > 0 ? ratio_verdict::tends_to_zero : ratio_verdict::positive_limit;
            ev.exponent_gap = to_double(gap);
            if (strict) {
                const rational bound = model.rates().eta(l, 1u << (l - 1));
                if (gap < bound)
                    throw numeric_error("exponent gap fell below its singleton-rate bound");
                ev.gap_bound = to_double(bound);
            }
            rep.evidence.push_back(std::move(ev));
        }
    });
    assemble_verdicts(rep);
    if (strict) rep.notes.push_back("all shock rates strictly positive");
    return rep;
}

} // namespace coptail

#endif
