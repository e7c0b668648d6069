#ifndef COPTAIL_CLASSIFY_HPP
#define COPTAIL_CLASSIFY_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "coptail/archimedean.hpp"
#include "coptail/empirical.hpp"
#include "coptail/errors.hpp"
#include "coptail/gaussian.hpp"
#include "coptail/marshall_olkin.hpp"
#include "coptail/report.hpp"
#include "coptail/survival.hpp"

namespace coptail {

// Analytic tail-order data for one subset, as far as the model can provide
// it. The optional fields drive the tie-break when two exponents coincide.
struct exponent_info {
    double exponent = std::numeric_limits<double>::quiet_NaN();
    bool exact = false;                     // exact arithmetic, not an estimate
    std::optional<double> log_exponent;     // power of (-2 log u) in the tail
    std::optional<std::vector<int>> active; // QP active set, Gaussian models
};

// Runtime polymorphic copula model: the classification engine and the CLI
// talk to every family through this surface.
class copula_model {
public:
    virtual ~copula_model() = default;
    virtual std::string name() const = 0;
    virtual int dim() const = 0;

    virtual bool analytic_exponents() const { return false; }
    virtual exponent_info exponent(const index_subset&) const {
        throw validation_error("model '" + name() + "' has no analytic tail exponents");
    }
    // Hook for models that can decide the whole report exactly.
    virtual std::optional<classification_report> exact_report(int) const { return std::nullopt; }

    // P(all margins in s exceed 1-u); |s| = 1 must return u.
    virtual double survival_diagonal(const index_subset& s, double u) const = 0;
    // smallest diagonal argument the evaluation supports at full trust
    virtual double min_diagonal_u() const { return 1e-8; }

    virtual bool can_sample() const { return false; }
    virtual sample_matrix sample(long, std::uint64_t) const {
        throw validation_error("model '" + name() + "' has no sampler");
    }
};

enum class classify_strategy { analytic_exponents, numeric_ratio };

inline constexpr int classify_analytic_max_dim = 12;
inline constexpr int classify_numeric_max_dim = 8;
inline constexpr double classify_gap_tol = 1e-9;
inline constexpr double classify_decay_threshold = 1e-3;
inline constexpr double classify_stability_band = 0.10;
inline constexpr double classify_floor_u = 1e-30;

namespace detail {

// Decide one trace: tends-to-zero needs the last point below the decay
// threshold and a non-increasing tail (all-zero tails count); positive-limit
// needs the last four points inside a 10% band; anything else stays open.
inline ratio_verdict decide_trace(const std::vector<std::pair<double, double>>& trace) {
    if (trace.size() < 4) return ratio_verdict::inconclusive;
    const size_t n = trace.size();
    double lo = trace[n - 4].second, hi = lo;
    bool nonincreasing = true;
    for (size_t i = n - 4; i < n; ++i) {
        const double r = trace[i].second;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        if (i > n - 4 && r > trace[i - 1].second) nonincreasing = false;
    }
    if (nonincreasing && trace[n - 1].second < classify_decay_threshold)
        return ratio_verdict::tends_to_zero;
    if (lo > 0.0 && hi / lo - 1.0 <= classify_stability_band)
        return ratio_verdict::positive_limit;
    return ratio_verdict::inconclusive;
}

struct diag_cache {
    const copula_model* model;
    std::unordered_map<std::uint64_t, double> values;

    double eval(const index_subset& s, int u_decade) {
        if (s.size() == 1) return std::pow(10.0, -u_decade);
        const std::uint64_t key =
            (static_cast<std::uint64_t>(s.mask()) << 16) | static_cast<std::uint64_t>(u_decade);
        auto it = values.find(key);
        if (it != values.end()) return it->second;
        const double v = model->survival_diagonal(s, std::pow(10.0, -u_decade));
        values.emplace(key, v);
        return v;
    }
};

} // namespace detail

// Pairwise / k-wise / mutual classification. The analytic strategy compares
// per-subset tail exponents exactly; the numeric strategy evaluates diagonal
// ratio traces on a geometric grid, deepening the grid decade by decade until
// one of the pinned decision rules fires or the model's precision floor is
// reached. Inconclusive verdicts are reported as such, never forced.
inline classification_report classify_model(const copula_model& model, int max_k,
                                            classify_strategy strategy) {
    const int d = model.dim();
    if (max_k < 2 || max_k > d) throw validation_error("max_k must lie in [2, dim]");

    if (strategy == classify_strategy::analytic_exponents) {
        if (d > classify_analytic_max_dim)
            throw validation_error("analytic classification is limited to dimension " +
                                   std::to_string(classify_analytic_max_dim));
        if (auto exact = model.exact_report(max_k)) return *exact;
        if (!model.analytic_exponents())
            throw validation_error("model '" + model.name() +
                                   "' has no analytic tail exponents; use the numeric strategy");
        classification_report rep;
        rep.dim = d;
        rep.max_k_checked = max_k;
        std::vector<std::optional<exponent_info>> cache(static_cast<size_t>(1) << d);
        const auto info_of = [&](const index_subset& s) -> const exponent_info& {
            auto& slot = cache[s.mask()];
            if (!slot) {
                if (s.size() == 1)
                    slot = exponent_info{1.0, true, 0.0, std::nullopt};
                else
                    slot = model.exponent(s);
            }
            return *slot;
        };
        for_each_subset(d, 2, max_k, [&](const index_subset& s) {
            const exponent_info& ei = info_of(s);
            for (int l : s.members()) {
                const exponent_info& em = info_of(s.without(l));
                const double gap = ei.exponent - em.exponent;
                ratio_evidence ev;
                ev.subset = s;
                ev.removed = l;
                ev.exponent_gap = gap;
                if (gap > classify_gap_tol) {
                    ev.verdict = ratio_verdict::tends_to_zero;
                } else if (gap < -classify_gap_tol) {
                    ev.verdict = ratio_verdict::inconclusive;
                    rep.notes.push_back("negative exponent gap at (" + s.to_string() + ", " +
                                        std::to_string(l) + "); exponents violate monotonicity");
                } else if (ei.active && em.active) {
                    // equal tail order: same active set means the slowly varying
                    // parts match and the ratio has a positive limit; otherwise
                    // the log-power difference decides
                    if (*ei.active == *em.active) {
                        ev.verdict = ratio_verdict::positive_limit;
                    } else {
                        const double dlog = ei.log_exponent.value_or(0.0) -
                                            em.log_exponent.value_or(0.0);
                        if (dlog < -classify_gap_tol)
                            ev.verdict = ratio_verdict::tends_to_zero;
                        else
                            ev.verdict = ratio_verdict::positive_limit;
                    }
                } else {
                    ev.verdict = ratio_verdict::positive_limit;
                }
                rep.evidence.push_back(std::move(ev));
            }
        });
        assemble_verdicts(rep);
        return rep;
    }

    if (d > classify_numeric_max_dim)
        throw validation_error("numeric classification is limited to dimension " +
                               std::to_string(classify_numeric_max_dim));
    classification_report rep;
    rep.dim = d;
    rep.max_k_checked = max_k;
    const double floor_u = std::max(model.min_diagonal_u(), classify_floor_u);
    const int max_decade = static_cast<int>(std::floor(-std::log10(floor_u) + 1e-9));
    detail::diag_cache cache{&model, {}};
    bool ratio_bound_violated = false;
    for_each_subset(d, 2, max_k, [&](const index_subset& s) {
        for (int l : s.members()) {
            const index_subset rest = s.without(l);
            ratio_evidence ev;
            ev.subset = s;
            ev.removed = l;
            for (int dec = 1; dec <= max_decade; ++dec) {
                const double u = std::pow(10.0, -dec);
                const double num = cache.eval(s, dec);
                const double den = cache.eval(rest, dec);
                double r;
                if (den <= 0.0)
                    r = 0.0; // 0/0 taken as 0: a certified-zero denominator
                else
                    r = num / den;
                if (r > 1.0 + 1e-9) ratio_bound_violated = true;
                ev.trace.emplace_back(u, r);
                if (dec >= 8) {
                    ev.verdict = detail::decide_trace(ev.trace);
                    if (ev.verdict != ratio_verdict::inconclusive) break;
                }
            }
            if (ev.verdict == ratio_verdict::inconclusive)
                ev.verdict = detail::decide_trace(ev.trace);
            rep.evidence.push_back(std::move(ev));
        }
    });
    if (ratio_bound_violated)
        rep.notes.push_back("a ratio exceeded 1 beyond tolerance; numerator event "
                            "should be contained in the denominator event");
    assemble_verdicts(rep);
    return rep;
}

// ---- runtime model wrappers ----

class independence_runtime_model final : public copula_model {
public:
    explicit independence_runtime_model(int d) : d_(d) {
        if (d < 2) throw validation_error("dimension must be at least 2");
    }
    std::string name() const override { return "independence"; }
    int dim() const override { return d_; }
    bool analytic_exponents() const override { return true; }
    exponent_info exponent(const index_subset& s) const override {
        s.check_within(d_);
        return {static_cast<double>(s.size()), true, 0.0, std::nullopt};
    }
    double survival_diagonal(const index_subset& s, double u) const override {
        s.check_within(d_);
        return std::pow(u, s.size());
    }
    double min_diagonal_u() const override { return classify_floor_u; }
    bool can_sample() const override { return true; }
    sample_matrix sample(long n, std::uint64_t seed) const override {
        return generate_sample(d_, n, seed, "independence", [this](rng_stream& g, double* out) {
            for (int j = 0; j < d_; ++j) out[j] = g.uniform01();
        });
    }

private:
    int d_;
};

class gaussian_runtime_model final : public copula_model {
public:
    explicit gaussian_runtime_model(correlation_matrix corr, std::uint64_t eval_seed = 20240823,
                                    double target_rel = 5e-4)
        : corr_(std::move(corr)), eval_seed_(eval_seed), target_rel_(target_rel) {}

    std::string name() const override { return "gaussian"; }
    int dim() const override { return corr_.dim(); }
    bool analytic_exponents() const override { return true; }
    exponent_info exponent(const index_subset& s) const override {
        const auto t = gaussian_tail_order(corr_, s);
        return {t.kappa, false, t.log_exponent, t.active};
    }
    double survival_diagonal(const index_subset& s, double u) const override {
        const std::uint64_t seed =
            splitmix64(eval_seed_ ^ (static_cast<std::uint64_t>(s.mask()) * 0x9e3779b97f4a7c15ULL) ^
                       std::bit_cast<std::uint64_t>(u));
        return gaussian_survival_diagonal(corr_, s, {u}, seed, target_rel_)[0].value;
    }
    double min_diagonal_u() const override { return classify_floor_u; }
    bool can_sample() const override { return true; }
    sample_matrix sample(long n, std::uint64_t seed) const override {
        return gaussian_sample(corr_, n, seed);
    }
    const correlation_matrix& correlation() const { return corr_; }

private:
    correlation_matrix corr_;
    std::uint64_t eval_seed_;
    double target_rel_;
};

class mo_runtime_model final : public copula_model {
public:
    explicit mo_runtime_model(mo_model model) : model_(std::move(model)) {}

    std::string name() const override { return "marshall-olkin"; }
    int dim() const override { return model_.dim(); }
    bool analytic_exponents() const override { return true; }
    exponent_info exponent(const index_subset& s) const override {
        return {to_double(mo_diagonal_exponent(model_, s)), true, 0.0, std::nullopt};
    }
    std::optional<classification_report> exact_report(int max_k) const override {
        return mo_classify(model_, max_k);
    }
    double survival_diagonal(const index_subset& s, double u) const override {
        std::vector<double> pt(static_cast<size_t>(s.size()), u);
        return model_.survival_restricted(s, pt);
    }
    double min_diagonal_u() const override { return classify_floor_u; }
    bool can_sample() const override { return true; }
    sample_matrix sample(long n, std::uint64_t seed) const override {
        return mo_sample(model_, n, seed);
    }
    const mo_model& model() const { return model_; }

private:
    mo_model model_;
};

class archimedean_runtime_model final : public copula_model {
public:
    archimedean_runtime_model(generator gen, int d) : model_(std::move(gen), d) {}

    std::string name() const override { return std::string(family_name(model_.gen.family())); }
    int dim() const override { return model_.dim(); }
    bool analytic_exponents() const override {
        return model_.gen.family() == generator_family::acig ||
               model_.gen.family() == generator_family::independence;
    }
    exponent_info exponent(const index_subset& s) const override {
        const int k = s.size();
        if (model_.gen.family() == generator_family::independence)
            return {static_cast<double>(k), true, 0.0, std::nullopt};
        if (model_.gen.family() == generator_family::acig) {
            const double alpha = model_.gen.param();
            return {std::max(1.0, std::min(alpha, static_cast<double>(k))), true, std::nullopt,
                    std::nullopt};
        }
        throw validation_error("analytic tail exponents for this family are not available");
    }
    double survival_diagonal(const index_subset& s, double u) const override {
        s.check_within(dim());
        if (s.size() == 1) return u;
        if (model_.gen.family() == generator_family::acig) return acig_diagonal(s.size(), u);
        // exchangeable family: the restriction to s is the |s|-dim model
        archimedean_model sub(model_.gen, s.size());
        return survival_diagonal_generic(sub, index_subset::full(s.size()), u).value;
    }
    double min_diagonal_u() const override {
        if (model_.gen.family() != generator_family::acig) return classify_floor_u;
        // double-only quadrature: stop where the diagonal still carries
        // significant digits, survival ~ u^kappa_d against eps = 1e-16
        const double kd =
            std::max(1.0, std::min(model_.gen.param(), static_cast<double>(dim())));
        return std::max(1e-4, std::pow(10.0, -11.0 / kd));
    }
    bool can_sample() const override {
        return model_.gen.family() == generator_family::clayton;
    }
    sample_matrix sample(long n, std::uint64_t seed) const override {
        if (!can_sample()) return copula_model::sample(n, seed);
        return clayton_sample(model_.gen.param(), dim(), n, seed);
    }
    const archimedean_model& model() const { return model_; }

private:
    double acig_diagonal(int k, double u) const {
        // binomial inclusion-exclusion in double; the quadrature-backed
        // generator does not support wider scalars
        const double w = 1.0 - u;
        double acc = 1.0;
        double binom = 1.0;
        std::vector<double> arg;
        for (int j = 1; j <= k; ++j) {
            binom = binom * static_cast<double>(k - j + 1) / static_cast<double>(j);
            arg.assign(static_cast<size_t>(j), w);
            const double c = model_.copula_restricted(index_subset::full(j), arg);
            acc += ((j % 2) ? -1.0 : 1.0) * binom * c;
        }
        return std::max(acc, 0.0);
    }

    archimedean_model model_;
};

// Mixture fixture with closed-form joint threshold probabilities: every pair
// diagonal and the triple diagonal equal (2 - sqrt(4 - 3u))^2, evaluated in
// the rationalized form (3u / (2 + sqrt(4 - 3u)))^2 to avoid cancellation.
class counterexample_runtime_model final : public copula_model {
public:
    std::string name() const override { return "counterexample"; }
    int dim() const override { return 3; }
    bool analytic_exponents() const override { return true; }
    exponent_info exponent(const index_subset& s) const override {
        s.check_within(3);
        return {2.0, true, 0.0, std::nullopt}; // pairs and the triple share order 2
    }
    double survival_diagonal(const index_subset& s, double u) const override {
        s.check_within(3);
        if (s.size() == 1) return u;
        const double t = 3.0 * u / (2.0 + std::sqrt(4.0 - 3.0 * u));
        return t * t;
    }
    double min_diagonal_u() const override { return classify_floor_u; }
    bool can_sample() const override { return true; }
    sample_matrix sample(long n, std::uint64_t seed) const override {
        return counterexample_sample(n, seed);
    }
};

} // namespace coptail

#endif
