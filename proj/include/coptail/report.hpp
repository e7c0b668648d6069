#ifndef COPTAIL_REPORT_HPP
#define COPTAIL_REPORT_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "coptail/subsets.hpp"

namespace coptail {

// One evaluated point of a survival diagonal: probability that every margin
// in the subset exceeds 1-u, with a standard error when estimated.
struct diag_point {
    double u = 0.0;
    double value = 0.0;
    double se = 0.0;
};

// Outcome of one limit test: does the survival diagonal ratio
// C^(S)(u1)/C^(S without l)(u1) tend to zero as u drops to 0?
enum class ratio_verdict { tends_to_zero, positive_limit, inconclusive };

inline const char* to_string(ratio_verdict v) {
    switch (v) {
        case ratio_verdict::tends_to_zero: return "tends-to-zero";
        case ratio_verdict::positive_limit: return "positive-limit";
        default: return "inconclusive";
    }
}

struct ratio_evidence {
    index_subset subset;
    int removed = 0;
    ratio_verdict verdict = ratio_verdict::inconclusive;
    // Exponent gap ex(S) - ex(S without removed) when an analytic exponent
    // exists; NaN for purely numeric traces.
    double exponent_gap = std::numeric_limits<double>::quiet_NaN();
    std::optional<double> gap_bound; // proven lower bound on the gap, when one exists
    std::vector<std::pair<double, double>> trace; // (u, ratio) samples, numeric strategy
};

// Joint verdicts assembled over all subsets up to the checked size.
// k-wise asymptotic independence holds when every (S, l) with |S| <= k has a
// tends-to-zero verdict; pairwise is the k = 2 level, mutual the k = dim level.
struct classification_report {
    int dim = 0;
    int max_k_checked = 0;
    bool pairwise = false;
    std::optional<bool> mutual;       // nullopt when inconclusive or not fully checked
    int max_k = 1;                    // largest k with an established k-wise verdict
    std::vector<ratio_evidence> evidence;
    std::vector<std::string> notes;
};

// Fills pairwise/max_k/mutual from the per-(S, l) evidence. A size level is
// established when every verdict at that size is tends-to-zero; a positive
// limit anywhere refutes mutual, an inconclusive verdict leaves it open.
inline void assemble_verdicts(classification_report& rep) {
    std::vector<char> level_zero(static_cast<size_t>(rep.max_k_checked) + 1, 1);
    std::vector<char> level_seen(static_cast<size_t>(rep.max_k_checked) + 1, 0);
    bool any_positive = false, any_inconclusive = false;
    for (const auto& ev : rep.evidence) {
        const size_t k = static_cast<size_t>(ev.subset.size());
        if (k >= level_zero.size()) continue;
        level_seen[k] = 1;
        if (ev.verdict != ratio_verdict::tends_to_zero) level_zero[k] = 0;
        if (ev.verdict == ratio_verdict::positive_limit) any_positive = true;
        if (ev.verdict == ratio_verdict::inconclusive) any_inconclusive = true;
    }
    rep.max_k = 1;
    for (int k = 2; k <= rep.max_k_checked; ++k) {
        if (!level_seen[static_cast<size_t>(k)] || !level_zero[static_cast<size_t>(k)]) break;
        rep.max_k = k;
    }
    rep.pairwise = rep.max_k >= 2;
    if (any_positive)
        rep.mutual = false;
    else if (any_inconclusive || rep.max_k_checked < rep.dim)
        rep.mutual = std::nullopt;
    else
        rep.mutual = (rep.max_k == rep.dim);
}

inline nlohmann::json report_to_json(const classification_report& rep) {
    nlohmann::json ev = nlohmann::json::array();
    for (const auto& e : rep.evidence) {
        nlohmann::json item = {{"subset", e.subset.to_string()},
                               {"removed", e.removed},
                               {"verdict", to_string(e.verdict)}};
        if (!std::isnan(e.exponent_gap)) item["gap"] = e.exponent_gap;
        if (e.gap_bound) item["gap_bound"] = *e.gap_bound;
        if (!e.trace.empty()) {
            nlohmann::json tr = nlohmann::json::array();
            for (const auto& [u, r] : e.trace) tr.push_back({u, r});
            item["trace"] = std::move(tr);
        }
        ev.push_back(std::move(item));
    }
    nlohmann::json j = {{"dim", rep.dim},
                        {"pairwise", rep.pairwise},
                        {"max_k", rep.max_k},
                        {"evidence", std::move(ev)}};
    if (rep.mutual)
        j["mutual"] = *rep.mutual;
    else
        j["mutual"] = nullptr;
    if (!rep.notes.empty()) j["notes"] = rep.notes;
    return j;
}

} // namespace coptail

#endif
