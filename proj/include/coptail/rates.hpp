#ifndef COPTAIL_RATES_HPP
#define COPTAIL_RATES_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "coptail/errors.hpp"
#include "coptail/subsets.hpp"

namespace coptail {

using rational = boost::multiprecision::cpp_rational;

inline double to_double(const rational& r) { return r.convert_to<double>(); }

// Shock-rate assignment lambda_J >= 0 over non-empty J subseteq {1..d}.
// Rates are kept as exact rationals; JSON doubles convert exactly (they are
// dyadic). Only strictly positive rates are stored. Every margin must be
// covered: Delta_j = sum_{J ni j} lambda_J > 0 for all j.
class rate_parameter_set {
public:
    rate_parameter_set(int d, std::vector<std::pair<std::uint32_t, rational>> entries)
        : d_(d) {
        if (d < 2 || d > max_enum_dim)
            throw validation_error("rate set dimension must be in [2," +
                                   std::to_string(max_enum_dim) + "]");
        const std::uint32_t full = (d >= 32) ? ~0u : ((1u << d) - 1u);
        for (auto& [mask, rate] : entries) {
            if (mask == 0 || (mask & ~full) != 0)
                throw validation_error("rate subset out of range for dimension " +
                                       std::to_string(d));
            if (rate < 0)
                throw validation_error("negative shock rate for subset " +
                                       index_subset::from_mask(mask).to_string());
            if (rate > 0) rates_.emplace_back(mask, std::move(rate));
        }
        std::sort(rates_.begin(), rates_.end(), [](const auto& a, const auto& b) {
            const int pa = std::popcount(a.first), pb = std::popcount(b.first);
            if (pa != pb) return pa < pb;
            return index_subset::from_mask(a.first).members() <
                   index_subset::from_mask(b.first).members();
        });
        for (size_t i = 1; i < rates_.size(); ++i)
            if (rates_[i].first == rates_[i - 1].first)
                throw validation_error("duplicate rate entry for subset " +
                                       index_subset::from_mask(rates_[i].first).to_string());
        delta_.assign(static_cast<size_t>(d), rational(0));
        for (const auto& [mask, rate] : rates_)
            for (int j = 0; j < d; ++j)
                if (mask & (1u << j)) delta_[static_cast<size_t>(j)] += rate;
        for (int j = 0; j < d; ++j)
            if (delta_[static_cast<size_t>(j)] == 0)
                throw validation_error("margin " + std::to_string(j + 1) +
                                       " is hit by no positive-rate shock");
    }

    int dim() const { return d_; }
    const std::vector<std::pair<std::uint32_t, rational>>& rates() const { return rates_; }
    const rational& delta(int j) const { return delta_[static_cast<size_t>(j - 1)]; }

    // True when every non-empty subset carries a strictly positive rate.
    bool strictly_positive() const {
        return rates_.size() == (static_cast<size_t>(1) << d_) - 1;
    }

    rational rate(std::uint32_t mask) const {
        for (const auto& [m, r] : rates_)
            if (m == mask) return r;
        return rational(0);
    }

    // eta_j^J = lambda_J / Delta_j for j in J (1-based j).
    rational eta(int j, std::uint32_t mask) const {
        if (j < 1 || j > d_ || (mask & (1u << (j - 1))) == 0)
            throw validation_error("eta requires j in J");
        return rate(mask) / delta(j);
    }

private:
    int d_;
    std::vector<std::pair<std::uint32_t, rational>> rates_;
    std::vector<rational> delta_;
};

// lambda_J = 1 for every non-empty J.
inline rate_parameter_set mo_equal_rates(int d) {
    std::vector<std::pair<std::uint32_t, rational>> e;
    const std::uint32_t full = (1u << d) - 1u;
    for (std::uint32_t m = 1; m <= full; ++m) e.emplace_back(m, rational(1));
    return rate_parameter_set(d, std::move(e));
}

// lambda_J = |J|.
inline rate_parameter_set mo_proportional_rates(int d) {
    std::vector<std::pair<std::uint32_t, rational>> e;
    const std::uint32_t full = (1u << d) - 1u;
    for (std::uint32_t m = 1; m <= full; ++m) e.emplace_back(m, rational(std::popcount(m)));
    return rate_parameter_set(d, std::move(e));
}

// JSON schema: {"dim": d, "lambda": {"1": 0.5, "1,3": 0.25, ...}}.
// Keys are comma-joined ascending indices. Subsets absent from 'lambda'
// default to rate 0; a warning is recorded for the omission.
inline rate_parameter_set rates_from_json(const nlohmann::json& j,
                                          std::vector<std::string>* warnings = nullptr) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("lambda"))
        throw parse_error("rates JSON must be an object with 'dim' and 'lambda'");
    const int d = j.at("dim").get<int>();
    if (d < 2 || d > max_enum_dim)
        throw parse_error("rates 'dim' must be in [2," + std::to_string(max_enum_dim) + "]");
    const auto& lam = j.at("lambda");
    if (!lam.is_object()) throw parse_error("'lambda' must be an object keyed by subsets");
    std::vector<std::pair<std::uint32_t, rational>> entries;
    for (auto it = lam.begin(); it != lam.end(); ++it) {
        index_subset s = index_subset::from_string(it.key());
        if (s.to_string() != it.key())
            throw parse_error("subset key '" + it.key() +
                              "' is not in canonical ascending form '" + s.to_string() + "'");
        s.check_within(d);
        if (!it.value().is_number())
            throw parse_error("rate for subset '" + it.key() + "' is not a number");
        const double v = it.value().get<double>();
        if (v < 0.0)
            throw validation_error("negative shock rate for subset '" + it.key() + "'");
        entries.emplace_back(s.mask(), rational(v));
    }
    if (warnings) {
        const std::uint32_t full = (1u << d) - 1u;
        const size_t given = entries.size();
        if (given < static_cast<size_t>(full))
            warnings->push_back("rates: " + std::to_string(full - given) +
                                " subsets omitted; their rates default to 0");
    }
    return rate_parameter_set(d, std::move(entries));
}

inline nlohmann::json rates_to_json(const rate_parameter_set& r) {
    nlohmann::json lam = nlohmann::json::object();
    for (const auto& [mask, rate] : r.rates())
        lam[index_subset::from_mask(mask).to_string()] = to_double(rate);
    return {{"dim", r.dim()}, {"lambda", std::move(lam)}};
}

} // namespace coptail

#endif
