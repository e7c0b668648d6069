#ifndef COPTAIL_SUBSETS_HPP
#define COPTAIL_SUBSETS_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "coptail/errors.hpp"

namespace coptail {

inline constexpr int max_enum_dim = 20;

// Non-empty subset of {1,...,d}. Members are 1-based, sorted ascending,
// duplicate-free. The ambient dimension is carried by the caller.
class index_subset {
public:
    index_subset() = default;

    explicit index_subset(std::vector<int> members) : members_(std::move(members)) {
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
        for (int j : members_)
            if (j < 1) throw validation_error("subset indices must be >= 1");
    }

    index_subset(std::initializer_list<int> init) : index_subset(std::vector<int>(init)) {}

    // Parses "1,3,4". Whitespace around entries is accepted.
    static index_subset from_string(const std::string& text) {
        std::vector<int> members;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            size_t a = item.find_first_not_of(" \t");
            size_t b = item.find_last_not_of(" \t");
            if (a == std::string::npos) throw parse_error("empty entry in subset '" + text + "'");
            item = item.substr(a, b - a + 1);
            try {
                size_t pos = 0;
                int v = std::stoi(item, &pos);
                if (pos != item.size()) throw parse_error("bad subset entry '" + item + "'");
                members.push_back(v);
            } catch (const std::invalid_argument&) {
                throw parse_error("bad subset entry '" + item + "'");
            } catch (const std::out_of_range&) {
                throw parse_error("subset entry out of range '" + item + "'");
            }
        }
        if (members.empty()) throw parse_error("subset '" + text + "' is empty");
        return index_subset(std::move(members));
    }

    static index_subset from_mask(std::uint32_t mask) {
        std::vector<int> members;
        for (int j = 0; mask != 0; ++j, mask >>= 1)
            if (mask & 1u) members.push_back(j + 1);
        return index_subset(std::move(members));
    }

    static index_subset full(int d) {
        std::vector<int> members(static_cast<size_t>(d));
        for (int j = 0; j < d; ++j) members[static_cast<size_t>(j)] = j + 1;
        return index_subset(std::move(members));
    }

    const std::vector<int>& members() const { return members_; }
    int size() const { return static_cast<int>(members_.size()); }
    bool empty() const { return members_.empty(); }

    bool contains(int j) const {
        return std::binary_search(members_.begin(), members_.end(), j);
    }

    bool is_subset_of(const index_subset& other) const {
        return std::includes(other.members_.begin(), other.members_.end(),
                             members_.begin(), members_.end());
    }

    int max_index() const { return members_.empty() ? 0 : members_.back(); }

    std::uint32_t mask() const {
        std::uint32_t m = 0;
        for (int j : members_) m |= (1u << (j - 1));
        return m;
    }

    index_subset without(int j) const {
        std::vector<int> rest;
        rest.reserve(members_.size());
        for (int k : members_)
            if (k != j) rest.push_back(k);
        return index_subset(std::move(rest));
    }

    // "1,3,4" (ascending, comma-joined); used as the canonical key in JSON.
    std::string to_string() const {
        std::string out;
        for (size_t i = 0; i < members_.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(members_[i]);
        }
        return out;
    }

    void check_within(int d) const {
        if (max_index() > d)
            throw validation_error("subset " + to_string() + " exceeds dimension " +
                                   std::to_string(d));
    }

    bool operator==(const index_subset& other) const { return members_ == other.members_; }
    bool operator!=(const index_subset& other) const { return members_ != other.members_; }

    // size-then-lexicographic order
    bool operator<(const index_subset& other) const {
        if (members_.size() != other.members_.size())
            return members_.size() < other.members_.size();
        return members_ < other.members_;
    }

private:
    std::vector<int> members_;
};

// Visits every subset S of {1,...,d} with kmin <= |S| <= kmax in
// size-then-lexicographic order: {1,2} < {1,3} < {2,3} < {1,2,3}.
inline void for_each_subset(int d, int kmin, int kmax,
                            const std::function<void(const index_subset&)>& fn) {
    if (d < 1 || d > max_enum_dim)
        throw validation_error("subset enumeration supports 1 <= d <= " +
                               std::to_string(max_enum_dim));
    kmin = std::max(kmin, 1);
    kmax = std::min(kmax, d);
    std::vector<int> comb;
    for (int k = kmin; k <= kmax; ++k) {
        comb.resize(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) comb[static_cast<size_t>(i)] = i + 1;
        while (true) {
            fn(index_subset(comb));
            // next k-combination of {1..d} in lexicographic order
            int i = k - 1;
            while (i >= 0 && comb[static_cast<size_t>(i)] == d - (k - 1 - i)) --i;
            if (i < 0) break;
            ++comb[static_cast<size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                comb[static_cast<size_t>(j)] = comb[static_cast<size_t>(j - 1)] + 1;
        }
    }
}

inline std::vector<index_subset> enumerate_subsets(int d, int kmin = 1, int kmax = -1) {
    if (kmax < 0) kmax = d;
    std::vector<index_subset> out;
    for_each_subset(d, kmin, kmax, [&](const index_subset& s) { out.push_back(s); });
    return out;
}

} // namespace coptail

#endif
