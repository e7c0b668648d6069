#ifndef COPTAIL_PRECISION_HPP
#define COPTAIL_PRECISION_HPP

#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "coptail/errors.hpp"

namespace coptail {

namespace mp = boost::multiprecision;

using big50  = mp::number<mp::cpp_bin_float<50>,  mp::et_off>;
using big100 = mp::number<mp::cpp_bin_float<100>, mp::et_off>;
using big200 = mp::number<mp::cpp_bin_float<200>, mp::et_off>;
using big400 = mp::number<mp::cpp_bin_float<400>, mp::et_off>;

inline constexpr int max_working_digits = 400;

struct precision_request {
    double target_rel_error = 1e-12;
    int max_digits = max_working_digits;
};

// Decimal digits needed so that an alternating sum whose terms are O(1) can
// resolve a result of magnitude ~u_min^k to ~30 significant digits.
inline int working_digits_for(int subset_size, double u_min) {
    if (u_min <= 0.0 || u_min >= 1.0) return 30;
    double lost = static_cast<double>(subset_size) * std::log10(1.0 / u_min);
    return static_cast<int>(std::ceil(lost)) + 30;
}

template <class R>
struct scalar_tag {
    using type = R;
};

// Runs fn with the smallest scalar type carrying at least `digits` decimal
// digits. fn receives a scalar_tag and returns the result converted to double.
template <class Fn>
auto with_working_precision(int digits, Fn&& fn) {
    if (digits <= 15) return fn(scalar_tag<double>{});
    if (digits <= 50) return fn(scalar_tag<big50>{});
    if (digits <= 100) return fn(scalar_tag<big100>{});
    if (digits <= 200) return fn(scalar_tag<big200>{});
    if (digits <= 400) return fn(scalar_tag<big400>{});
    throw precision_error("required working precision of " + std::to_string(digits) +
                          " decimal digits exceeds the available maximum of " +
                          std::to_string(max_working_digits));
}

template <class R>
constexpr int digits_of() {
    if constexpr (std::is_same_v<R, double>) return 15;
    else return static_cast<int>(std::numeric_limits<R>::digits10);
}

} // namespace coptail

#endif
