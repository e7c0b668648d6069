#ifndef COPTAIL_MVN_HPP
#define COPTAIL_MVN_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "coptail/errors.hpp"
#include "coptail/normal.hpp"
#include "coptail/rng.hpp"

namespace coptail {

struct mvn_result {
    double value = 0.0;
    double se = 0.0;
    long points = 0;     // evaluations per randomization
    bool converged = true;
    double target_rel = 0.0;
};

inline constexpr int mvn_max_dim = 10;

// Upper-orthant probability P(Z_j > lower_j for all j), Z ~ N(0, sigma).
// Sequential conditioning through the Cholesky factor with all conditional
// probabilities kept in survival form, so tiny orthant probabilities retain
// full relative accuracy. The (m-1)-dimensional integral is evaluated with a
// randomized Kronecker lattice: 12 independent shifts, point count doubled
// until the shift-spread standard error meets target_rel. Deterministic for a
// fixed seed.
inline mvn_result mvn_rectangle(const Eigen::VectorXd& lower, const Eigen::MatrixXd& sigma,
                                std::uint64_t seed, double target_rel = 1e-3,
                                long max_points = 1L << 20) {
    const int m = static_cast<int>(lower.size());
    if (m < 1 || sigma.rows() != m || sigma.cols() != m)
        throw validation_error("mvn_rectangle: bound/matrix dimensions disagree");
    if (m > mvn_max_dim)
        throw validation_error("mvn_rectangle supports at most " +
                               std::to_string(mvn_max_dim) + " variables");
    mvn_result res;
    res.target_rel = target_rel;
    if (m == 1) {
        res.value = normal_sf(lower(0));
        return res;
    }

    // most restrictive variable first
    std::vector<int> order(static_cast<size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return lower(a) > lower(b); });
    Eigen::VectorXd a(m);
    Eigen::MatrixXd s(m, m);
    for (int i = 0; i < m; ++i) {
        a(i) = lower(order[static_cast<size_t>(i)]);
        for (int j = 0; j < m; ++j)
            s(i, j) = sigma(order[static_cast<size_t>(i)], order[static_cast<size_t>(j)]);
    }
    Eigen::LLT<Eigen::MatrixXd> llt(s);
    if (llt.info() != Eigen::Success)
        throw numeric_error("mvn_rectangle: covariance is not positive definite");
    const Eigen::MatrixXd L = llt.matrixL();

    static const double primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    const int dim_w = m - 1;
    std::vector<double> alpha(static_cast<size_t>(dim_w));
    for (int i = 0; i < dim_w; ++i) {
        double r = std::sqrt(primes[i]);
        alpha[static_cast<size_t>(i)] = r - std::floor(r);
    }
    constexpr int n_shifts = 12;
    rng_stream shift_rng(seed, 0x6d766e); // stream tag for this integrator
    std::vector<double> shifts(static_cast<size_t>(n_shifts * dim_w));
    for (double& x : shifts) x = shift_rng.uniform01();

    const double s1 = normal_sf(a(0));
    std::vector<double> sum(n_shifts, 0.0);
    std::vector<long> count(n_shifts, 0);
    std::vector<double> xi(static_cast<size_t>(m));
    std::vector<double> w(static_cast<size_t>(dim_w));

    long n_per_shift = 1024;
    long k_done = 0;
    while (true) {
        for (long k = k_done; k < n_per_shift; ++k) {
            for (int r = 0; r < n_shifts; ++r) {
                for (int i = 0; i < dim_w; ++i) {
                    double v = (k + 1) * alpha[static_cast<size_t>(i)] +
                               shifts[static_cast<size_t>(r * dim_w + i)];
                    v -= std::floor(v);
                    // reflect to improve lattice uniformity near the edges
                    w[static_cast<size_t>(i)] = 1.0 - std::fabs(2.0 * v - 1.0);
                }
                double f = s1;
                double p = s1 * w[0];
                for (int i = 1; i < m; ++i) {
                    p = std::max(p, 1e-300);
                    if (p >= 1.0) p = 1.0 - 1e-16;
                    xi[static_cast<size_t>(i - 1)] = -normal_quantile(p);
                    double c = a(i);
                    for (int j = 0; j < i; ++j) c -= L(i, j) * xi[static_cast<size_t>(j)];
                    c /= L(i, i);
                    const double si = normal_sf(c);
                    f *= si;
                    if (i < m - 1) p = si * w[static_cast<size_t>(i)];
                }
                sum[static_cast<size_t>(r)] += f;
                ++count[static_cast<size_t>(r)];
            }
        }
        k_done = n_per_shift;

        double mean = 0.0;
        for (int r = 0; r < n_shifts; ++r) mean += sum[static_cast<size_t>(r)] / count[static_cast<size_t>(r)];
        mean /= n_shifts;
        double var = 0.0;
        for (int r = 0; r < n_shifts; ++r) {
            const double d = sum[static_cast<size_t>(r)] / count[static_cast<size_t>(r)] - mean;
            var += d * d;
        }
        var /= (n_shifts - 1.0) * n_shifts;
        res.value = mean;
        res.se = std::sqrt(var);
        res.points = n_per_shift;
        if (res.se <= target_rel * std::max(res.value, 1e-300)) {
            res.converged = true;
            return res;
        }
        if (n_per_shift >= max_points) {
            res.converged = false;
            return res;
        }
        n_per_shift *= 2;
    }
}

} // namespace coptail

#endif
