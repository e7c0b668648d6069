#ifndef COPTAIL_EMPIRICAL_HPP
#define COPTAIL_EMPIRICAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coptail/correlation.hpp"
#include "coptail/errors.hpp"
#include "coptail/marshall_olkin.hpp"
#include "coptail/normal.hpp"
#include "coptail/report.hpp"
#include "coptail/rng.hpp"
#include "coptail/subsets.hpp"

namespace coptail {

struct sample_matrix {
    int dim = 0;
    long n = 0;
    std::uint64_t seed = 0;
    std::string model;
    std::vector<double> data; // row-major, n x dim

    double operator()(long i, int j) const {
        return data[static_cast<size_t>(i) * static_cast<size_t>(dim) + static_cast<size_t>(j)];
    }
};

// Rows are generated in fixed-size chunks, one derived RNG stream per chunk,
// so a sample's prefix does not depend on the total row count and chunks can
// be produced independently by parallel workers.
inline constexpr long sample_chunk_rows = 65536;

template <class RowFn>
inline sample_matrix generate_sample(int dim, long n, std::uint64_t seed, std::string model,
                                     RowFn&& row) {
    if (dim < 1 || n < 1) throw validation_error("sample dimensions must be positive");
    sample_matrix m;
    m.dim = dim;
    m.n = n;
    m.seed = seed;
    m.model = std::move(model);
    m.data.resize(static_cast<size_t>(n) * static_cast<size_t>(dim));
    long chunk = 0;
    for (long start = 0; start < n; start += sample_chunk_rows, ++chunk) {
        rng_stream g(seed, static_cast<std::uint64_t>(chunk));
        const long stop = std::min(n, start + sample_chunk_rows);
        for (long i = start; i < stop; ++i)
            row(g, &m.data[static_cast<size_t>(i) * static_cast<size_t>(dim)]);
    }
    return m;
}

inline sample_matrix gaussian_sample(const correlation_matrix& corr, long n, std::uint64_t seed) {
    const int d = corr.dim();
    Eigen::LLT<Eigen::MatrixXd> llt(corr.matrix());
    if (llt.info() != Eigen::Success)
        throw numeric_error("correlation matrix is not positive definite");
    const Eigen::MatrixXd L = llt.matrixL();
    std::vector<double> z(static_cast<size_t>(d));
    return generate_sample(d, n, seed, "gaussian", [&](rng_stream& g, double* out) {
        for (int j = 0; j < d; ++j) z[static_cast<size_t>(j)] = g.normal();
        for (int j = 0; j < d; ++j) {
            double x = 0.0;
            for (int k = 0; k <= j; ++k) x += L(j, k) * z[static_cast<size_t>(k)];
            out[j] = normal_cdf(x);
        }
    });
}

// Frailty construction: V ~ Gamma(1/theta), U_j = (1 + E_j/V)^(-1/theta)
// has the Clayton copula with parameter theta.
inline sample_matrix clayton_sample(double theta, int d, long n, std::uint64_t seed) {
    if (!(theta > 0.0)) throw validation_error("Clayton sampling requires theta > 0");
    if (d < 2) throw validation_error("sample dimension must be at least 2");
    const double shape = 1.0 / theta;
    return generate_sample(d, n, seed, "clayton", [&](rng_stream& g, double* out) {
        const double v = g.gamma(shape);
        for (int j = 0; j < d; ++j) {
            const double e = g.exponential(1.0);
            out[j] = std::pow(1.0 + e / v, -shape);
        }
    });
}

// Exponential shocks per positive-rate subset; margin j dies at the first
// shock hitting it. Emitting U_j = 1 - exp(-Delta_j X_j) applies the margin's
// own distribution function, so U is uniform and joint upper-tail events
// P(U_j > 1-u) match the survival copula evaluated at u.
inline sample_matrix mo_sample(const mo_model& model, long n, std::uint64_t seed) {
    const int d = model.dim();
    struct shock {
        std::uint32_t mask;
        double rate;
    };
    std::vector<shock> shocks;
    for (const auto& [mask, rate] : model.rates().rates())
        shocks.push_back({mask, to_double(rate)});
    std::vector<double> delta(static_cast<size_t>(d));
    for (int j = 1; j <= d; ++j) delta[static_cast<size_t>(j - 1)] = to_double(model.rates().delta(j));
    std::vector<double> x(static_cast<size_t>(d));
    return generate_sample(d, n, seed, "marshall-olkin", [&](rng_stream& g, double* out) {
        std::fill(x.begin(), x.end(), std::numeric_limits<double>::infinity());
        for (const shock& s : shocks) {
            const double e = g.exponential(s.rate);
            for (int j = 0; j < d; ++j)
                if (s.mask & (1u << j)) x[static_cast<size_t>(j)] = std::min(x[static_cast<size_t>(j)], e);
        }
        for (int j = 0; j < d; ++j) out[j] = -std::expm1(-delta[static_cast<size_t>(j)] * x[static_cast<size_t>(j)]);
    });
}

inline double counterexample_margin_map(double z) { return (2.0 * z + z * z) / 3.0; }

// Three-component mixture on [0,1]^3: with probability 1/3 each the row is
// (A,B,min), (A,min,B) or (min,A,B) for independent uniforms A, B, and each
// coordinate is then pushed through F(z) = (2z + z^2)/3. Joint threshold
// events on the output have the closed forms used by the classification
// fixture; per-coordinate F is deliberately not the mixture's own margin.
inline sample_matrix counterexample_sample(long n, std::uint64_t seed) {
    return generate_sample(3, n, seed, "counterexample", [](rng_stream& g, double* out) {
        const double pick = g.uniform01();
        const double a = g.uniform01(), b = g.uniform01();
        const double mn = std::min(a, b);
        double z0, z1, z2;
        if (pick < 1.0 / 3.0) {
            z0 = a; z1 = b; z2 = mn;
        } else if (pick < 2.0 / 3.0) {
            z0 = a; z1 = mn; z2 = b;
        } else {
            z0 = mn; z1 = a; z2 = b;
        }
        out[0] = counterexample_margin_map(z0);
        out[1] = counterexample_margin_map(z1);
        out[2] = counterexample_margin_map(z2);
    });
}

// Ordinal ranks of margin j (1-based) scaled to (0,1]; ties broken by row
// order. Sorted output is exactly the grid {1/n, ..., 1}.
inline std::vector<double> rank_column(const sample_matrix& m, int j) {
    if (j < 1 || j > m.dim) throw validation_error("rank_column margin index out of range");
    const long n = m.n;
    std::vector<long> idx(static_cast<size_t>(n));
    std::iota(idx.begin(), idx.end(), 0L);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](long a, long b) { return m(a, j - 1) < m(b, j - 1); });
    std::vector<double> out(static_cast<size_t>(n));
    for (long k = 0; k < n; ++k)
        out[static_cast<size_t>(idx[static_cast<size_t>(k)])] =
            static_cast<double>(k + 1) / static_cast<double>(n);
    return out;
}

struct empirical_options {
    bool use_ranks = true;       // false: threshold the raw coordinates directly
    double min_tail_count = 50;  // points with u*n below this are dropped
};

// Empirical survival diagonal: fraction of rows with every selected margin
// above 1-u, with the binomial standard error.
inline std::vector<diag_point> empirical_survival_diagonal(
    const sample_matrix& m, const index_subset& s, const std::vector<double>& u_grid,
    const empirical_options& opts = {}, std::vector<std::string>* warnings = nullptr) {
    s.check_within(m.dim);
    const long n = m.n;
    std::vector<std::vector<double>> cols;
    if (opts.use_ranks)
        for (int j : s.members()) cols.push_back(rank_column(m, j));
    std::vector<diag_point> out;
    for (double u : u_grid) {
        if (!(u > 0.0 && u < 1.0))
            throw validation_error("diagonal grid values must lie in (0,1)");
        if (u * static_cast<double>(n) < opts.min_tail_count) {
            if (warnings)
                warnings->push_back("empirical diagonal: dropped u=" + std::to_string(u) +
                                    " (expected tail count below " +
                                    std::to_string(opts.min_tail_count) + ")");
            continue;
        }
        const double t = 1.0 - u;
        long count = 0;
        for (long i = 0; i < n; ++i) {
            bool all = true;
            if (opts.use_ranks) {
                for (const auto& c : cols)
                    if (!(c[static_cast<size_t>(i)] > t)) {
                        all = false;
                        break;
                    }
            } else {
                for (int j : s.members())
                    if (!(m(i, j - 1) > t)) {
                        all = false;
                        break;
                    }
            }
            if (all) ++count;
        }
        const double p = static_cast<double>(count) / static_cast<double>(n);
        out.push_back({u, p, std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n))});
    }
    return out;
}

// Empirical copula value: fraction of rows with every selected margin at or
// below its threshold.
inline diag_point empirical_copula_point(const sample_matrix& m, const index_subset& s,
                                         const std::vector<double>& u, bool use_ranks = true) {
    s.check_within(m.dim);
    if (u.size() != static_cast<size_t>(s.size()))
        throw validation_error("argument count does not match subset size");
    const long n = m.n;
    std::vector<std::vector<double>> cols;
    if (use_ranks)
        for (int j : s.members()) cols.push_back(rank_column(m, j));
    long count = 0;
    for (long i = 0; i < n; ++i) {
        bool all = true;
        for (size_t k = 0; k < u.size(); ++k) {
            const double v = use_ranks ? cols[k][static_cast<size_t>(i)]
                                       : m(i, s.members()[k] - 1);
            if (!(v <= u[k])) {
                all = false;
                break;
            }
        }
        if (all) ++count;
    }
    const double p = static_cast<double>(count) / static_cast<double>(n);
    return {0.0, p, std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n))};
}

// Kolmogorov-Smirnov distance of one margin from the uniform law.
inline double ks_uniform_statistic(const sample_matrix& m, int j) {
    const long n = m.n;
    std::vector<double> col(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) col[static_cast<size_t>(i)] = m(i, j - 1);
    std::sort(col.begin(), col.end());
    double d = 0.0;
    for (long i = 0; i < n; ++i) {
        const double x = col[static_cast<size_t>(i)];
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / static_cast<double>(n) - x));
        d = std::max(d, std::fabs(x - static_cast<double>(i) / static_cast<double>(n)));
    }
    return d;
}

struct tail_fit {
    double kappa = 0.0;      // power of u
    double log_coeff = 0.0;  // power of (-2 log u); 0 when fitted without it
    double intercept = 0.0;  // log of the constant factor
    double rms = 0.0;        // root-mean-square log residual
    bool with_log_term = false;
    int used = 0;            // points with positive value entering the fit
};

// Least-squares fit of log v = intercept + kappa log u + log_coeff log(-2 log u)
// over a diagonal grid; the optional log regressor absorbs the slowly varying
// factor of Gaussian-type tails so kappa stays unbiased.
inline tail_fit fit_tail_order(const std::vector<diag_point>& pts, bool with_log_term = true) {
    std::vector<const diag_point*> ok;
    for (const auto& p : pts)
        if (p.value > 0.0 && p.u > 0.0 && p.u < 1.0) ok.push_back(&p);
    const int cols = with_log_term ? 3 : 2;
    if (static_cast<int>(ok.size()) < cols + 1)
        throw validation_error("tail-order fit needs at least " + std::to_string(cols + 1) +
                               " positive diagonal points");
    Eigen::MatrixXd x(static_cast<Eigen::Index>(ok.size()), cols);
    Eigen::VectorXd y(static_cast<Eigen::Index>(ok.size()));
    for (size_t i = 0; i < ok.size(); ++i) {
        const double lu = std::log(ok[i]->u);
        x(static_cast<Eigen::Index>(i), 0) = 1.0;
        x(static_cast<Eigen::Index>(i), 1) = lu;
        if (with_log_term) x(static_cast<Eigen::Index>(i), 2) = std::log(-2.0 * lu);
        y(static_cast<Eigen::Index>(i)) = std::log(ok[i]->value);
    }
    const Eigen::VectorXd beta = x.colPivHouseholderQr().solve(y);
    tail_fit fit;
    fit.intercept = beta(0);
    fit.kappa = beta(1);
    fit.log_coeff = with_log_term ? beta(2) : 0.0;
    fit.with_log_term = with_log_term;
    fit.used = static_cast<int>(ok.size());
    fit.rms = std::sqrt((x * beta - y).squaredNorm() / static_cast<double>(ok.size()));
    return fit;
}

} // namespace coptail

#endif
