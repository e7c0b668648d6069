#ifndef COPTAIL_GAUSSIAN_HPP
#define COPTAIL_GAUSSIAN_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coptail/correlation.hpp"
#include "coptail/errors.hpp"
#include "coptail/mvn.hpp"
#include "coptail/normal.hpp"
#include "coptail/qp.hpp"
#include "coptail/report.hpp"
#include "coptail/rng.hpp"
#include "coptail/subsets.hpp"

namespace coptail {

inline constexpr double gaussian_positivity_tol = 1e-10;

// Exact joint tail order of a Gaussian subvector: kappa_S is the optimum of
// min z' (Sigma_S)^-1 z over z >= 1. The survival diagonal then behaves like
// u^kappa_S times (-2 log u)^log_exponent times a slowly varying factor.
struct gaussian_tail_order_result {
    index_subset subset;
    double kappa = 1.0;
    std::vector<int> active;       // global indices of the active set
    Eigen::VectorXd h;             // multipliers on the active set (local order)
    double log_exponent = 0.0;     // (kappa - |active|)/2
    bool degenerate = false;
    bool fallback_used = false;
};

inline gaussian_tail_order_result gaussian_tail_order(const correlation_matrix& corr,
                                                      const index_subset& s) {
    s.check_within(corr.dim());
    if (s.size() < 2)
        throw validation_error("gaussian_tail_order requires |S| >= 2");
    const Eigen::MatrixXd sig = corr.submatrix(s);
    const int k = s.size();
    Eigen::LLT<Eigen::MatrixXd> llt(sig);
    if (llt.info() != Eigen::Success)
        throw numeric_error("subset correlation matrix is not positive definite");
    const Eigen::MatrixXd q = llt.solve(Eigen::MatrixXd::Identity(k, k));
    const qp_solution sol = solve_active_set(q);

    gaussian_tail_order_result res;
    res.subset = s;
    res.kappa = sol.value;
    for (int local : sol.active)
        res.active.push_back(s.members()[static_cast<size_t>(local - 1)]);
    res.h.resize(static_cast<Eigen::Index>(sol.active.size()));
    for (size_t i = 0; i < sol.active.size(); ++i)
        res.h(static_cast<Eigen::Index>(i)) = sol.h(sol.active[i] - 1);
    res.log_exponent = 0.5 * (sol.value - static_cast<double>(sol.active.size()));
    res.degenerate = sol.degenerate;
    res.fallback_used = sol.fallback_used;
    return res;
}

enum class positivity_status { pass, fail, boundary };

struct subset_positivity {
    index_subset subset;
    double min_component = 0.0;       // min of (Sigma_S)^-1 1
    positivity_status status = positivity_status::pass;
    std::optional<gaussian_tail_order_result> order; // for |S| >= 2
};

// Mutual asymptotic independence holds iff (Sigma_S)^-1 1 > 0 componentwise
// for every non-empty S. Components within the tolerance band around zero
// make the criterion inconclusive (reported as boundary).
struct gaussian_tail_report {
    std::optional<bool> mutual;       // nullopt when boundary cases block the verdict
    std::vector<subset_positivity> subsets;
    std::vector<index_subset> failing;
    std::vector<index_subset> boundary;
};

inline gaussian_tail_report gaussian_mutual_check(const correlation_matrix& corr,
                                                  bool with_orders = true) {
    const int d = corr.dim();
    gaussian_tail_report rep;
    bool any_fail = false, any_boundary = false;
    for_each_subset(d, 1, d, [&](const index_subset& s) {
        subset_positivity sp;
        sp.subset = s;
        const Eigen::MatrixXd sig = corr.submatrix(s);
        Eigen::LLT<Eigen::MatrixXd> llt(sig);
        if (llt.info() != Eigen::Success)
            throw numeric_error("subset correlation matrix is not positive definite");
        const Eigen::VectorXd v = llt.solve(Eigen::VectorXd::Ones(s.size()));
        sp.min_component = v.minCoeff();
        if (sp.min_component > gaussian_positivity_tol)
            sp.status = positivity_status::pass;
        else if (sp.min_component < -gaussian_positivity_tol)
            sp.status = positivity_status::fail;
        else
            sp.status = positivity_status::boundary;
        if (sp.status == positivity_status::fail) {
            any_fail = true;
            rep.failing.push_back(s);
        }
        if (sp.status == positivity_status::boundary) {
            any_boundary = true;
            rep.boundary.push_back(s);
        }
        if (with_orders && s.size() >= 2) sp.order = gaussian_tail_order(corr, s);
        rep.subsets.push_back(std::move(sp));
    });
    if (any_fail)
        rep.mutual = false;
    else if (any_boundary)
        rep.mutual = std::nullopt; // criterion is inconclusive on the boundary
    else
        rep.mutual = true;
    return rep;
}

// Pairwise asymptotic independence: kappa > 1 for every pair, which holds for
// every valid correlation matrix; the report carries the per-pair orders.
struct gaussian_pairwise_report {
    bool pairwise = true;
    std::vector<gaussian_tail_order_result> pairs;
};

inline gaussian_pairwise_report gaussian_pairwise_check(const correlation_matrix& corr) {
    gaussian_pairwise_report rep;
    for_each_subset(corr.dim(), 2, 2, [&](const index_subset& s) {
        rep.pairs.push_back(gaussian_tail_order(corr, s));
        if (!(rep.pairs.back().kappa > 1.0)) rep.pairwise = false;
    });
    return rep;
}

// Survival diagonal P(U_j > 1-u for all j in S) evaluated directly as a
// Gaussian upper-orthant probability; relative accuracy is preserved far
// into the joint tail.
inline std::vector<diag_point> gaussian_survival_diagonal(const correlation_matrix& corr,
                                                          const index_subset& s,
                                                          const std::vector<double>& u_grid,
                                                          std::uint64_t seed,
                                                          double target_rel = 1e-3,
                                                          long max_points = 1L << 20) {
    s.check_within(corr.dim());
    const Eigen::MatrixXd sig = corr.submatrix(s);
    std::vector<diag_point> out;
    for (size_t i = 0; i < u_grid.size(); ++i) {
        const double u = u_grid[i];
        if (!(u > 0.0 && u < 1.0))
            throw validation_error("diagonal grid values must lie in (0,1)");
        const double a = -normal_quantile(u); // Phi^-1(1-u) without cancellation
        const Eigen::VectorXd lower = Eigen::VectorXd::Constant(s.size(), a);
        const mvn_result r =
            mvn_rectangle(lower, sig, splitmix64(seed ^ (0x517cc1b7u + i)), target_rel, max_points);
        out.push_back({u, r.value, r.se});
    }
    return out;
}

// Lower-orthant copula value C_S(u) = P(Z_j <= Phi^-1(u_j)); by symmetry the
// same rectangle integrator applies with reflected bounds.
inline mvn_result gaussian_copula_point(const correlation_matrix& corr, const index_subset& s,
                                        const std::vector<double>& u, std::uint64_t seed,
                                        double target_rel = 1e-3, long max_points = 1L << 20) {
    s.check_within(corr.dim());
    if (static_cast<int>(u.size()) != s.size())
        throw validation_error("argument count does not match subset size");
    Eigen::VectorXd lower(s.size());
    for (size_t i = 0; i < u.size(); ++i) {
        if (!(u[i] > 0.0 && u[i] < 1.0))
            throw validation_error("copula arguments must lie in (0,1)");
        lower(static_cast<Eigen::Index>(i)) = -normal_quantile(u[i]);
    }
    return mvn_rectangle(lower, corr.submatrix(s), seed, target_rel, max_points);
}

} // namespace coptail

#endif
