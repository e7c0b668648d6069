// Acceptance gate: nine end-to-end checks, one line of output each, with
// stated tolerances and per-check wall-clock budgets. Run with no arguments
// for the full gate or with --criterion N for a single check.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "coptail/classify.hpp"

using namespace coptail;

namespace {

struct outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

correlation_matrix three_var(double rho) {
    const double s2 = std::sqrt(2.0) * rho;
    Eigen::MatrixXd m(3, 3);
    m << 1.0, rho, s2, rho, 1.0, s2, s2, s2, 1.0;
    return validate_correlation(m);
}

constexpr double rho_star = 1.0 / (2.0 * std::numbers::sqrt2 - 1.0);

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

// 1. Exact Gaussian tail orders for the three-variable family, both regimes,
//    plus both pair closed forms, all to 1e-9 relative.
outcome criterion1() {
    outcome out;
    const double c = 4.0 * std::numbers::sqrt2 - 1.0;
    for (double rho : {-0.3, 0.0, 0.2, 0.4, 0.54}) {
        const double expect = (3.0 - c * rho) / (1.0 + rho - 4.0 * rho * rho);
        const auto t = gaussian_tail_order(three_var(rho), index_subset{1, 2, 3});
        out.require(close_rel(t.kappa, expect, 1e-9),
                    "triple order at rho=" + fmt(rho) + ": " + fmt(t.kappa) + " vs " +
                        fmt(expect));
    }
    for (double rho : {0.56, 0.60}) {
        const auto t = gaussian_tail_order(three_var(rho), index_subset{1, 2, 3});
        out.require(close_rel(t.kappa, 2.0 / (1.0 + rho), 1e-9),
                    "reduced-active-set order at rho=" + fmt(rho) + ": " + fmt(t.kappa));
    }
    for (double rho : {-0.3, 0.0, 0.2, 0.4, 0.54, 0.56, 0.60}) {
        const correlation_matrix m = three_var(rho);
        const auto p12 = gaussian_tail_order(m, index_subset{1, 2});
        const auto p13 = gaussian_tail_order(m, index_subset{1, 3});
        out.require(close_rel(p12.kappa, 2.0 / (1.0 + rho), 1e-9),
                    "pair 1,2 at rho=" + fmt(rho));
        out.require(close_rel(p13.kappa, 2.0 / (1.0 + std::sqrt(2.0) * rho), 1e-9),
                    "pair 1,3 at rho=" + fmt(rho));
    }
    if (out.pass) out.detail = "closed-form orders match in both active-set regimes";
    return out;
}

// 2. The mutual-independence verdict flips across the positivity threshold
//    and names the failing triple.
outcome criterion2() {
    outcome out;
    const auto below = gaussian_mutual_check(three_var(rho_star - 1e-3));
    out.require(below.mutual.has_value() && *below.mutual, "expected mutual below threshold");
    const auto above = gaussian_mutual_check(three_var(rho_star + 1e-3));
    out.require(above.mutual.has_value() && !*above.mutual,
                "expected non-mutual above threshold");
    out.require(above.failing.size() == 1 && above.failing.front() == index_subset{1, 2, 3},
                "failing subset should be exactly 1,2,3");
    if (out.pass)
        out.detail = "verdict flips at rho=" + fmt(rho_star) + " with subset 1,2,3 reported";
    return out;
}

// 3. Active-set solver vs exhaustive enumeration on 1000 random instances per
//    dimension, plus value monotonicity on 200 nested pairs.
outcome criterion3() {
    outcome out;
    const auto random_corr = [](int m, rng_stream& g) {
        Eigen::MatrixXd a(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) a(i, j) = g.normal();
        Eigen::MatrixXd s = a * a.transpose();
        s += 0.1 * m * Eigen::MatrixXd::Identity(m, m);
        Eigen::VectorXd d = s.diagonal().array().sqrt().inverse();
        return Eigen::MatrixXd(d.asDiagonal() * s * d.asDiagonal());
    };
    const auto inv = [](const Eigen::MatrixXd& s) {
        return Eigen::MatrixXd(s.llt().solve(Eigen::MatrixXd::Identity(s.rows(), s.cols())));
    };
    long checked = 0;
    for (int m = 2; m <= 7 && out.pass; ++m) {
        rng_stream g(5000 + m, 0);
        for (int rep = 0; rep < 1000; ++rep) {
            const Eigen::MatrixXd q = inv(random_corr(m, g));
            const qp_solution fast = solve_active_set(q);
            const qp_solution slow = solve_bruteforce(q);
            ++checked;
            if (fast.active != slow.active) {
                out.require(false, "active sets differ at m=" + std::to_string(m) + " rep=" +
                                       std::to_string(rep));
                break;
            }
            if (!close_rel(fast.value, slow.value, 1e-8)) {
                out.require(false, "values differ at m=" + std::to_string(m));
                break;
            }
            if (!(fast.value > 1.0)) {
                out.require(false, "order not above one at m=" + std::to_string(m));
                break;
            }
        }
    }
    rng_stream g(6001, 0);
    int pairs = 0;
    while (pairs < 200 && out.pass) {
        const int m = 3 + static_cast<int>(g.raw() % 5);
        const Eigen::MatrixXd sigma = random_corr(m, g);
        std::vector<int> inner;
        for (int i = 1; i <= m; ++i)
            if (g.uniform01() < 0.6) inner.push_back(i);
        if (static_cast<int>(inner.size()) < 2 || static_cast<int>(inner.size()) == m) continue;
        const index_subset s(inner);
        Eigen::MatrixXd sub(s.size(), s.size());
        for (int a = 0; a < s.size(); ++a)
            for (int b = 0; b < s.size(); ++b)
                sub(a, b) = sigma(s.members()[a] - 1, s.members()[b] - 1);
        const double vi = solve_active_set(inv(sub)).value;
        const double vo = solve_active_set(inv(sigma)).value;
        out.require(vi <= vo + 1e-10, "monotonicity violated for subset " + s.to_string());
        ++pairs;
    }
    if (out.pass)
        out.detail = std::to_string(checked) + " oracle matches, " + std::to_string(pairs) +
                     " nested pairs monotone";
    return out;
}

// 4. Shock-model exponent algebra: exact rationals for both catalog families,
//    power-law diagonals to 1e-12, and 100 random strictly positive models
//    classified mutual with certified gaps.
outcome criterion4() {
    outcome out;
    for (int d = 3; d <= 8; ++d) {
        const mo_model eq(mo_equal_rates(d));
        out.require(mo_diagonal_exponent(eq, index_subset{1, 2}) == rational(3, 2),
                    "equal-rates pair exponent at d=" + std::to_string(d));
        const mo_model pr(mo_proportional_rates(d));
        const rational expect = rational(1) + rational(d, 2 * (d + 1));
        out.require(mo_diagonal_exponent(pr, index_subset{1, 2}) == expect,
                    "proportional-rates pair exponent at d=" + std::to_string(d));
    }
    for (int d : {3, 5}) {
        const mo_model eq(mo_equal_rates(d));
        for_each_subset(d, 2, d, [&](const index_subset& s) {
            const double ex = to_double(mo_diagonal_exponent(eq, s));
            for (double u : {1e-1, 1e-3, 1e-6}) {
                const std::vector<double> diag(static_cast<size_t>(s.size()), u);
                const double v = eq.survival_restricted(s, diag);
                out.require(close_rel(v, std::pow(u, ex), 1e-12),
                            "diagonal power law at subset " + s.to_string() + " u=" + fmt(u));
            }
        });
    }
    rng_stream g(424242, 0);
    int mutual_count = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const int d = 2 + static_cast<int>(g.raw() % 4);
        std::vector<std::pair<std::uint32_t, rational>> rates;
        for (std::uint32_t mask = 1; mask < (1u << d); ++mask)
            rates.emplace_back(mask, rational(1 + static_cast<long>(g.raw() % 20),
                                              1 + static_cast<long>(g.raw() % 9)));
        const mo_model m{rate_parameter_set(d, rates)};
        const classification_report rep_out = mo_classify(m);
        bool ok = rep_out.mutual.has_value() && *rep_out.mutual;
        for (const auto& e : rep_out.evidence) {
            if (!e.gap_bound.has_value() || e.exponent_gap < *e.gap_bound - 1e-15) ok = false;
            const double eta = to_double(m.rates().eta(e.removed, 1u << (e.removed - 1)));
            if (!close_rel(*e.gap_bound, eta, 1e-14)) ok = false;
        }
        if (ok) ++mutual_count;
    }
    out.require(mutual_count == 100,
                "only " + std::to_string(mutual_count) + "/100 random models certified mutual");
    if (out.pass) out.detail = "exact rationals, 1e-12 diagonals, 100/100 certified mutual";
    return out;
}

// 5. The mixture fixture: triple diagonal over u^2 near 9/16, triple equal to
//    the pair exactly, and the pairwise-but-not-mutual classification.
outcome criterion5() {
    outcome out;
    const counterexample_runtime_model cx;
    const double u = 1e-6;
    const double triple = cx.survival_diagonal(index_subset{1, 2, 3}, u);
    out.require(close_rel(triple / (u * u), 9.0 / 16.0, 1e-3),
                "triple/u^2 = " + fmt(triple / (u * u)) + " vs 9/16");
    const double pair = cx.survival_diagonal(index_subset{1, 2}, u);
    out.require(triple == pair, "triple and pair diagonals must coincide exactly");
    const auto rep = classify_model(cx, 3, classify_strategy::analytic_exponents);
    out.require(rep.pairwise, "expected pairwise independence");
    out.require(rep.mutual.has_value() && !*rep.mutual, "expected mutual to fail");
    if (out.pass) out.detail = "ratio " + fmt(triple / (u * u)) + " vs 9/16, triple = pair";
    return out;
}

// 6. Quadrature-backed regression recovers the exact Gaussian orders within
//    0.05 for both regimes, triples and pairs.
outcome criterion6() {
    outcome out;
    std::vector<double> grid(12);
    const double step = std::log(1e-2 / 1e-8) / 11.0;
    for (int i = 0; i < 12; ++i) grid[static_cast<size_t>(i)] = 1e-2 * std::exp(-step * i);
    for (double rho : {0.3, 0.6}) {
        const correlation_matrix m = three_var(rho);
        for (const index_subset& s :
             {index_subset{1, 2, 3}, index_subset{1, 2}, index_subset{1, 3},
              index_subset{2, 3}}) {
            const double exact = gaussian_tail_order(m, s).kappa;
            const auto pts = gaussian_survival_diagonal(m, s, grid, 987654321u, 1e-3);
            const tail_fit fit = fit_tail_order(pts, true);
            out.require(std::abs(fit.kappa - exact) <= 0.05,
                        "rho=" + fmt(rho) + " subset " + s.to_string() + ": fitted " +
                            fmt(fit.kappa) + " vs exact " + fmt(exact));
        }
    }
    if (out.pass) out.detail = "fitted orders within 0.05 for 8 subset/rho combinations";
    return out;
}

// 7. Generator limit estimates across the catalog plus the inverse-gamma
//    family's three classification regimes.
outcome criterion7() {
    outcome out;
    for (double theta : {0.5, 1.0, 3.0}) {
        const auto r = theta1_estimate(generator(generator_family::clayton, theta));
        out.require(std::abs(r.value - 1.0) <= 1e-3 && r.converged,
                    "clayton theta=" + fmt(theta) + " limit " + fmt(r.value));
    }
    for (double theta : {1.0, 5.0}) {
        const auto r = theta1_estimate(generator(generator_family::frank, theta));
        out.require(std::abs(r.value - 1.0) <= 1e-3 && r.converged,
                    "frank theta=" + fmt(theta) + " limit " + fmt(r.value));
    }
    {
        const auto r = theta1_estimate(generator(generator_family::amh, 0.5));
        out.require(std::abs(r.value - 1.0) <= 1e-3 && r.converged,
                    "amh limit " + fmt(r.value));
    }
    {
        const auto r = theta1_estimate(generator(generator_family::gumbel, 2.0));
        out.require(std::abs(r.value - 2.0) <= 1e-2, "gumbel limit " + fmt(r.value));
        out.require(r.catalog_mismatch, "gumbel catalog-discrepancy flag not set");
    }
    const auto low = acig_tail_orders(0.5, 3);
    out.require(low.max_k == 1 && !low.pairwise && low.kappa[0] == 1.0 && low.kappa[1] == 1.0,
                "inverse-gamma alpha=0.5 d=3 regime");
    const auto mid = acig_tail_orders(2.5, 4);
    out.require(mid.max_k == 3 && mid.pairwise && !mid.mutual && mid.kappa[0] == 2.0 &&
                    mid.kappa[1] == 2.5 && mid.kappa[2] == 2.5,
                "inverse-gamma alpha=2.5 d=4 regime");
    const auto high = acig_tail_orders(5.0, 4);
    out.require(high.max_k == 4 && high.mutual && high.kappa[0] == 2.0 &&
                    high.kappa[1] == 3.0 && high.kappa[2] == 4.0,
                "inverse-gamma alpha=5 d=4 regime");
    if (out.pass) out.detail = "six generator limits and three inverse-gamma regimes";
    return out;
}

// 8. Cancellation-safe alternating sums: the six-variable independence
//    diagonal at 1e-6, and the near-independence slope of the frank family.
outcome criterion8() {
    outcome out;
    const independence_model ind{6};
    const survival_eval e = survival_diagonal_generic(ind, index_subset::full(6), 1e-6);
    out.require(close_rel(e.value, 1e-36, 1e-6),
                "independence diagonal " + fmt(e.value) + " vs 1e-36");
    const archimedean_model frank{generator(generator_family::frank, 1.0), 3};
    const double v1 = survival_diagonal_generic(frank, index_subset::full(3), 1e-6).value;
    const double v2 = survival_diagonal_generic(frank, index_subset::full(3), 1e-3).value;
    const double slope = (std::log(v2) - std::log(v1)) / (std::log(1e-3) - std::log(1e-6));
    out.require(std::abs(slope - 3.0) <= 0.1, "frank slope " + fmt(slope) + " vs 3");
    if (out.pass)
        out.detail = "diagonal exact to 1e-6 at " + std::to_string(e.working_digits) +
                     " digits, frank slope " + fmt(slope);
    return out;
}

// 9. Monte-Carlo cross-checks at one million rows against exact and
//    quadrature references, all within three binomial standard errors.
outcome criterion9() {
    outcome out;
    const long n = 1000000;
    const std::uint64_t seed = 1;
    empirical_options opts;
    opts.use_ranks = false;

    const sample_matrix mo = mo_sample(mo_model(mo_equal_rates(3)), n, seed);
    const auto mo_pts =
        empirical_survival_diagonal(mo, index_subset{1, 2}, {0.1}, opts, nullptr);
    const double mo_truth = std::pow(0.1, 1.5);
    out.require(!mo_pts.empty() &&
                    std::abs(mo_pts.front().value - mo_truth) <= 3.0 * mo_pts.front().se,
                "shock-model diagonal off by " +
                    fmt(mo_pts.empty() ? 0.0 : (mo_pts.front().value - mo_truth)));

    Eigen::MatrixXd c2(2, 2);
    c2 << 1.0, 0.5, 0.5, 1.0;
    const correlation_matrix corr = validate_correlation(c2);
    const sample_matrix gs = gaussian_sample(corr, n, seed);
    const auto g_pts =
        empirical_survival_diagonal(gs, index_subset{1, 2}, {0.05}, opts, nullptr);
    const double a = -normal_quantile(0.05);
    Eigen::VectorXd lower(2);
    lower << a, a;
    const double g_truth = mvn_rectangle(lower, c2, 555, 1e-5).value;
    out.require(!g_pts.empty() &&
                    std::abs(g_pts.front().value - g_truth) <= 3.0 * g_pts.front().se,
                "gaussian diagonal " + fmt(g_pts.empty() ? 0.0 : g_pts.front().value) +
                    " vs quadrature " + fmt(g_truth));

    const sample_matrix cs = clayton_sample(1.0, 2, n, seed);
    const diag_point cp = empirical_copula_point(cs, index_subset{1, 2},
                                                 std::vector<double>{0.5, 0.5}, false);
    out.require(std::abs(cp.value - 1.0 / 3.0) <= 3.0 * cp.se,
                "clayton lower-orthant value " + fmt(cp.value) + " vs 1/3");
    if (out.pass) out.detail = "three seeded checks within 3 standard errors";
    return out;
}

struct criterion_entry {
    int id;
    const char* title;
    double budget_seconds;
    std::function<outcome()> run;
};

const std::vector<criterion_entry>& catalog() {
    static const std::vector<criterion_entry> entries{
        {1, "gaussian exact tail orders", 1.0, criterion1},
        {2, "mutual-independence threshold", 1.0, criterion2},
        {3, "active-set solver vs exhaustive oracle", 30.0, criterion3},
        {4, "shock-model exponent algebra", 30.0, criterion4},
        {5, "pairwise-only mixture fixture", 1.0, criterion5},
        {6, "regression recovery of gaussian orders", 300.0, criterion6},
        {7, "generator limits and inverse-gamma regimes", 10.0, criterion7},
        {8, "extended-precision alternating sums", 60.0, criterion8},
        {9, "seeded monte-carlo cross-checks", 120.0, criterion9},
    };
    return entries;
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
            return 2;
        }
    }
    if (only < 0 || only > 9) {
        std::fprintf(stderr, "criterion number must be 1..9\n");
        return 2;
    }
    int failures = 0;
    for (const auto& entry : catalog()) {
        if (only != 0 && entry.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        outcome out;
        try {
            out = entry.run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (out.pass && elapsed > entry.budget_seconds) {
            out.pass = false;
            out.detail = "over budget: " + fmt(elapsed) + " s vs " +
                         fmt(entry.budget_seconds) + " s allowed";
        }
        std::printf("criterion %d [%s]: %s (%.2f s) %s\n", entry.id, entry.title,
                    out.pass ? "PASS" : "FAIL", elapsed, out.detail.c_str());
        if (!out.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
