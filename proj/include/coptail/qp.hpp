#ifndef COPTAIL_QP_HPP
#define COPTAIL_QP_HPP

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coptail/errors.hpp"

namespace coptail {

inline constexpr double qp_feasibility_tol = 1e-10;

// Solution of min z'Qz subject to z >= 1 (componentwise), Q symmetric PD.
// The optimizer e satisfies e_I = 1 on the active set I, the multipliers
// h_i = (Qe)_i are positive on I, (Qe)_j = 0 off I, and e_j >= 1 off I.
struct qp_solution {
    double value = 0.0;          // e'Qe
    Eigen::VectorXd e;           // optimizer
    Eigen::VectorXd h;           // (Qe)_i on the active set, exact zeros elsewhere
    std::vector<int> active;     // 1-based indices of the active set, ascending
    bool feasible = false;       // KKT checks passed within tolerance
    bool degenerate = false;     // some check quantity within tolerance of zero
    bool fallback_used = false;  // active-set iteration hit its cap; exhaustive result
    int iterations = 0;
};

namespace detail {

inline void check_qp_matrix(const Eigen::MatrixXd& q) {
    const int m = static_cast<int>(q.rows());
    if (m < 1 || q.cols() != m)
        throw validation_error("QP matrix must be square and non-empty");
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (std::fabs(q(i, j) - q(j, i)) > 1e-10 * std::max(1.0, std::fabs(q(i, j))))
                throw validation_error("QP matrix is not symmetric");
    Eigen::LLT<Eigen::MatrixXd> llt(q);
    if (llt.info() != Eigen::Success)
        throw validation_error("QP matrix is not positive definite");
}

} // namespace detail

// Solves the equality-restricted problem for a candidate active set I:
// e_I = 1, [Q]_JJ e_J = -[Q]_JI 1 on the complement J, h = (Qe)_I.
// (Qe)_J = 0 holds by construction. Feasibility of the candidate as a KKT
// point of the inequality problem is reported, not enforced.
inline qp_solution solve_restricted(const Eigen::MatrixXd& q, const std::vector<int>& active,
                                    double tol = qp_feasibility_tol) {
    detail::check_qp_matrix(q);
    const int m = static_cast<int>(q.rows());
    std::vector<char> in_active(static_cast<size_t>(m), 0);
    for (int j : active) {
        if (j < 1 || j > m) throw validation_error("active-set index out of range");
        if (in_active[static_cast<size_t>(j - 1)]) throw validation_error("duplicate active-set index");
        in_active[static_cast<size_t>(j - 1)] = 1;
    }
    if (active.empty()) throw validation_error("active set must be non-empty");

    std::vector<int> iidx, jidx; // 0-based
    for (int i = 0; i < m; ++i)
        (in_active[static_cast<size_t>(i)] ? iidx : jidx).push_back(i);

    qp_solution sol;
    sol.e = Eigen::VectorXd::Ones(m);
    sol.h = Eigen::VectorXd::Zero(m);
    sol.active = active;
    std::sort(sol.active.begin(), sol.active.end());

    const int nj = static_cast<int>(jidx.size());
    if (nj > 0) {
        Eigen::MatrixXd qjj(nj, nj);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nj);
        for (int a = 0; a < nj; ++a) {
            for (int b = 0; b < nj; ++b) qjj(a, b) = q(jidx[static_cast<size_t>(a)], jidx[static_cast<size_t>(b)]);
            for (int i : iidx) rhs(a) -= q(jidx[static_cast<size_t>(a)], i);
        }
        Eigen::LLT<Eigen::MatrixXd> llt(qjj);
        if (llt.info() != Eigen::Success)
            throw numeric_error("restricted QP block is not positive definite");
        Eigen::VectorXd ej = llt.solve(rhs);
        for (int a = 0; a < nj; ++a) sol.e(jidx[static_cast<size_t>(a)]) = ej(a);
    }

    Eigen::VectorXd qe = q * sol.e;
    double value = 0.0;
    for (int i : iidx) {
        sol.h(i) = qe(i);
        value += qe(i); // e_i = 1 on I and (Qe)_J = 0, so e'Qe = sum_I h_i
    }
    sol.value = value;

    double min_slack = std::numeric_limits<double>::infinity();  // e_j - 1 off I
    for (int j : jidx) min_slack = std::min(min_slack, sol.e(j) - 1.0);
    double min_h = std::numeric_limits<double>::infinity();
    for (int i : iidx) min_h = std::min(min_h, sol.h(i));

    sol.feasible = (nj == 0 || min_slack >= -tol) && min_h >= -tol;
    sol.degenerate = sol.feasible &&
                     ((nj > 0 && min_slack <= tol) || min_h <= tol);
    return sol;
}

// Exhaustive KKT search over all non-empty candidate active sets. Oracle
// implementation; cost 2^m restricted solves. Requires m <= 20.
inline qp_solution solve_bruteforce(const Eigen::MatrixXd& q, double tol = qp_feasibility_tol) {
    detail::check_qp_matrix(q);
    const int m = static_cast<int>(q.rows());
    if (m > 20) throw validation_error("exhaustive QP search supports m <= 20");
    qp_solution best;
    bool found = false;
    int kkt_count = 0;
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        std::vector<int> active;
        for (int j = 0; j < m; ++j)
            if (mask & (1u << j)) active.push_back(j + 1);
        qp_solution cand = solve_restricted(q, active, tol);
        if (!cand.feasible) continue;
        ++kkt_count;
        if (!found || cand.value < best.value) {
            best = cand;
            found = true;
        }
    }
    if (!found)
        throw numeric_error("no KKT point found in exhaustive QP search");
    if (kkt_count > 1) best.degenerate = true;
    best.iterations = static_cast<int>((1u << m) - 1);
    return best;
}

// Primal active-set iteration: start from the full active set; move the most
// violated inactive index (e_j < 1) into I, drop the most negative-multiplier
// active index out, one index per step. Falls back to the exhaustive search
// after 2^m steps (flagged in the result).
inline qp_solution solve_active_set(const Eigen::MatrixXd& q, double tol = qp_feasibility_tol) {
    detail::check_qp_matrix(q);
    const int m = static_cast<int>(q.rows());
    std::set<int> active;
    for (int j = 1; j <= m; ++j) active.insert(j);

    const long cap = (m >= 30) ? (1L << 30) : (1L << m);
    long iter = 0;
    while (iter++ <= cap) {
        std::vector<int> act(active.begin(), active.end());
        qp_solution sol = solve_restricted(q, act, tol);

        // Feasibility first: bring the most violated constraint into I.
        int worst_j = -1;
        double worst_viol = -tol;
        for (int j = 1; j <= m; ++j) {
            if (active.count(j)) continue;
            const double v = sol.e(j - 1) - 1.0;
            if (v < worst_viol) {
                worst_viol = v;
                worst_j = j;
            }
        }
        if (worst_j > 0) {
            active.insert(worst_j);
            continue;
        }

        // Optimality: release the most negative multiplier.
        int worst_i = -1;
        double worst_h = -tol;
        for (int i : act) {
            if (static_cast<int>(active.size()) == 1) break; // keep I non-empty
            const double hi = sol.h(i - 1);
            if (hi < worst_h) {
                worst_h = hi;
                worst_i = i;
            }
        }
        if (worst_i > 0) {
            active.erase(worst_i);
            continue;
        }

        sol.iterations = static_cast<int>(iter);
        sol.feasible = true;
        return sol;
    }

    qp_solution sol = solve_bruteforce(q, tol);
    sol.fallback_used = true;
    return sol;
}

} // namespace coptail

#endif
