#ifndef COPTAIL_CORRELATION_HPP
#define COPTAIL_CORRELATION_HPP

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "coptail/errors.hpp"
#include "coptail/subsets.hpp"

namespace coptail {

inline constexpr double correlation_pivot_tol = 1e-12;
inline constexpr double correlation_symmetry_tol = 1e-12;

// Validated correlation matrix: symmetric, unit diagonal, positive definite
// (every Cholesky pivot > 1e-12). Construct through validate_correlation.
class correlation_matrix {
public:
    int dim() const { return static_cast<int>(m_.rows()); }
    const Eigen::MatrixXd& matrix() const { return m_; }
    double operator()(int i, int j) const { return m_(i, j); }

    // Principal submatrix for a subset of 1-based indices.
    Eigen::MatrixXd submatrix(const index_subset& s) const {
        s.check_within(dim());
        const auto& idx = s.members();
        const int k = s.size();
        Eigen::MatrixXd out(k, k);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                out(a, b) = m_(idx[static_cast<size_t>(a)] - 1, idx[static_cast<size_t>(b)] - 1);
        return out;
    }

    friend correlation_matrix validate_correlation(const Eigen::MatrixXd& m);

private:
    explicit correlation_matrix(Eigen::MatrixXd m) : m_(std::move(m)) {}
    Eigen::MatrixXd m_;
};

// Cholesky with explicit pivot reporting; returns the smallest pivot
// (diagonal of L) encountered, or a negative value if a pivot's square
// went nonpositive.
inline double smallest_cholesky_pivot(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    double smallest = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
        double s = m(j, j);
        for (int k = 0; k < j; ++k) s -= L(j, k) * L(j, k);
        if (s <= 0.0) return -1.0;
        L(j, j) = std::sqrt(s);
        smallest = std::min(smallest, L(j, j));
        for (int i = j + 1; i < n; ++i) {
            double t = m(i, j);
            for (int k = 0; k < j; ++k) t -= L(i, k) * L(j, k);
            L(i, j) = t / L(j, j);
        }
    }
    return smallest;
}

inline correlation_matrix validate_correlation(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    if (n < 1 || m.cols() != n)
        throw validation_error("correlation matrix must be square and non-empty");
    for (int i = 0; i < n; ++i) {
        if (std::fabs(m(i, i) - 1.0) > correlation_symmetry_tol)
            throw validation_error("correlation matrix diagonal entry (" + std::to_string(i + 1) +
                                   "," + std::to_string(i + 1) + ") is not 1");
        for (int j = i + 1; j < n; ++j) {
            if (std::fabs(m(i, j) - m(j, i)) > correlation_symmetry_tol)
                throw validation_error("correlation matrix is not symmetric at (" +
                                       std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
            if (std::fabs(m(i, j)) > 1.0 + correlation_symmetry_tol)
                throw validation_error("correlation entry magnitude exceeds 1 at (" +
                                       std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        }
    }
    Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
    for (int i = 0; i < n; ++i) sym(i, i) = 1.0;
    const double pivot = smallest_cholesky_pivot(sym);
    if (pivot <= correlation_pivot_tol)
        throw validation_error("correlation matrix is not positive definite "
                               "(smallest Cholesky pivot " + std::to_string(pivot) + ")");
    return correlation_matrix(std::move(sym));
}

// JSON schema: {"dim": d, "rho": [[...], ...]}
inline correlation_matrix correlation_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("rho"))
        throw parse_error("correlation JSON must be an object with 'dim' and 'rho'");
    const int d = j.at("dim").get<int>();
    const auto& rows = j.at("rho");
    if (!rows.is_array() || static_cast<int>(rows.size()) != d)
        throw parse_error("'rho' must be an array of " + std::to_string(d) + " rows");
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d; ++i) {
        const auto& row = rows.at(static_cast<size_t>(i));
        if (!row.is_array() || static_cast<int>(row.size()) != d)
            throw parse_error("'rho' row " + std::to_string(i + 1) + " must have " +
                              std::to_string(d) + " entries");
        for (int k = 0; k < d; ++k) {
            const auto& cell = row.at(static_cast<size_t>(k));
            if (!cell.is_number())
                throw parse_error("'rho' entry (" + std::to_string(i + 1) + "," +
                                  std::to_string(k + 1) + ") is not a number");
            m(i, k) = cell.get<double>();
        }
    }
    return validate_correlation(m);
}

inline nlohmann::json correlation_to_json(const correlation_matrix& c) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < c.dim(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < c.dim(); ++j) row.push_back(c(i, j));
        rows.push_back(std::move(row));
    }
    return {{"dim", c.dim()}, {"rho", std::move(rows)}};
}

} // namespace coptail

#endif
