#pragma once

// Small dense linear algebra over a Scalar: Gauss-Jordan elimination and a
// vertex-enumeration maximizer for bounded polytopes. Sizes here are tiny
// (at most a handful of unknowns), so clarity wins over asymptotics.

#include <cstddef>
#include <optional>
#include <vector>

#include "wss/numeric.hpp"

namespace wss::linalg {

template <Scalar S>
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<S> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, S(0)) {}

  S& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const S& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

enum class SolveStatus { Unique, Underdetermined, Inconsistent };

template <Scalar S>
struct SolveResult {
  SolveStatus status = SolveStatus::Inconsistent;
  std::vector<S> x;  // filled only when status == Unique
  std::size_t rank = 0;
};

namespace detail {

// Reduces [A | b] in place to reduced row echelon form. Returns pivot columns.
template <Scalar S>
std::vector<std::size_t> rref(Matrix<S>& aug) {
  using N = Numeric<S>;
  std::vector<std::size_t> pivots;
  const std::size_t unknowns = aug.cols - 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < unknowns && row < aug.rows; ++col) {
    std::size_t best = aug.rows;
    for (std::size_t r = row; r < aug.rows; ++r) {
      if (N::tolerant_sign(aug(r, col)) == 0) continue;
      if (N::exact) {
        best = r;
        break;
      }
      if (best == aug.rows || N::abs(aug(r, col)) > N::abs(aug(best, col))) best = r;
    }
    if (best == aug.rows) continue;
    if (best != row)
      for (std::size_t c = 0; c < aug.cols; ++c) std::swap(aug(row, c), aug(best, c));
    const S pivot = aug(row, col);
    for (std::size_t c = col; c < aug.cols; ++c) aug(row, c) /= pivot;
    for (std::size_t r = 0; r < aug.rows; ++r) {
      if (r == row || N::tolerant_sign(aug(r, col)) == 0) continue;
      const S factor = aug(r, col);
      for (std::size_t c = col; c < aug.cols; ++c) aug(r, c) -= factor * aug(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

/// Solves A x = b for any shape of A.
template <Scalar S>
SolveResult<S> solve(const Matrix<S>& a, const std::vector<S>& b) {
  using N = Numeric<S>;
  Matrix<S> aug(a.rows, a.cols + 1);
  for (std::size_t r = 0; r < a.rows; ++r) {
    for (std::size_t c = 0; c < a.cols; ++c) aug(r, c) = a(r, c);
    aug(r, a.cols) = b[r];
  }
  const auto pivots = detail::rref(aug);
  SolveResult<S> result;
  result.rank = pivots.size();
  for (std::size_t r = pivots.size(); r < aug.rows; ++r) {
    if (N::tolerant_sign(aug(r, a.cols)) != 0) {
      result.status = SolveStatus::Inconsistent;
      return result;
    }
  }
  if (pivots.size() < a.cols) {
    result.status = SolveStatus::Underdetermined;
    return result;
  }
  result.status = SolveStatus::Unique;
  result.x.assign(a.cols, S(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) result.x[pivots[r]] = aug(r, a.cols);
  return result;
}

/// One linear constraint: coeffs · x (==|<=) rhs.
template <Scalar S>
struct Constraint {
  std::vector<S> coeffs;
  S rhs;
};

template <Scalar S>
struct LpOptimum {
  std::vector<S> x;
  S objective;
};

/// Maximizes objective · x over {equalities, coeffs · x <= rhs} by
/// enumerating basic solutions. The caller guarantees the feasible region is
/// bounded; ties keep the first vertex in enumeration order.
template <Scalar S>
std::optional<LpOptimum<S>> maximize_on_polytope(const std::vector<S>& objective,
                                                 const std::vector<Constraint<S>>& equalities,
                                                 const std::vector<Constraint<S>>& inequalities) {
  using N = Numeric<S>;
  const std::size_t n = objective.size();

  // Drop redundant equalities so the active sets below are square.
  std::vector<Constraint<S>> eqs;
  if (!equalities.empty()) {
    Matrix<S> aug(equalities.size(), n + 1);
    for (std::size_t r = 0; r < equalities.size(); ++r) {
      for (std::size_t c = 0; c < n; ++c) aug(r, c) = equalities[r].coeffs[c];
      aug(r, n) = equalities[r].rhs;
    }
    const auto pivots = detail::rref(aug);
    for (std::size_t r = pivots.size(); r < aug.rows; ++r)
      if (N::tolerant_sign(aug(r, n)) != 0) return std::nullopt;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      Constraint<S> c{std::vector<S>(aug.data.begin() + static_cast<std::ptrdiff_t>(r * (n + 1)),
                                     aug.data.begin() + static_cast<std::ptrdiff_t>(r * (n + 1) + n)),
                      aug(r, n)};
      eqs.push_back(std::move(c));
    }
  }
  if (eqs.size() > n) return std::nullopt;
  const std::size_t active = n - eqs.size();
  if (active > inequalities.size()) return std::nullopt;

  std::optional<LpOptimum<S>> best;
  std::vector<std::size_t> pick(active);
  for (std::size_t i = 0; i < active; ++i) pick[i] = i;

  Matrix<S> a(n, n);
  std::vector<S> b(n);
  for (;;) {
    for (std::size_t r = 0; r < eqs.size(); ++r) {
      for (std::size_t c = 0; c < n; ++c) a(r, c) = eqs[r].coeffs[c];
      b[r] = eqs[r].rhs;
    }
    for (std::size_t k = 0; k < active; ++k) {
      const auto& ineq = inequalities[pick[k]];
      for (std::size_t c = 0; c < n; ++c) a(eqs.size() + k, c) = ineq.coeffs[c];
      b[eqs.size() + k] = ineq.rhs;
    }
    auto sol = solve(a, b);
    if (sol.status == SolveStatus::Unique) {
      bool feasible = true;
      for (const auto& ineq : inequalities) {
        S lhs(0);
        for (std::size_t c = 0; c < n; ++c) lhs += ineq.coeffs[c] * sol.x[c];
        if (N::tolerant_sign(S(lhs - ineq.rhs)) > 0) {
          feasible = false;
          break;
        }
      }
      if (feasible) {
        S value(0);
        for (std::size_t c = 0; c < n; ++c) value += objective[c] * sol.x[c];
        if (!best || N::tolerant_sign(S(value - best->objective)) > 0)
          best = LpOptimum<S>{std::move(sol.x), value};
      }
    }
    // Next combination in lexicographic order.
    std::size_t k = active;
    while (k > 0 && pick[k - 1] == inequalities.size() - active + (k - 1)) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t j = k; j < active; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

}  // namespace wss::linalg
