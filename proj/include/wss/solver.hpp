#pragma once

// Equilibrium computation for the zero-sum capture game.
//
// Eve picks a row and maximizes P_e; the legitimate users pick a column and
// minimize it. Three independent routes are provided:
//   * find_pure_equilibria: exhaustive best-response check of every cell;
//   * solve_support_enumeration: square support pairs solved exactly;
//   * game_value: maximin over Eve's simplex by vertex enumeration.
// solve_proposition_verification mirrors the two-step enumeration for the
// 3x3 asymmetric game and is cross-checked against the other routes.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wss/channel.hpp"
#include "wss/error.hpp"
#include "wss/game.hpp"
#include "wss/linalg.hpp"
#include "wss/numeric.hpp"

namespace wss {

enum class GameClass { Symmetric, AsymmetricPureAtBob, AsymmetricMixedOnly, Unclassified };

inline std::string to_string(GameClass c) {
  switch (c) {
    case GameClass::Symmetric: return "Symmetric";
    case GameClass::AsymmetricPureAtBob: return "AsymmetricPureAtBob";
    case GameClass::AsymmetricMixedOnly: return "AsymmetricMixedOnly";
    case GameClass::Unclassified: return "Unclassified";
  }
  return "?";
}

template <Scalar S>
struct Equilibrium {
  enum class Kind { Pure, Mixed };

  Kind kind = Kind::Mixed;
  std::size_t eve_row = 0;    // meaningful for Pure
  std::size_t legit_col = 0;  // meaningful for Pure
  std::vector<S> p;           // over Eve's rows
  std::vector<S> q;           // over the matrix columns
  S value;
  bool degenerate = false;
  bool verified = false;

  bool is_pure() const { return kind == Kind::Pure; }
};

template <Scalar S>
std::vector<S> point_mass(std::size_t size, std::size_t index) {
  std::vector<S> v(size, S(0));
  v.at(index) = S(1);
  return v;
}

template <Scalar S>
Equilibrium<S> pure_equilibrium(const UtilityMatrix<S>& m, std::size_t row, std::size_t col) {
  Equilibrium<S> e;
  e.kind = Equilibrium<S>::Kind::Pure;
  e.eve_row = row;
  e.legit_col = col;
  e.p = point_mass<S>(m.rows(), row);
  e.q = point_mass<S>(m.cols(), col);
  e.value = m.at(row, col);
  return e;
}

/// Every cell from which neither side gains by deviating (weak inequalities),
/// row-major.
template <Scalar S>
std::vector<Equilibrium<S>> find_pure_equilibria(const UtilityMatrix<S>& m) {
  using N = Numeric<S>;
  std::vector<Equilibrium<S>> out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      bool stable = true;
      for (std::size_t r2 = 0; r2 < m.rows() && stable; ++r2)
        stable = N::tolerant_sign(S(m.at(r, c) - m.at(r2, c))) >= 0;
      for (std::size_t c2 = 0; c2 < m.cols() && stable; ++c2)
        stable = N::tolerant_sign(S(m.at(r, c2) - m.at(r, c))) >= 0;
      if (stable) {
        auto e = pure_equilibrium(m, r, c);
        e.verified = true;
        out.push_back(std::move(e));
      }
    }
  }
  return out;
}

template <Scalar S>
bool contains_pure(const std::vector<Equilibrium<S>>& list, EveStrategy row, std::size_t col) {
  return std::any_of(list.begin(), list.end(), [&](const Equilibrium<S>& e) {
    return e.is_pure() && e.eve_row == static_cast<std::size_t>(row) && e.legit_col == col;
  });
}

template <Scalar S>
bool dominates_pointwise(const ChannelTriple<S>& a, const ChannelTriple<S>& b) {
  return a.p_near > b.p_near && a.p_mid > b.p_mid && a.p_far > b.p_far;
}

/// Both triples must be admissible; throws ValidationError otherwise.
template <Scalar S>
GameClass classify(const GameSpec<S>& spec) {
  require_admissible(spec.alice(), "alice");
  require_admissible(spec.bob(), "bob");
  if (spec.symmetric()) return GameClass::Symmetric;
  if (!dominates_pointwise(spec.alice(), spec.bob())) return GameClass::Unclassified;
  return spec.bob().p_near <= spec.alice().p_far ? GameClass::AsymmetricPureAtBob : GameClass::AsymmetricMixedOnly;
}

// ---------------------------------------------------------------------------
// Verification

template <Scalar S>
struct VerificationReport {
  bool ok = false;
  S value;                    // expected P_e at the profile
  std::size_t best_eve_row = 0;
  S eve_gain;                 // best row payoff minus value (Eve wants it > 0)
  std::size_t best_legit_col = 0;
  S legit_gain;               // value minus best column payoff (legit wants it > 0)
};

template <Scalar S>
void require_distribution(const std::vector<S>& v, std::size_t size, const char* name) {
  using N = Numeric<S>;
  if (v.size() != size)
    throw ArgumentError(std::string(name) + " has length " + std::to_string(v.size()) + ", expected " +
                        std::to_string(size));
  S total(0);
  for (const auto& x : v) {
    if (N::tolerant_sign(x) < 0) throw ArgumentError(std::string(name) + " has a negative entry");
    total += x;
  }
  if (N::tolerant_sign(S(total - 1)) != 0) throw ArgumentError(std::string(name) + " does not sum to 1");
}

/// No unilateral pure deviation may gain more than tol (use 0 in exact mode).
template <Scalar S>
VerificationReport<S> verify_equilibrium(const UtilityMatrix<S>& m, const std::vector<S>& p, const std::vector<S>& q,
                                         const S& tol = S(0)) {
  require_distribution(p, m.rows(), "p");
  require_distribution(q, m.cols(), "q");
  VerificationReport<S> rep;
  rep.value = m.expected(p, q);

  S best_row = m.row_payoff(0, q);
  for (std::size_t r = 1; r < m.rows(); ++r) {
    S v = m.row_payoff(r, q);
    if (v > best_row) {
      best_row = v;
      rep.best_eve_row = r;
    }
  }
  S best_col = m.column_payoff(0, p);
  for (std::size_t c = 1; c < m.cols(); ++c) {
    S v = m.column_payoff(c, p);
    if (v < best_col) {
      best_col = v;
      rep.best_legit_col = c;
    }
  }
  rep.eve_gain = S(best_row - rep.value);
  rep.legit_gain = S(rep.value - best_col);
  rep.ok = rep.eve_gain <= tol && rep.legit_gain <= tol;
  return rep;
}

template <Scalar S>
VerificationReport<S> verify_equilibrium(const UtilityMatrix<S>& m, const Equilibrium<S>& e, const S& tol = S(0)) {
  return verify_equilibrium(m, e.p, e.q, tol);
}

// ---------------------------------------------------------------------------
// Game value: max over Eve's simplex of the worst column, by vertex enumeration.

template <Scalar S>
S game_value(const UtilityMatrix<S>& m) {
  const std::size_t rows = m.rows();
  const std::size_t vars = rows + 1;  // p, then z
  std::vector<S> objective(vars, S(0));
  objective[rows] = S(1);

  std::vector<linalg::Constraint<S>> eq(1, {std::vector<S>(vars, S(0)), S(1)});
  for (std::size_t r = 0; r < rows; ++r) eq[0].coeffs[r] = S(1);

  std::vector<linalg::Constraint<S>> ineq;
  for (std::size_t r = 0; r < rows; ++r) {
    linalg::Constraint<S> c{std::vector<S>(vars, S(0)), S(0)};
    c.coeffs[r] = S(-1);
    ineq.push_back(std::move(c));
  }
  for (std::size_t col = 0; col < m.cols(); ++col) {
    linalg::Constraint<S> c{std::vector<S>(vars, S(0)), S(0)};
    for (std::size_t r = 0; r < rows; ++r) c.coeffs[r] = S(-m.at(r, col));
    c.coeffs[rows] = S(1);
    ineq.push_back(std::move(c));
  }
  auto opt = linalg::maximize_on_polytope(objective, eq, ineq);
  if (!opt) throw InternalConsistencyError("maximin program has no vertex");
  return opt->objective;
}

// ---------------------------------------------------------------------------
// Support enumeration

namespace detail {

inline std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k == 0 || k > n) return out;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  for (;;) {
    out.push_back(pick);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

// Mixed strategy over `support` of the opponent that makes every strategy in
// `indifferent` pay the same; returns (weights, common value).
template <Scalar S, class Payoff>
std::optional<std::pair<std::vector<S>, S>> indifference(const std::vector<std::size_t>& indifferent,
                                                         const std::vector<std::size_t>& support, Payoff payoff) {
  const std::size_t k = support.size();
  linalg::Matrix<S> a(indifferent.size() + 1, k + 1);
  std::vector<S> b(indifferent.size() + 1, S(0));
  for (std::size_t i = 0; i < indifferent.size(); ++i) {
    for (std::size_t j = 0; j < k; ++j) a(i, j) = payoff(indifferent[i], support[j]);
    a(i, k) = S(-1);
  }
  for (std::size_t j = 0; j < k; ++j) a(indifferent.size(), j) = S(1);
  b[indifferent.size()] = S(1);
  auto sol = linalg::solve(a, b);
  if (sol.status != linalg::SolveStatus::Unique) return std::nullopt;
  S value = sol.x[k];
  sol.x.pop_back();
  return std::pair{std::move(sol.x), std::move(value)};
}

template <Scalar S>
std::vector<S> scatter(const std::vector<S>& weights, const std::vector<std::size_t>& support, std::size_t size) {
  std::vector<S> full(size, S(0));
  for (std::size_t i = 0; i < support.size(); ++i) full[support[i]] = weights[i];
  return full;
}

}  // namespace detail

/// Enumerates square support pairs (size, then Eve support, then legit
/// support, each lexicographic) and returns the first equilibrium found.
/// Every extreme optimal pair of a matrix game arises from a nonsingular
/// square sub-system, so square supports are sufficient.
template <Scalar S>
Equilibrium<S> solve_support_enumeration(const UtilityMatrix<S>& m) {
  using N = Numeric<S>;
  const std::size_t max_k = std::min(m.rows(), m.cols());
  for (std::size_t k = 1; k <= max_k; ++k) {
    const auto row_sets = detail::combinations(m.rows(), k);
    const auto col_sets = detail::combinations(m.cols(), k);
    for (const auto& rows : row_sets) {
      for (const auto& cols : col_sets) {
        auto q_side = detail::indifference<S>(rows, cols, [&](std::size_t r, std::size_t c) { return m.at(r, c); });
        if (!q_side) continue;
        auto p_side = detail::indifference<S>(cols, rows, [&](std::size_t c, std::size_t r) { return m.at(r, c); });
        if (!p_side) continue;
        const auto& [qw, v] = *q_side;
        const auto& [pw, w] = *p_side;
        auto nonneg = [](const std::vector<S>& x) {
          return std::all_of(x.begin(), x.end(), [](const S& e) { return N::tolerant_sign(e) >= 0; });
        };
        if (!nonneg(qw) || !nonneg(pw) || N::tolerant_sign(S(v - w)) != 0) continue;

        auto q = detail::scatter(qw, cols, m.cols());
        auto p = detail::scatter(pw, rows, m.rows());
        bool stable = true;
        bool ties = false;
        for (std::size_t r = 0; r < m.rows() && stable; ++r) {
          if (std::find(rows.begin(), rows.end(), r) != rows.end()) continue;
          const int s = N::tolerant_sign(S(m.row_payoff(r, q) - v));
          stable = s <= 0;
          ties = ties || s == 0;
        }
        for (std::size_t c = 0; c < m.cols() && stable; ++c) {
          if (std::find(cols.begin(), cols.end(), c) != cols.end()) continue;
          const int s = N::tolerant_sign(S(m.column_payoff(c, p) - v));
          stable = s >= 0;
          ties = ties || s == 0;
        }
        if (!stable) continue;

        Equilibrium<S> e;
        e.p = std::move(p);
        e.q = std::move(q);
        e.value = v;
        if (k == 1) {
          e.kind = Equilibrium<S>::Kind::Pure;
          e.eve_row = rows[0];
          e.legit_col = cols[0];
        }
        e.degenerate = ties || !std::all_of(qw.begin(), qw.end(), [](const S& x) { return N::tolerant_sign(x) > 0; }) ||
                       !std::all_of(pw.begin(), pw.end(), [](const S& x) { return N::tolerant_sign(x) > 0; });
        e.verified = verify_equilibrium(m, e, S(N::exact ? 0 : 1e-9)).ok;
        return e;
      }
    }
  }
  throw InternalConsistencyError("support enumeration found no equilibrium");
}

// ---------------------------------------------------------------------------
// Proposition / verification enumeration for the 3x3 asymmetric game.

enum class StepOutcome { LegitSideInfeasible, VerificationFailed, Equilibrium };

inline std::string to_string(StepOutcome o) {
  switch (o) {
    case StepOutcome::LegitSideInfeasible: return "legit-side infeasible";
    case StepOutcome::VerificationFailed: return "verification failed";
    case StepOutcome::Equilibrium: return "equilibrium";
  }
  return "?";
}

template <Scalar S>
struct PropositionStep {
  std::vector<std::size_t> eve_support;    // proposed rows with positive p
  std::vector<std::size_t> legit_support;  // candidate columns with positive q
  StepOutcome outcome = StepOutcome::LegitSideInfeasible;
  std::vector<S> q;  // when the legit side was feasible
  std::vector<S> p;  // when verification succeeded
};

template <Scalar S>
struct PropositionResult {
  Equilibrium<S> equilibrium;
  std::vector<PropositionStep<S>> trace;
  // Unique solution of the all-rows-indifferent system, when it exists; may
  // carry negative entries (that is what makes the full-support proposition
  // infeasible).
  std::optional<std::vector<S>> full_support_q;
};

/// Support order for both sides: all three, the pairs {0,1},{0,2},{1,2}, then
/// the singletons Middle first.
inline const std::vector<std::vector<std::size_t>>& proposition_order() {
  static const std::vector<std::vector<std::size_t>> order{{0, 1, 2}, {0, 1}, {0, 2}, {1, 2}, {1}, {0}, {2}};
  return order;
}

namespace detail {

// Largest margin t such that a distribution x over `support` of one player
// makes the opponent's strategies in `best` tie at a common value and every
// other opponent strategy strictly worse by at least t, with x_i >= t.
// `payoff(opp, own)` is the opponent's payoff to be equalised; `opp_maximizes`
// tells the direction of "worse".
template <Scalar S, class Payoff>
std::optional<std::pair<std::vector<S>, S>> max_margin(std::size_t opp_count, const std::vector<std::size_t>& best,
                                                       const std::vector<std::size_t>& support, bool opp_maximizes,
                                                       Payoff payoff, S& margin) {
  const std::size_t k = support.size();
  const std::size_t vars = k + 2;  // x_support, value, t
  const std::size_t iv = k, it = k + 1;
  std::vector<S> objective(vars, S(0));
  objective[it] = S(1);

  std::vector<linalg::Constraint<S>> eq;
  for (auto o : best) {
    linalg::Constraint<S> c{std::vector<S>(vars, S(0)), S(0)};
    for (std::size_t j = 0; j < k; ++j) c.coeffs[j] = payoff(o, support[j]);
    c.coeffs[iv] = S(-1);
    eq.push_back(std::move(c));
  }
  linalg::Constraint<S> total{std::vector<S>(vars, S(0)), S(1)};
  for (std::size_t j = 0; j < k; ++j) total.coeffs[j] = S(1);
  eq.push_back(std::move(total));

  std::vector<linalg::Constraint<S>> ineq;
  for (std::size_t j = 0; j < k; ++j) {
    linalg::Constraint<S> c{std::vector<S>(vars, S(0)), S(0)};
    c.coeffs[j] = S(-1);
    c.coeffs[it] = S(1);
    ineq.push_back(std::move(c));
  }
  for (std::size_t o = 0; o < opp_count; ++o) {
    if (std::find(best.begin(), best.end(), o) != best.end()) continue;
    // maximizer: payoff(o) - value + t <= 0; minimizer: value - payoff(o) + t <= 0
    linalg::Constraint<S> c{std::vector<S>(vars, S(0)), S(0)};
    const S sign(opp_maximizes ? 1 : -1);
    for (std::size_t j = 0; j < k; ++j) c.coeffs[j] = S(sign * payoff(o, support[j]));
    c.coeffs[iv] = S(-sign);
    c.coeffs[it] = S(1);
    ineq.push_back(std::move(c));
  }
  linalg::Constraint<S> cap{std::vector<S>(vars, S(0)), S(1)};
  cap.coeffs[it] = S(1);
  ineq.push_back(std::move(cap));

  auto opt = linalg::maximize_on_polytope(objective, eq, ineq);
  if (!opt) return std::nullopt;
  margin = opt->x[it];
  if (Numeric<S>::strict_sign(margin, "strictness margin of a proposition") <= 0) return std::nullopt;
  std::vector<S> weights(opt->x.begin(), opt->x.begin() + static_cast<std::ptrdiff_t>(k));
  return std::pair{std::move(weights), opt->x[iv]};
}

}  // namespace detail

/// Two-step enumeration on a 3x3 game. For each proposed Eve support
/// (proposition_order) and each candidate legit support, find q that makes
/// the proposed rows tie and the others strictly worse for Eve, then verify
/// that some p on the proposed rows makes the candidate columns tie and the
/// others strictly worse for the legitimate users. The first pair that
/// passes both steps is returned.
template <Scalar S>
PropositionResult<S> solve_proposition_verification(const UtilityMatrix<S>& m) {
  if (m.cols() != 3) throw ArgumentError("proposition/verification procedure needs a 3x3 matrix");
  PropositionResult<S> result;

  const std::vector<std::size_t> all{0, 1, 2};
  if (auto full = detail::indifference<S>(all, all, [&](std::size_t r, std::size_t c) { return m.at(r, c); }))
    result.full_support_q = full->first;

  const auto eve_payoff = [&](std::size_t row, std::size_t col) { return m.at(row, col); };
  const auto legit_payoff = [&](std::size_t col, std::size_t row) { return m.at(row, col); };

  for (const auto& eve_support : proposition_order()) {
    for (const auto& legit_support : proposition_order()) {
      PropositionStep<S> step{eve_support, legit_support, StepOutcome::LegitSideInfeasible, {}, {}};
      S q_margin(0);
      auto q_side = detail::max_margin<S>(m.rows(), eve_support, legit_support, true, eve_payoff, q_margin);
      if (!q_side) {
        result.trace.push_back(std::move(step));
        continue;
      }
      step.q = detail::scatter(q_side->first, legit_support, m.cols());
      S p_margin(0);
      auto p_side = detail::max_margin<S>(m.cols(), legit_support, eve_support, false, legit_payoff, p_margin);
      if (!p_side) {
        step.outcome = StepOutcome::VerificationFailed;
        result.trace.push_back(std::move(step));
        continue;
      }
      step.p = detail::scatter(p_side->first, eve_support, m.rows());
      step.outcome = StepOutcome::Equilibrium;

      Equilibrium<S> e;
      e.kind = eve_support.size() == 1 && legit_support.size() == 1 ? Equilibrium<S>::Kind::Pure
                                                                      : Equilibrium<S>::Kind::Mixed;
      if (e.is_pure()) {
        e.eve_row = eve_support[0];
        e.legit_col = legit_support[0];
      }
      e.p = step.p;
      e.q = step.q;
      e.value = q_side->second;
      const auto check = verify_equilibrium(m, e, S(Numeric<S>::exact ? 0 : 1e-9));
      if (!check.ok) throw InternalConsistencyError("proposition passed both steps but fails verification");
      e.verified = true;
      result.trace.push_back(std::move(step));
      result.equilibrium = std::move(e);
      return result;
    }
  }
  throw InternalConsistencyError("no proposition verified; a mixed equilibrium always exists");
}

/// Convenience wrapper returning just the equilibrium.
template <Scalar S>
Equilibrium<S> solve_algorithm1(const UtilityMatrix<S>& m) {
  return solve_proposition_verification(m).equilibrium;
}

/// Payoffs of a 3x3 game written as affine functions of the first two
/// weights of the opponent, with the third eliminated as 1 - w1 - w2.
/// Each entry is {coefficient of w1, coefficient of w2, constant}.
template <Scalar S>
using ReducedPayoffs = std::vector<std::array<S, 3>>;

/// Eve's payoff for each row as a function of (q1, q2).
template <Scalar S>
ReducedPayoffs<S> reduced_eve_payoffs(const UtilityMatrix<S>& m) {
  if (m.cols() != 3) throw ArgumentError("reduced payoffs need a 3x3 matrix");
  ReducedPayoffs<S> out;
  for (std::size_t r = 0; r < 3; ++r)
    out.push_back({S(m.at(r, 0) - m.at(r, 2)), S(m.at(r, 1) - m.at(r, 2)), m.at(r, 2)});
  return out;
}

/// The legitimate users' payoff (negated P_e) for each column as a function
/// of (p1, p2).
template <Scalar S>
ReducedPayoffs<S> reduced_legit_payoffs(const UtilityMatrix<S>& m) {
  if (m.cols() != 3) throw ArgumentError("reduced payoffs need a 3x3 matrix");
  ReducedPayoffs<S> out;
  for (std::size_t c = 0; c < 3; ++c)
    out.push_back({S(m.at(2, c) - m.at(0, c)), S(m.at(2, c) - m.at(1, c)), S(-m.at(2, c))});
  return out;
}

// ---------------------------------------------------------------------------
// One-stop solve used by the CLI and sweeps.

enum class MixedMethod { PropositionVerification, SupportEnumeration };

inline std::string to_string(MixedMethod m) {
  return m == MixedMethod::PropositionVerification ? "proposition-verification" : "support-enumeration";
}

template <Scalar S>
struct SolveSummary {
  GameClass game_class = GameClass::Unclassified;
  UtilityMatrix<S> matrix;
  std::vector<Equilibrium<S>> pure;
  Equilibrium<S> mixed;
  MixedMethod method = MixedMethod::SupportEnumeration;
  S value;
};

template <Scalar S>
SolveSummary<S> solve_game(const GameSpec<S>& spec) {
  const GameClass cls = classify(spec);
  auto matrix = build_utility_matrix(spec);
  auto pure = find_pure_equilibria(matrix);
  const bool use_propositions = cls == GameClass::AsymmetricMixedOnly && matrix.cols() == 3;
  Equilibrium<S> mixed = use_propositions ? solve_algorithm1(matrix) : solve_support_enumeration(matrix);
  S value = mixed.value;
  return SolveSummary<S>{cls,   std::move(matrix),
                         std::move(pure),
                         std::move(mixed),
                         use_propositions ? MixedMethod::PropositionVerification : MixedMethod::SupportEnumeration,
                         std::move(value)};
}

}  // namespace wss
