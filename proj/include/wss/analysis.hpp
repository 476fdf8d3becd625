#pragma once

// Inequality checks behind the symmetric-game results and a constructive
// mixed profile in which the legitimate users put positive weight on every
// split while Eve stays in the middle.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "wss/channel.hpp"
#include "wss/error.hpp"
#include "wss/game.hpp"
#include "wss/numeric.hpp"

namespace wss {

/// Machine-readable outcome of one inequality check: holds iff lhs < rhs.
template <Scalar S>
struct InequalityReport {
  std::string lemma;
  bool holds = false;
  S lhs;
  S rhs;
  S margin;  // rhs - lhs
};

/// Even split with Eve at either end never beats Eve in the middle:
/// p_near^{N/2} p_far^{N/2} < p_mid^N.
template <Scalar S>
InequalityReport<S> check_lemma1(const ChannelTriple<S>& t, unsigned packets) {
  require_packet_count(packets);
  InequalityReport<S> r;
  r.lemma = "1";
  r.lhs = S(ipow(t.p_near, packets / 2) * ipow(t.p_far, packets / 2));
  r.rhs = ipow(t.p_mid, packets);
  r.margin = S(r.rhs - r.lhs);
  r.holds = Numeric<S>::strict_sign(r.margin, "split-versus-middle inequality") > 0;
  return r;
}

/// Legit weights for a symmetric game: q_alice[n] on AliceHeavy(n),
/// q_split on Split, q_bob[n] on BobHeavy(n).
template <Scalar S>
struct SymmetricMixedProfile {
  std::vector<S> q_alice;
  S q_split;
  std::vector<S> q_bob;

  /// Weights laid out in legit_strategies() column order.
  std::vector<S> as_columns() const {
    std::vector<S> out(q_alice.begin(), q_alice.end());
    out.push_back(q_split);
    out.insert(out.end(), q_bob.rbegin(), q_bob.rend());
    return out;
  }

  static SymmetricMixedProfile from_columns(const std::vector<S>& cols) {
    if (cols.size() < 3 || cols.size() % 2 == 0) throw ArgumentError("column weights must have odd length N+1 >= 3");
    const std::size_t half = cols.size() / 2;
    SymmetricMixedProfile out;
    out.q_alice.assign(cols.begin(), cols.begin() + static_cast<std::ptrdiff_t>(half));
    out.q_split = cols[half];
    out.q_bob.assign(cols.rbegin(), cols.rbegin() + static_cast<std::ptrdiff_t>(half));
    return out;
  }
};

template <Scalar S>
struct SymmetricMixedReport {
  bool holds = false;
  S near_alice;  // expected capture with Eve near Alice (inequality 2 lhs)
  S near_bob;    // expected capture with Eve near Bob (inequality 3 lhs)
  S middle;      // p_mid^N, the common right-hand side
  InequalityReport<S> as_report() const {
    InequalityReport<S> r;
    r.lemma = "3";
    r.holds = holds;
    r.lhs = near_alice > near_bob ? near_alice : near_bob;
    r.rhs = middle;
    r.margin = S(r.rhs - r.lhs);
    return r;
  }
};

namespace detail {

template <Scalar S>
const ChannelTriple<S>& require_symmetric(const GameSpec<S>& spec) {
  if (!spec.symmetric()) throw ArgumentError("symmetric game required (identical channel triples)");
  return spec.alice();
}

template <Scalar S>
void require_full_support(const GameSpec<S>& spec, const SymmetricMixedProfile<S>& profile) {
  const std::size_t half = spec.packets() / 2;
  if (profile.q_alice.size() != half || profile.q_bob.size() != half)
    throw ArgumentError("profile has the wrong number of weights for N=" + std::to_string(spec.packets()));
  S total = profile.q_split;
  if (!(profile.q_split > S(0))) throw ArgumentError("every legit weight must be strictly positive");
  for (const auto* side : {&profile.q_alice, &profile.q_bob})
    for (const auto& w : *side) {
      if (!(w > S(0))) throw ArgumentError("every legit weight must be strictly positive");
      total += w;
    }
  if (Numeric<S>::tolerant_sign(S(total - 1)) != 0) throw ArgumentError("legit weights must sum to 1");
}

}  // namespace detail

/// Eve's expected capture at NearAlice, Middle and NearBob under the profile.
template <Scalar S>
std::array<S, 3> eve_middle_dominance(const GameSpec<S>& spec, const SymmetricMixedProfile<S>& profile) {
  detail::require_symmetric(spec);
  const auto m = build_utility_matrix(spec);
  const auto q = profile.as_columns();
  if (q.size() != m.cols()) throw ArgumentError("profile size does not match N");
  return {m.row_payoff(0, q), m.row_payoff(1, q), m.row_payoff(2, q)};
}

template <Scalar S>
bool middle_strictly_best(const std::array<S, 3>& rows) {
  return rows[1] > rows[0] && rows[1] > rows[2];
}

/// Strict check of both end-position inequalities for a full-support profile.
template <Scalar S>
SymmetricMixedReport<S> check_symmetric_mixed(const GameSpec<S>& spec, const SymmetricMixedProfile<S>& profile) {
  detail::require_symmetric(spec);
  detail::require_full_support(spec, profile);
  const auto rows = eve_middle_dominance(spec, profile);
  SymmetricMixedReport<S> r;
  r.near_alice = rows[0];
  r.middle = rows[1];
  r.near_bob = rows[2];
  r.holds = Numeric<S>::strict_sign(S(r.middle - r.near_alice), "near-Alice inequality") > 0 &&
            Numeric<S>::strict_sign(S(r.middle - r.near_bob), "near-Bob inequality") > 0;
  return r;
}

/// Pair term of the collapsed inequality for index n:
/// P^{N-n}(eps) P^n(D-eps) + P^n(eps) P^{N-n}(D-eps).
template <Scalar S>
S paired_capture(const ChannelTriple<S>& t, unsigned packets, unsigned n) {
  return S(ipow(t.p_near, packets - n) * ipow(t.p_far, n) + ipow(t.p_near, n) * ipow(t.p_far, packets - n));
}

/// true when index n needs no shrinking: paired term <= 2 p_mid^N.
template <Scalar S>
bool pair_is_benign(const ChannelTriple<S>& t, unsigned packets, unsigned n) {
  return !(paired_capture(t, packets, n) > S(2 * ipow(t.p_mid, packets)));
}

template <Scalar S>
struct FeasibleProfile {
  SymmetricMixedProfile<S> profile;
  std::vector<bool> benign;  // per n
  unsigned halvings = 0;
};

/// Mirror weights q_alice[n] = q_bob[n]; start uniform over all N+1 columns,
/// halve the weights of non-benign indices until the collapsed inequality
/// holds, and give the remainder to Split.
template <Scalar S>
FeasibleProfile<S> construct_feasible_q_detailed(const GameSpec<S>& spec) {
  const auto& t = detail::require_symmetric(spec);
  const unsigned packets = spec.packets();
  const unsigned half = packets / 2;
  const S middle = ipow(t.p_mid, packets);
  const S split_capture = S(ipow(t.p_near, half) * ipow(t.p_far, half));

  FeasibleProfile<S> out;
  std::vector<S> paired(half);
  for (unsigned n = 0; n < half; ++n) {
    paired[n] = paired_capture(t, packets, n);
    out.benign.push_back(!(paired[n] > S(2 * middle)));
  }

  std::vector<S> w(half, S(S(1) / S(packets + 1)));
  const auto split_weight = [&] {
    S used(0);
    for (const auto& x : w) used += x;
    return S(1 - 2 * used);
  };
  const auto collapsed_holds = [&] {
    S lhs = S(split_weight() * split_capture);
    for (unsigned n = 0; n < half; ++n) lhs += w[n] * paired[n];
    return Numeric<S>::strict_sign(S(middle - lhs), "collapsed mixed inequality") > 0;
  };
  // Bounded: each halving shrinks the non-benign mass geometrically and the
  // limit satisfies the split-versus-middle inequality strictly.
  while (!collapsed_holds()) {
    if (++out.halvings > 4096) throw InternalConsistencyError("halving schedule did not converge");
    for (unsigned n = 0; n < half; ++n)
      if (!out.benign[n]) w[n] = S(w[n] / 2);
  }
  out.profile.q_alice = w;
  out.profile.q_bob = w;
  out.profile.q_split = split_weight();
  return out;
}

template <Scalar S>
SymmetricMixedProfile<S> construct_feasible_q(const GameSpec<S>& spec) {
  return construct_feasible_q_detailed(spec).profile;
}

}  // namespace wss
