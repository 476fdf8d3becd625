#pragma once

// Random admissible channels and brute-force oracles shared by the suites.
// Oracles deliberately avoid the library's solver code paths.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wss/wss.hpp"

namespace wss::testing {

using Q = Rational;
using Triple = ChannelTriple<Q>;

/// n/d in canonical form; GMP arithmetic requires it.
inline Q frac(long n, long d) {
  Q q(n, d);
  q.canonicalize();
  return q;
}

inline Q dec(const char* s) { return parse_number<Q>(s); }

inline Triple triple(const char* near, const char* mid, const char* far) { return {dec(near), dec(mid), dec(far)}; }

inline Triple worked_alice() { return triple("0.99", "0.94", "0.80"); }
inline Triple worked_bob() { return triple("0.90", "0.84", "0.70"); }

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<long>(v.size()) - 1))];
  }

  /// Admissible triple on a 1/10000 grid: near > mid > far and 2 mid > near + far.
  Triple admissible(long den = 10000) {
    for (;;) {
      const long far = uniform(den / 100, den * 9 / 10);
      const long mid = uniform(far + 1, den - 2);
      const long near_hi = std::min(den - 1, 2 * mid - far - 1);
      if (near_hi < mid + 1) continue;
      const long near = uniform(mid + 1, near_hi);
      return {frac(near, den), frac(mid, den), frac(far, den)};
    }
  }

  /// Arbitrary triple in (0,1), not necessarily admissible.
  Triple raw(long den = 10000) {
    return {frac(uniform(1, den - 1), den), frac(uniform(1, den - 1), den), frac(uniform(1, den - 1), den)};
  }

  /// Admissible pair with alice strictly above bob at every distance.
  std::pair<Triple, Triple> dominated_pair() {
    for (;;) {
      Triple a = admissible();
      Triple b = admissible();
      if (a.p_near > b.p_near && a.p_mid > b.p_mid && a.p_far > b.p_far) return {a, b};
    }
  }

  /// Dominated pair forced into one regime: bob.p_near <= alice.p_far or >.
  std::pair<Triple, Triple> dominated_pair(bool pure_regime) {
    for (;;) {
      auto pr = dominated_pair();
      if ((pr.second.p_near <= pr.first.p_far) == pure_regime) return pr;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Capture probability by explicit per-packet multiplication.
template <Scalar S>
S oracle_entry(const ChannelTriple<S>& a, const ChannelTriple<S>& b, unsigned k_alice, unsigned k_bob, int eve_row) {
  const S& pa = eve_row == 0 ? a.p_near : (eve_row == 1 ? a.p_mid : a.p_far);
  const S& pb = eve_row == 0 ? b.p_far : (eve_row == 1 ? b.p_mid : b.p_near);
  S out(1);
  for (unsigned i = 0; i < k_alice; ++i) out *= pa;
  for (unsigned i = 0; i < k_bob; ++i) out *= pb;
  return out;
}

/// Matrix rebuilt from scratch: columns AliceHeavy(0..N/2-1), Split, BobHeavy(N/2-1..0).
template <Scalar S>
std::vector<std::vector<S>> oracle_matrix(const ChannelTriple<S>& a, const ChannelTriple<S>& b, unsigned n) {
  std::vector<std::pair<unsigned, unsigned>> counts;
  for (unsigned k = 0; k < n / 2; ++k) counts.push_back({n - k, k});
  counts.push_back({n / 2, n / 2});
  for (unsigned k = n / 2; k-- > 0;) counts.push_back({k, n - k});
  std::vector<std::vector<S>> m(3);
  for (int r = 0; r < 3; ++r)
    for (auto [ka, kb] : counts) m[static_cast<std::size_t>(r)].push_back(oracle_entry(a, b, ka, kb, r));
  return m;
}

/// Best-response oracle: true iff neither side gains by a pure deviation.
template <Scalar S>
bool oracle_is_equilibrium(const UtilityMatrix<S>& m, const std::vector<S>& p, const std::vector<S>& q) {
  S value(0);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) value += p[r] * q[c] * m.at(r, c);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    S row(0);
    for (std::size_t c = 0; c < m.cols(); ++c) row += q[c] * m.at(r, c);
    if (row > value) return false;
  }
  for (std::size_t c = 0; c < m.cols(); ++c) {
    S col(0);
    for (std::size_t r = 0; r < m.rows(); ++r) col += p[r] * m.at(r, c);
    if (col < value) return false;
  }
  return true;
}

/// Every cell that is a mutual weak best response, found by scanning.
template <Scalar S>
std::vector<std::pair<std::size_t, std::size_t>> oracle_pure_cells(const UtilityMatrix<S>& m) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      bool ok = true;
      for (std::size_t r2 = 0; r2 < m.rows(); ++r2) ok = ok && !(m.at(r2, c) > m.at(r, c));
      for (std::size_t c2 = 0; c2 < m.cols(); ++c2) ok = ok && !(m.at(r, c2) < m.at(r, c));
      if (ok) out.push_back({r, c});
    }
  return out;
}

inline bool sums_to_one(const std::vector<Q>& v) {
  Q s(0);
  for (const auto& x : v) {
    if (x < 0) return false;
    s += x;
  }
  return s == 1;
}

}  // namespace wss::testing
