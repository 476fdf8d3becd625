#pragma once

// Strategy spaces and the zero-sum utility matrix. Entries are Eve's capture
// probability P_e; the legitimate users' utility is its negation and is never
// stored separately.

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "wss/channel.hpp"
#include "wss/error.hpp"
#include "wss/numeric.hpp"

namespace wss {

inline constexpr unsigned kDefaultMaxPackets = 64;

enum class EveStrategy { NearAlice = 0, Middle = 1, NearBob = 2 };

inline constexpr std::array<EveStrategy, 3> kEveStrategies{EveStrategy::NearAlice, EveStrategy::Middle,
                                                           EveStrategy::NearBob};

inline std::string to_string(EveStrategy e) {
  switch (e) {
    case EveStrategy::NearAlice: return "NearAlice";
    case EveStrategy::Middle: return "Middle";
    case EveStrategy::NearBob: return "NearBob";
  }
  return "?";
}

inline EveStrategy eve_strategy_from_string(const std::string& s) {
  for (auto e : kEveStrategies)
    if (to_string(e) == s) return e;
  throw ArgumentError("unknown Eve strategy '" + s + "'");
}

/// Which triple field Eve sees for each sender at a given location.
enum class Reach { Near, Mid, Far };

struct EveDistances {
  Reach to_alice;
  Reach to_bob;
};

constexpr EveDistances distances(EveStrategy e) {
  switch (e) {
    case EveStrategy::NearAlice: return {Reach::Near, Reach::Far};
    case EveStrategy::Middle: return {Reach::Mid, Reach::Mid};
    case EveStrategy::NearBob: return {Reach::Far, Reach::Near};
  }
  return {Reach::Mid, Reach::Mid};
}

template <Scalar S>
const S& at_reach(const ChannelTriple<S>& t, Reach r) {
  switch (r) {
    case Reach::Near: return t.p_near;
    case Reach::Mid: return t.p_mid;
    case Reach::Far: return t.p_far;
  }
  return t.p_mid;
}

/// How the N packets are split between the two senders.
struct LegitStrategy {
  enum class Kind { AliceHeavy, Split, BobHeavy };
  Kind kind = Kind::Split;
  unsigned n = 0;  // packets sent by the lighter sender; unused for Split

  static LegitStrategy alice_heavy(unsigned n) { return {Kind::AliceHeavy, n}; }
  static LegitStrategy bob_heavy(unsigned n) { return {Kind::BobHeavy, n}; }
  static LegitStrategy split() { return {Kind::Split, 0}; }

  friend bool operator==(const LegitStrategy&, const LegitStrategy&) = default;
};

inline std::string to_string(const LegitStrategy& s) {
  switch (s.kind) {
    case LegitStrategy::Kind::AliceHeavy: return "AliceHeavy(" + std::to_string(s.n) + ")";
    case LegitStrategy::Kind::BobHeavy: return "BobHeavy(" + std::to_string(s.n) + ")";
    case LegitStrategy::Kind::Split: return "Split";
  }
  return "?";
}

inline LegitStrategy legit_strategy_from_string(const std::string& s) {
  if (s == "Split") return LegitStrategy::split();
  for (auto [prefix, kind] : {std::pair{std::string("AliceHeavy("), LegitStrategy::Kind::AliceHeavy},
                              std::pair{std::string("BobHeavy("), LegitStrategy::Kind::BobHeavy}}) {
    if (s.rfind(prefix, 0) == 0 && s.size() > prefix.size() + 1 && s.back() == ')') {
      const std::string digits = s.substr(prefix.size(), s.size() - prefix.size() - 1);
      if (digits.find_first_not_of("0123456789") != std::string::npos) break;
      return {kind, static_cast<unsigned>(std::stoul(digits))};
    }
  }
  throw ArgumentError("unknown legit strategy '" + s + "'");
}

inline void require_packet_count(unsigned packets) {
  if (packets < 2 || packets % 2 != 0)
    throw ArgumentError("packet count N must be an even integer >= 2, got " + std::to_string(packets));
}

/// AliceHeavy(0..N/2-1), Split, BobHeavy(N/2-1..0): N+1 strategies.
inline std::vector<LegitStrategy> legit_strategies(unsigned packets) {
  require_packet_count(packets);
  std::vector<LegitStrategy> out;
  out.reserve(packets + 1);
  for (unsigned n = 0; n < packets / 2; ++n) out.push_back(LegitStrategy::alice_heavy(n));
  out.push_back(LegitStrategy::split());
  for (unsigned n = packets / 2; n-- > 0;) out.push_back(LegitStrategy::bob_heavy(n));
  return out;
}

struct PacketCounts {
  unsigned alice = 0;
  unsigned bob = 0;

  friend bool operator==(const PacketCounts&, const PacketCounts&) = default;
};

inline PacketCounts packet_counts(const LegitStrategy& s, unsigned packets) {
  require_packet_count(packets);
  if (s.kind != LegitStrategy::Kind::Split && s.n >= packets / 2)
    throw ArgumentError(to_string(s) + " out of range for N=" + std::to_string(packets));
  switch (s.kind) {
    case LegitStrategy::Kind::AliceHeavy: return {packets - s.n, s.n};
    case LegitStrategy::Kind::BobHeavy: return {s.n, packets - s.n};
    case LegitStrategy::Kind::Split: break;
  }
  return {packets / 2, packets / 2};
}

/// Packet count plus both senders' raw triples. Admissibility is checked by
/// validate_assumption / classify, not here, so degenerate channels can still
/// be built and simulated. Probabilities must lie in (0, 1].
template <Scalar S>
class GameSpec {
 public:
  GameSpec(unsigned packets, ChannelTriple<S> alice, ChannelTriple<S> bob, unsigned max_packets = kDefaultMaxPackets)
      : packets_(packets), alice_(std::move(alice)), bob_(std::move(bob)) {
    require_packet_count(packets_);
    if (packets_ > max_packets)
      throw ArgumentError("N=" + std::to_string(packets_) + " exceeds the cap of " + std::to_string(max_packets));
    for (auto* t : {&alice_, &bob_})
      for (S* p : {&t->p_near, &t->p_mid, &t->p_far}) {
        // mpq_class built from (num, den) is not reduced until asked
        if constexpr (Numeric<S>::exact) p->canonicalize();
        if (!(*p > S(0)) || *p > S(1)) throw ArgumentError("success probabilities must lie in (0,1]");
      }
  }

  unsigned packets() const { return packets_; }
  const ChannelTriple<S>& alice() const { return alice_; }
  const ChannelTriple<S>& bob() const { return bob_; }
  bool symmetric() const { return alice_ == bob_; }

 private:
  unsigned packets_;
  ChannelTriple<S> alice_;
  ChannelTriple<S> bob_;
};

template <Scalar S>
S eve_capture_probability(const GameSpec<S>& spec, const LegitStrategy& legit, EveStrategy eve) {
  const auto counts = packet_counts(legit, spec.packets());
  const auto reach = distances(eve);
  return S(ipow(at_reach(spec.alice(), reach.to_alice), counts.alice) *
           ipow(at_reach(spec.bob(), reach.to_bob), counts.bob));
}

/// 3 x C matrix of P_e; rows follow kEveStrategies, columns the given
/// legit strategies.
template <Scalar S>
class UtilityMatrix {
 public:
  static constexpr std::size_t kRows = 3;

  UtilityMatrix(std::vector<LegitStrategy> columns, std::vector<S> entries)
      : columns_(std::move(columns)), entries_(std::move(entries)) {
    if (columns_.empty()) throw ArgumentError("utility matrix needs at least one column");
    if (entries_.size() != kRows * columns_.size()) throw ArgumentError("utility matrix entry count mismatch");
  }

  std::size_t rows() const { return kRows; }
  std::size_t cols() const { return columns_.size(); }
  const std::vector<LegitStrategy>& columns() const { return columns_; }

  const S& at(std::size_t row, std::size_t col) const { return entries_[row * columns_.size() + col]; }
  const S& at(EveStrategy row, std::size_t col) const { return at(static_cast<std::size_t>(row), col); }
  S legit_utility(std::size_t row, std::size_t col) const { return S(-at(row, col)); }

  std::size_t column_of(const LegitStrategy& s) const {
    for (std::size_t c = 0; c < columns_.size(); ++c)
      if (columns_[c] == s) return c;
    throw ArgumentError(to_string(s) + " is not a column of this matrix");
  }

  /// Sub-game keeping only the listed columns, in the given order.
  UtilityMatrix restrict_to(const std::vector<LegitStrategy>& keep) const {
    std::vector<std::size_t> idx;
    for (const auto& s : keep) idx.push_back(column_of(s));
    std::vector<S> sub;
    sub.reserve(kRows * keep.size());
    for (std::size_t r = 0; r < kRows; ++r)
      for (auto c : idx) sub.push_back(at(r, c));
    return UtilityMatrix(keep, std::move(sub));
  }

  /// Expected P_e under mixed strategies p (rows) and q (columns).
  S expected(const std::vector<S>& p, const std::vector<S>& q) const {
    S total(0);
    for (std::size_t r = 0; r < kRows; ++r) total += p[r] * row_payoff(r, q);
    return total;
  }

  S row_payoff(std::size_t row, const std::vector<S>& q) const {
    S total(0);
    for (std::size_t c = 0; c < cols(); ++c) total += at(row, c) * q[c];
    return total;
  }

  S column_payoff(std::size_t col, const std::vector<S>& p) const {
    S total(0);
    for (std::size_t r = 0; r < kRows; ++r) total += p[r] * at(r, col);
    return total;
  }

  friend bool operator==(const UtilityMatrix& a, const UtilityMatrix& b) {
    return a.columns_ == b.columns_ && a.entries_ == b.entries_;
  }

 private:
  std::vector<LegitStrategy> columns_;
  std::vector<S> entries_;
};

template <Scalar S>
UtilityMatrix<S> build_utility_matrix(const GameSpec<S>& spec) {
  auto cols = legit_strategies(spec.packets());
  std::vector<S> entries;
  entries.reserve(UtilityMatrix<S>::kRows * cols.size());
  for (auto e : kEveStrategies)
    for (const auto& s : cols) entries.push_back(eve_capture_probability(spec, s, e));
  return UtilityMatrix<S>(std::move(cols), std::move(entries));
}

/// The three columns used by the mixed-equilibrium procedure for asymmetric
/// games: everything from Alice, an even split, everything from Bob.
inline std::vector<LegitStrategy> extreme_strategies() {
  return {LegitStrategy::alice_heavy(0), LegitStrategy::split(), LegitStrategy::bob_heavy(0)};
}

}  // namespace wss
