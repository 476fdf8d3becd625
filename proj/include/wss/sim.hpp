#pragma once

// Monte Carlo replay of the packet exchange. Each trial picks the strategies
// (sampling them when mixed), draws one reception indicator per packet and
// counts a capture when Eve holds the whole secret.
//
// Per-trial draw order on the decision lane is fixed: legit strategy, Eve
// location, Alice's packets in send order, Bob's packets in send order. Every
// draw is a 53-bit integer k and an event of probability p fires iff
// k < ceil(p * 2^53), so exact and float modes share the same integer path.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <type_traits>
#include <variant>
#include <vector>

#include "wss/error.hpp"
#include "wss/game.hpp"
#include "wss/numeric.hpp"
#include "wss/rng.hpp"
#include "wss/solver.hpp"

namespace wss {

template <Scalar S>
using LegitChoice = std::variant<LegitStrategy, std::vector<S>>;
template <Scalar S>
using EveChoice = std::variant<EveStrategy, std::vector<S>>;

template <Scalar S>
struct SimulationConfig {
  GameSpec<S> spec;
  LegitChoice<S> legit;
  EveChoice<S> eve;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  unsigned payload_bits = 32;
};

enum class CaptureMode { Probability, Payload };

struct SimulationReport {
  std::uint64_t trials = 0;
  std::uint64_t captures = 0;
  double empirical_pe = 0;
  double std_error = 0;
  double analytic_pe = 0;
  std::string analytic_pe_exact;   // decimal or fraction string
  std::optional<double> z_score;   // empty when std_error == 0 and the values differ
  std::uint64_t seed = 0;

  bool within(double sigmas) const { return std::fabs(empirical_pe - analytic_pe) <= sigmas * std_error; }

  friend bool operator==(const SimulationReport&, const SimulationReport&) = default;
};

struct TrialOutcome {
  std::size_t legit_col = 0;
  std::size_t eve_row = 0;
  bool received_all = false;   // probability-mode capture
  bool secret_matched = false; // payload-mode capture
};

namespace detail {

template <Scalar S>
std::uint64_t unit_threshold(const S& p) {
  if constexpr (Numeric<S>::exact) {
    mpz_class scaled = p.get_num() * mpz_class(rng::kUnitScale);
    mpz_class out;
    mpz_cdiv_q(out.get_mpz_t(), scaled.get_mpz_t(), p.get_den().get_mpz_t());
    if (out < 0) return 0;
    if (out > mpz_class(rng::kUnitScale)) return rng::kUnitScale;
    return out.get_ui();
  } else {
    const double scaled = std::ceil(std::ldexp(p, static_cast<int>(rng::kUnitBits)));
    if (scaled <= 0) return 0;
    if (scaled >= static_cast<double>(rng::kUnitScale)) return rng::kUnitScale;
    return static_cast<std::uint64_t>(scaled);
  }
}

// Cumulative thresholds: outcome i is chosen when k < cut[i] (first match).
template <Scalar S>
std::vector<std::uint64_t> cumulative_thresholds(const std::vector<S>& weights) {
  std::vector<std::uint64_t> cuts;
  S running(0);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    running += weights[i];
    cuts.push_back(i + 1 == weights.size() ? rng::kUnitScale : unit_threshold(running));
  }
  return cuts;
}

inline std::size_t pick(const std::vector<std::uint64_t>& cuts, std::uint64_t k) {
  for (std::size_t i = 0; i < cuts.size(); ++i)
    if (k < cuts[i]) return i;
  return cuts.size() - 1;
}

}  // namespace detail

/// Pre-resolved simulation: mixed weights and per-packet probabilities turned
/// into integer thresholds.
template <Scalar S>
class CompiledSimulation {
 public:
  explicit CompiledSimulation(const SimulationConfig<S>& cfg)
      : matrix_(build_utility_matrix(cfg.spec)), seed_(cfg.seed), trials_(cfg.trials), payload_bits_(cfg.payload_bits) {
    if (cfg.trials == 0) throw ArgumentError("trials must be >= 1");
    if (payload_bits_ == 0 || payload_bits_ > 64) throw ArgumentError("payload_bits must lie in [1, 64]");
    q_ = std::visit(
        [&](const auto& c) -> std::vector<S> {
          if constexpr (std::is_same_v<std::decay_t<decltype(c)>, LegitStrategy>)
            return point_mass<S>(matrix_.cols(), matrix_.column_of(c));
          else
            return c;
        },
        cfg.legit);
    p_ = std::visit(
        [&](const auto& c) -> std::vector<S> {
          if constexpr (std::is_same_v<std::decay_t<decltype(c)>, EveStrategy>)
            return point_mass<S>(matrix_.rows(), static_cast<std::size_t>(c));
          else
            return c;
        },
        cfg.eve);
    require_distribution(q_, matrix_.cols(), "legit strategy vector");
    require_distribution(p_, matrix_.rows(), "eve strategy vector");
    legit_cuts_ = detail::cumulative_thresholds(q_);
    eve_cuts_ = detail::cumulative_thresholds(p_);
    for (auto e : kEveStrategies) {
      const auto reach = distances(e);
      alice_cut_.push_back(detail::unit_threshold(at_reach(cfg.spec.alice(), reach.to_alice)));
      bob_cut_.push_back(detail::unit_threshold(at_reach(cfg.spec.bob(), reach.to_bob)));
    }
    for (const auto& s : matrix_.columns()) counts_.push_back(packet_counts(s, cfg.spec.packets()));
  }

  const UtilityMatrix<S>& matrix() const { return matrix_; }
  S analytic_pe() const { return matrix_.expected(p_, q_); }
  std::uint64_t trials() const { return trials_; }

  TrialOutcome run_trial(std::uint64_t trial, bool with_payloads) const {
    rng::TrialStream decisions(seed_, trial, rng::Lane::Decisions);
    TrialOutcome out;
    out.legit_col = detail::pick(legit_cuts_, decisions.unit53());
    out.eve_row = detail::pick(eve_cuts_, decisions.unit53());
    const auto counts = counts_[out.legit_col];
    const std::uint64_t a_cut = alice_cut_[out.eve_row];
    const std::uint64_t b_cut = bob_cut_[out.eve_row];

    const unsigned total = counts.alice + counts.bob;
    std::vector<bool> received;
    if (with_payloads) received.reserve(total);
    bool all = true;
    for (unsigned i = 0; i < total; ++i) {
      const bool ok = decisions.unit53() < (i < counts.alice ? a_cut : b_cut);
      all = all && ok;
      if (with_payloads) received.push_back(ok);
    }
    out.received_all = all;

    if (with_payloads) {
      rng::TrialStream payloads(seed_, trial, rng::Lane::Payloads);
      const std::uint64_t mask = payload_bits_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << payload_bits_) - 1);
      std::uint64_t secret = 0;
      std::uint64_t eve_xor = 0;
      bool holds_all = true;
      for (unsigned i = 0; i < total; ++i) {
        const std::uint64_t payload = payloads.next() & mask;
        secret ^= payload;
        if (received[i])
          eve_xor ^= payload;
        else
          holds_all = false;
      }
      // Eve knows which packets she missed; with a gap she cannot claim the secret.
      out.secret_matched = holds_all && eve_xor == secret;
    }
    return out;
  }

  std::uint64_t count_captures(std::uint64_t begin, std::uint64_t end, CaptureMode mode) const {
    std::uint64_t captures = 0;
    const bool payload = mode == CaptureMode::Payload;
    for (std::uint64_t t = begin; t < end; ++t) {
      const auto o = run_trial(t, payload);
      captures += payload ? o.secret_matched : o.received_all;
    }
    return captures;
  }

 private:
  UtilityMatrix<S> matrix_;
  std::uint64_t seed_;
  std::uint64_t trials_;
  unsigned payload_bits_;
  std::vector<S> q_;
  std::vector<S> p_;
  std::vector<std::uint64_t> legit_cuts_;
  std::vector<std::uint64_t> eve_cuts_;
  std::vector<std::uint64_t> alice_cut_;
  std::vector<std::uint64_t> bob_cut_;
  std::vector<PacketCounts> counts_;
};

/// Runs all trials, split into `partitions` contiguous blocks evaluated on
/// separate threads. The report does not depend on `partitions`.
template <Scalar S>
SimulationReport simulate_exchange(const SimulationConfig<S>& cfg, CaptureMode mode = CaptureMode::Probability,
                                   unsigned partitions = 1) {
  const CompiledSimulation<S> sim(cfg);
  if (partitions == 0) partitions = 1;
  std::uint64_t captures = 0;
  if (partitions == 1) {
    captures = sim.count_captures(0, cfg.trials, mode);
  } else {
    std::vector<std::uint64_t> partial(partitions, 0);
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < partitions; ++w) {
      const std::uint64_t begin = cfg.trials * w / partitions;
      const std::uint64_t end = cfg.trials * (w + 1) / partitions;
      workers.emplace_back([&, w, begin, end] { partial[w] = sim.count_captures(begin, end, mode); });
    }
    for (auto& t : workers) t.join();
    for (auto c : partial) captures += c;
  }

  SimulationReport rep;
  rep.trials = cfg.trials;
  rep.captures = captures;
  rep.seed = cfg.seed;
  rep.empirical_pe = static_cast<double>(captures) / static_cast<double>(cfg.trials);
  rep.std_error = std::sqrt(rep.empirical_pe * (1.0 - rep.empirical_pe) / static_cast<double>(cfg.trials));
  const S analytic = sim.analytic_pe();
  rep.analytic_pe = Numeric<S>::to_double(analytic);
  rep.analytic_pe_exact = format_number(analytic);
  const double diff = rep.empirical_pe - rep.analytic_pe;
  if (rep.std_error > 0)
    rep.z_score = diff / rep.std_error;
  else if (diff == 0)
    rep.z_score = 0.0;
  return rep;
}

/// Same as simulate_exchange but both sides must be given as mixed vectors.
template <Scalar S>
SimulationReport simulate_equilibrium_value(const SimulationConfig<S>& cfg, unsigned partitions = 1) {
  if (!std::holds_alternative<std::vector<S>>(cfg.legit) || !std::holds_alternative<std::vector<S>>(cfg.eve))
    throw ArgumentError("equilibrium-value simulation needs mixed p and q vectors");
  return simulate_exchange(cfg, CaptureMode::Probability, partitions);
}

}  // namespace wss
