#pragma once

// Distance-dependent packet-success probabilities and the admissibility
// checks every channel must pass before it enters the game.

#include <algorithm>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "wss/error.hpp"
#include "wss/numeric.hpp"

namespace wss {

/// Alice-Bob separation D and Eve's near offset epsilon, 0 < epsilon < D/2.
template <Scalar S>
class GeometryParams {
 public:
  GeometryParams(S separation, S near_offset) : separation_(std::move(separation)), near_offset_(std::move(near_offset)) {
    if (!(separation_ > S(0))) throw ArgumentError("separation D must be positive");
    if (!(near_offset_ > S(0)) || !(near_offset_ * 2 < separation_))
      throw ArgumentError("near offset epsilon must lie in (0, D/2)");
  }

  const S& separation() const { return separation_; }
  const S& near_offset() const { return near_offset_; }
  S near() const { return near_offset_; }
  S mid() const { return S(separation_ / 2); }
  S far() const { return S(separation_ - near_offset_); }

 private:
  S separation_;
  S near_offset_;
};

/// Success probabilities at the three distances the game uses.
template <Scalar S>
struct ChannelTriple {
  S p_near;  // at epsilon
  S p_mid;   // at D/2
  S p_far;   // at D - epsilon

  friend bool operator==(const ChannelTriple&, const ChannelTriple&) = default;
};

enum class Condition {
  OpenInterval,     // every probability in (0, 1)
  Monotone,         // p_near > p_mid > p_far
  MidpointConcave,  // p_mid > (p_near + p_far) / 2
};

inline std::string condition_label(Condition c) {
  switch (c) {
    case Condition::OpenInterval: return "probabilities in (0,1)";
    case Condition::Monotone: return "Assumption 1(iii)";
    case Condition::MidpointConcave: return "Assumption 1(iv)";
  }
  return "?";
}

struct ConditionCheck {
  Condition condition;
  bool holds = false;
  bool ambiguous = false;  // float mode: decided inside the strictness margin
  std::string detail;      // the inequality that was evaluated
};

namespace detail {

template <Scalar S>
bool strictly_less(const S& lo, const S& hi, bool& ambiguous) {
  try {
    return Numeric<S>::strict_sign(S(hi - lo), "strict inequality") > 0;
  } catch (const NumericallyAmbiguous&) {
    ambiguous = true;
    return false;
  }
}

}  // namespace detail

/// Evaluates every admissibility condition on one triple, strict as written.
template <Scalar S>
std::vector<ConditionCheck> check_triple(const ChannelTriple<S>& t) {
  std::vector<ConditionCheck> out;
  const auto fmt = [](const S& v) { return format_number(v); };

  ConditionCheck open{Condition::OpenInterval, false, false, {}};
  bool amb = false;
  open.holds = true;
  for (const S* p : {&t.p_near, &t.p_mid, &t.p_far})
    open.holds = open.holds && detail::strictly_less(S(0), *p, amb) && detail::strictly_less(*p, S(1), amb);
  open.ambiguous = amb;
  open.detail = "0 < " + fmt(t.p_near) + ", " + fmt(t.p_mid) + ", " + fmt(t.p_far) + " < 1";
  out.push_back(open);

  ConditionCheck mono{Condition::Monotone, false, false, {}};
  amb = false;
  const bool first = detail::strictly_less(t.p_mid, t.p_near, amb);
  const bool second = detail::strictly_less(t.p_far, t.p_mid, amb);
  mono.holds = first && second;
  mono.ambiguous = amb;
  mono.detail = fmt(t.p_near) + " > " + fmt(t.p_mid) + " > " + fmt(t.p_far);
  out.push_back(mono);

  ConditionCheck mid{Condition::MidpointConcave, false, false, {}};
  amb = false;
  const S chord = S((t.p_near + t.p_far) / 2);
  mid.holds = detail::strictly_less(chord, t.p_mid, amb);
  mid.ambiguous = amb;
  mid.detail = fmt(t.p_mid) + " > (" + fmt(t.p_near) + " + " + fmt(t.p_far) + ")/2 = " + fmt(chord);
  out.push_back(mid);
  return out;
}

template <Scalar S>
bool is_admissible(const ChannelTriple<S>& t) {
  const auto checks = check_triple(t);
  return std::all_of(checks.begin(), checks.end(), [](const ConditionCheck& c) { return c.holds; });
}

/// Throws ValidationError naming the first violated condition.
template <Scalar S>
const ChannelTriple<S>& require_admissible(const ChannelTriple<S>& t, const std::string& who = "channel") {
  for (const auto& c : check_triple(t)) {
    if (!c.holds)
      throw ValidationError(who + " violates " + condition_label(c.condition) + ": " + c.detail +
                            (c.ambiguous ? " (numerically ambiguous)" : ""));
  }
  return t;
}

struct SenderReport {
  std::string sender;
  std::vector<ConditionCheck> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const ConditionCheck& c) { return c.holds; });
  }
};

struct ValidationReport {
  std::vector<SenderReport> senders;
  // Independence and time invariance cannot be checked on a triple; the
  // simulator honours them by construction.
  std::vector<std::string> notes{
      "Assumption 1(i): packet transmissions independent (asserted; enforced by the simulator)",
      "Assumption 1(ii): success probabilities time-invariant (asserted; fixed for each run)"};

  bool ok() const {
    return std::all_of(senders.begin(), senders.end(), [](const SenderReport& s) { return s.ok(); });
  }
};

template <Scalar S>
ValidationReport validate_assumption(const ChannelTriple<S>& alice, const ChannelTriple<S>& bob) {
  ValidationReport report;
  report.senders.push_back({"alice", check_triple(alice)});
  report.senders.push_back({"bob", check_triple(bob)});
  return report;
}

// ---------------------------------------------------------------------------
// Channel models

/// Three explicit probabilities; queryable only at the three game distances.
template <Scalar S>
struct ExplicitTriple {
  ChannelTriple<S> triple;
  std::optional<GeometryParams<S>> geometry;
};

/// p(d) = a - b d^2 on (0, max_distance].
template <Scalar S>
class ConcaveQuadratic {
 public:
  ConcaveQuadratic(S a, S b, S max_distance) : a_(std::move(a)), b_(std::move(b)), max_distance_(std::move(max_distance)) {
    if (!(max_distance_ > S(0))) throw ArgumentError("quadratic model: max distance must be positive");
    if (!(a_ < S(1))) throw ValidationError("quadratic model: a must be < 1");
    if (b_ < S(0)) throw ValidationError("quadratic model: b must be >= 0");
    if (!(S(a_ - b_ * max_distance_ * max_distance_) > S(0)))
      throw ValidationError("quadratic model: a - b*D^2 must stay > 0 over the domain");
  }

  const S& a() const { return a_; }
  const S& b() const { return b_; }
  const S& max_distance() const { return max_distance_; }

 private:
  S a_;
  S b_;
  S max_distance_;
};

/// Piecewise-linear interpolation through (distance, probability) knots.
template <Scalar S>
class TableInterpolated {
 public:
  explicit TableInterpolated(std::vector<std::pair<S, S>> knots) : knots_(std::move(knots)) {
    if (knots_.size() < 2) throw ArgumentError("table model needs at least two knots");
    if (!(knots_.front().first > S(0))) throw ArgumentError("table model: distances must be positive");
    for (std::size_t i = 0; i < knots_.size(); ++i) {
      if (i > 0 && !(knots_[i].first > knots_[i - 1].first))
        throw ArgumentError("table model: distances must be strictly increasing");
      if (!(knots_[i].second > S(0)) || !(knots_[i].second < S(1)))
        throw ValidationError("table model: probabilities must lie in (0,1)");
    }
  }

  const std::vector<std::pair<S, S>>& knots() const { return knots_; }

 private:
  std::vector<std::pair<S, S>> knots_;
};

template <Scalar S>
using ChannelModel = std::variant<ExplicitTriple<S>, ConcaveQuadratic<S>, TableInterpolated<S>>;

template <Scalar S>
S success_probability(const ChannelModel<S>& model, const S& d) {
  return std::visit(
      [&](const auto& m) -> S {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, ExplicitTriple<S>>) {
          if (!m.geometry) throw DomainError("explicit triple has no geometry; distance is undefined");
          if (d == m.geometry->near()) return m.triple.p_near;
          if (d == m.geometry->mid()) return m.triple.p_mid;
          if (d == m.geometry->far()) return m.triple.p_far;
          throw DomainError("explicit triple is defined only at epsilon, D/2 and D-epsilon; got " + format_number(d));
        } else if constexpr (std::is_same_v<M, ConcaveQuadratic<S>>) {
          if (!(d > S(0)) || d > m.max_distance())
            throw DomainError("distance " + format_number(d) + " outside (0, " + format_number(m.max_distance()) + "]");
          return S(m.a() - m.b() * d * d);
        } else {
          const auto& k = m.knots();
          if (d < k.front().first || d > k.back().first)
            throw DomainError("distance " + format_number(d) + " outside table range");
          for (std::size_t i = 1; i < k.size(); ++i) {
            if (d <= k[i].first) {
              const S w = S((d - k[i - 1].first) / (k[i].first - k[i - 1].first));
              return S(k[i - 1].second + w * (k[i].second - k[i - 1].second));
            }
          }
          return k.back().second;
        }
      },
      model);
}

/// Samples the model at epsilon, D/2 and D - epsilon, then validates.
template <Scalar S>
ChannelTriple<S> triple_from_model(const ChannelModel<S>& model, const GeometryParams<S>& geom,
                                   const std::string& who = "channel") {
  ChannelTriple<S> t;
  if (const auto* e = std::get_if<ExplicitTriple<S>>(&model); e && !e->geometry) {
    t = e->triple;
  } else {
    t = {success_probability(model, geom.near()), success_probability(model, geom.mid()),
         success_probability(model, geom.far())};
  }
  require_admissible(t, who);
  return t;
}

}  // namespace wss
