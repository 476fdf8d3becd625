// Acceptance criteria: one PASS/FAIL line each, non-zero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "support.hpp"
#include "wss/json_io.hpp"

using namespace wss;
using namespace wss::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> body;
};

Outcome worked_example() {
  Outcome o;
  const GameSpec<Q> spec(2, worked_alice(), worked_bob());
  const auto m = build_utility_matrix(spec);
  const char* expected[3][3] = {{"0.9801", "0.693", "0.49"}, {"0.8836", "0.7896", "0.7056"}, {"0.64", "0.72", "0.81"}};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c)
      o.require(m.at(r, c) == dec(expected[r][c]), "matrix entry " + std::to_string(r) + "," + std::to_string(c));

  const char* eve[3][3] = {{"0.4901", "0.203", "0.49"}, {"0.178", "0.084", "0.7056"}, {"-0.17", "-0.09", "0.81"}};
  const auto reduced = reduced_eve_payoffs(m);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t k = 0; k < 3; ++k) o.require(reduced[r][k] == dec(eve[r][k]), "Eve reduced coefficient");

  const auto e = solve_algorithm1(m);
  o.require(e.q == std::vector<Q>{Q(0), Q(3, 5), Q(2, 5)}, "q = (0, 3/5, 2/5)");
  o.require(e.p == std::vector<Q>{Q(0), Q(15, 29), Q(14, 29)}, "p = (0, 15/29, 14/29)");
  o.require(e.value == Q(189, 250), "value 0.756");
  o.require(verify_equilibrium(m, e).ok && oracle_is_equilibrium(m, e.p, e.q), "recomputed profile verifies");

  const auto enumerated = solve_support_enumeration(m);
  o.require(enumerated.value == Q(189, 250) && game_value(m) == Q(189, 250), "oracle values agree");

  const std::vector<Q> published{Q(0), dec("0.5814"), dec("0.4186")};
  const auto bad = verify_equilibrium(m, published, e.q);
  o.require(!bad.ok && bad.best_legit_col == 2, "published p fails verification (BobHeavy(0) preferred)");
  std::ostringstream d;
  d << "q=(0,3/5,2/5) p=(0,15/29,14/29) value=" << format_number(e.value) << "; published p fails, legit gain "
    << std::setprecision(4) << bad.legit_gain.get_d();
  if (o.ok) o.detail = d.str();
  return o;
}

Outcome split_bound() {
  Outcome o;
  Gen g(20001);
  for (int i = 0; i < 1000; ++i) {
    const auto t = g.admissible();
    o.require(is_admissible(t), "generator produced a rejected triple");
    o.require(t.p_near * t.p_far < t.p_mid * t.p_mid, "p_near p_far < p_mid^2 violated");
    o.require(check_lemma1(t, 2).holds, "check_lemma1 disagrees");
  }
  if (o.ok) o.detail = "1000 accepted triples, 0 counterexamples";
  return o;
}

Outcome symmetric_pure() {
  Outcome o;
  Gen g(20002);
  for (int i = 0; i < 1000; ++i) {
    const unsigned n = g.pick(std::vector<unsigned>{2, 4, 8});
    const auto t = g.admissible();
    const auto m = build_utility_matrix(GameSpec<Q>(n, t, t));
    const std::size_t split = m.column_of(LegitStrategy::split());
    o.require(contains_pure(find_pure_equilibria(m), EveStrategy::Middle, split), "(Middle, Split) missing");
    const auto cells = oracle_pure_cells(m);
    o.require(std::find(cells.begin(), cells.end(), std::pair<std::size_t, std::size_t>{1, split}) != cells.end(),
              "oracle disagrees on (Middle, Split)");
  }
  if (o.ok) o.detail = "1000 symmetric specs, N in {2,4,8}";
  return o;
}

Outcome asymmetric_classes() {
  Outcome o;
  Gen g(20003);
  int pure_regime = 0, mixed_regime = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto [a, b] = g.dominated_pair();
    const unsigned n = g.pick(std::vector<unsigned>{2, 4, 6});
    const GameSpec<Q> spec(n, a, b);
    const auto cls = classify(spec);
    const auto m = build_utility_matrix(spec);
    const auto full_cells = oracle_pure_cells(m);
    const auto sub_cells = oracle_pure_cells(m.restrict_to(extreme_strategies()));
    const bool has_bob_pure = std::find(full_cells.begin(), full_cells.end(),
                                        std::pair<std::size_t, std::size_t>{2, m.cols() - 1}) != full_cells.end();
    if (b.p_near <= a.p_far) {
      ++pure_regime;
      o.require(has_bob_pure, "(NearBob, BobHeavy(0)) not found by enumeration");
      o.require(cls == GameClass::AsymmetricPureAtBob, "classifier disagrees (pure regime)");
    } else {
      ++mixed_regime;
      o.require(sub_cells.empty(), "restricted game has a pure equilibrium");
      o.require(cls == GameClass::AsymmetricMixedOnly, "classifier disagrees (mixed regime)");
    }
    o.require(find_pure_equilibria(m).size() == full_cells.size(), "find_pure_equilibria disagrees with oracle");
  }
  if (o.ok)
    o.detail = std::to_string(pure_regime) + " pure-regime + " + std::to_string(mixed_regime) +
               " mixed-regime specs, classifier 100% consistent";
  return o;
}

Outcome cross_validation() {
  Outcome o;
  Gen g(20004);
  int alg1 = 0;
  for (int i = 0; i < 500; ++i) {
    const unsigned n = g.pick(std::vector<unsigned>{2, 4, 6});
    Triple a, b;
    switch (i % 3) {
      case 0: std::tie(a, b) = g.dominated_pair(); break;
      case 1: a = b = g.admissible(1000); break;
      default: a = g.admissible(1000), b = g.admissible(1000); break;
    }
    const GameSpec<Q> spec(n, a, b);
    const auto m = build_utility_matrix(spec);
    const auto e = solve_support_enumeration(m);
    const Q value = game_value(m);
    o.require(verify_equilibrium(m, e).ok, "support enumeration profile fails verification");
    o.require(e.value == value, "support enumeration value differs from maximin value");
    if (classify(spec) == GameClass::AsymmetricMixedOnly) {
      ++alg1;
      const auto sub = m.restrict_to(extreme_strategies());
      const auto x = solve_algorithm1(sub);
      const auto y = solve_support_enumeration(sub);
      o.require(verify_equilibrium(sub, x).ok && verify_equilibrium(sub, y).ok, "3x3 profile fails verification");
      o.require(x.value == y.value && x.value == game_value(sub), "3x3 values disagree");
    }
  }
  if (o.ok) o.detail = "500 specs (" + std::to_string(alg1) + " with the 3x3 procedure), exact agreement";
  return o;
}

Outcome symmetric_mixed() {
  Outcome o;
  Gen g(20005);
  unsigned halved = 0;
  for (int i = 0; i < 200; ++i) {
    const unsigned n = g.pick(std::vector<unsigned>{2, 4, 6, 8});
    const auto t = g.admissible(1000);
    const GameSpec<Q> spec(n, t, t);
    const auto built = construct_feasible_q_detailed(spec);
    if (built.halvings > 0) ++halved;
    const auto q = built.profile.as_columns();
    bool positive = true;
    for (const auto& w : q) positive = positive && w > 0;
    o.require(positive && sums_to_one(q), "weights not strictly positive or not normalized");
    o.require(check_symmetric_mixed(spec, built.profile).holds, "end-position inequalities fail");
    const auto m = build_utility_matrix(spec);
    o.require(verify_equilibrium(m, std::vector<Q>{Q(0), Q(1), Q(0)}, q).ok, "profile with Eve in the middle fails");
  }
  if (o.ok) o.detail = "200 symmetric specs certified (" + std::to_string(halved) + " needed halving)";
  return o;
}

Outcome monte_carlo() {
  Outcome o;
  const std::uint64_t trials = 100000;
  double worst = 0;
  auto check = [&](const SimulationReport& r, const std::string& label) {
    o.require(r.within(4.0), label + " outside 4 sigma");
    if (r.z_score) worst = std::max(worst, std::fabs(*r.z_score));
  };

  const GameSpec<Q> spec(2, worked_alice(), worked_bob());
  const SimulationConfig<Q> eq{spec, std::vector<Q>{Q(0), Q(3, 5), Q(2, 5)},
                               std::vector<Q>{Q(0), Q(15, 29), Q(14, 29)}, trials, 31337, 32};
  const auto first = simulate_equilibrium_value(eq);
  o.require(first.analytic_pe_exact == "0.756", "equilibrium analytic value");
  check(first, "equilibrium profile");

  const auto second = simulate_equilibrium_value(eq);
  o.require(io::to_json(first).dump() == io::to_json(second).dump(), "same-seed reports differ");
  o.require(simulate_exchange(eq, CaptureMode::Probability, 8) == first, "8-way partition differs from sequential");

  Gen g(20007);
  for (int i = 0; i < 20; ++i) {
    const unsigned n = g.pick(std::vector<unsigned>{2, 4});
    const GameSpec<Q> s(n, g.admissible(1000), g.admissible(1000));
    const SimulationConfig<Q> cfg{s, g.pick(legit_strategies(n)), kEveStrategies[static_cast<std::size_t>(g.uniform(0, 2))],
                                  trials, 1000 + static_cast<std::uint64_t>(i), 32};
    check(simulate_exchange(cfg), "pure profile " + std::to_string(i));
  }
  if (o.ok) {
    std::ostringstream d;
    d << "21 profiles x 1e5 trials, max |z| = " << std::setprecision(3) << worst << "; deterministic, 8-way equal";
    o.detail = d.str();
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "worked example reproduction (exact)", 1.0, worked_example},
      {2, "split-versus-middle bound on 1000 accepted triples", 1.0, split_bound},
      {3, "symmetric games contain (Middle, Split) on 1000 specs", 10.0, symmetric_pure},
      {4, "asymmetric classifier vs exhaustive enumeration on 1000 specs", 10.0, asymmetric_classes},
      {5, "solver cross-validation on 500 specs", 60.0, cross_validation},
      {6, "full-support symmetric construction on 200 specs", 10.0, symmetric_mixed},
      {7, "Monte Carlo validation and determinism", 60.0, monte_carlo},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.body();
    } catch (const std::exception& e) {
      out.ok = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.ok && secs > c.limit_seconds) {
      out.ok = false;
      out.detail += " (time limit exceeded)";
    }
    failures += out.ok ? 0 : 1;
    std::cout << (out.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " [" << std::fixed
              << std::setprecision(3) << secs << " s / " << std::setprecision(0) << c.limit_seconds << " s] "
              << out.detail << std::endl;
    std::cout.unsetf(std::ios::fixed);
  }
  std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
