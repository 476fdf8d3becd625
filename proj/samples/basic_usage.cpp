// Builds the two-packet game for a pair of channels, solves it exactly and
// checks the equilibrium value by simulation.
#include <iostream>

#include "wss/wss.hpp"

int main() {
  using wss::Rational;
  using Triple = wss::ChannelTriple<Rational>;

  const Triple alice{Rational("99/100"), Rational("94/100"), Rational("80/100")};
  const Triple bob{Rational("90/100"), Rational("84/100"), Rational("70/100")};
  const wss::GameSpec<Rational> spec(2, alice, bob);

  std::cout << "class: " << wss::to_string(wss::classify(spec)) << '\n';

  const auto summary = wss::solve_game(spec);
  const auto& m = summary.matrix;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::cout << wss::to_string(wss::kEveStrategies[r]);
    for (std::size_t c = 0; c < m.cols(); ++c) std::cout << '\t' << wss::format_number(m.at(r, c));
    std::cout << '\n';
  }

  std::cout << "eve p:";
  for (const auto& x : summary.mixed.p) std::cout << ' ' << wss::format_number(x);
  std::cout << "\nlegit q:";
  for (const auto& x : summary.mixed.q) std::cout << ' ' << wss::format_number(x);
  std::cout << "\nvalue: " << wss::format_number(summary.value) << '\n';

  wss::SimulationConfig<Rational> cfg{spec, summary.mixed.q, summary.mixed.p, 100000, 42, 32};
  const auto report = wss::simulate_exchange(cfg);
  std::cout << "simulated: " << report.empirical_pe << " +/- " << report.std_error << '\n';
  return 0;
}
