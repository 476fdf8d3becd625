#include "cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wss/json_io.hpp"
#include "wss/wss.hpp"

namespace wss::cli {
namespace {

using io::json;

struct Options {
  std::string config_path;
  std::string format = "json";
  std::string mode = "rational";
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::string out_path;

  // simulate
  std::string legit;
  std::string eve;
  std::string capture;
  std::optional<unsigned> payload_bits;
  std::optional<unsigned> partitions;

  // sweep
  std::string parameter;
  std::string from;
  std::string to;
  std::string step;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io::ConfigError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load_config(const Options& o) {
  if (o.config_path.empty()) throw io::ConfigError("--config", "a configuration file is required");
  return io::parse_document(read_file(o.config_path), o.config_path);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
  return quoted + "\"";
}

template <Scalar S>
std::string joined(const std::vector<S>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ";" : "") + format_number(v[i]);
  return out;
}

/// Section of the config, or an empty object when absent.
const json& section(const json& doc, const char* key) {
  static const json empty = json::object();
  auto it = doc.find(key);
  if (it == doc.end()) return empty;
  if (!it->is_object()) throw io::ConfigError(std::string("$.") + key, "expected an object");
  return *it;
}

// ---------------------------------------------------------------------------
// validate

template <Scalar S>
int cmd_validate(const Options& o, std::ostream& out) {
  const auto doc = load_config(o);
  const auto game = io::load_game<S>(doc);
  const auto report = validate_assumption(game.alice, game.bob);
  if (o.format == "csv") {
    out << "sender,condition,holds,ambiguous,inequality\n";
    for (const auto& s : report.senders)
      for (const auto& c : s.checks)
        out << s.sender << ',' << csv_field(condition_label(c.condition)) << ',' << c.holds << ',' << c.ambiguous
            << ',' << csv_field(c.detail) << '\n';
  } else {
    auto j = io::to_json(report);
    j["mode"] = std::string(Numeric<S>::mode_name);
    j["inexact"] = game.inexact;
    out << j.dump(2) << '\n';
  }
  return report.ok() ? kOk : kDomainFailure;
}

// ---------------------------------------------------------------------------
// solve

template <Scalar S>
struct SolveRow {
  std::string game_class;
  std::string value;
  std::string method;
  std::size_t pure_count = 0;
  std::string pure;
  std::string p;
  std::string q;
};

inline const char* kSolveCsvHeader = "class,game_value,method,pure_count,pure,p,q";

template <Scalar S>
SolveRow<S> summarize(const SolveSummary<S>& s) {
  SolveRow<S> row;
  row.game_class = to_string(s.game_class);
  row.value = format_number(s.value);
  row.method = to_string(s.method);
  row.pure_count = s.pure.size();
  for (std::size_t i = 0; i < s.pure.size(); ++i)
    row.pure += (i ? ";" : "") + to_string(kEveStrategies[s.pure[i].eve_row]) + "/" +
                to_string(s.matrix.columns()[s.pure[i].legit_col]);
  row.p = joined(s.mixed.p);
  row.q = joined(s.mixed.q);
  return row;
}

template <Scalar S>
std::string csv_row(const SolveRow<S>& r) {
  return csv_field(r.game_class) + "," + r.value + "," + r.method + "," + std::to_string(r.pure_count) + "," +
         csv_field(r.pure) + "," + r.p + "," + r.q;
}

template <Scalar S>
json solve_json(const GameSpec<S>& spec, const SolveSummary<S>& s) {
  json pure = json::array();
  for (const auto& e : s.pure) pure.push_back(io::to_json(e, s.matrix));
  auto mixed = io::to_json(s.mixed, s.matrix);
  mixed["method"] = to_string(s.method);
  const S independent = game_value(s.matrix);
  json j = {{"class", to_string(s.game_class)},
            {"N", spec.packets()},
            {"mode", std::string(Numeric<S>::mode_name)},
            {"alice", io::triple_json(spec.alice())},
            {"bob", io::triple_json(spec.bob())},
            {"matrix", io::to_json(s.matrix)},
            {"pure", pure},
            {"mixed", mixed},
            {"value", format_number(s.value)},
            {"maximin_value", format_number(independent)},
            {"verified", s.mixed.verified && Numeric<S>::tolerant_sign(S(independent - s.value)) == 0}};

  if (s.game_class == GameClass::Symmetric) {
    auto built = construct_feasible_q_detailed(spec);
    auto check = check_symmetric_mixed(spec, built.profile);
    json analysis = {{"split_vs_middle", io::to_json(check_lemma1(spec.alice(), spec.packets()))},
                     {"full_support_profile",
                      {{"q", io::numbers_json(built.profile.as_columns())},
                       {"halvings", built.halvings},
                       {"report", io::to_json(check.as_report())}}}};
    j["analysis"] = analysis;
  }
  if (s.game_class == GameClass::AsymmetricMixedOnly && s.matrix.cols() > 3) {
    const auto sub = s.matrix.restrict_to(extreme_strategies());
    const auto e = solve_algorithm1(sub);
    j["extreme_strategies_game"] = {{"matrix", io::to_json(sub)}, {"equilibrium", io::to_json(e, sub)}};
  }
  return j;
}

template <Scalar S>
int cmd_solve(const Options& o, std::ostream& out) {
  const auto doc = load_config(o);
  const auto spec = io::load_game<S>(doc).spec();
  const auto summary = solve_game(spec);
  if (o.format == "csv") {
    out << kSolveCsvHeader << '\n' << csv_row(summarize(summary)) << '\n';
  } else {
    out << solve_json(spec, summary).dump(2) << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// simulate

template <Scalar S>
std::vector<S> parse_vector(const std::string& text, const std::string& path) {
  std::vector<S> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(parse_number<S>(item));
    } catch (const ArgumentError& e) {
      throw io::ConfigError(path, e.what());
    }
  }
  return v;
}

template <Scalar S>
std::vector<S> json_vector(const json& arr, const std::string& path) {
  io::NumberReader<S> reader;
  std::vector<S> v;
  for (std::size_t i = 0; i < arr.size(); ++i) v.push_back(reader.read(arr[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

// A strategy given either as a label or as a weight vector.
struct ChoiceText {
  std::optional<std::string> label;
  std::optional<std::string> csv;
  const json* array = nullptr;
  std::string path;
};

ChoiceText choice_from(const std::string& flag, const json& sim, const char* key) {
  ChoiceText c;
  c.path = std::string("$.simulate.") + key;
  if (!flag.empty()) {
    c.path = std::string("--") + key;
    const bool numeric = flag.find_first_of("0123456789") == 0 || flag.find(',') != std::string::npos;
    (numeric ? c.csv : c.label) = flag;
    return c;
  }
  auto it = sim.find(key);
  if (it == sim.end()) return c;
  if (it->is_string())
    c.label = it->get<std::string>();
  else if (it->is_array())
    c.array = &*it;
  else
    throw io::ConfigError(c.path, "expected a strategy label or an array of weights");
  return c;
}

template <Scalar S>
std::optional<std::vector<S>> weights_of(const ChoiceText& c) {
  if (c.csv) return parse_vector<S>(*c.csv, c.path);
  if (c.array) return json_vector<S>(*c.array, c.path);
  return std::nullopt;
}

template <Scalar S>
int cmd_simulate(const Options& o, std::ostream& out) {
  const auto doc = load_config(o);
  const auto spec = io::load_game<S>(doc).spec();
  const json& sim = section(doc, "simulate");

  const auto legit_text = choice_from(o.legit, sim, "legit");
  const auto eve_text = choice_from(o.eve, sim, "eve");

  LegitChoice<S> legit = LegitStrategy::split();
  EveChoice<S> eve = EveStrategy::Middle;
  std::string legit_label, eve_label;
  const bool from_equilibrium = !legit_text.label && !legit_text.csv && !legit_text.array && !eve_text.label &&
                                !eve_text.csv && !eve_text.array;
  if (from_equilibrium) {
    const auto summary = solve_game(spec);
    legit = summary.mixed.q;
    eve = summary.mixed.p;
    legit_label = "q=" + joined(summary.mixed.q);
    eve_label = "p=" + joined(summary.mixed.p);
  } else {
    if (legit_text.label) {
      legit = legit_strategy_from_string(*legit_text.label);
      legit_label = *legit_text.label;
    } else if (auto w = weights_of<S>(legit_text)) {
      legit_label = "q=" + joined(*w);
      legit = std::move(*w);
    } else {
      throw io::ConfigError("$.simulate.legit", "missing (give both legit and eve, or neither)");
    }
    if (eve_text.label) {
      eve = eve_strategy_from_string(*eve_text.label);
      eve_label = *eve_text.label;
    } else if (auto w = weights_of<S>(eve_text)) {
      eve_label = "p=" + joined(*w);
      eve = std::move(*w);
    } else {
      throw io::ConfigError("$.simulate.eve", "missing (give both legit and eve, or neither)");
    }
  }

  auto get_u64 = [&](const char* key, std::uint64_t fallback) -> std::uint64_t {
    auto it = sim.find(key);
    if (it == sim.end()) return fallback;
    if (!it->is_number_unsigned()) throw io::ConfigError(std::string("$.simulate.") + key, "expected an unsigned integer");
    return it->get<std::uint64_t>();
  };

  SimulationConfig<S> cfg{spec, legit, eve, o.trials.value_or(get_u64("trials", 100000)),
                          o.seed.value_or(get_u64("seed", 0)),
                          o.payload_bits.value_or(static_cast<unsigned>(get_u64("payload_bits", 32)))};
  std::string capture = o.capture;
  if (capture.empty()) {
    auto it = sim.find("capture");
    capture = it != sim.end() && it->is_string() ? it->get<std::string>() : "probability";
  }
  if (capture != "probability" && capture != "payload")
    throw io::ConfigError("capture", "expected 'probability' or 'payload'");
  const auto mode = capture == "payload" ? CaptureMode::Payload : CaptureMode::Probability;
  const unsigned partitions = o.partitions.value_or(static_cast<unsigned>(get_u64("partitions", 1)));

  const auto report = simulate_exchange(cfg, mode, partitions);
  const auto hash = io::spec_hash(spec);
  if (o.format == "csv") {
    out << io::kSimulationCsvHeader << '\n' << io::simulation_csv_row(hash, legit_label, eve_label, report) << '\n';
  } else {
    auto j = io::to_json(report);
    j["spec_hash"] = hash;
    j["legit"] = legit_label;
    j["eve"] = eve_label;
    j["capture"] = capture;
    j["payload_bits"] = cfg.payload_bits;
    j["within_4_sigma"] = report.within(4.0);
    out << j.dump(2) << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// sweep

template <Scalar S>
S* triple_field(ChannelTriple<S>& t, const std::string& name) {
  if (name == "p_near") return &t.p_near;
  if (name == "p_mid") return &t.p_mid;
  if (name == "p_far") return &t.p_far;
  return nullptr;
}

template <Scalar S>
int cmd_sweep(const Options& o, std::ostream& out) {
  const auto doc = load_config(o);
  const auto base = io::load_game<S>(doc);
  const json& sw = section(doc, "sweep");
  io::NumberReader<S> numbers;

  auto text_or = [&](const std::string& flag, const char* key) -> S {
    if (!flag.empty()) {
      try {
        return parse_number<S>(flag);
      } catch (const ArgumentError& e) {
        throw io::ConfigError(std::string("--") + key, e.what());
      }
    }
    return numbers.field(sw, key, "$.sweep");
  };
  std::string parameter = o.parameter;
  if (parameter.empty()) {
    const json& p = io::NumberReader<S>::require(sw, "parameter", "$.sweep");
    if (!p.is_string()) throw io::ConfigError("$.sweep.parameter", "expected a string");
    parameter = p.get<std::string>();
  }
  const auto dot = parameter.find('.');
  const std::string who = parameter.substr(0, dot);
  const std::string field = dot == std::string::npos ? "" : parameter.substr(dot + 1);
  if (who != "alice" && who != "bob")
    throw io::ConfigError("$.sweep.parameter", "expected alice.<field> or bob.<field>");
  {
    ChannelTriple<S> probe;
    if (!triple_field(probe, field)) throw io::ConfigError("$.sweep.parameter", "unknown field '" + field + "'");
  }

  const S from = text_or(o.from, "from");
  const S to = text_or(o.to, "to");
  const S step = text_or(o.step, "step");
  if (!(step > S(0))) throw io::ConfigError("$.sweep.step", "step must be positive");
  if (to < from) throw io::ConfigError("$.sweep", "'to' must not be below 'from'");
  std::size_t points = 0;
  if constexpr (Numeric<S>::exact) {
    const Rational span = (to - from) / step;
    mpz_class whole;
    mpz_fdiv_q(whole.get_mpz_t(), span.get_num_mpz_t(), span.get_den_mpz_t());
    points = whole.get_ui() + 1;
  } else {
    points = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
  }

  bool any_invalid = false;
  std::optional<std::string> previous_class;
  json rows = json::array();
  if (o.format != "json")
    out << "index,parameter,value," << kSolveCsvHeader << ",valid,at_lemma4_boundary,class_change,error\n";
  for (std::size_t i = 0; i < points; ++i) {
    const S value = S(from + S(static_cast<long>(i)) * step);
    auto alice = base.alice;
    auto bob = base.bob;
    *triple_field(who == "alice" ? alice : bob, field) = value;

    SolveRow<S> row;
    std::string error;
    bool valid = true;
    try {
      const GameSpec<S> spec(base.packets, alice, bob, base.max_packets);
      row = summarize(solve_game(spec));
    } catch (const std::exception& e) {
      valid = false;
      any_invalid = true;
      error = e.what();
      row.game_class = "Invalid";
    }
    const bool boundary = bob.p_near == alice.p_far;
    const bool changed = valid && previous_class && *previous_class != row.game_class;
    if (valid) previous_class = row.game_class;

    if (o.format == "json") {
      json r = {{"index", i},          {"parameter", parameter}, {"value", format_number(value)},
                {"valid", valid},      {"class", row.game_class}, {"at_lemma4_boundary", boundary},
                {"class_change", changed}};
      if (valid) {
        r["game_value"] = row.value;
        r["method"] = row.method;
        r["pure_count"] = row.pure_count;
        r["pure"] = row.pure;
        r["p"] = row.p;
        r["q"] = row.q;
      } else {
        r["error"] = error;
      }
      rows.push_back(r);
    } else {
      out << i << ',' << parameter << ',' << format_number(value) << ','
          << (valid ? csv_row(row) : std::string("Invalid,,,,,,")) << ',' << valid << ',' << boundary << ','
          << changed << ',' << csv_field(error) << '\n';
    }
  }
  if (o.format == "json") out << rows.dump(2) << '\n';
  return any_invalid ? kDomainFailure : kOk;
}

// ---------------------------------------------------------------------------
// repro-paper-example

// Inputs and printed figures of the published three-strategy example.
struct PublishedExample {
  static constexpr const char* alice[3] = {"0.99", "0.94", "0.80"};
  static constexpr const char* bob[3] = {"0.90", "0.84", "0.70"};
  // Eve rows NearAlice, Middle, NearBob as (q1, q2, const).
  static constexpr const char* eve[3][3] = {{"0.4901", "0.203", "0.49"},
                                             {"0.178", "0.084", "0.7056"},
                                             {"-0.17", "-0.09", "0.81"}};
  // Legit columns AliceHeavy(0), Split, BobHeavy(0) as (p1, p2, const).
  static constexpr const char* legit[3][3] = {{"-0.3401", "-0.2364", "-0.64"},
                                               {"0.027", "-0.0504", "-0.72"},
                                               {"0.32", "0.1044", "-0.81"}};
  static constexpr const char* q[3] = {"0", "0.6", "0.4"};
  static constexpr const char* p[3] = {"0", "0.5814", "0.4186"};
};

template <Scalar S>
int cmd_repro(const Options& o, std::ostream& out) {
  using P = PublishedExample;
  auto triple = [](const char* const (&v)[3]) {
    return ChannelTriple<S>{parse_number<S>(v[0]), parse_number<S>(v[1]), parse_number<S>(v[2])};
  };
  const GameSpec<S> spec(2, triple(P::alice), triple(P::bob));
  const auto m = build_utility_matrix(spec);
  const auto result = solve_proposition_verification(m);

  struct CoefficientRow {
    std::string side, strategy;
    std::array<S, 3> recomputed, published;
    bool match = true;
  };
  std::vector<CoefficientRow> coefficients;
  const auto eve = reduced_eve_payoffs(m);
  const auto legit = reduced_legit_payoffs(m);
  for (std::size_t i = 0; i < 3; ++i) {
    CoefficientRow r{"eve", to_string(kEveStrategies[i]), eve[i], eve[i]};
    r.published = {parse_number<S>(P::eve[i][0]), parse_number<S>(P::eve[i][1]), parse_number<S>(P::eve[i][2])};
    coefficients.push_back(r);
  }
  for (std::size_t i = 0; i < 3; ++i) {
    CoefficientRow r{"legit", to_string(m.columns()[i]), legit[i], legit[i]};
    r.published = {parse_number<S>(P::legit[i][0]), parse_number<S>(P::legit[i][1]), parse_number<S>(P::legit[i][2])};
    coefficients.push_back(r);
  }
  for (auto& r : coefficients)
    for (std::size_t k = 0; k < 3; ++k)
      r.match = r.match && Numeric<S>::tolerant_sign(S(r.recomputed[k] - r.published[k])) == 0;

  const std::vector<S> published_q{parse_number<S>(P::q[0]), parse_number<S>(P::q[1]), parse_number<S>(P::q[2])};
  const std::vector<S> published_p{parse_number<S>(P::p[0]), parse_number<S>(P::p[1]), parse_number<S>(P::p[2])};
  const auto& eq = result.equilibrium;
  const S tol(Numeric<S>::exact ? 0 : 1e-9);
  const auto recomputed_check = verify_equilibrium(m, eq.p, eq.q, tol);
  const auto published_check = verify_equilibrium(m, published_p, published_q, tol);

  if (o.format == "csv") {
    out << "side,strategy,recomputed_1,recomputed_2,recomputed_const,published_1,published_2,published_const,match\n";
    for (const auto& r : coefficients) {
      out << r.side << ',' << r.strategy;
      for (const auto& x : r.recomputed) out << ',' << format_number(x);
      for (const auto& x : r.published) out << ',' << format_number(x);
      out << ',' << r.match << '\n';
    }
    return kOk;
  }

  auto arr = [](const std::array<S, 3>& a) { return io::numbers_json(std::vector<S>(a.begin(), a.end())); };
  json coeff = json::array();
  for (const auto& r : coefficients) {
    json diff = json::array();
    for (std::size_t k = 0; k < 3; ++k) diff.push_back(format_number(S(r.recomputed[k] - r.published[k])));
    coeff.push_back({{"side", r.side},
                     {"strategy", r.strategy},
                     {"recomputed", arr(r.recomputed)},
                     {"published", arr(r.published)},
                     {"difference", diff},
                     {"match", r.match}});
  }
  json trace = json::array();
  for (const auto& step : result.trace) {
    json t = {{"eve_support", step.eve_support}, {"legit_support", step.legit_support},
              {"outcome", to_string(step.outcome)}};
    if (!step.q.empty()) t["q"] = io::numbers_json(step.q);
    if (!step.p.empty()) t["p"] = io::numbers_json(step.p);
    trace.push_back(t);
  }
  auto check_json = [&](const char* source, const std::vector<S>& p, const VerificationReport<S>& c) {
    return json{{"source", source},
                {"p", io::numbers_json(p)},
                {"verified", c.ok},
                {"value", format_number(c.value)},
                {"eve_gain", format_number(c.eve_gain)},
                {"best_eve_row", to_string(kEveStrategies[c.best_eve_row])},
                {"legit_gain", format_number(c.legit_gain)},
                {"best_legit_column", to_string(m.columns()[c.best_legit_col])}};
  };
  json full_q = result.full_support_q ? io::numbers_json(*result.full_support_q) : json(nullptr);
  bool full_feasible = false;
  if (result.full_support_q)
    full_feasible = std::all_of(result.full_support_q->begin(), result.full_support_q->end(),
                                [](const S& x) { return x > S(0); });

  json j = {{"N", 2},
            {"mode", std::string(Numeric<S>::mode_name)},
            {"alice", io::triple_json(spec.alice())},
            {"bob", io::triple_json(spec.bob())},
            {"class", to_string(classify(spec))},
            {"matrix", io::to_json(m)},
            {"pure", json::array()},
            {"reduced_payoffs", coeff},
            {"full_support_q", full_q},
            {"full_support_feasible", full_feasible},
            {"trace", trace},
            {"q", io::numbers_json(eq.q)},
            {"q_matches_published", eq.q == published_q},
            {"p_candidates",
             json::array({check_json("recomputed", eq.p, recomputed_check),
                          check_json("published", published_p, published_check)})},
            {"value", format_number(eq.value)},
            {"maximin_value", format_number(game_value(m))}};
  for (const auto& e : find_pure_equilibria(m)) j["pure"].push_back(io::to_json(e, m));
  out << j.dump(2) << '\n';
  return kOk;
}

template <Scalar S>
int dispatch(const std::string& command, const Options& o, std::ostream& out) {
  if (command == "validate") return cmd_validate<S>(o, out);
  if (command == "solve") return cmd_solve<S>(o, out);
  if (command == "simulate") return cmd_simulate<S>(o, out);
  if (command == "sweep") return cmd_sweep<S>(o, out);
  return cmd_repro<S>(o, out);
}

void add_common(CLI::App* sub, Options& o, bool needs_config) {
  auto* cfg = sub->add_option("--config", o.config_path, "configuration JSON");
  if (needs_config) cfg->required();
  sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--mode", o.mode, "numeric mode")->check(CLI::IsMember({"rational", "float"}));
  sub->add_option("--seed", o.seed, "simulation seed");
  sub->add_option("--trials", o.trials, "simulation trials");
  sub->add_option("--out", o.out_path, "write output to this file instead of stdout");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Zero-sum secret-sharing game: validate channels, solve equilibria, simulate captures"};
  app.name("wssgame");
  app.require_subcommand(1, 1);

  auto* validate = app.add_subcommand("validate", "check channel admissibility");
  add_common(validate, o, true);
  auto* solve = app.add_subcommand("solve", "classify the game and compute equilibria");
  add_common(solve, o, true);
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo replay of the packet exchange");
  add_common(simulate, o, true);
  simulate->add_option("--legit", o.legit, "legit strategy label (e.g. Split) or comma-separated weights");
  simulate->add_option("--eve", o.eve, "Eve strategy label (e.g. NearBob) or comma-separated weights");
  simulate->add_option("--capture", o.capture, "probability or payload")
      ->check(CLI::IsMember({"probability", "payload"}));
  simulate->add_option("--payload-bits", o.payload_bits, "payload size in bits (1..64)");
  simulate->add_option("--partitions", o.partitions, "number of worker partitions");
  auto* sweep = app.add_subcommand("sweep", "re-solve over a grid of one channel probability");
  add_common(sweep, o, true);
  sweep->add_option("--param", o.parameter, "alice.p_near | alice.p_mid | ... | bob.p_far");
  sweep->add_option("--from", o.from, "first grid value");
  sweep->add_option("--to", o.to, "last grid value (inclusive)");
  sweep->add_option("--step", o.step, "grid step");
  auto* repro = app.add_subcommand("repro-paper-example", "recompute the published three-strategy example");
  add_common(repro, o, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  std::ostringstream buffer;
  int code = kOk;
  try {
    code = o.mode == "float" ? dispatch<double>(command, o, buffer) : dispatch<Rational>(command, o, buffer);
  } catch (const io::ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    code = kDomainFailure;
  }
  if (!o.out_path.empty()) {
    std::ofstream file(o.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << o.out_path << '\n';
      return kUsageError;
    }
    file << buffer.str();
  } else {
    out << buffer.str();
  }
  return code;
}

}  // namespace wss::cli
