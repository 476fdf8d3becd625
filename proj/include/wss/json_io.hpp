#pragma once

// JSON descriptors in, JSON/CSV reports out. All probabilities cross this
// boundary as decimal strings so exact mode stays lossless; bare JSON
// numbers are accepted but mark the configuration as inexact.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wss/analysis.hpp"
#include "wss/channel.hpp"
#include "wss/game.hpp"
#include "wss/numeric.hpp"
#include "wss/sim.hpp"
#include "wss/solver.hpp"

namespace wss::io {

using nlohmann::json;

/// Malformed or structurally wrong configuration; `path` points at the field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

inline json parse_document(const std::string& text, const std::string& source = "config") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports a byte offset; turn it into line:column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(source + ":" + std::to_string(line) + ":" + std::to_string(col), "malformed JSON");
  }
}

/// Reads numbers from a JSON value, tracking whether any were inexact.
template <Scalar S>
class NumberReader {
 public:
  S read(const json& v, const std::string& path) {
    if (v.is_string()) {
      try {
        return parse_number<S>(v.get<std::string>());
      } catch (const ArgumentError& e) {
        throw ConfigError(path, e.what());
      }
    }
    if (v.is_number_integer()) return S(static_cast<long>(v.get<std::int64_t>()));
    if (v.is_number_float()) {
      inexact_ = true;
      return Numeric<S>::from_double(v.get<double>());
    }
    throw ConfigError(path, "expected a decimal string");
  }

  S field(const json& obj, const std::string& key, const std::string& path) {
    return read(require(obj, key, path), path + "." + key);
  }

  bool inexact() const { return inexact_; }

  static const json& require(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw ConfigError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(path + "." + key, "missing field");
    return *it;
  }

 private:
  bool inexact_ = false;
};

template <Scalar S>
ChannelModel<S> parse_channel_model(const json& d, const std::string& path, NumberReader<S>& numbers,
                                    const std::optional<GeometryParams<S>>& geometry) {
  const json& fam = NumberReader<S>::require(d, "family", path);
  if (!fam.is_string()) throw ConfigError(path + ".family", "expected a string");
  const auto family = fam.get<std::string>();
  if (family == "explicit-triple") {
    ChannelTriple<S> t{numbers.field(d, "p_near", path), numbers.field(d, "p_mid", path),
                       numbers.field(d, "p_far", path)};
    return ExplicitTriple<S>{t, geometry};
  }
  if (family == "concave-quadratic") {
    if (!geometry) throw ConfigError(path, "concave-quadratic needs top-level geometry {D, epsilon}");
    S max_d = d.contains("max_distance") ? numbers.field(d, "max_distance", path) : geometry->separation();
    return ConcaveQuadratic<S>(numbers.field(d, "a", path), numbers.field(d, "b", path), max_d);
  }
  if (family == "table-interpolated") {
    const json& pts = NumberReader<S>::require(d, "points", path);
    if (!pts.is_array()) throw ConfigError(path + ".points", "expected an array of [distance, probability]");
    std::vector<std::pair<S, S>> knots;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto p = path + ".points[" + std::to_string(i) + "]";
      if (!pts[i].is_array() || pts[i].size() != 2) throw ConfigError(p, "expected [distance, probability]");
      knots.emplace_back(numbers.read(pts[i][0], p + "[0]"), numbers.read(pts[i][1], p + "[1]"));
    }
    try {
      return TableInterpolated<S>(std::move(knots));
    } catch (const ArgumentError& e) {
      throw ConfigError(path, e.what());
    }
  }
  throw ConfigError(path + ".family", "unknown family '" + family + "'");
}

template <Scalar S>
struct LoadedGame {
  unsigned packets = 0;
  ChannelTriple<S> alice;
  ChannelTriple<S> bob;
  unsigned max_packets = kDefaultMaxPackets;
  bool inexact = false;

  GameSpec<S> spec() const { return GameSpec<S>(packets, alice, bob, max_packets); }
};

/// Channels are sampled into raw triples without validation so that the
/// caller decides between reporting and rejecting admissibility failures.
template <Scalar S>
LoadedGame<S> load_game(const json& doc) {
  NumberReader<S> numbers;
  if (!doc.is_object()) throw ConfigError("$", "expected an object");
  LoadedGame<S> g;
  const json& n = NumberReader<S>::require(doc, "N", "$");
  if (!n.is_number_unsigned()) throw ConfigError("$.N", "expected a positive integer");
  g.packets = n.get<unsigned>();
  if (doc.contains("max_packets")) {
    if (!doc["max_packets"].is_number_unsigned()) throw ConfigError("$.max_packets", "expected a positive integer");
    g.max_packets = doc["max_packets"].get<unsigned>();
  }

  std::optional<GeometryParams<S>> geometry;
  if (doc.contains("geometry")) {
    const auto& geo = doc["geometry"];
    S sep = numbers.field(geo, "D", "$.geometry");
    S eps = numbers.field(geo, "epsilon", "$.geometry");
    try {
      geometry.emplace(sep, eps);
    } catch (const ArgumentError& e) {
      throw ConfigError("$.geometry", e.what());
    }
  }

  for (auto [key, target] : {std::pair{"alice", &g.alice}, std::pair{"bob", &g.bob}}) {
    const std::string path = std::string("$.") + key;
    auto model = parse_channel_model(NumberReader<S>::require(doc, key, "$"), path, numbers, geometry);
    if (const auto* e = std::get_if<ExplicitTriple<S>>(&model)) {
      *target = e->triple;
    } else {
      *target = {success_probability(model, geometry->near()), success_probability(model, geometry->mid()),
                 success_probability(model, geometry->far())};
    }
  }
  g.inexact = numbers.inexact();
  return g;
}

// ---------------------------------------------------------------------------
// Serialization

template <Scalar S>
json numbers_json(const std::vector<S>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(format_number(x));
  return out;
}

template <Scalar S>
json triple_json(const ChannelTriple<S>& t) {
  return {{"family", "explicit-triple"},
          {"p_near", format_number(t.p_near)},
          {"p_mid", format_number(t.p_mid)},
          {"p_far", format_number(t.p_far)}};
}

inline json to_json(const ValidationReport& r) {
  json senders = json::array();
  for (const auto& s : r.senders) {
    json checks = json::array();
    for (const auto& c : s.checks)
      checks.push_back({{"condition", condition_label(c.condition)},
                        {"holds", c.holds},
                        {"ambiguous", c.ambiguous},
                        {"inequality", c.detail}});
    senders.push_back({{"sender", s.sender}, {"ok", s.ok()}, {"checks", checks}});
  }
  return {{"ok", r.ok()}, {"senders", senders}, {"notes", r.notes}};
}

template <Scalar S>
json to_json(const UtilityMatrix<S>& m) {
  json rows = json::array();
  for (auto e : kEveStrategies) rows.push_back(to_string(e));
  json cols = json::array();
  for (const auto& c : m.columns()) cols.push_back(to_string(c));
  json entries = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(format_number(m.at(r, c)));
    entries.push_back(row);
  }
  return {{"rows", rows}, {"cols", cols}, {"entries", entries}};
}

template <Scalar S>
std::string matrix_csv(const UtilityMatrix<S>& m) {
  std::ostringstream out;
  out << "eve";
  for (const auto& c : m.columns()) out << ',' << to_string(c);
  out << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << to_string(kEveStrategies[r]);
    for (std::size_t c = 0; c < m.cols(); ++c) out << ',' << format_number(m.at(r, c));
    out << '\n';
  }
  return out.str();
}

template <Scalar S>
json to_json(const Equilibrium<S>& e, const UtilityMatrix<S>& m) {
  json out = {{"kind", e.is_pure() ? "pure" : "mixed"},
              {"p", numbers_json(e.p)},
              {"q", numbers_json(e.q)},
              {"value", format_number(e.value)},
              {"degenerate", e.degenerate},
              {"verified", e.verified}};
  if (e.is_pure()) {
    out["eve"] = to_string(kEveStrategies[e.eve_row]);
    out["legit"] = to_string(m.columns()[e.legit_col]);
  }
  return out;
}

template <Scalar S>
json to_json(const InequalityReport<S>& r) {
  return {{"lemma", r.lemma},
          {"holds", r.holds},
          {"lhs", format_number(r.lhs)},
          {"rhs", format_number(r.rhs)},
          {"margin", format_number(r.margin)}};
}

inline std::string format_double(double v) { return Numeric<double>::format(v); }

inline json to_json(const SimulationReport& r) {
  return {{"trials", r.trials},
          {"captures", r.captures},
          {"empirical_pe", format_double(r.empirical_pe)},
          {"std_error", format_double(r.std_error)},
          {"analytic_pe", r.analytic_pe_exact},
          {"z_score", r.z_score ? json(format_double(*r.z_score)) : json(nullptr)},
          {"seed", r.seed}};
}

/// FNV-1a over the canonical triple strings and N; identifies a spec in sweeps.
template <Scalar S>
std::string spec_hash(const GameSpec<S>& spec) {
  std::string canon = std::to_string(spec.packets());
  for (const auto* t : {&spec.alice(), &spec.bob()})
    canon += "|" + format_number(t->p_near) + "," + format_number(t->p_mid) + "," + format_number(t->p_far);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canon) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline const char* kSimulationCsvHeader = "spec_hash,legit,eve,trials,empirical_pe,analytic_pe,z_score,seed";

inline std::string simulation_csv_row(const std::string& hash, const std::string& legit, const std::string& eve,
                                      const SimulationReport& r) {
  std::ostringstream out;
  out << hash << ',' << legit << ',' << eve << ',' << r.trials << ',' << format_double(r.empirical_pe) << ','
      << r.analytic_pe_exact << ',' << (r.z_score ? format_double(*r.z_score) : std::string()) << ',' << r.seed;
  return out.str();
}

}  // namespace wss::io
