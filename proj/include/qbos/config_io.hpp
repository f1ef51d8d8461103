// config_io.hpp
// Game configuration files and their JSON echo.
//
// Configuration files are INI-style (sections, key = value, ';' or '#'
// comments):
//
//   [protocol]
//   kind  = eisert            ; eisert | bare
//   gamma = pi/2              ; angle expression, eisert only
//
//   [initial_state]
//   name = FF                 ; FF FB BF BB PLUS IFF FFI
//   ; amplitudes = re im re im re im re im   (FF FB BF BB order, instead of name)
//
//   [payoffs]
//   values = 1 2  0 0  0 0  2 1   ; (alice bob) for FF FB BF BB
//
//   [classes]
//   alice = full3             ; full3 | phase2 | classical1
//   bob   = full3
//
//   [grid]                    ; shared by both players
//   theta = 16
//   alpha = 16
//   beta  = 16
//   inclusive = true
//
//   [grid_alice]              ; optional per-player overrides, same keys
//   [grid_bob]
//
//   [scan]
//   epsilon = 1e-6
//
// Every section and key is optional; defaults are the maximally entangled
// battle of the sexes from |FF> with unrestricted strategies.

#pragma once

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qbos/engine.hpp"
#include "qbos/equilibrium.hpp"
#include "qbos/strategy.hpp"

namespace qbos {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Everything a scan needs besides the engine configuration.
struct RunSpec {
  GameConfig game;
  GridPair grids{GridSpec::uniform(16), GridSpec::uniform(16)};
  double epsilon = kScanEpsilon;
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline double parse_double(std::string_view s) {
  const std::string t = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
    throw ConfigError("not a number: '" + t + "'");
  return v;
}

inline std::vector<double> parse_numbers(std::string_view s) {
  std::vector<double> out;
  std::string token;
  std::istringstream in{std::string(s)};
  while (in >> token) {
    for (auto& ch : token)
      if (ch == ',') ch = ' ';
    std::istringstream parts(token);
    std::string piece;
    while (parts >> piece) out.push_back(parse_double(piece));
  }
  return out;
}

}  // namespace detail

// Angle expressions: a plain number ("0.785"), or a multiple/fraction of pi
// ("pi", "-pi/2", "3pi/4", "3*pi/4", "0.5*pi").
inline double parse_angle(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += static_cast<char>(std::tolower(ch));
  if (s.empty()) throw ConfigError("empty angle");

  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string::npos) {
    const double v = detail::parse_double(s);
    if (!std::isfinite(v)) throw ConfigError("non-finite angle '" + std::string(text) + "'");
    return v;
  }

  std::string coef = s.substr(0, pi_pos);
  std::string rest = s.substr(pi_pos + 2);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  double factor = 1.0;
  if (coef == "-")
    factor = -1.0;
  else if (coef == "+" || coef.empty())
    factor = 1.0;
  else
    factor = detail::parse_double(coef);

  double divisor = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') throw ConfigError("bad angle expression '" + std::string(text) + "'");
    divisor = detail::parse_double(rest.substr(1));
    if (divisor == 0.0) throw ConfigError("division by zero in angle '" + std::string(text) + "'");
  }
  return factor * kPi / divisor;
}

// "theta[,alpha[,beta]]"; omitted angles are zero.
inline StrategyParams parse_strategy(std::string_view text, StrategyClass cls) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  if (parts.size() > 3) throw ConfigError("strategy takes at most three angles: '" + std::string(text) + "'");
  StrategyParams p;
  p.cls = cls;
  p.theta = parse_angle(parts[0]);
  if (parts.size() > 1) p.alpha = parse_angle(parts[1]);
  if (parts.size() > 2) p.beta = parse_angle(parts[2]);
  if ((!alpha_free(cls) && p.alpha != 0.0) || (!beta_free(cls) && p.beta != 0.0))
    throw ConfigError("strategy '" + std::string(text) + "' sets an angle that class " +
                      std::string(to_string(cls)) + " fixes to zero");
  return canonicalize(p);
}

namespace detail {

inline bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("not a boolean: '" + s + "'");
}

inline std::size_t parse_count(const std::string& s) {
  const double v = parse_double(s);
  if (v < 0 || v != std::floor(v)) throw ConfigError("not a step count: '" + s + "'");
  return static_cast<std::size_t>(v);
}

inline void apply_grid_section(const boost::property_tree::ptree& sec, GridSpec& g) {
  if (auto v = sec.get_optional<std::string>("theta")) g.theta_steps = parse_count(*v);
  if (auto v = sec.get_optional<std::string>("alpha")) g.alpha_steps = parse_count(*v);
  if (auto v = sec.get_optional<std::string>("beta")) g.beta_steps = parse_count(*v);
  if (auto v = sec.get_optional<std::string>("inclusive")) g.inclusive_endpoints = parse_bool(trim(*v));
}

inline std::string strip_comment(const std::string& v) {
  const auto pos = v.find_first_of(";#");
  return trim(pos == std::string::npos ? v : v.substr(0, pos));
}

// ini_parser keeps inline comments as part of the value.
inline void strip_comments(boost::property_tree::ptree& tree) {
  for (auto& [key, child] : tree) {
    if (!child.data().empty()) child.put_value(strip_comment(child.data()));
    strip_comments(child);
  }
}

}  // namespace detail

inline RunSpec parse_run_spec_ini(std::istream& in) {
  namespace pt = boost::property_tree;
  static const std::vector<std::string> known = {"protocol", "initial_state", "payoffs",  "classes",
                                                 "grid",     "grid_alice",    "grid_bob", "scan"};
  // read_ini drops empty sections, so headers are checked on the raw text.
  std::ostringstream raw;
  raw << in.rdbuf();
  std::istringstream lines(raw.str());
  for (std::string line; std::getline(lines, line);) {
    const std::string t = detail::trim(line);
    if (t.empty() || t.front() != '[') continue;
    const auto close = t.find(']');
    const std::string name = detail::trim(t.substr(1, close == std::string::npos ? std::string::npos : close - 1));
    if (close != std::string::npos && std::find(known.begin(), known.end(), name) == known.end())
      throw ConfigError("config: unknown section [" + name + "]");
  }

  pt::ptree tree;
  try {
    std::istringstream text(raw.str());
    pt::read_ini(text, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  detail::strip_comments(tree);

  RunSpec spec;
  GameConfig& g = spec.game;

  if (auto sec = tree.get_child_optional("protocol")) {
    const std::string kind = sec->get<std::string>("kind", "eisert");
    if (kind == "eisert") {
      const double gamma = parse_angle(sec->get<std::string>("gamma", "pi/2"));
      try {
        g.protocol = Protocol::eisert(gamma);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    } else if (kind == "bare") {
      g.protocol = Protocol::bare();
    } else {
      throw ConfigError("config: protocol kind must be eisert or bare, got '" + kind + "'");
    }
  }

  if (auto sec = tree.get_child_optional("initial_state")) {
    const auto name = sec->get_optional<std::string>("name");
    const auto amps = sec->get_optional<std::string>("amplitudes");
    if (name && amps) throw ConfigError("config: initial_state takes either name or amplitudes, not both");
    if (name) {
      const auto named = parse_named_state(*name);
      if (!named) throw ConfigError("config: unknown initial state '" + *name + "'");
      g.initial_state = named_state(*named);
    } else if (amps) {
      const auto v = detail::parse_numbers(*amps);
      if (v.size() != 8) throw ConfigError("config: amplitudes needs 8 numbers (re im for FF FB BF BB)");
      for (std::size_t k = 0; k < 4; ++k) g.initial_state[k] = Complex{v[2 * k], v[2 * k + 1]};
    }
  }

  if (auto sec = tree.get_child_optional("payoffs")) {
    if (auto vals = sec->get_optional<std::string>("values")) {
      const auto v = detail::parse_numbers(*vals);
      if (v.size() != 8) throw ConfigError("config: payoff values needs 8 numbers (alice bob for FF FB BF BB)");
      for (std::size_t k = 0; k < 4; ++k) g.payoffs.entries[k] = Payoffs{v[2 * k], v[2 * k + 1]};
    }
  }

  try {
    if (auto sec = tree.get_child_optional("classes")) {
      g.alice_class = parse_strategy_class(sec->get<std::string>("alice", "full3"));
      g.bob_class = parse_strategy_class(sec->get<std::string>("bob", "full3"));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  if (auto sec = tree.get_child_optional("grid")) {
    detail::apply_grid_section(*sec, spec.grids.alice);
    detail::apply_grid_section(*sec, spec.grids.bob);
  }
  if (auto sec = tree.get_child_optional("grid_alice")) detail::apply_grid_section(*sec, spec.grids.alice);
  if (auto sec = tree.get_child_optional("grid_bob")) detail::apply_grid_section(*sec, spec.grids.bob);

  if (auto sec = tree.get_child_optional("scan"))
    if (auto eps = sec->get_optional<std::string>("epsilon")) spec.epsilon = detail::parse_double(*eps);
  if (!(spec.epsilon >= 0.0) || !std::isfinite(spec.epsilon)) throw ConfigError("config: epsilon must be >= 0");

  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return spec;
}

// ---------------------------------------------------------------------------
// JSON echo

inline nlohmann::json to_json(const StrategyParams& p) {
  return {{"theta", p.theta}, {"alpha", p.alpha}, {"beta", p.beta}, {"class", to_string(p.cls)}};
}

inline StrategyParams strategy_from_json(const nlohmann::json& j) {
  return StrategyParams{j.at("theta").get<double>(), j.at("alpha").get<double>(), j.at("beta").get<double>(),
                        parse_strategy_class(j.at("class").get<std::string>())};
}

inline nlohmann::json to_json(const GridSpec& g) {
  return {{"theta_steps", g.theta_steps},
          {"alpha_steps", g.alpha_steps},
          {"beta_steps", g.beta_steps},
          {"inclusive_endpoints", g.inclusive_endpoints}};
}

inline GridSpec grid_from_json(const nlohmann::json& j) {
  return GridSpec{j.at("theta_steps").get<std::size_t>(), j.at("alpha_steps").get<std::size_t>(),
                  j.at("beta_steps").get<std::size_t>(), j.at("inclusive_endpoints").get<bool>()};
}

inline nlohmann::json to_json(const GridPair& g) { return {{"alice", to_json(g.alice)}, {"bob", to_json(g.bob)}}; }

inline GridPair grids_from_json(const nlohmann::json& j) {
  return GridPair{grid_from_json(j.at("alice")), grid_from_json(j.at("bob"))};
}

inline nlohmann::json to_json(const GameConfig& g) {
  nlohmann::json protocol = {{"kind", g.protocol.kind == Protocol::Kind::Eisert ? "eisert" : "bare"}};
  if (g.protocol.kind == Protocol::Kind::Eisert) protocol["gamma"] = g.protocol.gamma;
  nlohmann::json state = nlohmann::json::array();
  for (std::size_t k = 0; k < 4; ++k) state.push_back({g.initial_state[k].real(), g.initial_state[k].imag()});
  nlohmann::json table = nlohmann::json::array();
  for (const auto& e : g.payoffs.entries) table.push_back({e.alice, e.bob});
  return {{"protocol", protocol},
          {"initial_state", state},
          {"payoffs", table},
          {"alice_class", to_string(g.alice_class)},
          {"bob_class", to_string(g.bob_class)}};
}

inline GameConfig game_config_from_json(const nlohmann::json& j) {
  GameConfig g;
  const auto& protocol = j.at("protocol");
  const auto kind = protocol.at("kind").get<std::string>();
  if (kind == "eisert")
    g.protocol = Protocol::eisert(protocol.at("gamma").get<double>());
  else if (kind == "bare")
    g.protocol = Protocol::bare();
  else
    throw ConfigError("config_echo: bad protocol kind '" + kind + "'");
  const auto& state = j.at("initial_state");
  const auto& table = j.at("payoffs");
  if (state.size() != 4 || table.size() != 4) throw ConfigError("config_echo: expected four basis entries");
  for (std::size_t k = 0; k < 4; ++k) {
    g.initial_state[k] = Complex{state[k].at(0).get<double>(), state[k].at(1).get<double>()};
    g.payoffs.entries[k] = Payoffs{table[k].at(0).get<double>(), table[k].at(1).get<double>()};
  }
  g.alice_class = parse_strategy_class(j.at("alice_class").get<std::string>());
  g.bob_class = parse_strategy_class(j.at("bob_class").get<std::string>());
  g.validate();
  return g;
}

// Reads either an INI configuration or a JSON run report (its config_echo,
// grid_echo and epsilon), chosen by the .json extension.
inline RunSpec load_run_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
      RunSpec spec;
      spec.game = game_config_from_json(j.at("config_echo"));
      spec.grids = grids_from_json(j.at("grid_echo"));
      spec.epsilon = j.at("epsilon").get<double>();
      return spec;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("report '" + path + "': " + e.what());
    }
  }
  return parse_run_spec_ini(in);
}

}  // namespace qbos
