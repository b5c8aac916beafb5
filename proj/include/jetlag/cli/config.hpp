#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "jetlag/error.hpp"
#include "jetlag/geometry/lagrange_space.hpp"

namespace jetlag {

class ConfigError : public Error {
 public:
  ConfigError(int line, const std::string& what)
      : Error(line > 0 ? "config line " + std::to_string(line) + ": " + what : "config: " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Problem definition read from a config file or a built-in name.
struct ProblemConfig {
  std::string name;
  int n = 0;
  Family family = Family::General;
  std::string lagrangian;
  std::string h11 = "1";
  std::vector<std::vector<std::string>> g;  // n x n, "" = unset
  std::vector<std::string> U;               // empty or n entries
  std::string F;
  std::vector<std::pair<double, double>> ranges;  // t, x1..xn, y1..yn
  std::uint64_t seed = 0;
  double K = 1.0;
  std::map<std::string, double> tolerances;

  LagrangeSpace build(int max_order = max_derivative_order_from_env()) const {
    if (family == Family::General) return LagrangeSpace(parse(lagrangian, n, max_order), parse(h11, n, max_order));
    auto gm = g;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        auto& a = gm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        const auto& b = g[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        if (a.empty()) a = b;
      }
    return LagrangeSpace::from_family(family, n, h11, gm, U, F, max_order);
  }
};

namespace detail {

using ConfigValue = std::variant<std::string, double, std::vector<double>>;

struct ConfigEntry {
  std::string section;
  std::string key;
  ConfigValue value;
  int line = 0;
};

class ConfigLexer {
 public:
  ConfigLexer(std::string_view line, int lineno) : s_(line), line_(lineno) {}

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size() || s_[pos_] == '#';
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(s_.substr(start, pos_ - start));
  }
  std::string string_literal() {
    expect('"');
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      char c = s_[pos_++];
      if (c == '\\') {
        if (pos_ >= s_.size()) fail("unterminated escape");
        c = s_[pos_++];
        if (c != '"' && c != '\\') fail("unsupported escape");
      }
      out.push_back(c);
    }
    if (pos_ >= s_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }
  double number() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
                                s_[pos_] == '-' || s_[pos_] == '+'))
      ++pos_;
    const std::string tok(s_.substr(start, pos_ - start));
    if (tok.empty()) fail("expected a value");
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      fail("invalid number '" + tok + "'");
    }
    if (used != tok.size()) fail("invalid number '" + tok + "'");
    return v;
  }
  ConfigValue value() {
    const char c = peek();
    if (c == '"') return string_literal();
    if (c == '[') {
      ++pos_;
      std::vector<double> out;
      if (peek() != ']') {
        out.push_back(number());
        while (peek() == ',') {
          ++pos_;
          out.push_back(number());
        }
      }
      expect(']');
      return out;
    }
    return number();
  }
  [[noreturn]] void fail(const std::string& what) const { throw ConfigError(line_, what); }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
};

inline std::vector<ConfigEntry> parse_entries(std::string_view text) {
  std::vector<ConfigEntry> out;
  std::string section;
  int lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    ++lineno;
    ConfigLexer lx(text.substr(start, end - start), lineno);
    if (!lx.at_end()) {
      if (lx.peek() == '[') {
        lx.expect('[');
        section = lx.identifier();
        lx.expect(']');
      } else {
        ConfigEntry e;
        e.section = section;
        e.key = lx.identifier();
        e.line = lineno;
        lx.expect('=');
        e.value = lx.value();
        out.push_back(std::move(e));
      }
      if (!lx.at_end()) lx.fail("unexpected trailing characters");
    }
    start = end + 1;
  }
  return out;
}

inline const std::string& as_string(const ConfigEntry& e) {
  if (auto* s = std::get_if<std::string>(&e.value)) return *s;
  throw ConfigError(e.line, "'" + e.key + "' must be a quoted string");
}

inline double as_number(const ConfigEntry& e) {
  if (auto* d = std::get_if<double>(&e.value)) return *d;
  throw ConfigError(e.line, "'" + e.key + "' must be a number");
}

inline std::pair<double, double> as_range(const ConfigEntry& e) {
  auto* v = std::get_if<std::vector<double>>(&e.value);
  if (!v || v->size() != 2) throw ConfigError(e.line, "'" + e.key + "' must be a range [lo, hi]");
  if (!((*v)[0] <= (*v)[1])) throw ConfigError(e.line, "range '" + e.key + "' is empty");
  return {(*v)[0], (*v)[1]};
}

// "x3" -> 3 for prefix "x"; -1 otherwise.
inline int indexed(const std::string& key, std::string_view prefix) {
  if (key.size() <= prefix.size() || key.compare(0, prefix.size(), prefix) != 0) return -1;
  int v = 0;
  for (std::size_t i = prefix.size(); i < key.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(key[i]))) return -1;
    v = v * 10 + (key[i] - '0');
  }
  return v;
}

}  // namespace detail

/// Parses the config text. Grammar (one item per line, `#` starts a comment):
///   [section]
///   key = "string" | number | [number, number]
/// Top level: name, n, family (general|L1|L2|L3), lagrangian, h11, seed, K.
/// [metric] gIJ; [potential] U1..Un, F; [ranges] t, x1.., y1..; [tolerances] suite = value.
inline ProblemConfig parse_config(std::string_view text) {
  const auto entries = detail::parse_entries(text);
  ProblemConfig c;
  bool have_n = false, have_family = false;
  for (const auto& e : entries)
    if (e.section.empty() && e.key == "n") {
      const double v = detail::as_number(e);
      if (v < 1 || v > 8 || v != static_cast<int>(v)) throw ConfigError(e.line, "n must be an integer in 1..8");
      c.n = static_cast<int>(v);
      have_n = true;
    }
  if (!have_n) throw ConfigError(0, "missing 'n'");
  const int n = c.n;
  c.g.assign(static_cast<std::size_t>(n), std::vector<std::string>(static_cast<std::size_t>(n)));
  c.ranges.assign(static_cast<std::size_t>(2 * n + 1), {-1.0, 1.0});
  c.ranges[0] = {0.0, 1.0};
  std::vector<std::string> U(static_cast<std::size_t>(n));
  bool have_U = false;
  for (const auto& e : entries) {
    if (e.section.empty()) {
      if (e.key == "n") continue;
      if (e.key == "name") c.name = detail::as_string(e);
      else if (e.key == "lagrangian") c.lagrangian = detail::as_string(e);
      else if (e.key == "h11") c.h11 = detail::as_string(e);
      else if (e.key == "seed") c.seed = static_cast<std::uint64_t>(detail::as_number(e));
      else if (e.key == "K") c.K = detail::as_number(e);
      else if (e.key == "family") {
        const auto& f = detail::as_string(e);
        have_family = true;
        if (f == "general") c.family = Family::General;
        else if (f == "L1") c.family = Family::L1;
        else if (f == "L2") c.family = Family::L2;
        else if (f == "L3") c.family = Family::L3;
        else throw ConfigError(e.line, "unknown family '" + f + "'");
      } else
        throw ConfigError(e.line, "unknown key '" + e.key + "'");
    } else if (e.section == "metric") {
      const int ij = detail::indexed(e.key, "g");
      const int i = ij / 10, j = ij % 10;
      if (ij < 11 || i < 1 || j < 1 || i > n || j > n) throw ConfigError(e.line, "unknown metric key '" + e.key + "'");
      c.g[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = detail::as_string(e);
    } else if (e.section == "potential") {
      if (e.key == "F") {
        c.F = detail::as_string(e);
        continue;
      }
      const int i = detail::indexed(e.key, "U");
      if (i < 1 || i > n) throw ConfigError(e.line, "unknown potential key '" + e.key + "'");
      U[static_cast<std::size_t>(i - 1)] = detail::as_string(e);
      have_U = true;
    } else if (e.section == "ranges") {
      int var = -1;
      if (e.key == "t") var = 0;
      else if (int i = detail::indexed(e.key, "x"); i >= 1 && i <= n) var = i;
      else if (int k = detail::indexed(e.key, "y"); k >= 1 && k <= n) var = n + k;
      if (var < 0) throw ConfigError(e.line, "unknown range '" + e.key + "'");
      c.ranges[static_cast<std::size_t>(var)] = detail::as_range(e);
    } else if (e.section == "tolerances") {
      const double v = detail::as_number(e);
      if (!(v > 0.0)) throw ConfigError(e.line, "tolerance must be positive");
      c.tolerances[e.key] = v;
    } else {
      throw ConfigError(e.line, "unknown section '" + e.section + "'");
    }
  }
  if (have_U) c.U = U;
  if (!have_family) c.family = c.lagrangian.empty() ? Family::L1 : Family::General;
  if (c.family == Family::General) {
    if (c.lagrangian.empty()) throw ConfigError(0, "family 'general' needs 'lagrangian'");
  } else {
    if (!c.lagrangian.empty()) throw ConfigError(0, "'lagrangian' is only allowed with family 'general'");
    bool any = false;
    for (const auto& row : c.g)
      for (const auto& s : row) any = any || !s.empty();
    if (!any) throw ConfigError(0, "family " + std::string(family_name(c.family)) + " needs a [metric] section");
  }
  return c;
}

inline const std::map<std::string, std::string>& builtin_configs() {
  static const std::map<std::string, std::string> configs{
      {"flat", R"cfg(name = "flat"
n = 2
family = "general"
lagrangian = "y1^2 + y2^2"
h11 = "1"
seed = 1
)cfg"},
      {"sphere_l1", R"cfg(name = "sphere_l1"
n = 2
family = "L1"
h11 = "1"
seed = 2

[metric]
g11 = "1"
g22 = "sin(x1)^2"

[ranges]
x1 = [0.5, 2.6]
x2 = [-3.0, 3.0]
)cfg"},
      {"electrodynamics_l2", R"cfg(name = "electrodynamics_l2"
n = 2
family = "L2"
h11 = "1"
seed = 3

[metric]
g11 = "1"
g22 = "sin(x1)^2"

[potential]
U1 = "0"
U2 = "cos(x1)"
F = "0.3*x1"

[ranges]
x1 = [0.5, 2.6]
x2 = [-3.0, 3.0]
)cfg"},
      {"nonautonomous_l3", R"cfg(name = "nonautonomous_l3"
n = 2
family = "L3"
h11 = "exp(0.2*t)"
seed = 4

[metric]
g11 = "1 + 0.1*t"
g22 = "(1 + 0.1*t)*sin(x1)^2"

[potential]
U1 = "t*sin(x2)"
U2 = "t*x1"
F = "0.1*t*x1"

[ranges]
x1 = [0.5, 2.6]
x2 = [-3.0, 3.0]
)cfg"},
      {"exp_time", R"cfg(name = "exp_time"
n = 2
family = "L1"
h11 = "exp(2*t)"
seed = 5

[metric]
g11 = "1"
g22 = "1"
)cfg"},
  };
  return configs;
}

/// Reads a config file, or a built-in config when `source` names one and no
/// such file exists.
inline ProblemConfig load_config(const std::string& source) {
  std::ifstream in(source);
  if (!in) {
    const auto& b = builtin_configs();
    if (auto it = b.find(source); it != b.end()) return parse_config(it->second);
    throw ConfigError(0, "cannot open '" + source + "'");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace jetlag
