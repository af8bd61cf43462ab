#pragma once

// Flat `key = value` run configuration.
//
//   model = bolza                 # or schottky-orientable, schottky-nonorientable, inline
//   tmax = 8
//   max_word_len = 8
//   threads = 1
//   lambda_grid = (0,5) (1,5) (0,10)
//   surfaces = g2 g3 g4 N3 N4 N5 N6
//   debug.ignore_orientation_twist = false
//   inline.generators = ab
//   inline.a = 1+1*sqrt2  0  0  -1+1*sqrt2
//   inline.relator = aBAb          # omit for a free group
//   inline.lambda_min = 1.5
//   inline.entropy = 0.5
//
// Matrix entries are exact numbers p + q*sqrt2 with rational p, q, converted
// to double only after parsing.

#include <boost/rational.hpp>

#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ruelle/errors.hpp"
#include "ruelle/group_model.hpp"
#include "ruelle/twisted_topology.hpp"

namespace ruelle {

using BigRational = boost::rational<std::int64_t>;

/// p + q sqrt2 with rational p, q.
struct QuadraticSurd {
  BigRational p{0};
  BigRational q{0};

  double value() const {
    return boost::rational_cast<double>(p) + boost::rational_cast<double>(q) * std::numbers::sqrt2;
  }
  friend bool operator==(const QuadraticSurd&, const QuadraticSurd&) = default;
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

/// "3", "-7/4", "1.25" -> exact rational.
inline BigRational parse_rational(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError("empty number");
  const auto slash = t.find('/');
  try {
    if (slash != std::string::npos) {
      std::size_t used = 0;
      const long long num = std::stoll(t.substr(0, slash), &used);
      if (used != slash) throw ConfigError("bad rational '" + t + "'");
      const std::string den_text = t.substr(slash + 1);
      const long long den = std::stoll(den_text, &used);
      if (used != den_text.size() || den == 0) throw ConfigError("bad rational '" + t + "'");
      return BigRational(num, den);
    }
    std::size_t i = 0;
    bool neg = false;
    if (t[i] == '+' || t[i] == '-') neg = t[i++] == '-';
    std::int64_t num = 0, den = 1;
    bool digits = false, dot = false;
    for (; i < t.size(); ++i) {
      const char c = t[i];
      if (c == '.' && !dot) {
        dot = true;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        if (num > (INT64_MAX - 9) / 10 || den > INT64_MAX / 10) throw ConfigError("number too long: '" + t + "'");
        num = num * 10 + (c - '0');
        if (dot) den *= 10;
        digits = true;
      } else {
        throw ConfigError("bad number '" + t + "'");
      }
    }
    if (!digits) throw ConfigError("bad number '" + t + "'");
    return BigRational(neg ? -num : num, den);
  } catch (const std::logic_error&) {
    throw ConfigError("bad number '" + t + "'");
  }
}

}  // namespace detail

/// Parses sums of terms `r`, `r*sqrt2`, `sqrt2`, e.g. "1+1*sqrt2",
/// "-3/2 - sqrt2", "0.5*sqrt2".
inline QuadraticSurd parse_surd(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw ConfigError("empty matrix entry");
  QuadraticSurd out;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw ConfigError("bad matrix entry '" + std::string(text) + "'");
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string term = s.substr(i, j - i);
    if (term.empty()) throw ConfigError("bad matrix entry '" + std::string(text) + "'");
    bool surd = false;
    const std::string tag = "sqrt2";
    if (term.size() >= tag.size() && term.compare(term.size() - tag.size(), tag.size(), tag) == 0) {
      surd = true;
      term.resize(term.size() - tag.size());
      if (!term.empty()) {
        if (term.back() != '*') throw ConfigError("bad matrix entry '" + std::string(text) + "'");
        term.pop_back();
      }
    }
    const BigRational r = term.empty() ? BigRational(1) : detail::parse_rational(term);
    (surd ? out.q : out.p) += BigRational(sign) * r;
    i = j;
  }
  return out;
}

struct InlineModelSpec {
  std::string name = "inline";
  std::string generators;  // one lowercase letter per generator
  std::map<char, std::vector<QuadraticSurd>> matrices;
  std::optional<std::string> relator;
  std::optional<double> lambda_min;
  std::optional<int> default_max_word_len;
  double entropy = 1.0;
};

struct RunConfig {
  std::optional<std::string> model;  // built-in name
  std::optional<InlineModelSpec> inline_model;
  double tmax = 8.0;
  std::optional<int> max_word_len;
  unsigned threads = 1;
  std::vector<std::complex<double>> lambda_grid{{0.0, 5.0}, {1.0, 5.0}, {0.0, 10.0}};
  std::complex<double> convergence_lambda{0.0, 10.0};
  std::vector<double> convergence_tmax{4.0, 6.0, 8.0};
  std::vector<std::string> surfaces{"g2", "g3", "g4", "N3", "N4", "N5", "N6"};
  bool ignore_orientation_twist = false;
  std::size_t sign_fuzz_samples = 10000;
  std::uint64_t sign_fuzz_seed = 1;
  double per_orbit_tolerance = 1e-12;
  double sign_tolerance = 1e-10;
  std::optional<std::string> out;
};

namespace detail {

inline double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(d)) throw ConfigError("");
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
  }
}

inline long long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long n = std::stoll(v, &used);
    if (used != v.size()) throw ConfigError("");
    return n;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" + v + "'");
  }
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config key '" + key + "': expected true or false, got '" + v + "'");
}

inline std::vector<std::string> split_ws(const std::string& v) {
  std::istringstream is(v);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

/// "(0,5) (1, 5)" -> {0+5i, 1+5i}.
inline std::vector<std::complex<double>> parse_lambda_list(const std::string& key, const std::string& v) {
  std::vector<std::complex<double>> out;
  std::size_t i = 0;
  while (true) {
    while (i < v.size() && (std::isspace(static_cast<unsigned char>(v[i])) || v[i] == ',' || v[i] == ';')) ++i;
    if (i == v.size()) break;
    if (v[i] != '(') throw ConfigError("config key '" + key + "': expected (re,im) pairs");
    const auto close = v.find(')', i);
    if (close == std::string::npos) throw ConfigError("config key '" + key + "': unbalanced parenthesis");
    const std::string inner = v.substr(i + 1, close - i - 1);
    const auto comma = inner.find(',');
    if (comma == std::string::npos) throw ConfigError("config key '" + key + "': expected (re,im)");
    out.emplace_back(parse_double(key, trim(inner.substr(0, comma))),
                     parse_double(key, trim(inner.substr(comma + 1))));
    i = close + 1;
  }
  return out;
}

}  // namespace detail

inline RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = detail::trim(t.substr(0, eq));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    if (kv.count(key)) throw ConfigError("config key '" + key + "' given twice");
    kv[key] = detail::trim(t.substr(eq + 1));
  }

  InlineModelSpec spec;
  bool inline_keys = false;
  for (const auto& [key, v] : kv) {
    if (key == "model") {
      cfg.model = v;
    } else if (key == "tmax") {
      cfg.tmax = detail::parse_double(key, v);
    } else if (key == "max_word_len") {
      const long long n = detail::parse_int(key, v);
      if (n < 1 || n > 64) throw ConfigError("max_word_len must be in 1..64");
      cfg.max_word_len = static_cast<int>(n);
    } else if (key == "threads") {
      const long long n = detail::parse_int(key, v);
      if (n < 1 || n > 1024) throw ConfigError("threads must be in 1..1024");
      cfg.threads = static_cast<unsigned>(n);
    } else if (key == "lambda_grid") {
      cfg.lambda_grid = detail::parse_lambda_list(key, v);
    } else if (key == "convergence.lambda") {
      const auto l = detail::parse_lambda_list(key, v);
      if (l.size() != 1) throw ConfigError("convergence.lambda needs exactly one (re,im) pair");
      cfg.convergence_lambda = l[0];
    } else if (key == "convergence.tmax") {
      cfg.convergence_tmax.clear();
      for (const auto& t : detail::split_ws(v)) cfg.convergence_tmax.push_back(detail::parse_double(key, t));
    } else if (key == "surfaces") {
      cfg.surfaces = detail::split_ws(v);
    } else if (key == "debug.ignore_orientation_twist") {
      cfg.ignore_orientation_twist = detail::parse_bool(key, v);
    } else if (key == "sign_fuzz.samples") {
      const long long n = detail::parse_int(key, v);
      if (n < 0) throw ConfigError("sign_fuzz.samples must be >= 0");
      cfg.sign_fuzz_samples = static_cast<std::size_t>(n);
    } else if (key == "sign_fuzz.seed") {
      cfg.sign_fuzz_seed = static_cast<std::uint64_t>(detail::parse_int(key, v));
    } else if (key == "tolerance.per_orbit") {
      cfg.per_orbit_tolerance = detail::parse_double(key, v);
    } else if (key == "tolerance.sign") {
      cfg.sign_tolerance = detail::parse_double(key, v);
    } else if (key == "out") {
      cfg.out = v;
    } else if (key.rfind("inline.", 0) == 0) {
      inline_keys = true;
      const std::string sub = key.substr(7);
      if (sub == "name") {
        spec.name = v;
      } else if (sub == "generators") {
        spec.generators = v;
      } else if (sub == "relator") {
        spec.relator = v;
      } else if (sub == "lambda_min") {
        spec.lambda_min = detail::parse_double(key, v);
      } else if (sub == "entropy") {
        spec.entropy = detail::parse_double(key, v);
      } else if (sub == "max_word_len") {
        spec.default_max_word_len = static_cast<int>(detail::parse_int(key, v));
      } else if (sub.size() == 1 && std::islower(static_cast<unsigned char>(sub[0]))) {
        std::vector<QuadraticSurd> entries;
        for (const auto& tok : detail::split_ws(v)) entries.push_back(parse_surd(tok));
        if (entries.size() != 4) throw ConfigError("config key '" + key + "': expected four matrix entries");
        spec.matrices[sub[0]] = std::move(entries);
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }

  if (cfg.model && *cfg.model == "inline") {
    if (!inline_keys) throw ConfigError("model = inline needs inline.* keys");
    cfg.model.reset();
  } else if (inline_keys) {
    if (cfg.model) throw ConfigError("give either a built-in model name or inline.* keys, not both");
  }
  if (inline_keys) cfg.inline_model = std::move(spec);
  if (!(cfg.tmax > 0.0)) throw ConfigError("tmax must be positive");
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

inline GroupModel build_inline_model(const InlineModelSpec& spec) {
  if (spec.generators.empty()) throw ConfigError("inline.generators is missing");
  Alphabet alphabet(spec.generators);
  std::vector<IsometryMatrix> gens;
  for (char g : spec.generators) {
    const auto it = spec.matrices.find(g);
    if (it == spec.matrices.end()) throw ConfigError(std::string("inline.") + g + " is missing");
    const auto& e = it->second;
    try {
      gens.push_back(IsometryMatrix::normalized(e[0].value(), e[1].value(), e[2].value(), e[3].value()));
    } catch (const DegenerateMatrixError&) {
      throw ConfigError(std::string("inline.") + g + " is singular");
    }
  }
  std::optional<Word> relator;
  if (spec.relator) relator = alphabet.parse(*spec.relator);
  GroupModel model(spec.name, alphabet, std::move(gens), relator);
  model.lambda_min = spec.lambda_min;
  model.default_max_word_len = spec.default_max_word_len;
  model.entropy = spec.entropy;
  model.description = "inline model";
  model.validate();
  return model;
}

/// Built-in name, or the inline spec; ConfigError listing valid names.
inline GroupModel resolve_model(const RunConfig& cfg) {
  if (cfg.inline_model) return build_inline_model(*cfg.inline_model);
  const std::string name = cfg.model.value_or("");
  if (auto m = models::builtin(name)) return *m;
  std::string valid;
  for (const auto& n : models::builtin_names()) valid += (valid.empty() ? "" : ", ") + n;
  if (name.empty()) throw ConfigError("no model given; valid models: " + valid);
  throw ConfigError("unknown model '" + name + "'; valid models: " + valid);
}

/// "g2" -> orientable genus 2, "N3" -> nonorientable genus 3.
inline SurfacePresentation parse_surface(const std::string& token) {
  if (token.size() < 2 || (token[0] != 'g' && token[0] != 'N')) {
    throw ConfigError("bad surface '" + token + "' (expected gK or NK)");
  }
  const std::string digits = token.substr(1);
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw ConfigError("bad surface '" + token + "'");
  }
  if (digits.size() > 3) throw ConfigError("bad surface '" + token + "'");
  const int k = std::stoi(digits);
  return token[0] == 'g' ? SurfacePresentation::orientable(k) : SurfacePresentation::nonorientable(k);
}

}  // namespace ruelle
