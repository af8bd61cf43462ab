#pragma once

// Builders for the CLI exports: orbit CSV (+ warnings), verification JSON,
// zeta CSV and topology JSON.

#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include "ruelle/config.hpp"
#include "ruelle/linalg_core.hpp"
#include "ruelle/orbit_enum.hpp"
#include "ruelle/report_format.hpp"
#include "ruelle/twisted_topology.hpp"
#include "ruelle/zeta_engine.hpp"

namespace ruelle {

/// Census for a CLI run; incompleteness is reported as a warning.
inline Census run_census(const GroupModel& model, const RunConfig& cfg) {
  CensusOptions opts;
  opts.T_max = cfg.tmax;
  opts.max_word_len = cfg.max_word_len;
  opts.require_complete = false;
  opts.threads = cfg.threads;
  return census(model, opts);
}

inline std::vector<std::string> census_warnings(const GroupModel& model, const Census& c) {
  std::vector<std::string> out;
  const Alphabet& ab = model.alphabet();
  if (!c.complete) {
    out.push_back("incomplete: model " + model.name() +
                  " has no word-length bound; enumerated words up to length " +
                  std::to_string(c.max_word_len));
  }
  for (const auto& s : c.soundness) {
    out.push_back("soundness: word " + ab.format(s.word.letters()) + " maps to a " +
                  std::string(to_string(s.kind)) + " isometry");
  }
  for (const auto& col : c.collisions) {
    std::string line = "collision: T_sharp=" + csv_number(col.T_sharp) + " classes";
    for (const auto& w : col.words) line += " " + ab.format(w.letters());
    out.push_back(std::move(line));
  }
  return out;
}

inline std::string orbits_csv(const GroupModel& model, const Census& c) {
  std::string out = "word,T_sharp,m,T,epsilon,trace\n";
  for (const auto& o : c.orbits) {
    out += model.alphabet().format(o.word.letters());
    out += ',' + csv_number(o.T_sharp) + ',' + std::to_string(o.m) + ',' + csv_number(o.T) + ',' +
           std::to_string(o.epsilon) + ',' + csv_number(o.trace) + '\n';
  }
  return out;
}

inline std::string lines(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& l : v) out += l + '\n';
  return out;
}

namespace detail {

inline void require_grid(const GroupModel& model, const std::vector<std::complex<double>>& grid) {
  for (const auto& l : grid) {
    if (!(l.imag() > model.entropy)) {
      throw ConfigError("lambda (" + csv_number(l.real()) + "," + csv_number(l.imag()) +
                        ") is outside the convergence region Im(lambda) > " + csv_number(model.entropy));
    }
  }
}

inline std::vector<ClosedOrbit> truncate(const std::vector<ClosedOrbit>& orbits, double T_max) {
  std::vector<ClosedOrbit> out;
  for (const auto& o : orbits) {
    if (o.T <= T_max) out.push_back(o);
  }
  return out;
}

}  // namespace detail

struct VerifyOutcome {
  Json json;
  bool pass = false;
};

inline VerifyOutcome verify_report(const GroupModel& model, const Census& c, const RunConfig& cfg) {
  detail::require_grid(model, cfg.lambda_grid);
  const WeightOptions wopts{cfg.ignore_orientation_twist};
  const WeightedCensus wc = weigh(c, model.entropy, wopts);

  VerifyOutcome out;
  Json& j = out.json;
  j["model"] = model.name();
  j["T_max"] = c.T_max;
  j["census_size"] = c.orbits.size();
  j["complete"] = c.complete;
  j["ignore_orientation_twist"] = cfg.ignore_orientation_twist;

  const double per_orbit = max_per_orbit_residual(c.orbits, wopts);
  j["max_per_orbit_residual"] = per_orbit;
  j["per_orbit_tolerance"] = cfg.per_orbit_tolerance;
  bool pass = per_orbit <= cfg.per_orbit_tolerance;

  Json fact = Json::array();
  const double tol = factorization_tolerance(c.orbits.size());
  for (const auto& l : cfg.lambda_grid) {
    const double r = factorization_residual(wc, l);
    const bool ok = r <= tol;
    pass = pass && ok;
    fact.push_back({{"re", l.real()}, {"im", l.imag()}, {"residual", r}, {"tolerance", tol}, {"pass", ok}});
  }
  j["factorization_residuals"] = std::move(fact);

  const SignFuzzResult fuzz = sign_fuzz(cfg.sign_fuzz_samples, cfg.sign_fuzz_seed, 4, cfg.sign_tolerance);
  j["sign_fuzz"] = {{"samples", fuzz.samples},
                    {"failures", fuzz.failures},
                    {"max_residual", fuzz.max_residual},
                    {"tolerance", cfg.sign_tolerance}};
  pass = pass && fuzz.failures == 0;

  Json conv = Json::array();
  if (cfg.convergence_lambda.imag() > model.entropy) {
    std::optional<std::complex<double>> previous;
    for (double t : cfg.convergence_tmax) {
      if (t > c.T_max) continue;
      const WeightedCensus sub = weigh(detail::truncate(c.orbits, t), t, model.entropy, wopts);
      const TruncatedValue v = log_zeta_R(sub, cfg.convergence_lambda);
      Json row = {{"T_max", t},
                  {"census_size", sub.terms.size()},
                  {"re", v.value.real()},
                  {"im", v.value.imag()},
                  {"tail_estimate", v.tail_estimate}};
      row["change"] = previous ? Json(std::abs(v.value - *previous)) : Json(nullptr);
      previous = v.value;
      conv.push_back(std::move(row));
    }
  }
  j["convergence"] = {{"lambda_re", cfg.convergence_lambda.real()},
                      {"lambda_im", cfg.convergence_lambda.imag()},
                      {"rows", std::move(conv)}};
  j["pass"] = pass;
  out.pass = pass;
  return out;
}

inline std::string zeta_csv(const GroupModel& model, const Census& c, const RunConfig& cfg) {
  detail::require_grid(model, cfg.lambda_grid);
  const WeightedCensus wc = weigh(c, model.entropy, WeightOptions{cfg.ignore_orientation_twist});
  std::string out =
      "lambda_re,lambda_im,T_max,census_size,log_zeta_R_re,log_zeta_R_im,log_zeta_0_re,log_zeta_0_im,"
      "log_zeta_1_re,log_zeta_1_im,log_zeta_2_re,log_zeta_2_im,tail_estimate,factorization_residual\n";
  for (const auto& l : cfg.lambda_grid) {
    const TruncatedValue r = log_zeta_R(wc, l);
    out += csv_number(l.real()) + ',' + csv_number(l.imag()) + ',' + csv_number(c.T_max) + ',' +
           std::to_string(c.orbits.size()) + ',' + csv_number(r.value.real()) + ',' +
           csv_number(r.value.imag());
    for (int k = 0; k <= 2; ++k) {
      const TruncatedValue z = log_zeta_k(wc, k, l);
      out += ',' + csv_number(z.value.real()) + ',' + csv_number(z.value.imag());
    }
    out += ',' + csv_number(r.tail_estimate) + ',' + csv_number(factorization_residual(wc, l)) + '\n';
  }
  return out;
}

struct TopologyOutcome {
  Json json;
  bool ok = true;  // route agreement on every hyperbolic surface
};

inline Json betti_json(const Betti& b) { return Json::array({b.b0, b.b1, b.b2}); }

inline TopologyOutcome topology_report(const std::vector<std::string>& surfaces) {
  TopologyOutcome out;
  Json rows = Json::array();
  for (const auto& token : surfaces) {
    const SurfacePresentation s = parse_surface(token);
    Json row;
    row["surface"] = s.name();
    row["orientable"] = s.is_orientable();
    row["chi"] = s.euler_characteristic();
    row["betti_trivial"] = betti_json(betti(s));
    row["betti_w1"] = betti_json(twisted_betti(s, s.w1()));
    row["derived_euler"] = derived_euler(s);
    row["gysin_b1"] = gysin_b1(s, s.w1());
    if (s.euler_characteristic() > 0) {
      row["predicted_order"] = nullptr;
      row["routes_agree"] = nullptr;
      row["status"] = "hypothesis-violation";
    } else if (s.euler_characteristic() == 0) {
      row["predicted_order"] = nullptr;
      row["routes_agree"] = nullptr;
      row["status"] = "degenerate";
    } else {
      const VanishingOrder v = vanishing_order_routes(s);
      row["predicted_order"] = v.order;
      row["minus_derived_euler"] = -v.derived_euler;
      row["routes_agree"] = v.routes_agree;
      row["status"] = v.routes_agree ? "ok" : "route-disagreement";
      out.ok = out.ok && v.routes_agree;
    }
    rows.push_back(std::move(row));
  }
  out.json["surfaces"] = std::move(rows);
  out.json["all_routes_agree"] = out.ok;
  return out;
}

}  // namespace ruelle
