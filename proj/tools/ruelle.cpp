// ruelle: command-line front end for orbit censuses, zeta residual checks
// and the topology table.

#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ruelle/config.hpp"
#include "ruelle/reports.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kUsageError = 2;

struct Sink {
  std::optional<std::filesystem::path> dir;

  void write(const std::string& name, const std::string& text, std::ostream& fallback = std::cout) const {
    if (!dir) {
      fallback << text;
      return;
    }
    std::filesystem::create_directories(*dir);
    const auto path = *dir / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ruelle::ConfigError("cannot write " + path.string());
    f << text;
  }
};

int census_verb(const std::string& verb, const ruelle::RunConfig& cfg, const Sink& sink, bool strict) {
  using namespace ruelle;
  const GroupModel model = resolve_model(cfg);
  const Census c = run_census(model, cfg);
  const auto warnings = census_warnings(model, c);
  int code = kOk;

  if (verb == "orbits" || verb == "report") {
    sink.write("orbits.csv", orbits_csv(model, c));
    sink.write("orbits.csv.warnings", lines(warnings), std::cerr);
  }
  if (verb == "verify" || verb == "report") {
    const VerifyOutcome v = verify_report(model, c, cfg);
    sink.write("verify.json", to_json_text(v.json));
    if (!v.pass) code = kVerificationFailure;
    if (verb == "report") {
      const TopologyOutcome t = topology_report(cfg.surfaces);
      sink.write("zeta.csv", zeta_csv(model, c, cfg));
      sink.write("topology.json", to_json_text(t.json));
      if (!t.ok) code = kVerificationFailure;
      Json summary;
      summary["model"] = model.name();
      summary["T_max"] = c.T_max;
      summary["census_size"] = c.orbits.size();
      summary["primitive_count"] = c.primitive_count;
      summary["complete"] = c.complete;
      summary["warnings"] = warnings.size();
      summary["verify_pass"] = v.pass;
      summary["topology_routes_agree"] = t.ok;
      summary["pass"] = v.pass && t.ok;
      sink.write("report.json", to_json_text(summary));
    }
  }
  if (verb == "zeta") {
    sink.write("zeta.csv", zeta_csv(model, c, cfg));
  }
  if (strict && !warnings.empty() && code == kOk) {
    std::cerr << "ruelle: " << warnings.size() << " warning(s) with --strict\n";
    code = kVerificationFailure;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ruelle zeta residual checks for hyperbolic surfaces and Schottky groups"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config_path;
  std::string model;
  std::optional<double> tmax;
  std::optional<unsigned> threads;
  std::string out;
  bool strict = false;
  app.add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--model", model, "built-in model: bolza, schottky-orientable, schottky-nonorientable");
  app.add_option("--tmax", tmax, "largest orbit period in the census");
  app.add_option("--threads", threads, "enumeration threads (output does not depend on it)");
  app.add_option("--out", out, "output directory (default: standard output)");
  app.add_flag("--strict", strict, "exit 1 when the census produced warnings");

  app.add_subcommand("orbits", "closed-orbit census as CSV");
  app.add_subcommand("verify", "per-orbit, factorization and sign identities as JSON");
  app.add_subcommand("zeta", "truncated log-zeta values on the lambda grid as CSV");
  app.add_subcommand("topology", "twisted Betti numbers and predicted vanishing orders as JSON");
  app.add_subcommand("report", "all of the above into --out");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsageError;
  }
  const std::string verb = app.get_subcommands().front()->get_name();

  try {
    ruelle::RunConfig cfg = config_path.empty() ? ruelle::RunConfig{} : ruelle::load_config(config_path);
    if (!model.empty()) {
      cfg.model = model;
      cfg.inline_model.reset();
    }
    if (tmax) {
      if (!(*tmax > 0.0)) throw ruelle::ConfigError("--tmax must be positive");
      cfg.tmax = *tmax;
    }
    if (threads) {
      if (*threads < 1) throw ruelle::ConfigError("--threads must be >= 1");
      cfg.threads = *threads;
    }
    if (!out.empty()) cfg.out = out;
    Sink sink;
    if (cfg.out) sink.dir = *cfg.out;
    if (verb == "report" && !sink.dir) throw ruelle::ConfigError("report needs --out <dir>");

    if (verb == "topology") {
      const ruelle::TopologyOutcome t = ruelle::topology_report(cfg.surfaces);
      sink.write("topology.json", ruelle::to_json_text(t.json));
      return t.ok ? kOk : kVerificationFailure;
    }
    return census_verb(verb, cfg, sink, strict);
  } catch (const ruelle::ConfigError& e) {
    std::cerr << "ruelle: " << e.what() << "\n";
    return kUsageError;
  } catch (const ruelle::IncompleteCensusError& e) {
    std::cerr << "ruelle: " << e.what() << "\n";
    return kUsageError;
  } catch (const ruelle::DivergenceError& e) {
    std::cerr << "ruelle: " << e.what() << "\n";
    return kUsageError;
  } catch (const ruelle::Error& e) {
    std::cerr << "ruelle: " << e.what() << "\n";
    return kVerificationFailure;
  } catch (const std::exception& e) {
    std::cerr << "ruelle: " << e.what() << "\n";
    return kUsageError;
  }
}
