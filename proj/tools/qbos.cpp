// qbos command-line front end.
//
//   qbos evolve     [--config PATH] --alice T,A,B --bob T,A,B
//   qbos scan       [--config PATH | --case TAG] [grid flags] [--epsilon F] --out PATH
//   qbos reproduce  TAG [--out DIR] [--seed N]
//   qbos list-cases
//
// Exit codes: 0 success / all claims pass, 1 claim failure, 2 usage or
// input error, 3 evaluation cap exceeded.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "qbos/qbos.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

struct GridFlags {
  std::optional<std::size_t> theta, alpha, beta;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--grid-theta", theta, "theta steps over [0, 2pi)")->check(CLI::PositiveNumber);
    cmd->add_option("--grid-alpha", alpha, "alpha steps over [0, 2pi)")->check(CLI::PositiveNumber);
    cmd->add_option("--grid-beta", beta, "beta steps over [0, 2pi)")->check(CLI::PositiveNumber);
  }

  void apply(qbos::GridPair& g) const {
    for (qbos::GridSpec* s : {&g.alice, &g.bob}) {
      if (theta) s->theta_steps = *theta;
      if (alpha) s->alpha_steps = *alpha;
      if (beta) s->beta_steps = *beta;
    }
  }
};

qbos::RunSpec load_or_default(const std::string& path) {
  return path.empty() ? qbos::RunSpec{} : qbos::load_run_spec(path);
}

void print_state(const qbos::StateVector4& s, const qbos::Payoffs& p) {
  static const char* names[] = {"FF", "FB", "BF", "BB"};
  for (std::size_t k = 0; k < 4; ++k)
    std::printf("%s  %s  %s\n", names[k], qbos::format_double(s[k].real()).c_str(),
                qbos::format_double(s[k].imag()).c_str());
  std::printf("payoffs  %s  %s\n", qbos::format_double(p.alice).c_str(), qbos::format_double(p.bob).c_str());
}

int cmd_evolve(const std::string& config_path, const std::string& alice, const std::string& bob) {
  const qbos::RunSpec spec = load_or_default(config_path);
  const auto a = qbos::parse_strategy(alice, spec.game.alice_class);
  const auto b = qbos::parse_strategy(bob, spec.game.bob_class);
  const auto state = qbos::evolve(spec.game, a, b);
  print_state(state, qbos::expected_payoffs(state, spec.game.payoffs));
  return kExitOk;
}

int cmd_scan(const std::string& config_path, const std::string& case_tag, const GridFlags& grid,
             std::optional<double> epsilon, const qbos::ScanOptions& options, bool force_certificate,
             bool gnuplot, const std::string& out) {
  qbos::RunReport report;
  qbos::RunSpec spec;
  if (!case_tag.empty()) {
    const auto tag = qbos::parse_case_tag(case_tag);
    if (!tag) throw qbos::ConfigError("unknown case tag '" + case_tag + "'");
    spec = qbos::case_bundle(*tag).run;
    report.case_tag = case_tag;
  } else {
    spec = load_or_default(config_path);
  }
  grid.apply(spec.grids);
  if (epsilon) spec.epsilon = *epsilon;
  if (!(spec.epsilon >= 0.0)) throw qbos::ConfigError("epsilon must be non-negative");

  const qbos::LatticeScan scan(spec.game, spec.grids, options);
  report.config = spec.game;
  report.grids = spec.grids;
  report.epsilon = spec.epsilon;
  report.equilibria = qbos::nash_scan(scan, spec.epsilon);
  if (report.equilibria.empty() || force_certificate) report.certificate = qbos::certify_no_equilibrium(scan);
  std::ostringstream summary;
  summary << report.equilibria.size() << " equilibria at epsilon " << spec.epsilon;
  if (report.certificate) summary << ", min best gain " << report.certificate->min_best_gain;
  report.summary = summary.str();

  const auto files = qbos::write_report(report, out, gnuplot);
  std::printf("%s\nwrote %s and %s\n", report.summary.c_str(), files.json.c_str(), files.csv.c_str());
  return kExitOk;
}

int cmd_reproduce(const std::string& tag_text, const std::string& out_dir, std::uint64_t seed,
                  const qbos::ScanOptions& options, bool gnuplot) {
  const auto tag = qbos::parse_case_tag(tag_text);
  if (!tag) {
    std::fprintf(stderr, "error: unknown case tag '%s'; valid tags:\n", tag_text.c_str());
    for (auto t : qbos::kAllCases) std::fprintf(stderr, "  %s\n", std::string(qbos::to_string(t)).c_str());
    return kExitUsage;
  }
  const auto outcome = qbos::run_case(*tag, seed, options);
  if (!out_dir.empty()) {
    const auto path = std::filesystem::path(out_dir) / (tag_text + ".json");
    qbos::write_report(outcome.report, path, gnuplot);
  }
  for (const auto& c : outcome.claims)
    std::printf("%s: %s (%s)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
  std::printf("%s\n", outcome.report.summary.c_str());
  return outcome.all_pass() ? kExitOk : kExitFail;
}

int cmd_list_cases() {
  for (auto t : qbos::kAllCases) {
    const auto b = qbos::case_bundle(t);
    std::printf("%-18s %s\n", std::string(qbos::to_string(t)).c_str(), b.description.c_str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibria of the quantized battle of the sexes"};
  app.require_subcommand(1);

  std::string config_path, alice = "0", bob = "0", case_tag, out, tag;
  std::optional<double> epsilon;
  std::uint64_t seed = 0;
  bool override_cap = false, certificate = false, gnuplot = false;
  unsigned threads = 0;
  GridFlags grid;

  auto* evolve = app.add_subcommand("evolve", "print the final state and payoffs of one profile");
  evolve->add_option("--config", config_path, "INI config or JSON run report")->check(CLI::ExistingFile);
  evolve->add_option("--alice", alice, "Alice's angles theta[,alpha[,beta]], e.g. pi,0,0");
  evolve->add_option("--bob", bob, "Bob's angles omega[,gamma[,delta]]");

  auto* scan = app.add_subcommand("scan", "epsilon-Nash scan over the strategy lattice");
  auto* cfg = scan->add_option("--config", config_path, "INI config or JSON run report")->check(CLI::ExistingFile);
  scan->add_option("--case", case_tag, "use a reproduction bundle instead of a config")->excludes(cfg);
  grid.add_to(scan);
  scan->add_option("--epsilon", epsilon, "equilibrium tolerance");
  scan->add_option("--seed", seed, "random seed (unused by scans)");
  scan->add_flag("--override-cap", override_cap, "allow more than 1e8 payoff evaluations");
  scan->add_flag("--certificate", certificate, "always emit a deviation certificate");
  scan->add_flag("--gnuplot", gnuplot, "also write a gnuplot script next to the CSV");
  scan->add_option("--threads", threads, "worker threads (0 = hardware)");
  scan->add_option("--out", out, "JSON report path; CSV written alongside")->required();

  auto* reproduce = app.add_subcommand("reproduce", "run a reproduction case and check its claims");
  reproduce->add_option("tag", tag, "case tag (see list-cases)")->required();
  reproduce->add_option("--out", out, "directory for <tag>.json and <tag>.csv");
  reproduce->add_option("--seed", seed, "seed for sampled checks");
  reproduce->add_flag("--override-cap", override_cap, "allow more than 1e8 payoff evaluations");
  reproduce->add_flag("--gnuplot", gnuplot, "also write a gnuplot script");
  reproduce->add_option("--threads", threads, "worker threads (0 = hardware)");

  auto* list = app.add_subcommand("list-cases", "list reproduction case tags");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  qbos::ScanOptions options;
  options.override_cap = override_cap;
  options.threads = threads;

  try {
    if (*evolve) return cmd_evolve(config_path, alice, bob);
    if (*scan) return cmd_scan(config_path, case_tag, grid, epsilon, options, certificate, gnuplot, out);
    if (*reproduce) return cmd_reproduce(tag, out, seed, options, gnuplot);
    if (*list) return cmd_list_cases();
  } catch (const qbos::ResourceCapError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitCap;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFail;
  }
  return kExitUsage;
}
