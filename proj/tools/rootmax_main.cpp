// Command-line runner: every library operation behind a seeded, reproducible
// subcommand with CSV/JSON output. Exit codes: 0 success, 2 usage error,
// 3 numerical or cross-validation failure.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "rootmax/acceptance.hpp"
#include "rootmax/experiment.hpp"
#include "rootmax/parallel.hpp"
#include "rootmax/version.hpp"

namespace {

struct GlobalOpts {
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out;
  std::string format = "csv";
};

void add_globals(CLI::App& app, GlobalOpts& g) {
  app.add_option("--seed", g.seed, "RNG seed (default 1)");
  app.add_option("--threads", g.threads,
                 "Worker thread cap (overrides ROOTMAX_THREADS; results do "
                 "not depend on it)");
  app.add_option("--out", g.out, "Output path (default stdout)");
  app.add_option("--format", g.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

int emit(const rootmax::ExperimentConfig& config, const GlobalOpts& g) {
  auto start = std::chrono::steady_clock::now();
  rootmax::ResultTable table = rootmax::run(config);
  std::string text = rootmax::render(table, config.format);
  if (g.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(g.out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open output file '" << g.out << "'\n";
      return 2;
    }
    f << text;
  }
  // Wall-clock goes to stderr only; output bytes stay reproducible.
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  std::cerr << config.command << ": " << ms << " ms\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(rootmax::kVersion) +
               " - root statistics of random polynomials and truncated "
               "unitary ensembles"};
  app.require_subcommand(1);
  GlobalOpts g;
  add_globals(app, g);

  // Each subcommand collects its parameters into an ExperimentConfig; the
  // config echo in the output is sufficient to reproduce the run.
  std::map<std::string, std::string> params;
  auto opt = [&params](CLI::App* cmd, const std::string& key,
                       const std::string& help, bool required = false) {
    auto* o = cmd->add_option_function<std::string>(
        "--" + key, [&params, key](const std::string& v) { params[key] = v; },
        help);
    if (required) o->required();
    return o;
  };

  auto* sample_roots = app.add_subcommand(
      "sample-roots", "Sample Kac polynomials and list all roots");
  opt(sample_roots, "n", "polynomial degree", true);
  opt(sample_roots, "samples", "number of polynomials", true);

  auto* cdf = app.add_subcommand(
      "cdf-fluctuations",
      "Empirical CDF of the max root modulus vs the limiting law");
  opt(cdf, "n", "polynomial degree", true);
  opt(cdf, "samples", "number of polynomials", true);
  opt(cdf, "grid", "y grid start:stop:step (default 1.05:3:0.05)");

  auto* elc = app.add_subcommand("eval-limit-cdf",
                                 "Limiting CDF prod(1 - y^{-2k}) on a grid");
  opt(elc, "grid", "y grid start:stop:step", true);

  auto* evf = app.add_subcommand(
      "eval-F", "Deviation constant F(y) with per-term contributions");
  opt(evf, "y", "y in (0,1)", true);
  opt(evf, "k-max", "series truncation (default 6)");
  opt(evf, "method", "quadrature | series | both (default both)");

  auto* qj = app.add_subcommand("quadrature-J",
                                "J_k(y) by the trapezoid tensor rule");
  opt(qj, "k", "number of circle variables (<= 4)", true);
  opt(qj, "y", "y in [0,1)", true);
  opt(qj, "nodes", "nodes per dimension (default 64)");

  auto* sj = app.add_subcommand(
      "series-J", "J_k(y) by the Schur/Kostka series with a tail bound");
  opt(sj, "k", "number of circle variables (<= 8)", true);
  opt(sj, "y", "y in [0,1)", true);
  opt(sj, "cut", "series truncation degree (default 48)");

  auto* ldp = app.add_subcommand(
      "ldp", "Rare-event estimator of P(rho_n <= y) via the ensemble");
  opt(ldp, "n", "ensemble order", true);
  opt(ldp, "y", "y in (0,1)", true);
  opt(ldp, "samples", "Monte Carlo samples", true);
  opt(ldp, "sampler", "truncation | dpp (default truncation)");

  auto* dm = app.add_subcommand("direct-mc",
                                "Plain Monte Carlo estimate of P(rho_n <= y)");
  opt(dm, "n", "polynomial degree", true);
  opt(dm, "y", "threshold", true);
  opt(dm, "samples", "Monte Carlo samples", true);

  auto* mom = app.add_subcommand(
      "moments", "Characteristic-polynomial moments: formula vs Monte Carlo");
  opt(mom, "n", "ensemble order", true);
  opt(mom, "u", "evaluation points, e.g. '1.5+0i;0+1.5i'", true);
  opt(mom, "samples", "Monte Carlo samples", true);
  opt(mom, "sampler", "truncation | dpp (default truncation)");

  auto* dpp = app.add_subcommand("dpp-sample",
                                 "Draw truncated-ensemble eigenvalue samples");
  opt(dpp, "n", "ensemble order", true);
  opt(dpp, "samples", "number of samples", true);
  opt(dpp, "method", "dpp | truncation (default dpp)");

  auto* corr = app.add_subcommand(
      "correlations", "k-point correlation of Kac roots (finite n or limit)");
  opt(corr, "z", "points, e.g. '0.1+0.2i;0.3-0.1i'", true);
  opt(corr, "order", "polynomial degree, or 'limit' (default)");

  auto* fred = app.add_subcommand(
      "fredholm", "Fredholm determinant of the Bergman kernel on D(t)");
  opt(fred, "t", "disk radius in (0,1)", true);
  opt(fred, "radial", "radial nodes (default 64)");
  opt(fred, "angular", "angular nodes (default 128)");

  auto* gap = app.add_subcommand(
      "gap-series", "Inclusion-exclusion gap probability for y > 1");
  opt(gap, "y", "threshold > 1", true);
  opt(gap, "k-max", "truncation order (default 4, cap 4)");
  opt(gap, "mc-points", "MC points per term (default 200000)");
  opt(gap, "order", "polynomial degree, or 'limit' (default)");

  auto* selftest =
      app.add_subcommand("selftest", "Run the acceptance criteria");
  bool quick = false;
  selftest->add_flag("--quick", quick, "reduced sample counts");
  bool full = false;
  selftest->add_flag("--full", full, "full pinned sample counts (default)");

  // Global flags (--seed, --out, ...) may appear after the subcommand name.
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) {
         return true;
       })) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (g.threads > 0) {
    rootmax::set_thread_cap(g.threads);
  } else {
    rootmax::thread_cap();  // resolve ROOTMAX_THREADS
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (sub == selftest) {
      rootmax::AcceptanceOptions options;
      options.quick = quick && !full;
      options.seed = g.seed;
      auto results = rootmax::run_acceptance(options, std::cout);
      if (!rootmax::all_passed(results)) {
        std::cerr << "selftest: FAILURES present\n";
        return 3;
      }
      std::cout << "selftest: all criteria passed\n";
      return 0;
    }
    rootmax::ExperimentConfig config;
    config.command = sub->get_name();
    config.params = params;
    config.seed = g.seed;
    config.format = g.format;
    return emit(config, g);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
