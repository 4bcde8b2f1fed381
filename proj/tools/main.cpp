// evasive: construct and certify subspace evasive sets.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "evasive/error.hpp"

namespace {

using evasive::cli::CommandResult;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw evasive::Error("cannot open " + path + " for writing");
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct and certify subspace evasive sets over F_p and Z"};
  app.require_subcommand(1);
  // Global options may follow the subcommand.
  app.fallthrough();

  evasive::Budget budget = evasive::cli::default_budget();
  std::string out_prefix;
  bool timings = false;
  app.add_option("--max-flats", budget.max_flats, "Cap on flats or codewords enumerated");
  app.add_option("--max-subsets", budget.max_subsets, "Cap on search nodes");
  app.add_option("--max-trials", budget.max_trials, "Cap on random trials");
  app.add_option("--out", out_prefix, "Write data files and the JSON report under this prefix");
  app.add_flag("--timings", timings, "Add wall-clock timings to the report (breaks byte reproducibility)");

  std::function<CommandResult()> run;

  evasive::cli::ConstructArgs construct;
  auto* c = app.add_subcommand("construct", "Image of a seeded random polynomial map");
  c->add_option("--p", construct.p, "Prime modulus")->required();
  c->add_option("--d", construct.d, "Ambient dimension")->required();
  c->add_option("--k", construct.k, "Domain dimension; flats of dimension d-k are evaded")->required();
  c->add_option("--seed", construct.seed, "Random seed");
  c->add_option("--seeds", construct.seeds, "Try this many consecutive seeds and keep the best");
  c->callback([&] { run = [&] { return evasive::cli::cmd_construct(construct, budget); }; });

  evasive::cli::VerifyArgs verify;
  std::size_t verify_c = 0;
  auto* v = app.add_subcommand("verify", "Largest intersection of a point set with k-flats");
  v->add_option("--in", verify.input, "Point-set file")->required();
  v->add_option("--k", verify.k, "Flat dimension")->required();
  v->add_option("--flavor", verify.flavor, "affine or linear")->check(CLI::IsMember({"affine", "linear"}));
  v->add_option("--oracle", verify.oracle, "enum, subset or both")->check(CLI::IsMember({"enum", "subset", "both"}));
  auto* vc = v->add_option("--c", verify_c, "Also require at most c points per flat");
  v->callback([&] {
    if (vc->count()) verify.c = verify_c;
    run = [&] { return evasive::cli::cmd_verify(verify, budget); };
  });

  evasive::cli::LiftArgs lift;
  auto* l = app.add_subcommand("lift", "Transfer an evasive set to the grid [n]^d");
  l->add_option("--mode", lift.mode, "affine or linear")->check(CLI::IsMember({"affine", "linear"}));
  l->add_option("--n", lift.n, "Grid side")->required();
  l->add_option("--d", lift.d, "Dimension")->required();
  l->add_option("--k", lift.k, "Flat dimension to evade")->required();
  l->add_option("--seed", lift.seed, "Random seed");
  l->callback([&] { run = [&] { return evasive::cli::cmd_lift(lift, budget); }; });

  evasive::cli::CoverArgs cover;
  std::uint64_t cover_prime = 0;
  auto* cv = app.add_subcommand("cover", "Projective witness and covering lower bound");
  cv->add_option("--n", cover.n, "Box bound")->required();
  cv->add_option("--d", cover.d, "Dimension")->required();
  cv->add_option("--k", cover.k, "Dimension of the covering subspaces")->required();
  auto* cp = cv->add_option("--prime", cover_prime, "Use this prime instead of the window's largest");
  cv->callback([&] {
    if (cp->count()) cover.prime = cover_prime;
    run = [&] { return evasive::cli::cmd_cover(cover, budget); };
  });

  evasive::cli::IncidenceArgs incidence;
  bool skip_free = false;
  auto* in = app.add_subcommand("incidence", "Point/hyperplane configuration with many incidences");
  in->add_option("--d", incidence.d, "Dimension")->required();
  in->add_option("--n", incidence.n, "Target number of points")->required();
  in->add_option("--m", incidence.m, "Target number of hyperplanes")->required();
  in->add_option("--seed", incidence.seed, "Random seed");
  in->add_flag("--skip-free", skip_free, "Skip the K_{a,b}-freeness check");
  in->callback([&] {
    incidence.check_free = !skip_free;
    run = [&] { return evasive::cli::cmd_incidence(incidence, budget); };
  });

  evasive::cli::WitnessArgs witness;
  auto* w = app.add_subcommand("witness", "Box, lower-bound, Hamming and code witnesses");
  w->add_option("--mode", witness.mode, "box, lower, hamming or code")
      ->check(CLI::IsMember({"box", "lower", "hamming", "code"}));
  w->add_option("--in", witness.input, "Hypergraph (box) or point-set file")->required();
  w->add_option("--sizes", witness.sizes, "Box side sizes")->delimiter(',');
  w->add_flag("--exhaustive", witness.exhaustive, "Plain lexicographic box search");
  w->add_option("--k", witness.k, "Flat dimension");
  w->add_option("--eps", witness.eps, "Density exponent for the lower-bound witness");
  w->add_option("--c", witness.c, "Number of parts minus one for the Hamming witness");
  w->callback([&] { run = [&] { return evasive::cli::cmd_witness(witness, budget); }; });

  evasive::cli::MomentsArgs moments;
  unsigned moment_degree = 0;
  auto* m = app.add_subcommand("moments", "Empirical moments of random variety sizes");
  m->add_option("--p", moments.p, "Prime modulus")->required();
  m->add_option("--d", moments.d, "Ambient dimension (sets the default degree)")->required();
  m->add_option("--k", moments.k, "Number of variables and polynomials")->required();
  m->add_option("--s", moments.s, "Moment order")->required();
  m->add_option("--trials", moments.trials, "Number of trials");
  m->add_option("--seed", moments.seed, "Random seed");
  auto* md = m->add_option("--degree", moment_degree, "Override the degree (d+1)k+1");
  m->callback([&] {
    if (md->count()) moments.degree = moment_degree;
    run = [&] { return evasive::cli::cmd_moments(moments, budget); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : evasive::cli::kExitUsage;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    CommandResult result = run();
    if (timings) {
      const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
      result.report["timings_ms"] = ms.count();
    }
    const std::string report = result.report.dump(2) + "\n";
    if (!out_prefix.empty()) {
      for (const auto& [suffix, content] : result.files) write_file(out_prefix + suffix, content);
      write_file(out_prefix + ".json", report);
    }
    std::cout << report;
    return result.passed ? evasive::cli::kExitPassed : evasive::cli::kExitFailed;
  } catch (const evasive::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return evasive::cli::kExitBudget;
  } catch (const evasive::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return evasive::cli::kExitUsage;
  } catch (const evasive::DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return evasive::cli::kExitUsage;
  } catch (const evasive::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return evasive::cli::kExitFailed;
  }
}
