#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace pkit;
  CLI::App app{"Finite-dimensional Pontryagin-space operator toolkit"};
  app.require_subcommand(1);

  std::string file, subspace_file;
  std::string z_text;
  std::vector<std::string> z_list;
  double alpha = 0.0;
  fuzz::Options fopts;
  Index singular_every = 0;

  auto* inspect = app.add_subcommand("inspect", "Dimensions, inertia, minimality, kappa");
  inspect->add_option("file", file, "problem file")->required();

  auto* eval = app.add_subcommand("eval", "Evaluate Q(z)");
  eval->add_option("file", file, "problem file")->required();
  eval->add_option("--z", z_text, "point RE,IM")->required();

  auto* invert = app.add_subcommand("invert", "Inverse function and its split");
  invert->add_option("file", file, "problem file")->required();
  invert->add_option("--z", z_list, "point RE,IM (repeatable)");

  auto* decompose = app.add_subcommand("decompose", "Split along an invariant subspace");
  decompose->add_option("file", file, "problem file")->required();
  decompose->add_option("--subspace", subspace_file, "subspace file")->required();

  auto* jordan = app.add_subcommand("jordan", "Chain decomposition at a real eigenvalue");
  jordan->add_option("file", file, "problem file")->required();
  jordan->add_option("--alpha", alpha, "real eigenvalue")->required();

  auto* fuzzc = app.add_subcommand("fuzz", "Randomized invariant suite");
  fuzzc->add_option("--seed", fopts.seed, "seed");
  fuzzc->add_option("--count", fopts.count, "number of instances")->check(CLI::NonNegativeNumber);
  fuzzc->add_option("--max-dim", fopts.max_dim, "largest state dimension")
      ->check(CLI::Range(2, 64));
  fuzzc->add_option("--singular-every", singular_every,
                    "force a singular Gamma0+ Gamma0 on every k-th instance")
      ->check(CLI::NonNegativeNumber);
  fuzzc->add_option("--threads", fopts.threads, "worker threads (0: all cores)");

  auto* example1 = app.add_subcommand("example1", "Golden reproduction of the worked example");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::ParseFailure;
  }

  const Tolerances tol = Tolerances::from_env();
  std::cout.setf(std::ios::unitbuf);
  try {
    if (*inspect) return cli::cmd_inspect(file, tol, std::cout);
    if (*eval) return cli::cmd_eval(file, cli::parse_complex(z_text), tol, std::cout);
    if (*invert) {
      std::vector<cplx> points;
      for (const auto& s : z_list) points.push_back(cli::parse_complex(s));
      return cli::cmd_invert(file, points, tol, std::cout);
    }
    if (*decompose) return cli::cmd_decompose(file, subspace_file, tol, std::cout);
    if (*jordan) return cli::cmd_jordan(file, alpha, tol, std::cout);
    if (*fuzzc) {
      fopts.singular_every = singular_every;
      return cli::cmd_fuzz(fopts, tol, std::cout);
    }
    if (*example1) return cli::cmd_example1(tol, std::cout);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return cli::exit_code(e.code());
  }
  return cli::ParseFailure;
}
