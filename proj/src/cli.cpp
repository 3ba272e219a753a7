#include "cpd/cli.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cpd/cpdalg.hpp"
#include "cpd/errors.hpp"
#include "cpd/generate.hpp"
#include "cpd/io.hpp"
#include "cpd/selftest.hpp"
#include "cpd/verify.hpp"

namespace cpd {

namespace {

void print_report(std::ostream& out, const DiagnosticsReport& report) {
  out << "kernel_dim: " << report.kernel_dim_found << " (expected "
      << report.kernel_dim_expected << ")\n";
  out << "kc_verdict: " << kc_verdict_name(report.kc_verdict) << '\n';
  out << "sv_gap: " << report.singular_value_gap << '\n';
}

int run_decompose(const std::string& input, int rank,
                  const std::string& algorithm, bool kc_set, int kc,
                  bool tol_set, double tol_residual, std::uint64_t seed,
                  const std::string& output) {
  const Tensor3 t = read_tensor(input);
  CpdOptions options;
  options.seed = seed;
  if (algorithm == "alg1") {
    options.algorithm = Algorithm::Alg1;
  } else if (algorithm == "alg2") {
    options.algorithm = Algorithm::Alg2;
  } else {
    options.algorithm = Algorithm::Auto;
  }
  if (kc_set) options.kc = kc;
  if (tol_set) options.tol.residual = tol_residual;

  const auto start = std::chrono::steady_clock::now();
  CpdResult result;
  try {
    result = decompose(t, rank, options);
  } catch (const DiagnosticError& error) {
    print_report(std::cerr, error.report());
    throw;
  }
  const auto stop = std::chrono::steady_clock::now();
  const double ms =
      std::chrono::duration<double, std::milli>(stop - start).count();

  std::cout << "algorithm: "
            << (result.algorithm_used == Algorithm::Alg1 ? "alg1" : "alg2")
            << '\n';
  std::cout << "reduced_K: " << result.reduced_k << '\n';
  print_report(std::cout, result.report);
  if (result.algo2.has_value()) {
    std::cout << "pairs_found: " << result.algo2->pair_set.size() << '\n';
    std::cout << "pairs_solved: " << result.algo2->pairs_solved << '\n';
    std::cout << "cluster_sizes:";
    for (int size : result.algo2->cluster_sizes) std::cout << ' ' << size;
    std::cout << '\n';
  }
  std::cout << "residual: " << format_value(result.final_residual) << '\n';
  std::cout << "time_ms: " << static_cast<long long>(ms + 0.5) << '\n';
  write_factors(output, result.cpd);
  std::cout << "wrote: " << output << '\n';
  return 0;
}

int run_generate(const std::string& dims, int rank, std::uint64_t seed,
                 bool kc_set, int kc, const std::string& output,
                 const std::string& factors_path) {
  GenSpec spec;
  if (std::sscanf(dims.c_str(), "%dx%dx%d", &spec.i, &spec.j, &spec.k) != 3) {
    throw CpdError(Errc::FormatError, "--dims must look like 6x6x7");
  }
  spec.r = rank;
  spec.seed = seed;
  if (kc_set) spec.kc = kc;
  const Cpd cpd = generate_instance(spec);
  write_tensor(output, compose(cpd));
  std::cout << "wrote: " << output << '\n';
  if (!factors_path.empty()) {
    write_factors(factors_path, cpd);
    std::cout << "wrote: " << factors_path << '\n';
  }
  return 0;
}

int run_verify(const std::string& tensor_path, const std::string& factors_path,
               const std::string& reference_path) {
  const Tensor3 t = read_tensor(tensor_path);
  const Cpd cpd = read_factors(factors_path);
  if (cpd.A.rows() != t.extent1() || cpd.B.rows() != t.extent2() ||
      cpd.C.rows() != t.extent3()) {
    throw CpdError(Errc::BadShape,
                   "factor dimensions do not match the tensor");
  }
  std::cout << "residual: " << format_value(residual(t, cpd)) << '\n';
  if (!reference_path.empty()) {
    const Cpd reference = read_factors(reference_path);
    const MatchResult match = match_factors(cpd, reference);
    std::cout << "max_column_error: " << format_value(match.max_column_error)
              << '\n';
  }
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Algebraic canonical polyadic decomposition of third-order "
               "tensors beyond full factor rank"};
  app.require_subcommand(1);

  // decompose
  auto* dec = app.add_subcommand(
      "decompose", "Decompose a tensor file into rank-R factors");
  std::string dec_input, dec_output, dec_algorithm = "auto";
  int dec_rank = 0, dec_kc = 0;
  double dec_tol = 0.0;
  std::uint64_t dec_seed = 0;
  dec->add_option("--input", dec_input, "Input tensor file")->required();
  dec->add_option("--rank", dec_rank, "Target rank R")->required();
  dec->add_option("--algorithm", dec_algorithm,
                  "auto, alg1 (subset scan), or alg2 (pair scan)")
      ->check(CLI::IsMember({"auto", "alg1", "alg2"}));
  auto* kc_opt = dec->add_option(
      "--kc", dec_kc,
      "Declared k-rank of the third factor (defaults to the reduced "
      "third dimension; smaller values compress the slices first)");
  auto* tol_opt = dec->add_option(
      "--tol", dec_tol, "Override the acceptable reconstruction residual");
  dec->add_option("--seed", dec_seed, "Random seed (default 0)");
  dec->add_option("--output", dec_output, "Output factor file")->required();

  // generate
  auto* gen = app.add_subcommand(
      "generate", "Generate a seeded exact-rank tensor instance");
  std::string gen_dims, gen_output, gen_factors;
  int gen_rank = 0, gen_kc = 0;
  std::uint64_t gen_seed = 0;
  gen->add_option("--dims", gen_dims, "Tensor extents, e.g. 6x6x7")
      ->required();
  gen->add_option("--rank", gen_rank, "Rank of the instance")->required();
  gen->add_option("--seed", gen_seed, "Random seed")->required();
  auto* gen_kc_opt = gen->add_option(
      "--kc", gen_kc, "Target k-rank of the third factor");
  gen->add_option("--output", gen_output, "Output tensor file")->required();
  gen->add_option("--factors", gen_factors,
                  "Also write the generating factors here");

  // selftest
  auto* self = app.add_subcommand("selftest", "Run the built-in test suites");
  std::string suite = "quick";
  self->add_option("--suite", suite, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}));

  // verify
  auto* ver = app.add_subcommand(
      "verify", "Check a factor file against a tensor file");
  std::string ver_tensor, ver_factors, ver_reference;
  ver->add_option("--tensor", ver_tensor, "Tensor file")->required();
  ver->add_option("--factors", ver_factors, "Factor file")->required();
  ver->add_option("--reference", ver_reference,
                  "Reference factor file for column-wise comparison");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (dec->parsed()) {
      return run_decompose(dec_input, dec_rank, dec_algorithm,
                           kc_opt->count() > 0, dec_kc, tol_opt->count() > 0,
                           dec_tol, dec_seed, dec_output);
    }
    if (gen->parsed()) {
      return run_generate(gen_dims, gen_rank, gen_seed,
                          gen_kc_opt->count() > 0, gen_kc, gen_output,
                          gen_factors);
    }
    if (self->parsed()) {
      return run_selftest(suite == "full", std::cout) ? 0 : 2;
    }
    if (ver->parsed()) {
      return run_verify(ver_tensor, ver_factors, ver_reference);
    }
  } catch (const CpdError& error) {
    std::cerr << "error: " << error.what() << '\n';
    return error.is_input_error() ? 1 : 2;
  }
  return 1;
}

}  // namespace cpd
