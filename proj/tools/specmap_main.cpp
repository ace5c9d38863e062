// Command-line driver: forward and inverse spectral solvers, Cauchy-data
// reconstruction, roundtrip verification, stability sweeps, and admissible-set
// validation.  All artifacts are JSON (stability adds CSV); every run is
// byte-deterministic for fixed inputs and flags.
//
// Exit codes:  0 success (validate: member; roundtrip: within tolerance)
//              1 malformed input or command line
//              2 validation failure (bad parameters, non-member, over
//                tolerance)
//              3 numerical breakdown (singular system, lost roots)

#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "specmap/contour.hpp"
#include "specmap/direct.hpp"
#include "specmap/io.hpp"
#include "specmap/main_equation.hpp"
#include "specmap/spectral_core.hpp"
#include "specmap/stability.hpp"
#include "specmap/types.hpp"

namespace {

using specmap::complex;
using specmap::GridFunction;

struct Options {
  std::string input;
  std::string output;
  int n_modes = 12;
  int grid_nodes = 1024;
  int n_trunc = 30;
  int contour_index = 2;
  int contour_nodes = 64;
  int fourier_modes = 64;
  double tolerance = 1e-2;
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool with_derivative = false;
  bool explicit_inverse_norm = false;
};

specmap::ReconstructConfig simple_config(const Options& opt) {
  specmap::ReconstructConfig config;
  config.n_trunc = opt.n_trunc;
  config.grid_nodes = opt.grid_nodes;
  config.explicit_inverse_norm = opt.explicit_inverse_norm;
  return config;
}

specmap::ContourConfig contour_config(const Options& opt) {
  specmap::ContourConfig config;
  config.contour_index = opt.contour_index;
  config.contour_nodes = opt.contour_nodes;
  config.n_trunc = opt.n_trunc;
  config.grid_nodes = opt.grid_nodes;
  config.explicit_inverse_norm = opt.explicit_inverse_norm;
  return config;
}

// Linear interpolation on the uniform grid; exact at grid nodes, so nested
// grids compare without resampling error.
complex sample_grid(const GridFunction& f, double x) {
  const double t = x / f.dx();
  const int j = std::min(static_cast<int>(t), f.nodes() - 1);
  const double w = t - j;
  return (1.0 - w) * f.values[j] + w * f.values[j + 1];
}

double triple_difference(const specmap::ProblemTriple& coarse,
                         const specmap::ProblemTriple& fine) {
  std::vector<complex> diff(coarse.q.values.size());
  for (int j = 0; j <= coarse.q.nodes(); ++j)
    diff[j] = coarse.q.values[j] - sample_grid(fine.q, coarse.q.x_at(j));
  return specmap::grid_l2_norm(GridFunction(std::move(diff))) +
         std::abs(coarse.h - fine.h) + std::abs(coarse.H - fine.H);
}

std::string reconstruction_report(const specmap::ReconstructionResult& R,
                                  bool with_derivative) {
  std::string body = specmap::to_json(R);
  if (with_derivative) {
    std::string eps = "  \"epsilon\": [";
    for (size_t i = 0; i < R.epsilon.values.size(); ++i) {
      if (i) eps += ",";
      eps += specmap::format_complex(R.epsilon.values[i]);
    }
    eps += "],\n";
    body.insert(body.find("  \"residual_max\""), eps);
  }
  return body;
}

// Reconstruct from spectral data, dispatching on the group structure: simple
// spectra use the divided-difference system, grouped spectra the contour
// blocks.
specmap::ReconstructionResult reconstruct(const specmap::SpectralData& S,
                                          const Options& opt) {
  if (S.all_simple())
    return specmap::epsilon_and_reconstruct(S, simple_config(opt));
  return specmap::inverse_solve_multiple(S, contour_config(opt));
}

int cmd_forward(const Options& opt) {
  const auto P = specmap::parse_problem_triple(
      specmap::read_text_file(opt.input));
  const auto S = specmap::forward_problem(P, opt.n_modes);
  specmap::write_text_file(opt.output, specmap::to_json(S));

  const auto C = specmap::cauchy_data(P, opt.fourier_modes);
  specmap::write_text_file(opt.output + ".cauchy.json", specmap::to_json(C));
  return 0;
}

int cmd_inverse(const Options& opt) {
  const auto S = specmap::parse_spectral_data(
      specmap::read_text_file(opt.input));
  const auto R = reconstruct(S, opt);
  specmap::write_text_file(opt.output,
                           reconstruction_report(R, opt.with_derivative));
  return 0;
}

int cmd_inverse_cauchy(const Options& opt) {
  const auto C = specmap::parse_cauchy_data(
      specmap::read_text_file(opt.input));
  const auto R = specmap::inverse_from_cauchy(C, contour_config(opt));
  specmap::write_text_file(opt.output,
                           reconstruction_report(R, opt.with_derivative));
  return 0;
}

int cmd_roundtrip(const Options& opt) {
  const auto P = specmap::parse_problem_triple(
      specmap::read_text_file(opt.input));
  const auto S = specmap::forward_problem(P, opt.n_modes);
  const auto R = reconstruct(S, opt);

  const double combined = triple_difference(R.P, P);
  const bool within = combined <= opt.tolerance;

  std::string summary = "{\n";
  summary += "  \"combined_error\": " + specmap::format_number(combined) +
             ",\n";
  summary += std::string("  \"within_tolerance\": ") +
             (within ? "true" : "false") + ",\n";
  summary += "  \"tolerance\": " + specmap::format_number(opt.tolerance) +
             ",\n";
  summary += "  \"n_modes\": " + std::to_string(opt.n_modes) + ",\n";
  summary += "  \"n_trunc\": " + std::to_string(R.n_trunc) + ",\n";
  summary += "  \"grid_nodes\": " + std::to_string(R.grid_nodes) + ",\n";
  summary += "  \"residual_max\": " + specmap::format_number(R.residual_max) +
             ",\n";
  summary += "  \"inv_norm\": " + specmap::format_number(R.inv_norm) + "\n";
  summary += "}\n";
  specmap::write_text_file(opt.output, summary);
  return within ? 0 : 2;
}

int cmd_stability(const Options& opt) {
  auto input = specmap::parse_sweep_input(specmap::read_text_file(opt.input));
  if (opt.seed_given) input.scheme.seed = opt.seed;

  specmap::StabilityReport report;
  if (input.data.all_simple() &&
      input.scheme.scheme != specmap::PerturbScheme::pair_split) {
    report = specmap::lipschitz_sweep(input.data, input.magnitudes,
                                      input.scheme, simple_config(opt));
  } else {
    report = specmap::lipschitz_sweep(input.data, input.magnitudes,
                                      input.scheme, contour_config(opt));
  }

  specmap::write_text_file(opt.output, specmap::to_csv(report));
  specmap::write_text_file(opt.output + ".json", specmap::to_json(report));
  return 0;
}

int cmd_validate(const Options& opt) {
  const auto input = specmap::parse_validate_input(
      specmap::read_text_file(opt.input));
  const specmap::MembershipReport report =
      input.spectral.has_value()
          ? specmap::validate_membership(*input.spectral, input.set)
          : specmap::validate_membership(*input.problem, input.set);
  specmap::write_text_file(opt.output, specmap::to_json(report));
  return report.member ? 0 : 2;
}

void add_io_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--input", opt.input, "input JSON file")->required();
  cmd->add_option("--output", opt.output, "output file")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "spectral solvers for the complex Sturm-Liouville problem on (0, pi)"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* forward =
      app.add_subcommand("forward", "eigenvalues, weights, and Cauchy data "
                                    "from a problem triple (q, h, H)");
  add_io_options(forward, opt);
  forward->add_option("--n-modes", opt.n_modes, "number of eigenvalues");
  forward->add_option("--fourier-modes", opt.fourier_modes,
                      "cosine/sine modes in the Cauchy companion artifact");

  CLI::App* inverse =
      app.add_subcommand("inverse", "reconstruct (q, h, H) from spectral "
                                    "data");
  add_io_options(inverse, opt);
  inverse->add_option("--n-trunc", opt.n_trunc, "spectral truncation order");
  inverse->add_option("--grid-nodes", opt.grid_nodes, "output grid nodes");
  inverse->add_option("--contour-index", opt.contour_index,
                      "contour index N for grouped spectra");
  inverse->add_option("--contour-nodes", opt.contour_nodes,
                      "quadrature nodes on the contour");
  inverse->add_flag("--with-derivative", opt.with_derivative,
                    "include the accumulator profile in the report");
  inverse->add_flag("--explicit-inverse-norm", opt.explicit_inverse_norm,
                    "form the dense inverse for the exact norm");

  CLI::App* inverse_cauchy = app.add_subcommand(
      "inverse-cauchy", "reconstruct (q, h, H) from boundary Cauchy data");
  add_io_options(inverse_cauchy, opt);
  inverse_cauchy->add_option("--n-trunc", opt.n_trunc,
                             "spectral truncation order");
  inverse_cauchy->add_option("--grid-nodes", opt.grid_nodes,
                             "output grid nodes");
  inverse_cauchy->add_option("--contour-index", opt.contour_index,
                             "contour index N");
  inverse_cauchy->add_option("--contour-nodes", opt.contour_nodes,
                             "quadrature nodes on the contour");
  inverse_cauchy->add_flag("--with-derivative", opt.with_derivative,
                           "include the accumulator profile in the report");
  inverse_cauchy->add_flag("--explicit-inverse-norm",
                           opt.explicit_inverse_norm,
                           "form the dense inverse for the exact norm");

  CLI::App* roundtrip = app.add_subcommand(
      "roundtrip", "forward then inverse; gate the combined error");
  add_io_options(roundtrip, opt);
  roundtrip->add_option("--n-modes", opt.n_modes, "number of eigenvalues");
  roundtrip->add_option("--n-trunc", opt.n_trunc, "spectral truncation order");
  roundtrip->add_option("--grid-nodes", opt.grid_nodes, "output grid nodes");
  roundtrip->add_option("--contour-index", opt.contour_index,
                        "contour index N for grouped spectra");
  roundtrip->add_option("--contour-nodes", opt.contour_nodes,
                        "quadrature nodes on the contour");
  roundtrip->add_option("--tolerance", opt.tolerance,
                        "combined-error threshold");
  roundtrip->add_flag("--explicit-inverse-norm", opt.explicit_inverse_norm,
                      "form the dense inverse for the exact norm");

  CLI::App* stability = app.add_subcommand(
      "stability", "perturbation sweep: difference vs. data distance");
  add_io_options(stability, opt);
  stability->add_option("--n-trunc", opt.n_trunc, "spectral truncation order");
  stability->add_option("--grid-nodes", opt.grid_nodes, "output grid nodes");
  stability->add_option("--contour-index", opt.contour_index,
                        "contour index N for grouped spectra");
  stability->add_option("--contour-nodes", opt.contour_nodes,
                        "quadrature nodes on the contour");
  auto* seed_opt = stability->add_option(
      "--seed", opt.seed, "noise seed (overrides the input file)");
  stability->add_flag("--explicit-inverse-norm", opt.explicit_inverse_norm,
                      "form the dense inverse for the exact norm");

  CLI::App* validate = app.add_subcommand(
      "validate", "admissible-set membership of data or problem");
  add_io_options(validate, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  opt.seed_given = seed_opt->count() > 0;

  try {
    if (forward->parsed()) return cmd_forward(opt);
    if (inverse->parsed()) return cmd_inverse(opt);
    if (inverse_cauchy->parsed()) return cmd_inverse_cauchy(opt);
    if (roundtrip->parsed()) return cmd_roundtrip(opt);
    if (stability->parsed()) return cmd_stability(opt);
    if (validate->parsed()) return cmd_validate(opt);
  } catch (const specmap::schema_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const specmap::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const specmap::numeric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
