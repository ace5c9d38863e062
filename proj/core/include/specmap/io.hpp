#pragma once
// ─────────────────────────────────────────────────────────────────────────────
// File formats.  All artifacts are JSON with complex scalars as [re, im]
// pairs and every numeric emitted with 17 significant digits, so a
// write-then-read round trip reproduces doubles exactly.  Stability reports
// additionally serialize to plot-ready CSV.
//
//   SpectralData   {"rho": [[re,im],…], "alpha": [[re,im],…],
//                   "omega": [re,im]?, "index_set": [int]?,
//                   "multiplicities": [int]?}
//   ProblemTriple  {"grid_nodes": M, "q": [[re,im],…] (M+1), "h": [re,im],
//                   "H": [re,im]}
//   CauchyData     {"grid_nodes": M, "N": [[re,im],…], "N0": [[re,im],…],
//                   "omega": [re,im], "omega0": [re,im]}
//   reconstruction {"q": [[re,im],…], "h": …, "H": …, "residual_max": r,
//                   "inv_norm": K, "n_trunc": N, "grid_nodes": M}
//   set block      {"kind": "B_Omega"|"B_Omega_ring"|"V_Omega_delta"|
//                   "V_Omega_tau_plus"|"V_Omega_tau_minus"|"P_Q"|"P_QA",
//                   "Omega"?, "delta"?, "tau"?: [real], "Q"?, "A"?, "K"?}
//   validate input data keys (spectral or problem) + "set": {…}
//   sweep input    SpectralData keys + "scheme": name, "magnitudes": [real],
//                   "seed"?: int, "index"?: int
//
// Parsers throw schema_error with the offending key in the message.
// ─────────────────────────────────────────────────────────────────────────────

#include <optional>
#include <string>

#include "specmap/stability.hpp"
#include "specmap/types.hpp"

namespace specmap {

// ── Number formatting ───────────────────────────────────────────────────────

std::string format_number(double v);   // decimal, 17 significant digits
std::string format_complex(complex z); // "[re,im]" with format_number parts

// ── Parsing ─────────────────────────────────────────────────────────────────

SpectralData parse_spectral_data(const std::string& json_text);
ProblemTriple parse_problem_triple(const std::string& json_text);
CauchyData parse_cauchy_data(const std::string& json_text);

struct ValidateInput {
  std::optional<SpectralData> spectral;  // exactly one of the two is set
  std::optional<ProblemTriple> problem;
  SetSpec set;
};
ValidateInput parse_validate_input(const std::string& json_text);

struct SweepInput {
  SpectralData data;
  PerturbSpec scheme;
  std::vector<double> magnitudes;
};
SweepInput parse_sweep_input(const std::string& json_text);

// ── Serialization ───────────────────────────────────────────────────────────

std::string to_json(const SpectralData& S);
std::string to_json(const ProblemTriple& P);
std::string to_json(const CauchyData& C);
std::string to_json(const ReconstructionResult& R);
std::string to_json(const MembershipReport& report);
std::string to_json(const StabilityReport& report);

// CSV columns: magnitude, distance, difference, ratio, member_flags,
// inv_norm; member_flags packs (base, perturbed) as two 0/1 digits.
std::string to_csv(const StabilityReport& report);

// ── Files ───────────────────────────────────────────────────────────────────

std::string read_text_file(const std::string& path);  // schema_error if absent
void write_text_file(const std::string& path, const std::string& content);

}  // namespace specmap
