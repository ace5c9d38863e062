#include "specmap/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace specmap {

// ── Number formatting ───────────────────────────────────────────────────────

std::string format_number(double v) {
  // Shortest decimal that parses back to the same double (std::to_chars
  // guarantees the round trip), so serialized artifacts are lossless and
  // byte-deterministic.
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_complex(complex z) {
  return "[" + format_number(z.real()) + "," + format_number(z.imag()) + "]";
}

// ── Writer helpers ──────────────────────────────────────────────────────────

namespace {

std::string complex_array(const std::vector<complex>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_complex(v[i]);
  }
  out += "]";
  return out;
}

std::string int_array(const std::vector<int>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  out += "]";
  return out;
}

std::string escape_string(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char hex[8];
          std::snprintf(hex, sizeof(hex), "\\u%04x", c);
          out += hex;
        } else {
          out += c;
        }
    }
  }
  out += "\"";
  return out;
}

}  // namespace

// ── Serialization ───────────────────────────────────────────────────────────

std::string to_json(const SpectralData& S) {
  std::string out = "{\n";
  out += "  \"rho\": " + complex_array(S.rho) + ",\n";
  out += "  \"alpha\": " + complex_array(S.alpha);
  if (S.omega.has_value())
    out += ",\n  \"omega\": " + format_complex(*S.omega);
  if (!S.index_set.empty()) {
    out += ",\n  \"index_set\": " + int_array(S.index_set);
    out += ",\n  \"multiplicities\": " + int_array(S.multiplicities);
  }
  out += "\n}\n";
  return out;
}

std::string to_json(const ProblemTriple& P) {
  std::string out = "{\n";
  out += "  \"grid_nodes\": " + std::to_string(P.q.nodes()) + ",\n";
  out += "  \"q\": " + complex_array(P.q.values) + ",\n";
  out += "  \"h\": " + format_complex(P.h) + ",\n";
  out += "  \"H\": " + format_complex(P.H) + "\n";
  out += "}\n";
  return out;
}

std::string to_json(const CauchyData& C) {
  std::string out = "{\n";
  out += "  \"grid_nodes\": " + std::to_string(C.N.nodes()) + ",\n";
  out += "  \"N\": " + complex_array(C.N.values) + ",\n";
  out += "  \"N0\": " + complex_array(C.N0.values) + ",\n";
  out += "  \"omega\": " + format_complex(C.omega) + ",\n";
  out += "  \"omega0\": " + format_complex(C.omega0) + "\n";
  out += "}\n";
  return out;
}

std::string to_json(const ReconstructionResult& R) {
  std::string out = "{\n";
  out += "  \"grid_nodes\": " + std::to_string(R.P.q.nodes()) + ",\n";
  out += "  \"q\": " + complex_array(R.P.q.values) + ",\n";
  out += "  \"h\": " + format_complex(R.P.h) + ",\n";
  out += "  \"H\": " + format_complex(R.P.H) + ",\n";
  out += "  \"residual_max\": " + format_number(R.residual_max) + ",\n";
  out += "  \"eps_deriv_mismatch\": " + format_number(R.eps_deriv_mismatch) +
         ",\n";
  out += "  \"inv_norm\": " + format_number(R.inv_norm) + ",\n";
  out += "  \"n_trunc\": " + std::to_string(R.n_trunc) + "\n";
  out += "}\n";
  return out;
}

std::string to_json(const MembershipReport& report) {
  std::string out = "{\n";
  out += std::string("  \"member\": ") + (report.member ? "true" : "false") +
         ",\n";
  out += "  \"violations\": [";
  for (size_t i = 0; i < report.violations.size(); ++i) {
    if (i) out += ",";
    out += "\n    {\"index\": " + std::to_string(report.violations[i].index) +
           ", \"what\": " + escape_string(report.violations[i].what) + "}";
  }
  if (!report.violations.empty()) out += "\n  ";
  out += "]\n}\n";
  return out;
}

std::string to_json(const StabilityReport& report) {
  std::string out = "{\n";
  out += "  \"scheme\": " + escape_string(report.scheme) + ",\n";
  out += "  \"distance_kind\": " + escape_string(report.distance_kind) + ",\n";
  out += "  \"rows\": [";
  for (size_t i = 0; i < report.rows.size(); ++i) {
    const StabilityRow& r = report.rows[i];
    if (i) out += ",";
    out += "\n    {\"magnitude\": " + format_number(r.magnitude);
    out += ", \"distance\": " + format_number(r.distance);
    out += ", \"difference\": " + format_number(r.difference);
    out += ", \"ratio\": " + format_number(r.ratio);
    out += std::string(", \"base_member\": ") +
           (r.base_member ? "true" : "false");
    out += std::string(", \"pert_member\": ") +
           (r.pert_member ? "true" : "false");
    out += ", \"inv_norm\": " + format_number(r.inv_norm) + "}";
  }
  if (!report.rows.empty()) out += "\n  ";
  out += "]\n}\n";
  return out;
}

std::string to_csv(const StabilityReport& report) {
  std::string out = "magnitude,distance,difference,ratio,member_flags,inv_norm\n";
  for (const StabilityRow& r : report.rows) {
    out += format_number(r.magnitude) + "," + format_number(r.distance) + "," +
           format_number(r.difference) + "," + format_number(r.ratio) + ",";
    out += r.base_member ? '1' : '0';
    out += r.pert_member ? '1' : '0';
    out += "," + format_number(r.inv_norm) + "\n";
  }
  return out;
}

// ── Parsing ─────────────────────────────────────────────────────────────────

namespace {

using nlohmann::json;

json parse_top_level(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw schema_error("input is not valid JSON");
  if (!j.is_object())
    throw schema_error("top-level JSON value must be an object");
  return j;
}

const json& require_key(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end())
    throw schema_error(std::string("missing key \"") + key + "\"");
  return *it;
}

complex read_complex(const json& v, const char* key) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw schema_error(std::string("key \"") + key +
                       "\" must be a [re,im] pair");
  return complex{v[0].get<double>(), v[1].get<double>()};
}

std::vector<complex> read_complex_array(const json& v, const char* key) {
  if (!v.is_array())
    throw schema_error(std::string("key \"") + key +
                       "\" must be an array of [re,im] pairs");
  std::vector<complex> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(read_complex(e, key));
  return out;
}

std::vector<int> read_int_array(const json& v, const char* key) {
  if (!v.is_array())
    throw schema_error(std::string("key \"") + key +
                       "\" must be an array of integers");
  std::vector<int> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number_integer())
      throw schema_error(std::string("key \"") + key +
                         "\" must be an array of integers");
    out.push_back(e.get<int>());
  }
  return out;
}

double read_number(const json& v, const char* key) {
  if (!v.is_number())
    throw schema_error(std::string("key \"") + key + "\" must be a number");
  return v.get<double>();
}

int read_integer(const json& v, const char* key) {
  if (!v.is_number_integer())
    throw schema_error(std::string("key \"") + key + "\" must be an integer");
  return v.get<int>();
}

SpectralData spectral_from_json(const json& j) {
  SpectralData S;
  S.rho = read_complex_array(require_key(j, "rho"), "rho");
  S.alpha = read_complex_array(require_key(j, "alpha"), "alpha");
  if (S.rho.size() != S.alpha.size())
    throw schema_error("keys \"rho\" and \"alpha\" must have equal lengths");
  if (const auto it = j.find("omega"); it != j.end())
    S.omega = read_complex(*it, "omega");
  if (const auto it = j.find("index_set"); it != j.end())
    S.index_set = read_int_array(*it, "index_set");
  if (const auto it = j.find("multiplicities"); it != j.end())
    S.multiplicities = read_int_array(*it, "multiplicities");
  if (S.index_set.size() != S.multiplicities.size())
    throw schema_error(
        "keys \"index_set\" and \"multiplicities\" must have equal lengths");
  return S;
}

GridFunction read_grid_function(const json& j, const char* key,
                                int grid_nodes) {
  auto values = read_complex_array(require_key(j, key), key);
  if (static_cast<int>(values.size()) != grid_nodes + 1)
    throw schema_error(std::string("key \"") + key + "\" must hold " +
                       std::to_string(grid_nodes + 1) +
                       " samples (grid_nodes + 1)");
  return GridFunction(std::move(values));
}

ProblemTriple problem_from_json(const json& j) {
  const int grid_nodes = read_integer(require_key(j, "grid_nodes"),
                                      "grid_nodes");
  if (grid_nodes < 2)
    throw schema_error("key \"grid_nodes\" must be at least 2");
  ProblemTriple P;
  P.q = read_grid_function(j, "q", grid_nodes);
  P.h = read_complex(require_key(j, "h"), "h");
  P.H = read_complex(require_key(j, "H"), "H");
  return P;
}

SetKind set_kind_from_name(const std::string& name) {
  if (name == "B_Omega") return SetKind::B_Omega;
  if (name == "B_Omega_ring") return SetKind::B_Omega_ring;
  if (name == "V_Omega_delta") return SetKind::V_Omega_delta;
  if (name == "V_Omega_tau_plus") return SetKind::V_Omega_tau_plus;
  if (name == "V_Omega_tau_minus") return SetKind::V_Omega_tau_minus;
  if (name == "P_Q") return SetKind::P_Q;
  if (name == "P_QA") return SetKind::P_QA;
  throw schema_error("unknown set kind \"" + name + "\"");
}

SetSpec set_from_json(const json& j) {
  const json& kind = require_key(j, "kind");
  if (!kind.is_string())
    throw schema_error("key \"kind\" must be a string");
  SetSpec spec;
  spec.kind = set_kind_from_name(kind.get<std::string>());
  if (const auto it = j.find("Omega"); it != j.end())
    spec.Omega = read_number(*it, "Omega");
  if (const auto it = j.find("delta"); it != j.end())
    spec.delta = read_number(*it, "delta");
  if (const auto it = j.find("Q"); it != j.end())
    spec.Q = read_number(*it, "Q");
  if (const auto it = j.find("A"); it != j.end())
    spec.A = read_number(*it, "A");
  if (const auto it = j.find("K"); it != j.end())
    spec.K = read_number(*it, "K");
  if (const auto it = j.find("tau"); it != j.end()) {
    if (!it->is_array())
      throw schema_error("key \"tau\" must be an array of numbers");
    for (const auto& e : *it) spec.tau.push_back(read_number(e, "tau"));
  }
  return spec;
}

PerturbScheme scheme_from_name(const std::string& name) {
  if (name == "gaussian_tail") return PerturbScheme::gaussian_tail;
  if (name == "single_entry") return PerturbScheme::single_entry;
  if (name == "pair_split") return PerturbScheme::pair_split;
  if (name == "alpha_degenerate") return PerturbScheme::alpha_degenerate;
  throw schema_error("unknown scheme \"" + name + "\"");
}

}  // namespace

SpectralData parse_spectral_data(const std::string& json_text) {
  return spectral_from_json(parse_top_level(json_text));
}

ProblemTriple parse_problem_triple(const std::string& json_text) {
  return problem_from_json(parse_top_level(json_text));
}

CauchyData parse_cauchy_data(const std::string& json_text) {
  const json j = parse_top_level(json_text);
  const int grid_nodes = read_integer(require_key(j, "grid_nodes"),
                                      "grid_nodes");
  if (grid_nodes < 2)
    throw schema_error("key \"grid_nodes\" must be at least 2");
  CauchyData C;
  C.N = read_grid_function(j, "N", grid_nodes);
  C.N0 = read_grid_function(j, "N0", grid_nodes);
  C.omega = read_complex(require_key(j, "omega"), "omega");
  C.omega0 = read_complex(require_key(j, "omega0"), "omega0");
  return C;
}

ValidateInput parse_validate_input(const std::string& json_text) {
  const json j = parse_top_level(json_text);
  ValidateInput input;
  input.set = set_from_json(require_key(j, "set"));
  if (j.contains("rho")) {
    input.spectral = spectral_from_json(j);
  } else if (j.contains("q")) {
    input.problem = problem_from_json(j);
  } else {
    throw schema_error(
        "validate input needs spectral data (\"rho\"/\"alpha\") or a problem "
        "triple (\"grid_nodes\"/\"q\"/\"h\"/\"H\") next to \"set\"");
  }
  return input;
}

SweepInput parse_sweep_input(const std::string& json_text) {
  const json j = parse_top_level(json_text);
  SweepInput input;
  input.data = spectral_from_json(j);

  const json& scheme = require_key(j, "scheme");
  if (!scheme.is_string())
    throw schema_error("key \"scheme\" must be a string");
  input.scheme.scheme = scheme_from_name(scheme.get<std::string>());

  const json& mags = require_key(j, "magnitudes");
  if (!mags.is_array())
    throw schema_error("key \"magnitudes\" must be an array of numbers");
  for (const auto& e : mags)
    input.magnitudes.push_back(read_number(e, "magnitudes"));

  if (const auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_integer())
      throw schema_error("key \"seed\" must be an integer");
    input.scheme.seed = it->get<std::uint64_t>();
  }
  if (const auto it = j.find("index"); it != j.end())
    input.scheme.index = read_integer(*it, "index");
  return input;
}

// ── Files ───────────────────────────────────────────────────────────────────

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw schema_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw schema_error("cannot write file: " + path);
  out << content;
}

}  // namespace specmap
