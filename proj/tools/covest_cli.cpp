// covest: command-line front end for the covariant estimation library.
//
// Exit codes: 0 success, 1 usage error, 2 verification failure.
#include "covest/character_integrals.hpp"
#include "covest/phase.hpp"
#include "covest/protocol_sim.hpp"
#include "covest/su2_estimation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

using json = nlohmann::ordered_json;
using namespace covest;
using std::numbers::pi;

namespace {

constexpr std::uint64_t kDefaultSeed = 20250101;

enum ExitCode { kOk = 0, kUsage = 1, kVerification = 2 };

struct Output {
  std::string format = "json";
  std::string path;
};

struct Report {
  json result;
  std::string csv;  // filled when the command has a tabular form
  int exit_code = kOk;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json manifest(const std::string& command, json params, std::optional<std::uint64_t> seed) {
  return {{"command", command},
          {"params", std::move(params)},
          {"seed", seed ? json(*seed) : json(nullptr)},
          {"version", COVEST_VERSION},
          {"timestamp", utc_timestamp()}};
}

std::string csv_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Writes to --output, else $COVEST_OUTPUT_DIR/<command>.<ext>, else stdout.
// CSV files written to disk get a <file>.manifest.json sidecar.
void emit(const std::string& command, const Output& out, const json& man, const Report& report) {
  const bool csv = out.format == "csv";
  std::string body;
  if (csv) {
    body = report.csv;
  } else {
    json doc;
    doc["manifest"] = man;
    doc["result"] = report.result;
    body = doc.dump(2) + "\n";
  }
  std::filesystem::path path;
  if (!out.path.empty()) {
    path = out.path;
  } else if (const char* dir = std::getenv("COVEST_OUTPUT_DIR"); dir && *dir) {
    path = std::filesystem::path(dir) / (command + (csv ? ".csv" : ".json"));
  }
  if (path.empty()) {
    std::cout << body;
    return;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream(path) << body;
  if (csv) std::ofstream(path.string() + ".manifest.json") << man.dump(2) << "\n";
}

json nullable_ratio(double error, double asymptote) {
  return std::isfinite(asymptote) && asymptote > 0 ? json(error / asymptote) : json(nullptr);
}

Report phase_opt(int n, const std::string& method) {
  PhaseInputState input = method == "exact" ? optimal_input(n).input : bdm_input(n);
  const double error = min_covariant_error(input);
  const double asymptote = n >= 1 ? asymptotic_error(n) : std::nan("");
  Report r;
  json amplitudes = json::array();
  r.csv = "index,amplitude\n";
  for (Eigen::Index k = 0; k < input.amplitudes().size(); ++k) {
    const double a = input.amplitudes()(k).real();
    amplitudes.push_back(a);
    r.csv += std::to_string(k) + "," + csv_number(a) + "\n";
  }
  r.result = {{"n", n},
              {"method", method},
              {"amplitudes", amplitudes},
              {"error", error},
              {"asymptote", n >= 1 ? json(asymptote) : json(nullptr)},
              {"ratio", nullable_ratio(error, asymptote)}};
  return r;
}

json feasibility_json(const FeasibilityReport& report) {
  json usable = json::array();
  for (int i : report.usable) usable.push_back(i);
  return {{"usable_blocks", usable},
          {"achievable_error", report.achievable_error ? json(*report.achievable_error) : json(nullptr)}};
}

Report su2_design(int n, ReferenceMode mode) {
  const Su2Design design = design_optimal(n, mode);
  const FeasibilityReport feas = self_entanglement_feasible(n);
  const double asymptote = pi * pi / (static_cast<double>(n) * n);
  Report r;
  json blocks = json::array();
  r.csv = "block,dim,multiplicity,amplitude,self_entangled_feasible\n";
  for (int i = 0; i < block_count(n); ++i) {
    const BlockFeasibility& b = feas.blocks[i];
    const double a = i < design.blocks.blocks() ? design.blocks.amplitudes()(i) : 0.0;
    const json mult = b.multiplicity_saturated ? json(nullptr) : json(b.multiplicity);
    blocks.push_back({{"block", i},
                      {"dim", b.dim},
                      {"multiplicity", mult},
                      {"multiplicity_saturated", b.multiplicity_saturated},
                      {"amplitude", a},
                      {"self_entangled_feasible", b.feasible}});
    r.csv += std::to_string(i) + "," + std::to_string(b.dim) + "," +
             (b.multiplicity_saturated ? std::string("saturated") : std::to_string(b.multiplicity)) + "," +
             csv_number(a) + "," + (b.feasible ? "true" : "false") + "\n";
  }
  const Eigen::MatrixXcd& t = design.seed.entries();
  const bool all_ones = (t - Eigen::MatrixXcd::Ones(t.rows(), t.cols())).cwiseAbs().maxCoeff() < 1e-12;
  r.result = {{"n", n},
              {"mode", to_string(mode)},
              {"parity", n % 2 == 1 ? "odd" : "even"},
              {"blocks", blocks},
              {"seed", {{"form", "rank-one phase-aligned"}, {"dimension", t.rows()}, {"all_ones", all_ones}}},
              {"error", design.error},
              {"asymptote", asymptote},
              {"ratio", design.error / asymptote},
              {"feasibility", feasibility_json(feas)}};
  return r;
}

Report verify_integrals(int kmax, double tol) {
  struct Row {
    const char* identity;
    int entries = 0;
    double worst = 0;
  };
  Row single{"single_irrep_integral"}, su2{"su2_kernel_delta"}, phase{"phase_kernel_delta"},
      match{"su2_phase_kernel_match"};
  for (int j = 1; j <= 2 * kmax; ++j) {
    ++single.entries;
    single.worst = std::max(single.worst, std::abs(su2_single_irrep_integral(j) - (j == 1 ? 0.75 : 0.5)));
  }
  for (int k = 1; k <= kmax; ++k)
    for (int l = 1; l <= kmax; ++l) {
      const double target = 0.5 * (k == l) - 0.25 * (std::abs(k - l) == 1);
      const double s = su2_error_kernel(k, l);
      const double p = phase_error_kernel(k, l);
      ++su2.entries;
      ++phase.entries;
      ++match.entries;
      su2.worst = std::max(su2.worst, std::abs(s - target));
      phase.worst = std::max(phase.worst, std::abs(p - target));
      match.worst = std::max(match.worst, std::abs(s - p));
    }
  Report r;
  json rows = json::array();
  r.csv = "identity,entries,worst_deviation,pass\n";
  bool all = true;
  for (const Row& row : {single, su2, phase, match}) {
    const bool pass = row.worst <= tol;
    all = all && pass;
    rows.push_back({{"identity", row.identity}, {"entries", row.entries}, {"worst_deviation", row.worst}, {"pass", pass}});
    r.csv += std::string(row.identity) + "," + std::to_string(row.entries) + "," + csv_number(row.worst) + "," +
             (pass ? "true" : "false") + "\n";
  }
  r.result = {{"kmax", kmax}, {"tol", tol}, {"identities", rows}, {"pass", all}};
  r.exit_code = all ? kOk : kVerification;
  return r;
}

Report simulate_cmd(const SimConfig& config, ReferenceMode mode) {
  const SimResult s = config.protocol == Protocol::phase ? simulate(config, optimal_input(config.n))
                                                         : simulate(config, design_optimal(config.n, mode));
  const bool pass = std::abs(s.z_score) < 4;
  Report r;
  r.result = {{"protocol", to_string(config.protocol)},
              {"n", config.n},
              {"trials", s.trials},
              {"empirical_mean_error", s.empirical_mean_error},
              {"standard_error", s.standard_error},
              {"closed_form", s.closed_form},
              {"z_score", s.z_score},
              {"pass", pass}};
  r.csv = "protocol,n,trials,seed,empirical_mean_error,standard_error,closed_form,z_score\n" +
          to_string(config.protocol) + "," + std::to_string(config.n) + "," + std::to_string(s.trials) + "," +
          std::to_string(config.seed) + "," + csv_number(s.empirical_mean_error) + "," +
          csv_number(s.standard_error) + "," + csv_number(s.closed_form) + "," + csv_number(s.z_score) + "\n";
  r.exit_code = pass ? kOk : kVerification;
  return r;
}

Report scaling(int max_n, int step) {
  Report r;
  json rows = json::array();
  r.csv = "n,phase_exact,phase_bdm,phase_asymptote,su2_error,su2_asymptote\n";
  for (int n = step; n <= max_n; n += step) {
    const double exact = optimal_input(n).error;
    const double bdm = min_covariant_error(bdm_input(n));
    const double phase_asym = asymptotic_error(n);
    const double su2 = design_optimal(n, ReferenceMode::external).error;
    const double su2_asym = pi * pi / (static_cast<double>(n) * n);
    rows.push_back({{"n", n},
                    {"phase_exact", exact},
                    {"phase_bdm", bdm},
                    {"phase_asymptote", phase_asym},
                    {"su2_error", su2},
                    {"su2_asymptote", su2_asym}});
    r.csv += std::to_string(n) + "," + csv_number(exact) + "," + csv_number(bdm) + "," + csv_number(phase_asym) +
             "," + csv_number(su2) + "," + csv_number(su2_asym) + "\n";
  }
  r.result = {{"max_n", max_n}, {"step", step}, {"rows", rows}};
  return r;
}

void add_output_options(CLI::App* cmd, Output& out) {
  cmd->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("-o,--output", out.path, "Output file (default: $COVEST_OUTPUT_DIR/<command>.<ext> or stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covariant phase and SU(2) estimation toolkit"};
  app.set_version_flag("--version", std::string(COVEST_VERSION));
  app.require_subcommand(1);
  Output out;

  int n = 1;
  std::string method = "exact";
  auto* phase_cmd = app.add_subcommand("phase-opt", "Optimal or BDM phase-estimation input state");
  phase_cmd->add_option("-n,--n", n, "Number of uses")->required();
  phase_cmd->add_option("--method", method, "exact or bdm")->check(CLI::IsMember({"exact", "bdm"}));
  add_output_options(phase_cmd, out);

  std::string mode = "external";
  auto* su2_cmd = app.add_subcommand("su2-design", "Optimal SU(2) estimation design");
  su2_cmd->add_option("-n,--n", n, "Number of uses")->required();
  su2_cmd->add_option("--mode", mode, "external or self-entangled")
      ->check(CLI::IsMember({"external", "self-entangled"}));
  add_output_options(su2_cmd, out);

  int kmax = 30;
  double tol = 1e-10;
  auto* verify_cmd = app.add_subcommand("verify-integrals", "Check the character integral identities");
  verify_cmd->add_option("--kmax", kmax, "Largest kernel index");
  verify_cmd->add_option("--tol", tol, "Absolute tolerance");
  add_output_options(verify_cmd, out);

  SimConfig config;
  config.seed = kDefaultSeed;
  std::string protocol = "phase";
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo run of the optimal protocol");
  sim_cmd->add_option("--protocol", protocol, "phase or su2")->check(CLI::IsMember({"phase", "su2"}));
  sim_cmd->add_option("-n,--n", config.n, "Number of uses")->required();
  sim_cmd->add_option("--trials", config.trials, "Number of trials");
  sim_cmd->add_option("--seed", config.seed, "RNG seed");
  sim_cmd->add_option("--partitions", config.partitions, "Independent RNG streams (run in parallel)");
  sim_cmd->add_option("--grid", config.grid_size, "Inverse-CDF grid size (power of two >= 256)");
  sim_cmd->add_option("--mode", mode, "SU(2) reference mode")->check(CLI::IsMember({"external", "self-entangled"}));
  add_output_options(sim_cmd, out);

  int max_n = 10, step = 1;
  auto* scaling_cmd = app.add_subcommand("scaling", "Error-versus-n table for both protocols");
  scaling_cmd->add_option("--max-n", max_n, "Largest n")->required();
  scaling_cmd->add_option("--step", step, "Step in n");
  add_output_options(scaling_cmd, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    Report report;
    json params;
    std::optional<std::uint64_t> seed;
    std::string command;
    if (*phase_cmd) {
      command = "phase-opt";
      params = {{"n", n}, {"method", method}, {"format", out.format}};
      if (n < (method == "bdm" ? 1 : 0)) throw std::invalid_argument("phase-opt: n out of range for method " + method);
      report = phase_opt(n, method);
    } else if (*su2_cmd) {
      command = "su2-design";
      params = {{"n", n}, {"mode", mode}, {"format", out.format}};
      report = su2_design(n, parse_reference_mode(mode));
    } else if (*verify_cmd) {
      command = "verify-integrals";
      params = {{"kmax", kmax}, {"tol", tol}, {"format", out.format}};
      if (kmax < 1) throw std::invalid_argument("verify-integrals: kmax must be >= 1");
      if (!(tol > 0)) throw std::invalid_argument("verify-integrals: tol must be > 0");
      report = verify_integrals(kmax, tol);
    } else if (*sim_cmd) {
      command = "simulate";
      config.protocol = parse_protocol(protocol);
      params = {{"protocol", protocol},   {"n", config.n},
                {"trials", config.trials}, {"partitions", config.partitions},
                {"grid", config.grid_size}, {"mode", mode},
                {"format", out.format}};
      seed = config.seed;
      config.validate();
      report = simulate_cmd(config, parse_reference_mode(mode));
    } else {
      command = "scaling";
      params = {{"max_n", max_n}, {"step", step}, {"format", out.format}};
      if (max_n < 2) throw std::invalid_argument("scaling: max-n must be >= 2");
      if (step < 1) throw std::invalid_argument("scaling: step must be >= 1");
      report = scaling(max_n, step);
    }
    emit(command, out, manifest(command, params, seed), report);
    return report.exit_code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerification;
  }
}
