#include "cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mtq/decohere.hpp"
#include "mtq/engram.hpp"
#include "mtq/entangle.hpp"
#include "mtq/mtlattice.hpp"
#include "mtq/qstate.hpp"
#include "mtq/rng.hpp"

namespace mtq::cli {
namespace {

using json = nlohmann::ordered_json;

/// Shortest decimal form that parses back to exactly the same double.
/// Low precision can round-trip yet print longer ("8e+01" vs "80"), so the
/// pick is by string length across all round-tripping precisions.
std::string format_double(double v) {
  std::string best;
  char buf[40];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) != v) continue;
    if (best.empty() || std::string_view(buf).size() < best.size()) best = buf;
  }
  return best;
}

std::string site_key(SiteIndex s) {
  return std::to_string(s.protofilament) + "," + std::to_string(s.row);
}

/// Ket-style label, site 0 first: index 2 on two qubits reads "01".
std::string bit_label(std::uint64_t index, int num_qubits) {
  std::string label(static_cast<std::size_t>(num_qubits), '0');
  for (int q = 0; q < num_qubits; ++q)
    if (index >> q & 1) label[static_cast<std::size_t>(q)] = '1';
  return label;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    double value = 0;
    try {
      value = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument(key + ": cannot parse '" + item + "' as a number");
    }
    if (pos != item.size())
      throw std::invalid_argument(key + ": cannot parse '" + item + "' as a number");
    out.push_back(value);
  }
  if (out.empty()) throw std::invalid_argument(key + ": empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& key) {
  std::vector<int> out;
  for (double v : parse_double_list(text, key)) {
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
      throw std::invalid_argument(key + ": '" + format_double(v) + "' is not an integer");
    out.push_back(i);
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  os << content;
  if (!os.flush()) throw std::runtime_error("write to '" + path + "' failed");
}

/// Reports are built fully in memory, so a failed run leaves no file.
void emit_report(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  write_file(path, content);
}

std::string pick_format(const RunConfig& config, std::string_view fallback,
                        std::initializer_list<std::string_view> allowed) {
  const std::string format = config.format.empty() ? std::string(fallback) : config.format;
  if (std::find(allowed.begin(), allowed.end(), format) == allowed.end())
    throw std::invalid_argument("format: '" + format +
                                "' is not supported by this subcommand");
  return format;
}

/// Infinity has no JSON number form; reports carry it as the string "inf".
json json_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

LatticeGeometry geometry_from(const RunConfig& config) {
  LatticeGeometry g;
  g.num_protofilaments = config.pf;
  g.num_rows = config.rows;
  g.seam_shift = config.seam_shift;
  validate_geometry(g);
  return g;
}

// ---------------------------------------------------------------------------
// state

struct StateOptions {
  std::string ket;
  bool uniform = false;
  int qubits = 2;
  std::string load;
  double time_seconds = 0;
  int steps = 1;
  long shots = 0;
  std::string save;
};

struct StateRun {
  std::string report;
  std::string saved_state;
};

json sample_counts(const PureState<double>& state, long shots, RandomStream& rng) {
  const auto probs = probabilities(state);
  std::vector<double> cumulative(static_cast<std::size_t>(probs.size()));
  std::partial_sum(probs.data(), probs.data() + probs.size(), cumulative.begin());
  std::size_t last_nonzero = 0;
  for (Eigen::Index i = 0; i < probs.size(); ++i)
    if (probs[i] > 0) last_nonzero = static_cast<std::size_t>(i);
  std::vector<long> counts(cumulative.size(), 0);
  for (long shot = 0; shot < shots; ++shot) {
    const double u = rng.next_unit();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t index = it == cumulative.end()
                                  ? last_nonzero
                                  : static_cast<std::size_t>(it - cumulative.begin());
    ++counts[index];
  }
  json out = json::object();
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] != 0)
      out[bit_label(i, state.num_qubits())] = counts[i];
  return out;
}

StateRun run_state(const RunConfig& config, const StateOptions& opt) {
  pick_format(config, "json", {"json"});
  const int sources = int(!opt.ket.empty()) + int(opt.uniform) + int(!opt.load.empty());
  if (sources != 1)
    throw std::invalid_argument(
        "state: give exactly one of --ket, --uniform, or --load");

  PureState<double> state = [&] {
    if (!opt.ket.empty()) return basis_ket<double>(opt.ket);
    if (opt.uniform) return uniform_superposition<double>(opt.qubits);
    return load_state<double>(opt.load);
  }();
  const int n = state.num_qubits();

  json report;
  report["qubits"] = n;
  report["source"] = !opt.ket.empty() ? "ket" : opt.uniform ? "uniform" : "file";

  if (opt.time_seconds > 0) {
    std::vector<std::pair<int, int>> chain;
    for (int q = 0; q + 1 < n; ++q) chain.emplace_back(q, q + 1);
    const auto h = Hamiltonian<double>::transverse_ising(
        n, config.epsilon, config.delta, config.coupling, chain);
    const double dt = opt.time_seconds / opt.steps;
    try {
      for (int step = 0; step < opt.steps; ++step)
        state = schrodinger_step(h, state, dt);
    } catch (const std::invalid_argument& e) {
      // The register matches the Hamiltonian by construction, so the only
      // rejection left is the unit-norm guard.
      throw NumericError(e.what());
    }
    report["evolution"] = {{"time_seconds", opt.time_seconds},
                           {"steps", opt.steps},
                           {"epsilon", config.epsilon},
                           {"delta", config.delta},
                           {"coupling", config.coupling}};
  }

  if (state.norm_defect() > Tolerances<double>::norm)
    throw NumericError("state norm drifted by " +
                       format_double(state.norm_defect()));
  report["norm_defect"] = state.norm_defect();

  if (n <= kMaxHamiltonianQubits) {
    const auto probs = probabilities(state);
    json list = json::array();
    for (Eigen::Index i = 0; i < probs.size(); ++i) list.push_back(probs[i]);
    report["probabilities"] = std::move(list);
  }

  if (opt.shots > 0) {
    RandomStream rng(RandomStream::mix(config.seed, "state"));
    report["samples"] = {{"shots", opt.shots},
                         {"counts", sample_counts(state, opt.shots, rng)}};
  }

  StateRun run;
  run.report = report.dump(2) + "\n";
  if (!opt.save.empty()) {
    std::ostringstream os;
    write_state(os, state);
    run.saved_state = os.str();
  }
  return run;
}

// ---------------------------------------------------------------------------
// entangle

struct EntangleOptions {
  std::string input;
  std::string left;
};

std::string run_entangle(const RunConfig& config, const EntangleOptions& opt) {
  pick_format(config, "json", {"json"});
  const auto state = load_state<double>(opt.input);
  const int n = state.num_qubits();
  if (n > 16)
    throw std::invalid_argument("entangle: states above 16 qubits are not supported");
  std::vector<int> left;
  if (opt.left.empty()) {
    for (int q = 0; q < n / 2; ++q) left.push_back(q);
    if (left.empty())
      throw std::invalid_argument("entangle: a one-qubit state has no split");
  } else {
    left = parse_int_list(opt.left, "left");
  }
  const BipartiteSplit split(n, left);
  const auto spectrum = schmidt_decompose(state, split);

  json report;
  report["split"] = {{"left", split.left()}, {"right", split.right()}};
  json coeffs = json::array();
  for (Eigen::Index k = 0; k < spectrum.size(); ++k)
    coeffs.push_back(spectrum.coefficient(k));
  report["coefficients"] = std::move(coeffs);
  report["entropy_bits"] = entanglement_entropy(spectrum);
  report["factorizable"] = is_factorizable(state, split);
  return report.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// lattice

struct LatticeOptions {
  std::string pattern;
  bool diagonals = false;
  bool maps_couple = false;
};

std::string run_lattice(const RunConfig& config, const LatticeOptions& opt) {
  pick_format(config, "json", {"json"});
  LatticeGeometry g = geometry_from(config);
  g.diagonal_neighbors = opt.diagonals;
  g.maps_couple = opt.maps_couple;

  MapBindingPattern pattern{g};
  if (!opt.pattern.empty()) {
    // The file's header wins on shape; the flags still apply, so the
    // edges are re-bound onto the flagged geometry.
    const auto loaded = load_pattern(opt.pattern);
    g.num_protofilaments = loaded.geometry().num_protofilaments;
    g.num_rows = loaded.geometry().num_rows;
    g.seam_shift = loaded.geometry().seam_shift;
    pattern = MapBindingPattern{g};
    for (const auto& e : loaded.bound_edges())
      pattern = bind_map(std::move(pattern), e.a, e.b);
  }

  const auto edges = lattice_edges(g);
  json report;
  report["geometry"] = {{"pf", g.num_protofilaments},
                        {"rows", g.num_rows},
                        {"seam_shift", g.seam_shift},
                        {"diagonal_neighbors", g.diagonal_neighbors},
                        {"maps_couple", g.maps_couple},
                        {"sites", g.num_sites()},
                        {"edges", edges.size()}};

  json adjacency = json::object();
  for (int flat = 0; flat < g.num_sites(); ++flat) {
    const SiteIndex s = g.site_at(flat);
    json list = json::array();
    for (SiteIndex t : neighbors(g, s)) list.push_back(site_key(t));
    adjacency[site_key(s)] = std::move(list);
  }
  report["adjacency"] = std::move(adjacency);

  json bound = json::array();
  for (const auto& e : pattern.bound_edges())
    bound.push_back(json::array({site_key(e.a), site_key(e.b)}));
  report["bound_edges"] = std::move(bound);

  json domains = json::array();
  for (const auto& sites : partition_sites(g, pattern, config.max_domain_size)) {
    json group = json::array();
    for (SiteIndex s : sites) group.push_back(site_key(s));
    domains.push_back(std::move(group));
  }
  report["domains"] = std::move(domains);
  return report.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// decohere

struct DecohereOptions {
  std::string mode = "scan";
  std::string taus = "1e-19,1e-13";
  long trajectories = 1000;
  int qubits = 2;
  double dt = 0;
  long steps = 100;
};

std::string run_decohere(const RunConfig& config, const DecohereOptions& opt) {
  if (opt.mode == "scan") {
    const std::string format = pick_format(config, "csv", {"csv", "json"});
    std::vector<double> tau_effs;
    for (double tau : parse_double_list(opt.taus, "taus"))
      tau_effs.push_back(DecoherenceModel(tau, config.protection_factor).tau_eff());
    const auto rows = coherence_scan(tau_effs, config.dyn_timescale);

    if (format == "csv") {
      std::string out = "tau_eff_seconds,dyn_timescale_seconds,survival,verdict\n";
      for (const auto& row : rows) {
        out += format_double(row.tau_eff_seconds) + ",";
        out += format_double(row.dyn_timescale_seconds) + ",";
        out += format_double(row.survival) + ",";
        out += std::string(verdict_name(row.coherent)) + "\n";
      }
      return out;
    }
    json report;
    report["mode"] = "scan";
    json list = json::array();
    for (const auto& row : rows)
      list.push_back({{"tau_eff_seconds", json_double(row.tau_eff_seconds)},
                      {"dyn_timescale_seconds", row.dyn_timescale_seconds},
                      {"survival", row.survival},
                      {"verdict", std::string(verdict_name(row.coherent))}});
    report["rows"] = std::move(list);
    return report.dump(2) + "\n";
  }

  if (opt.mode != "trajectory")
    throw std::invalid_argument("mode: expected 'scan' or 'trajectory', got '" +
                                opt.mode + "'");
  pick_format(config, "json", {"json"});

  const DecoherenceModel model(config.tau_bare, config.protection_factor);
  const double tau = model.tau_eff();
  double dt = opt.dt;
  if (dt <= 0) {
    if (std::isinf(tau))
      throw std::invalid_argument("dt: required when the effective lifetime is infinite");
    dt = tau / 100;
  }

  std::vector<SiteIndex> sites;
  for (int q = 0; q < opt.qubits; ++q) sites.push_back({q, 0});
  const CoherentDomain<double> domain{std::move(sites),
                                      uniform_superposition<double>(opt.qubits)};

  long zero = 0;
  long events = 0;
  for (long run = 0; run < opt.trajectories; ++run) {
    TrajectoryConfig tc{dt, opt.steps,
                        RandomStream::mix(config.seed, "trajectory",
                                          static_cast<std::uint64_t>(run))};
    const auto result = run_trajectory(domain, model, tc);
    zero += result.collapse_events == 0;
    events += result.collapse_events;
  }
  const double t_total = dt * static_cast<double>(opt.steps);
  const double expected = std::isinf(tau) ? 1.0 : std::exp(-t_total / tau);

  json report;
  report["mode"] = "trajectory";
  report["tau_eff_seconds"] = json_double(tau);
  report["dt_seconds"] = dt;
  report["steps"] = opt.steps;
  report["trajectories"] = opt.trajectories;
  report["qubits"] = opt.qubits;
  report["zero_collapse_fraction"] =
      static_cast<double>(zero) / static_cast<double>(opt.trajectories);
  report["expected_survival"] = expected;
  report["mean_collapse_events"] =
      static_cast<double>(events) / static_cast<double>(opt.trajectories);
  return report.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// experiment

struct ExperimentOptions {
  long runs = 1;
  bool naive = false;
};

std::string run_experiment(const RunConfig& config, const ExperimentOptions& opt) {
  const std::string format = pick_format(config, "csv", {"csv", "json"});
  ConditioningConfig cc{config.num_flies, config.p_avoid_trained, 0.5, config.seed};
  validate(cc);

  std::vector<ExperimentTally> tallies;
  tallies.reserve(static_cast<std::size_t>(opt.runs));
  for (long run = 0; run < opt.runs; ++run) {
    RandomStream rng(
        RandomStream::mix(config.seed, "experiment", static_cast<std::uint64_t>(run)));
    tallies.push_back(simulate_conditioning(cc, rng, opt.naive));
  }

  if (format == "csv") {
    std::string out = "run,trained,untrained,total,pi\n";
    for (std::size_t run = 0; run < tallies.size(); ++run) {
      const auto& t = tallies[run];
      out += std::to_string(run) + "," + std::to_string(t.trained) + "," +
             std::to_string(t.untrained) + "," + std::to_string(t.total) + "," +
             format_double(performance_index(t)) + "\n";
    }
    return out;
  }
  json report;
  json list = json::array();
  double pi_sum = 0;
  for (std::size_t run = 0; run < tallies.size(); ++run) {
    const auto& t = tallies[run];
    const double pi = performance_index(t);
    pi_sum += pi;
    list.push_back({{"run", run},
                    {"trained", t.trained},
                    {"untrained", t.untrained},
                    {"total", t.total},
                    {"pi", pi}});
  }
  report["runs"] = std::move(list);
  report["mean_pi"] = pi_sum / static_cast<double>(tallies.size());
  return report.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// demo-epr

struct EprOptions {
  long trials = 100000;
};

std::string run_epr(const RunConfig& config, const EprOptions& opt) {
  pick_format(config, "json", {"json"});
  using C = std::complex<double>;
  RandomStream rng(RandomStream::mix(config.seed, "epr"));
  long counts[4] = {0, 0, 0, 0};
  for (long trial = 0; trial < opt.trials; ++trial) {
    const auto pair = make_state<double>(2, {C(0), C(1), C(1), C(0)});
    const auto [b0, after] = measure_qubit(pair, 0, rng);
    const auto [b1, final_state] = measure_qubit(after, 1, rng);
    (void)final_state;
    ++counts[b0 | b1 << 1];
  }
  json report;
  report["trials"] = opt.trials;
  report["counts"] = {{"00", counts[0]},
                      {"01", counts[2]},
                      {"10", counts[1]},
                      {"11", counts[3]}};
  report["anticorrelated"] = counts[1] + counts[2];
  report["violations"] = counts[0] + counts[3];
  return report.dump(2) + "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"mtqsim: coherent-domain simulation on the tubulin dimer lattice"};
  app.require_subcommand(1);

  RunConfig config;
  app.set_config("--config", "", "Key=value file applied before flags (flags win)");
  app.allow_config_extras(CLI::config_extras_mode::error);

  app.add_option("--pf", config.pf, "Protofilament count")
      ->capture_default_str()
      ->check(CLI::Range(2, 4096));
  app.add_option("--rows", config.rows, "Dimer rows per protofilament")
      ->capture_default_str()
      ->check(CLI::Range(1, 1 << 20));
  app.add_option("--seam_shift", config.seam_shift, "Row shift across the seam")
      ->capture_default_str()
      ->check(CLI::Range(0, 1 << 20));
  app.add_option("--epsilon", config.epsilon, "On-site bias (rad/s)")
      ->capture_default_str();
  app.add_option("--delta", config.delta, "Tunneling rate between conformations (rad/s)")
      ->capture_default_str();
  app.add_option("--coupling", config.coupling, "Nearest-neighbor coupling (rad/s)")
      ->capture_default_str();
  app.add_option("--tau_bare", config.tau_bare, "Bare decoherence lifetime (s)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--protection_factor", config.protection_factor,
                 "Lifetime stretch from environmental shielding")
      ->capture_default_str()
      ->check(CLI::Range(1.0, 1e300));
  app.add_option("--dyn_timescale", config.dyn_timescale,
                 "Dynamical timescale the state must outlive (s)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--num_flies", config.num_flies, "Cohort size per conditioning run")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--p_avoid_trained", config.p_avoid_trained,
                 "Avoidance probability after training")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--max_domain_size", config.max_domain_size,
                 "Largest coherent domain the partition may keep")
      ->capture_default_str()
      ->check(CLI::Range(1, kMaxQubits));
  app.add_option("--seed", config.seed, "Master seed; all streams derive from it")
      ->capture_default_str();
  app.add_option("--output", config.output, "Report path (default: stdout)");
  app.add_option("--format", config.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));

  StateOptions state_opt;
  auto* state_cmd =
      app.add_subcommand("state", "Build, evolve, and sample a qubit register");
  state_cmd->fallthrough();
  state_cmd->add_option("--ket", state_opt.ket, "Basis label, site 0 first (e.g. 01)");
  state_cmd->add_flag("--uniform", state_opt.uniform, "Uniform superposition");
  state_cmd->add_option("--qubits", state_opt.qubits, "Register width for --uniform")
      ->capture_default_str()
      ->check(CLI::Range(1, 16));
  state_cmd->add_option("--load", state_opt.load, "Read the register from a state file");
  state_cmd->add_option("--time", state_opt.time_seconds, "Evolution time (s)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  state_cmd->add_option("--steps", state_opt.steps, "Evolution substeps")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  state_cmd->add_option("--shots", state_opt.shots, "Full-register samples to draw")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  state_cmd->add_option("--save", state_opt.save, "Write the final state to a file");

  EntangleOptions entangle_opt;
  auto* entangle_cmd =
      app.add_subcommand("entangle", "Schmidt analysis of a state file");
  entangle_cmd->fallthrough();
  entangle_cmd->add_option("--input", entangle_opt.input, "State file to analyze")
      ->required();
  entangle_cmd->add_option("--left", entangle_opt.left,
                           "Comma-separated left-side qubits (default: first half)");

  LatticeOptions lattice_opt;
  auto* lattice_cmd =
      app.add_subcommand("lattice", "Dump geometry, adjacency, and domains");
  lattice_cmd->fallthrough();
  lattice_cmd->add_option("--pattern", lattice_opt.pattern,
                          "Binding-pattern file (header wins on shape)");
  lattice_cmd->add_flag("--diagonals", lattice_opt.diagonals,
                        "Include the two diagonal contacts");
  lattice_cmd->add_flag("--maps_couple", lattice_opt.maps_couple,
                        "Bound edges couple instead of cut");

  DecohereOptions decohere_opt;
  auto* decohere_cmd =
      app.add_subcommand("decohere", "Timescale scan or jump trajectories");
  decohere_cmd->fallthrough();
  decohere_cmd->add_option("--mode", decohere_opt.mode, "scan or trajectory")
      ->capture_default_str()
      ->check(CLI::IsMember({"scan", "trajectory"}));
  decohere_cmd->add_option("--taus", decohere_opt.taus,
                           "Comma-separated bare lifetimes for the scan (s)")
      ->capture_default_str();
  decohere_cmd->add_option("--trajectories", decohere_opt.trajectories,
                           "Trajectory count")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  decohere_cmd->add_option("--qubits", decohere_opt.qubits, "Domain width")
      ->capture_default_str()
      ->check(CLI::Range(1, 16));
  decohere_cmd->add_option("--dt", decohere_opt.dt,
                           "Step length (s); 0 picks tau_eff/100")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  decohere_cmd->add_option("--steps", decohere_opt.steps, "Steps per trajectory")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  ExperimentOptions experiment_opt;
  auto* experiment_cmd =
      app.add_subcommand("experiment", "Conditioning runs with Performance Index");
  experiment_cmd->fallthrough();
  experiment_cmd->add_option("--runs", experiment_opt.runs, "Independent runs")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  experiment_cmd->add_flag("--naive", experiment_opt.naive,
                           "Use the untrained avoidance probability (0.5)");

  EprOptions epr_opt;
  auto* epr_cmd =
      app.add_subcommand("demo-epr", "Paired-spin decay demo: anti-correlated outcomes");
  epr_cmd->fallthrough();
  epr_cmd->add_option("--trials", epr_opt.trials, "Measurement trials")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    std::string report;
    std::string saved_state;
    if (state_cmd->parsed()) {
      auto run = run_state(config, state_opt);
      report = std::move(run.report);
      saved_state = std::move(run.saved_state);
    } else if (entangle_cmd->parsed()) {
      report = run_entangle(config, entangle_opt);
    } else if (lattice_cmd->parsed()) {
      report = run_lattice(config, lattice_opt);
    } else if (decohere_cmd->parsed()) {
      report = run_decohere(config, decohere_opt);
    } else if (experiment_cmd->parsed()) {
      report = run_experiment(config, experiment_opt);
    } else {
      report = run_epr(config, epr_opt);
    }
    emit_report(config.output, report);
    if (!state_opt.save.empty()) write_file(state_opt.save, saved_state);
    return 0;
  } catch (const NumericError& e) {
    std::cerr << "numerical invariant violated: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mtq::cli
