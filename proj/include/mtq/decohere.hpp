#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mtq/mtlattice.hpp"
#include "mtq/rng.hpp"

namespace mtq {

/// Protection factors at or beyond this cap mean the environment never
/// wins; the effective lifetime is treated as infinite (and tau_eff would
/// otherwise risk overflow).
inline constexpr double kProtectionCap = 1e16;

/// Exponential environmental model: a bare lifetime stretched by a
/// dimensionless protection factor (shielding, ordered water, error
/// correction — whatever keeps the environment out).
class DecoherenceModel {
 public:
  DecoherenceModel(double tau_bare_seconds, double protection_factor)
      : tau_bare_(tau_bare_seconds), protection_(protection_factor) {
    if (!(tau_bare_ > 0))
      throw std::invalid_argument("tau_bare must be positive, got " +
                                  std::to_string(tau_bare_));
    if (!(protection_ >= 1))
      throw std::invalid_argument("protection_factor must be >= 1, got " +
                                  std::to_string(protection_));
  }

  double tau_bare() const { return tau_bare_; }
  double protection_factor() const { return protection_; }

  double tau_eff() const {
    if (protection_ >= kProtectionCap)
      return std::numeric_limits<double>::infinity();
    return tau_bare_ * protection_;
  }

 private:
  double tau_bare_;
  double protection_;
};

/// P(still coherent after t) = exp(-t / tau_eff). Underflows cleanly to 0.
inline double survival_probability(const DecoherenceModel& model, double t_seconds) {
  if (!(t_seconds >= 0))
    throw std::invalid_argument("t must be nonnegative, got " +
                                std::to_string(t_seconds));
  const double tau = model.tau_eff();
  if (std::isinf(tau)) return 1.0;
  return std::exp(-t_seconds / tau);
}

/// P(at least one environmental hit within dt) = 1 - exp(-dt / tau_eff),
/// computed with expm1 so small rates stay accurate.
inline double collapse_probability(const DecoherenceModel& model, double dt_seconds) {
  if (!(dt_seconds > 0))
    throw std::invalid_argument("dt must be positive, got " +
                                std::to_string(dt_seconds));
  const double tau = model.tau_eff();
  if (std::isinf(tau)) return 0.0;
  return -std::expm1(-dt_seconds / tau);
}

/// Stepping plan for a trajectory run; dt * steps spans the simulated
/// interval exactly.
struct TrajectoryConfig {
  double dt = 0;
  long steps = 0;
  std::uint64_t seed = 0;
};

inline void validate(const TrajectoryConfig& config) {
  if (!(config.dt > 0))
    throw std::invalid_argument("trajectory dt must be positive");
  if (config.steps < 1)
    throw std::invalid_argument("trajectory steps must be >= 1");
}

/// One jump-process step of length dt: with probability
/// 1 - exp(-dt/tau_eff) the environment projectively measures one
/// uniformly chosen site of the domain; otherwise the state passes through
/// untouched (unitary evolution is applied separately). Draw order is
/// fixed — collapse test, site pick, measurement — so a run is fully
/// determined by the stream's seed.
template <typename Scalar>
CoherentDomain<Scalar> trajectory_step(const CoherentDomain<Scalar>& domain,
                                       const DecoherenceModel& model, double dt,
                                       RandomStream& rng) {
  if (domain.sites.size() != static_cast<std::size_t>(domain.state.num_qubits()))
    throw std::invalid_argument("domain has " + std::to_string(domain.sites.size()) +
                                " sites but a " +
                                std::to_string(domain.state.num_qubits()) +
                                "-qubit state");
  const double p = collapse_probability(model, dt);
  if (!rng.bernoulli(p)) return domain;
  const int qubit =
      static_cast<int>(rng.next_below(static_cast<std::uint64_t>(domain.state.num_qubits())));
  auto [outcome, collapsed] = measure_qubit(domain.state, qubit, rng);
  (void)outcome;
  return {domain.sites, std::move(collapsed)};
}

/// Aggregate of one trajectory: the surviving domain plus collapse
/// bookkeeping (first_collapse_step is -1 when no collapse occurred).
template <typename Scalar = double>
struct TrajectoryResult {
  CoherentDomain<Scalar> domain;
  long collapse_events = 0;
  long first_collapse_step = -1;
};

/// Run `config.steps` trajectory steps under the model with a stream
/// seeded from the config, tracking collapse events along the way.
template <typename Scalar>
TrajectoryResult<Scalar> run_trajectory(const CoherentDomain<Scalar>& domain,
                                        const DecoherenceModel& model,
                                        const TrajectoryConfig& config) {
  validate(config);
  if (domain.sites.size() != static_cast<std::size_t>(domain.state.num_qubits()))
    throw std::invalid_argument("domain has " + std::to_string(domain.sites.size()) +
                                " sites but a " +
                                std::to_string(domain.state.num_qubits()) +
                                "-qubit state");
  RandomStream rng(config.seed);
  TrajectoryResult<Scalar> result{domain, 0, -1};
  const double p = collapse_probability(model, config.dt);
  for (long step = 0; step < config.steps; ++step) {
    if (!rng.bernoulli(p)) continue;
    const int qubit = static_cast<int>(rng.next_below(
        static_cast<std::uint64_t>(result.domain.state.num_qubits())));
    auto [outcome, collapsed] = measure_qubit(result.domain.state, qubit, rng);
    (void)outcome;
    result.domain.state = std::move(collapsed);
    ++result.collapse_events;
    if (result.first_collapse_step < 0) result.first_collapse_step = step;
  }
  return result;
}

/// One row of the timescale-competition scan.
struct ScanRow {
  double tau_eff_seconds = 0;
  double dyn_timescale_seconds = 0;
  double survival = 0;
  bool coherent = false;
};

inline std::string_view verdict_name(bool coherent) {
  return coherent ? "coherent" : "decoherent";
}

/// Evaluate survival at the dynamical timescale for each effective
/// lifetime; verdict "coherent" iff survival >= 1/2 — the quantum state
/// outlives the dynamics it is supposed to drive.
inline std::vector<ScanRow> coherence_scan(std::span<const double> tau_effs,
                                           double dyn_timescale) {
  if (tau_effs.empty())
    throw std::invalid_argument("coherence_scan: no tau values given");
  if (!(dyn_timescale > 0))
    throw std::invalid_argument("dyn_timescale must be positive, got " +
                                std::to_string(dyn_timescale));
  std::vector<ScanRow> rows;
  rows.reserve(tau_effs.size());
  for (double tau : tau_effs) {
    if (!(tau > 0))
      throw std::invalid_argument("tau_eff must be positive, got " +
                                  std::to_string(tau));
    const double survival = std::isinf(tau) ? 1.0 : std::exp(-dyn_timescale / tau);
    rows.push_back({tau, dyn_timescale, survival, survival >= 0.5});
  }
  return rows;
}

/// Orchestrated objective reduction: measure every site of the domain in
/// ascending site order, leaving the state in exactly the resulting basis
/// state. Returns the classical conformation pattern.
template <typename Scalar>
std::map<SiteIndex, int> trigger_collapse(CoherentDomain<Scalar>& domain,
                                          RandomStream& rng) {
  if (domain.sites.size() != static_cast<std::size_t>(domain.state.num_qubits()))
    throw std::invalid_argument("domain has " + std::to_string(domain.sites.size()) +
                                " sites but a " +
                                std::to_string(domain.state.num_qubits()) +
                                "-qubit state");
  const int n = domain.state.num_qubits();
  std::map<SiteIndex, int> outcomes;
  PureState<Scalar> state = domain.state;
  std::uint64_t index = 0;
  for (int q = 0; q < n; ++q) {
    auto [bit, next] = measure_qubit(state, q, rng);
    state = std::move(next);
    outcomes[domain.sites[static_cast<std::size_t>(q)]] = bit;
    index |= static_cast<std::uint64_t>(bit) << q;
  }
  domain.state = PureState<Scalar>::basis_state(n, index);
  return outcomes;
}

}  // namespace mtq
