#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mtq/decohere.hpp"

namespace mtq {

inline constexpr int kDefaultMaxDomainSize = 20;
/// How close two engrams must be (normalized symmetric difference) for one
/// to drag the other into recall.
inline constexpr double kDefaultRecallThreshold = 0.05;

/// One neuron's registered memory: the binding pattern plus the coherent
/// domains it carves out of the lattice. Invariant: domains are exactly
/// partition_domains(geometry, engram, max_domain_size); make_neuron and
/// encode_engram maintain it.
template <typename Scalar = double>
struct NeuronModel {
  int id = 0;
  LatticeGeometry geometry;
  MapBindingPattern engram;
  int max_domain_size = kDefaultMaxDomainSize;
  std::vector<CoherentDomain<Scalar>> domains;
  bool activated = false;
};

template <typename Scalar = double>
NeuronModel<Scalar> make_neuron(int id, const LatticeGeometry& geometry,
                                const MapBindingPattern& engram,
                                int max_domain_size = kDefaultMaxDomainSize) {
  if (id < 0)
    throw std::invalid_argument("neuron id must be nonnegative, got " +
                                std::to_string(id));
  return {id, geometry, engram, max_domain_size,
          partition_domains<Scalar>(geometry, engram, max_domain_size), false};
}

/// Swap in a new engram: domains are re-derived (so the partition
/// invariant holds by construction) and activation clears.
template <typename Scalar>
NeuronModel<Scalar> encode_engram(const NeuronModel<Scalar>& neuron,
                                  const MapBindingPattern& pattern) {
  if (!(pattern.geometry() == neuron.geometry))
    throw std::invalid_argument("pattern geometry differs from the neuron's lattice");
  return make_neuron<Scalar>(neuron.id, neuron.geometry, pattern,
                             neuron.max_domain_size);
}

/// Shuttle-box tally. Non-choosers are allowed: trained + untrained may
/// fall short of total.
struct ExperimentTally {
  long trained = 0;    // flies avoiding the shock-paired odor
  long untrained = 0;  // flies choosing it
  long total = 0;
};

/// PI = 100 (trained - untrained) / total. Exact integer arithmetic scaled
/// once, so e.g. (57, 3, 60) gives 90 with no floating slack.
inline double performance_index(const ExperimentTally& tally) {
  if (tally.total <= 0)
    throw std::invalid_argument("tally total must be positive, got " +
                                std::to_string(tally.total));
  if (tally.trained < 0 || tally.untrained < 0 ||
      tally.trained + tally.untrained > tally.total)
    throw std::invalid_argument("tally counts are inconsistent");
  return 100.0 * static_cast<double>(tally.trained - tally.untrained) /
         static_cast<double>(tally.total);
}

struct ConditioningConfig {
  int num_flies = 55;  // typical cohort runs 50 to 60
  double p_avoid_trained = 0.95;
  double p_avoid_naive = 0.5;
  std::uint64_t seed = 0;
};

inline void validate(const ConditioningConfig& config) {
  if (config.num_flies < 1)
    throw std::invalid_argument("num_flies must be >= 1, got " +
                                std::to_string(config.num_flies));
  if (!(config.p_avoid_trained >= 0 && config.p_avoid_trained <= 1))
    throw std::invalid_argument("p_avoid_trained must lie in [0,1]");
  if (!(config.p_avoid_naive >= 0 && config.p_avoid_naive <= 1))
    throw std::invalid_argument("p_avoid_naive must lie in [0,1]");
}

/// One conditioning run: every fly independently avoids the shock-paired
/// odor with probability p_avoid_trained (p_avoid_naive when `naive`).
/// Expected PI is (2p - 1) * 100.
inline ExperimentTally simulate_conditioning(const ConditioningConfig& config,
                                             RandomStream& rng, bool naive = false) {
  validate(config);
  const double p = naive ? config.p_avoid_naive : config.p_avoid_trained;
  ExperimentTally tally{0, 0, config.num_flies};
  for (int fly = 0; fly < config.num_flies; ++fly)
    rng.bernoulli(p) ? ++tally.trained : ++tally.untrained;
  return tally;
}

/// Outcome of one recall event: which neurons fired together and the
/// classical conformation pattern each one's domains collapsed to.
struct RecallResult {
  std::vector<int> activated_ids;  // ascending
  std::map<int, std::map<SiteIndex, int>> collapse_patterns;
};

/// Cue-driven recall. The key neuron activates, and every neuron whose
/// engram lies within `threshold` of the key's co-activates in the same
/// call — no propagation delay is modeled. Each activated neuron's domains
/// undergo trigger_collapse; the rest are untouched.
///
/// One salt is drawn from `rng`, then each neuron's collapse stream is
/// derived from (salt, id), so outcomes are independent of neuron order
/// and the whole event is determined by the stream's seed.
template <typename Scalar>
RecallResult recall_coactivation(std::vector<NeuronModel<Scalar>>& neurons, int key_id,
                                 double threshold, RandomStream& rng) {
  if (!(threshold >= 0 && threshold <= 1))
    throw std::invalid_argument("threshold must lie in [0,1]");
  const NeuronModel<Scalar>* key = nullptr;
  for (const auto& n : neurons) {
    if (n.id != key_id) continue;
    if (key) throw std::invalid_argument("duplicate neuron id " + std::to_string(key_id));
    key = &n;
  }
  if (!key)
    throw std::invalid_argument("no neuron with id " + std::to_string(key_id));

  const std::uint64_t salt = rng.next_u64();
  RecallResult result;
  for (auto& n : neurons) {
    const double distance =
        n.id == key_id ? 0.0 : engram_distance(key->engram, n.engram);
    if (distance > threshold) continue;
    n.activated = true;
    RandomStream stream(
        RandomStream::mix(salt, "recall", static_cast<std::uint64_t>(n.id)));
    std::map<SiteIndex, int> pattern;
    for (auto& domain : n.domains) {
      auto outcomes = trigger_collapse(domain, stream);
      pattern.insert(outcomes.begin(), outcomes.end());
    }
    result.activated_ids.push_back(n.id);
    result.collapse_patterns.emplace(n.id, std::move(pattern));
  }
  std::sort(result.activated_ids.begin(), result.activated_ids.end());
  return result;
}

/// JSON-lines trace: one object per activated neuron, sites keyed
/// "pf,row". Map ordering makes the bytes deterministic.
inline void write_recall_trace(std::ostream& os, const RecallResult& result) {
  for (int id : result.activated_ids) {
    os << "{\"neuron\":" << id << ",\"collapse\":{";
    bool first = true;
    for (const auto& [site, bit] : result.collapse_patterns.at(id)) {
      if (!first) os << ",";
      first = false;
      os << "\"" << site.protofilament << "," << site.row << "\":" << bit;
    }
    os << "}}\n";
  }
}

}  // namespace mtq
