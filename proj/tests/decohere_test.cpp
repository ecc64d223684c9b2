// Decoherence model: effective lifetimes, survival, the timescale scan,
// quantum-jump trajectories, and orchestrated collapse.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mtq/decohere.hpp"
#include "mtq/entangle.hpp"
#include "mtq/rng.hpp"

using namespace mtq;

namespace {

// One domain holding an explicit state on sites (0,0)..(n-1,0).
CoherentDomain<double> domain_with(PureState<double> state) {
  std::vector<SiteIndex> sites;
  for (int q = 0; q < state.num_qubits(); ++q) sites.push_back({q, 0});
  return {std::move(sites), std::move(state)};
}

PureState<double> bell() {
  return make_state<double>(2, {{1, 0}, {0, 0}, {0, 0}, {1, 0}});
}

}  // namespace

TEST_CASE("effective lifetime is the bare lifetime stretched by protection") {
  const DecoherenceModel m(1e-13, 1.5e9);
  CHECK(m.tau_eff() == doctest::Approx(1.5e-4).epsilon(1e-15));
  CHECK(DecoherenceModel(2.0, 1.0).tau_eff() == 2.0);
}

TEST_CASE("protection at the cap means the environment never wins") {
  const DecoherenceModel m(1e-19, kProtectionCap);
  CHECK(std::isinf(m.tau_eff()));
  CHECK(survival_probability(m, 1e300) == 1.0);
  CHECK(collapse_probability(m, 1e300) == 0.0);
}

TEST_CASE("model construction rejects nonpositive lifetimes and protection below 1") {
  CHECK_THROWS_AS(DecoherenceModel(0.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(DecoherenceModel(-1e-13, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(DecoherenceModel(1e-13, 0.5), std::invalid_argument);
}

TEST_CASE("survival decays exponentially in the effective lifetime") {
  const DecoherenceModel m(1e-13, 1.5e9);  // tau_eff = 1.5e-4
  CHECK(survival_probability(m, 0.0) == 1.0);
  CHECK(survival_probability(m, 1e-4) ==
        doctest::Approx(0.513417119032592).epsilon(1e-14));
  CHECK_THROWS_AS(survival_probability(m, -1.0), std::invalid_argument);
}

TEST_CASE("deep-decoherence survival underflows cleanly to zero") {
  // Unprotected thermal lifetimes against a 100 microsecond dynamical
  // timescale: the exponent is astronomically negative.
  CHECK(survival_probability(DecoherenceModel(1e-19, 1.0), 1e-4) == 0.0);
  CHECK(survival_probability(DecoherenceModel(1e-13, 1.0), 1e-4) == 0.0);
}

TEST_CASE("collapse probability complements survival over one interval") {
  const DecoherenceModel m(1.0, 2.0);
  const double dt = 0.3;
  CHECK(collapse_probability(m, dt) ==
        doctest::Approx(1.0 - survival_probability(m, dt)).epsilon(1e-15));
  CHECK_THROWS_AS(collapse_probability(m, 0.0), std::invalid_argument);
  // expm1 keeps tiny rates accurate where 1 - exp would round to zero.
  CHECK(collapse_probability(DecoherenceModel(1.0, 1e12), 1e-8) ==
        doctest::Approx(1e-20).epsilon(1e-12));
}

TEST_CASE("scan flags the unprotected lifetimes as decoherent") {
  const std::vector<double> taus{1e-19, 1e-13};
  const auto rows = coherence_scan(taus, 1e-4);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(row.survival == 0.0);
    CHECK(!row.coherent);
    CHECK(verdict_name(row.coherent) == "decoherent");
    CHECK(row.dyn_timescale_seconds == 1e-4);
  }
}

TEST_CASE("protection by 1.5e9 flips the verdict at the dynamical timescale") {
  const std::vector<double> taus{1e-13, 1e-13 * 1.5e9};
  const auto rows = coherence_scan(taus, 1e-4);
  CHECK(!rows[0].coherent);
  CHECK(rows[1].coherent);
  CHECK(rows[1].survival == doctest::Approx(0.513417119032592).epsilon(1e-14));
  CHECK(verdict_name(rows[1].coherent) == "coherent");
}

TEST_CASE("verdict boundary sits exactly at survival one half") {
  // tau = dyn / ln 2 makes exp(-dyn/tau) land on 0.5 exactly in doubles
  // for this dyn value; >= keeps the boundary row coherent.
  const double dyn = 1e-3;
  const double tau = dyn / std::log(2.0);
  const std::vector<double> taus{tau};
  const auto rows = coherence_scan(taus, dyn);
  CHECK(rows[0].survival == 0.5);
  CHECK(rows[0].coherent);
}

TEST_CASE("scan accepts infinite lifetimes and rejects bad input") {
  const std::vector<double> inf_tau{std::numeric_limits<double>::infinity()};
  const auto rows = coherence_scan(inf_tau, 1e-4);
  CHECK(rows[0].survival == 1.0);
  CHECK(rows[0].coherent);
  CHECK_THROWS_AS(coherence_scan(std::vector<double>{}, 1e-4), std::invalid_argument);
  CHECK_THROWS_AS(coherence_scan(inf_tau, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(coherence_scan(std::vector<double>{-1.0}, 1e-4),
                  std::invalid_argument);
}

TEST_CASE("trajectory config validation") {
  CHECK_THROWS_AS(validate(TrajectoryConfig{0.0, 10, 1}), std::invalid_argument);
  CHECK_THROWS_AS(validate(TrajectoryConfig{1e-6, 0, 1}), std::invalid_argument);
  CHECK_NOTHROW(validate(TrajectoryConfig{1e-6, 1, 0}));
}

TEST_CASE("a fully protected domain never collapses") {
  const DecoherenceModel m(1e-19, kProtectionCap);
  const auto d = domain_with(bell());
  const auto result = run_trajectory(d, m, TrajectoryConfig{1.0, 1000, 7});
  CHECK(result.collapse_events == 0);
  CHECK(result.first_collapse_step == -1);
  CHECK((result.domain.state.amplitudes() - d.state.amplitudes()).norm() == 0.0);
}

TEST_CASE("an unprotected domain collapses almost immediately") {
  // dt = 100 tau_eff: per-step survival is about 4e-44.
  const DecoherenceModel m(1e-6, 1.0);
  const auto d = domain_with(bell());
  long collapsed_at_zero = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto result = run_trajectory(d, m, TrajectoryConfig{1e-4, 5, seed});
    CHECK(result.collapse_events == 5);
    collapsed_at_zero += result.first_collapse_step == 0;
  }
  CHECK(collapsed_at_zero == 200);
}

TEST_CASE("one collapse turns a Bell pair into a product state") {
  const DecoherenceModel m(1e-6, 1.0);
  const auto d = domain_with(bell());
  RandomStream rng(3);
  const auto after = trajectory_step(d, m, 1e-3, rng);
  const BipartiteSplit split(2, {0});
  CHECK(is_factorizable(after.state, split));
  // The two qubits stay perfectly correlated: the survivor is |aa> or |bb>.
  const auto probs = probabilities(after.state);
  CHECK(probs(1) == 0.0);
  CHECK(probs(2) == 0.0);
}

TEST_CASE("trajectory draws are fully determined by the seed") {
  const DecoherenceModel m(1e-4, 10.0);
  const auto d = domain_with(make_state<double>(2, {{1, 0}, {1, 0}, {1, 0}, {1, 0}}));
  const auto a = run_trajectory(d, m, TrajectoryConfig{5e-4, 50, 42});
  const auto b = run_trajectory(d, m, TrajectoryConfig{5e-4, 50, 42});
  CHECK(a.collapse_events == b.collapse_events);
  CHECK(a.first_collapse_step == b.first_collapse_step);
  CHECK((a.domain.state.amplitudes() - b.domain.state.amplitudes()).norm() == 0.0);
}

TEST_CASE("zero-collapse fraction matches the survival law") {
  // t = tau_eff split into 100 steps: P(no collapse) = exp(-1).
  const DecoherenceModel m(1e-3, 1.0);
  const TrajectoryConfig base{1e-5, 100, 0};
  const auto d = domain_with(bell());
  const long trials = 20000;
  long zero = 0;
  for (long i = 0; i < trials; ++i) {
    TrajectoryConfig config = base;
    config.seed = RandomStream::mix(2024, "survival", static_cast<std::uint64_t>(i));
    zero += run_trajectory(d, m, config).collapse_events == 0;
  }
  const double fraction = static_cast<double>(zero) / static_cast<double>(trials);
  CHECK(fraction == doctest::Approx(std::exp(-1.0)).epsilon(0.05));
}

TEST_CASE("trajectory step rejects a site/qubit mismatch") {
  CoherentDomain<double> d{{{0, 0}}, bell()};
  const DecoherenceModel m(1.0, 1.0);
  RandomStream rng(1);
  CHECK_THROWS_AS(trajectory_step(d, m, 0.1, rng), std::invalid_argument);
  CHECK_THROWS_AS(run_trajectory(d, m, TrajectoryConfig{0.1, 1, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(trigger_collapse(d, rng), std::invalid_argument);
}

TEST_CASE("triggered collapse of a basis state reads the bits back") {
  auto d = domain_with(PureState<double>::basis_state(3, 5));  // bits 101
  RandomStream rng(17);
  const auto outcomes = trigger_collapse(d, rng);
  REQUIRE(outcomes.size() == 3);
  CHECK(outcomes.at(SiteIndex{0, 0}) == 1);
  CHECK(outcomes.at(SiteIndex{1, 0}) == 0);
  CHECK(outcomes.at(SiteIndex{2, 0}) == 1);
  CHECK(std::abs(d.state.amplitude(5) - std::complex<double>(1, 0)) == 0.0);
}

TEST_CASE("triggered collapse of a Bell pair yields perfectly correlated bits") {
  RandomStream rng(23);
  int ones = 0;
  for (int trial = 0; trial < 400; ++trial) {
    auto d = domain_with(bell());
    const auto outcomes = trigger_collapse(d, rng);
    const int b0 = outcomes.at(SiteIndex{0, 0});
    const int b1 = outcomes.at(SiteIndex{1, 0});
    CHECK(b0 == b1);
    ones += b0;
    // The state is left in exactly the observed basis state.
    const std::uint64_t idx = static_cast<std::uint64_t>(b0) |
                              (static_cast<std::uint64_t>(b1) << 1);
    CHECK(std::abs(d.state.amplitude(idx) - std::complex<double>(1, 0)) == 0.0);
  }
  CHECK(ones > 120);
  CHECK(ones < 280);
}

TEST_CASE("triggered collapse of a GHZ state never splits the register") {
  const auto ghz = make_state<double>(
      3, {{1, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {1, 0}});
  RandomStream rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    auto d = domain_with(ghz);
    const auto outcomes = trigger_collapse(d, rng);
    const int b = outcomes.at(SiteIndex{0, 0});
    CHECK(outcomes.at(SiteIndex{1, 0}) == b);
    CHECK(outcomes.at(SiteIndex{2, 0}) == b);
  }
}
