#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "doctest.h"
#include "mtq/entangle.hpp"
#include "test_util.hpp"

using namespace mtq;
using C = std::complex<double>;

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475;
constexpr double kInvSqrt3 = 0.5773502691896258;
// Schmidt data of (1/sqrt(3))(|00> + |01> + |11>): squares (3 +- sqrt(5))/6.
constexpr double kZetaLambdaPlus = 0.8726779962499649;
constexpr double kZetaLambdaMinus = 0.12732200375003502;
constexpr double kZetaSigmaPlus = 0.9341723589627158;
constexpr double kZetaSigmaMinus = 0.3568220897730899;
constexpr double kZetaEntropyBits = 0.5500477595827573;

PureState<double> bell() {
  return make_state(2, {C(1), C(0), C(0), C(1)});
}

// |X> = (1/sqrt(2))(|00> + |01>): site 1 in superposition, site 0 fixed.
PureState<double> x_state() {
  return make_state(2, {C(1), C(0), C(1), C(0)});
}

PureState<double> zeta() {
  return make_state(2, {C(1), C(0), C(1), C(1)});
}

// (1/sqrt(2))(|01> + |10>): opposite helicities, (-1,+1) -> bits (0,1).
PureState<double> pion_pair() {
  return make_state(2, {C(0), C(1), C(1), C(0)});
}

}  // namespace

TEST_CASE("split validation") {
  REQUIRE_THROWS_AS(BipartiteSplit(2, {}), std::invalid_argument);
  REQUIRE_THROWS_AS(BipartiteSplit(2, {0, 1}), std::invalid_argument);
  REQUIRE_THROWS_AS(BipartiteSplit(2, {0, 0}), std::invalid_argument);
  REQUIRE_THROWS_AS(BipartiteSplit(2, {2}), std::invalid_argument);
  const BipartiteSplit split(4, {2, 0});
  REQUIRE(split.left() == std::vector<int>{0, 2});
  REQUIRE(split.right() == std::vector<int>{1, 3});
}

TEST_CASE("Bell state has the flat two-value spectrum") {
  const auto spectrum = schmidt_decompose(bell(), BipartiteSplit(2, {0}));
  REQUIRE(spectrum.size() == 2);
  REQUIRE(spectrum.coefficient(0) == doctest::Approx(kInvSqrt2).epsilon(1e-12));
  REQUIRE(spectrum.coefficient(1) == doctest::Approx(kInvSqrt2).epsilon(1e-12));
}

TEST_CASE("product basis state has a singleton spectrum") {
  const auto spectrum = schmidt_decompose(basis_ket("00"), BipartiteSplit(2, {0}));
  REQUIRE(spectrum.size() == 1);
  REQUIRE(spectrum.coefficient(0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zeta spectrum matches the closed form") {
  for (const auto& left : {std::vector<int>{0}, std::vector<int>{1}}) {
    const auto spectrum = schmidt_decompose(zeta(), BipartiteSplit(2, left));
    REQUIRE(spectrum.size() == 2);
    REQUIRE(spectrum.coefficient(0) == doctest::Approx(kZetaSigmaPlus).epsilon(1e-10));
    REQUIRE(spectrum.coefficient(1) == doctest::Approx(kZetaSigmaMinus).epsilon(1e-10));
    const double l0 = spectrum.coefficient(0) * spectrum.coefficient(0);
    const double l1 = spectrum.coefficient(1) * spectrum.coefficient(1);
    REQUIRE(std::abs(l0 - kZetaLambdaPlus) < 1e-10);
    REQUIRE(std::abs(l1 - kZetaLambdaMinus) < 1e-10);
  }
}

TEST_CASE("spectrum is invariant under relabeling within a side") {
  RandomStream rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = mtq::testing::random_state(4, rng);
    const BipartiteSplit split(4, {0, 1});
    const auto base = schmidt_decompose(s, split);
    const auto swapped = schmidt_decompose(mtq::testing::swap_qubits(s, 0, 1), split);
    REQUIRE(base.size() == swapped.size());
    for (Eigen::Index k = 0; k < base.size(); ++k)
      REQUIRE(base.coefficient(k) ==
              doctest::Approx(swapped.coefficient(k)).epsilon(1e-10));
  }
}

TEST_CASE("schmidt_form reconstructs the state") {
  RandomStream rng(34);
  for (int n : {2, 3, 4}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto s = mtq::testing::random_state(n, rng);
      for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t(1) << n); ++mask) {
        std::vector<int> left;
        for (int q = 0; q < n; ++q)
          if (mask >> q & 1) left.push_back(q);
        const BipartiteSplit split(n, left);
        const auto rebuilt = reconstruct_state(schmidt_form(s, split), split);
        for (std::uint64_t i = 0; i < (std::uint64_t(1) << n); ++i)
          REQUIRE(std::abs(rebuilt.amplitude(i) - s.amplitude(i)) < 1e-10);
      }
    }
  }
}

TEST_CASE("schmidt vectors are orthonormal") {
  RandomStream rng(35);
  const auto s = mtq::testing::random_state(4, rng);
  const BipartiteSplit split(4, {1, 3});
  const auto form = schmidt_form(s, split);
  const auto gram_left =
      (form.left_vectors.adjoint() * form.left_vectors).eval();
  const auto gram_right =
      (form.right_vectors.adjoint() * form.right_vectors).eval();
  REQUIRE((gram_left - decltype(gram_left)::Identity(gram_left.rows(), gram_left.cols()))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  REQUIRE((gram_right -
           decltype(gram_right)::Identity(gram_right.rows(), gram_right.cols()))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
}

TEST_CASE("factorizability classifications") {
  const BipartiteSplit split(2, {0});
  REQUIRE(is_factorizable(x_state(), split));
  REQUIRE_FALSE(is_factorizable(bell(), split));
  REQUIRE_FALSE(is_factorizable(zeta(), split));
  REQUIRE_FALSE(is_factorizable(zeta(), BipartiteSplit(2, {1})));
  RandomStream rng(36);
  const auto prod =
      tensor_product(mtq::testing::random_state(1, rng), mtq::testing::random_state(2, rng));
  REQUIRE(is_factorizable(prod, BipartiteSplit(3, {0})));
  REQUIRE_THROWS_AS(is_factorizable(bell(), split, -1.0), std::invalid_argument);
}

TEST_CASE("entropy of the worked states") {
  REQUIRE(entanglement_entropy(bell(), BipartiteSplit(2, {0})) ==
          doctest::Approx(1.0).epsilon(1e-10));
  REQUIRE(entanglement_entropy(x_state(), BipartiteSplit(2, {0})) ==
          doctest::Approx(0.0).epsilon(1e-10));
  const double zeta_bits = entanglement_entropy(zeta(), BipartiteSplit(2, {0}));
  REQUIRE(std::abs(zeta_bits - kZetaEntropyBits) < 1e-10);
  REQUIRE(std::abs(zeta_bits - 0.550) < 0.001);
}

TEST_CASE("entropy bounds and the factorizability link") {
  RandomStream rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = mtq::testing::random_state(3, rng);
    for (const auto& left : {std::vector<int>{0}, std::vector<int>{1, 2}}) {
      const BipartiteSplit split(3, left);
      const double bits = entanglement_entropy(s, split);
      REQUIRE(bits >= -1e-12);
      REQUIRE(bits <= 1.0 + 1e-12);  // min(|left|, |right|) = 1 here
      if (is_factorizable(s, split)) REQUIRE(bits < 1e-8);
      if (bits > 0.01) REQUIRE_FALSE(is_factorizable(s, split));
    }
  }
}

TEST_CASE("conditioning the pion pair pins the partner") {
  const auto conditioned = conditional_collapse(pion_pair(), 0, 1);
  // Only |10> survives: site 1 reads 0 with probability one.
  REQUIRE(std::abs(conditioned.amplitude(1) - C(1)) < 1e-12);
  REQUIRE(detail::marginal_probability(conditioned, 1, 0) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("conditioning a product state leaves the partner marginal alone") {
  RandomStream rng(38);
  const auto a = mtq::testing::random_state(1, rng);
  const auto b = mtq::testing::random_state(1, rng);
  const auto prod = tensor_product(a, b);
  const auto conditioned = conditional_collapse(prod, 0, 0);
  REQUIRE(detail::marginal_probability(conditioned, 1, 1) ==
          doctest::Approx(detail::marginal_probability(prod, 1, 1)).epsilon(1e-12));
}

TEST_CASE("conditional collapse matches the Bayes oracle on random states") {
  RandomStream rng(39);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = mtq::testing::random_state(3, rng);
    for (int q = 0; q < 3; ++q) {
      for (int outcome : {0, 1}) {
        const double p = detail::marginal_probability(s, q, outcome);
        if (p < 1e-12) continue;
        const auto collapsed = conditional_collapse(s, q, outcome);
        for (std::uint64_t i = 0; i < 8; ++i) {
          const bool matches = ((i >> q & 1) != 0) == (outcome == 1);
          const C expected = matches ? s.amplitude(i) / std::sqrt(p) : C(0);
          REQUIRE(std::abs(collapsed.amplitude(i) - expected) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("zero-probability conditioning is rejected") {
  REQUIRE_THROWS_AS(conditional_collapse(basis_ket("00"), 0, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(conditional_collapse(basis_ket("00"), 0, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(conditional_collapse(basis_ket("00"), 5, 0), std::invalid_argument);
}

TEST_CASE("Bell correlations over sequential measurements") {
  RandomStream rng(40);
  const auto psi = bell();
  long both_zero = 0, both_one = 0;
  const long trials = 100000;
  for (long i = 0; i < trials; ++i) {
    auto [b0, after0] = measure_qubit(psi, 0, rng);
    auto [b1, after1] = measure_qubit(after0, 1, rng);
    REQUIRE(b0 == b1);
    (b0 == 0 ? both_zero : both_one) += 1;
  }
  REQUIRE(static_cast<double>(both_zero) / trials == doctest::Approx(0.5).epsilon(0.02));
  REQUIRE(both_zero + both_one == trials);
}
