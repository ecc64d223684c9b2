#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mtq/qstate.hpp"

namespace mtq {

/// Bipartition of a register into a nonempty left side and its nonempty
/// complement. Sides are kept sorted; the split is defined by the set of
/// left sites, not their order.
class BipartiteSplit {
 public:
  BipartiteSplit(int num_qubits, std::vector<int> left_sites)
      : num_qubits_(num_qubits), left_(std::move(left_sites)) {
    detail::check_qubit_count(num_qubits_);
    if (left_.empty())
      throw std::invalid_argument("split: left side is empty");
    std::sort(left_.begin(), left_.end());
    if (std::adjacent_find(left_.begin(), left_.end()) != left_.end())
      throw std::invalid_argument("split: duplicate site on the left side");
    for (int q : left_) detail::check_qubit(num_qubits_, q);
    if (std::cmp_equal(left_.size(), num_qubits_))
      throw std::invalid_argument("split: right side is empty");
    for (int q = 0; q < num_qubits_; ++q)
      if (!std::binary_search(left_.begin(), left_.end(), q)) right_.push_back(q);
  }

  int num_qubits() const { return num_qubits_; }
  const std::vector<int>& left() const { return left_; }
  const std::vector<int>& right() const { return right_; }

 private:
  int num_qubits_;
  std::vector<int> left_;
  std::vector<int> right_;
};

/// Schmidt coefficients across a split, nonincreasing, squares summing to
/// one. A single coefficient means the state factorizes.
template <typename Scalar = double>
class SchmidtSpectrum {
 public:
  using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit SchmidtSpectrum(RealVector coefficients)
      : coefficients_(std::move(coefficients)) {
    if (coefficients_.size() == 0)
      throw std::invalid_argument("Schmidt spectrum is empty");
    Scalar sum = 0;
    for (Eigen::Index k = 0; k < coefficients_.size(); ++k) {
      if (coefficients_[k] < Scalar(0))
        throw std::invalid_argument("Schmidt coefficients must be nonnegative");
      if (k > 0 && coefficients_[k] > coefficients_[k - 1])
        throw std::invalid_argument("Schmidt coefficients must be nonincreasing");
      sum += coefficients_[k] * coefficients_[k];
    }
    if (std::abs(sum - Scalar(1)) > Tolerances<Scalar>::norm)
      throw std::invalid_argument("Schmidt coefficient squares must sum to one");
  }

  const RealVector& coefficients() const { return coefficients_; }
  Eigen::Index size() const { return coefficients_.size(); }
  Scalar coefficient(Eigen::Index k) const { return coefficients_[k]; }

 private:
  RealVector coefficients_;
};

/// Full decomposition: state = sum_k coefficients[k] |left_k> (x) |right_k>,
/// with the two orthonormal families as matrix columns, mapped back into the
/// register through the split's site order.
template <typename Scalar = double>
struct SchmidtForm {
  Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> left_vectors;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> coefficients;
  Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> right_vectors;
};

namespace detail {

/// Amplitudes reshaped across the split: row r packs the left sites' bits
/// (left[j] at bit j), column c the right sites' likewise.
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> amplitude_matrix(
    const PureState<Scalar>& state, const BipartiteSplit& split) {
  if (split.num_qubits() != state.num_qubits())
    throw std::invalid_argument("split is over " + std::to_string(split.num_qubits()) +
                                " qubits but the state has " +
                                std::to_string(state.num_qubits()));
  const Eigen::Index rows = Eigen::Index(1) << split.left().size();
  const Eigen::Index cols = Eigen::Index(1) << split.right().size();
  Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::uint64_t left_bits =
        deposit_bits(static_cast<std::uint64_t>(r), split.left());
    for (Eigen::Index c = 0; c < cols; ++c) {
      const std::uint64_t index =
          left_bits | deposit_bits(static_cast<std::uint64_t>(c), split.right());
      m(r, c) = state.amplitudes()[static_cast<Eigen::Index>(index)];
    }
  }
  return m;
}

/// Values below the trim threshold are SVD noise and are dropped (the
/// leading value always survives).
template <typename Scalar>
Eigen::Index retained_rank(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& values) {
  Eigen::Index r = values.size();
  while (r > 1 && values[r - 1] < Tolerances<Scalar>::schmidt_trim) --r;
  return r;
}

}  // namespace detail

/// Schmidt coefficients of the state across the split (singular values of
/// the reshaped amplitude matrix, nonincreasing, zeros trimmed).
template <typename Scalar>
SchmidtSpectrum<Scalar> schmidt_decompose(const PureState<Scalar>& state,
                                          const BipartiteSplit& split) {
  const auto m = detail::amplitude_matrix(state, split);
  Eigen::JacobiSVD<std::remove_const_t<decltype(m)>> svd(m);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> values = svd.singularValues();
  const Eigen::Index r = detail::retained_rank(values);
  return SchmidtSpectrum<Scalar>(values.head(r).eval());
}

/// Decomposition with the vectors kept. Reconstruction is exact:
/// amplitude(deposit(r, left) | deposit(c, right)) =
///   sum_k left_vectors(r, k) coefficients[k] right_vectors(c, k).
template <typename Scalar>
SchmidtForm<Scalar> schmidt_form(const PureState<Scalar>& state,
                                 const BipartiteSplit& split) {
  const auto m = detail::amplitude_matrix(state, split);
  Eigen::JacobiSVD<std::remove_const_t<decltype(m)>> svd(
      m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> values = svd.singularValues();
  const Eigen::Index r = detail::retained_rank(values);
  return SchmidtForm<Scalar>{svd.matrixU().leftCols(r),
                             values.head(r),
                             svd.matrixV().conjugate().leftCols(r)};
}

/// Rebuild the register state from a Schmidt form (test oracle for the
/// decomposition and a constructor for designed entangled states).
template <typename Scalar>
PureState<Scalar> reconstruct_state(const SchmidtForm<Scalar>& form,
                                    const BipartiteSplit& split) {
  const auto m =
      (form.left_vectors *
       form.coefficients.template cast<std::complex<Scalar>>().asDiagonal() *
       form.right_vectors.transpose())
          .eval();
  typename PureState<Scalar>::Vector out =
      PureState<Scalar>::Vector::Zero(detail::dim_for(split.num_qubits()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const std::uint64_t left_bits =
        detail::deposit_bits(static_cast<std::uint64_t>(r), split.left());
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const std::uint64_t index =
          left_bits | detail::deposit_bits(static_cast<std::uint64_t>(c), split.right());
      out[static_cast<Eigen::Index>(index)] = m(r, c);
    }
  }
  return PureState<Scalar>(split.num_qubits(), std::move(out));
}

/// True when the state is a product across the split: at most one Schmidt
/// coefficient above `tol`.
template <typename Scalar>
bool is_factorizable(const PureState<Scalar>& state, const BipartiteSplit& split,
                     Scalar tol = Tolerances<Scalar>::factorizable) {
  if (!(tol >= Scalar(0)))
    throw std::invalid_argument("tolerance must be nonnegative");
  const auto spectrum = schmidt_decompose(state, split);
  return spectrum.size() < 2 || spectrum.coefficient(1) < tol;
}

/// Entanglement entropy in bits: -sum_k lambda_k log2 lambda_k with
/// lambda_k the squared coefficients. Zero iff factorizable; at most
/// min(|left|, |right|) bits.
template <typename Scalar>
Scalar entanglement_entropy(const SchmidtSpectrum<Scalar>& spectrum) {
  Scalar entropy = 0;
  for (Eigen::Index k = 0; k < spectrum.size(); ++k) {
    const Scalar lambda = spectrum.coefficient(k) * spectrum.coefficient(k);
    if (lambda > Scalar(0)) entropy -= lambda * std::log2(lambda);
  }
  return entropy;
}

template <typename Scalar>
Scalar entanglement_entropy(const PureState<Scalar>& state, const BipartiteSplit& split) {
  return entanglement_entropy(schmidt_decompose(state, split));
}

/// Project one site onto a chosen outcome and renormalize: the update a
/// remote observer applies after learning a correlated measurement result.
/// Outcomes rarer than Tolerances::min_probability are rejected.
template <typename Scalar>
PureState<Scalar> conditional_collapse(const PureState<Scalar>& state, int qubit,
                                       int outcome) {
  detail::check_qubit(state.num_qubits(), qubit);
  if (outcome != 0 && outcome != 1)
    throw std::invalid_argument("outcome must be 0 or 1");
  const Scalar p = detail::marginal_probability(state, qubit, outcome);
  if (p < Tolerances<Scalar>::min_probability)
    throw std::invalid_argument("conditional_collapse: outcome " +
                                std::to_string(outcome) + " on qubit " +
                                std::to_string(qubit) + " has probability " +
                                std::to_string(static_cast<double>(p)));
  return detail::project_qubit(state, qubit, outcome, p);
}

}  // namespace mtq
