#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "mtq/qstate.hpp"
#include "mtq/rng.hpp"

namespace mtq::testing {

/// Haar-ish random state: uniform box amplitudes, normalized. Deterministic
/// given the stream.
inline PureState<double> random_state(int num_qubits, RandomStream& rng) {
  typename PureState<double>::Vector v(detail::dim_for(num_qubits));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v[i] = std::complex<double>(2 * rng.next_unit() - 1, 2 * rng.next_unit() - 1);
  return make_state<double>(num_qubits, v);
}

/// Random unitary via QR of a random complex matrix.
inline UnitaryOperator<double> random_unitary(int num_qubits, RandomStream& rng) {
  using Matrix = UnitaryOperator<double>::Matrix;
  const Eigen::Index d = detail::dim_for(num_qubits);
  Matrix m(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c)
      m(r, c) = std::complex<double>(2 * rng.next_unit() - 1, 2 * rng.next_unit() - 1);
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ();
  return UnitaryOperator<double>(std::move(q));
}

/// Exchange the roles of two qubits (permutes amplitude indices).
inline PureState<double> swap_qubits(const PureState<double>& state, int qa, int qb) {
  typename PureState<double>::Vector v(state.dim());
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    const std::uint64_t u = static_cast<std::uint64_t>(i);
    const std::uint64_t ba = u >> qa & 1;
    const std::uint64_t bb = u >> qb & 1;
    std::uint64_t j = u & ~(std::uint64_t(1) << qa) & ~(std::uint64_t(1) << qb);
    j |= ba << qb | bb << qa;
    v[static_cast<Eigen::Index>(j)] = state.amplitudes()[i];
  }
  return PureState<double>(state.num_qubits(), std::move(v));
}

/// Total variation distance between an empirical count map over basis
/// indices and the exact Born distribution.
inline double total_variation(const std::map<std::uint64_t, long>& counts, long samples,
                              const PureState<double>& state) {
  double tv = 0;
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    const auto it = counts.find(static_cast<std::uint64_t>(i));
    const double freq =
        it == counts.end() ? 0.0 : static_cast<double>(it->second) / samples;
    tv += std::abs(freq - probability(state, static_cast<std::uint64_t>(i)));
  }
  return tv / 2;
}

}  // namespace mtq::testing
