#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mtq/rng.hpp"

namespace mtq {

/// Per-scalar numeric thresholds. The double column is the reference
/// contract; the float column is proportionally relaxed.
template <typename Scalar>
struct Tolerances;

template <>
struct Tolerances<double> {
  static constexpr double norm = 1e-10;             // unit-norm defect
  static constexpr double unitary = 1e-10;          // entrywise U^H U - I
  static constexpr double hermitian = 1e-12;        // entrywise H - H^H
  static constexpr double zero_norm = 1e-14;        // below this, input is rejected as zero
  static constexpr double schmidt_trim = 1e-15;     // singular values below are noise
  static constexpr double factorizable = 1e-9;      // default second-coefficient test
  static constexpr double min_probability = 1e-24;  // conditioning on rarer outcomes is rejected
};

template <>
struct Tolerances<float> {
  static constexpr float norm = 1e-4f;
  static constexpr float unitary = 1e-4f;
  static constexpr float hermitian = 1e-5f;
  static constexpr float zero_norm = 1e-6f;
  static constexpr float schmidt_trim = 1e-7f;
  static constexpr float factorizable = 1e-4f;
  static constexpr float min_probability = 1e-12f;
};

/// Hard cap on register width: amplitudes are stored densely.
inline constexpr int kMaxQubits = 24;
/// Dense Hamiltonians carry a full eigendecomposition; beyond this the
/// matrix alone is unreasonable.
inline constexpr int kMaxHamiltonianQubits = 12;

/// Conformational tunneling timescale in seconds (hbar / tunneling).
inline constexpr double kFlipTimescaleSeconds = 1e-11;
/// Default tunneling matrix element, natural units (hbar = 1), 1/s.
inline constexpr double kDefaultTunneling = 1.0 / kFlipTimescaleSeconds;
inline constexpr double kDefaultBias = 0.0;
/// Default nearest-neighbour dipole coupling, 1/s.
inline constexpr double kDefaultCoupling = 0.1 * kDefaultTunneling;

namespace detail {

inline bool is_power_of_two(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

inline void check_qubit_count(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits)
    throw std::invalid_argument("num_qubits must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(num_qubits));
}

inline Eigen::Index dim_for(int num_qubits) {
  return Eigen::Index(1) << num_qubits;
}

inline void check_qubit(int num_qubits, int qubit) {
  if (qubit < 0 || qubit >= num_qubits)
    throw std::invalid_argument("qubit " + std::to_string(qubit) +
                                " out of range for " + std::to_string(num_qubits) +
                                "-qubit state");
}

inline void check_basis_index(int num_qubits, std::uint64_t index) {
  if (index >= (std::uint64_t(1) << num_qubits))
    throw std::invalid_argument("basis index " + std::to_string(index) +
                                " out of range for " + std::to_string(num_qubits) +
                                "-qubit state");
}

/// Scatter the low bits of `sub` into the positions named by `targets`:
/// bit j of `sub` lands at bit targets[j] of the result.
inline std::uint64_t deposit_bits(std::uint64_t sub, std::span<const int> targets) {
  std::uint64_t out = 0;
  for (std::size_t j = 0; j < targets.size(); ++j)
    if (sub >> j & 1) out |= std::uint64_t(1) << targets[j];
  return out;
}

}  // namespace detail

/// Pure state of a register of two-state sites. Site i owns bit i of the
/// amplitude index (site 0 is the least significant bit), with 0 = |a> and
/// 1 = |b>, so the basis label "b0 b1 ... b(n-1)" maps to index sum_i b_i 2^i.
///
/// Invariant: amplitudes always have unit norm within Tolerances::norm.
/// Construction rejects anything else; make_state normalizes first.
template <typename Scalar = double>
class PureState {
 public:
  using ComplexT = std::complex<Scalar>;
  using Vector = Eigen::Matrix<ComplexT, Eigen::Dynamic, 1>;

  PureState(int num_qubits, Vector amplitudes)
      : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    detail::check_qubit_count(num_qubits_);
    if (amplitudes_.size() != detail::dim_for(num_qubits_))
      throw std::invalid_argument("amplitude count " + std::to_string(amplitudes_.size()) +
                                  " does not match " + std::to_string(num_qubits_) +
                                  " qubits");
    if (norm_defect() > Tolerances<Scalar>::norm)
      throw std::invalid_argument("state is not normalized (norm defect " +
                                  std::to_string(static_cast<double>(norm_defect())) + ")");
  }

  static PureState basis_state(int num_qubits, std::uint64_t index) {
    detail::check_qubit_count(num_qubits);
    detail::check_basis_index(num_qubits, index);
    Vector v = Vector::Zero(detail::dim_for(num_qubits));
    v[static_cast<Eigen::Index>(index)] = ComplexT(1);
    return PureState(num_qubits, std::move(v));
  }

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }

  ComplexT amplitude(std::uint64_t index) const {
    detail::check_basis_index(num_qubits_, index);
    return amplitudes_[static_cast<Eigen::Index>(index)];
  }

  /// | <psi|psi> - 1 |, the enforced invariant's measured slack.
  Scalar norm_defect() const {
    return std::abs(amplitudes_.squaredNorm() - Scalar(1));
  }

 private:
  int num_qubits_;
  Vector amplitudes_;
};

/// Normalize arbitrary (nonzero) amplitudes into a state. Proportional
/// inputs map to the same state; norms below Tolerances::zero_norm are
/// rejected rather than silently rescaled.
template <typename Scalar>
PureState<Scalar> make_state(int num_qubits,
                             const Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>& raw) {
  detail::check_qubit_count(num_qubits);
  if (raw.size() != detail::dim_for(num_qubits))
    throw std::invalid_argument("amplitude count " + std::to_string(raw.size()) +
                                " does not match " + std::to_string(num_qubits) + " qubits");
  const Scalar norm = raw.norm();
  if (norm < Tolerances<Scalar>::zero_norm)
    throw std::invalid_argument("cannot normalize amplitudes with norm " +
                                std::to_string(static_cast<double>(norm)));
  return PureState<Scalar>(num_qubits, raw / norm);
}

template <typename Scalar = double>
PureState<Scalar> make_state(int num_qubits,
                             std::initializer_list<std::complex<Scalar>> raw) {
  typename PureState<Scalar>::Vector v(static_cast<Eigen::Index>(raw.size()));
  Eigen::Index i = 0;
  for (const auto& c : raw) v[i++] = c;
  return make_state<Scalar>(num_qubits, v);
}

/// Basis index for a ket label written site-first: "01" means site 0 in
/// |0>, site 1 in |1>, i.e. index 2.
inline std::uint64_t ket_index(std::string_view bits) {
  if (bits.empty() || bits.size() > std::size_t(kMaxQubits))
    throw std::invalid_argument("ket label must name 1.." + std::to_string(kMaxQubits) +
                                " sites");
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      index |= std::uint64_t(1) << i;
    else if (bits[i] != '0')
      throw std::invalid_argument("ket label may contain only 0 and 1");
  }
  return index;
}

template <typename Scalar = double>
PureState<Scalar> basis_ket(std::string_view bits) {
  return PureState<Scalar>::basis_state(static_cast<int>(bits.size()), ket_index(bits));
}

template <typename Scalar = double>
PureState<Scalar> uniform_superposition(int num_qubits) {
  detail::check_qubit_count(num_qubits);
  const Eigen::Index dim = detail::dim_for(num_qubits);
  using Vector = typename PureState<Scalar>::Vector;
  const Scalar amp = Scalar(1) / std::sqrt(static_cast<Scalar>(dim));
  return PureState<Scalar>(num_qubits, Vector::Constant(dim, std::complex<Scalar>(amp)));
}

/// Born probability of one basis outcome, normalized by the state's squared
/// norm. The quotient keeps representable ratios exact even when the
/// individual |amplitude|^2 values round.
template <typename Scalar>
Scalar probability(const PureState<Scalar>& state, std::uint64_t index) {
  detail::check_basis_index(state.num_qubits(), index);
  const auto& amps = state.amplitudes();
  return std::norm(amps[static_cast<Eigen::Index>(index)]) / amps.squaredNorm();
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> probabilities(const PureState<Scalar>& state) {
  return state.amplitudes().cwiseAbs2() / state.amplitudes().squaredNorm();
}

/// <a|b>, conjugate-linear in the first argument.
template <typename Scalar>
std::complex<Scalar> inner_product(const PureState<Scalar>& a, const PureState<Scalar>& b) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("inner_product: qubit counts differ");
  return a.amplitudes().dot(b.amplitudes());
}

/// Combined register |a> (x) |b>. Sites of `a` keep their positions; sites
/// of `b` shift up by a.num_qubits(). Amplitudes multiply entrywise:
/// c[(jb << na) | ja] = a[ja] * b[jb].
template <typename Scalar>
PureState<Scalar> tensor_product(const PureState<Scalar>& a, const PureState<Scalar>& b) {
  const int n = a.num_qubits() + b.num_qubits();
  detail::check_qubit_count(n);
  typename PureState<Scalar>::Vector out(detail::dim_for(n));
  const Eigen::Index da = a.dim();
  for (Eigen::Index jb = 0; jb < b.dim(); ++jb) {
    const auto cb = b.amplitudes()[jb];
    for (Eigen::Index ja = 0; ja < da; ++ja)
      out[(jb << a.num_qubits()) | ja] = a.amplitudes()[ja] * cb;
  }
  return PureState<Scalar>(n, std::move(out));
}

/// Unitary on k sites, stored dense. Unitarity is validated entrywise on
/// construction: max |(U^H U - I)_{rc}| <= Tolerances::unitary.
template <typename Scalar = double>
class UnitaryOperator {
 public:
  using ComplexT = std::complex<Scalar>;
  using Matrix = Eigen::Matrix<ComplexT, Eigen::Dynamic, Eigen::Dynamic>;

  explicit UnitaryOperator(Matrix entries) : matrix_(std::move(entries)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 2 ||
        !detail::is_power_of_two(static_cast<std::uint64_t>(matrix_.rows())))
      throw std::invalid_argument("operator dimension must be a power of two >= 2");
    Matrix defect = matrix_.adjoint() * matrix_;
    defect.diagonal().array() -= ComplexT(1);
    const Scalar worst = defect.cwiseAbs().maxCoeff();
    if (worst > Tolerances<Scalar>::unitary)
      throw std::invalid_argument("operator is not unitary (defect " +
                                  std::to_string(static_cast<double>(worst)) + ")");
  }

  static UnitaryOperator identity(int num_qubits) {
    detail::check_qubit_count(num_qubits);
    return UnitaryOperator(Matrix::Identity(detail::dim_for(num_qubits),
                                            detail::dim_for(num_qubits)));
  }

  const Matrix& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }

  int num_qubits() const {
    int k = 0;
    while ((Eigen::Index(1) << k) < matrix_.rows()) ++k;
    return k;
  }

 private:
  Matrix matrix_;
};

/// Apply `u` to the named sites (targets[j] receives operator bit j),
/// identity elsewhere. Distinct in-range targets required.
template <typename Scalar>
PureState<Scalar> apply_operator(const UnitaryOperator<Scalar>& u,
                                 const PureState<Scalar>& state,
                                 std::span<const int> targets) {
  const int k = u.num_qubits();
  if (std::cmp_not_equal(targets.size(), k))
    throw std::invalid_argument("operator acts on " + std::to_string(k) +
                                " sites but " + std::to_string(targets.size()) +
                                " targets were given");
  std::uint64_t mask = 0;
  for (int t : targets) {
    detail::check_qubit(state.num_qubits(), t);
    if (mask & (std::uint64_t(1) << t))
      throw std::invalid_argument("duplicate target qubit " + std::to_string(t));
    mask |= std::uint64_t(1) << t;
  }

  const Eigen::Index d = u.dim();
  std::vector<std::uint64_t> offset(static_cast<std::size_t>(d));
  for (Eigen::Index s = 0; s < d; ++s)
    offset[static_cast<std::size_t>(s)] =
        detail::deposit_bits(static_cast<std::uint64_t>(s), targets);

  using Vector = typename PureState<Scalar>::Vector;
  const Vector& in = state.amplitudes();
  Vector out(in.size());
  Vector sub(d), transformed(d);
  const std::uint64_t dim = static_cast<std::uint64_t>(in.size());
  for (std::uint64_t base = 0; base < dim; ++base) {
    if (base & mask) continue;
    for (Eigen::Index s = 0; s < d; ++s)
      sub[s] = in[static_cast<Eigen::Index>(base | offset[static_cast<std::size_t>(s)])];
    transformed.noalias() = u.matrix() * sub;
    for (Eigen::Index s = 0; s < d; ++s)
      out[static_cast<Eigen::Index>(base | offset[static_cast<std::size_t>(s)])] =
          transformed[s];
  }
  return PureState<Scalar>(state.num_qubits(), std::move(out));
}

template <typename Scalar>
PureState<Scalar> apply_operator(const UnitaryOperator<Scalar>& u,
                                 const PureState<Scalar>& state,
                                 std::initializer_list<int> targets) {
  return apply_operator(u, state, std::span<const int>(targets.begin(), targets.size()));
}

/// Dense Hermitian generator of the dynamics, eigendecomposed eagerly so
/// stepping is exact unitary evolution rather than a finite-difference
/// integrator. Hermiticity validated entrywise on construction.
template <typename Scalar = double>
class Hamiltonian {
 public:
  using ComplexT = std::complex<Scalar>;
  using Matrix = Eigen::Matrix<ComplexT, Eigen::Dynamic, Eigen::Dynamic>;
  using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit Hamiltonian(Matrix entries) : matrix_(std::move(entries)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 2 ||
        !detail::is_power_of_two(static_cast<std::uint64_t>(matrix_.rows())))
      throw std::invalid_argument("Hamiltonian dimension must be a power of two >= 2");
    if (matrix_.rows() > detail::dim_for(kMaxHamiltonianQubits))
      throw std::invalid_argument("dense Hamiltonian capped at " +
                                  std::to_string(kMaxHamiltonianQubits) + " qubits");
    const Scalar defect = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (defect > Tolerances<Scalar>::hermitian)
      throw std::invalid_argument("Hamiltonian is not Hermitian (defect " +
                                  std::to_string(static_cast<double>(defect)) + ")");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("Hamiltonian eigendecomposition failed");
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
  }

  /// Two-state sites on an interaction graph:
  ///   H = sum_i (bias sz_i + tunneling sx_i) + sum_{(i,j) in edges} coupling sz_i sz_j
  /// with sz|0> = +|0>, sz|1> = -|1>. Real symmetric by construction.
  static Hamiltonian transverse_ising(int num_qubits, Scalar bias, Scalar tunneling,
                                      Scalar coupling,
                                      std::span<const std::pair<int, int>> edges) {
    detail::check_qubit_count(num_qubits);
    if (num_qubits > kMaxHamiltonianQubits)
      throw std::invalid_argument("dense Hamiltonian capped at " +
                                  std::to_string(kMaxHamiltonianQubits) + " qubits");
    for (const auto& [i, j] : edges) {
      detail::check_qubit(num_qubits, i);
      detail::check_qubit(num_qubits, j);
      if (i == j) throw std::invalid_argument("coupling edge joins a site to itself");
    }
    const Eigen::Index dim = detail::dim_for(num_qubits);
    Matrix h = Matrix::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
      const std::uint64_t bits = static_cast<std::uint64_t>(b);
      Scalar diag = 0;
      for (int i = 0; i < num_qubits; ++i)
        diag += bits >> i & 1 ? -bias : bias;
      for (const auto& [i, j] : edges) {
        const Scalar zi = bits >> i & 1 ? Scalar(-1) : Scalar(1);
        const Scalar zj = bits >> j & 1 ? Scalar(-1) : Scalar(1);
        diag += coupling * zi * zj;
      }
      h(b, b) = ComplexT(diag);
      for (int i = 0; i < num_qubits; ++i)
        h(b ^ (Eigen::Index(1) << i), b) += ComplexT(tunneling);
    }
    return Hamiltonian(std::move(h));
  }

  const Matrix& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const RealVector& eigenvalues() const { return eigenvalues_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }

 private:
  Matrix matrix_;
  RealVector eigenvalues_;
  Matrix eigenvectors_;
};

/// One step of the Schrodinger equation in natural units (hbar = 1):
/// psi' = exp(-i H dt) psi, computed through the cached eigenbasis.
template <typename Scalar>
PureState<Scalar> schrodinger_step(const Hamiltonian<Scalar>& h,
                                   const PureState<Scalar>& state, Scalar dt) {
  if (h.dim() != state.dim())
    throw std::invalid_argument("Hamiltonian dimension does not match state");
  if (!(dt > Scalar(0)))
    throw std::invalid_argument("dt must be positive");
  using Vector = typename PureState<Scalar>::Vector;
  Vector in_basis = h.eigenvectors().adjoint() * state.amplitudes();
  for (Eigen::Index k = 0; k < in_basis.size(); ++k)
    in_basis[k] *= std::exp(std::complex<Scalar>(0, -h.eigenvalues()[k] * dt));
  Vector out = h.eigenvectors() * in_basis;
  return PureState<Scalar>(state.num_qubits(), std::move(out));
}

namespace detail {

template <typename Scalar>
Scalar marginal_probability(const PureState<Scalar>& state, int qubit, int outcome) {
  const auto& amps = state.amplitudes();
  const std::uint64_t bit = std::uint64_t(1) << qubit;
  Scalar p = 0;
  for (Eigen::Index i = 0; i < amps.size(); ++i)
    if (((static_cast<std::uint64_t>(i) & bit) != 0) == (outcome == 1))
      p += std::norm(amps[i]);
  return std::clamp(p / amps.squaredNorm(), Scalar(0), Scalar(1));
}

/// Projective update: zero the mismatching half, renormalize by the
/// outcome probability. Caller guarantees prob > 0.
template <typename Scalar>
PureState<Scalar> project_qubit(const PureState<Scalar>& state, int qubit, int outcome,
                                Scalar prob) {
  using Vector = typename PureState<Scalar>::Vector;
  const Scalar scale = Scalar(1) / std::sqrt(prob);
  const std::uint64_t bit = std::uint64_t(1) << qubit;
  Vector out = state.amplitudes();
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (((static_cast<std::uint64_t>(i) & bit) != 0) == (outcome == 1))
      out[i] *= scale;
    else
      out[i] = std::complex<Scalar>(0);
  }
  return PureState<Scalar>(state.num_qubits(), std::move(out));
}

}  // namespace detail

/// Measure one site in the |a>/|b> basis. Returns the outcome bit and the
/// collapsed state. Consumes exactly one draw from `rng`, so a repeated
/// measurement of the returned state reproduces the outcome with
/// probability one.
template <typename Scalar>
std::pair<int, PureState<Scalar>> measure_qubit(const PureState<Scalar>& state, int qubit,
                                                RandomStream& rng) {
  detail::check_qubit(state.num_qubits(), qubit);
  const Scalar p1 = detail::marginal_probability(state, qubit, 1);
  const int outcome = rng.next_unit() < static_cast<double>(p1) ? 1 : 0;
  const Scalar p = outcome == 1 ? p1 : Scalar(1) - p1;
  return {outcome, detail::project_qubit(state, qubit, outcome, p)};
}

/// Text form: header "n=<qubits>", then one "index re im" line per nonzero
/// amplitude in index order, printed with max_digits10 significant digits
/// so a round trip is lossless.
template <typename Scalar>
void write_state(std::ostream& os, const PureState<Scalar>& state) {
  os << "n=" << state.num_qubits() << "\n";
  constexpr int digits = std::numeric_limits<Scalar>::max_digits10;
  char buf[128];
  const auto& amps = state.amplitudes();
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    const auto c = amps[i];
    if (c.real() == Scalar(0) && c.imag() == Scalar(0)) continue;
    std::snprintf(buf, sizeof buf, "%llu %.*g %.*g\n",
                  static_cast<unsigned long long>(i), digits,
                  static_cast<double>(c.real()), digits, static_cast<double>(c.imag()));
    os << buf;
  }
}

namespace detail {

inline std::string_view trimmed(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Parse the text form. Amplitudes are normalized on load (a hand-edited
/// file need not be exactly unit norm); zero or duplicate entries are
/// rejected with the offending line number.
template <typename Scalar = double>
PureState<Scalar> read_state(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw std::invalid_argument("state input: missing 'n=<qubits>' header");
  std::string_view header = detail::trimmed(line);
  if (!header.starts_with("n="))
    throw std::invalid_argument("state input: header must be 'n=<qubits>'");
  int n = 0;
  const char* first = header.data() + 2;
  const char* last = header.data() + header.size();
  auto [ptr, ec] = std::from_chars(first, last, n);
  if (ec != std::errc() || ptr != last)
    throw std::invalid_argument("state input: malformed qubit count '" +
                                std::string(header.substr(2)) + "'");
  detail::check_qubit_count(n);

  const Eigen::Index dim = detail::dim_for(n);
  typename PureState<Scalar>::Vector raw =
      PureState<Scalar>::Vector::Zero(dim);
  std::vector<bool> seen(static_cast<std::size_t>(dim), false);
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (detail::trimmed(line).empty()) continue;
    std::istringstream ls{std::string(detail::trimmed(line))};
    unsigned long long index = 0;
    double re = 0, im = 0;
    std::string extra;
    if (!(ls >> index >> re >> im) || (ls >> extra))
      throw std::invalid_argument("state input line " + std::to_string(lineno) +
                                  ": expected 'index re im'");
    if (index >= static_cast<unsigned long long>(dim))
      throw std::invalid_argument("state input line " + std::to_string(lineno) +
                                  ": index " + std::to_string(index) + " out of range");
    if (seen[index])
      throw std::invalid_argument("state input line " + std::to_string(lineno) +
                                  ": duplicate index " + std::to_string(index));
    seen[index] = true;
    raw[static_cast<Eigen::Index>(index)] =
        std::complex<Scalar>(static_cast<Scalar>(re), static_cast<Scalar>(im));
  }
  return make_state<Scalar>(n, raw);
}

template <typename Scalar>
void save_state(const std::string& path, const PureState<Scalar>& state) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_state(os, state);
  if (!os.flush()) throw std::runtime_error("write to '" + path + "' failed");
}

template <typename Scalar = double>
PureState<Scalar> load_state(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open '" + path + "' for reading");
  return read_state<Scalar>(is);
}

}  // namespace mtq
