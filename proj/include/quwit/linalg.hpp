// Copyright 2026 The quwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "quwit/config.hpp"
#include "quwit/error.hpp"

namespace quwit {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Level counts of a qudit register. Site 0 is the most significant digit of
/// the mixed-radix register index.
class QuditDims {
 public:
  QuditDims() = default;

  explicit QuditDims(std::vector<int> levels) : levels_(std::move(levels)) {
    detail::require(!levels_.empty(), "a register needs at least one site");
    strides_.assign(levels_.size(), 1);
    std::size_t running = 1;
    for (std::size_t i = levels_.size(); i-- > 0;) {
      const int level = levels_[i];
      detail::require(level >= 2, "every site needs at least two levels, got " +
                                      std::to_string(level));
      strides_[i] = running;
      if (running > std::numeric_limits<std::size_t>::max() /
                        static_cast<std::size_t>(level)) {
        throw DimensionCapExceeded("register dimension overflows size_t");
      }
      running *= static_cast<std::size_t>(level);
    }
    total_ = running;
  }

  static QuditDims uniform(int levels, std::size_t sites) {
    detail::require(sites >= 1, "a register needs at least one site");
    return QuditDims(std::vector<int>(sites, levels));
  }

  std::size_t sites() const { return levels_.size(); }
  int level(std::size_t site) const { return levels_.at(site); }
  const std::vector<int>& levels() const { return levels_; }
  std::size_t total() const { return total_; }
  std::size_t stride(std::size_t site) const { return strides_.at(site); }

  int digit(std::size_t index, std::size_t site) const {
    return static_cast<int>((index / strides_[site]) %
                            static_cast<std::size_t>(levels_[site]));
  }

  std::vector<int> digits(std::size_t index) const {
    detail::require(index < total_, "register index out of range");
    std::vector<int> out(levels_.size());
    for (std::size_t s = 0; s < levels_.size(); ++s) out[s] = digit(index, s);
    return out;
  }

  std::size_t index_of(std::span<const int> digits) const {
    detail::require(digits.size() == levels_.size(), "digit count mismatch");
    std::size_t index = 0;
    for (std::size_t s = 0; s < levels_.size(); ++s) {
      detail::require(digits[s] >= 0 && digits[s] < levels_[s],
                      "digit out of range at site " + std::to_string(s));
      index += static_cast<std::size_t>(digits[s]) * strides_[s];
    }
    return index;
  }

  /// Dimensions of the sub-register formed by `support`, in the given order.
  QuditDims select(std::span<const std::size_t> support) const {
    std::vector<int> sub;
    sub.reserve(support.size());
    for (auto s : support) sub.push_back(level(s));
    return QuditDims(std::move(sub));
  }

  friend bool operator==(const QuditDims& a, const QuditDims& b) {
    return a.levels_ == b.levels_;
  }

 private:
  std::vector<int> levels_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 0;
};

namespace detail {

inline void require_pure_cap(std::size_t total) {
  if (total > caps().pure) {
    throw DimensionCapExceeded("state dimension " + std::to_string(total) +
                               " exceeds the pure-state cap " +
                               std::to_string(caps().pure));
  }
}

inline void require_dense_cap(std::size_t total) {
  if (total > caps().dense) {
    throw DimensionCapExceeded("operator dimension " + std::to_string(total) +
                               " exceeds the dense-operator cap " +
                               std::to_string(caps().dense));
  }
}

inline double hermitian_residue(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline void require_square(const Matrix& m, std::size_t dim, const char* what) {
  if (static_cast<std::size_t>(m.rows()) != dim ||
      static_cast<std::size_t>(m.cols()) != dim) {
    throw InvalidArgument(std::string(what) + ": expected a " +
                          std::to_string(dim) + "x" + std::to_string(dim) +
                          " matrix, got " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()));
  }
}

inline void require_sites(std::span<const std::size_t> sites, std::size_t count,
                          const char* what) {
  std::vector<std::size_t> sorted(sites.begin(), sites.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument(std::string(what) + ": repeated site index");
  }
  for (auto s : sorted) {
    if (s >= count) {
      throw InvalidArgument(std::string(what) + ": site " + std::to_string(s) +
                            " out of range for " + std::to_string(count) +
                            " sites");
    }
  }
}

/// Register offsets contributed by every configuration of `sites`; the first
/// listed site is the most significant digit of the configuration index.
inline std::vector<std::size_t> site_offsets(const QuditDims& dims,
                                             std::span<const std::size_t> sites) {
  std::vector<std::size_t> offsets{0};
  for (auto s : sites) {
    const auto level = static_cast<std::size_t>(dims.level(s));
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * level);
    for (auto base : offsets) {
      for (std::size_t v = 0; v < level; ++v) next.push_back(base + v * dims.stride(s));
    }
    offsets = std::move(next);
  }
  return offsets;
}

inline std::vector<std::size_t> complement(std::span<const std::size_t> sites,
                                           std::size_t count) {
  std::vector<bool> used(count, false);
  for (auto s : sites) used[s] = true;
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < count; ++s) {
    if (!used[s]) out.push_back(s);
  }
  return out;
}

}  // namespace detail

class PureState {
 public:
  PureState(QuditDims dims, Vector amplitudes)
      : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
    detail::require_pure_cap(dims_.total());
    detail::require(static_cast<std::size_t>(amplitudes_.size()) == dims_.total(),
                    "amplitude count does not match the register dimension");
    const double norm2 = amplitudes_.squaredNorm();
    detail::require(std::abs(norm2 - 1.0) <= tolerances().normalization,
                    "state is not normalised (|psi|^2 = " + std::to_string(norm2) +
                        ")");
  }

  static PureState normalized(QuditDims dims, Vector amplitudes) {
    const double norm = amplitudes.norm();
    detail::require(norm > 0.0, "cannot normalise the zero vector");
    amplitudes /= norm;
    return PureState(std::move(dims), std::move(amplitudes));
  }

  /// Computational basis state |digits>.
  static PureState basis(QuditDims dims, std::span<const int> digits) {
    detail::require_pure_cap(dims.total());
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dims.total()));
    v(static_cast<Eigen::Index>(dims.index_of(digits))) = 1.0;
    return PureState(std::move(dims), std::move(v));
  }

  const QuditDims& dims() const { return dims_; }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex amplitude(std::size_t index) const {
    return amplitudes_(static_cast<Eigen::Index>(index));
  }

 private:
  QuditDims dims_;
  Vector amplitudes_;
};

class DensityOperator {
 public:
  DensityOperator(QuditDims dims, Matrix matrix)
      : dims_(std::move(dims)), matrix_(std::move(matrix)) {
    detail::require_dense_cap(dims_.total());
    detail::require_square(matrix_, dims_.total(), "density operator");
    const auto& tol = tolerances();
    detail::require(detail::hermitian_residue(matrix_) <= tol.normalization,
                    "density operator is not Hermitian");
    detail::require(std::abs(matrix_.trace() - Complex(1.0)) <= tol.normalization,
                    "density operator trace differs from one");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
    detail::require(solver.eigenvalues()(0) >= -tol.psd,
                    "density operator has a negative eigenvalue");
  }

  static DensityOperator from_pure(const PureState& psi) {
    detail::require_dense_cap(psi.dims().total());
    return DensityOperator(Trusted{}, psi.dims(),
                           psi.amplitudes() * psi.amplitudes().adjoint());
  }

  /// p * I / dim + (1 - p) * |psi><psi|.
  static DensityOperator white_noise(const PureState& psi, double p) {
    detail::require(p >= 0.0 && p <= 1.0, "noise probability must lie in [0, 1]");
    detail::require_dense_cap(psi.dims().total());
    const auto dim = static_cast<Eigen::Index>(psi.dims().total());
    Matrix m = (1.0 - p) * (psi.amplitudes() * psi.amplitudes().adjoint());
    m.diagonal().array() += p / static_cast<double>(dim);
    return DensityOperator(Trusted{}, psi.dims(), std::move(m));
  }

  static DensityOperator maximally_mixed(const QuditDims& dims) {
    detail::require_dense_cap(dims.total());
    const auto dim = static_cast<Eigen::Index>(dims.total());
    return DensityOperator(Trusted{}, dims,
                           Matrix::Identity(dim, dim) / static_cast<double>(dim));
  }

  const QuditDims& dims() const { return dims_; }
  const Matrix& matrix() const { return matrix_; }

 private:
  struct Trusted {};
  DensityOperator(Trusted, QuditDims dims, Matrix matrix)
      : dims_(std::move(dims)), matrix_(std::move(matrix)) {}

  QuditDims dims_;
  Matrix matrix_;
};

/// rho(p) = p * I / dim + (1 - p) * |psi><psi| held implicitly, so it costs no
/// more memory than the pure state.
class WhiteNoiseState {
 public:
  WhiteNoiseState(PureState pure, double noise) : pure_(std::move(pure)), noise_(noise) {
    detail::require(noise_ >= 0.0 && noise_ <= 1.0,
                    "noise probability must lie in [0, 1]");
  }

  const PureState& pure() const { return pure_; }
  double noise() const { return noise_; }
  const QuditDims& dims() const { return pure_.dims(); }

  DensityOperator to_density() const {
    return DensityOperator::white_noise(pure_, noise_);
  }

 private:
  PureState pure_;
  double noise_;
};

template <typename S>
concept QuantumState = std::same_as<S, PureState> ||
                       std::same_as<S, DensityOperator> ||
                       std::same_as<S, WhiteNoiseState>;

/// An operator acting on an ordered subset of register sites. Matrix rows are
/// indexed by the configuration of `support` with the first site most
/// significant.
class LocalOperator {
 public:
  LocalOperator(std::vector<std::size_t> support, std::vector<int> levels,
                Matrix matrix)
      : support_(std::move(support)),
        levels_(std::move(levels)),
        matrix_(std::move(matrix)) {
    detail::require(!support_.empty(), "local operator needs a nonempty support");
    detail::require(support_.size() == levels_.size(),
                    "local operator support and level lists differ in length");
    detail::require_sites(support_, std::numeric_limits<std::size_t>::max(),
                          "local operator");
    std::size_t dim = 1;
    for (int l : levels_) {
      detail::require(l >= 2, "local operator levels must be at least two");
      dim *= static_cast<std::size_t>(l);
    }
    detail::require_square(matrix_, dim, "local operator");
  }

  static LocalOperator identity(std::vector<std::size_t> support,
                                std::vector<int> levels) {
    std::size_t dim = 1;
    for (int l : levels) dim *= static_cast<std::size_t>(std::max(l, 1));
    const auto n = static_cast<Eigen::Index>(dim);
    return LocalOperator(std::move(support), std::move(levels),
                         Matrix::Identity(n, n));
  }

  const std::vector<std::size_t>& support() const { return support_; }
  const std::vector<int>& levels() const { return levels_; }
  const Matrix& matrix() const { return matrix_; }
  std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }

  /// Same matrix acting on different sites.
  LocalOperator placed_at(std::vector<std::size_t> support) const {
    return LocalOperator(std::move(support), levels_, matrix_);
  }

  LocalOperator with_matrix(Matrix matrix) const {
    return LocalOperator(support_, levels_, std::move(matrix));
  }

 private:
  std::vector<std::size_t> support_;
  std::vector<int> levels_;
  Matrix matrix_;
};

namespace detail {

inline void require_compatible(const LocalOperator& op, const QuditDims& dims) {
  require_sites(op.support(), dims.sites(), "local operator");
  for (std::size_t i = 0; i < op.support().size(); ++i) {
    if (dims.level(op.support()[i]) != op.levels()[i]) {
      throw InvalidArgument("local operator level mismatch at site " +
                            std::to_string(op.support()[i]));
    }
  }
}

struct Layout {
  std::vector<std::size_t> local;  // offsets of support configurations
  std::vector<std::size_t> bases;  // offsets of off-support configurations
};

inline Layout layout_of(const LocalOperator& op, const QuditDims& dims) {
  require_compatible(op, dims);
  const auto rest = complement(op.support(), dims.sites());
  return Layout{site_offsets(dims, op.support()), site_offsets(dims, rest)};
}

}  // namespace detail

/// Full-space matrix of `op` tensored with the identity on every other site.
inline Matrix embed(const LocalOperator& op, const QuditDims& dims) {
  detail::require_dense_cap(dims.total());
  const auto layout = detail::layout_of(op, dims);
  const auto dim = static_cast<Eigen::Index>(dims.total());
  Matrix full = Matrix::Zero(dim, dim);
  const auto& m = op.matrix();
  for (auto base : layout.bases) {
    for (std::size_t a = 0; a < layout.local.size(); ++a) {
      for (std::size_t b = 0; b < layout.local.size(); ++b) {
        full(static_cast<Eigen::Index>(base + layout.local[a]),
             static_cast<Eigen::Index>(base + layout.local[b])) =
            m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      }
    }
  }
  return full;
}

/// Re-express `op` on an ordered superset of its support.
inline LocalOperator extend(const LocalOperator& op,
                            const std::vector<std::size_t>& target_support,
                            const std::vector<int>& target_levels) {
  detail::require(target_support.size() == target_levels.size(),
                  "target support and level lists differ in length");
  std::vector<std::size_t> positions;
  positions.reserve(op.support().size());
  for (auto s : op.support()) {
    const auto it = std::find(target_support.begin(), target_support.end(), s);
    detail::require(it != target_support.end(),
                    "target support does not contain site " + std::to_string(s));
    positions.push_back(static_cast<std::size_t>(it - target_support.begin()));
  }
  const QuditDims sub(target_levels);
  return LocalOperator(target_support, target_levels, embed(op.placed_at(positions), sub));
}

/// op * x without materialising the full-space operator.
inline Vector apply(const LocalOperator& op, const QuditDims& dims, const Vector& x) {
  detail::require(static_cast<std::size_t>(x.size()) == dims.total(),
                  "vector length does not match the register dimension");
  const auto layout = detail::layout_of(op, dims);
  const auto n = static_cast<Eigen::Index>(layout.local.size());
  Vector y(x.size());
  Vector in(n);
  Vector out(n);
  for (auto base : layout.bases) {
    for (Eigen::Index a = 0; a < n; ++a) {
      in(a) = x(static_cast<Eigen::Index>(base + layout.local[static_cast<std::size_t>(a)]));
    }
    out.noalias() = op.matrix() * in;
    for (Eigen::Index a = 0; a < n; ++a) {
      y(static_cast<Eigen::Index>(base + layout.local[static_cast<std::size_t>(a)])) = out(a);
    }
  }
  return y;
}

/// op * m, acting on the row index of `m`.
inline Matrix apply_left(const LocalOperator& op, const QuditDims& dims,
                         const Matrix& m) {
  detail::require(static_cast<std::size_t>(m.rows()) == dims.total(),
                  "matrix row count does not match the register dimension");
  const auto layout = detail::layout_of(op, dims);
  const auto n = static_cast<Eigen::Index>(layout.local.size());
  Matrix result(m.rows(), m.cols());
  Matrix block(n, m.cols());
  for (auto base : layout.bases) {
    for (Eigen::Index a = 0; a < n; ++a) {
      block.row(a) = m.row(static_cast<Eigen::Index>(base + layout.local[static_cast<std::size_t>(a)]));
    }
    const Matrix mixed = op.matrix() * block;
    for (Eigen::Index a = 0; a < n; ++a) {
      result.row(static_cast<Eigen::Index>(base + layout.local[static_cast<std::size_t>(a)])) =
          mixed.row(a);
    }
  }
  return result;
}

inline PureState apply(const LocalOperator& unitary, const PureState& psi) {
  return PureState::normalized(psi.dims(), apply(unitary, psi.dims(), psi.amplitudes()));
}

namespace detail {

inline double real_part_checked(Complex value, const char* what) {
  if (std::abs(value.imag()) > tolerances().imaginary_residue) {
    throw NumericalError(std::string(what) + ": imaginary residue " +
                         std::to_string(value.imag()) + " exceeds tolerance");
  }
  return value.real();
}

inline void require_hermitian(const Matrix& op, const char* what) {
  if (hermitian_residue(op) > tolerances().hermitian) {
    throw InvalidArgument(std::string(what) + ": operator is not Hermitian");
  }
}

/// tr(A_1 ... A_n) / dim over the union support of the factors.
inline double normalized_trace(std::span<const LocalOperator> factors) {
  if (factors.empty()) return 1.0;
  std::vector<std::size_t> support;
  std::vector<int> levels;
  for (const auto& f : factors) {
    for (std::size_t i = 0; i < f.support().size(); ++i) {
      if (std::find(support.begin(), support.end(), f.support()[i]) == support.end()) {
        support.push_back(f.support()[i]);
        levels.push_back(f.levels()[i]);
      }
    }
  }
  const QuditDims sub(levels);
  require_pure_cap(sub.total());
  std::vector<LocalOperator> local;
  local.reserve(factors.size());
  for (const auto& f : factors) {
    std::vector<std::size_t> positions;
    for (auto s : f.support()) {
      positions.push_back(static_cast<std::size_t>(
          std::find(support.begin(), support.end(), s) - support.begin()));
    }
    local.push_back(f.placed_at(std::move(positions)));
  }
  Complex trace = 0.0;
  const auto dim = static_cast<Eigen::Index>(sub.total());
  for (Eigen::Index a = 0; a < dim; ++a) {
    Vector e = Vector::Zero(dim);
    e(a) = 1.0;
    for (auto it = local.rbegin(); it != local.rend(); ++it) e = apply(*it, sub, e);
    trace += e(a);
  }
  return real_part_checked(trace / static_cast<double>(dim), "normalized trace");
}

}  // namespace detail

inline double expectation(const PureState& psi, const Matrix& op) {
  detail::require_square(op, psi.dims().total(), "expectation");
  detail::require_hermitian(op, "expectation");
  const Complex value = psi.amplitudes().dot(op * psi.amplitudes());
  return detail::real_part_checked(value, "expectation");
}

inline double expectation(const DensityOperator& rho, const Matrix& op) {
  detail::require_square(op, rho.dims().total(), "expectation");
  detail::require_hermitian(op, "expectation");
  const Complex value = (rho.matrix().cwiseProduct(op.transpose())).sum();
  return detail::real_part_checked(value, "expectation");
}

inline double expectation(const WhiteNoiseState& rho, const Matrix& op) {
  const double pure_part = expectation(rho.pure(), op);
  const double mixed_part = detail::real_part_checked(
      op.trace() / static_cast<double>(rho.dims().total()), "expectation");
  return (1.0 - rho.noise()) * pure_part + rho.noise() * mixed_part;
}

/// <A_1 A_2 ... A_n> for local factors. The product must be Hermitian, which
/// holds for the commuting Hermitian factors used throughout the library; a
/// non-negligible imaginary part is reported as an error.
inline double product_expectation(const PureState& psi,
                                  std::span<const LocalOperator> factors) {
  Vector y = psi.amplitudes();
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) y = apply(*it, psi.dims(), y);
  return detail::real_part_checked(psi.amplitudes().dot(y), "product expectation");
}

inline double product_expectation(const DensityOperator& rho,
                                  std::span<const LocalOperator> factors) {
  Matrix y = rho.matrix();
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    y = apply_left(*it, rho.dims(), y);
  }
  return detail::real_part_checked(y.trace(), "product expectation");
}

inline double product_expectation(const WhiteNoiseState& rho,
                                  std::span<const LocalOperator> factors) {
  const double pure_part = product_expectation(rho.pure(), factors);
  const double mixed_part = rho.noise() > 0.0 ? detail::normalized_trace(factors) : 0.0;
  return (1.0 - rho.noise()) * pure_part + rho.noise() * mixed_part;
}

inline double expectation(const PureState& psi, const LocalOperator& op) {
  detail::require_hermitian(op.matrix(), "expectation");
  return product_expectation(psi, std::span<const LocalOperator>(&op, 1));
}

/// <phi| state |phi>.
inline double fidelity(const PureState& psi, const PureState& target) {
  detail::require(psi.dims() == target.dims(), "fidelity: register mismatch");
  return std::norm(target.amplitudes().dot(psi.amplitudes()));
}

inline double fidelity(const DensityOperator& rho, const PureState& target) {
  detail::require(rho.dims() == target.dims(), "fidelity: register mismatch");
  return detail::real_part_checked(
      target.amplitudes().dot(rho.matrix() * target.amplitudes()), "fidelity");
}

inline double fidelity(const WhiteNoiseState& rho, const PureState& target) {
  return (1.0 - rho.noise()) * fidelity(rho.pure(), target) +
         rho.noise() / static_cast<double>(rho.dims().total());
}

inline Complex inner_product(const PureState& a, const PureState& b) {
  detail::require(a.dims() == b.dims(), "inner product: register mismatch");
  return a.amplitudes().dot(b.amplitudes());
}

/// |a> (x) |b>; the sites of `a` come first.
inline PureState tensor_product(const PureState& a, const PureState& b) {
  std::vector<int> levels = a.dims().levels();
  levels.insert(levels.end(), b.dims().levels().begin(), b.dims().levels().end());
  QuditDims dims(std::move(levels));
  detail::require_pure_cap(dims.total());
  const auto nb = b.amplitudes().size();
  Vector v(a.amplitudes().size() * nb);
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
    v.segment(i * nb, nb) = a.amplitudes()(i) * b.amplitudes();
  }
  return PureState::normalized(std::move(dims), std::move(v));
}

/// Relabel sites: site s of `psi` becomes register site `destination[s]`.
inline PureState permute_sites(const PureState& psi,
                               std::span<const std::size_t> destination) {
  const auto n = psi.dims().sites();
  detail::require(destination.size() == n, "permutation length mismatch");
  detail::require_sites(destination, n, "site permutation");
  std::vector<int> levels(n);
  for (std::size_t s = 0; s < n; ++s) levels[destination[s]] = psi.dims().level(s);
  QuditDims dims(levels);
  Vector v(psi.amplitudes().size());
  std::vector<int> target(n);
  for (std::size_t i = 0; i < psi.dims().total(); ++i) {
    for (std::size_t s = 0; s < n; ++s) target[destination[s]] = psi.dims().digit(i, s);
    v(static_cast<Eigen::Index>(dims.index_of(target))) = psi.amplitude(i);
  }
  return PureState(std::move(dims), std::move(v));
}

/// Amplitudes reshaped into a (side A) x (rest) matrix.
inline Matrix bipartite_matrix(const PureState& psi,
                               std::span<const std::size_t> side_a) {
  const auto n = psi.dims().sites();
  detail::require(!side_a.empty(), "bipartition side must be nonempty");
  detail::require(side_a.size() < n, "bipartition side must be a proper subset");
  detail::require_sites(side_a, n, "bipartition");
  std::vector<std::size_t> a(side_a.begin(), side_a.end());
  std::sort(a.begin(), a.end());
  const auto b = detail::complement(a, n);
  const auto rows = detail::site_offsets(psi.dims(), a);
  const auto cols = detail::site_offsets(psi.dims(), b);
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          psi.amplitude(rows[r] + cols[c]);
    }
  }
  return m;
}

/// Schmidt coefficients across side_a | rest, nonincreasing.
inline std::vector<double> schmidt_coefficients(const PureState& psi,
                                                std::span<const std::size_t> side_a) {
  const Matrix m = bipartite_matrix(psi, side_a);
  Eigen::BDCSVD<Matrix> svd(m);
  const auto& values = svd.singularValues();
  std::vector<double> out(values.data(), values.data() + values.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  double sum = 0.0;
  for (double s : out) sum += s * s;
  if (std::abs(sum - 1.0) > tolerances().algebraic) {
    throw NumericalError("Schmidt coefficients do not square-sum to one");
  }
  return out;
}

inline double min_eigenvalue(const Matrix& op) {
  detail::require(op.rows() == op.cols() && op.rows() > 0,
                  "min_eigenvalue needs a nonempty square matrix");
  detail::require_dense_cap(static_cast<std::size_t>(op.rows()));
  detail::require_hermitian(op, "min_eigenvalue");
  const Matrix sym = 0.5 * (op + op.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed");
  return solver.eigenvalues()(0);
}

}  // namespace quwit
