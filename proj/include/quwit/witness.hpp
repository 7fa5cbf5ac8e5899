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

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quwit/graph.hpp"
#include "quwit/graph_state.hpp"
#include "quwit/linalg.hpp"

namespace quwit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr int max_formula_levels = 64;

/// t_2 = 1, t_3 = 2, t_d = (d - 1)(t_{d-2} + t_{d-1}).
inline BigInt t_value(int d) {
  detail::require(d >= 2 && d <= max_formula_levels,
                  "t_d is defined here for 2 <= d <= 64, got " + std::to_string(d));
  BigInt previous = 1;  // t_2
  BigInt current = 2;   // t_3
  if (d == 2) return previous;
  for (int k = 4; k <= d; ++k) {
    BigInt next = BigInt(k - 1) * (previous + current);
    previous = current;
    current = next;
  }
  return current;
}

/// Eigenvalue of (a_k + I)/(t_d + 1) on outcomes that violate the local
/// constraint: (d - 1 - t_d) / ((d - 1)(t_d + 1)). The satisfied value is 1.
inline Rational unsatisfied_weight_exact(int d) {
  const BigInt t = t_value(d);
  return Rational(BigInt(d - 1) - t, BigInt(d - 1) * (t + 1));
}

inline int f_q_of(const ColoredPartition& coloring) {
  return coloring.largest_class() > 1 ? 2 : 1;
}

namespace detail {

inline Rational rational_power(const Rational& base, std::size_t exponent) {
  Rational out = 1;
  for (std::size_t i = 0; i < exponent; ++i) out *= base;
  return out;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace detail

/// Parameters of the coloured-kernel criterion for target Schmidt level l.
struct CriterionParams {
  int d = 2;
  int l = 2;
  ColoredPartition coloring;
  int f_q = 1;
  BigInt t_d = 1;
  double t = 1.0;
  double eta_q = 0.0;

  static CriterionParams make(int d, int l, ColoredPartition coloring) {
    detail::require(d >= 2 && d <= max_formula_levels,
                    "level count must lie in 2..64, got " + std::to_string(d));
    detail::require(l >= 2 && l <= d, "Schmidt level l must lie in 2..d, got l=" +
                                          std::to_string(l) + ", d=" + std::to_string(d));
    CriterionParams p;
    p.d = d;
    p.l = l;
    p.coloring = std::move(coloring);
    p.f_q = f_q_of(p.coloring);
    p.t_d = t_value(d);
    p.t = p.t_d.convert_to<double>();
    p.eta_q = detail::to_double(p.eta_exact());
    return p;
  }

  std::size_t q() const { return coloring.q(); }

  Rational eta_exact() const {
    return Rational(static_cast<long long>(q()) - 1) +
           detail::rational_power(unsatisfied_weight_exact(d),
                                  static_cast<std::size_t>(f_q));
  }

  Rational bound_exact() const {
    const Rational eta = eta_exact();
    return Rational(l - 1, d) * (Rational(static_cast<long long>(q())) - eta) + eta;
  }

  /// sum_j (t_d + 1)^{-|Y_j|}: the kernel value of the maximally mixed state.
  Rational mixed_kernel_exact() const {
    Rational sum = 0;
    const Rational inv = Rational(BigInt(1), t_d + 1);
    for (const auto& c : coloring.classes()) sum += detail::rational_power(inv, c.size());
    return sum;
  }

  double unsatisfied_weight() const { return detail::to_double(unsatisfied_weight_exact(d)); }

  CriterionParams with_level(int level) const { return make(d, level, coloring); }
};

inline double eta(const CriterionParams& p) { return p.eta_q; }

/// (l - 1)(q - eta_q)/d + eta_q; detection requires a strictly larger value.
inline double bound(const CriterionParams& p) { return detail::to_double(p.bound_exact()); }

/// Largest white-noise probability below which rho(p) is still detected:
/// (q - eta_q)(d - l + 1) / (d [q - sum_k (t_d + 1)^{-|Y_k|}]).
inline double noise_tolerance(const CriterionParams& p) {
  const Rational q(static_cast<long long>(p.q()));
  const Rational numerator = (q - p.eta_exact()) * Rational(p.d - p.l + 1);
  const Rational denominator = Rational(p.d) * (q - p.mixed_kernel_exact());
  return detail::to_double(numerator / denominator);
}

/// Derived fidelity lower bound (l-1)/d + (value - bound)/(q - eta_q); valid
/// whenever the dominance gap of the criterion is nonnegative. Evaluated as
/// 1 + (value - q)/(q - eta_q), which is the same expression, so value = q
/// gives exactly 1.
inline double fidelity_lower_bound(double value, const CriterionParams& p) {
  const Rational gamma = Rational(static_cast<long long>(p.q())) - p.eta_exact();
  if (gamma <= 0) throw NumericalError("q - eta_q must be positive");
  return 1.0 + (value - static_cast<double>(p.q())) / detail::to_double(gamma);
}

inline double projector_bound(int d, int l) {
  detail::require(d >= 2 && l >= 2 && l <= d, "projector bound needs 2 <= l <= d");
  return static_cast<double>(l - 1) / d;
}

/// a_k = t_d/(d-1) [ d sum_{v + sum_i v_i = 0 mod d} F^dag|v><v|F (x) |v_i><v_i| - I ]
/// on the support {k} followed by the sorted neighbourhood of k.
inline LocalOperator correlation_operator(const GraphStateSpec& spec, std::size_t k) {
  const int d = spec.d;
  detail::require(d <= caps().operator_levels,
                  "correlation operators are assembled for d <= " +
                      std::to_string(caps().operator_levels));
  detail::require(k < spec.vertices(), "vertex " + std::to_string(k) + " out of range");
  const auto& neighborhood = spec.graph.neighbors(k);
  detail::require(!neighborhood.empty(),
                  "vertex " + std::to_string(k) + " is isolated; a_k needs a neighbourhood");
  std::vector<std::size_t> support{k};
  support.insert(support.end(), neighborhood.begin(), neighborhood.end());
  const std::vector<int> levels(support.size(), d);
  const QuditDims local(levels);
  detail::require_pure_cap(local.total());

  const Matrix f = fourier_unitary(d).matrix();
  // Rank-one blocks F^dag |v><v| F for every v.
  std::vector<Matrix> projector(static_cast<std::size_t>(d));
  for (int v = 0; v < d; ++v) {
    const Vector ket = f.adjoint().col(v);
    projector[static_cast<std::size_t>(v)] = ket * ket.adjoint();
  }
  const auto neighbor_configs = local.total() / static_cast<std::size_t>(d);
  const auto dim = static_cast<Eigen::Index>(local.total());
  Matrix p = Matrix::Zero(dim, dim);
  for (std::size_t c = 0; c < neighbor_configs; ++c) {
    long long sum = 0;
    for (std::size_t i = 1; i < support.size(); ++i) sum += local.digit(c, i);
    const int v = static_cast<int>(((-sum) % d + d) % d);
    const auto& block = projector[static_cast<std::size_t>(v)];
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        p(static_cast<Eigen::Index>(static_cast<std::size_t>(a) * neighbor_configs + c),
          static_cast<Eigen::Index>(static_cast<std::size_t>(b) * neighbor_configs + c)) =
            block(a, b);
      }
    }
  }
  const double t = t_value(d).convert_to<double>();
  Matrix a = (t / (d - 1)) * (static_cast<double>(d) * p - Matrix::Identity(dim, dim));
  return LocalOperator(std::move(support), levels, std::move(a));
}

/// Factors (a_k + I)/(t_d + 1) for every vertex of colour class j.
inline std::vector<LocalOperator> kernel_factors(const GraphStateSpec& spec,
                                                 const CriterionParams& params,
                                                 std::size_t j) {
  std::vector<LocalOperator> factors;
  for (auto k : params.coloring.color_class(j)) {
    const auto a = correlation_operator(spec, k);
    const auto n = static_cast<Eigen::Index>(a.dimension());
    factors.push_back(
        a.with_matrix((a.matrix() + Matrix::Identity(n, n)) / (params.t + 1.0)));
  }
  return factors;
}

struct KernelEvaluation {
  double value = 0.0;
  std::vector<double> per_color_terms;
};

namespace detail {

inline void require_matching(const GraphStateSpec& spec, const CriterionParams& params,
                             const QuditDims& dims) {
  require(params.d == spec.d, "criterion parameters and graph state disagree on d");
  require(dims == spec.dims(), "state register does not match the graph state");
  const auto bad = params.coloring.monochromatic_edges(spec.graph);
  require(bad == 0, "colouring is improper for this graph");
}

}  // namespace detail

/// sum_j < prod_{k in Y_j} (a_k + I)/(t_d + 1) >. Makes no claim about
/// entanglement; usable for disconnected graphs without isolated vertices.
template <QuantumState State>
KernelEvaluation kernel_value(const State& state, const GraphStateSpec& spec,
                              const CriterionParams& params) {
  detail::require_matching(spec, params, state.dims());
  KernelEvaluation out;
  for (std::size_t j = 0; j < params.q(); ++j) {
    const auto factors = kernel_factors(spec, params, j);
    const double term = product_expectation(state, factors);
    out.per_color_terms.push_back(term);
    out.value += term;
  }
  return out;
}

/// Full-space kernel operator (dense path).
inline Matrix kernel_operator(const GraphStateSpec& spec, const CriterionParams& params) {
  const auto dims = spec.dims();
  detail::require_dense_cap(dims.total());
  const auto dim = static_cast<Eigen::Index>(dims.total());
  Matrix kernel = Matrix::Zero(dim, dim);
  for (std::size_t j = 0; j < params.q(); ++j) {
    Matrix term = Matrix::Identity(dim, dim);
    for (const auto& f : kernel_factors(spec, params, j)) term = term * embed(f, dims);
    kernel += term;
  }
  return kernel;
}

struct CriterionReport {
  int d = 2;
  double value = 0.0;
  double bound = 0.0;
  int l = 2;
  std::size_t q = 0;
  double eta_q = 0.0;
  int f_q = 1;
  BigInt t_d = 1;
  bool violated = false;
  double noise_tolerance = 0.0;
  /// Derived bound, not a measured fidelity.
  double fidelity_lower_bound = 0.0;
  std::vector<double> per_color_terms;
  /// Largest l in 2..d whose bound is still exceeded.
  std::optional<int> max_detected_level;
  /// Shots per setting when the value was estimated from counts.
  std::vector<std::uint64_t> shots;
  /// Normal-approximation standard error for count-based estimates.
  std::optional<double> standard_error;
};

inline CriterionReport make_report(const KernelEvaluation& kernel,
                                   const CriterionParams& params) {
  CriterionReport r;
  r.d = params.d;
  r.value = kernel.value;
  r.bound = bound(params);
  r.l = params.l;
  r.q = params.q();
  r.eta_q = params.eta_q;
  r.f_q = params.f_q;
  r.t_d = params.t_d;
  r.violated = r.value > r.bound;
  r.noise_tolerance = noise_tolerance(params);
  r.fidelity_lower_bound = fidelity_lower_bound(r.value, params);
  r.per_color_terms = kernel.per_color_terms;
  for (int level = params.d; level >= 2; --level) {
    if (kernel.value > bound(params.with_level(level))) {
      r.max_detected_level = level;
      break;
    }
  }
  return r;
}

/// Criterion for genuine N-partite entanglement with Schmidt number >= l.
template <QuantumState State>
CriterionReport evaluate_criterion(const State& state, const GraphStateSpec& spec, int l,
                                   const std::optional<ColoredPartition>& coloring = {}) {
  detail::require(spec.graph.is_connected(),
                  "the criterion needs a connected graph; use kernel_value for "
                  "disconnected graphs");
  const auto params = CriterionParams::make(spec.d, l, color_graph(spec.graph, coloring));
  return make_report(kernel_value(state, spec, params), params);
}

struct ProjectorVerdict {
  double fidelity = 0.0;
  double bound = 0.0;
  bool violated = false;
};

/// <|G><G|> > (l - 1)/d.
template <QuantumState State>
ProjectorVerdict projector_criterion(const State& state, const GraphStateSpec& spec, int l) {
  detail::require(state.dims() == spec.dims(), "state register does not match the graph");
  ProjectorVerdict v;
  v.fidelity = fidelity(state, build_graph_state(spec));
  v.bound = projector_bound(spec.d, l);
  v.violated = v.fidelity > v.bound;
  return v;
}

struct DominanceReport {
  double min_gap = 0.0;
  double gamma = 0.0;
  std::vector<double> diagonal;
  double off_diagonal_kernel_witness = 0.0;
  double off_diagonal_projector_witness = 0.0;
};

/// Diagonal of w_G - gamma_G w'_G in the graph-state basis, with
/// w_G = bound I - kernel, w'_G = (l-1)/d I - |G><G| and gamma_G = q - eta_q.
/// Both witnesses must be diagonal in that basis.
inline DominanceReport dominance_gap(const GraphStateSpec& spec, int l,
                                     const std::optional<ColoredPartition>& coloring = {}) {
  const auto dims = spec.dims();
  detail::require_dense_cap(dims.total());
  const auto params = CriterionParams::make(spec.d, l, color_graph(spec.graph, coloring));
  const auto dim = static_cast<Eigen::Index>(dims.total());
  const Matrix identity = Matrix::Identity(dim, dim);
  const Matrix w = bound(params) * identity - kernel_operator(spec, params);
  const Vector g = build_graph_state(spec).amplitudes();
  const Matrix wp = projector_bound(spec.d, l) * identity - g * g.adjoint();

  Matrix basis(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    basis.col(i) = graph_basis_state(spec, static_cast<std::size_t>(i)).amplitudes();
  }
  const Matrix in_basis_w = basis.adjoint() * w * basis;
  const Matrix in_basis_wp = basis.adjoint() * wp * basis;

  DominanceReport r;
  r.gamma = detail::to_double(Rational(static_cast<long long>(params.q())) -
                              params.eta_exact());
  auto off_diagonal = [](const Matrix& m) {
    Matrix copy = m;
    copy.diagonal().setZero();
    return copy.cwiseAbs().maxCoeff();
  };
  r.off_diagonal_kernel_witness = off_diagonal(in_basis_w);
  r.off_diagonal_projector_witness = off_diagonal(in_basis_wp);
  const double limit = tolerances().algebraic;
  if (r.off_diagonal_kernel_witness >= limit || r.off_diagonal_projector_witness >= limit) {
    throw NumericalError("witness is not diagonal in the graph-state basis");
  }
  r.diagonal.resize(static_cast<std::size_t>(dim));
  r.min_gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double value = (in_basis_w(i, i) - r.gamma * in_basis_wp(i, i)).real();
    r.diagonal[static_cast<std::size_t>(i)] = value;
    r.min_gap = std::min(r.min_gap, value);
  }
  return r;
}

}  // namespace quwit
