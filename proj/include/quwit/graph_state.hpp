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

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "quwit/graph.hpp"
#include "quwit/linalg.hpp"

namespace quwit {

/// A graph together with the level count shared by every vertex.
struct GraphStateSpec {
  Graph graph;
  int d = 2;

  GraphStateSpec(Graph g, int levels) : graph(std::move(g)), d(levels) {
    detail::require(d >= 2, "graph states need d >= 2");
  }

  std::size_t vertices() const { return graph.vertex_count(); }
  QuditDims dims() const { return QuditDims::uniform(d, graph.vertex_count()); }
};

/// omega^k for omega = exp(2 pi i / d); the exponent is reduced mod d first,
/// so equal exponents give bit-identical values.
inline Complex root_of_unity(int d, long long k) {
  const long long r = ((k % d) + d) % d;
  if (r == 0) return {1.0, 0.0};
  // Quarter turns are exact.
  if (4 * r % d == 0) {
    switch (4 * r / d) {
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / d);
}

/// F|v'> = sum_v omega^{v' v} |v> / sqrt(d).
inline LocalOperator fourier_unitary(int d) {
  detail::require(d >= 2, "Fourier transform needs d >= 2");
  Matrix f(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int v = 0; v < d; ++v) {
    for (int vp = 0; vp < d; ++vp) f(v, vp) = root_of_unity(d, 1LL * v * vp) * scale;
  }
  return LocalOperator({0}, {d}, std::move(f));
}

/// diag(omega^0, ..., omega^{d-1}).
inline LocalOperator z_unitary(int d) {
  detail::require(d >= 2, "Z needs d >= 2");
  Matrix z = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) z(k, k) = root_of_unity(d, k);
  return LocalOperator({0}, {d}, std::move(z));
}

/// sum_v |v><v| (x) Z^v on two sites; diagonal with entry omega^{v k}.
inline LocalOperator edge_unitary(int d) {
  detail::require(d >= 2, "edge unitary needs d >= 2");
  Matrix u = Matrix::Zero(d * d, d * d);
  for (int v = 0; v < d; ++v) {
    for (int k = 0; k < d; ++k) u(v * d + k, v * d + k) = root_of_unity(d, 1LL * v * k);
  }
  return LocalOperator({0, 1}, {d, d}, std::move(u));
}

namespace detail {

/// Graph basis state |G_index>: every edge unitary is diagonal and adds
/// v_i * v_j to the phase exponent of each computational amplitude, and the
/// Fourier-rotated start |f_index> adds sum_k i_k v_k. Exponents are kept as
/// integers mod d, so the result does not depend on the edge order.
inline PureState graph_state_from_exponents(const GraphStateSpec& spec,
                                            std::span<const int> start_digits) {
  const auto dims = spec.dims();
  require_pure_cap(dims.total());
  const int d = spec.d;
  const auto total = dims.total();
  std::vector<int> exponent(total, 0);
  const auto n = spec.vertices();
  for (std::size_t idx = 0; idx < total; ++idx) {
    long long e = 0;
    for (std::size_t k = 0; k < n; ++k) e += 1LL * start_digits[k] * dims.digit(idx, k);
    exponent[idx] = static_cast<int>(e % d);
  }
  for (const auto& edge : spec.graph.edges()) {
    for (std::size_t idx = 0; idx < total; ++idx) {
      exponent[idx] = static_cast<int>(
          (exponent[idx] + 1LL * dims.digit(idx, edge.first) * dims.digit(idx, edge.second)) % d);
    }
  }
  std::vector<Complex> table(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) table[static_cast<std::size_t>(k)] = root_of_unity(d, k);
  const double magnitude = std::pow(static_cast<double>(d), -0.5 * static_cast<double>(n));
  Vector amplitudes(static_cast<Eigen::Index>(total));
  for (std::size_t idx = 0; idx < total; ++idx) {
    amplitudes(static_cast<Eigen::Index>(idx)) =
        magnitude * table[static_cast<std::size_t>(exponent[idx])];
  }
  return PureState::normalized(dims, std::move(amplitudes));
}

}  // namespace detail

/// |G> = prod_{(i,j) in E} U_(i,j) (x)_k F_k |0>_k.
inline PureState build_graph_state(const GraphStateSpec& spec) {
  const std::vector<int> zeros(spec.vertices(), 0);
  return detail::graph_state_from_exponents(spec, zeros);
}

/// |G_index> built from |f_index> = (x)_k F_k |i_k>, where i_k are the base-d
/// digits of index with vertex 0 most significant.
inline PureState graph_basis_state(const GraphStateSpec& spec, std::size_t index) {
  const auto dims = spec.dims();
  detail::require(index < dims.total(), "graph basis index out of range");
  const auto digits = dims.digits(index);
  return detail::graph_state_from_exponents(spec, digits);
}

/// Same construction applied gate by gate through the generic local-operator
/// machinery; used to cross-check the exponent form.
inline PureState build_graph_state_by_gates(const GraphStateSpec& spec,
                                            std::size_t index = 0) {
  const auto dims = spec.dims();
  detail::require_pure_cap(dims.total());
  const auto digits = dims.digits(index);
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dims.total()));
  v(static_cast<Eigen::Index>(dims.index_of(digits))) = 1.0;
  const auto f = fourier_unitary(spec.d);
  for (std::size_t k = 0; k < spec.vertices(); ++k) v = apply(f.placed_at({k}), dims, v);
  const auto u = edge_unitary(spec.d);
  for (const auto& e : spec.graph.edges()) v = apply(u.placed_at({e.first, e.second}), dims, v);
  return PureState::normalized(dims, std::move(v));
}

/// Number of Schmidt coefficients above the rank tolerance.
inline std::size_t schmidt_rank(const PureState& psi, std::span<const std::size_t> side_a,
                                double tolerance = tolerances().rank) {
  const auto coefficients = schmidt_coefficients(psi, side_a);
  return static_cast<std::size_t>(std::count_if(
      coefficients.begin(), coefficients.end(), [&](double s) { return s > tolerance; }));
}

}  // namespace quwit
