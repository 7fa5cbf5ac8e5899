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

#include <cstdint>
#include <numbers>
#include <vector>

#include "quwit/quwit.hpp"

namespace quwit::testing {

/// Small connected graph from a seed: a random spanning tree plus extra edges.
inline Graph random_connected_graph(std::size_t n, Rng& rng, double extra = 0.3) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t v = 1; v < n; ++v) edges.emplace_back(rng.below(v), v);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      bool present = false;
      for (auto [x, y] : edges) present = present || (std::min(x, y) == a && std::max(x, y) == b);
      if (!present && rng.uniform() < extra) edges.emplace_back(a, b);
    }
  }
  return Graph(n, std::move(edges));
}

/// Random density operator of full rank: G G^dag / tr.
inline DensityOperator random_density(const QuditDims& dims, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(dims.total());
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(dims, rho);
}

/// Strictly positive probability vector.
inline std::vector<double> random_marginal(std::size_t n, Rng& rng) {
  auto w = rng.dirichlet(n);
  for (auto& x : w) x = 0.5 * x + 0.5 / static_cast<double>(n);
  return w;
}

/// Element-by-element Kronecker product, kept free of Eigen helpers.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      for (Eigen::Index k = 0; k < b.rows(); ++k) {
        for (Eigen::Index l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return out;
}


/// Random pure state that is a product across a random proper bipartition.
inline PureState random_biseparable(const QuditDims& dims, Rng& rng) {
  const auto n = dims.sites();
  std::uint64_t mask = 0;
  while (mask == 0 || mask == (std::uint64_t{1} << n) - 1) mask = rng.below(std::uint64_t{1} << n);
  std::vector<std::size_t> a, b;
  for (std::size_t s = 0; s < n; ++s) ((mask >> s) & 1u ? a : b).push_back(s);
  const auto left = random_pure_state(dims.select(a), rng);
  const auto right = random_pure_state(dims.select(b), rng);
  std::vector<std::size_t> destination = a;
  destination.insert(destination.end(), b.begin(), b.end());
  return permute_sites(tensor_product(left, right), destination);
}

/// Every site confined to a random (l-1)-dimensional subspace, so the Schmidt
/// rank across each single-site cut is at most l-1.
inline PureState random_low_rank(const QuditDims& dims, int rank, Rng& rng) {
  const auto n = dims.sites();
  const auto small = QuditDims::uniform(rank, n);
  Vector v = random_pure_state(small, rng).amplitudes();
  // Embed into the big register, then rotate each site.
  Vector big = Vector::Zero(static_cast<Eigen::Index>(dims.total()));
  for (std::size_t i = 0; i < small.total(); ++i) {
    big(static_cast<Eigen::Index>(dims.index_of(small.digits(i)))) = v(static_cast<Eigen::Index>(i));
  }
  PureState psi(dims, big);
  for (std::size_t s = 0; s < n; ++s) {
    psi = apply(LocalOperator({s}, {dims.level(s)}, random_unitary(dims.level(s), rng)), psi);
  }
  return psi;
}


/// Random valid coefficient scheme: each row has at least two active columns
/// and phases chosen so the active terms cancel.
inline CoefficientScheme random_scheme(std::size_t rows, std::size_t cols, Rng& rng) {
  CoefficientScheme s{rows, cols, std::vector<int>(rows * cols, 0),
                      std::vector<double>(rows * cols, 0.0)};
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t m = 0; m < rows; ++m) {
    std::vector<std::size_t> order(cols);
    for (std::size_t n = 0; n < cols; ++n) order[n] = n;
    for (std::size_t i = cols; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    const std::size_t active = 2 + rng.below(cols - 1);
    while (true) {
      Complex sum = 0.0;
      for (std::size_t i = 0; i + 2 < active; ++i) {
        const double phi = two_pi * rng.uniform();
        s.phi[m * cols + order[i]] = phi;
        sum += std::polar(1.0, phi);
      }
      const double r = std::abs(sum);
      if (r > 2.0) continue;
      const double psi = r > 0.0 ? std::arg(-sum) : two_pi * rng.uniform();
      const double half = std::acos(r / 2.0);
      s.phi[m * cols + order[active - 2]] = psi + half;
      s.phi[m * cols + order[active - 1]] = psi - half;
      break;
    }
    for (std::size_t i = 0; i < active; ++i) s.c[m * cols + order[i]] = 1;
  }
  return s;
}

}  // namespace quwit::testing
