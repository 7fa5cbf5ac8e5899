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

#include <algorithm>
#include <numbers>

#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace quwit;
using Catch::Matchers::WithinAbs;

namespace {

bool is_unitary(const Matrix& m, double tol = 1e-10) {
  return (m * m.adjoint() - Matrix::Identity(m.rows(), m.cols())).norm() < tol;
}

}  // namespace

TEST_CASE("Fourier unitary", "[graph_state]") {
  const Matrix f2 = fourier_unitary(2).matrix();
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  CHECK((f2 - h / std::sqrt(2.0)).norm() < 1e-15);
  CHECK(is_unitary(fourier_unitary(5).matrix()));
  const Complex expected = std::polar(1.0, 4.0 * std::numbers::pi / 3.0) / std::sqrt(3.0);
  CHECK(std::abs(fourier_unitary(3).matrix()(1, 2) - expected) < 1e-15);
  CHECK_THROWS_AS(fourier_unitary(1), InvalidArgument);
}

TEST_CASE("Z unitary", "[graph_state]") {
  Matrix z2 = Matrix::Zero(2, 2);
  z2.diagonal() << 1, -1;
  CHECK((z_unitary(2).matrix() - z2).norm() == 0.0);
  for (int d = 2; d <= 6; ++d) {
    Matrix p = Matrix::Identity(d, d);
    for (int i = 0; i < d; ++i) p = p * z_unitary(d).matrix();
    CHECK((p - Matrix::Identity(d, d)).norm() < 1e-12);
  }
  CHECK(std::abs(z_unitary(4).matrix()(3, 3) - Complex(0.0, -1.0)) < 1e-15);
  CHECK_THROWS_AS(z_unitary(1), InvalidArgument);
}

TEST_CASE("Edge unitary", "[graph_state]") {
  Matrix cz = Matrix::Zero(4, 4);
  cz.diagonal() << 1, 1, 1, -1;
  CHECK((edge_unitary(2).matrix() - cz).norm() == 0.0);
  const Matrix u3 = edge_unitary(3).matrix();
  CHECK(is_unitary(u3));
  CHECK(std::abs(u3(8, 8) - std::polar(1.0, 2.0 * std::numbers::pi / 3.0)) < 1e-15);
  // Swapping the two sites leaves the gate unchanged.
  const auto swapped = extend(edge_unitary(3).placed_at({1, 0}), {0, 1}, {3, 3});
  CHECK((swapped.matrix() - u3).norm() < 1e-15);
}

TEST_CASE("Graph state of the edgeless graph is uniform", "[graph_state]") {
  const auto psi = build_graph_state(GraphStateSpec(Graph(3, {}), 3));
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
    CHECK(std::abs(psi.amplitudes()(i) - Complex(std::pow(3.0, -1.5), 0.0)) < 1e-15);
  }
}

TEST_CASE("Bell graph state for d=2", "[graph_state]") {
  const auto psi = build_graph_state(GraphStateSpec(Graph::bar(), 2));
  Vector expected(4);
  expected << 0.5, 0.5, 0.5, -0.5;
  CHECK((psi.amplitudes() - expected).norm() == 0.0);
}

TEST_CASE("Star graph states have Schmidt rank 2 across every cut at d=2", "[graph_state]") {
  const auto psi = build_graph_state(GraphStateSpec(Graph::star(3), 2));
  for (std::uint64_t mask = 1; mask < 7; ++mask) {
    std::vector<std::size_t> side;
    for (std::size_t v = 0; v < 3; ++v) {
      if ((mask >> v) & 1u) side.push_back(v);
    }
    CHECK(schmidt_rank(psi, side) == 2);
  }
}

TEST_CASE("Graph basis states", "[graph_state]") {
  const GraphStateSpec star(Graph::star(3), 2);
  CHECK((graph_basis_state(star, 0).amplitudes() - build_graph_state(star).amplitudes()).norm() ==
        0.0);
  CHECK(std::abs(inner_product(graph_basis_state(star, 0), graph_basis_state(star, 5))) < 1e-12);
  CHECK_THROWS_AS(graph_basis_state(star, 8), InvalidArgument);

  const GraphStateSpec bell3(Graph::bar(), 3);
  Matrix basis(9, 9);
  for (Eigen::Index i = 0; i < 9; ++i) {
    basis.col(i) = graph_basis_state(bell3, static_cast<std::size_t>(i)).amplitudes();
  }
  CHECK((basis.adjoint() * basis - Matrix::Identity(9, 9)).norm() < 1e-12);
}

TEST_CASE("Graph basis states agree with the gate-by-gate construction",
          "[graph_state][property]") {
  Rng rng(5150);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 2 + static_cast<int>(rng.below(3));
    const std::size_t n = 2 + rng.below(3);
    const GraphStateSpec spec(testing::random_connected_graph(n, rng), d);
    const auto index = static_cast<std::size_t>(rng.below(spec.dims().total()));
    const auto a = graph_basis_state(spec, index);
    const auto b = build_graph_state_by_gates(spec, index);
    CHECK((a.amplitudes() - b.amplitudes()).norm() < 1e-12);
  }
}

TEST_CASE("Graph states do not depend on edge order", "[graph_state][property]") {
  Rng rng(271828);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 2 + static_cast<int>(rng.below(4));
    const std::size_t n = 2 + rng.below(4);
    const auto g = testing::random_connected_graph(n, rng, 0.5);
    auto pairs = g.edge_pairs();
    for (std::size_t i = pairs.size(); i > 1; --i) {
      std::swap(pairs[i - 1], pairs[static_cast<std::size_t>(rng.below(i))]);
    }
    for (auto& p : pairs) {
      if (rng.below(2) == 1) std::swap(p.first, p.second);
    }
    const GraphStateSpec a(g, d);
    const GraphStateSpec b(Graph(n, pairs), d);
    const auto index = static_cast<std::size_t>(rng.below(a.dims().total()));
    CHECK(graph_basis_state(a, index).amplitudes() == graph_basis_state(b, index).amplitudes());
    CHECK((build_graph_state_by_gates(b, index).amplitudes() -
           graph_basis_state(a, index).amplitudes())
              .norm() < 1e-12);
  }
}

TEST_CASE("Schmidt rank examples", "[graph_state]") {
  const auto product = PureState::basis(QuditDims({2, 2}), std::vector<int>{0, 1});
  CHECK(schmidt_rank(product, std::vector<std::size_t>{0}) == 1);
  const auto bell4 = build_graph_state(GraphStateSpec(Graph::bar(), 4));
  CHECK(schmidt_rank(bell4, std::vector<std::size_t>{0}) == 4);
  const auto cluster = build_graph_state(GraphStateSpec(Graph::chain(4), 2));
  CHECK(schmidt_rank(cluster, std::vector<std::size_t>{0, 1}) == 2);
}

TEST_CASE("Schmidt rank across edge-crossing cuts", "[graph_state][property]") {
  for (int d = 2; d <= 4; ++d) {
    for (std::size_t n = 2; n <= (d == 4 ? 4u : 5u); ++n) {
      for (const auto& g : connected_graphs_up_to_isomorphism(n)) {
        const GraphStateSpec spec(g, d);
        const auto psi = build_graph_state(spec);
        for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
          if (mask & 1u) continue;  // each cut once
          std::vector<std::size_t> side;
          for (std::size_t v = 0; v < n; ++v) {
            if ((mask >> v) & 1u) side.push_back(v);
          }
          std::size_t crossing = 0;
          for (const auto& e : g.edges()) {
            crossing += (((mask >> e.first) ^ (mask >> e.second)) & 1u) ? 1 : 0;
          }
          const auto rank = schmidt_rank(psi, side);
          // Connected graphs are crossed by every proper cut.
          REQUIRE(crossing >= 1);
          CHECK(rank >= static_cast<std::size_t>(d));
          if (crossing == 1) CHECK(rank == static_cast<std::size_t>(d));
        }
      }
    }
  }
}

TEST_CASE("Ten-vertex ladder graph state has flat magnitudes", "[graph_state]") {
  const auto psi = build_graph_state(GraphStateSpec(Graph::ladder(5), 2));
  REQUIRE(psi.amplitudes().size() == 1024);
  for (Eigen::Index i = 0; i < 1024; ++i) {
    CHECK_THAT(std::abs(psi.amplitudes()(i)), WithinAbs(1.0 / 32.0, 1e-15));
  }
}

TEST_CASE("Graph states are refused above the pure-state cap", "[graph_state]") {
  CHECK_THROWS_AS(build_graph_state(GraphStateSpec(Graph::chain(21), 2)), DimensionCapExceeded);
}
