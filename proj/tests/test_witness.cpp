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

#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace quwit;
using Catch::Matchers::WithinAbs;

namespace {

CriterionParams params_for(const GraphStateSpec& spec, int l) {
  return CriterionParams::make(spec.d, l, color_graph(spec.graph));
}

}  // namespace

TEST_CASE("t_d recursion", "[witness]") {
  CHECK(t_value(2) == 1);
  CHECK(t_value(3) == 2);
  CHECK(t_value(4) == 9);
  CHECK(t_value(5) == 44);
  CHECK(t_value(6) == 265);
  CHECK(t_value(20) == BigInt("895014631192902121"));
  CHECK_THROWS_AS(t_value(1), InvalidArgument);
  CHECK_THROWS_AS(t_value(65), InvalidArgument);
}

TEST_CASE("Correlation operator on the d=2 bar graph", "[witness]") {
  const GraphStateSpec spec(Graph::bar(), 2);
  const Matrix a = correlation_operator(spec, 0).matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  const auto ev = es.eigenvalues();
  CHECK_THAT(ev(0), WithinAbs(-1.0, 1e-12));
  CHECK_THAT(ev(1), WithinAbs(-1.0, 1e-12));
  CHECK_THAT(ev(2), WithinAbs(1.0, 1e-12));
  CHECK_THAT(ev(3), WithinAbs(1.0, 1e-12));
}

TEST_CASE("Correlation operator is Hermitian and traceless", "[witness]") {
  for (int d = 2; d <= 5; ++d) {
    const GraphStateSpec spec(Graph::chain(3), d);
    for (std::size_t k = 0; k < 3; ++k) {
      const Matrix a = correlation_operator(spec, k).matrix();
      CHECK((a - a.adjoint()).norm() < 1e-12);
      CHECK(std::abs(a.trace()) < 1e-9);
    }
  }
}

TEST_CASE("Correlation operator refuses isolated vertices and large d", "[witness]") {
  CHECK_THROWS_AS(correlation_operator(GraphStateSpec(Graph(3, {{0, 1}}), 2), 2), InvalidArgument);
  CHECK_THROWS_AS(correlation_operator(GraphStateSpec(Graph::bar(), 7), 0), InvalidArgument);
  CHECK_THROWS_AS(correlation_operator(GraphStateSpec(Graph::bar(), 2), 2), InvalidArgument);
}

TEST_CASE("Stabilizer identity on small graphs", "[witness][property]") {
  for (int d = 2; d <= 4; ++d) {
    for (std::size_t n = 2; n <= (d == 4 ? 4u : 5u); ++n) {
      for (const auto& g : connected_graphs_up_to_isomorphism(n)) {
        const GraphStateSpec spec(g, d);
        const auto psi = build_graph_state(spec);
        const double t = t_value(d).convert_to<double>();
        for (std::size_t k = 0; k < n; ++k) {
          CHECK_THAT(expectation(psi, correlation_operator(spec, k)), WithinAbs(t, 1e-9));
        }
        CHECK_THAT(kernel_value(psi, spec, params_for(spec, 2)).value,
                   WithinAbs(static_cast<double>(color_graph(g).q()), 1e-8));
      }
    }
  }
}

TEST_CASE("Graph basis states are common eigenvectors of every a_k", "[witness]") {
  for (int d = 2; d <= 4; ++d) {
    const GraphStateSpec spec(Graph::chain(3), d);
    const double t = t_value(d).convert_to<double>();
    for (std::size_t index = 0; index < spec.dims().total(); ++index) {
      const auto g = graph_basis_state(spec, index);
      const auto digits = spec.dims().digits(index);
      for (std::size_t k = 0; k < 3; ++k) {
        const auto a = correlation_operator(spec, k);
        const Vector image = apply(a, spec.dims(), g.amplitudes());
        const double expected = digits[k] == 0 ? t : -t / (d - 1);
        CHECK((image - expected * g.amplitudes()).norm() < 1e-9);
      }
    }
  }
}

TEST_CASE("Operators in one colour class commute", "[witness][property]") {
  Rng rng(606);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + static_cast<int>(rng.below(2));
    const std::size_t n = 3 + rng.below(2);
    const GraphStateSpec spec(testing::random_connected_graph(n, rng), d);
    const auto coloring = color_graph(spec.graph);
    for (const auto& cls : coloring.classes()) {
      for (std::size_t i = 0; i < cls.size(); ++i) {
        for (std::size_t j = i + 1; j < cls.size(); ++j) {
          const Matrix a = embed(correlation_operator(spec, cls[i]), spec.dims());
          const Matrix b = embed(correlation_operator(spec, cls[j]), spec.dims());
          CHECK((a * b - b * a).cwiseAbs().maxCoeff() < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("Kernel trace identity", "[witness][property]") {
  for (int d = 2; d <= 4; ++d) {
    for (std::size_t n = 2; n <= 4; ++n) {
      for (const auto& g : connected_graphs_up_to_isomorphism(n)) {
        const GraphStateSpec spec(g, d);
        const auto params = params_for(spec, 2);
        for (std::size_t j = 0; j < params.q(); ++j) {
          const auto factors = kernel_factors(spec, params, j);
          const double expected =
              std::pow(params.t + 1.0, -static_cast<double>(params.coloring.color_class(j).size()));
          CHECK_THAT(detail::normalized_trace(factors), WithinAbs(expected, 1e-9));
        }
        const auto mixed = kernel_value(DensityOperator::maximally_mixed(spec.dims()), spec, params);
        CHECK_THAT(mixed.value, WithinAbs(detail::to_double(params.mixed_kernel_exact()), 1e-9));
      }
    }
  }
}

TEST_CASE("Kernel value examples", "[witness]") {
  const GraphStateSpec ghz(Graph::star(3), 2);
  CHECK_THAT(kernel_value(build_graph_state(ghz), ghz, params_for(ghz, 2)).value,
             WithinAbs(2.0, 1e-12));
  const GraphStateSpec bell(Graph::bar(), 2);
  const auto p = params_for(bell, 2);
  CHECK_THAT(kernel_value(DensityOperator::maximally_mixed(bell.dims()), bell, p).value,
             WithinAbs(1.0, 1e-12));
  CHECK_THAT(kernel_value(WhiteNoiseState(build_graph_state(bell), 0.2), bell, p).value,
             WithinAbs(1.8, 1e-12));
  CHECK_THAT(kernel_value(DensityOperator::white_noise(build_graph_state(bell), 0.2), bell, p).value,
             WithinAbs(1.8, 1e-12));
}

TEST_CASE("Kernel value rejects improper colourings and mismatched states", "[witness]") {
  const GraphStateSpec spec(Graph::chain(3), 2);
  const auto bad = CriterionParams::make(2, 2, ColoredPartition({{0, 1}, {2}}));
  CHECK_THROWS_AS(kernel_value(build_graph_state(spec), spec, bad), InvalidArgument);
  const auto other = build_graph_state(GraphStateSpec(Graph::chain(3), 3));
  CHECK_THROWS_AS(kernel_value(other, spec, params_for(spec, 2)), InvalidArgument);
}

TEST_CASE("eta examples", "[witness]") {
  for (int d : {2, 3}) {
    for (std::size_t q : {1u, 2u, 3u}) {
      std::vector<std::vector<std::size_t>> classes;
      for (std::size_t j = 0; j < q; ++j) classes.push_back({j});
      CHECK_THAT(eta(CriterionParams::make(d, 2, ColoredPartition(classes))),
                 WithinAbs(static_cast<double>(q) - 1.0, 1e-15));
      classes.back().push_back(q);
      CHECK_THAT(eta(CriterionParams::make(d, 2, ColoredPartition(classes))),
                 WithinAbs(static_cast<double>(q) - 1.0, 1e-15));
    }
  }
  const auto f1 = CriterionParams::make(4, 2, ColoredPartition({{0}, {1}}));
  CHECK(f1.f_q == 1);
  CHECK_THAT(eta(f1), WithinAbs(0.8, 1e-15));
  const auto f2 = CriterionParams::make(4, 2, ColoredPartition({{0}, {1, 2}}));
  CHECK(f2.f_q == 2);
  CHECK_THAT(eta(f2), WithinAbs(1.04, 1e-15));
}

TEST_CASE("bound examples", "[witness]") {
  CHECK(bound(CriterionParams::make(2, 2, ColoredPartition({{0}, {1}}))) == 1.5);
  CHECK_THAT(bound(CriterionParams::make(3, 3, ColoredPartition({{0}, {1}}))),
             WithinAbs(5.0 / 3.0, 1e-15));
  CHECK_THAT(bound(CriterionParams::make(4, 2, ColoredPartition({{0}, {1}}))),
             WithinAbs(1.1, 1e-15));
  CHECK_THROWS_AS(CriterionParams::make(3, 4, ColoredPartition({{0}, {1}})), InvalidArgument);
  CHECK_THROWS_AS(CriterionParams::make(3, 1, ColoredPartition({{0}, {1}})), InvalidArgument);
}

TEST_CASE("noise tolerance examples", "[witness]") {
  for (int d : {2, 3, 4}) {
    CHECK(noise_tolerance(params_for(GraphStateSpec(Graph::bar(), d), 2)) == 0.5);
  }
  CHECK_THAT(noise_tolerance(params_for(GraphStateSpec(Graph::star(3), 2), 2)),
             WithinAbs(0.4, 1e-15));
  // Formula-only evaluation at large d approaches 1/q.
  const auto star = color_graph(Graph::star(3));
  CHECK_THAT(noise_tolerance(CriterionParams::make(64, 2, star)), WithinAbs(0.5, 0.02));
}

TEST_CASE("noise tolerance equals the numeric crossing", "[witness][property]") {
  for (int d = 2; d <= 4; ++d) {
    for (std::size_t n = 2; n <= 4; ++n) {
      for (const auto& g : connected_graphs_up_to_isomorphism(n)) {
        const GraphStateSpec spec(g, d);
        const auto psi = build_graph_state(spec);
        for (int l = 2; l <= d; ++l) {
          const auto params = params_for(spec, l);
          const double k0 = kernel_value(WhiteNoiseState(psi, 0.0), spec, params).value;
          const double k1 = kernel_value(WhiteNoiseState(psi, 1.0), spec, params).value;
          const double crossing = (k0 - bound(params)) / (k0 - k1);
          CHECK_THAT(noise_tolerance(params), WithinAbs(crossing, 1e-9));
        }
      }
    }
  }
}

TEST_CASE("evaluate_criterion examples", "[witness]") {
  const GraphStateSpec cluster(Graph::chain(4), 2);
  const auto r = evaluate_criterion(build_graph_state(cluster), cluster, 2);
  CHECK_THAT(r.value, WithinAbs(2.0, 1e-12));
  CHECK(r.violated);
  CHECK(r.max_detected_level == 2);

  const GraphStateSpec ghz(Graph::star(3), 2);
  // rho(0.4) sits exactly on the bound: strict inequality means not detected.
  const auto rho = DensityOperator::white_noise(build_graph_state(ghz), 0.4);
  const auto edge = evaluate_criterion(rho, ghz, 2);
  CHECK_THAT(edge.value, WithinAbs(1.5, 1e-12));
  CHECK(edge.bound == 1.5);
  CHECK(edge.violated == (edge.value > edge.bound));

  const GraphStateSpec bell4(Graph::bar(), 4);
  const auto b = evaluate_criterion(build_graph_state(bell4), bell4, 4);
  CHECK_THAT(b.bound, WithinAbs(1.7, 1e-12));
  CHECK(b.violated);
  CHECK(b.max_detected_level == 4);

  CHECK_THROWS_AS(evaluate_criterion(build_graph_state(GraphStateSpec(Graph(3, {{0, 1}}), 2)),
                                     GraphStateSpec(Graph(3, {{0, 1}}), 2), 2),
                  InvalidArgument);
}

TEST_CASE("Report invariants on random states", "[witness][property]") {
  Rng rng(1234);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 2 + static_cast<int>(rng.below(3));
    const std::size_t n = 2 + rng.below(2);
    const GraphStateSpec spec(testing::random_connected_graph(n, rng), d);
    const auto rho = testing::random_density(spec.dims(), rng);
    const int l = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d - 1)));
    const auto r = evaluate_criterion(rho, spec, l);
    CHECK(r.violated == (r.value > r.bound));
    const double w = CriterionParams::make(d, l, color_graph(spec.graph)).unsatisfied_weight();
    for (double term : r.per_color_terms) {
      CHECK(term <= 1.0 + 1e-9);
      CHECK(term >= std::min(0.0, w) - 1e-9);
    }
  }
}

TEST_CASE("Projector criterion", "[witness]") {
  const GraphStateSpec ghz(Graph::star(3), 2);
  const auto pure = projector_criterion(build_graph_state(ghz), ghz, 2);
  CHECK_THAT(pure.fidelity, WithinAbs(1.0, 1e-12));
  CHECK(pure.violated);
  const auto mixed = projector_criterion(DensityOperator::maximally_mixed(ghz.dims()), ghz, 2);
  CHECK_THAT(mixed.fidelity, WithinAbs(0.125, 1e-12));
  CHECK_FALSE(mixed.violated);
  const GraphStateSpec bell(Graph::bar(), 2);
  const auto half = projector_criterion(WhiteNoiseState(build_graph_state(bell), 0.5), bell, 2);
  CHECK_THAT(half.fidelity, WithinAbs(0.625, 1e-12));
  CHECK(half.violated);
  CHECK_FALSE(evaluate_criterion(WhiteNoiseState(build_graph_state(bell), 0.5), bell, 2).violated);
}

TEST_CASE("Projector criterion tolerates at least as much noise", "[witness][property]") {
  for (int d = 2; d <= 4; ++d) {
    for (const auto& g : {Graph::bar(), Graph::star(3), Graph::chain(4)}) {
      const GraphStateSpec spec(g, d);
      for (int l = 2; l <= d; ++l) {
        const auto params = params_for(spec, l);
        // Fidelity of rho(p) is (1-p) + p/d^N; solve for the projector threshold.
        const double dim = static_cast<double>(spec.dims().total());
        const double projector_tolerance =
            (1.0 - projector_bound(d, l)) / (1.0 - 1.0 / dim);
        CHECK(projector_tolerance >= noise_tolerance(params) - 1e-12);
      }
    }
  }
}

TEST_CASE("Dominance examples", "[witness]") {
  const GraphStateSpec bell(Graph::bar(), 2);
  const auto r = dominance_gap(bell, 2);
  CHECK(r.min_gap >= -1e-9);
  CHECK(r.diagonal.size() == 4);
  CHECK_THAT(r.diagonal[0], WithinAbs(0.0, 1e-9));
  const GraphStateSpec ghz(Graph::star(3), 3);
  for (int l : {2, 3}) {
    const auto g = dominance_gap(ghz, l);
    CHECK(g.min_gap >= -1e-9);
    CHECK(g.off_diagonal_kernel_witness < 1e-9);
  }
}

TEST_CASE("Dominance over all small connected graphs", "[witness][property]") {
  for (int d = 2; d <= 4; ++d) {
    for (std::size_t n = 2; n <= (d == 4 ? 3u : 4u); ++n) {
      for (const auto& g : connected_graphs_up_to_isomorphism(n)) {
        for (int l = 2; l <= d; ++l) CHECK(dominance_gap(GraphStateSpec(g, d), l).min_gap >= -1e-9);
      }
    }
  }
}

TEST_CASE("Fidelity lower bound", "[witness]") {
  const GraphStateSpec bell(Graph::bar(), 2);
  const auto p = params_for(bell, 2);
  CHECK(fidelity_lower_bound(2.0, p) == 1.0);
  CHECK(fidelity_lower_bound(bound(p), p) == 0.5);
  const auto r = evaluate_criterion(WhiteNoiseState(build_graph_state(bell), 0.2), bell, 2);
  CHECK_THAT(r.fidelity_lower_bound, WithinAbs(0.8, 1e-12));
  CHECK(r.fidelity_lower_bound <= 0.85);
}

TEST_CASE("Fidelity lower bound never exceeds the fidelity", "[witness][property]") {
  Rng rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + static_cast<int>(rng.below(2));
    const GraphStateSpec spec(testing::random_connected_graph(3, rng), d);
    const auto rho = testing::random_density(spec.dims(), rng);
    const auto target = build_graph_state(spec);
    for (int l = 2; l <= d; ++l) {
      const auto r = evaluate_criterion(rho, spec, l);
      CHECK(r.fidelity_lower_bound <= fidelity(rho, target) + 1e-9);
    }
  }
}

TEST_CASE("Biseparable pure states are never detected", "[witness][property]") {
  Rng rng(8675309);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + static_cast<int>(rng.below(2));
    const std::size_t n = 2 + rng.below(3);
    const GraphStateSpec spec(testing::random_connected_graph(n, rng), d);
    const auto psi = testing::random_biseparable(spec.dims(), rng);
    CHECK_FALSE(evaluate_criterion(psi, spec, 2).violated);
  }
}

TEST_CASE("Low Schmidt-rank states are never detected at level l", "[witness][property]") {
  Rng rng(1618);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 3 + static_cast<int>(rng.below(2));
    const int l = 3 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d - 2)));
    const GraphStateSpec spec(Graph::star(3), d);
    const auto psi = testing::random_low_rank(spec.dims(), l - 1, rng);
    CHECK_FALSE(evaluate_criterion(psi, spec, l).violated);
  }
}
