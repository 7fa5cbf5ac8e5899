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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quwit/graph_state.hpp"
#include "quwit/linalg.hpp"
#include "quwit/measurement.hpp"
#include "quwit/random.hpp"
#include "quwit/witness.hpp"

namespace quwit {

/// N degrees of freedom with d_k levels each. Register sites are interleaved
/// as (A_1, B_1, ..., A_N, B_N), so A_k is site 2k and B_k is site 2k + 1.
class HESpec {
 public:
  explicit HESpec(std::vector<int> dofs) : dofs_(std::move(dofs)) {
    detail::require(!dofs_.empty(), "at least one degree of freedom is required");
    for (int d : dofs_) detail::require(d >= 2, "every degree of freedom needs d_k >= 2");
  }

  std::size_t dof_count() const { return dofs_.size(); }
  const std::vector<int>& dofs() const { return dofs_; }
  int levels(std::size_t k) const { return dofs_.at(k); }
  int min_levels() const { return *std::min_element(dofs_.begin(), dofs_.end()); }
  int max_levels() const { return *std::max_element(dofs_.begin(), dofs_.end()); }

  static std::size_t a_site(std::size_t k) { return 2 * k; }
  static std::size_t b_site(std::size_t k) { return 2 * k + 1; }

  QuditDims dims() const {
    std::vector<int> levels;
    for (int d : dofs_) {
      levels.push_back(d);
      levels.push_back(d);
    }
    return QuditDims(std::move(levels));
  }

  /// Sites of subsystem A.
  std::vector<std::size_t> side_a() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < dofs_.size(); ++k) out.push_back(a_site(k));
    return out;
  }

  /// DOF k on its own is a two-vertex graph state.
  GraphStateSpec dof_graph(std::size_t k) const { return GraphStateSpec(Graph::bar(), levels(k)); }

 private:
  std::vector<int> dofs_;
};

/// |H> = (x)_k (1/d_k) sum_{v,v'} omega_k^{v v'} |v>_{A_k} |v'>_{B_k}.
inline PureState build_he_state(const HESpec& spec) {
  detail::require_pure_cap(spec.dims().total());
  PureState h = build_graph_state(spec.dof_graph(0));
  for (std::size_t k = 1; k < spec.dof_count(); ++k) {
    h = tensor_product(h, build_graph_state(spec.dof_graph(k)));
  }
  return h;
}

/// (a_1^(k) + a_2^(k) + t_{d_k} I)/(3 t_{d_k}) on sites (A_k, B_k).
inline LocalOperator he_dof_operator(const HESpec& spec, std::size_t k) {
  const auto graph = spec.dof_graph(k);
  const int d = spec.levels(k);
  const std::vector<std::size_t> support{HESpec::a_site(k), HESpec::b_site(k)};
  const std::vector<int> levels{d, d};
  // a_1 has support (vertex 0, vertex 1); a_2 has support (vertex 1, vertex 0).
  const auto a1 = correlation_operator(graph, 0).placed_at(support);
  const auto a2 = extend(correlation_operator(graph, 1).placed_at({support[1], support[0]}),
                         support, levels);
  const double t = t_value(d).convert_to<double>();
  const Matrix m = (a1.matrix() + a2.matrix() + t * Matrix::Identity(d * d, d * d)) / (3.0 * t);
  return LocalOperator(support, levels, m);
}

inline std::vector<LocalOperator> he_kernel_factors(const HESpec& spec) {
  std::vector<LocalOperator> out;
  for (std::size_t k = 0; k < spec.dof_count(); ++k) out.push_back(he_dof_operator(spec, k));
  return out;
}

template <QuantumState State>
double he_kernel_value(const State& state, const HESpec& spec) {
  detail::require(state.dims() == spec.dims(), "state register does not match the HE layout");
  return product_expectation(state, he_kernel_factors(spec));
}

inline Rational he_bound_exact(const HESpec& spec) {
  const int d = spec.min_levels();
  const int big = spec.max_levels();
  return Rational(1) - Rational(big * (d - 1), 3 * d * (big - 1));
}

/// 1 - D(d - 1)/(3 d (D - 1)), d = min d_k, D = max d_k.
inline double he_bound(const HESpec& spec) { return detail::to_double(he_bound_exact(spec)); }

/// (1 - 1/d) / (3 (1 - 1/D)(1 - 3^{-N})).
inline double he_noise_tolerance(const HESpec& spec) {
  const int d = spec.min_levels();
  const int big = spec.max_levels();
  const Rational three_pow = detail::rational_power(Rational(1, 3), spec.dof_count());
  const Rational value = (Rational(1) - Rational(1, d)) /
                         (Rational(3) * (Rational(1) - Rational(1, big)) * (Rational(1) - three_pow));
  return detail::to_double(value);
}

inline double he_gamma(const HESpec& spec) {
  const int d = spec.min_levels();
  const int big = spec.max_levels();
  return detail::to_double(Rational(big, 3 * d * (big - 1)));
}

inline Matrix he_kernel_operator(const HESpec& spec) {
  const auto dims = spec.dims();
  detail::require_dense_cap(dims.total());
  const auto dim = static_cast<Eigen::Index>(dims.total());
  Matrix k = Matrix::Identity(dim, dim);
  for (const auto& f : he_kernel_factors(spec)) k = k * embed(f, dims);
  return k;
}

struct HEDominanceReport {
  double min_eigenvalue = 0.0;
  double gamma = 0.0;
  /// Same gap with the projector witness written as I - d |H><H|.
  double min_eigenvalue_scaled = 0.0;
};

/// Smallest eigenvalue of w_H - gamma_H w'_H with w_H = bound I - kernel and
/// w'_H = (1/d) I - |H><H|. Both witnesses share the eigenvector |H>, where
/// this combination equals -D (d-1)^2 / (3 d^2 (D-1)); with w'_H scaled by d
/// it is zero there.
inline HEDominanceReport he_dominance_gap(const HESpec& spec) {
  const auto dims = spec.dims();
  detail::require_dense_cap(dims.total());
  const auto dim = static_cast<Eigen::Index>(dims.total());
  const Matrix identity = Matrix::Identity(dim, dim);
  const Vector h = build_he_state(spec).amplitudes();
  const Matrix w = he_bound(spec) * identity - he_kernel_operator(spec);
  const Matrix wp = identity / static_cast<double>(spec.min_levels()) - h * h.adjoint();
  HEDominanceReport r;
  r.gamma = he_gamma(spec);
  r.min_eigenvalue = min_eigenvalue(w - r.gamma * wp);
  r.min_eigenvalue_scaled =
      min_eigenvalue(w - r.gamma * static_cast<double>(spec.min_levels()) * wp);
  return r;
}

/// |h_1>_{A_k b_1} (x) |h_2>_{B_k b_2} with |h_1> = sum_i c_i |i>_{A_k} |u_i>_{b_1}.
/// `side_one` lists the sites of b_1; every other site except A_k, B_k is in b_2.
inline PureState biseparable_he_state(const HESpec& spec, std::size_t k,
                                      const std::vector<std::size_t>& side_one,
                                      std::span<const double> weights_one,
                                      std::span<const Vector> environment_one,
                                      std::span<const double> weights_two,
                                      std::span<const Vector> environment_two) {
  const auto dims = spec.dims();
  const auto n = dims.sites();
  std::vector<std::size_t> part_one{HESpec::a_site(k)};
  part_one.insert(part_one.end(), side_one.begin(), side_one.end());
  std::vector<std::size_t> part_two{HESpec::b_site(k)};
  for (std::size_t s = 0; s < n; ++s) {
    if (s == HESpec::a_site(k) || s == HESpec::b_site(k)) continue;
    if (std::find(side_one.begin(), side_one.end(), s) == side_one.end()) part_two.push_back(s);
  }
  const int dk = spec.levels(k);
  auto build_half = [&](const std::vector<std::size_t>& sites, std::span<const double> weights,
                        std::span<const Vector> environment) {
    detail::require(weights.size() == static_cast<std::size_t>(dk) &&
                        environment.size() == static_cast<std::size_t>(dk),
                    "one weight and one environment vector per level of DOF k");
    std::vector<std::size_t> rest(sites.begin() + 1, sites.end());
    const auto env_dim = rest.empty() ? std::size_t{1} : dims.select(rest).total();
    Vector v(static_cast<Eigen::Index>(static_cast<std::size_t>(dk) * env_dim));
    for (int i = 0; i < dk; ++i) {
      const auto& u = environment[static_cast<std::size_t>(i)];
      detail::require(static_cast<std::size_t>(u.size()) == env_dim,
                      "environment vector has the wrong dimension");
      v.segment(static_cast<Eigen::Index>(static_cast<std::size_t>(i) * env_dim),
                static_cast<Eigen::Index>(env_dim)) =
          std::sqrt(weights[static_cast<std::size_t>(i)]) * u;
    }
    return PureState::normalized(dims.select(sites), std::move(v));
  };
  const auto one = build_half(part_one, weights_one, environment_one);
  const auto two = build_half(part_two, weights_two, environment_two);
  std::vector<std::size_t> destination = part_one;
  destination.insert(destination.end(), part_two.begin(), part_two.end());
  return permute_sites(tensor_product(one, two), destination);
}

/// Biseparable state with uniform weights whose environments keep every
/// other DOF's pair intact on side one; its overlap with |H> is 1/d_k.
inline PureState aligned_biseparable_state(const HESpec& spec, std::size_t k) {
  const int dk = spec.levels(k);
  std::vector<std::size_t> side_one;
  std::optional<PureState> env_state;
  for (std::size_t j = 0; j < spec.dof_count(); ++j) {
    if (j == k) continue;
    side_one.push_back(HESpec::a_site(j));
    side_one.push_back(HESpec::b_site(j));
    const auto pair = build_graph_state(spec.dof_graph(j));
    env_state = env_state ? tensor_product(*env_state, pair) : pair;
  }
  // |h_1> = |0>_{A_k} (x) pairs: weight on level 0 only. |h_2> = uniform on B_k.
  std::vector<double> w_one(static_cast<std::size_t>(dk), 0.0);
  w_one[0] = 1.0;
  std::vector<double> w_two(static_cast<std::size_t>(dk), 1.0 / dk);
  const Vector env = env_state ? env_state->amplitudes() : Vector::Ones(1);
  std::vector<Vector> e_one(static_cast<std::size_t>(dk), env);
  std::vector<Vector> e_two(static_cast<std::size_t>(dk), Vector::Ones(1));
  return biseparable_he_state(spec, k, side_one, w_one, e_one, w_two, e_two);
}

/// Random split DOF, random assignment of the other sites to b_1 or b_2,
/// Dirichlet weights |c_i|^2 and unit complex-Gaussian environment vectors.
inline PureState random_biseparable_he_state(const HESpec& spec, Rng& rng) {
  const auto dims = spec.dims();
  const auto k = static_cast<std::size_t>(rng.below(spec.dof_count()));
  std::vector<std::size_t> side_one;
  std::vector<std::size_t> side_two;
  for (std::size_t s = 0; s < dims.sites(); ++s) {
    if (s == HESpec::a_site(k) || s == HESpec::b_site(k)) continue;
    if (rng.below(2) == 0) {
      side_one.push_back(s);
    } else {
      side_two.push_back(s);
    }
  }
  const int dk = spec.levels(k);
  auto environment = [&](const std::vector<std::size_t>& sites) {
    const auto dim = sites.empty() ? std::size_t{1} : dims.select(sites).total();
    std::vector<Vector> out;
    for (int i = 0; i < dk; ++i) {
      Vector u(static_cast<Eigen::Index>(dim));
      for (Eigen::Index a = 0; a < u.size(); ++a) u(a) = rng.complex_normal();
      out.push_back(u / u.norm());
    }
    return out;
  };
  const auto w_one = rng.dirichlet(static_cast<std::size_t>(dk));
  const auto e_one = environment(side_one);
  const auto w_two = rng.dirichlet(static_cast<std::size_t>(dk));
  const auto e_two = environment(side_two);
  return biseparable_he_state(spec, k, side_one, w_one, e_one, w_two, e_two);
}

/// Largest |<h_b|H>|^2 over `samples` random biseparable states.
inline double biseparable_overlap_check(const HESpec& spec, std::size_t samples,
                                        std::uint64_t seed) {
  detail::require(samples >= 1, "at least one sample is required");
  const auto h = build_he_state(spec);
  Rng rng(seed);
  double best = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    best = std::max(best, fidelity(random_biseparable_he_state(spec, rng), h));
  }
  return best;
}

/// Global settings for the HE kernel: DOF k measures (X on A_k, Z on B_k)
/// when bit k of the choice is 0 (the a_1 setting) and (Z, X) when it is 1.
/// DOF 0 is the most significant bit of the setting index.
inline std::vector<MeasurementSetting> he_settings(const HESpec& spec) {
  const auto n = spec.dof_count();
  detail::require(n < 20, "too many degrees of freedom for setting enumeration");
  std::vector<MeasurementSetting> out;
  for (std::size_t sigma = 0; sigma < (std::size_t{1} << n); ++sigma) {
    MeasurementSetting s{std::vector<Basis>(2 * n, Basis::Z)};
    for (std::size_t k = 0; k < n; ++k) {
      const bool second = (sigma >> (n - 1 - k)) & 1u;
      s.bases[second ? HESpec::b_site(k) : HESpec::a_site(k)] = Basis::X;
    }
    out.push_back(std::move(s));
  }
  return out;
}

template <QuantumState State>
std::vector<JointDistribution> he_distributions(const State& state, const HESpec& spec) {
  std::vector<JointDistribution> out;
  for (const auto& s : he_settings(spec)) out.push_back(outcome_distribution(state, s));
  return out;
}

/// Kernel from the 2^N global settings. Writing each DOF factor as
/// (I + b_1 + b_2)/3 with b_c = a_c/t having eigenvalue s = 1 on satisfied
/// outcomes and -1/(d_k - 1) otherwise, and spreading each identity term
/// evenly over both local choices, gives
///   kernel = sum_sigma E_sigma[ prod_k (1/2 + s_k)/3 ].
/// Each DOF only ever uses its two local settings.
inline double he_kernel_from_data(std::span<const JointDistribution> distributions,
                                  const HESpec& spec) {
  const auto settings = he_settings(spec);
  detail::require(distributions.size() == settings.size(),
                  "expected " + std::to_string(settings.size()) + " distributions");
  const auto dims = spec.dims();
  double value = 0.0;
  for (std::size_t sigma = 0; sigma < settings.size(); ++sigma) {
    const auto& dist = distributions[sigma];
    detail::require(dist.dims == dims, "distribution register does not match the HE layout");
    detail::require(dist.setting == settings[sigma],
                    "distribution " + std::to_string(sigma) + " has the wrong setting");
    for (std::size_t idx = 0; idx < dist.probabilities.size(); ++idx) {
      const double p = dist.probabilities[idx];
      if (p == 0.0) continue;
      double w = 1.0;
      for (std::size_t k = 0; k < spec.dof_count(); ++k) {
        const int d = spec.levels(k);
        const int sum = dims.digit(idx, HESpec::a_site(k)) + dims.digit(idx, HESpec::b_site(k));
        const double s = sum % d == 0 ? 1.0 : -1.0 / (d - 1);
        w *= (0.5 + s) / 3.0;
      }
      value += p * w;
    }
  }
  return value;
}

/// Marginal on (A_k, B_k) pooled over every global setting in which DOF k
/// uses local choice `choice` (0 or 1).
inline JointDistribution dof_marginal(std::span<const JointDistribution> distributions,
                                      const HESpec& spec, std::size_t k, int choice) {
  const auto settings = he_settings(spec);
  detail::require(distributions.size() == settings.size(), "wrong number of distributions");
  const auto dims = spec.dims();
  const int d = spec.levels(k);
  const auto n = spec.dof_count();
  std::vector<double> p(static_cast<std::size_t>(d * d), 0.0);
  std::size_t pooled = 0;
  for (std::size_t sigma = 0; sigma < settings.size(); ++sigma) {
    if (static_cast<int>((sigma >> (n - 1 - k)) & 1u) != choice) continue;
    ++pooled;
    const auto& dist = distributions[sigma];
    for (std::size_t idx = 0; idx < dist.probabilities.size(); ++idx) {
      const auto a = static_cast<std::size_t>(dims.digit(idx, HESpec::a_site(k)));
      const auto b = static_cast<std::size_t>(dims.digit(idx, HESpec::b_site(k)));
      p[a * static_cast<std::size_t>(d) + b] += dist.probabilities[idx];
    }
  }
  for (auto& x : p) x /= static_cast<double>(pooled);
  MeasurementSetting s{{choice == 0 ? Basis::X : Basis::Z, choice == 0 ? Basis::Z : Basis::X}};
  return JointDistribution{std::move(s), QuditDims::uniform(d, 2), std::move(p)};
}

struct HEReport {
  std::vector<int> dofs;
  int d = 2;
  int big_d = 2;
  double value = 0.0;
  double bound = 0.0;
  bool violated = false;
  double noise_tolerance = 0.0;
  /// Coloured-kernel criterion per DOF at l = d_k, from the same data.
  std::vector<CriterionReport> per_dof;
};

/// Full HE evaluation from the 2^N setting distributions.
inline HEReport he_report_from_data(std::span<const JointDistribution> distributions,
                                    const HESpec& spec) {
  HEReport r;
  r.dofs = spec.dofs();
  r.d = spec.min_levels();
  r.big_d = spec.max_levels();
  r.value = he_kernel_from_data(distributions, spec);
  r.bound = he_bound(spec);
  r.violated = r.value > r.bound;
  r.noise_tolerance = he_noise_tolerance(spec);
  for (std::size_t k = 0; k < spec.dof_count(); ++k) {
    const auto graph = spec.dof_graph(k);
    const std::vector<JointDistribution> pair{dof_marginal(distributions, spec, k, 0),
                                              dof_marginal(distributions, spec, k, 1)};
    const auto params = CriterionParams::make(graph.d, graph.d, color_graph(graph.graph));
    r.per_dof.push_back(make_report(kernel_from_data(pair, graph, params.coloring), params));
  }
  return r;
}

template <QuantumState State>
HEReport evaluate_he(const State& state, const HESpec& spec) {
  return he_report_from_data(he_distributions(state, spec), spec);
}

}  // namespace quwit
