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
#include "quwit/random.hpp"
#include "quwit/witness.hpp"

namespace quwit {

/// Z measures in {|v>}; X measures in {F^dag |v>}.
enum class Basis { Z, X };

inline const char* basis_name(Basis b) { return b == Basis::Z ? "Z" : "X"; }

inline Basis parse_basis(const std::string& s) {
  if (s == "Z") return Basis::Z;
  if (s == "X") return Basis::X;
  throw ParseError("unknown measurement basis '" + s + "'");
}

/// One local observable per site, measured in parallel.
struct MeasurementSetting {
  std::vector<Basis> bases;

  std::size_t sites() const { return bases.size(); }
  friend bool operator==(const MeasurementSetting&, const MeasurementSetting&) = default;
};

/// X on every vertex of colour class `j` (0-based), Z elsewhere.
inline MeasurementSetting setting_for_color(const ColoredPartition& coloring, std::size_t j,
                                            std::size_t vertices) {
  detail::require(j < coloring.q(), "colour class index " + std::to_string(j) +
                                        " out of range for q=" + std::to_string(coloring.q()));
  MeasurementSetting s{std::vector<Basis>(vertices, Basis::Z)};
  for (auto v : coloring.color_class(j)) {
    detail::require(v < vertices, "colour class names a missing vertex");
    s.bases[v] = Basis::X;
  }
  return s;
}

struct JointDistribution {
  MeasurementSetting setting;
  QuditDims dims;
  std::vector<double> probabilities;
};

namespace detail {

/// Amplitudes in the product eigenbasis of `setting`: <F^dag v|psi> = <v|F psi>.
inline Vector rotate_to_setting(const Vector& amplitudes, const QuditDims& dims,
                                const MeasurementSetting& setting) {
  Vector v = amplitudes;
  for (std::size_t s = 0; s < setting.sites(); ++s) {
    if (setting.bases[s] == Basis::X) v = apply(fourier_unitary(dims.level(s)).placed_at({s}), dims, v);
  }
  return v;
}

inline void require_setting(const QuditDims& dims, const MeasurementSetting& setting) {
  require(setting.sites() == dims.sites(), "measurement setting has " +
                                               std::to_string(setting.sites()) +
                                               " sites, register has " +
                                               std::to_string(dims.sites()));
}

inline JointDistribution finish_distribution(MeasurementSetting setting, QuditDims dims,
                                             std::vector<double> p) {
  double total = 0.0;
  for (auto& x : p) {
    if (x < 0.0) {
      require<NumericalError>(x > -tolerances().psd, "negative outcome probability");
      x = 0.0;
    }
    total += x;
  }
  require<NumericalError>(std::abs(total - 1.0) <= tolerances().algebraic,
                          "outcome probabilities do not sum to one");
  return JointDistribution{std::move(setting), std::move(dims), std::move(p)};
}

}  // namespace detail

/// Born-rule distribution over outcome tuples (v_1..v_N).
inline JointDistribution outcome_distribution(const PureState& psi,
                                              const MeasurementSetting& setting) {
  detail::require_setting(psi.dims(), setting);
  const Vector rotated = detail::rotate_to_setting(psi.amplitudes(), psi.dims(), setting);
  std::vector<double> p(static_cast<std::size_t>(rotated.size()));
  for (Eigen::Index i = 0; i < rotated.size(); ++i) p[static_cast<std::size_t>(i)] = std::norm(rotated(i));
  return detail::finish_distribution(setting, psi.dims(), std::move(p));
}

inline JointDistribution outcome_distribution(const DensityOperator& rho,
                                              const MeasurementSetting& setting) {
  detail::require_setting(rho.dims(), setting);
  const auto& dims = rho.dims();
  Matrix m = rho.matrix();
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t s = 0; s < setting.sites(); ++s) {
      if (setting.bases[s] == Basis::X) {
        m = apply_left(fourier_unitary(dims.level(s)).placed_at({s}), dims, m);
      }
    }
    m = m.adjoint().eval();  // second pass rotates the column index: U rho U^dag
  }
  std::vector<double> p(dims.total());
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
  }
  return detail::finish_distribution(setting, dims, std::move(p));
}

inline JointDistribution outcome_distribution(const WhiteNoiseState& rho,
                                              const MeasurementSetting& setting) {
  auto pure = outcome_distribution(rho.pure(), setting);
  const double flat = 1.0 / static_cast<double>(rho.dims().total());
  for (auto& x : pure.probabilities) x = (1.0 - rho.noise()) * x + rho.noise() * flat;
  return detail::finish_distribution(setting, rho.dims(), std::move(pure.probabilities));
}

struct CountTable {
  MeasurementSetting setting;
  QuditDims dims;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> counts;
};

/// Multinomial draw by inverse-CDF sampling, one uniform per shot.
inline CountTable sample_counts(const JointDistribution& dist, std::uint64_t shots,
                                std::uint64_t seed) {
  detail::require(shots >= 1, "at least one shot is required");
  std::vector<double> cdf(dist.probabilities.size());
  double running = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    running += dist.probabilities[i];
    cdf[i] = running;
    if (dist.probabilities[i] > 0.0) last_nonzero = i;
  }
  CountTable table{dist.setting, dist.dims, shots, seed,
                   std::vector<std::uint64_t>(cdf.size(), 0)};
  Rng rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * running;
    auto index = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    index = std::min(index, last_nonzero);
    ++table.counts[index];
  }
  return table;
}

/// Plug-in frequencies of a count table.
inline JointDistribution empirical_distribution(const CountTable& table) {
  detail::require(table.shots >= 1, "count table has no shots");
  std::uint64_t total = 0;
  std::vector<double> p(table.counts.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    total += table.counts[i];
    p[i] = static_cast<double>(table.counts[i]) / static_cast<double>(table.shots);
  }
  detail::require(total == table.shots, "counts do not sum to the shot count");
  return JointDistribution{table.setting, table.dims, std::move(p)};
}

/// Eigenvalue of (a_k + I)/(t_d + 1) at one outcome tuple: 1 when
/// v_k + sum_{i in N(k)} v_i = 0 mod d, else (d-1-t_d)/((d-1)(t_d+1)).
inline double term_weight(std::span<const int> outcome, const GraphStateSpec& spec,
                          std::size_t k, const MeasurementSetting& setting) {
  detail::require(outcome.size() == spec.vertices() && setting.sites() == spec.vertices(),
                  "outcome tuple and setting must cover every vertex");
  detail::require(setting.bases[k] == Basis::X,
                  "vertex " + std::to_string(k) + " is not measured in X");
  long long sum = outcome[k];
  for (auto i : spec.graph.neighbors(k)) {
    detail::require(setting.bases[i] == Basis::Z,
                    "neighbour " + std::to_string(i) + " of vertex " + std::to_string(k) +
                        " is not measured in Z");
    sum += outcome[i];
  }
  if (sum % spec.d == 0) return 1.0;
  return detail::to_double(unsatisfied_weight_exact(spec.d));
}

/// Smallest possible per-setting weight product: the estimator of each colour
/// term is bounded in [min(0, w_unsat), 1].
inline double weight_range(int d) {
  const double w = detail::to_double(unsatisfied_weight_exact(d));
  return 1.0 - std::min(0.0, w);
}

struct DataKernelEstimate {
  KernelEvaluation kernel;
  /// Normal approximation from plug-in variances; absent for exact tables.
  std::optional<double> standard_error;
  std::vector<std::uint64_t> shots;
};

namespace detail {

inline void require_settings(std::span<const MeasurementSetting> settings,
                             const GraphStateSpec& spec, const ColoredPartition& coloring) {
  require(coloring.monochromatic_edges(spec.graph) == 0, "colouring is improper");
  require(settings.size() == coloring.q(),
          "expected exactly " + std::to_string(coloring.q()) + " settings (one per colour), got " +
              std::to_string(settings.size()));
  for (std::size_t j = 0; j < settings.size(); ++j) {
    require(settings[j] == setting_for_color(coloring, j, spec.vertices()),
            "setting " + std::to_string(j + 1) + " does not match colour class " +
                std::to_string(j + 1));
  }
}

/// Mean and variance of the colour-j weight product under `p`.
inline std::pair<double, double> color_moments(const std::vector<double>& p,
                                               const GraphStateSpec& spec,
                                               const ColoredPartition& coloring, std::size_t j,
                                               const MeasurementSetting& setting) {
  const auto dims = spec.dims();
  double mean = 0.0;
  double second = 0.0;
  std::vector<int> digits(spec.vertices());
  for (std::size_t idx = 0; idx < p.size(); ++idx) {
    if (p[idx] == 0.0) continue;
    for (std::size_t s = 0; s < digits.size(); ++s) digits[s] = dims.digit(idx, s);
    double w = 1.0;
    for (auto k : coloring.color_class(j)) w *= term_weight(digits, spec, k, setting);
    mean += p[idx] * w;
    second += p[idx] * w * w;
  }
  return {mean, std::max(0.0, second - mean * mean)};
}

}  // namespace detail

/// Kernel value sum_j E_j[prod_{k in Y_j} term_weight] from one distribution
/// per colour class, in colour order.
inline KernelEvaluation kernel_from_data(std::span<const JointDistribution> distributions,
                                         const GraphStateSpec& spec,
                                         const ColoredPartition& coloring) {
  std::vector<MeasurementSetting> settings;
  for (const auto& d : distributions) {
    detail::require(d.dims == spec.dims(), "distribution register does not match the graph");
    settings.push_back(d.setting);
  }
  detail::require_settings(settings, spec, coloring);
  KernelEvaluation out;
  for (std::size_t j = 0; j < distributions.size(); ++j) {
    const auto [mean, variance] =
        detail::color_moments(distributions[j].probabilities, spec, coloring, j, settings[j]);
    out.per_color_terms.push_back(mean);
    out.value += mean;
  }
  return out;
}

inline DataKernelEstimate kernel_from_data(std::span<const CountTable> tables,
                                           const GraphStateSpec& spec,
                                           const ColoredPartition& coloring) {
  std::vector<MeasurementSetting> settings;
  for (const auto& t : tables) {
    detail::require(t.dims == spec.dims(), "count table register does not match the graph");
    settings.push_back(t.setting);
  }
  detail::require_settings(settings, spec, coloring);
  DataKernelEstimate out;
  double variance_sum = 0.0;
  for (std::size_t j = 0; j < tables.size(); ++j) {
    const auto freq = empirical_distribution(tables[j]);
    const auto [mean, variance] =
        detail::color_moments(freq.probabilities, spec, coloring, j, settings[j]);
    out.kernel.per_color_terms.push_back(mean);
    out.kernel.value += mean;
    out.shots.push_back(tables[j].shots);
    variance_sum += variance / static_cast<double>(tables[j].shots);
  }
  out.standard_error = std::sqrt(variance_sum);
  return out;
}

/// Criterion report from measured counts.
inline CriterionReport criterion_from_counts(std::span<const CountTable> tables,
                                             const GraphStateSpec& spec, int l,
                                             const std::optional<ColoredPartition>& coloring = {}) {
  detail::require(spec.graph.is_connected(), "the criterion needs a connected graph");
  const auto params = CriterionParams::make(spec.d, l, color_graph(spec.graph, coloring));
  const auto estimate = kernel_from_data(tables, spec, params.coloring);
  auto report = make_report(estimate.kernel, params);
  report.shots = estimate.shots;
  report.standard_error = estimate.standard_error;
  return report;
}

/// The q distributions the criterion consumes, one per colour class.
template <QuantumState State>
std::vector<JointDistribution> criterion_distributions(const State& state,
                                                       const GraphStateSpec& spec,
                                                       const ColoredPartition& coloring) {
  std::vector<JointDistribution> out;
  for (std::size_t j = 0; j < coloring.q(); ++j) {
    out.push_back(outcome_distribution(state, setting_for_color(coloring, j, spec.vertices())));
  }
  return out;
}

}  // namespace quwit
