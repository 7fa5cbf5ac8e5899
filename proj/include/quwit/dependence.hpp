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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quwit/config.hpp"
#include "quwit/error.hpp"
#include "quwit/linalg.hpp"

namespace quwit {

/// c_mn in {0,1} and phases phi_mn (radians), row-major over (m, n).
struct CoefficientScheme {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<int> c;
  std::vector<double> phi;

  int coefficient(std::size_t m, std::size_t n) const { return c[m * cols + n]; }
  double phase(std::size_t m, std::size_t n) const { return phi[m * cols + n]; }
  Complex term(std::size_t m, std::size_t n) const {
    return static_cast<double>(coefficient(m, n)) * std::polar(1.0, phase(m, n));
  }
};

/// Probabilities p(m, n), row-major.
struct JointTable {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> p;

  double at(std::size_t m, std::size_t n) const { return p[m * cols + n]; }

  static JointTable product(std::span<const double> row_marginal,
                            std::span<const double> col_marginal) {
    JointTable t{row_marginal.size(), col_marginal.size(), {}};
    t.p.reserve(t.rows * t.cols);
    for (double a : row_marginal) {
      for (double b : col_marginal) t.p.push_back(a * b);
    }
    return t;
  }
};

/// c = 1 everywhere, phi_mn = 2 pi k_m n / cols with k_m = 1 + (m mod (cols - 1)).
/// k_m is never a multiple of cols, so every row sums to zero; for m + 1 < cols
/// this is phi_mn = 2 pi (m + 1) n / cols.
inline CoefficientScheme roots_of_unity_scheme(std::size_t rows, std::size_t cols) {
  detail::require(rows >= 1 && cols >= 2, "scheme needs at least one row and two columns");
  CoefficientScheme s{rows, cols, std::vector<int>(rows * cols, 1), std::vector<double>(rows * cols)};
  for (std::size_t m = 0; m < rows; ++m) {
    for (std::size_t n = 0; n < cols; ++n) {
      const auto k = ((1 + m % (cols - 1)) * n) % cols;
      s.phi[m * cols + n] = 2.0 * std::numbers::pi * static_cast<double>(k) /
                            static_cast<double>(cols);
    }
  }
  return s;
}

struct SchemeValidation {
  bool valid = false;
  std::size_t worst_row = 0;
  double worst_residue = 0.0;
};

namespace detail {

inline void require_shape(const CoefficientScheme& s) {
  require(s.rows >= 1 && s.cols >= 1, "scheme needs at least one row and column");
  require(s.c.size() == s.rows * s.cols && s.phi.size() == s.rows * s.cols,
          "scheme tables do not match rows x cols");
}

}  // namespace detail

/// Checks c_mn in {0,1} and |sum_n c_mn e^{i phi_mn}| < tol for every row m.
inline SchemeValidation validate_scheme(const CoefficientScheme& s,
                                        double tol = tolerances().algebraic) {
  detail::require_shape(s);
  SchemeValidation v;
  bool binary = true;
  for (int x : s.c) binary = binary && (x == 0 || x == 1);
  for (std::size_t m = 0; m < s.rows; ++m) {
    Complex sum = 0.0;
    for (std::size_t n = 0; n < s.cols; ++n) sum += s.term(m, n);
    if (std::abs(sum) > v.worst_residue) {
      v.worst_residue = std::abs(sum);
      v.worst_row = m;
    }
  }
  v.valid = binary && v.worst_residue < tol;
  return v;
}

inline void require_valid_scheme(const CoefficientScheme& s) {
  const auto v = validate_scheme(s);
  if (!v.valid) {
    throw InvalidArgument("coefficient scheme violates the row constraint (worst row " +
                          std::to_string(v.worst_row) + ", |sum| = " +
                          std::to_string(v.worst_residue) + ") or has non-binary c");
  }
}

inline void validate_table(const JointTable& t, double tol = tolerances().algebraic) {
  detail::require(t.p.size() == t.rows * t.cols, "table does not match rows x cols");
  double total = 0.0;
  for (double x : t.p) {
    detail::require(x >= 0.0, "probabilities must be nonnegative");
    total += x;
  }
  detail::require(std::abs(total - 1.0) <= tol, "table probabilities do not sum to one");
}

/// R_n = sum_m c_mn e^{i phi_mn} p(m, n).
inline std::vector<Complex> r_polynomials(const JointTable& table,
                                          const CoefficientScheme& scheme) {
  detail::require_shape(scheme);
  detail::require(table.rows == scheme.rows && table.cols == scheme.cols,
                  "table and scheme shapes differ");
  detail::require(table.p.size() == table.rows * table.cols, "table does not match rows x cols");
  require_valid_scheme(scheme);
  std::vector<Complex> r(scheme.cols, 0.0);
  for (std::size_t n = 0; n < scheme.cols; ++n) {
    for (std::size_t m = 0; m < scheme.rows; ++m) r[n] += scheme.term(m, n) * table.at(m, n);
  }
  return r;
}

enum class DependenceVerdict { dependent, inconclusive };

struct CollinearityResult {
  DependenceVerdict verdict = DependenceVerdict::inconclusive;
  /// Entries below the magnitude floor; they carry no phase information.
  std::size_t excluded = 0;
  std::optional<double> common_phase;
};

/// Dependent iff every R_n above the floor has the same complex argument
/// (within phase_tol) and at least one such R_n exists.
inline CollinearityResult collinearity_test(std::span<const Complex> r,
                                            double phase_tol = tolerances().dependence_phase,
                                            double floor = tolerances().dependence_floor) {
  detail::require(!r.empty(), "collinearity test needs at least one R_n");
  detail::require(phase_tol > 0.0, "phase tolerance must be positive");
  CollinearityResult out;
  std::optional<double> reference;
  bool aligned = true;
  for (const auto& value : r) {
    if (std::abs(value) <= floor) {
      ++out.excluded;
      continue;
    }
    const double phase = std::arg(value);
    if (!reference) {
      reference = phase;
      continue;
    }
    const double diff = std::remainder(phase - *reference, 2.0 * std::numbers::pi);
    if (std::abs(diff) > phase_tol) aligned = false;
  }
  if (reference && aligned) {
    out.verdict = DependenceVerdict::dependent;
    out.common_phase = reference;
  }
  return out;
}

/// |sum_n R_n|; below one for independent subsystems unless some outcome of
/// each side is certain.
inline double dependence_magnitude(std::span<const Complex> r) {
  Complex sum = 0.0;
  for (const auto& value : r) sum += value;
  return std::abs(sum);
}

}  // namespace quwit
