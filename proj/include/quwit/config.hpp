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

#include <cstddef>
#include <cstdlib>
#include <string>

#include "quwit/error.hpp"

namespace quwit {

struct Tolerances {
  double normalization = 1e-10;
  double algebraic = 1e-9;
  double hermitian = 1e-9;
  double imaginary_residue = 1e-9;
  double eigen = 1e-8;
  double psd = 1e-9;
  double rank = 1e-8;
  double dependence_phase = 1e-6;
  double dependence_floor = 1e-12;
};

struct DimensionCaps {
  std::size_t pure = std::size_t{1} << 20;
  std::size_t dense = std::size_t{1} << 13;
  /// Largest level count for which correlation operators are assembled.
  int operator_levels = 6;
  /// Largest level count for closed-form (formula-only) evaluations.
  int formula_levels = 64;
};

struct Config {
  Tolerances tol;
  DimensionCaps caps;
};

namespace detail {

/// QUWIT_DIM_CAP is either "N" (applies to both caps) or "PURE,DENSE".
inline DimensionCaps caps_from_env(DimensionCaps caps) {
  const char* raw = std::getenv("QUWIT_DIM_CAP");
  if (raw == nullptr || *raw == '\0') return caps;
  const std::string text(raw);
  try {
    const auto comma = text.find(',');
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const auto value = std::stoull(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      caps.pure = caps.dense = static_cast<std::size_t>(value);
    } else {
      const auto pure_text = text.substr(0, comma);
      const auto dense_text = text.substr(comma + 1);
      caps.pure = static_cast<std::size_t>(std::stoull(pure_text, &used));
      if (used != pure_text.size()) throw std::invalid_argument(text);
      caps.dense = static_cast<std::size_t>(std::stoull(dense_text, &used));
      if (used != dense_text.size()) throw std::invalid_argument(text);
    }
  } catch (const std::logic_error&) {
    throw InvalidArgument("QUWIT_DIM_CAP must be N or PURE,DENSE, got '" + text +
                          "'");
  }
  return caps;
}

}  // namespace detail

/// Process-wide configuration; initialised once, read-only afterwards.
inline const Config& config() {
  static const Config instance = [] {
    Config c;
    c.caps = detail::caps_from_env(c.caps);
    return c;
  }();
  return instance;
}

inline const Tolerances& tolerances() { return config().tol; }
inline const DimensionCaps& caps() { return config().caps; }

}  // namespace quwit
