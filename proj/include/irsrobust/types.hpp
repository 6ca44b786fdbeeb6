// SPDX-License-Identifier: Apache-2.0
//
// irsrobust: robust beamforming and quasi-static IRS phase-shift design
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace irs {

using cdouble = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CRowVector = Eigen::RowVectorXcd;
using CMatrix = Eigen::MatrixXcd;

// All sampling goes through an explicit stream handle; no hidden global state.
using Rng = std::mt19937_64;

/// Deterministic 64-bit mixer used to derive independent substreams from a
/// master seed (slot index, sweep cell, worker id, ...).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

/// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
inline cdouble complex_normal(Rng& rng, double variance = 1.0) {
  std::normal_distribution<double> n;
  const double scale = std::sqrt(variance / 2.0);
  const double re = n(rng);
  const double im = n(rng);
  return {scale * re, scale * im};
}

inline CMatrix complex_normal_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols,
                                     double variance = 1.0) {
  CMatrix out(rows, cols);
  // Column-major fill order is part of the reproducibility contract.
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) out(r, c) = complex_normal(rng, variance);
  return out;
}

inline CVector complex_normal_vector(Rng& rng, Eigen::Index n, double variance = 1.0) {
  CVector out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = complex_normal(rng, variance);
  return out;
}

}  // namespace irs
