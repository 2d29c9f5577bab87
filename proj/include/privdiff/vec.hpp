// Copyright 2026 The privdiff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIVDIFF_VEC_HPP_
#define PRIVDIFF_VEC_HPP_

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace privdiff {

inline double l1_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += std::fabs(v);
  return s;
}

inline double l1_distance(std::span<const double> x,
                          std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("l1_distance: length mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::fabs(x[i] - y[i]);
  return s;
}

inline double linf_distance(std::span<const double> x,
                            std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("linf_distance: length mismatch");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    m = std::max(m, std::fabs(x[i] - y[i]));
  }
  return m;
}

inline double vec_sum(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s;
}

}  // namespace privdiff

#endif  // PRIVDIFF_VEC_HPP_
