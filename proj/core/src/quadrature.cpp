// Copyright 2026 The vlat Authors
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

#include "vlat/quadrature.hpp"

#include "vlat/error.hpp"
#include "vlat/types.hpp"

namespace vlat {

Rule1D composite_simpson(double a, double b, std::size_t n) {
  if (n < 3 || n % 2 == 0) throw InvalidArgument("composite_simpson: node count must be odd and >= 3");
  if (!(b > a)) throw InvalidArgument("composite_simpson: empty interval");
  Rule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double h = (b - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = a + h * static_cast<double>(i);
    double w = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    rule.weights[i] = w * h / 3.0;
  }
  return rule;
}

Rule1D periodic_trapezoid(std::size_t n) {
  if (n < 1) throw InvalidArgument("periodic_trapezoid: need at least one node");
  Rule1D rule;
  rule.nodes.resize(n);
  rule.weights.assign(n, kTwoPi / static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) rule.nodes[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
  return rule;
}

}  // namespace vlat
