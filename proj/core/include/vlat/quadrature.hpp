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

#pragma once

#include <cstddef>
#include <vector>

namespace vlat {

/// Nodes and weights of a one-dimensional quadrature rule.
struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Composite Simpson rule on [a, b] with n nodes (n odd, n >= 3).
Rule1D composite_simpson(double a, double b, std::size_t n);

/// Periodic trapezoid rule on [0, 2pi) with n equispaced nodes. Spectrally
/// accurate for smooth periodic integrands.
Rule1D periodic_trapezoid(std::size_t n);

/// Resolution of the polar/Cartesian grids used by the quadrature oracles.
/// Defaults: radius out to 6 envelope widths, >= 2000 radial and >= 1024
/// azimuthal nodes.
struct QuadratureSpec {
  std::size_t radial_nodes = 2001;
  std::size_t azimuthal_nodes = 1024;
  double extent_widths = 6.0;
  /// Cartesian grids use this many nodes per axis.
  std::size_t cartesian_nodes = 1201;
};

}  // namespace vlat
