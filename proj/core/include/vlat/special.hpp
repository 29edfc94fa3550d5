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

namespace vlat {

/// Bessel function of the first kind J_n(x) for any integer order and real
/// argument, using J_{-n} = (-1)^n J_n and J_n(-x) = (-1)^n J_n(x).
double bessel_j(int order, double x);

}  // namespace vlat
