// Copyright 2026 The ffzne Authors
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
//
// Independent brute-force oracles for enumeration and selection, written
// deliberately without reusing the production code paths.

#pragma once

#include <cstdint>
#include <vector>

#include "ffzne/circuit.hpp"
#include "ffzne/device.hpp"
#include "ffzne/layout.hpp"

namespace ffzne::testing {

// Every injective, edge-preserving map, found by trying all permutations of
// all physical-qubit subsets. Exponential; keep inputs tiny.
std::vector<Layout> brute_force_layouts(const InteractionGraph &graph, const DeviceModel &device);

struct OracleSelection {
    size_t i = 0;  // 1-based indices to match the production reports
    size_t j = 0;
    double cost = 0.0;
    double delta = 0.0;
};

// Materializes every pair, normalizes, and scans for the minimum cost with
// the smallest-(i, j) tie-break.
OracleSelection oracle_exhaustive(const std::vector<double> &scores, double a);

// Linear scan over interior indices for the minimum |(s_i-s_1)-(s_m-s_i)|.
double oracle_binary_min_delta(const std::vector<double> &scores);

// Uniformly random circuit over {H, S, Sdg, X, Y, Z, CX}.
Circuit random_clifford_circuit(uint32_t n, uint32_t num_gates, uint64_t seed);

// Fully connected device with log-normal errors, for simulator tests.
DeviceModel complete_device(uint32_t n, double eps2_median, double eps1_median, uint64_t seed);

}  // namespace ffzne::testing
