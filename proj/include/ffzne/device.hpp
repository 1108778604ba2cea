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

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ffzne {

using Edge = std::pair<uint32_t, uint32_t>;  // canonical (min, max)

inline Edge make_edge(uint32_t a, uint32_t b) { return a < b ? Edge{a, b} : Edge{b, a}; }
inline uint64_t edge_key(Edge e) { return (static_cast<uint64_t>(e.first) << 32) | e.second; }

// Coupling graph plus per-gate calibration errors. Immutable after
// construction; safe to share across worker threads.
struct DeviceModel {
    std::string name;
    uint32_t num_qubits = 0;
    std::vector<Edge> edges;  // canonical pairs, sorted ascending
    std::unordered_map<uint64_t, double> two_qubit_error;  // keyed by edge_key
    std::vector<double> one_qubit_error;                   // indexed by qubit

    bool has_edge(uint32_t a, uint32_t b) const {
        return two_qubit_error.count(edge_key(make_edge(a, b))) != 0;
    }
    double edge_error(uint32_t a, uint32_t b) const;
    double qubit_error(uint32_t q) const;

    std::vector<std::vector<uint32_t>> adjacency() const;
    uint32_t degree(uint32_t q) const;

    // Throws ValidationError naming the offending field.
    void validate() const;

    bool operator==(const DeviceModel &other) const;
};

enum class TopologyKind { HeavyHex, Ring, Grid, Line };

struct TopologySpec {
    TopologyKind kind = TopologyKind::HeavyHex;
    uint32_t rows = 0;  // heavy-hex, grid
    uint32_t cols = 0;  // heavy-hex, grid
    uint32_t n = 0;     // ring, line

    static TopologySpec heavy_hex(uint32_t rows, uint32_t cols) {
        return {TopologyKind::HeavyHex, rows, cols, 0};
    }
    static TopologySpec ring(uint32_t n) { return {TopologyKind::Ring, 0, 0, n}; }
    static TopologySpec grid(uint32_t rows, uint32_t cols) {
        return {TopologyKind::Grid, rows, cols, 0};
    }
    static TopologySpec line(uint32_t n) { return {TopologyKind::Line, 0, 0, n}; }
};

// Synthetic calibration recipe. Errors are drawn log-normally around the
// given medians; dispersion is the knob that controls how much the layouts
// of a fixed circuit differ in aggregate noise.
struct DeviceGenSpec {
    TopologySpec topology;
    double eps2_median = 0.01;   // two-qubit error median, in (0, 0.5)
    double sigma2 = 0.5;         // log-space dispersion, >= 0
    double eps1_median = 0.001;  // one-qubit error median, in (0, 0.5)
    double sigma1 = 0.5;
    double dead_fraction = 0.0;  // fraction of edges forced to 0.999, in [0, 0.2]
    uint64_t seed = 0;
    std::string name;  // defaults to a topology-derived name
};

// Bare coupling graph for a topology (no errors).
std::vector<Edge> topology_edges(const TopologySpec &spec, uint32_t &num_qubits);

// Deterministic for a fixed spec (including seed). Drawn errors are clamped
// to [1e-5, 0.999]; exactly floor(dead_fraction * |edges|) edges are set to
// the 0.999 sentinel.
DeviceModel generate_device(const DeviceGenSpec &spec);

DeviceModel load_device(const std::string &path);
void save_device(const DeviceModel &model, const std::string &path);

}  // namespace ffzne
