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

#include "ffzne/device.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ffzne/errors.hpp"
#include "ffzne/json_io.hpp"
#include "ffzne/rng.hpp"

namespace ffzne {

double DeviceModel::edge_error(uint32_t a, uint32_t b) const {
    auto it = two_qubit_error.find(edge_key(make_edge(a, b)));
    if (it == two_qubit_error.end()) {
        throw ValidationError("device '" + name + "' has no edge " + std::to_string(a) + "-" +
                              std::to_string(b));
    }
    return it->second;
}

double DeviceModel::qubit_error(uint32_t q) const {
    if (q >= one_qubit_error.size()) {
        throw ValidationError("device '" + name + "' has no qubit " + std::to_string(q));
    }
    return one_qubit_error[q];
}

std::vector<std::vector<uint32_t>> DeviceModel::adjacency() const {
    std::vector<std::vector<uint32_t>> adj(num_qubits);
    for (const auto &e : edges) {
        adj[e.first].push_back(e.second);
        adj[e.second].push_back(e.first);
    }
    for (auto &nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
    return adj;
}

uint32_t DeviceModel::degree(uint32_t q) const {
    uint32_t d = 0;
    for (const auto &e : edges) d += (e.first == q || e.second == q) ? 1 : 0;
    return d;
}

void DeviceModel::validate() const {
    if (num_qubits == 0) throw ValidationError("num_qubits: must be positive");
    std::set<Edge> seen;
    for (const auto &e : edges) {
        if (e.first == e.second) {
            throw ValidationError("edges: self-loop at qubit " + std::to_string(e.first));
        }
        if (e.first >= num_qubits || e.second >= num_qubits) {
            throw ValidationError("edges: endpoint out of range in " + std::to_string(e.first) +
                                  "-" + std::to_string(e.second));
        }
        if (!seen.insert(make_edge(e.first, e.second)).second) {
            throw ValidationError("edges: duplicate edge " + std::to_string(e.first) + "-" +
                                  std::to_string(e.second));
        }
    }
    if (two_qubit_error.size() != edges.size()) {
        throw ValidationError("two_qubit_error: entry count does not match edges");
    }
    for (const auto &e : edges) {
        auto it = two_qubit_error.find(edge_key(make_edge(e.first, e.second)));
        if (it == two_qubit_error.end()) {
            throw ValidationError("two_qubit_error: missing entry for edge " +
                                  std::to_string(e.first) + "-" + std::to_string(e.second));
        }
        if (!(it->second >= 0.0 && it->second < 1.0) || !std::isfinite(it->second)) {
            throw ValidationError("two_qubit_error: probability out of [0,1) for edge " +
                                  std::to_string(e.first) + "-" + std::to_string(e.second));
        }
    }
    if (one_qubit_error.size() != num_qubits) {
        throw ValidationError("one_qubit_error: must have one entry per qubit");
    }
    for (uint32_t q = 0; q < num_qubits; ++q) {
        const double p = one_qubit_error[q];
        if (!(p >= 0.0 && p < 1.0) || !std::isfinite(p)) {
            throw ValidationError("one_qubit_error: probability out of [0,1) for qubit " +
                                  std::to_string(q));
        }
    }
}

bool DeviceModel::operator==(const DeviceModel &other) const {
    return name == other.name && num_qubits == other.num_qubits && edges == other.edges &&
           two_qubit_error == other.two_qubit_error && one_qubit_error == other.one_qubit_error;
}

namespace {

// Heavy-hex lattice: `rows` horizontal lines of `cols` qubits, joined by
// bridge qubits. Gap g places bridges at columns c with c % 4 == 2*(g % 2),
// which keeps every line qubit at degree <= 3 (at most one bridge touches
// it). If a gap has no matching column (cols < 3), a single bridge at
// column 0 keeps the lattice connected.
std::vector<Edge> heavy_hex_edges(uint32_t rows, uint32_t cols, uint32_t &num_qubits) {
    std::vector<Edge> edges;
    auto line_qubit = [cols](uint32_t r, uint32_t c) { return r * cols + c; };
    for (uint32_t r = 0; r < rows; ++r) {
        for (uint32_t c = 0; c + 1 < cols; ++c) {
            edges.push_back(make_edge(line_qubit(r, c), line_qubit(r, c + 1)));
        }
    }
    uint32_t next = rows * cols;
    for (uint32_t g = 0; g + 1 < rows; ++g) {
        std::vector<uint32_t> bridge_cols;
        for (uint32_t c = (g % 2) * 2; c < cols; c += 4) bridge_cols.push_back(c);
        if (bridge_cols.empty()) bridge_cols.push_back(0);
        for (uint32_t c : bridge_cols) {
            const uint32_t bridge = next++;
            edges.push_back(make_edge(line_qubit(g, c), bridge));
            edges.push_back(make_edge(bridge, line_qubit(g + 1, c)));
        }
    }
    num_qubits = next;
    return edges;
}

std::vector<Edge> grid_edges(uint32_t rows, uint32_t cols, uint32_t &num_qubits) {
    std::vector<Edge> edges;
    for (uint32_t r = 0; r < rows; ++r) {
        for (uint32_t c = 0; c < cols; ++c) {
            const uint32_t q = r * cols + c;
            if (c + 1 < cols) edges.push_back(make_edge(q, q + 1));
            if (r + 1 < rows) edges.push_back(make_edge(q, q + cols));
        }
    }
    num_qubits = rows * cols;
    return edges;
}

std::string default_name(const TopologySpec &t, uint64_t seed) {
    switch (t.kind) {
        case TopologyKind::HeavyHex:
            return "heavy-hex-" + std::to_string(t.rows) + "x" + std::to_string(t.cols) + "-s" +
                   std::to_string(seed);
        case TopologyKind::Ring:
            return "ring-" + std::to_string(t.n) + "-s" + std::to_string(seed);
        case TopologyKind::Grid:
            return "grid-" + std::to_string(t.rows) + "x" + std::to_string(t.cols) + "-s" +
                   std::to_string(seed);
        case TopologyKind::Line:
            return "line-" + std::to_string(t.n) + "-s" + std::to_string(seed);
    }
    return "device";
}

}  // namespace

std::vector<Edge> topology_edges(const TopologySpec &spec, uint32_t &num_qubits) {
    std::vector<Edge> edges;
    switch (spec.kind) {
        case TopologyKind::HeavyHex:
            if (spec.rows == 0 || spec.cols == 0) {
                throw ValidationError("topology: heavy-hex dimensions must be positive");
            }
            edges = heavy_hex_edges(spec.rows, spec.cols, num_qubits);
            break;
        case TopologyKind::Ring:
            if (spec.n < 3) throw ValidationError("topology: ring needs at least 3 qubits");
            num_qubits = spec.n;
            for (uint32_t q = 0; q < spec.n; ++q) edges.push_back(make_edge(q, (q + 1) % spec.n));
            break;
        case TopologyKind::Grid:
            if (spec.rows == 0 || spec.cols == 0) {
                throw ValidationError("topology: grid dimensions must be positive");
            }
            edges = grid_edges(spec.rows, spec.cols, num_qubits);
            break;
        case TopologyKind::Line:
            if (spec.n == 0) throw ValidationError("topology: line needs at least 1 qubit");
            num_qubits = spec.n;
            for (uint32_t q = 0; q + 1 < spec.n; ++q) edges.push_back(make_edge(q, q + 1));
            break;
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

DeviceModel generate_device(const DeviceGenSpec &spec) {
    if (!(spec.eps2_median > 0.0 && spec.eps2_median < 0.5)) {
        throw ValidationError("eps2_median: must lie in (0, 0.5)");
    }
    if (!(spec.eps1_median > 0.0 && spec.eps1_median < 0.5)) {
        throw ValidationError("eps1_median: must lie in (0, 0.5)");
    }
    if (spec.sigma2 < 0.0 || spec.sigma1 < 0.0) throw ValidationError("sigma: must be >= 0");
    if (!(spec.dead_fraction >= 0.0 && spec.dead_fraction <= 0.2)) {
        throw ValidationError("dead_fraction: must lie in [0, 0.2]");
    }

    DeviceModel model;
    model.edges = topology_edges(spec.topology, model.num_qubits);
    model.name = spec.name.empty() ? default_name(spec.topology, spec.seed) : spec.name;

    Rng rng(stable_hash({0x64657669ULL, spec.seed}));
    auto clamp_err = [](double e) { return std::min(0.999, std::max(1e-5, e)); };
    for (const auto &e : model.edges) {
        model.two_qubit_error[edge_key(e)] = clamp_err(rng.lognormal(spec.eps2_median, spec.sigma2));
    }
    model.one_qubit_error.resize(model.num_qubits);
    for (uint32_t q = 0; q < model.num_qubits; ++q) {
        model.one_qubit_error[q] = clamp_err(rng.lognormal(spec.eps1_median, spec.sigma1));
    }

    const size_t dead = static_cast<size_t>(spec.dead_fraction * static_cast<double>(model.edges.size()));
    if (dead > 0) {
        std::vector<size_t> order(model.edges.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        rng.shuffle(order);
        for (size_t i = 0; i < dead; ++i) {
            model.two_qubit_error[edge_key(model.edges[order[i]])] = 0.999;
        }
    }

    model.validate();
    return model;
}

DeviceModel load_device(const std::string &path) {
    DeviceModel model = device_from_json(read_json_file(path));
    model.validate();
    return model;
}

void save_device(const DeviceModel &model, const std::string &path) {
    write_json_file(path, device_to_json(model));
}

}  // namespace ffzne
