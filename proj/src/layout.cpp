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

#include "ffzne/layout.hpp"

#include <algorithm>
#include <bit>

#include "ffzne/errors.hpp"

namespace ffzne {

bool Layout::valid_for(const InteractionGraph &graph, const DeviceModel &device) const {
    if (mapping.size() != graph.num_vertices) return false;
    std::vector<bool> used(device.num_qubits, false);
    for (uint32_t p : mapping) {
        if (p >= device.num_qubits || used[p]) return false;
        used[p] = true;
    }
    for (const auto &e : graph.edges) {
        if (!device.has_edge(mapping[e.first], mapping[e.second])) return false;
    }
    return true;
}

namespace {

// Assignment order: start from a max-degree vertex, then repeatedly pick the
// unassigned vertex with the most already-assigned neighbors (most
// constrained first). Ties break on degree, then index, so the order is
// deterministic.
std::vector<uint32_t> assignment_order(const InteractionGraph &graph) {
    const uint32_t n = graph.num_vertices;
    auto adj = graph.adjacency();
    std::vector<uint32_t> order;
    std::vector<bool> placed(n, false);
    for (uint32_t step = 0; step < n; ++step) {
        uint32_t best = n;
        uint32_t best_placed_nbrs = 0;
        for (uint32_t v = 0; v < n; ++v) {
            if (placed[v]) continue;
            uint32_t placed_nbrs = 0;
            for (uint32_t w : adj[v]) placed_nbrs += placed[w] ? 1 : 0;
            if (step > 0 && placed_nbrs == 0) continue;  // connected graph: stay attached
            if (best == n || placed_nbrs > best_placed_nbrs ||
                (placed_nbrs == best_placed_nbrs && adj[v].size() > adj[best].size())) {
                best = v;
                best_placed_nbrs = placed_nbrs;
            }
        }
        order.push_back(best);
        placed[best] = true;
    }
    return order;
}

struct Vf2State {
    const InteractionGraph &graph;
    const DeviceModel &device;
    std::vector<std::vector<uint32_t>> graph_adj;
    std::vector<std::vector<uint32_t>> device_adj;
    std::vector<uint32_t> device_degree;
    std::vector<uint32_t> order;
    std::vector<uint32_t> mapping;       // virtual -> physical or UINT32_MAX
    std::vector<bool> used;              // physical occupancy
    std::vector<Layout> results;
    std::optional<uint64_t> cap;
    bool truncated = false;

    bool feasible(uint32_t v, uint32_t p) const {
        if (used[p]) return false;
        if (device_degree[p] < graph_adj[v].size()) return false;
        for (uint32_t w : graph_adj[v]) {
            if (mapping[w] == UINT32_MAX) continue;
            if (!device.has_edge(p, mapping[w])) return false;
        }
        return true;
    }

    // Returns false once the cap is hit so the search unwinds immediately.
    bool extend(size_t depth) {
        if (depth == order.size()) {
            results.push_back(Layout{mapping});
            if (cap && results.size() >= *cap) {
                truncated = true;
                return false;
            }
            return true;
        }
        const uint32_t v = order[depth];
        // Candidates: neighbors of an already-mapped neighbor when one
        // exists (all but the root), otherwise every physical qubit.
        uint32_t anchor = UINT32_MAX;
        for (uint32_t w : graph_adj[v]) {
            if (mapping[w] != UINT32_MAX) {
                anchor = mapping[w];
                break;
            }
        }
        const std::vector<uint32_t> *candidates;
        std::vector<uint32_t> all;
        if (anchor != UINT32_MAX) {
            candidates = &device_adj[anchor];
        } else {
            all.resize(device.num_qubits);
            for (uint32_t p = 0; p < device.num_qubits; ++p) all[p] = p;
            candidates = &all;
        }
        for (uint32_t p : *candidates) {
            if (!feasible(v, p)) continue;
            mapping[v] = p;
            used[p] = true;
            const bool keep_going = extend(depth + 1);
            mapping[v] = UINT32_MAX;
            used[p] = false;
            if (!keep_going) return false;
        }
        return true;
    }
};

}  // namespace

LayoutSet enumerate_layouts(const InteractionGraph &graph, const DeviceModel &device,
                            std::optional<uint64_t> cap) {
    if (cap && *cap == 0) throw ValidationError("enumerate_layouts: cap must be positive");
    if (graph.num_vertices == 0) {
        throw ValidationError("enumerate_layouts: interaction graph has no vertices");
    }
    if (!graph.connected()) {
        throw ValidationError("enumerate_layouts: interaction graph must be connected");
    }

    LayoutSet set;
    set.device_name = device.name;
    if (graph.num_vertices > device.num_qubits) return set;

    Vf2State state{graph,
                   device,
                   graph.adjacency(),
                   device.adjacency(),
                   {},
                   assignment_order(graph),
                   std::vector<uint32_t>(graph.num_vertices, UINT32_MAX),
                   std::vector<bool>(device.num_qubits, false),
                   {},
                   cap,
                   false};
    state.device_degree.resize(device.num_qubits);
    for (uint32_t p = 0; p < device.num_qubits; ++p) {
        state.device_degree[p] = static_cast<uint32_t>(state.device_adj[p].size());
    }
    state.extend(0);

    std::sort(state.results.begin(), state.results.end());
    set.layouts = std::move(state.results);
    set.truncated = state.truncated;
    return set;
}

namespace {

// Physical-qubit image as a bitset, for O(words) pairwise intersection.
using ImageMask = std::vector<uint64_t>;

ImageMask image_mask(const Layout &layout) {
    uint32_t max_q = 0;
    for (uint32_t p : layout.mapping) max_q = std::max(max_q, p);
    ImageMask mask(max_q / 64 + 1, 0);
    for (uint32_t p : layout.mapping) mask[p / 64] |= 1ULL << (p % 64);
    return mask;
}

uint32_t mask_overlap(const ImageMask &a, const ImageMask &b) {
    uint32_t count = 0;
    const size_t words = std::min(a.size(), b.size());
    for (size_t w = 0; w < words; ++w) count += std::popcount(a[w] & b[w]);
    return count;
}

}  // namespace

uint32_t overlap(const Layout &l1, const Layout &l2) {
    return mask_overlap(image_mask(l1), image_mask(l2));
}

LayoutSet truncate_by_overlap(const LayoutSet &set, uint32_t eta) {
    if (eta < 1) throw ValidationError("truncate_by_overlap: eta must be >= 1");
    LayoutSet out;
    out.device_name = set.device_name;
    out.circuit_hash = set.circuit_hash;
    out.truncated = set.truncated;
    std::vector<ImageMask> kept_masks;
    for (const auto &candidate : set.layouts) {
        const ImageMask mask = image_mask(candidate);
        bool novel = true;
        for (const auto &kept : kept_masks) {
            if (mask_overlap(mask, kept) >= eta) {
                novel = false;
                break;
            }
        }
        if (novel) {
            out.layouts.push_back(candidate);
            kept_masks.push_back(mask);
        }
    }
    return out;
}

}  // namespace ffzne
