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
#include <optional>
#include <string>
#include <vector>

#include "ffzne/circuit.hpp"
#include "ffzne/device.hpp"

namespace ffzne {

// Injective assignment of virtual to physical qubits; mapping[v] is the
// physical qubit virtual qubit v lands on.
struct Layout {
    std::vector<uint32_t> mapping;

    uint32_t num_virtual() const { return static_cast<uint32_t>(mapping.size()); }
    uint32_t physical(uint32_t v) const { return mapping[v]; }

    // Injective and every interaction edge lands on a device edge.
    bool valid_for(const InteractionGraph &graph, const DeviceModel &device) const;

    bool operator==(const Layout &other) const = default;
    auto operator<=>(const Layout &other) const = default;
};

struct LayoutSet {
    std::vector<Layout> layouts;  // canonical (lexicographic) order, no duplicates
    std::string device_name;
    std::string circuit_hash;
    bool truncated = false;  // enumeration stopped at the cap
};

// All graph monomorphisms of the interaction graph into the device coupling
// graph, VF2-style backtracking with degree pruning. The interaction graph
// must be connected. An embedding-free instance yields an empty set; a cap
// of 0 is rejected.
LayoutSet enumerate_layouts(const InteractionGraph &graph, const DeviceModel &device,
                            std::optional<uint64_t> cap = std::nullopt);

// Number of shared physical qubits between the two images.
uint32_t overlap(const Layout &l1, const Layout &l2);

// Greedy pass in canonical order: keep a layout iff its overlap with every
// previously kept layout is < eta.
LayoutSet truncate_by_overlap(const LayoutSet &set, uint32_t eta);

}  // namespace ffzne
