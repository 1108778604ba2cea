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
#include <vector>

#include "ffzne/circuit.hpp"
#include "ffzne/device.hpp"
#include "ffzne/layout.hpp"

namespace ffzne {

enum class ScoreMethod { FidelityProduct, Qic };

std::string score_method_name(ScoreMethod method);
ScoreMethod score_method_from_name(const std::string &name);

struct ScoredLayout {
    Layout layout;
    double score = 0.0;
};

// Entries sorted ascending by score, ties broken by canonical layout order.
// mean/stddev are the population statistics of the scores the table was
// built from (recomputed after the score-1 exclusion during filtering).
struct ScoreTable {
    std::vector<ScoredLayout> entries;
    ScoreMethod method = ScoreMethod::FidelityProduct;
    double mean = 0.0;
    double stddev = 0.0;
};

struct QicOptions {
    uint32_t shots = 4096;
    uint64_t seed = 0;
};

// 1 - prod over placed gates of (1 - eps_gate), every occurrence counted.
// Saturates toward 1 as the gate count grows, which is exactly the failure
// mode QIC scoring exists to avoid.
double score_fidelity_product(const Circuit &circuit, const Layout &layout,
                              const DeviceModel &device);

// Hadamard-enclosed mirrored CX network over the circuit's interaction
// graph; a non-trivial identity circuit whose depth depends only on the
// edge count, not on the target circuit's repetitions.
Circuit build_qic(const Circuit &circuit, const Layout &layout);

// 1 - P_hat(all zeros) with P_hat estimated by noisy stabilizer sampling of
// the QIC on the layout's physical gates. Deterministic per seed; the
// per-layout stream is derived from hash(seed, layout).
double score_qic(const Circuit &circuit, const Layout &layout, const DeviceModel &device,
                 uint32_t shots, uint64_t seed);

ScoreTable score_layouts(const Circuit &circuit, const LayoutSet &layouts,
                         const DeviceModel &device, ScoreMethod method,
                         const QicOptions &qic = {});

// Drops the score-1 sentinels (>= 0.999), then recomputes mean/stddev over
// the remainder and drops entries above mean + 3 stddev. Fewer than 3
// survivors is an error.
ScoreTable filter_scores(const ScoreTable &table);

}  // namespace ffzne
