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

#include "ffzne/scoring.hpp"

#include <algorithm>
#include <cmath>

#include "ffzne/errors.hpp"
#include "ffzne/rng.hpp"
#include "ffzne/sim.hpp"

namespace ffzne {

namespace {
constexpr double kScoreOneSentinel = 0.999;

uint64_t layout_stream(uint64_t seed, const Layout &layout) {
    uint64_t h = stable_hash({0x716963ULL, seed});
    for (uint32_t p : layout.mapping) h = stable_hash({h, p});
    return h;
}

void sort_entries(std::vector<ScoredLayout> &entries) {
    std::sort(entries.begin(), entries.end(), [](const ScoredLayout &a, const ScoredLayout &b) {
        if (a.score != b.score) return a.score < b.score;
        return a.layout < b.layout;
    });
}

void compute_stats(ScoreTable &table) {
    const double m = static_cast<double>(table.entries.size());
    double mean = 0.0;
    for (const auto &e : table.entries) mean += e.score;
    mean /= m;
    double var = 0.0;
    for (const auto &e : table.entries) var += (e.score - mean) * (e.score - mean);
    var /= m;
    table.mean = mean;
    table.stddev = std::sqrt(var);
}
}  // namespace

std::string score_method_name(ScoreMethod method) {
    return method == ScoreMethod::FidelityProduct ? "fp" : "qic";
}

ScoreMethod score_method_from_name(const std::string &name) {
    if (name == "fp" || name == "fidelity-product") return ScoreMethod::FidelityProduct;
    if (name == "qic") return ScoreMethod::Qic;
    throw ValidationError("unknown score method '" + name + "'");
}

double score_fidelity_product(const Circuit &circuit, const Layout &layout,
                              const DeviceModel &device) {
    if (layout.num_virtual() != circuit.num_qubits) {
        throw ValidationError("layout size does not match circuit qubit count");
    }
    double fidelity = 1.0;
    for (const auto &g : circuit.gates) {
        if (g.kind == GateKind::Barrier || g.frame) continue;
        if (g.kind == GateKind::CX) {
            fidelity *= 1.0 - device.edge_error(layout.physical(g.qubits[0]),
                                                layout.physical(g.qubits[1]));
        } else {
            fidelity *= 1.0 - device.qubit_error(layout.physical(g.qubits[0]));
        }
    }
    return 1.0 - fidelity;
}

Circuit build_qic(const Circuit &circuit, const Layout &layout) {
    if (layout.num_virtual() != circuit.num_qubits) {
        throw ValidationError("layout size does not match circuit qubit count");
    }
    const InteractionGraph graph = interaction_graph(circuit);
    Circuit qic;
    qic.num_qubits = circuit.num_qubits;
    for (uint32_t q = 0; q < qic.num_qubits; ++q) qic.gates.push_back(Gate::one_q(GateKind::H, q));
    for (const auto &e : graph.edges) qic.gates.push_back(Gate::cx(e.first, e.second));
    for (auto it = graph.edges.rbegin(); it != graph.edges.rend(); ++it) {
        qic.gates.push_back(Gate::cx(it->first, it->second));
    }
    for (uint32_t q = 0; q < qic.num_qubits; ++q) qic.gates.push_back(Gate::one_q(GateKind::H, q));
    return qic;
}

double score_qic(const Circuit &circuit, const Layout &layout, const DeviceModel &device,
                 uint32_t shots, uint64_t seed) {
    if (shots < 1) throw ValidationError("score_qic: shots must be >= 1");
    const Circuit qic = build_qic(circuit, layout);
    const auto outcomes = sample_measurements(qic, layout, device, NoiseModel::per_gate(), shots,
                                              layout_stream(seed, layout));
    uint64_t zeros = 0;
    for (uint64_t bits : outcomes) zeros += (bits == 0) ? 1 : 0;
    return 1.0 - static_cast<double>(zeros) / static_cast<double>(shots);
}

ScoreTable score_layouts(const Circuit &circuit, const LayoutSet &layouts,
                         const DeviceModel &device, ScoreMethod method, const QicOptions &qic) {
    if (layouts.layouts.empty()) throw ValidationError("score_layouts: no layouts to score");
    ScoreTable table;
    table.method = method;
    table.entries.reserve(layouts.layouts.size());
    for (const auto &layout : layouts.layouts) {
        const double score = method == ScoreMethod::FidelityProduct
                                 ? score_fidelity_product(circuit, layout, device)
                                 : score_qic(circuit, layout, device, qic.shots, qic.seed);
        table.entries.push_back({layout, score});
    }
    sort_entries(table.entries);
    compute_stats(table);
    return table;
}

ScoreTable filter_scores(const ScoreTable &table) {
    if (table.entries.empty()) throw PipelineError("filter_scores: empty score table");
    ScoreTable out;
    out.method = table.method;
    for (const auto &e : table.entries) {
        if (e.score < kScoreOneSentinel) out.entries.push_back(e);
    }
    if (out.entries.size() >= 3) {
        compute_stats(out);
        const double cutoff = out.mean + 3.0 * out.stddev;
        std::erase_if(out.entries, [cutoff](const ScoredLayout &e) { return e.score > cutoff; });
    }
    if (out.entries.size() < 3) {
        throw PipelineError("insufficient layouts for extrapolation");
    }
    sort_entries(out.entries);
    return out;
}

}  // namespace ffzne
