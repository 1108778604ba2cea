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

#include "ffzne/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <set>

#include "ffzne/device.hpp"
#include "ffzne/errors.hpp"
#include "ffzne/rng.hpp"

namespace ffzne {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kCliffordAngleTol = 1e-9;

// Nearest integer multiple of pi/2, ties toward the smaller multiple.
int64_t snap_quarter(double theta) {
    return static_cast<int64_t>(std::ceil(theta / kHalfPi - 0.5));
}

int quarter_mod4(int64_t k) { return static_cast<int>(((k % 4) + 4) % 4); }
}  // namespace

bool is_rotation(GateKind kind) {
    return kind == GateKind::RZ || kind == GateKind::RY || kind == GateKind::RX;
}

uint32_t gate_arity(GateKind kind) {
    if (kind == GateKind::CX) return 2;
    if (kind == GateKind::Barrier) return 0;
    return 1;
}

std::string gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "h";
        case GateKind::S: return "s";
        case GateKind::Sdg: return "sdg";
        case GateKind::X: return "x";
        case GateKind::Y: return "y";
        case GateKind::Z: return "z";
        case GateKind::CX: return "cx";
        case GateKind::RZ: return "rz";
        case GateKind::RY: return "ry";
        case GateKind::RX: return "rx";
        case GateKind::Barrier: return "barrier";
    }
    return "?";
}

GateKind gate_kind_from_name(const std::string &name) {
    if (name == "h") return GateKind::H;
    if (name == "s") return GateKind::S;
    if (name == "sdg") return GateKind::Sdg;
    if (name == "x") return GateKind::X;
    if (name == "y") return GateKind::Y;
    if (name == "z") return GateKind::Z;
    if (name == "cx") return GateKind::CX;
    if (name == "rz") return GateKind::RZ;
    if (name == "ry") return GateKind::RY;
    if (name == "rx") return GateKind::RX;
    if (name == "barrier") return GateKind::Barrier;
    throw ValidationError("gates.kind: unknown gate '" + name + "'");
}

Gate Gate::inverse() const {
    Gate inv = *this;
    switch (kind) {
        case GateKind::S: inv.kind = GateKind::Sdg; break;
        case GateKind::Sdg: inv.kind = GateKind::S; break;
        case GateKind::RZ:
        case GateKind::RY:
        case GateKind::RX: inv.theta = -theta; break;
        default: break;  // self-inverse
    }
    return inv;
}

bool Circuit::is_clifford() const {
    for (const auto &g : gates) {
        if (!is_rotation(g.kind)) continue;
        const double rem = std::remainder(g.theta, kHalfPi);
        if (std::abs(rem) > kCliffordAngleTol) return false;
    }
    return true;
}

uint32_t Circuit::two_qubit_count() const {
    uint32_t count = 0;
    for (const auto &g : gates) count += (g.kind == GateKind::CX) ? 1 : 0;
    return count;
}

uint32_t Circuit::two_qubit_depth() const {
    std::vector<uint32_t> depth(num_qubits, 0);
    uint32_t max_depth = 0;
    for (const auto &g : gates) {
        if (g.kind == GateKind::Barrier) {  // full-width synchronization
            std::fill(depth.begin(), depth.end(), max_depth);
            continue;
        }
        if (g.kind != GateKind::CX) continue;
        const uint32_t d = std::max(depth[g.qubits[0]], depth[g.qubits[1]]) + 1;
        depth[g.qubits[0]] = depth[g.qubits[1]] = d;
        max_depth = std::max(max_depth, d);
    }
    return max_depth;
}

void Circuit::validate() const {
    if (num_qubits == 0) throw ValidationError("num_qubits: must be positive");
    for (const auto &g : gates) {
        const uint32_t arity = gate_arity(g.kind);
        for (uint32_t i = 0; i < arity; ++i) {
            if (g.qubits[i] >= num_qubits) {
                throw ValidationError("gates: qubit index " + std::to_string(g.qubits[i]) +
                                      " out of range");
            }
        }
        if (g.kind == GateKind::CX && g.qubits[0] == g.qubits[1]) {
            throw ValidationError("gates: cx requires two distinct qubits");
        }
        if (is_rotation(g.kind) && !std::isfinite(g.theta)) {
            throw ValidationError("gates: rotation angle must be finite");
        }
    }
}

std::string circuit_hash(const Circuit &circuit) {
    uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the canonical gate stream
    auto mix = [&h](uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    mix(circuit.num_qubits);
    for (const auto &g : circuit.gates) {
        mix(static_cast<uint64_t>(g.kind));
        mix(g.qubits[0]);
        mix(g.qubits[1]);
        uint64_t bits;
        static_assert(sizeof(bits) == sizeof(g.theta));
        std::memcpy(&bits, &g.theta, sizeof(bits));
        mix(bits);
        mix(g.frame ? 1 : 0);
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

bool InteractionGraph::connected() const {
    if (num_vertices == 0) return false;
    auto adj = adjacency();
    std::vector<bool> seen(num_vertices, false);
    std::vector<uint32_t> stack{0};
    seen[0] = true;
    uint32_t visited = 1;
    while (!stack.empty()) {
        const uint32_t v = stack.back();
        stack.pop_back();
        for (uint32_t w : adj[v]) {
            if (!seen[w]) {
                seen[w] = true;
                ++visited;
                stack.push_back(w);
            }
        }
    }
    return visited == num_vertices;
}

std::vector<std::vector<uint32_t>> InteractionGraph::adjacency() const {
    std::vector<std::vector<uint32_t>> adj(num_vertices);
    for (const auto &e : edges) {
        adj[e.first].push_back(e.second);
        adj[e.second].push_back(e.first);
    }
    for (auto &nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
    return adj;
}

Circuit gen_efficient_su2(uint32_t n, uint32_t reps, uint64_t seed, double angle_scale) {
    if (n < 2) throw ValidationError("gen_efficient_su2: need at least 2 qubits");
    if (reps < 1) throw ValidationError("gen_efficient_su2: need at least 1 repetition");
    if (!(angle_scale >= 0.0) || !std::isfinite(angle_scale)) {
        throw ValidationError("gen_efficient_su2: angle_scale must be finite and >= 0");
    }
    Rng rng(stable_hash({0x73753265ULL, seed, n, reps}));
    auto angle = [&rng, angle_scale] {
        return angle_scale * (rng.uniform01() * 2.0 - 1.0) * std::numbers::pi;
    };

    Circuit c;
    c.num_qubits = n;
    auto rotation_layer = [&] {
        for (uint32_t q = 0; q < n; ++q) c.gates.push_back(Gate::rot(GateKind::RY, q, angle()));
        for (uint32_t q = 0; q < n; ++q) c.gates.push_back(Gate::rot(GateKind::RZ, q, angle()));
    };
    for (uint32_t r = 0; r < reps; ++r) {
        rotation_layer();
        for (uint32_t q = 0; q + 1 < n; ++q) c.gates.push_back(Gate::cx(q, q + 1));
        // Keeps the entangling chains of successive repetitions from
        // overlapping, so the two-qubit depth is reps * (n - 1).
        c.gates.push_back(Gate::barrier());
    }
    rotation_layer();
    return c;
}

Circuit gen_hamiltonian_sim(uint32_t n, uint32_t trotter_steps, double theta_zz, double theta_x) {
    if (n < 2) throw ValidationError("gen_hamiltonian_sim: need at least 2 qubits");
    if (trotter_steps < 1) throw ValidationError("gen_hamiltonian_sim: need at least 1 step");
    Circuit c;
    c.num_qubits = n;
    auto rzz_block = [&](uint32_t a, uint32_t b) {
        c.gates.push_back(Gate::cx(a, b));
        c.gates.push_back(Gate::rot(GateKind::RZ, b, theta_zz));
        c.gates.push_back(Gate::cx(a, b));
    };
    for (uint32_t step = 0; step < trotter_steps; ++step) {
        for (uint32_t q = 0; q + 1 < n; q += 2) rzz_block(q, q + 1);
        for (uint32_t q = 1; q + 1 < n; q += 2) rzz_block(q, q + 1);
        for (uint32_t q = 0; q < n; ++q) c.gates.push_back(Gate::rot(GateKind::RX, q, theta_x));
    }
    return c;
}

Circuit gen_mirrored_brickwork(uint32_t n, uint32_t depth, uint64_t seed) {
    if (n < 2) throw ValidationError("gen_mirrored_brickwork: need at least 2 qubits");
    if (depth % 2 != 0) throw ValidationError("gen_mirrored_brickwork: depth must be even");
    Rng rng(stable_hash({0x627277ULL, seed, n, depth}));
    static const GateKind kOneQ[] = {GateKind::H,   GateKind::S, GateKind::Sdg,
                                     GateKind::X,   GateKind::Y, GateKind::Z};

    Circuit c;
    c.num_qubits = n;
    std::vector<Gate> forward;
    for (uint32_t layer = 0; layer < depth / 2; ++layer) {
        const uint32_t start = layer % 2;  // brickwork alternation
        for (uint32_t q = start; q + 1 < n; q += 2) {
            forward.push_back(Gate::one_q(kOneQ[rng.below(6)], q));
            forward.push_back(Gate::one_q(kOneQ[rng.below(6)], q + 1));
            forward.push_back(Gate::cx(q, q + 1));
            forward.push_back(Gate::one_q(kOneQ[rng.below(6)], q));
            forward.push_back(Gate::one_q(kOneQ[rng.below(6)], q + 1));
        }
    }
    c.gates = forward;
    for (auto it = forward.rbegin(); it != forward.rend(); ++it) c.gates.push_back(it->inverse());
    return c;
}

Circuit cliffordize(const Circuit &circuit) {
    Circuit out;
    out.num_qubits = circuit.num_qubits;
    out.gates.reserve(circuit.gates.size());
    auto push_rz_quarter = [&out](uint32_t q, int k) {
        switch (k) {
            case 0: break;
            case 1: out.gates.push_back(Gate::one_q(GateKind::S, q)); break;
            case 2: out.gates.push_back(Gate::one_q(GateKind::Z, q)); break;
            case 3: out.gates.push_back(Gate::one_q(GateKind::Sdg, q)); break;
        }
    };
    for (const auto &g : circuit.gates) {
        if (!is_rotation(g.kind)) {
            out.gates.push_back(g);
            continue;
        }
        const int k = quarter_mod4(snap_quarter(g.theta));
        const uint32_t q = g.qubits[0];
        if (k == 0) continue;  // identity, dropped
        switch (g.kind) {
            case GateKind::RZ:
                push_rz_quarter(q, k);
                break;
            case GateKind::RX:
                out.gates.push_back(Gate::one_q(GateKind::H, q));
                push_rz_quarter(q, k);
                out.gates.push_back(Gate::one_q(GateKind::H, q));
                break;
            case GateKind::RY:
                out.gates.push_back(Gate::one_q(GateKind::Sdg, q));
                out.gates.push_back(Gate::one_q(GateKind::H, q));
                push_rz_quarter(q, k);
                out.gates.push_back(Gate::one_q(GateKind::H, q));
                out.gates.push_back(Gate::one_q(GateKind::S, q));
                break;
            default: break;
        }
    }
    return out;
}

Circuit fold(const Circuit &circuit, double lambda) {
    if (lambda < 1.0) throw ValidationError("fold: lambda must be >= 1");
    size_t foldable = 0;
    for (const auto &g : circuit.gates) foldable += (g.kind != GateKind::Barrier) ? 1 : 0;

    const double half = (lambda - 1.0) / 2.0;
    const uint64_t base_pairs = static_cast<uint64_t>(half + 1e-12);
    const double frac = half - static_cast<double>(base_pairs);
    // Small epsilon so that e.g. lambda = 1.2 on 10 gates yields exactly one
    // extra pair despite binary representation error.
    const size_t extra =
        static_cast<size_t>(std::max(0.0, frac) * static_cast<double>(foldable) + 1e-9);

    Circuit out;
    out.num_qubits = circuit.num_qubits;
    size_t rank = 0;
    for (const auto &g : circuit.gates) {
        out.gates.push_back(g);
        if (g.kind == GateKind::Barrier) continue;
        const uint64_t pairs = base_pairs + (rank < extra ? 1 : 0);
        for (uint64_t p = 0; p < pairs; ++p) {
            out.gates.push_back(g.inverse());
            out.gates.push_back(g);
        }
        ++rank;
    }
    return out;
}

namespace {
// Two-qubit Pauli as (x, z) bit pairs per qubit; conjugation by CX needs no
// sign tracking because frame gates are only defined up to global phase.
struct TwoQubitPauli {
    bool xc, zc, xt, zt;
};

void emit_pauli(std::vector<Gate> &gates, uint32_t q, bool x, bool z) {
    if (x && z) gates.push_back({GateKind::Y, {q, 0}, 0.0, true});
    else if (x) gates.push_back({GateKind::X, {q, 0}, 0.0, true});
    else if (z) gates.push_back({GateKind::Z, {q, 0}, 0.0, true});
}
}  // namespace

Circuit pauli_twirl(const Circuit &circuit, uint64_t seed) {
    if (!circuit.is_clifford()) {
        throw ValidationError("pauli_twirl: circuit must be Clifford");
    }
    Rng rng(stable_hash({0x7477726cULL, seed}));
    Circuit out;
    out.num_qubits = circuit.num_qubits;
    for (const auto &g : circuit.gates) {
        if (g.kind != GateKind::CX) {
            out.gates.push_back(g);
            continue;
        }
        const uint64_t draw = rng.below(16);
        TwoQubitPauli p{(draw & 1) != 0, (draw & 2) != 0, (draw & 4) != 0, (draw & 8) != 0};
        // Conjugate through CX: x_t ^= x_c, z_c ^= z_t.
        TwoQubitPauli q{p.xc, static_cast<bool>(p.zc ^ p.zt), static_cast<bool>(p.xt ^ p.xc), p.zt};
        emit_pauli(out.gates, g.qubits[0], p.xc, p.zc);
        emit_pauli(out.gates, g.qubits[1], p.xt, p.zt);
        out.gates.push_back(g);
        emit_pauli(out.gates, g.qubits[0], q.xc, q.zc);
        emit_pauli(out.gates, g.qubits[1], q.xt, q.zt);
    }
    return out;
}

InteractionGraph interaction_graph(const Circuit &circuit) {
    std::set<std::pair<uint32_t, uint32_t>> edge_set;
    for (const auto &g : circuit.gates) {
        if (g.kind == GateKind::CX) {
            edge_set.insert(make_edge(g.qubits[0], g.qubits[1]));
        }
    }
    InteractionGraph graph;
    graph.num_vertices = circuit.num_qubits;
    graph.edges.assign(edge_set.begin(), edge_set.end());
    return graph;
}

}  // namespace ffzne
