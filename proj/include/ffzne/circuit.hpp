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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace ffzne {

enum class GateKind : uint8_t { H, S, Sdg, X, Y, Z, CX, RZ, RY, RX, Barrier };

bool is_rotation(GateKind kind);
uint32_t gate_arity(GateKind kind);  // Barrier reports 0 (global)
std::string gate_name(GateKind kind);
GateKind gate_kind_from_name(const std::string &name);

struct Gate {
    GateKind kind = GateKind::H;
    std::array<uint32_t, 2> qubits{0, 0};
    double theta = 0.0;  // rotations only
    bool frame = false;  // twirling frame gate: carries no noise site

    static Gate one_q(GateKind kind, uint32_t q) { return {kind, {q, 0}, 0.0, false}; }
    static Gate rot(GateKind kind, uint32_t q, double theta) { return {kind, {q, 0}, theta, false}; }
    static Gate cx(uint32_t control, uint32_t target) {
        return {GateKind::CX, {control, target}, 0.0, false};
    }
    static Gate barrier() { return {GateKind::Barrier, {0, 0}, 0.0, false}; }

    // Per-gate inverse (H, Paulis and CX are self-inverse; S <-> Sdg;
    // rotations negate theta).
    Gate inverse() const;

    bool operator==(const Gate &other) const = default;
};

// Ordered gate program over virtual qubits. Immutable value type; all
// passes below are pure functions.
struct Circuit {
    uint32_t num_qubits = 0;
    std::vector<Gate> gates;

    // True iff every rotation angle is a multiple of pi/2 (within 1e-9).
    bool is_clifford() const;

    uint32_t two_qubit_count() const;
    uint32_t two_qubit_depth() const;

    void validate() const;  // qubit indices in range, CX distinct, theta finite

    bool operator==(const Circuit &other) const = default;
};

// Stable 64-bit content hash (hex string) used to tie layout files to the
// circuit they were enumerated for.
std::string circuit_hash(const Circuit &circuit);

struct InteractionGraph {
    uint32_t num_vertices = 0;
    std::vector<std::pair<uint32_t, uint32_t>> edges;  // canonical, sorted, deduplicated

    bool connected() const;
    std::vector<std::vector<uint32_t>> adjacency() const;
};

// --- Benchmark generators ---

// Alternating RY/RZ rotation layers with a linear CX entangling chain per
// repetition, plus a final rotation layer. Angles come from a seeded stream,
// uniform over angle_scale * [-pi, pi); small scales model the near-zero
// parameter initializations whose Cliffordized form is trivial in the Z
// basis (ideal weight-k Z expectation exactly 1).
Circuit gen_efficient_su2(uint32_t n, uint32_t reps, uint64_t seed = 0, double angle_scale = 1.0);

// First-order Trotterized 1-D transverse-field Ising evolution: per step,
// even-bond then odd-bond RZZ blocks (CX . RZ . CX), then an RX layer.
// Every coupling bond carries two CX gates per step, so the circuit is
// gate-dense relative to its interaction graph.
Circuit gen_hamiltonian_sim(uint32_t n, uint32_t trotter_steps, double theta_zz = 1.5,
                            double theta_x = 1.5);

// depth/2 brickwork layers of seeded random two-qubit Clifford blocks
// followed by the exact inverse sequence; the ideal state is |0...0>.
Circuit gen_mirrored_brickwork(uint32_t n, uint32_t depth, uint64_t seed = 0);

// --- Passes ---

// Snap every rotation angle to the nearest multiple of pi/2 (ties toward
// the smaller multiple) and rewrite the result over {H, S, Sdg, X, Y, Z}.
// Two-qubit gate placement is untouched. Idempotent.
Circuit cliffordize(const Circuit &circuit);

// Noise-scaling by unitary identity insertion: for odd integer lambda=2k+1
// every gate G becomes G (G^dag G)^k; fractional parts add one extra pair to
// a front prefix of the gate list. Barriers are not folded.
Circuit fold(const Circuit &circuit, double lambda);

// Sandwich every CX between a random two-qubit Pauli and its CX-conjugate,
// leaving the net unitary unchanged. Inserted gates are marked as frame
// gates and carry no noise site. Requires a Clifford circuit.
Circuit pauli_twirl(const Circuit &circuit, uint64_t seed);

InteractionGraph interaction_graph(const Circuit &circuit);

}  // namespace ffzne
