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
#include <vector>

#include "ffzne/circuit.hpp"
#include "ffzne/device.hpp"
#include "ffzne/layout.hpp"

namespace ffzne {

// Pauli string stored as x/z bitmasks; bit q set in x (z) means an X (Z)
// factor on qubit q, both bits set means Y. The simulator works on up to 64
// qubits, which covers every benchmark family at desk scale.
struct PauliTerm {
    double coeff = 1.0;
    uint64_t x = 0;
    uint64_t z = 0;
};

struct PauliObservable {
    uint32_t num_qubits = 0;
    std::vector<PauliTerm> terms;

    bool z_diagonal() const;  // no X/Y factors anywhere
};

// Translationally averaged Pauli-Z strings:
//   w=1: (1/n)     sum_i Z_i
//   w=2: (1/(n-1)) sum_i Z_i Z_{i+1}
//   w=3: (1/(n-2)) sum_i Z_i Z_{i+1} Z_{i+2}
PauliObservable make_observable(uint32_t n, uint32_t weight);

// Depolarizing convention used everywhere: rho -> (1-p) rho + p I/d on the
// gate's support (d = 2 or 4). In the Heisenberg picture a Pauli that is
// non-identity anywhere on the support picks up the factor (1-p); sampling
// realizes the same channel by applying a uniformly random support Pauli
// (identity included) with probability p.
enum class NoiseKind { PerGate, Global };

struct NoiseModel {
    NoiseKind kind = NoiseKind::PerGate;
    double global_p = 0.0;  // Global mode only

    static NoiseModel per_gate() { return {NoiseKind::PerGate, 0.0}; }
    static NoiseModel global(double p) { return {NoiseKind::Global, p}; }
    static NoiseModel none() { return {NoiseKind::Global, 0.0}; }
};

struct ExpvalEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    uint64_t shots = 0;  // 0 means exact mode
    bool exact = true;
};

// Exact expectation value of a Pauli observable for a Clifford circuit on
// |0...0>, via backward Pauli conjugation with per-site depolarizing
// attenuation. Per-gate noise reads the device error of the physical gate
// each virtual gate lands on through the layout.
ExpvalEstimate exact_expval(const Circuit &circuit, const Layout &layout,
                            const DeviceModel &device, const NoiseModel &noise,
                            const PauliObservable &observable);

// Monte Carlo fault injection on a stabilizer tableau: per shot, faults are
// sampled at every noise site, all qubits are measured in Z and the
// observable is evaluated on the bitstring (Z-diagonal observables only).
// Deterministic per seed under any parallel schedule.
ExpvalEstimate sampled_expval(const Circuit &circuit, const Layout &layout,
                              const DeviceModel &device, const NoiseModel &noise,
                              const PauliObservable &observable, uint64_t shots, uint64_t seed);

// One bitstring per shot (bit q of the word is qubit q's outcome).
std::vector<uint64_t> sample_measurements(const Circuit &circuit, const Layout &layout,
                                          const DeviceModel &device, const NoiseModel &noise,
                                          uint64_t shots, uint64_t seed);

// (1-p) * ideal + p * noisy_floor; the analytic global-depolarizing response.
double global_depolarizing_expval(double ideal, double noisy_floor, double p);

// Noiseless exact expectation value (layout/device-independent).
double ideal_expval(const Circuit &circuit, const PauliObservable &observable);

// Identity layout helper for executing a circuit directly on physical ids.
Layout identity_layout(uint32_t n);

}  // namespace ffzne
