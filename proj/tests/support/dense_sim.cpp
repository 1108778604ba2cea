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

#include "support/dense_sim.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace ffzne::testing {

namespace {

using Mat2 = std::array<Cx, 4>;  // row-major 2x2

Mat2 gate_matrix_1q(const Gate &g) {
    const Cx i(0.0, 1.0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    switch (g.kind) {
        case GateKind::H: return {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
        case GateKind::S: return {1, 0, 0, i};
        case GateKind::Sdg: return {1, 0, 0, -i};
        case GateKind::X: return {0, 1, 1, 0};
        case GateKind::Y: return {0, -i, i, 0};
        case GateKind::Z: return {1, 0, 0, -1};
        case GateKind::RZ: {
            const double t = g.theta / 2.0;
            return {std::exp(-i * t), 0, 0, std::exp(i * t)};
        }
        case GateKind::RX: {
            const double t = g.theta / 2.0;
            return {std::cos(t), -i * std::sin(t), -i * std::sin(t), std::cos(t)};
        }
        case GateKind::RY: {
            const double t = g.theta / 2.0;
            return {std::cos(t), -std::sin(t), std::sin(t), std::cos(t)};
        }
        default: throw std::logic_error("not a one-qubit gate");
    }
}

void apply_1q(std::vector<Cx> &psi, uint32_t q, const Mat2 &u) {
    const uint64_t bit = 1ULL << q;
    for (uint64_t idx = 0; idx < psi.size(); ++idx) {
        if (idx & bit) continue;
        const Cx a = psi[idx];
        const Cx b = psi[idx | bit];
        psi[idx] = u[0] * a + u[1] * b;
        psi[idx | bit] = u[2] * a + u[3] * b;
    }
}

void apply_cx(std::vector<Cx> &psi, uint32_t control, uint32_t target) {
    const uint64_t cbit = 1ULL << control;
    const uint64_t tbit = 1ULL << target;
    for (uint64_t idx = 0; idx < psi.size(); ++idx) {
        if ((idx & cbit) && !(idx & tbit)) {
            std::swap(psi[idx], psi[idx | tbit]);
        }
    }
}

void apply_gate_to_vector(std::vector<Cx> &psi, const Gate &g) {
    if (g.kind == GateKind::Barrier) return;
    if (g.kind == GateKind::CX) {
        apply_cx(psi, g.qubits[0], g.qubits[1]);
    } else {
        apply_1q(psi, g.qubits[0], gate_matrix_1q(g));
    }
}

}  // namespace

std::vector<Cx> run_statevector(const Circuit &circuit) {
    if (circuit.num_qubits > 24) throw std::logic_error("dense statevector limited to 24 qubits");
    std::vector<Cx> psi(1ULL << circuit.num_qubits, Cx(0.0));
    psi[0] = 1.0;
    for (const auto &g : circuit.gates) apply_gate_to_vector(psi, g);
    return psi;
}

std::vector<double> statevector_probabilities(const Circuit &circuit) {
    const auto psi = run_statevector(circuit);
    std::vector<double> probs(psi.size());
    for (size_t i = 0; i < psi.size(); ++i) probs[i] = std::norm(psi[i]);
    return probs;
}

DenseDensity::DenseDensity(uint32_t n) : n_(n), dim_(1ULL << n), rho_(dim_ * dim_, Cx(0.0)) {
    if (n > 12) throw std::logic_error("dense density matrix limited to 12 qubits");
    rho_[0] = 1.0;  // |0...0><0...0|
}

void DenseDensity::apply_gate(const Gate &gate) {
    if (gate.kind == GateKind::Barrier) return;
    // rho -> U rho U^dag: U on block rows, then U^dag on block columns.
    if (gate.kind == GateKind::CX) {
        const uint64_t cbit = 1ULL << gate.qubits[0];
        const uint64_t tbit = 1ULL << gate.qubits[1];
        for (uint64_t col = 0; col < dim_; ++col) {
            for (uint64_t row = 0; row < dim_; ++row) {
                if ((row & cbit) && !(row & tbit)) {
                    std::swap(rho_[row * dim_ + col], rho_[(row | tbit) * dim_ + col]);
                }
            }
        }
        for (uint64_t row = 0; row < dim_; ++row) {
            for (uint64_t col = 0; col < dim_; ++col) {
                if ((col & cbit) && !(col & tbit)) {
                    std::swap(rho_[row * dim_ + col], rho_[row * dim_ + (col | tbit)]);
                }
            }
        }
        return;
    }
    const Mat2 u = gate_matrix_1q(gate);
    const uint64_t bit = 1ULL << gate.qubits[0];
    for (uint64_t col = 0; col < dim_; ++col) {
        for (uint64_t row = 0; row < dim_; ++row) {
            if (row & bit) continue;
            const Cx a = rho_[row * dim_ + col];
            const Cx b = rho_[(row | bit) * dim_ + col];
            rho_[row * dim_ + col] = u[0] * a + u[1] * b;
            rho_[(row | bit) * dim_ + col] = u[2] * a + u[3] * b;
        }
    }
    for (uint64_t row = 0; row < dim_; ++row) {
        for (uint64_t col = 0; col < dim_; ++col) {
            if (col & bit) continue;
            const Cx a = rho_[row * dim_ + col];
            const Cx b = rho_[row * dim_ + (col | bit)];
            rho_[row * dim_ + col] = std::conj(u[0]) * a + std::conj(u[1]) * b;
            rho_[row * dim_ + (col | bit)] = std::conj(u[2]) * a + std::conj(u[3]) * b;
        }
    }
}

void DenseDensity::apply_pauli_masks(uint64_t x, uint64_t z) {
    // P rho P^dag for P with the given x/z masks; phases cancel pairwise
    // except for the (-1)^{z.(row xor col)} factor on index flips.
    std::vector<Cx> out(rho_.size());
    for (uint64_t row = 0; row < dim_; ++row) {
        for (uint64_t col = 0; col < dim_; ++col) {
            const int sign_bits = std::popcount(z & (row ^ col)) & 1;
            const Cx v = rho_[(row ^ x) * dim_ + (col ^ x)];
            out[row * dim_ + col] = sign_bits ? -v : v;
        }
    }
    rho_ = std::move(out);
}

void DenseDensity::depolarize(uint64_t support_mask, double p) {
    if (p == 0.0) return;
    std::vector<uint32_t> support;
    for (uint32_t q = 0; q < n_; ++q) {
        if (support_mask & (1ULL << q)) support.push_back(q);
    }
    const uint32_t k = static_cast<uint32_t>(support.size());
    const uint64_t num_paulis = 1ULL << (2 * k);
    std::vector<Cx> mixed(rho_.size(), Cx(0.0));
    const std::vector<Cx> original = rho_;
    for (uint64_t code = 0; code < num_paulis; ++code) {
        uint64_t x = 0, z = 0;
        for (uint32_t i = 0; i < k; ++i) {
            if (code & (1ULL << (2 * i))) x |= 1ULL << support[i];
            if (code & (1ULL << (2 * i + 1))) z |= 1ULL << support[i];
        }
        rho_ = original;
        apply_pauli_masks(x, z);
        for (size_t i = 0; i < mixed.size(); ++i) mixed[i] += rho_[i];
    }
    const double mix = p / static_cast<double>(num_paulis);
    for (size_t i = 0; i < rho_.size(); ++i) {
        rho_[i] = (1.0 - p) * original[i] + mix * mixed[i];
    }
}

double DenseDensity::expval(const PauliObservable &obs) const {
    double total = 0.0;
    static const Cx kIPow[4] = {Cx(1, 0), Cx(0, 1), Cx(-1, 0), Cx(0, -1)};
    for (const auto &term : obs.terms) {
        // Tr(P rho) = sum_c <c| P rho |c>; P|c> = i^{#Y} (-1)^{z.c} |c xor x>.
        const Cx y_phase = kIPow[std::popcount(term.x & term.z) % 4];
        Cx acc(0.0);
        for (uint64_t c = 0; c < dim_; ++c) {
            const Cx phase = (std::popcount(term.z & c) & 1) ? -y_phase : y_phase;
            acc += phase * rho_[(c ^ term.x) * dim_ + c];
        }
        total += term.coeff * acc.real();
    }
    return total;
}

double DenseDensity::prob_all_zeros() const { return rho_[0].real(); }

namespace {

void run_noisy(DenseDensity &sim, const Circuit &circuit, const Layout &layout,
               const DeviceModel &device) {
    for (const auto &g : circuit.gates) {
        sim.apply_gate(g);
        if (g.kind == GateKind::Barrier || g.frame) continue;
        if (g.kind == GateKind::CX) {
            const uint64_t support = (1ULL << g.qubits[0]) | (1ULL << g.qubits[1]);
            sim.depolarize(support,
                           device.edge_error(layout.physical(g.qubits[0]),
                                             layout.physical(g.qubits[1])));
        } else {
            sim.depolarize(1ULL << g.qubits[0], device.qubit_error(layout.physical(g.qubits[0])));
        }
    }
}

}  // namespace

double dense_noisy_expval(const Circuit &circuit, const Layout &layout, const DeviceModel &device,
                          const PauliObservable &obs) {
    DenseDensity sim(circuit.num_qubits);
    run_noisy(sim, circuit, layout, device);
    return sim.expval(obs);
}

double dense_noisy_prob_all_zeros(const Circuit &circuit, const Layout &layout,
                                  const DeviceModel &device) {
    DenseDensity sim(circuit.num_qubits);
    run_noisy(sim, circuit, layout, device);
    return sim.prob_all_zeros();
}

}  // namespace ffzne::testing
