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

#include "ffzne/sim.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "ffzne/errors.hpp"
#include "ffzne/rng.hpp"

namespace ffzne {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

enum class Prim : uint8_t { H, S, Sdg, X, Y, Z, CX };

struct PrimOp {
    Prim kind;
    uint32_t q0 = 0;
    uint32_t q1 = 0;
};

Prim prim_inverse(Prim p) {
    if (p == Prim::S) return Prim::Sdg;
    if (p == Prim::Sdg) return Prim::S;
    return p;
}

int quarter_of(double theta) {
    const int64_t k = static_cast<int64_t>(std::llround(theta / kHalfPi));
    return static_cast<int>(((k % 4) + 4) % 4);
}

void append_rz_quarter(std::vector<PrimOp> &out, uint32_t q, int k) {
    switch (k) {
        case 1: out.push_back({Prim::S, q}); break;
        case 2: out.push_back({Prim::Z, q}); break;
        case 3: out.push_back({Prim::Sdg, q}); break;
        default: break;
    }
}

// Clifford primitive sequence realizing one gate, in circuit order.
// Rotation angles must already be multiples of pi/2.
void append_prims(const Gate &g, std::vector<PrimOp> &out) {
    switch (g.kind) {
        case GateKind::H: out.push_back({Prim::H, g.qubits[0]}); break;
        case GateKind::S: out.push_back({Prim::S, g.qubits[0]}); break;
        case GateKind::Sdg: out.push_back({Prim::Sdg, g.qubits[0]}); break;
        case GateKind::X: out.push_back({Prim::X, g.qubits[0]}); break;
        case GateKind::Y: out.push_back({Prim::Y, g.qubits[0]}); break;
        case GateKind::Z: out.push_back({Prim::Z, g.qubits[0]}); break;
        case GateKind::CX: out.push_back({Prim::CX, g.qubits[0], g.qubits[1]}); break;
        case GateKind::RZ: append_rz_quarter(out, g.qubits[0], quarter_of(g.theta)); break;
        case GateKind::RX: {
            const int k = quarter_of(g.theta);
            if (k == 0) break;
            out.push_back({Prim::H, g.qubits[0]});
            append_rz_quarter(out, g.qubits[0], k);
            out.push_back({Prim::H, g.qubits[0]});
            break;
        }
        case GateKind::RY: {
            const int k = quarter_of(g.theta);
            if (k == 0) break;
            out.push_back({Prim::Sdg, g.qubits[0]});
            out.push_back({Prim::H, g.qubits[0]});
            append_rz_quarter(out, g.qubits[0], k);
            out.push_back({Prim::H, g.qubits[0]});
            out.push_back({Prim::S, g.qubits[0]});
            break;
        }
        case GateKind::Barrier: break;
    }
}

// Single Pauli with sign, conjugated in place by Clifford primitives
// (P -> g P g^dag, standard stabilizer bit rules).
struct SignedPauli {
    uint64_t x = 0;
    uint64_t z = 0;
    bool neg = false;

    void conj(const PrimOp &op) {
        const uint64_t b0 = 1ULL << op.q0;
        const bool x0 = x & b0, z0 = z & b0;
        switch (op.kind) {
            case Prim::H:
                neg ^= x0 && z0;
                if (x0 != z0) { x ^= b0; z ^= b0; }
                break;
            case Prim::S:
                neg ^= x0 && z0;
                if (x0) z ^= b0;
                break;
            case Prim::Sdg:
                neg ^= x0 && !z0;
                if (x0) z ^= b0;
                break;
            case Prim::X: neg ^= z0; break;
            case Prim::Y: neg ^= x0 != z0; break;
            case Prim::Z: neg ^= x0; break;
            case Prim::CX: {
                const uint64_t b1 = 1ULL << op.q1;
                const bool xt = x & b1, zt = z & b1;
                neg ^= x0 && zt && !(xt != z0);
                if (x0) x ^= b1;
                if (zt) z ^= b0;
                break;
            }
        }
    }
};

struct NoiseSite {
    uint64_t support = 0;
    double p = 0.0;
};

// Gate stream prepared once per (circuit, layout, device): primitive ops and
// the depolarizing site attached after each noisy gate.
struct CompiledCircuit {
    struct Step {
        std::vector<PrimOp> prims;
        bool has_noise = false;
        NoiseSite site;
    };
    std::vector<Step> steps;
};

CompiledCircuit compile_circuit(const Circuit &circuit, const Layout &layout,
                                const DeviceModel &device, bool per_gate_noise) {
    if (circuit.num_qubits > 64) {
        throw ValidationError("simulator supports at most 64 qubits");
    }
    if (!circuit.is_clifford()) {
        throw ValidationError("simulator requires a Clifford circuit");
    }
    if (per_gate_noise && layout.num_virtual() != circuit.num_qubits) {
        throw ValidationError("layout size does not match circuit qubit count");
    }
    CompiledCircuit cc;
    for (const auto &g : circuit.gates) {
        if (g.kind == GateKind::Barrier) continue;
        CompiledCircuit::Step step;
        append_prims(g, step.prims);
        if (per_gate_noise && !g.frame) {
            step.has_noise = true;
            if (g.kind == GateKind::CX) {
                step.site.support = (1ULL << g.qubits[0]) | (1ULL << g.qubits[1]);
                step.site.p = device.edge_error(layout.physical(g.qubits[0]),
                                                layout.physical(g.qubits[1]));
            } else {
                step.site.support = 1ULL << g.qubits[0];
                step.site.p = device.qubit_error(layout.physical(g.qubits[0]));
            }
        }
        cc.steps.push_back(std::move(step));
    }
    return cc;
}

double heisenberg_expval(const CompiledCircuit &cc, const PauliObservable &observable) {
    double total = 0.0;
    for (const auto &term : observable.terms) {
        SignedPauli pauli{term.x, term.z, false};
        double factor = term.coeff;
        for (auto step = cc.steps.rbegin(); step != cc.steps.rend(); ++step) {
            if (step->has_noise && ((pauli.x | pauli.z) & step->site.support) != 0) {
                factor *= 1.0 - step->site.p;
            }
            for (auto op = step->prims.rbegin(); op != step->prims.rend(); ++op) {
                PrimOp inv = *op;
                inv.kind = prim_inverse(op->kind);
                pauli.conj(inv);
            }
        }
        if (pauli.x == 0) total += pauli.neg ? -factor : factor;
    }
    return total;
}

// Aaronson–Gottesman tableau, destabilizers in rows [0, n), stabilizers in
// rows [n, 2n). Qubit count is capped at 64 so each row fits in two words.
class Tableau {
  public:
    explicit Tableau(uint32_t n) : n_(n), x_(2 * n, 0), z_(2 * n, 0), r_(2 * n, 0) {
        for (uint32_t i = 0; i < n; ++i) {
            x_[i] = 1ULL << i;          // destabilizer X_i
            z_[n + i] = 1ULL << i;      // stabilizer Z_i
        }
    }

    void apply(const PrimOp &op) {
        const uint64_t b0 = 1ULL << op.q0;
        const uint64_t b1 = 1ULL << op.q1;
        for (uint32_t i = 0; i < 2 * n_; ++i) {
            const bool x0 = x_[i] & b0, z0 = z_[i] & b0;
            switch (op.kind) {
                case Prim::H:
                    r_[i] ^= x0 && z0;
                    if (x0 != z0) { x_[i] ^= b0; z_[i] ^= b0; }
                    break;
                case Prim::S:
                    r_[i] ^= x0 && z0;
                    if (x0) z_[i] ^= b0;
                    break;
                case Prim::Sdg:
                    r_[i] ^= x0 && !z0;
                    if (x0) z_[i] ^= b0;
                    break;
                case Prim::X: r_[i] ^= z0; break;
                case Prim::Y: r_[i] ^= x0 != z0; break;
                case Prim::Z: r_[i] ^= x0; break;
                case Prim::CX: {
                    const bool xt = x_[i] & b1, zt = z_[i] & b1;
                    r_[i] ^= x0 && zt && !(xt != z0);
                    if (x0) x_[i] ^= b1;
                    if (zt) z_[i] ^= b0;
                    break;
                }
            }
        }
    }

    // Apply a Pauli fault given by (x, z) masks (global phase ignored).
    void apply_pauli(uint64_t xmask, uint64_t zmask) {
        for (uint32_t i = 0; i < 2 * n_; ++i) {
            // A Pauli gate flips a row's sign iff it anticommutes with it.
            const uint64_t anti = (x_[i] & zmask) ^ (z_[i] & xmask);
            r_[i] ^= static_cast<uint8_t>(std::popcount(anti) & 1);
        }
    }

    bool measure_z(uint32_t q, Rng &rng) {
        const uint64_t bq = 1ULL << q;
        uint32_t p = 2 * n_;
        for (uint32_t i = n_; i < 2 * n_; ++i) {
            if (x_[i] & bq) { p = i; break; }
        }
        if (p < 2 * n_) {
            for (uint32_t i = 0; i < 2 * n_; ++i) {
                if (i != p && (x_[i] & bq)) rowsum(i, p);
            }
            x_[p - n_] = x_[p];
            z_[p - n_] = z_[p];
            r_[p - n_] = r_[p];
            x_[p] = 0;
            z_[p] = bq;
            r_[p] = rng.next() & 1;
            return r_[p] != 0;
        }
        // Deterministic outcome: accumulate the product of stabilizers whose
        // destabilizer partner anticommutes with Z_q.
        uint64_t sx = 0, sz = 0;
        int phase = 0;  // mod 4
        for (uint32_t i = 0; i < n_; ++i) {
            if (x_[i] & bq) phase = product_phase(sx, sz, x_[n_ + i], z_[n_ + i], r_[n_ + i], phase);
        }
        return (phase >> 1) != 0;
    }

  private:
    // row h *= row i, with exact phase tracking (phases are always 0 or 2).
    void rowsum(uint32_t h, uint32_t i) {
        const int phase = product_phase_raw(x_[i], z_[i], x_[h], z_[h]) + 2 * r_[h] + 2 * r_[i];
        x_[h] ^= x_[i];
        z_[h] ^= z_[i];
        r_[h] = static_cast<uint8_t>(((phase % 4) + 4) % 4) >> 1;
    }

    // Accumulates row (xi, zi, ri) into the scratch Pauli, returning the new
    // phase mod 4 and updating the scratch masks in place.
    int product_phase(uint64_t &sx, uint64_t &sz, uint64_t xi, uint64_t zi, uint8_t ri, int phase) {
        phase += product_phase_raw(xi, zi, sx, sz) + 2 * ri;
        sx ^= xi;
        sz ^= zi;
        return ((phase % 4) + 4) % 4;
    }

    // Sum over qubits of the Aaronson–Gottesman g function for multiplying
    // Pauli (x1, z1) into Pauli (x2, z2).
    static int product_phase_raw(uint64_t x1, uint64_t z1, uint64_t x2, uint64_t z2) {
        int sum = 0;
        uint64_t active = x1 | z1;
        while (active) {
            const int q = std::countr_zero(active);
            active &= active - 1;
            const uint64_t b = 1ULL << q;
            const bool a_x = x1 & b, a_z = z1 & b, b_x = x2 & b, b_z = z2 & b;
            if (a_x && a_z) sum += (b_z ? 1 : 0) - (b_x ? 1 : 0);
            else if (a_x) sum += b_z ? (b_x ? 1 : -1) : 0;
            else sum += b_x ? (b_z ? -1 : 1) : 0;
        }
        return sum;
    }

    uint32_t n_;
    std::vector<uint64_t> x_, z_;
    std::vector<uint8_t> r_;
};

uint64_t run_one_shot(const CompiledCircuit &cc, uint32_t n, bool global_mode, double global_p,
                      Rng &rng) {
    Tableau tab(n);
    for (const auto &step : cc.steps) {
        for (const auto &op : step.prims) tab.apply(op);
        if (step.has_noise && rng.bernoulli(step.site.p)) {
            // Uniform Pauli on the support, identity included.
            uint64_t xmask = 0, zmask = 0;
            uint64_t support = step.site.support;
            while (support) {
                const int q = std::countr_zero(support);
                support &= support - 1;
                const uint64_t draw = rng.below(4);
                if (draw & 1) xmask |= 1ULL << q;
                if (draw & 2) zmask |= 1ULL << q;
            }
            if (xmask | zmask) tab.apply_pauli(xmask, zmask);
        }
    }
    const uint64_t full = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
    if (global_mode && rng.bernoulli(global_p)) {
        return rng.next() & full;  // maximally mixed register
    }
    uint64_t outcome = 0;
    for (uint32_t q = 0; q < n; ++q) {
        if (tab.measure_z(q, rng)) outcome |= 1ULL << q;
    }
    return outcome;
}

double evaluate_observable(const PauliObservable &observable, uint64_t bits) {
    double value = 0.0;
    for (const auto &term : observable.terms) {
        const int parity = std::popcount(bits & term.z) & 1;
        value += parity ? -term.coeff : term.coeff;
    }
    return value;
}

void check_observable(const Circuit &circuit, const PauliObservable &observable) {
    if (observable.num_qubits != circuit.num_qubits) {
        throw ValidationError("observable qubit count does not match circuit");
    }
    if (observable.terms.empty()) throw ValidationError("observable has no terms");
}

}  // namespace

bool PauliObservable::z_diagonal() const {
    for (const auto &t : terms) {
        if (t.x != 0) return false;
    }
    return true;
}

PauliObservable make_observable(uint32_t n, uint32_t weight) {
    if (weight < 1 || weight > 3) throw ValidationError("observable weight must be 1, 2 or 3");
    if (n < weight) throw ValidationError("observable weight exceeds the qubit count");
    if (n > 64) throw ValidationError("observables support at most 64 qubits");
    PauliObservable obs;
    obs.num_qubits = n;
    const uint32_t count = n - (weight - 1);
    const double coeff = 1.0 / static_cast<double>(count);
    for (uint32_t i = 0; i < count; ++i) {
        uint64_t z = 0;
        for (uint32_t k = 0; k < weight; ++k) z |= 1ULL << (i + k);
        obs.terms.push_back({coeff, 0, z});
    }
    return obs;
}

ExpvalEstimate exact_expval(const Circuit &circuit, const Layout &layout,
                            const DeviceModel &device, const NoiseModel &noise,
                            const PauliObservable &observable) {
    check_observable(circuit, observable);
    if (noise.kind == NoiseKind::PerGate) {
        const CompiledCircuit cc = compile_circuit(circuit, layout, device, true);
        return {heisenberg_expval(cc, observable), 0.0, 0, true};
    }
    // Global depolarizing: noiseless value mixed once with the floor
    // Tr[O / 2^n] (the sum of identity-term coefficients).
    const CompiledCircuit cc = compile_circuit(circuit, layout, device, false);
    const double noiseless = heisenberg_expval(cc, observable);
    double floor = 0.0;
    for (const auto &t : observable.terms) {
        if (t.x == 0 && t.z == 0) floor += t.coeff;
    }
    return {global_depolarizing_expval(noiseless, floor, noise.global_p), 0.0, 0, true};
}

ExpvalEstimate sampled_expval(const Circuit &circuit, const Layout &layout,
                              const DeviceModel &device, const NoiseModel &noise,
                              const PauliObservable &observable, uint64_t shots, uint64_t seed) {
    check_observable(circuit, observable);
    if (shots < 1) throw ValidationError("sampled_expval: shots must be >= 1");
    if (!observable.z_diagonal()) {
        throw ValidationError("sampled_expval requires a Z-diagonal observable");
    }
    const bool global_mode = noise.kind == NoiseKind::Global;
    if (global_mode && !(noise.global_p >= 0.0 && noise.global_p <= 1.0)) {
        throw ValidationError("global depolarizing probability must lie in [0,1]");
    }
    const CompiledCircuit cc = compile_circuit(circuit, layout, device, !global_mode);

    double sum = 0.0, sum_sq = 0.0;
    for (uint64_t s = 0; s < shots; ++s) {
        Rng rng(stable_hash({0x73686f74ULL, seed, s}));
        const double v =
            evaluate_observable(observable, run_one_shot(cc, circuit.num_qubits, global_mode,
                                                         noise.global_p, rng));
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / static_cast<double>(shots);
    double stderr_ = 0.0;
    if (shots > 1) {
        const double var =
            std::max(0.0, (sum_sq - sum * mean) / static_cast<double>(shots - 1));
        stderr_ = std::sqrt(var / static_cast<double>(shots));
    }
    return {mean, stderr_, shots, false};
}

std::vector<uint64_t> sample_measurements(const Circuit &circuit, const Layout &layout,
                                          const DeviceModel &device, const NoiseModel &noise,
                                          uint64_t shots, uint64_t seed) {
    const bool global_mode = noise.kind == NoiseKind::Global;
    const CompiledCircuit cc = compile_circuit(circuit, layout, device, !global_mode);
    std::vector<uint64_t> out;
    out.reserve(shots);
    for (uint64_t s = 0; s < shots; ++s) {
        Rng rng(stable_hash({0x73686f74ULL, seed, s}));
        out.push_back(run_one_shot(cc, circuit.num_qubits, global_mode, noise.global_p, rng));
    }
    return out;
}

double global_depolarizing_expval(double ideal, double noisy_floor, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError("global depolarizing probability must lie in [0,1]");
    }
    return (1.0 - p) * ideal + p * noisy_floor;
}

double ideal_expval(const Circuit &circuit, const PauliObservable &observable) {
    static const DeviceModel kEmpty{};
    return exact_expval(circuit, identity_layout(circuit.num_qubits), kEmpty,
                        NoiseModel::none(), observable)
        .mean;
}

Layout identity_layout(uint32_t n) {
    Layout l;
    l.mapping.resize(n);
    for (uint32_t i = 0; i < n; ++i) l.mapping[i] = i;
    return l;
}

}  // namespace ffzne
