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
//
// Dense (exponential-size) reference simulators. These stay independent of
// the production Heisenberg/tableau paths: everything is done with explicit
// state vectors and density matrices.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ffzne/circuit.hpp"
#include "ffzne/device.hpp"
#include "ffzne/layout.hpp"
#include "ffzne/sim.hpp"

namespace ffzne::testing {

using Cx = std::complex<double>;

// |0...0> evolved through the circuit (unitary gates only, rotations allowed).
std::vector<Cx> run_statevector(const Circuit &circuit);
std::vector<double> statevector_probabilities(const Circuit &circuit);

class DenseDensity {
  public:
    explicit DenseDensity(uint32_t n);

    void apply_gate(const Gate &gate);
    // rho -> (1-p) rho + p * I/d (x) Tr_support(rho), implemented as the
    // uniform Pauli mixture over the support.
    void depolarize(uint64_t support_mask, double p);

    double expval(const PauliObservable &obs) const;
    double prob_all_zeros() const;

  private:
    void apply_pauli_masks(uint64_t x, uint64_t z);

    uint32_t n_;
    uint64_t dim_;
    std::vector<Cx> rho_;  // row-major dim x dim
};

// Full noisy evolution with the production depolarizing convention (per-gate
// sites from the device through the layout; frame gates and barriers are
// noise-free).
double dense_noisy_expval(const Circuit &circuit, const Layout &layout, const DeviceModel &device,
                          const PauliObservable &obs);
double dense_noisy_prob_all_zeros(const Circuit &circuit, const Layout &layout,
                                  const DeviceModel &device);

}  // namespace ffzne::testing
