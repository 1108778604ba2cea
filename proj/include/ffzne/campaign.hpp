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

#include "ffzne/device.hpp"
#include "ffzne/json_io.hpp"
#include "ffzne/mitigation.hpp"

namespace ffzne {

// A campaign strategy is a selection algorithm with or without the
// qubit-overlap truncation applied before scoring.
struct StrategySpec {
    SelectionMethod method = SelectionMethod::Binary;
    bool truncated = false;

    std::string name() const;
    static StrategySpec from_name(const std::string &name);
};

struct CircuitGrid {
    std::string family;  // su2 | hamsim | brickwork
    std::vector<uint32_t> n;
    std::vector<uint32_t> reps;  // reps / trotter steps / depth per family
};

struct CampaignSpec {
    std::optional<std::string> device_path;
    std::optional<DeviceGenSpec> device_gen;
    std::vector<CircuitGrid> grids;
    std::vector<StrategySpec> strategies{{SelectionMethod::Binary, false}};
    ScoreMethod score_method = ScoreMethod::FidelityProduct;
    double a = 0.1;
    double eps = 0.0;
    uint32_t eta = 10;
    std::optional<uint64_t> cap;
    uint64_t shots = 0;
    uint32_t qic_shots = 4096;
    uint64_t seed = 0;
    uint32_t observable_weight = 1;
    bool run_baseline = false;
    std::vector<double> baseline_lambdas{1, 3, 5};
    Extrapolator baseline_extrapolator = Extrapolator::Linear;
    uint32_t jobs = 1;

    void validate() const;
};

struct CampaignCellResult {
    std::string family;
    uint32_t n = 0;
    uint32_t reps = 0;
    uint32_t two_qubit_depth = 0;
    std::string strategy;
    std::optional<MitigationReport> report;
    std::string error;  // non-empty when the cell failed
};

struct CampaignResult {
    std::vector<CampaignCellResult> cells;  // deterministic grid order
    std::string summary_csv_path;
};

// Builds one circuit per grid cell (cliffordized), runs the FF-ZNE pipeline
// once per strategy (and optionally the folded baseline), writes per-cell
// report JSON files plus a summary CSV into out_dir. Cell failures are
// recorded in the summary; the campaign continues. Fully deterministic per
// seed: each cell derives its own stream via stable hashing, so adding grid
// cells never perturbs existing results, and the worker pool assembles
// outputs in grid order.
CampaignResult run_campaign(const CampaignSpec &spec, const std::string &out_dir);

// Per-figure-analogue CSV emitters (stable column order, deterministic):
//   extrapolation.csv  3 data rows + 50 fitted-line samples
//   budget.csv         (ffzne, 3) vs (exhaustive-zne, 28)
//   score_scatter.csv  executed (x, expval) pairs
void emit_plot_data(const MitigationReport &report, const std::string &out_dir);

Json campaign_spec_to_json(const CampaignSpec &spec);
CampaignSpec campaign_spec_from_json(const Json &j);

// Shared by the campaign and the CLI: build a cell circuit for a family.
Circuit build_family_circuit(const std::string &family, uint32_t n, uint32_t reps, uint64_t seed);

}  // namespace ffzne
