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
#include "ffzne/layout.hpp"
#include "ffzne/scoring.hpp"
#include "ffzne/selection.hpp"
#include "ffzne/sim.hpp"

namespace ffzne {

enum class FitModel { Linear, Exponential, Richardson2 };
enum class XAxis { LayoutScore, NoiseFactor };

struct FitPoint {
    double x = 0.0;
    double y = 0.0;
    double yerr = 0.0;  // 0 in exact mode
};

struct Extrapolation {
    FitModel model = FitModel::Linear;
    std::vector<double> params;  // linear: {intercept, slope}; exp: {A, B, C}
    double zero_noise_estimate = 0.0;
    std::vector<double> residuals;
    XAxis x_axis = XAxis::LayoutScore;
    // Exponential fit collapsed to |C| < 1e-9 and fell back to a linear fit.
    bool degenerate_exponential = false;

    double value_at(double x) const;
};

// Two-point Richardson elimination of the leading noise term:
// delta/(delta-1) * e1 - 1/(delta-1) * e2, requires delta > 1.
double richardson_two_point(double e1, double e2, double delta);

// Ordinary least squares y = a + b x; the zero-noise estimate is the
// intercept. With weighted=true, points are weighted by 1/yerr^2 (points
// with yerr == 0 reject weighting).
Extrapolation fit_linear(const std::vector<FitPoint> &points, bool weighted = false);

// y = A + B exp(C x). Three equally spaced abscissae solve in closed form;
// otherwise Gauss-Newton seeded from the closed form over the first, middle
// and last points. A negative difference ratio (complex root) or
// non-convergence raises PipelineError("exponential fit failed").
Extrapolation fit_exponential(const std::vector<FitPoint> &points);

struct StageTimes {
    double enumerate_ms = 0.0;
    double score_ms = 0.0;
    double select_ms = 0.0;
    double execute_ms = 0.0;
    double fit_ms = 0.0;
};

struct LayoutCounts {
    uint64_t enumerated = 0;
    uint64_t after_truncation = 0;
    uint64_t after_filter = 0;
    bool enumeration_capped = false;
};

struct MitigationReport {
    std::string method;        // "ffzne" | "zne"
    std::string score_method;  // fp | qic | "" for the folded baseline
    std::optional<SelectionTriple> triple;
    std::vector<double> lambdas;  // folded baseline only
    std::vector<FitPoint> points;
    Extrapolation extrapolation;
    std::optional<double> ideal;
    std::optional<double> deviation_pct;
    std::optional<double> unmitigated_expval;  // best-layout (or lambda=1) raw value
    std::optional<double> unmitigated_deviation_pct;
    uint32_t executions = 0;
    LayoutCounts layout_counts;
    StageTimes times;
    // Campaign metadata for CSV flattening; empty outside campaigns.
    std::string family;
    uint32_t n = 0;
    uint32_t reps = 0;
};

struct RunOptions {
    ScoreMethod score_method = ScoreMethod::FidelityProduct;
    SelectionMethod strategy = SelectionMethod::Binary;
    double a = 0.1;    // exhaustive trade-off
    double eps = 0.0;  // binary early-stop tolerance
    uint32_t eta = 10;
    bool truncate = true;
    std::optional<uint64_t> cap;
    uint64_t shots = 0;  // 0 = exact mode
    uint32_t qic_shots = 4096;
    uint64_t seed = 0;
    uint32_t observable_weight = 1;
    NoiseKind noise = NoiseKind::PerGate;
    bool weighted_fit = false;  // sampled mode only
};

// score -> filter -> select triple -> execute on (l1, li, lj) -> linear
// extrapolation over (score, expval) to score 0. Exactly three circuit
// executions. In Global noise mode the per-layout depolarizing probability
// is the layout's aggregate fidelity-product error.
MitigationReport run_ffzne(const Circuit &circuit, const DeviceModel &device,
                           const RunOptions &options);

enum class Extrapolator { Linear, Exponential };

struct ZneOptions {
    std::vector<double> lambdas{1.0, 3.0, 5.0};
    Extrapolator extrapolator = Extrapolator::Linear;
    uint64_t shots = 0;
    uint64_t seed = 0;
    uint32_t observable_weight = 1;
};

// Conventional fold-based baseline: fold per lambda, execute on one fixed
// layout, extrapolate to lambda = 0.
MitigationReport run_folded_zne(const Circuit &circuit, const DeviceModel &device,
                                const Layout &layout, const ZneOptions &options);

// The noise-factor candidate sets commonly reported for fold-based ZNE;
// exhaustively trying all of them costs 28 executions vs 3 for FF-ZNE.
const std::vector<std::vector<double>> &standard_lambda_sets();

enum class BudgetMode { Ffzne, ExhaustiveBaseline };
uint32_t execution_budget(BudgetMode mode);
uint32_t execution_budget(const std::vector<double> &lambdas);

}  // namespace ffzne
