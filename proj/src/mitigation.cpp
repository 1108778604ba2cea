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

#include "ffzne/mitigation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "ffzne/errors.hpp"
#include "ffzne/rng.hpp"

namespace ffzne {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void check_points(const std::vector<FitPoint> &points, size_t min_count) {
    if (points.size() < min_count) {
        throw PipelineError("fit: need at least " + std::to_string(min_count) + " points");
    }
    double x_min = points[0].x, x_max = points[0].x;
    for (const auto &p : points) {
        x_min = std::min(x_min, p.x);
        x_max = std::max(x_max, p.x);
    }
    if (x_max - x_min <= 0.0) throw PipelineError("degenerate abscissae");
}

// Closed-form A + B e^{Cx} through three points with equally spaced x.
// Returns false when the difference ratio is non-positive (complex root).
bool solve_exponential_3pt(double x0, double h, double y0, double y1, double y2, double &A,
                           double &B, double &C) {
    const double d0 = y1 - y0;
    const double d1 = y2 - y1;
    if (d0 == 0.0 && d1 == 0.0) {  // constant data: degenerate C -> 0
        A = y0;
        B = 0.0;
        C = 0.0;
        return true;
    }
    if (d0 == 0.0) return false;
    const double ratio = d1 / d0;
    if (!(ratio > 0.0)) return false;
    C = std::log(ratio) / h;
    const double e0 = std::exp(C * x0);
    const double denom = e0 * (ratio - 1.0);
    if (denom == 0.0) {  // ratio == 1: constant slope, C -> 0
        A = y0;
        B = 0.0;
        C = 0.0;
        return true;
    }
    B = d0 / denom;
    A = y0 - B * e0;
    return std::isfinite(A) && std::isfinite(B) && std::isfinite(C);
}

Extrapolation linear_fallback(const std::vector<FitPoint> &points) {
    Extrapolation fit = fit_linear(points);
    fit.degenerate_exponential = true;
    return fit;
}

}  // namespace

double Extrapolation::value_at(double x) const {
    if (model == FitModel::Exponential && !degenerate_exponential) {
        return params[0] + params[1] * std::exp(params[2] * x);
    }
    return params[0] + params[1] * x;
}

double richardson_two_point(double e1, double e2, double delta) {
    if (!(delta > 1.0)) throw ValidationError("richardson_two_point: delta must be > 1");
    return delta / (delta - 1.0) * e1 - 1.0 / (delta - 1.0) * e2;
}

Extrapolation fit_linear(const std::vector<FitPoint> &points, bool weighted) {
    check_points(points, 2);
    double sw = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto &p : points) {
        double w = 1.0;
        if (weighted) {
            if (p.yerr <= 0.0) {
                throw ValidationError("fit_linear: weighted fit requires positive yerr");
            }
            w = 1.0 / (p.yerr * p.yerr);
        }
        sw += w;
        sx += w * p.x;
        sy += w * p.y;
        sxx += w * p.x * p.x;
        sxy += w * p.x * p.y;
    }
    const double denom = sw * sxx - sx * sx;
    if (denom == 0.0) throw PipelineError("degenerate abscissae");
    const double slope = (sw * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / sw;

    Extrapolation fit;
    fit.model = FitModel::Linear;
    fit.params = {intercept, slope};
    fit.zero_noise_estimate = intercept;
    for (const auto &p : points) fit.residuals.push_back(p.y - (intercept + slope * p.x));
    return fit;
}

Extrapolation fit_exponential(const std::vector<FitPoint> &points) {
    check_points(points, 3);
    std::vector<FitPoint> sorted = points;
    std::sort(sorted.begin(), sorted.end(),
              [](const FitPoint &a, const FitPoint &b) { return a.x < b.x; });

    const size_t n = sorted.size();
    const double h0 = sorted[1].x - sorted[0].x;
    const bool equally_spaced = [&] {
        for (size_t i = 1; i + 1 < n; ++i) {
            if (std::abs((sorted[i + 1].x - sorted[i].x) - h0) > 1e-12 * std::max(1.0, std::abs(h0)))
                return false;
        }
        return true;
    }();

    double A = 0.0, B = 0.0, C = 0.0;
    const size_t mid = n / 2;
    const double seed_h = (sorted[n - 1].x - sorted[0].x) / 2.0;
    const bool seed_ok =
        (equally_spaced && n == 3)
            ? solve_exponential_3pt(sorted[0].x, h0, sorted[0].y, sorted[1].y, sorted[2].y, A, B, C)
            : solve_exponential_3pt(sorted[0].x, seed_h, sorted[0].y, sorted[mid].y,
                                    sorted[n - 1].y, A, B, C);
    if (!seed_ok) throw PipelineError("exponential fit failed");

    if (!(equally_spaced && n == 3)) {
        // Gauss-Newton refinement with simple step damping.
        for (int iter = 0; iter < 200; ++iter) {
            double jtj[3][3] = {};
            double jtr[3] = {};
            for (const auto &p : sorted) {
                const double e = std::exp(C * p.x);
                const double r = p.y - (A + B * e);
                const double jac[3] = {1.0, e, B * p.x * e};
                for (int a = 0; a < 3; ++a) {
                    jtr[a] += jac[a] * r;
                    for (int b = 0; b < 3; ++b) jtj[a][b] += jac[a] * jac[b];
                }
            }
            for (int a = 0; a < 3; ++a) jtj[a][a] += 1e-12;
            // Solve the 3x3 normal equations by Gaussian elimination.
            double m[3][4];
            for (int r = 0; r < 3; ++r) {
                for (int c = 0; c < 3; ++c) m[r][c] = jtj[r][c];
                m[r][3] = jtr[r];
            }
            for (int col = 0; col < 3; ++col) {
                int pivot = col;
                for (int r = col + 1; r < 3; ++r) {
                    if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
                }
                std::swap(m[col], m[pivot]);
                if (std::abs(m[col][col]) < 1e-300) throw PipelineError("exponential fit failed");
                for (int r = 0; r < 3; ++r) {
                    if (r == col) continue;
                    const double f = m[r][col] / m[col][col];
                    for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
                }
            }
            const double dA = m[0][3] / m[0][0];
            const double dB = m[1][3] / m[1][1];
            const double dC = m[2][3] / m[2][2];
            A += dA;
            B += dB;
            C += dC;
            if (!std::isfinite(A) || !std::isfinite(B) || !std::isfinite(C)) {
                throw PipelineError("exponential fit failed");
            }
            if (std::abs(dA) + std::abs(dB) + std::abs(dC) < 1e-12) break;
        }
    }

    if (std::abs(C) < 1e-9) return linear_fallback(points);

    Extrapolation fit;
    fit.model = FitModel::Exponential;
    fit.params = {A, B, C};
    fit.zero_noise_estimate = A + B;
    for (const auto &p : points) fit.residuals.push_back(p.y - (A + B * std::exp(C * p.x)));
    return fit;
}

namespace {

ExpvalEstimate execute(const Circuit &circuit, const Layout &layout, const DeviceModel &device,
                       const NoiseModel &noise, const PauliObservable &obs, uint64_t shots,
                       uint64_t seed) {
    if (shots == 0) return exact_expval(circuit, layout, device, noise, obs);
    return sampled_expval(circuit, layout, device, noise, obs, shots, seed);
}

std::optional<double> deviation_pct(double estimate, std::optional<double> ideal) {
    if (!ideal || *ideal == 0.0) return std::nullopt;
    return 100.0 * std::abs(estimate - *ideal) / std::abs(*ideal);
}

}  // namespace

MitigationReport run_ffzne(const Circuit &circuit, const DeviceModel &device,
                           const RunOptions &options) {
    MitigationReport report;
    report.method = "ffzne";
    report.score_method = score_method_name(options.score_method);
    report.n = circuit.num_qubits;

    const InteractionGraph graph = interaction_graph(circuit);
    const PauliObservable obs = make_observable(circuit.num_qubits, options.observable_weight);

    auto t0 = Clock::now();
    LayoutSet layouts = enumerate_layouts(graph, device, options.cap);
    layouts.circuit_hash = circuit_hash(circuit);
    report.layout_counts.enumerated = layouts.layouts.size();
    report.layout_counts.enumeration_capped = layouts.truncated;
    if (options.truncate && options.eta >= 1) {
        layouts = truncate_by_overlap(layouts, options.eta);
    }
    report.layout_counts.after_truncation = layouts.layouts.size();
    report.times.enumerate_ms = ms_since(t0);
    if (layouts.layouts.size() < 3) {
        throw PipelineError("insufficient layouts for extrapolation");
    }

    t0 = Clock::now();
    const ScoreTable raw =
        score_layouts(circuit, layouts, device, options.score_method,
                      {options.qic_shots, stable_hash({0x73636f72ULL, options.seed})});
    const ScoreTable table = filter_scores(raw);
    report.layout_counts.after_filter = table.entries.size();
    report.times.score_ms = ms_since(t0);

    t0 = Clock::now();
    const SelectionTriple triple = options.strategy == SelectionMethod::Exhaustive
                                       ? select_exhaustive(table, options.a)
                                       : select_binary(table, options.eps);
    report.triple = triple;
    report.times.select_ms = ms_since(t0);

    t0 = Clock::now();
    const Layout *chosen[3] = {&triple.l1, &triple.li, &triple.lj};
    const double scores[3] = {triple.s1, triple.si, triple.sj};
    for (int k = 0; k < 3; ++k) {
        NoiseModel noise = NoiseModel::per_gate();
        if (options.noise == NoiseKind::Global) {
            // The layout's aggregate error doubles as the depolarizing
            // probability, making the expval exactly affine in the
            // fidelity-product score.
            noise = NoiseModel::global(score_fidelity_product(circuit, *chosen[k], device));
        }
        const ExpvalEstimate e =
            execute(circuit, *chosen[k], device, noise, obs, options.shots,
                    stable_hash({0x65786563ULL, options.seed, static_cast<uint64_t>(k)}));
        report.points.push_back({scores[k], e.mean, e.stderr_});
        ++report.executions;
    }
    report.times.execute_ms = ms_since(t0);

    t0 = Clock::now();
    const bool weighted = options.weighted_fit && options.shots > 0;
    report.extrapolation = fit_linear(report.points, weighted);
    report.extrapolation.x_axis = XAxis::LayoutScore;
    report.times.fit_ms = ms_since(t0);

    report.ideal = ideal_expval(circuit, obs);
    report.deviation_pct = deviation_pct(report.extrapolation.zero_noise_estimate, report.ideal);
    report.unmitigated_expval = report.points[0].y;
    report.unmitigated_deviation_pct = deviation_pct(report.points[0].y, report.ideal);
    return report;
}

MitigationReport run_folded_zne(const Circuit &circuit, const DeviceModel &device,
                                const Layout &layout, const ZneOptions &options) {
    if (options.lambdas.empty() || options.lambdas.front() < 1.0 ||
        !std::is_sorted(options.lambdas.begin(), options.lambdas.end())) {
        throw ValidationError("run_folded_zne: lambdas must be ascending and start at >= 1");
    }
    const size_t min_points = options.extrapolator == Extrapolator::Linear ? 2 : 3;
    if (options.lambdas.size() < min_points) {
        throw ValidationError("run_folded_zne: need at least " + std::to_string(min_points) +
                              " noise factors for this extrapolator");
    }

    MitigationReport report;
    report.method = "zne";
    report.lambdas = options.lambdas;
    report.n = circuit.num_qubits;
    const PauliObservable obs = make_observable(circuit.num_qubits, options.observable_weight);

    auto t0 = Clock::now();
    for (size_t k = 0; k < options.lambdas.size(); ++k) {
        const Circuit folded = fold(circuit, options.lambdas[k]);
        const ExpvalEstimate e =
            execute(folded, layout, device, NoiseModel::per_gate(), obs, options.shots,
                    stable_hash({0x666f6c64ULL, options.seed, k}));
        report.points.push_back({options.lambdas[k], e.mean, e.stderr_});
        ++report.executions;
    }
    report.times.execute_ms = ms_since(t0);

    t0 = Clock::now();
    report.extrapolation = options.extrapolator == Extrapolator::Linear
                               ? fit_linear(report.points)
                               : fit_exponential(report.points);
    report.extrapolation.x_axis = XAxis::NoiseFactor;
    report.times.fit_ms = ms_since(t0);

    report.ideal = ideal_expval(circuit, obs);
    report.deviation_pct = deviation_pct(report.extrapolation.zero_noise_estimate, report.ideal);
    report.unmitigated_expval = report.points[0].y;
    report.unmitigated_deviation_pct = deviation_pct(report.points[0].y, report.ideal);
    return report;
}

const std::vector<std::vector<double>> &standard_lambda_sets() {
    static const std::vector<std::vector<double>> kSets = {
        {1, 3, 5},
        {1, 1.1, 1.2},
        {1, 2, 3},
        {1, 1.5, 2, 2.5, 3},
        {1, 3, 5, 7},
        {1.2, 1.4, 1.6, 1.8, 2.0},
        {1, 3},
        {1, 1.2, 1.6},
    };
    return kSets;
}

uint32_t execution_budget(BudgetMode mode) {
    if (mode == BudgetMode::Ffzne) return 3;
    uint32_t total = 0;
    for (const auto &set : standard_lambda_sets()) total += static_cast<uint32_t>(set.size());
    return total;
}

uint32_t execution_budget(const std::vector<double> &lambdas) {
    return static_cast<uint32_t>(lambdas.size());
}

}  // namespace ffzne
