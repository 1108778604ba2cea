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

#include "ffzne/campaign.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "ffzne/errors.hpp"
#include "ffzne/rng.hpp"

namespace ffzne {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string opt_fmt(const std::optional<double> &v) { return v ? fmt(*v) : ""; }

}  // namespace

std::string StrategySpec::name() const {
    const std::string base = selection_method_name(method);
    return truncated ? "truncated-" + base : base;
}

StrategySpec StrategySpec::from_name(const std::string &name) {
    StrategySpec spec;
    std::string base = name;
    if (name.rfind("truncated-", 0) == 0) {
        spec.truncated = true;
        base = name.substr(10);
    }
    spec.method = selection_method_from_name(base);
    return spec;
}

void CampaignSpec::validate() const {
    if (!device_path && !device_gen) {
        throw ValidationError("campaign: need a device path or a device generation spec");
    }
    if (grids.empty()) throw ValidationError("campaign: grids must be nonempty");
    for (const auto &grid : grids) {
        if (grid.family != "su2" && grid.family != "hamsim" && grid.family != "brickwork") {
            throw ValidationError("campaign: unknown family '" + grid.family + "'");
        }
        if (grid.n.empty() || grid.reps.empty()) {
            throw ValidationError("campaign: grid n/reps lists must be nonempty");
        }
    }
    if (strategies.empty()) throw ValidationError("campaign: strategies must be nonempty");
    if (jobs < 1) throw ValidationError("campaign: jobs must be >= 1");
}

Circuit build_family_circuit(const std::string &family, uint32_t n, uint32_t reps, uint64_t seed) {
    if (family == "su2") return cliffordize(gen_efficient_su2(n, reps, seed));
    if (family == "hamsim") return cliffordize(gen_hamiltonian_sim(n, reps));
    if (family == "brickwork") return gen_mirrored_brickwork(n, reps, seed);
    throw ValidationError("unknown circuit family '" + family + "'");
}

CampaignResult run_campaign(const CampaignSpec &spec, const std::string &out_dir) {
    spec.validate();
    const DeviceModel device =
        spec.device_path ? load_device(*spec.device_path) : generate_device(*spec.device_gen);
    std::filesystem::create_directories(out_dir);

    struct Cell {
        std::string family;
        uint32_t n, reps;
        uint64_t seed;
    };
    std::vector<Cell> cells;
    for (const auto &grid : spec.grids) {
        for (uint32_t n : grid.n) {
            for (uint32_t reps : grid.reps) {
                const uint64_t cell_seed =
                    stable_hash({spec.seed, stable_str_hash(grid.family), n, reps});
                cells.push_back({grid.family, n, reps, cell_seed});
            }
        }
    }

    const size_t rows_per_cell = spec.strategies.size() + (spec.run_baseline ? 1 : 0);
    std::vector<CampaignCellResult> results(cells.size() * rows_per_cell);

    auto run_cell = [&](size_t ci) {
        const Cell &cell = cells[ci];
        Circuit circuit;
        std::string build_error;
        try {
            circuit = build_family_circuit(cell.family, cell.n, cell.reps, cell.seed);
        } catch (const std::exception &e) {
            build_error = e.what();
        }
        const Layout *baseline_layout = nullptr;
        for (size_t si = 0; si < spec.strategies.size(); ++si) {
            CampaignCellResult &row = results[ci * rows_per_cell + si];
            row.family = cell.family;
            row.n = cell.n;
            row.reps = cell.reps;
            row.strategy = spec.strategies[si].name();
            if (!build_error.empty()) {
                row.error = build_error;
                continue;
            }
            row.two_qubit_depth = circuit.two_qubit_depth();
            RunOptions options;
            options.score_method = spec.score_method;
            options.strategy = spec.strategies[si].method;
            options.truncate = spec.strategies[si].truncated;
            options.a = spec.a;
            options.eps = spec.eps;
            options.eta = spec.eta;
            options.cap = spec.cap;
            options.shots = spec.shots;
            options.qic_shots = spec.qic_shots;
            options.seed = cell.seed;
            options.observable_weight = spec.observable_weight;
            try {
                MitigationReport report = run_ffzne(circuit, device, options);
                report.family = cell.family;
                report.reps = cell.reps;
                const std::string path = out_dir + "/" + cell.family + "_n" +
                                         std::to_string(cell.n) + "_r" + std::to_string(cell.reps) +
                                         "_" + row.strategy + ".json";
                write_json_file(path, report_to_json(report));
                row.report = std::move(report);
                if (!baseline_layout && row.report->triple) {
                    baseline_layout = &row.report->triple->l1;
                }
            } catch (const std::exception &e) {
                row.error = e.what();
            }
        }
        if (spec.run_baseline) {
            CampaignCellResult &row = results[ci * rows_per_cell + spec.strategies.size()];
            row.family = cell.family;
            row.n = cell.n;
            row.reps = cell.reps;
            row.strategy = "baseline-zne";
            if (!build_error.empty()) {
                row.error = build_error;
            } else if (!baseline_layout) {
                row.error = "no layout available for the folded baseline";
            } else {
                row.two_qubit_depth = circuit.two_qubit_depth();
                ZneOptions zne;
                zne.lambdas = spec.baseline_lambdas;
                zne.extrapolator = spec.baseline_extrapolator;
                zne.shots = spec.shots;
                zne.seed = cell.seed;
                zne.observable_weight = spec.observable_weight;
                try {
                    MitigationReport report =
                        run_folded_zne(circuit, device, *baseline_layout, zne);
                    report.family = cell.family;
                    report.reps = cell.reps;
                    const std::string path = out_dir + "/" + cell.family + "_n" +
                                             std::to_string(cell.n) + "_r" +
                                             std::to_string(cell.reps) + "_baseline.json";
                    write_json_file(path, report_to_json(report));
                    row.report = std::move(report);
                } catch (const std::exception &e) {
                    row.error = e.what();
                }
            }
        }
    };

    if (spec.jobs <= 1 || cells.size() <= 1) {
        for (size_t ci = 0; ci < cells.size(); ++ci) run_cell(ci);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        const uint32_t workers = std::min<uint32_t>(spec.jobs, cells.size());
        pool.reserve(workers);
        for (uint32_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (size_t ci = next.fetch_add(1); ci < cells.size(); ci = next.fetch_add(1)) {
                    run_cell(ci);
                }
            });
        }
        for (auto &t : pool) t.join();
    }

    CampaignResult result;
    result.cells = std::move(results);
    result.summary_csv_path = out_dir + "/summary.csv";
    std::ofstream csv(result.summary_csv_path);
    if (!csv) throw PipelineError("cannot write file: " + result.summary_csv_path);
    csv << "family,n,reps,d2q,strategy,score_method,layout_count,delta,probe_count,"
           "select_ms,estimate,ideal,deviation_pct,unmitigated_deviation_pct,executions,error\n";
    for (const auto &row : result.cells) {
        csv << row.family << ',' << row.n << ',' << row.reps << ',' << row.two_qubit_depth << ','
            << row.strategy << ',' << score_method_name(spec.score_method) << ',';
        if (row.report) {
            const MitigationReport &r = *row.report;
            csv << r.layout_counts.after_truncation << ',';
            if (r.triple) {
                csv << fmt(r.triple->delta) << ',';
                if (r.triple->method == SelectionMethod::Binary) {
                    csv << r.triple->probe_count;
                }
                csv << ',' << fmt(r.times.select_ms) << ',';
            } else {
                csv << ",,,";
            }
            csv << fmt(r.extrapolation.zero_noise_estimate) << ',' << opt_fmt(r.ideal) << ','
                << opt_fmt(r.deviation_pct) << ',' << opt_fmt(r.unmitigated_deviation_pct) << ','
                << r.executions << ',';
        } else {
            csv << ",,,,,,,,,";
        }
        csv << row.error << '\n';
    }
    return result;
}

void emit_plot_data(const MitigationReport &report, const std::string &out_dir) {
    std::filesystem::create_directories(out_dir);
    if (report.points.empty()) throw ValidationError("points: missing field");
    if (report.extrapolation.params.empty()) {
        throw ValidationError("extrapolation.params: missing field");
    }

    {
        std::ofstream out(out_dir + "/extrapolation.csv");
        if (!out) throw PipelineError("cannot write file: " + out_dir + "/extrapolation.csv");
        out << "kind,x,y\n";
        for (const auto &p : report.points) {
            out << "point," << fmt(p.x) << ',' << fmt(p.y) << '\n';
        }
        double x_max = 0.0;
        for (const auto &p : report.points) x_max = std::max(x_max, p.x);
        for (int i = 0; i < 50; ++i) {
            const double x = x_max * static_cast<double>(i) / 49.0;
            out << "fit," << fmt(x) << ',' << fmt(report.extrapolation.value_at(x)) << '\n';
        }
    }
    {
        std::ofstream out(out_dir + "/budget.csv");
        if (!out) throw PipelineError("cannot write file: " + out_dir + "/budget.csv");
        out << "method,executions\n";
        out << "ffzne," << execution_budget(BudgetMode::Ffzne) << '\n';
        out << "exhaustive-zne," << execution_budget(BudgetMode::ExhaustiveBaseline) << '\n';
    }
    {
        std::ofstream out(out_dir + "/score_scatter.csv");
        if (!out) throw PipelineError("cannot write file: " + out_dir + "/score_scatter.csv");
        out << "x,expval\n";
        for (const auto &p : report.points) {
            out << fmt(p.x) << ',' << fmt(p.y) << '\n';
        }
    }
}

Json campaign_spec_to_json(const CampaignSpec &spec) {
    Json j;
    if (spec.device_path) j["device"] = *spec.device_path;
    if (spec.device_gen) {
        const DeviceGenSpec &g = *spec.device_gen;
        Json dj;
        switch (g.topology.kind) {
            case TopologyKind::HeavyHex:
                dj["topology"] = "heavy-hex";
                dj["rows"] = g.topology.rows;
                dj["cols"] = g.topology.cols;
                break;
            case TopologyKind::Grid:
                dj["topology"] = "grid";
                dj["rows"] = g.topology.rows;
                dj["cols"] = g.topology.cols;
                break;
            case TopologyKind::Ring:
                dj["topology"] = "ring";
                dj["n"] = g.topology.n;
                break;
            case TopologyKind::Line:
                dj["topology"] = "line";
                dj["n"] = g.topology.n;
                break;
        }
        dj["eps2"] = g.eps2_median;
        dj["sigma"] = g.sigma2;
        dj["eps1"] = g.eps1_median;
        dj["sigma1"] = g.sigma1;
        dj["dead_fraction"] = g.dead_fraction;
        dj["seed"] = g.seed;
        j["device_gen"] = dj;
    }
    Json grids = Json::array();
    for (const auto &grid : spec.grids) {
        grids.push_back({{"family", grid.family}, {"n", grid.n}, {"reps", grid.reps}});
    }
    j["grids"] = grids;
    Json strategies = Json::array();
    for (const auto &s : spec.strategies) strategies.push_back(s.name());
    j["strategies"] = strategies;
    j["score_method"] = score_method_name(spec.score_method);
    j["a"] = spec.a;
    j["eps"] = spec.eps;
    j["eta"] = spec.eta;
    if (spec.cap) j["cap"] = *spec.cap;
    j["shots"] = spec.shots;
    j["qic_shots"] = spec.qic_shots;
    j["seed"] = spec.seed;
    j["observable_weight"] = spec.observable_weight;
    j["run_baseline"] = spec.run_baseline;
    j["baseline_lambdas"] = spec.baseline_lambdas;
    j["baseline_extrapolator"] =
        spec.baseline_extrapolator == Extrapolator::Linear ? "linear" : "exp";
    j["jobs"] = spec.jobs;
    return j;
}

CampaignSpec campaign_spec_from_json(const Json &j) {
    CampaignSpec spec;
    if (j.contains("device")) spec.device_path = j["device"].get<std::string>();
    if (j.contains("device_gen")) {
        const Json &dj = j["device_gen"];
        DeviceGenSpec g;
        const std::string topo = dj.value("topology", "heavy-hex");
        if (topo == "heavy-hex") {
            g.topology = TopologySpec::heavy_hex(dj.value("rows", 0u), dj.value("cols", 0u));
        } else if (topo == "grid") {
            g.topology = TopologySpec::grid(dj.value("rows", 0u), dj.value("cols", 0u));
        } else if (topo == "ring") {
            g.topology = TopologySpec::ring(dj.value("n", 0u));
        } else if (topo == "line") {
            g.topology = TopologySpec::line(dj.value("n", 0u));
        } else {
            throw ValidationError("device_gen.topology: unknown topology '" + topo + "'");
        }
        g.eps2_median = dj.value("eps2", 0.01);
        g.sigma2 = dj.value("sigma", 0.5);
        g.eps1_median = dj.value("eps1", 0.001);
        g.sigma1 = dj.value("sigma1", 0.5);
        g.dead_fraction = dj.value("dead_fraction", 0.0);
        g.seed = dj.value("seed", 0ull);
        spec.device_gen = g;
    }
    if (!j.contains("grids")) throw ValidationError("grids: missing field");
    for (const auto &gj : j["grids"]) {
        CircuitGrid grid;
        grid.family = gj.value("family", "");
        grid.n = gj.value("n", std::vector<uint32_t>{});
        grid.reps = gj.value("reps", std::vector<uint32_t>{});
        spec.grids.push_back(grid);
    }
    if (j.contains("strategies")) {
        spec.strategies.clear();
        for (const auto &sj : j["strategies"]) {
            spec.strategies.push_back(StrategySpec::from_name(sj.get<std::string>()));
        }
    }
    if (j.contains("score_method")) {
        spec.score_method = score_method_from_name(j["score_method"].get<std::string>());
    }
    spec.a = j.value("a", 0.1);
    spec.eps = j.value("eps", 0.0);
    spec.eta = j.value("eta", 10u);
    if (j.contains("cap")) spec.cap = j["cap"].get<uint64_t>();
    spec.shots = j.value("shots", 0ull);
    spec.qic_shots = j.value("qic_shots", 4096u);
    spec.seed = j.value("seed", 0ull);
    spec.observable_weight = j.value("observable_weight", 1u);
    spec.run_baseline = j.value("run_baseline", false);
    if (j.contains("baseline_lambdas")) {
        spec.baseline_lambdas = j["baseline_lambdas"].get<std::vector<double>>();
    }
    const std::string ext = j.value("baseline_extrapolator", "linear");
    spec.baseline_extrapolator = ext == "exp" ? Extrapolator::Exponential : Extrapolator::Linear;
    spec.jobs = j.value("jobs", 1u);
    return spec;
}

}  // namespace ffzne
