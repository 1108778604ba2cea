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

#include "ffzne/cli_app.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ffzne/campaign.hpp"
#include "ffzne/errors.hpp"
#include "ffzne/json_io.hpp"
#include "ffzne/rng.hpp"

namespace ffzne {

namespace {

std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

uint32_t observable_weight_from_name(const std::string &name) {
    if (name == "zw1") return 1;
    if (name == "zw2") return 2;
    if (name == "zw3") return 3;
    throw ValidationError("unknown observable '" + name + "' (expected zw1|zw2|zw3)");
}

struct CliState {
    std::ostream &out;
    std::ostream &err;
    uint64_t seed = 0;
    uint32_t jobs = 1;
    std::string format = "json";
};

// A command-local --seed wins over the global one.
uint64_t cmd_seed(uint64_t local, const CliState &state) {
    return local != 0 ? local : state.seed;
}

Layout layout_argument(const std::string &layouts_path, const std::string &layout_arg,
                       int64_t layout_index) {
    if (!layouts_path.empty()) {
        const LayoutSet set = layouts_from_json(read_json_file(layouts_path));
        if (layout_index < 0 || static_cast<size_t>(layout_index) >= set.layouts.size()) {
            throw ValidationError("--layout: index out of range for " + layouts_path);
        }
        return set.layouts[static_cast<size_t>(layout_index)];
    }
    if (layout_arg.empty()) {
        throw ValidationError("--layout: give a comma-separated mapping or --layouts plus an index");
    }
    Layout layout;
    std::stringstream ss(layout_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            layout.mapping.push_back(static_cast<uint32_t>(std::stoul(tok)));
        } catch (...) {
            throw ValidationError("--layout: bad qubit index '" + tok + "'");
        }
    }
    return layout;
}

void add_device_gen(CLI::App *cmd, CliState &state) {
    auto topology = std::make_shared<std::string>("heavy-hex");
    auto rows = std::make_shared<uint32_t>(0);
    auto cols = std::make_shared<uint32_t>(0);
    auto n = std::make_shared<uint32_t>(0);
    auto eps2 = std::make_shared<double>(0.01);
    auto sigma = std::make_shared<double>(0.5);
    auto eps1 = std::make_shared<double>(0.001);
    auto sigma1 = std::make_shared<double>(0.5);
    auto dead = std::make_shared<double>(0.0);
    auto seed = std::make_shared<uint64_t>(0);
    auto name = std::make_shared<std::string>();
    auto output = std::make_shared<std::string>();
    cmd->add_option("--topology", *topology, "heavy-hex|ring|grid|line")->capture_default_str();
    cmd->add_option("--rows", *rows, "rows (heavy-hex, grid)");
    cmd->add_option("--cols", *cols, "cols (heavy-hex, grid)");
    cmd->add_option("--n", *n, "qubit count (ring, line)");
    cmd->add_option("--eps2", *eps2, "two-qubit error median")->capture_default_str();
    cmd->add_option("--sigma", *sigma, "two-qubit log-normal dispersion")->capture_default_str();
    cmd->add_option("--eps1", *eps1, "one-qubit error median")->capture_default_str();
    cmd->add_option("--sigma1", *sigma1, "one-qubit log-normal dispersion")->capture_default_str();
    cmd->add_option("--dead-fraction", *dead, "fraction of edges forced dead")
        ->capture_default_str();
    cmd->add_option("--seed", *seed, "generation seed");
    cmd->add_option("--name", *name, "device name override");
    cmd->add_option("-o,--output", *output, "output device JSON")->required();
    cmd->callback([&state, topology, rows, cols, n, eps2, sigma, eps1, sigma1, dead, seed, name,
                   output] {
        DeviceGenSpec spec;
        if (*topology == "heavy-hex") spec.topology = TopologySpec::heavy_hex(*rows, *cols);
        else if (*topology == "ring") spec.topology = TopologySpec::ring(*n);
        else if (*topology == "grid") spec.topology = TopologySpec::grid(*rows, *cols);
        else if (*topology == "line") spec.topology = TopologySpec::line(*n);
        else throw ValidationError("--topology: unknown topology '" + *topology + "'");
        spec.eps2_median = *eps2;
        spec.sigma2 = *sigma;
        spec.eps1_median = *eps1;
        spec.sigma1 = *sigma1;
        spec.dead_fraction = *dead;
        spec.seed = cmd_seed(*seed, state);
        spec.name = *name;
        save_device(generate_device(spec), *output);
        state.out << *output << "\n";
    });
}

void add_device_validate(CLI::App *cmd, CliState &state) {
    auto input = std::make_shared<std::string>();
    cmd->add_option("-i,--input", *input, "device JSON to validate")->required();
    cmd->callback([&state, input] {
        const DeviceModel model = load_device(*input);
        state.out << "ok: " << model.name << " (" << model.num_qubits << " qubits, "
                  << model.edges.size() << " edges)\n";
    });
}

void add_circuit_gen(CLI::App *cmd, CliState &state) {
    auto family = std::make_shared<std::string>();
    auto n = std::make_shared<uint32_t>(0);
    auto reps = std::make_shared<uint32_t>(1);
    auto seed = std::make_shared<uint64_t>(0);
    auto clifford = std::make_shared<bool>(false);
    auto output = std::make_shared<std::string>();
    cmd->add_option("--family", *family, "su2|hamsim|brickwork")->required();
    cmd->add_option("--n", *n, "qubit count")->required();
    cmd->add_option("--reps", *reps, "repetitions / trotter steps / brickwork depth")
        ->capture_default_str();
    cmd->add_option("--seed", *seed, "angle / block seed");
    cmd->add_flag("--cliffordize", *clifford, "snap rotations to Clifford angles");
    cmd->add_option("-o,--output", *output, "output circuit JSON")->required();
    cmd->callback([&state, family, n, reps, seed, clifford, output] {
        Circuit c;
        const uint64_t s = cmd_seed(*seed, state);
        if (*family == "su2") c = gen_efficient_su2(*n, *reps, s);
        else if (*family == "hamsim") c = gen_hamiltonian_sim(*n, *reps);
        else if (*family == "brickwork") c = gen_mirrored_brickwork(*n, *reps, s);
        else throw ValidationError("--family: unknown family '" + *family + "'");
        if (*clifford) c = cliffordize(c);
        write_json_file(*output, circuit_to_json(c));
        state.out << *output << "\n";
    });
}

void add_circuit_cliffordize(CLI::App *cmd, CliState &state) {
    auto input = std::make_shared<std::string>();
    auto output = std::make_shared<std::string>();
    cmd->add_option("-i,--input", *input, "input circuit JSON")->required();
    cmd->add_option("-o,--output", *output, "output circuit JSON")->required();
    cmd->callback([&state, input, output] {
        const Circuit c = circuit_from_json(read_json_file(*input));
        write_json_file(*output, circuit_to_json(cliffordize(c)));
        state.out << *output << "\n";
    });
}

void add_layouts_enum(CLI::App *cmd, CliState &state) {
    auto device = std::make_shared<std::string>();
    auto circuit = std::make_shared<std::string>();
    auto cap = std::make_shared<uint64_t>(0);
    auto eta = std::make_shared<uint32_t>(0);
    auto output = std::make_shared<std::string>();
    cmd->add_option("--device", *device, "device JSON")->required();
    cmd->add_option("--circuit", *circuit, "circuit JSON")->required();
    cmd->add_option("--cap", *cap, "stop enumeration after this many layouts");
    cmd->add_option("--eta", *eta, "apply qubit-overlap truncation with this threshold");
    cmd->add_option("-o,--output", *output, "output layouts JSON")->required();
    cmd->callback([&state, device, circuit, cap, eta, output] {
        const DeviceModel dev = load_device(*device);
        const Circuit c = circuit_from_json(read_json_file(*circuit));
        LayoutSet set = enumerate_layouts(interaction_graph(c), dev,
                                          *cap > 0 ? std::optional<uint64_t>(*cap) : std::nullopt);
        set.circuit_hash = circuit_hash(c);
        if (*eta > 0) set = truncate_by_overlap(set, *eta);
        write_json_file(*output, layouts_to_json(set));
        state.out << set.layouts.size() << " layouts -> " << *output << "\n";
    });
}

void add_layouts_score(CLI::App *cmd, CliState &state) {
    auto method = std::make_shared<std::string>("fp");
    auto shots = std::make_shared<uint32_t>(4096);
    auto seed = std::make_shared<uint64_t>(0);
    auto device = std::make_shared<std::string>();
    auto circuit = std::make_shared<std::string>();
    auto layouts = std::make_shared<std::string>();
    auto output = std::make_shared<std::string>();
    cmd->add_option("--method", *method, "fp|qic")->capture_default_str();
    cmd->add_option("--shots", *shots, "QIC sampling shots")->capture_default_str();
    cmd->add_option("--seed", *seed, "QIC sampling seed");
    cmd->add_option("--device", *device, "device JSON")->required();
    cmd->add_option("--circuit", *circuit, "circuit JSON")->required();
    cmd->add_option("--layouts", *layouts, "layouts JSON")->required();
    cmd->add_option("-o,--output", *output, "output scores JSON")->required();
    cmd->callback([&state, method, shots, seed, device, circuit, layouts, output] {
        const DeviceModel dev = load_device(*device);
        const Circuit c = circuit_from_json(read_json_file(*circuit));
        const LayoutSet set = layouts_from_json(read_json_file(*layouts));
        const ScoreTable table = score_layouts(c, set, dev, score_method_from_name(*method),
                                               {*shots, cmd_seed(*seed, state)});
        write_json_file(*output, scores_to_json(table));
        state.out << table.entries.size() << " scores -> " << *output << "\n";
    });
}

void add_layouts_select(CLI::App *cmd, CliState &state) {
    auto strategy = std::make_shared<std::string>("exhaustive");
    auto a = std::make_shared<double>(0.1);
    auto eps = std::make_shared<double>(0.0);
    auto scores = std::make_shared<std::string>();
    auto filter = std::make_shared<bool>(false);
    auto output = std::make_shared<std::string>();
    cmd->add_option("--strategy", *strategy, "exhaustive|binary")->capture_default_str();
    cmd->add_option("--a", *a, "exhaustive trade-off parameter")->capture_default_str();
    cmd->add_option("--eps", *eps, "binary early-stop tolerance")->capture_default_str();
    cmd->add_flag("--filter", *filter, "apply score filtering before selection");
    cmd->add_option("--scores", *scores, "scores JSON")->required();
    cmd->add_option("-o,--output", *output, "output triple JSON")->required();
    cmd->callback([&state, strategy, a, eps, scores, filter, output] {
        ScoreTable table = scores_from_json(read_json_file(*scores));
        if (*filter) table = filter_scores(table);
        const auto start = std::chrono::steady_clock::now();
        const SelectionTriple triple = selection_method_from_name(*strategy) ==
                                               SelectionMethod::Exhaustive
                                           ? select_exhaustive(table, *a)
                                           : select_binary(table, *eps);
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        write_json_file(*output, triple_to_json(triple, ms));
        state.out << "delta " << fmt(triple.delta) << " -> " << *output << "\n";
    });
}

void add_expval(CLI::App *cmd, CliState &state) {
    auto circuit = std::make_shared<std::string>();
    auto device = std::make_shared<std::string>();
    auto layouts = std::make_shared<std::string>();
    auto layout_index = std::make_shared<int64_t>(-1);
    auto layout_arg = std::make_shared<std::string>();
    auto observable = std::make_shared<std::string>("zw1");
    auto shots = std::make_shared<uint64_t>(0);
    auto seed = std::make_shared<uint64_t>(0);
    auto output = std::make_shared<std::string>();
    cmd->add_option("--circuit", *circuit, "circuit JSON")->required();
    cmd->add_option("--device", *device, "device JSON")->required();
    cmd->add_option("--layouts", *layouts, "layouts JSON (with --layout index)");
    cmd->add_option("--layout", *layout_index, "layout index into --layouts");
    cmd->add_option("--layout-map", *layout_arg, "explicit comma-separated mapping");
    cmd->add_option("--observable", *observable, "zw1|zw2|zw3")->capture_default_str();
    cmd->add_option("--shots", *shots, "0 = exact mode");
    cmd->add_option("--seed", *seed, "sampling seed");
    cmd->add_option("-o,--output", *output, "output JSON")->required();
    cmd->callback([&state, circuit, device, layouts, layout_index, layout_arg, observable, shots,
                   seed, output] {
        const Circuit c = circuit_from_json(read_json_file(*circuit));
        const DeviceModel dev = load_device(*device);
        const Layout layout = layout_argument(*layouts, *layout_arg, *layout_index);
        const PauliObservable obs =
            make_observable(c.num_qubits, observable_weight_from_name(*observable));
        const ExpvalEstimate e =
            *shots == 0
                ? exact_expval(c, layout, dev, NoiseModel::per_gate(), obs)
                : sampled_expval(c, layout, dev, NoiseModel::per_gate(), obs, *shots,
                                 cmd_seed(*seed, state));
        Json j;
        j["mean"] = e.mean;
        j["stderr"] = e.stderr_;
        j["shots"] = e.shots;
        j["mode"] = e.exact ? "exact" : "sampled";
        write_json_file(*output, j);
        state.out << fmt(e.mean) << " -> " << *output << "\n";
    });
}

void add_run_ffzne(CLI::App *cmd, CliState &state) {
    auto circuit = std::make_shared<std::string>();
    auto device = std::make_shared<std::string>();
    auto score = std::make_shared<std::string>("fp");
    auto strategy = std::make_shared<std::string>("binary");
    auto a = std::make_shared<double>(0.1);
    auto eps = std::make_shared<double>(0.0);
    auto eta = std::make_shared<uint32_t>(10);
    auto no_truncate = std::make_shared<bool>(false);
    auto cap = std::make_shared<uint64_t>(0);
    auto shots = std::make_shared<uint64_t>(0);
    auto qic_shots = std::make_shared<uint32_t>(4096);
    auto seed = std::make_shared<uint64_t>(0);
    auto observable = std::make_shared<std::string>("zw1");
    auto output = std::make_shared<std::string>();
    cmd->add_option("--circuit", *circuit, "circuit JSON")->required();
    cmd->add_option("--device", *device, "device JSON")->required();
    cmd->add_option("--score", *score, "fp|qic")->capture_default_str();
    cmd->add_option("--strategy", *strategy, "exhaustive|binary")->capture_default_str();
    cmd->add_option("--a", *a, "exhaustive trade-off parameter")->capture_default_str();
    cmd->add_option("--eps", *eps, "binary early-stop tolerance")->capture_default_str();
    cmd->add_option("--eta", *eta, "overlap-truncation threshold")->capture_default_str();
    cmd->add_flag("--no-truncate", *no_truncate, "score every enumerated layout");
    cmd->add_option("--cap", *cap, "enumeration cap");
    cmd->add_option("--shots", *shots, "execution shots, 0 = exact");
    cmd->add_option("--qic-shots", *qic_shots, "QIC scoring shots")->capture_default_str();
    cmd->add_option("--seed", *seed, "pipeline seed");
    cmd->add_option("--observable", *observable, "zw1|zw2|zw3")->capture_default_str();
    cmd->add_option("-o,--output", *output, "output report JSON")->required();
    cmd->callback([&state, circuit, device, score, strategy, a, eps, eta, no_truncate, cap, shots,
                   qic_shots, seed, observable, output] {
        const Circuit c = circuit_from_json(read_json_file(*circuit));
        const DeviceModel dev = load_device(*device);
        RunOptions options;
        options.score_method = score_method_from_name(*score);
        options.strategy = selection_method_from_name(*strategy);
        options.a = *a;
        options.eps = *eps;
        options.eta = *eta;
        options.truncate = !*no_truncate;
        if (*cap > 0) options.cap = *cap;
        options.shots = *shots;
        options.qic_shots = *qic_shots;
        options.seed = cmd_seed(*seed, state);
        options.observable_weight = observable_weight_from_name(*observable);
        const MitigationReport report = run_ffzne(c, dev, options);
        write_json_file(*output, report_to_json(report));
        state.out << "estimate " << fmt(report.extrapolation.zero_noise_estimate) << " -> "
                  << *output << "\n";
    });
}

void add_run_zne(CLI::App *cmd, CliState &state) {
    auto circuit = std::make_shared<std::string>();
    auto device = std::make_shared<std::string>();
    auto lambdas = std::make_shared<std::string>("1,3,5");
    auto extrapolator = std::make_shared<std::string>("linear");
    auto layouts = std::make_shared<std::string>();
    auto layout_index = std::make_shared<int64_t>(-1);
    auto layout_arg = std::make_shared<std::string>();
    auto shots = std::make_shared<uint64_t>(0);
    auto seed = std::make_shared<uint64_t>(0);
    auto observable = std::make_shared<std::string>("zw1");
    auto output = std::make_shared<std::string>();
    cmd->add_option("--circuit", *circuit, "circuit JSON")->required();
    cmd->add_option("--device", *device, "device JSON")->required();
    cmd->add_option("--lambdas", *lambdas, "comma-separated noise factors")->capture_default_str();
    cmd->add_option("--extrapolator", *extrapolator, "linear|exp")->capture_default_str();
    cmd->add_option("--layouts", *layouts, "layouts JSON (with --layout index)");
    cmd->add_option("--layout", *layout_index, "layout index into --layouts");
    cmd->add_option("--layout-map", *layout_arg, "explicit comma-separated mapping");
    cmd->add_option("--shots", *shots, "execution shots, 0 = exact");
    cmd->add_option("--seed", *seed, "sampling seed");
    cmd->add_option("--observable", *observable, "zw1|zw2|zw3")->capture_default_str();
    cmd->add_option("-o,--output", *output, "output report JSON")->required();
    cmd->callback([&state, circuit, device, lambdas, extrapolator, layouts, layout_index,
                   layout_arg, shots, seed, observable, output] {
        const Circuit c = circuit_from_json(read_json_file(*circuit));
        const DeviceModel dev = load_device(*device);
        Layout layout;
        if (!layouts->empty() || !layout_arg->empty()) {
            layout = layout_argument(*layouts, *layout_arg, *layout_index);
        } else {
            // Default execution layout: the best-scored embedding.
            LayoutSet set = enumerate_layouts(interaction_graph(c), dev, 100000);
            if (set.layouts.empty()) {
                throw PipelineError("circuit does not embed into the device");
            }
            const ScoreTable table =
                score_layouts(c, set, dev, ScoreMethod::FidelityProduct);
            layout = table.entries.front().layout;
        }
        ZneOptions options;
        options.lambdas.clear();
        std::stringstream ss(*lambdas);
        std::string tok;
        while (std::getline(ss, tok, ',')) options.lambdas.push_back(std::stod(tok));
        if (*extrapolator == "linear") options.extrapolator = Extrapolator::Linear;
        else if (*extrapolator == "exp") options.extrapolator = Extrapolator::Exponential;
        else throw ValidationError("--extrapolator: expected linear|exp");
        options.shots = *shots;
        options.seed = cmd_seed(*seed, state);
        options.observable_weight = observable_weight_from_name(*observable);
        const MitigationReport report = run_folded_zne(c, dev, layout, options);
        write_json_file(*output, report_to_json(report));
        state.out << "estimate " << fmt(report.extrapolation.zero_noise_estimate) << " -> "
                  << *output << "\n";
    });
}

void add_campaign_run(CLI::App *cmd, CliState &state) {
    auto config = std::make_shared<std::string>();
    auto output = std::make_shared<std::string>();
    cmd->add_option("--config", *config, "campaign spec JSON")->required();
    cmd->add_option("-o,--output", *output, "output directory")->required();
    cmd->callback([&state, config, output] {
        CampaignSpec spec = campaign_spec_from_json(read_json_file(*config));
        if (state.seed != 0) spec.seed = state.seed;
        if (state.jobs > 1) spec.jobs = state.jobs;
        const CampaignResult result = run_campaign(spec, *output);
        size_t failures = 0;
        for (const auto &cell : result.cells) failures += cell.error.empty() ? 0 : 1;
        state.out << result.cells.size() << " rows (" << failures << " failed) -> "
                  << result.summary_csv_path << "\n";
    });
}

void add_report_csv(CLI::App *cmd, CliState &state) {
    auto inputs = std::make_shared<std::vector<std::string>>();
    auto output = std::make_shared<std::string>();
    cmd->add_option("-i,--input", *inputs, "report JSON files")->required();
    cmd->add_option("-o,--output", *output, "output CSV")->required();
    cmd->callback([&state, inputs, output] {
        std::ofstream out(*output);
        if (!out) throw PipelineError("cannot write file: " + *output);
        out << "family,n,reps,method,score_method,estimate,ideal,deviation_pct\n";
        for (const auto &path : *inputs) {
            const MitigationReport r = report_from_json(read_json_file(path));
            out << csv_escape(r.family) << ',' << r.n << ',' << r.reps << ',' << r.method << ','
                << r.score_method << ',' << fmt(r.extrapolation.zero_noise_estimate) << ','
                << (r.ideal ? fmt(*r.ideal) : "") << ','
                << (r.deviation_pct ? fmt(*r.deviation_pct) : "") << '\n';
        }
        state.out << inputs->size() << " reports -> " << *output << "\n";
    });
}

void add_report_plotdata(CLI::App *cmd, CliState &state) {
    auto input = std::make_shared<std::string>();
    auto output = std::make_shared<std::string>();
    cmd->add_option("-i,--input", *input, "report JSON")->required();
    cmd->add_option("-o,--output", *output, "output directory")->required();
    cmd->callback([&state, input, output] {
        const MitigationReport report = report_from_json(read_json_file(*input));
        emit_plot_data(report, *output);
        state.out << "plot data -> " << *output << "\n";
    });
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CliState state{out, err};
    CLI::App app{"Folding-free zero-noise extrapolation toolkit"};
    app.require_subcommand(1);
    app.add_option("--seed", state.seed, "global seed (commands may override)");
    app.add_option("--jobs", state.jobs, "worker threads for campaigns");
    app.add_option("--format", state.format, "json|csv")->capture_default_str();

    auto *device = app.add_subcommand("device", "device model commands");
    device->require_subcommand(1);
    add_device_gen(device->add_subcommand("gen", "generate a synthetic device"), state);
    add_device_validate(device->add_subcommand("validate", "validate a device file"), state);

    auto *circuit = app.add_subcommand("circuit", "circuit commands");
    circuit->require_subcommand(1);
    add_circuit_gen(circuit->add_subcommand("gen", "generate a benchmark circuit"), state);
    add_circuit_cliffordize(circuit->add_subcommand("cliffordize", "snap to Clifford angles"),
                            state);

    auto *layouts = app.add_subcommand("layouts", "layout commands");
    layouts->require_subcommand(1);
    add_layouts_enum(layouts->add_subcommand("enum", "enumerate isomorphic layouts"), state);
    add_layouts_score(layouts->add_subcommand("score", "score layouts"), state);
    add_layouts_select(layouts->add_subcommand("select", "select the layout triple"), state);

    add_expval(app.add_subcommand("expval", "expectation value on one layout"), state);

    auto *run = app.add_subcommand("run", "end-to-end mitigation runs");
    run->require_subcommand(1);
    add_run_ffzne(run->add_subcommand("ffzne", "folding-free ZNE pipeline"), state);
    add_run_zne(run->add_subcommand("zne", "fold-based ZNE baseline"), state);

    auto *campaign = app.add_subcommand("campaign", "experiment campaigns");
    campaign->require_subcommand(1);
    add_campaign_run(campaign->add_subcommand("run", "run a campaign grid"), state);

    auto *report = app.add_subcommand("report", "report post-processing");
    report->require_subcommand(1);
    add_report_csv(report->add_subcommand("csv", "flatten reports to CSV"), state);
    add_report_plotdata(report->add_subcommand("plotdata", "emit plot-data CSV files"), state);

    // FFZNE_JOBS overrides --jobs.
    if (const char *env_jobs = std::getenv("FFZNE_JOBS")) {
        try {
            state.jobs = static_cast<uint32_t>(std::stoul(env_jobs));
        } catch (...) {
            // ignore malformed env override
        }
    }

    std::vector<std::string> argv_storage;
    argv_storage.push_back("ffzne");
    for (const auto &a : args) argv_storage.push_back(a);
    std::vector<const char *> argv;
    for (const auto &a : argv_storage) argv.push_back(a.c_str());

    auto emit_error = [&err](const std::string &type, const std::string &message) {
        Json j;
        j["error"] = {{"type", type}, {"message", message}};
        err << j.dump() << "\n";
    };

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        return 0;
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        emit_error("validation", e.what());
        return 2;
    } catch (const ValidationError &e) {
        emit_error("validation", e.what());
        return 2;
    } catch (const PipelineError &e) {
        emit_error("pipeline", e.what());
        return 3;
    } catch (const std::exception &e) {
        emit_error("internal", e.what());
        return 3;
    }
}

}  // namespace ffzne
