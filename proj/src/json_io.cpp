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

#include "ffzne/json_io.hpp"

#include <fstream>

#include "ffzne/errors.hpp"

namespace ffzne {

namespace {

const Json &require(const Json &j, const char *field) {
    auto it = j.find(field);
    if (it == j.end()) {
        throw ValidationError(std::string(field) + ": missing field");
    }
    return *it;
}

double require_number(const Json &j, const char *field) {
    const Json &v = require(j, field);
    if (!v.is_number()) throw ValidationError(std::string(field) + ": expected a number");
    return v.get<double>();
}

uint64_t require_uint(const Json &j, const char *field) {
    const Json &v = require(j, field);
    if (!v.is_number_integer() || v.get<int64_t>() < 0) {
        throw ValidationError(std::string(field) + ": expected a non-negative integer");
    }
    return v.get<uint64_t>();
}

std::string require_string(const Json &j, const char *field) {
    const Json &v = require(j, field);
    if (!v.is_string()) throw ValidationError(std::string(field) + ": expected a string");
    return v.get<std::string>();
}

std::string edge_label(Edge e) {
    return std::to_string(e.first) + "-" + std::to_string(e.second);
}

Edge parse_edge_label(const std::string &label) {
    const auto dash = label.find('-');
    if (dash == std::string::npos) {
        throw ValidationError("two_qubit_error: bad edge key '" + label + "'");
    }
    try {
        const uint32_t a = static_cast<uint32_t>(std::stoul(label.substr(0, dash)));
        const uint32_t b = static_cast<uint32_t>(std::stoul(label.substr(dash + 1)));
        if (make_edge(a, b) != Edge{a, b}) {
            throw ValidationError("two_qubit_error: edge key '" + label +
                                  "' is not canonical min-max");
        }
        return {a, b};
    } catch (const std::invalid_argument &) {
        throw ValidationError("two_qubit_error: bad edge key '" + label + "'");
    } catch (const std::out_of_range &) {
        throw ValidationError("two_qubit_error: bad edge key '" + label + "'");
    }
}

Layout layout_from_array(const Json &arr, const char *field) {
    if (!arr.is_array()) throw ValidationError(std::string(field) + ": expected an array");
    Layout l;
    for (const auto &v : arr) {
        if (!v.is_number_integer() || v.get<int64_t>() < 0) {
            throw ValidationError(std::string(field) + ": expected non-negative qubit indices");
        }
        l.mapping.push_back(v.get<uint32_t>());
    }
    return l;
}

}  // namespace

Json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void write_json_file(const std::string &path, const Json &value) {
    std::ofstream out(path);
    if (!out) throw PipelineError("cannot write file: " + path);
    out << value.dump(2) << "\n";
}

Json device_to_json(const DeviceModel &model) {
    Json j;
    j["name"] = model.name;
    j["num_qubits"] = model.num_qubits;
    Json edges = Json::array();
    Json errors2 = Json::object();
    for (const auto &e : model.edges) {
        edges.push_back({e.first, e.second});
        errors2[edge_label(e)] = model.two_qubit_error.at(edge_key(e));
    }
    j["edges"] = edges;
    j["two_qubit_error"] = errors2;
    Json errors1 = Json::object();
    for (uint32_t q = 0; q < model.num_qubits; ++q) {
        errors1[std::to_string(q)] = model.one_qubit_error[q];
    }
    j["one_qubit_error"] = errors1;
    return j;
}

DeviceModel device_from_json(const Json &j) {
    DeviceModel model;
    model.name = require_string(j, "name");
    model.num_qubits = static_cast<uint32_t>(require_uint(j, "num_qubits"));
    const Json &edges = require(j, "edges");
    if (!edges.is_array()) throw ValidationError("edges: expected an array");
    for (const auto &e : edges) {
        if (!e.is_array() || e.size() != 2) {
            throw ValidationError("edges: expected [i, j] pairs");
        }
        model.edges.push_back(make_edge(e[0].get<uint32_t>(), e[1].get<uint32_t>()));
    }
    std::sort(model.edges.begin(), model.edges.end());
    const Json &errors2 = require(j, "two_qubit_error");
    if (!errors2.is_object()) throw ValidationError("two_qubit_error: expected an object");
    for (auto it = errors2.begin(); it != errors2.end(); ++it) {
        if (!it.value().is_number()) {
            throw ValidationError("two_qubit_error: expected a number for key '" + it.key() + "'");
        }
        model.two_qubit_error[edge_key(parse_edge_label(it.key()))] = it.value().get<double>();
    }
    const Json &errors1 = require(j, "one_qubit_error");
    if (!errors1.is_object()) throw ValidationError("one_qubit_error: expected an object");
    model.one_qubit_error.assign(model.num_qubits, -1.0);
    for (auto it = errors1.begin(); it != errors1.end(); ++it) {
        uint32_t q = 0;
        try {
            q = static_cast<uint32_t>(std::stoul(it.key()));
        } catch (...) {
            throw ValidationError("one_qubit_error: bad qubit key '" + it.key() + "'");
        }
        if (q >= model.num_qubits) {
            throw ValidationError("one_qubit_error: qubit " + it.key() + " out of range");
        }
        if (!it.value().is_number()) {
            throw ValidationError("one_qubit_error: expected a number for qubit " + it.key());
        }
        model.one_qubit_error[q] = it.value().get<double>();
    }
    for (uint32_t q = 0; q < model.num_qubits; ++q) {
        if (model.one_qubit_error[q] < 0.0) {
            throw ValidationError("one_qubit_error: missing entry for qubit " + std::to_string(q));
        }
    }
    return model;
}

Json circuit_to_json(const Circuit &circuit) {
    Json j;
    j["num_qubits"] = circuit.num_qubits;
    Json gates = Json::array();
    for (const auto &g : circuit.gates) {
        Json gate;
        gate["kind"] = gate_name(g.kind);
        Json qubits = Json::array();
        for (uint32_t i = 0; i < gate_arity(g.kind); ++i) qubits.push_back(g.qubits[i]);
        gate["qubits"] = qubits;
        if (is_rotation(g.kind)) gate["theta"] = g.theta;
        if (g.frame) gate["frame"] = true;
        gates.push_back(gate);
    }
    j["gates"] = gates;
    return j;
}

Circuit circuit_from_json(const Json &j) {
    Circuit circuit;
    circuit.num_qubits = static_cast<uint32_t>(require_uint(j, "num_qubits"));
    const Json &gates = require(j, "gates");
    if (!gates.is_array()) throw ValidationError("gates: expected an array");
    for (const auto &gj : gates) {
        Gate g;
        g.kind = gate_kind_from_name(require_string(gj, "kind"));
        const Json &qubits = require(gj, "qubits");
        if (!qubits.is_array() || qubits.size() != gate_arity(g.kind)) {
            throw ValidationError("gates.qubits: wrong arity for '" + gate_name(g.kind) + "'");
        }
        for (size_t i = 0; i < qubits.size(); ++i) g.qubits[i] = qubits[i].get<uint32_t>();
        if (is_rotation(g.kind)) g.theta = require_number(gj, "theta");
        if (gj.contains("frame")) g.frame = gj["frame"].get<bool>();
        circuit.gates.push_back(g);
    }
    circuit.validate();
    return circuit;
}

Json layouts_to_json(const LayoutSet &set) {
    Json j;
    j["device"] = set.device_name;
    j["circuit_hash"] = set.circuit_hash;
    j["truncated"] = set.truncated;
    Json layouts = Json::array();
    for (const auto &l : set.layouts) layouts.push_back(l.mapping);
    j["layouts"] = layouts;
    return j;
}

LayoutSet layouts_from_json(const Json &j) {
    LayoutSet set;
    set.device_name = require_string(j, "device");
    set.circuit_hash = require_string(j, "circuit_hash");
    const Json &truncated = require(j, "truncated");
    if (!truncated.is_boolean()) throw ValidationError("truncated: expected a boolean");
    set.truncated = truncated.get<bool>();
    const Json &layouts = require(j, "layouts");
    if (!layouts.is_array()) throw ValidationError("layouts: expected an array");
    for (const auto &lj : layouts) set.layouts.push_back(layout_from_array(lj, "layouts"));
    return set;
}

Json scores_to_json(const ScoreTable &table) {
    Json j;
    j["method"] = score_method_name(table.method);
    Json entries = Json::array();
    for (const auto &e : table.entries) {
        entries.push_back({{"layout", e.layout.mapping}, {"score", e.score}});
    }
    j["entries"] = entries;
    j["mean"] = table.mean;
    j["stddev"] = table.stddev;
    return j;
}

ScoreTable scores_from_json(const Json &j) {
    ScoreTable table;
    table.method = score_method_from_name(require_string(j, "method"));
    const Json &entries = require(j, "entries");
    if (!entries.is_array()) throw ValidationError("entries: expected an array");
    for (const auto &ej : entries) {
        ScoredLayout e;
        e.layout = layout_from_array(require(ej, "layout"), "entries.layout");
        e.score = require_number(ej, "score");
        table.entries.push_back(e);
    }
    table.mean = require_number(j, "mean");
    table.stddev = require_number(j, "stddev");
    return table;
}

Json triple_to_json(const SelectionTriple &triple, double wall_time_ms) {
    Json j;
    j["method"] = selection_method_name(triple.method);
    j["index_base"] = 1;
    j["i"] = triple.i_index;
    j["j"] = triple.j_index;
    j["scores"] = {{"s1", triple.s1}, {"si", triple.si}, {"sj", triple.sj}};
    j["layouts"] = {{"l1", triple.l1.mapping}, {"li", triple.li.mapping}, {"lj", triple.lj.mapping}};
    j["delta"] = triple.delta;
    if (triple.method == SelectionMethod::Exhaustive) {
        j["cost"] = triple.cost;
        j["j_norm"] = triple.j_norm;
        j["delta_norm"] = triple.delta_norm;
    }
    if (triple.method == SelectionMethod::Binary) j["probe_count"] = triple.probe_count;
    j["wall_time_ms"] = wall_time_ms;
    return j;
}

SelectionTriple triple_from_json(const Json &j) {
    SelectionTriple t;
    t.method = selection_method_from_name(require_string(j, "method"));
    t.i_index = static_cast<uint32_t>(require_uint(j, "i"));
    t.j_index = static_cast<uint32_t>(require_uint(j, "j"));
    const Json &scores = require(j, "scores");
    t.s1 = require_number(scores, "s1");
    t.si = require_number(scores, "si");
    t.sj = require_number(scores, "sj");
    const Json &layouts = require(j, "layouts");
    t.l1 = layout_from_array(require(layouts, "l1"), "layouts.l1");
    t.li = layout_from_array(require(layouts, "li"), "layouts.li");
    t.lj = layout_from_array(require(layouts, "lj"), "layouts.lj");
    t.delta = require_number(j, "delta");
    if (t.method == SelectionMethod::Exhaustive) {
        t.cost = require_number(j, "cost");
        t.j_norm = require_number(j, "j_norm");
        t.delta_norm = require_number(j, "delta_norm");
    }
    if (t.method == SelectionMethod::Binary) {
        t.probe_count = static_cast<uint32_t>(require_uint(j, "probe_count"));
    }
    return t;
}

namespace {

Json extrapolation_to_json(const Extrapolation &e) {
    Json j;
    switch (e.model) {
        case FitModel::Linear: j["model"] = "linear"; break;
        case FitModel::Exponential: j["model"] = "exponential"; break;
        case FitModel::Richardson2: j["model"] = "richardson2"; break;
    }
    j["params"] = e.params;
    j["zero_noise_estimate"] = e.zero_noise_estimate;
    j["residuals"] = e.residuals;
    j["x_axis"] = e.x_axis == XAxis::LayoutScore ? "layout-score" : "noise-factor";
    j["degenerate_exponential"] = e.degenerate_exponential;
    return j;
}

Extrapolation extrapolation_from_json(const Json &j) {
    Extrapolation e;
    const std::string model = require_string(j, "model");
    if (model == "linear") e.model = FitModel::Linear;
    else if (model == "exponential") e.model = FitModel::Exponential;
    else if (model == "richardson2") e.model = FitModel::Richardson2;
    else throw ValidationError("extrapolation.model: unknown model '" + model + "'");
    e.params = require(j, "params").get<std::vector<double>>();
    e.zero_noise_estimate = require_number(j, "zero_noise_estimate");
    e.residuals = require(j, "residuals").get<std::vector<double>>();
    e.x_axis = require_string(j, "x_axis") == "noise-factor" ? XAxis::NoiseFactor
                                                             : XAxis::LayoutScore;
    e.degenerate_exponential = require(j, "degenerate_exponential").get<bool>();
    return e;
}

}  // namespace

Json report_to_json(const MitigationReport &report) {
    Json j;
    j["method"] = report.method;
    if (!report.score_method.empty()) j["score_method"] = report.score_method;
    if (report.triple) j["triple"] = triple_to_json(*report.triple, report.times.select_ms);
    if (!report.lambdas.empty()) j["lambdas"] = report.lambdas;
    Json points = Json::array();
    for (const auto &p : report.points) {
        points.push_back({{"x", p.x}, {"expval", p.y}, {"stderr", p.yerr}});
    }
    j["points"] = points;
    j["extrapolation"] = extrapolation_to_json(report.extrapolation);
    if (report.ideal) j["ideal"] = *report.ideal;
    if (report.deviation_pct) j["deviation_pct"] = *report.deviation_pct;
    if (report.unmitigated_expval) j["unmitigated_expval"] = *report.unmitigated_expval;
    if (report.unmitigated_deviation_pct) {
        j["unmitigated_deviation_pct"] = *report.unmitigated_deviation_pct;
    }
    j["executions"] = report.executions;
    j["layout_counts"] = {{"enumerated", report.layout_counts.enumerated},
                          {"after_truncation", report.layout_counts.after_truncation},
                          {"after_filter", report.layout_counts.after_filter},
                          {"enumeration_capped", report.layout_counts.enumeration_capped}};
    j["wall_times_ms"] = {{"enumerate", report.times.enumerate_ms},
                          {"score", report.times.score_ms},
                          {"select", report.times.select_ms},
                          {"execute", report.times.execute_ms},
                          {"fit", report.times.fit_ms}};
    Json meta;
    meta["family"] = report.family;
    meta["n"] = report.n;
    meta["reps"] = report.reps;
    j["meta"] = meta;
    return j;
}

MitigationReport report_from_json(const Json &j) {
    MitigationReport r;
    r.method = require_string(j, "method");
    if (j.contains("score_method")) r.score_method = j["score_method"].get<std::string>();
    if (j.contains("triple")) r.triple = triple_from_json(j["triple"]);
    if (j.contains("lambdas")) r.lambdas = j["lambdas"].get<std::vector<double>>();
    for (const auto &pj : require(j, "points")) {
        r.points.push_back({require_number(pj, "x"), require_number(pj, "expval"),
                            require_number(pj, "stderr")});
    }
    r.extrapolation = extrapolation_from_json(require(j, "extrapolation"));
    if (j.contains("ideal")) r.ideal = j["ideal"].get<double>();
    if (j.contains("deviation_pct")) r.deviation_pct = j["deviation_pct"].get<double>();
    if (j.contains("unmitigated_expval")) {
        r.unmitigated_expval = j["unmitigated_expval"].get<double>();
    }
    if (j.contains("unmitigated_deviation_pct")) {
        r.unmitigated_deviation_pct = j["unmitigated_deviation_pct"].get<double>();
    }
    r.executions = static_cast<uint32_t>(require_uint(j, "executions"));
    const Json &counts = require(j, "layout_counts");
    r.layout_counts.enumerated = require_uint(counts, "enumerated");
    r.layout_counts.after_truncation = require_uint(counts, "after_truncation");
    r.layout_counts.after_filter = require_uint(counts, "after_filter");
    r.layout_counts.enumeration_capped = require(counts, "enumeration_capped").get<bool>();
    if (j.contains("meta")) {
        const Json &meta = j["meta"];
        if (meta.contains("family")) r.family = meta["family"].get<std::string>();
        if (meta.contains("n")) r.n = meta["n"].get<uint32_t>();
        if (meta.contains("reps")) r.reps = meta["reps"].get<uint32_t>();
    }
    return r;
}

}  // namespace ffzne
