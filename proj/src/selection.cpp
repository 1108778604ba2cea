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

#include "ffzne/selection.hpp"

#include <cmath>
#include <limits>

#include "ffzne/errors.hpp"

namespace ffzne {

std::string selection_method_name(SelectionMethod method) {
    return method == SelectionMethod::Exhaustive ? "exhaustive" : "binary";
}

SelectionMethod selection_method_from_name(const std::string &name) {
    if (name == "exhaustive") return SelectionMethod::Exhaustive;
    if (name == "binary") return SelectionMethod::Binary;
    throw ValidationError("unknown selection strategy '" + name + "'");
}

SelectionTriple select_exhaustive(const ScoreTable &table, double a) {
    const size_t m = table.entries.size();
    if (m < 3) throw PipelineError("select_exhaustive: need at least 3 scored layouts");
    if (!(a >= 0.0 && a <= 1.0)) {
        throw ValidationError("select_exhaustive: trade-off parameter must lie in [0,1]");
    }
    const auto &entries = table.entries;
    const double s1 = entries[0].score;

    auto delta_raw = [&](size_t i, size_t j) {
        // 0-based here; delta_1 = |s1 - si|, defect vs |si - sj|.
        return std::abs(std::abs(s1 - entries[i].score) -
                        std::abs(entries[i].score - entries[j].score));
    };

    // Pass 1: min-max range of the defect over all pairs.
    double d_min = std::numeric_limits<double>::infinity();
    double d_max = -std::numeric_limits<double>::infinity();
    for (size_t i = 1; i + 1 < m; ++i) {
        for (size_t j = i + 1; j < m; ++j) {
            const double d = delta_raw(i, j);
            d_min = std::min(d_min, d);
            d_max = std::max(d_max, d);
        }
    }
    const double d_range = d_max - d_min;

    // Pass 2: minimize the weighted cost, ties toward the smallest (i, j).
    double best_cost = std::numeric_limits<double>::infinity();
    size_t best_i = 0, best_j = 0;
    double best_delta = 0.0, best_jn = 0.0, best_dn = 0.0;
    for (size_t i = 1; i + 1 < m; ++i) {
        for (size_t j = i + 1; j < m; ++j) {
            const double d = delta_raw(i, j);
            const double d_norm = d_range > 0.0 ? (d - d_min) / d_range : 0.0;
            const double j_norm =
                static_cast<double>(j + 1) / static_cast<double>(m - 1);  // 1-based j
            const double cost = a * (1.0 - j_norm) + (1.0 - a) * d_norm;
            if (cost < best_cost) {
                best_cost = cost;
                best_i = i;
                best_j = j;
                best_delta = d;
                best_jn = j_norm;
                best_dn = d_norm;
            }
        }
    }

    SelectionTriple triple;
    triple.l1 = entries[0].layout;
    triple.li = entries[best_i].layout;
    triple.lj = entries[best_j].layout;
    triple.s1 = s1;
    triple.si = entries[best_i].score;
    triple.sj = entries[best_j].score;
    triple.delta = best_delta;
    triple.cost = best_cost;
    triple.j_norm = best_jn;
    triple.delta_norm = best_dn;
    triple.i_index = static_cast<uint32_t>(best_i + 1);
    triple.j_index = static_cast<uint32_t>(best_j + 1);
    triple.method = SelectionMethod::Exhaustive;
    return triple;
}

SelectionTriple select_binary(const ScoreTable &table, double eps) {
    const size_t m = table.entries.size();
    if (m < 3) throw PipelineError("select_binary: Not enough elements");
    if (eps < 0.0) throw ValidationError("select_binary: eps must be >= 0");
    const auto &entries = table.entries;
    const double s1 = entries[0].score;
    const double sj = entries[m - 1].score;

    size_t low = 1, high = m - 2;  // interior, 0-based
    size_t best_idx = low;
    double best_diff = std::numeric_limits<double>::infinity();
    uint32_t probes = 0;
    while (low <= high) {
        const size_t mid = (low + high) / 2;
        ++probes;
        const double d1 = entries[mid].score - s1;
        const double d2 = sj - entries[mid].score;
        const double diff = std::abs(d1 - d2);
        if (diff < best_diff) {
            best_diff = diff;
            best_idx = mid;
        }
        if (diff <= eps) break;  // good enough, stop early
        if (d2 > d1) {
            low = mid + 1;
        } else {
            high = mid - 1;  // mid >= 1, no wrap
        }
    }

    SelectionTriple triple;
    triple.l1 = entries[0].layout;
    triple.li = entries[best_idx].layout;
    triple.lj = entries[m - 1].layout;
    triple.s1 = s1;
    triple.si = entries[best_idx].score;
    triple.sj = sj;
    triple.delta = best_diff;
    triple.i_index = static_cast<uint32_t>(best_idx + 1);
    triple.j_index = static_cast<uint32_t>(m);
    triple.method = SelectionMethod::Binary;
    triple.probe_count = probes;
    return triple;
}

uint32_t binary_probe_bound(size_t m) {
    uint32_t bits = 0;
    size_t v = 1;
    while (v < m) {
        v <<= 1;
        ++bits;
    }
    return bits + 1;  // ceil(log2(m)) + 1
}

}  // namespace ffzne
