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
#include <string>

#include "ffzne/layout.hpp"
#include "ffzne/scoring.hpp"

namespace ffzne {

enum class SelectionMethod { Exhaustive, Binary };

std::string selection_method_name(SelectionMethod method);
SelectionMethod selection_method_from_name(const std::string &name);

// The chosen (l1, li, lj) with its arithmetic-progression defect
// delta = ||si - sj| - |s1 - si||. Indices are 1-based, matching the
// position in the sorted score table. Cost diagnostics are filled by the
// exhaustive strategy only; probe_count by the binary strategy only.
struct SelectionTriple {
    Layout l1, li, lj;
    double s1 = 0.0, si = 0.0, sj = 0.0;
    double delta = 0.0;
    double cost = 0.0;
    double j_norm = 0.0;
    double delta_norm = 0.0;
    uint32_t i_index = 0;
    uint32_t j_index = 0;
    SelectionMethod method = SelectionMethod::Exhaustive;
    uint32_t probe_count = 0;
};

// Fixes l1 as the best-scored layout and scans every pair (i, j) with
// 1 < i < j <= m for the minimizer of
//   cost = a * (1 - j/(m-1)) + (1 - a) * delta_minmax_normalized,
// ties broken toward the lexicographically smallest (i, j). Note j/(m-1)
// exceeds 1 at j = m; the formula is kept as stated.
SelectionTriple select_exhaustive(const ScoreTable &table, double a = 0.1);

// Fixes l1 and lj as the first and last entries and binary-searches the
// interior for the best midpoint. delta is always computed against the true
// endpoints, never against the shrunken search bounds; the best probe seen
// is tracked and the search stops early once delta <= eps.
SelectionTriple select_binary(const ScoreTable &table, double eps = 0.0);

// Probe-count contract for the binary strategy: ceil(log2(m)) + 1.
uint32_t binary_probe_bound(size_t m);

}  // namespace ffzne
