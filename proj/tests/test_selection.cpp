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

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "ffzne/errors.hpp"
#include "ffzne/rng.hpp"
#include "ffzne/selection.hpp"
#include "support/oracles.hpp"

using namespace ffzne;
namespace ft = ffzne::testing;

namespace {

ScoreTable table_from_scores(std::vector<double> scores) {
    std::sort(scores.begin(), scores.end());
    ScoreTable t;
    for (size_t k = 0; k < scores.size(); ++k) {
        t.entries.push_back({Layout{{static_cast<uint32_t>(k)}}, scores[k]});
    }
    return t;
}

std::vector<double> random_scores(size_t m, Rng &rng) {
    std::vector<double> scores;
    scores.reserve(m);
    for (size_t k = 0; k < m; ++k) scores.push_back(rng.uniform01());
    std::sort(scores.begin(), scores.end());
    return scores;
}

}  // namespace

TEST_CASE("exhaustive search at a=0 finds the perfect progression") {
    const SelectionTriple t = select_exhaustive(table_from_scores({0.1, 0.2, 0.3, 0.9}), 0.0);
    CHECK(t.si == doctest::Approx(0.2));
    CHECK(t.sj == doctest::Approx(0.3));
    CHECK(t.delta == doctest::Approx(0.0));
    CHECK(t.i_index == 2);
    CHECK(t.j_index == 3);
    CHECK(t.s1 == doctest::Approx(0.1));
}

TEST_CASE("exhaustive search at a=1 maximizes coverage with the stated tie-break") {
    const SelectionTriple t = select_exhaustive(table_from_scores({0.1, 0.2, 0.3, 0.9}), 1.0);
    CHECK(t.i_index == 2);
    CHECK(t.j_index == 4);
    CHECK(t.si == doctest::Approx(0.2));
    CHECK(t.sj == doctest::Approx(0.9));
}

TEST_CASE("exhaustive search rejects bad inputs") {
    CHECK_THROWS_AS(select_exhaustive(table_from_scores({0.1, 0.2}), 0.1), PipelineError);
    CHECK_THROWS_AS(select_exhaustive(table_from_scores({0.1, 0.2, 0.3}), -0.1), ValidationError);
    CHECK_THROWS_AS(select_exhaustive(table_from_scores({0.1, 0.2, 0.3}), 1.1), ValidationError);
}

TEST_CASE("exhaustive search matches the pair-materializing oracle") {
    Rng rng(stable_hash({0x73656caULL}));
    for (int trial = 0; trial < 50; ++trial) {
        CAPTURE(trial);
        const auto scores = random_scores(3 + rng.below(48), rng);
        const ScoreTable table = table_from_scores(scores);
        for (double a : {0.0, 0.1, 0.5, 1.0}) {
            CAPTURE(a);
            const SelectionTriple got = select_exhaustive(table, a);
            const ft::OracleSelection want = ft::oracle_exhaustive(scores, a);
            CHECK(got.i_index == want.i);
            CHECK(got.j_index == want.j);
            CHECK(got.cost == doctest::Approx(want.cost).epsilon(1e-12));
            CHECK(got.delta == doctest::Approx(want.delta).epsilon(1e-12));
        }
    }
}

TEST_CASE("binary search finds the exact midpoint of an arithmetic progression") {
    std::vector<double> scores;
    for (int k = 0; k <= 10; ++k) scores.push_back(0.1 * k);
    const SelectionTriple t = select_binary(table_from_scores(scores), 0.0);
    CHECK(t.i_index == 6);
    CHECK(t.delta == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(t.j_index == 11);
    CHECK(t.probe_count == 1);  // first midpoint is already exact
}

TEST_CASE("binary search needs at least three entries") {
    CHECK_THROWS_WITH_AS(select_binary(table_from_scores({0.1, 0.9}), 0.0),
                         doctest::Contains("Not enough elements"), PipelineError);
}

TEST_CASE("binary search never beats the linear-scan oracle and matches it on sorted tables") {
    Rng rng(stable_hash({0x62696eULL}));
    for (int trial = 0; trial < 200; ++trial) {
        CAPTURE(trial);
        const auto scores = random_scores(3 + rng.below(498), rng);
        const SelectionTriple got = select_binary(table_from_scores(scores), 0.0);
        const double oracle = ft::oracle_binary_min_delta(scores);
        CHECK(got.delta >= oracle - 1e-12);
        // Sorted scores make the interior diff sequence V-shaped, so the
        // tracked best probe hits the global minimum.
        CHECK(got.delta == doctest::Approx(oracle).epsilon(1e-12));
        CHECK(got.probe_count <= binary_probe_bound(scores.size()));
        CHECK(got.s1 <= got.si);
        CHECK(got.si <= got.sj);
    }
}

TEST_CASE("probe counts satisfy the logarithmic contract") {
    Rng rng(stable_hash({0x70726f62ULL}));
    for (size_t m : {3ul, 11ul, 2770ul, 100000ul}) {
        CAPTURE(m);
        const auto scores = random_scores(m, rng);
        const SelectionTriple t = select_binary(table_from_scores(scores), 0.0);
        CHECK(t.probe_count <= binary_probe_bound(m));
    }
    CHECK(binary_probe_bound(11) == 5);
    CHECK(binary_probe_bound(2770) == 13);
    CHECK(binary_probe_bound(3) == 3);
}

TEST_CASE("selected indices are scale-invariant at the a extremes") {
    Rng rng(stable_hash({0x7363616cULL}));
    for (int trial = 0; trial < 20; ++trial) {
        const auto scores = random_scores(4 + rng.below(40), rng);
        std::vector<double> scaled = scores;
        for (double &s : scaled) s *= 7.5;
        for (double a : {0.0, 1.0}) {
            const SelectionTriple base = select_exhaustive(table_from_scores(scores), a);
            const SelectionTriple big = select_exhaustive(table_from_scores(scaled), a);
            CHECK(base.i_index == big.i_index);
            CHECK(base.j_index == big.j_index);
        }
    }
}

TEST_CASE("selectors are deterministic and leave the table unmodified") {
    const auto scores = std::vector<double>{0.05, 0.2, 0.21, 0.4, 0.77};
    const ScoreTable table = table_from_scores(scores);
    const ScoreTable copy = table;
    const SelectionTriple a1 = select_exhaustive(table, 0.1);
    const SelectionTriple a2 = select_exhaustive(table, 0.1);
    const SelectionTriple b1 = select_binary(table, 0.0);
    const SelectionTriple b2 = select_binary(table, 0.0);
    CHECK(a1.i_index == a2.i_index);
    CHECK(a1.j_index == a2.j_index);
    CHECK(b1.i_index == b2.i_index);
    CHECK(b1.probe_count == b2.probe_count);
    CHECK(table.entries.size() == copy.entries.size());
    for (size_t k = 0; k < table.entries.size(); ++k) {
        CHECK(table.entries[k].score == copy.entries[k].score);
    }
}

TEST_CASE("binary early stop honors the tolerance") {
    std::vector<double> scores;
    for (int k = 0; k < 64; ++k) scores.push_back(0.01 * k);
    const SelectionTriple strict = select_binary(table_from_scores(scores), 0.0);
    const SelectionTriple loose = select_binary(table_from_scores(scores), 0.25);
    CHECK(loose.probe_count <= strict.probe_count);
    CHECK(loose.delta <= 0.25);
}
