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

#include <set>

#include "doctest.h"
#include "ffzne/errors.hpp"
#include "ffzne/json_io.hpp"
#include "ffzne/layout.hpp"
#include "ffzne/rng.hpp"
#include "support/oracles.hpp"

using namespace ffzne;
namespace ft = ffzne::testing;

namespace {

DeviceModel device_from_edges(uint32_t n, std::vector<Edge> edges, double eps = 0.01) {
    DeviceModel dev;
    dev.name = "test";
    dev.num_qubits = n;
    for (auto e : edges) {
        dev.edges.push_back(make_edge(e.first, e.second));
        dev.two_qubit_error[edge_key(make_edge(e.first, e.second))] = eps;
    }
    std::sort(dev.edges.begin(), dev.edges.end());
    dev.one_qubit_error.assign(n, eps / 10);
    dev.validate();
    return dev;
}

InteractionGraph graph_from_edges(uint32_t n, std::vector<std::pair<uint32_t, uint32_t>> edges) {
    InteractionGraph g;
    g.num_vertices = n;
    for (auto e : edges) g.edges.push_back(make_edge(e.first, e.second));
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

InteractionGraph path_graph(uint32_t n) {
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    for (uint32_t v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
    return graph_from_edges(n, edges);
}

// Random connected graph: a random spanning tree plus a few extra edges.
InteractionGraph random_connected_graph(uint32_t n, uint32_t extra_edges, Rng &rng) {
    std::set<std::pair<uint32_t, uint32_t>> edges;
    for (uint32_t v = 1; v < n; ++v) {
        edges.insert(make_edge(v, static_cast<uint32_t>(rng.below(v))));
    }
    for (uint32_t k = 0; k < extra_edges && n >= 2; ++k) {
        const uint32_t a = static_cast<uint32_t>(rng.below(n));
        uint32_t b = static_cast<uint32_t>(rng.below(n - 1));
        if (b >= a) ++b;
        edges.insert(make_edge(a, b));
    }
    InteractionGraph g;
    g.num_vertices = n;
    g.edges.assign(edges.begin(), edges.end());
    return g;
}

}  // namespace

TEST_CASE("small enumeration examples") {
    SUBCASE("path-3 into line-4") {
        const auto set = enumerate_layouts(path_graph(3),
                                           device_from_edges(4, {{0, 1}, {1, 2}, {2, 3}}));
        CHECK(set.layouts.size() == 4);
        CHECK_FALSE(set.truncated);
    }
    SUBCASE("triangle into triangle") {
        const auto triangle = graph_from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
        const auto set =
            enumerate_layouts(triangle, device_from_edges(3, {{0, 1}, {1, 2}, {0, 2}}));
        CHECK(set.layouts.size() == 6);
    }
    SUBCASE("path-3 into a 3-vertex star") {
        const auto set =
            enumerate_layouts(path_graph(3), device_from_edges(3, {{0, 1}, {0, 2}}));
        CHECK(set.layouts.size() == 2);
    }
    SUBCASE("no embedding yields an empty set, not an error") {
        const auto triangle = graph_from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
        const auto set =
            enumerate_layouts(triangle, device_from_edges(3, {{0, 1}, {1, 2}}));
        CHECK(set.layouts.empty());
    }
}

TEST_CASE("enumeration rejects bad inputs") {
    const auto dev = device_from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK_THROWS_AS(enumerate_layouts(path_graph(3), dev, 0), ValidationError);
    CHECK_THROWS_AS(enumerate_layouts(graph_from_edges(4, {{0, 1}, {2, 3}}), dev),
                    ValidationError);
}

TEST_CASE("enumeration cap truncates with a flag") {
    const auto set = enumerate_layouts(path_graph(3),
                                       device_from_edges(4, {{0, 1}, {1, 2}, {2, 3}}), 2);
    CHECK(set.layouts.size() == 2);
    CHECK(set.truncated);
}

TEST_CASE("enumeration matches the brute-force oracle on random instances") {
    Rng rng(stable_hash({0x6c617971ULL}));
    for (int trial = 0; trial < 30; ++trial) {
        CAPTURE(trial);
        const uint32_t n_virt = 2 + static_cast<uint32_t>(rng.below(6));     // up to 7
        const uint32_t n_phys = n_virt + static_cast<uint32_t>(rng.below(4));  // up to 10
        const InteractionGraph graph = random_connected_graph(n_virt, rng.below(3) ? 1 : 2, rng);

        std::set<Edge> dev_edges;
        const uint32_t want = n_phys + static_cast<uint32_t>(rng.below(2 * n_phys));
        while (dev_edges.size() < want) {
            const uint32_t a = static_cast<uint32_t>(rng.below(n_phys));
            uint32_t b = static_cast<uint32_t>(rng.below(n_phys - 1));
            if (b >= a) ++b;
            dev_edges.insert(make_edge(a, b));
            if (dev_edges.size() >= n_phys * (n_phys - 1) / 2) break;
        }
        const DeviceModel dev =
            device_from_edges(n_phys, {dev_edges.begin(), dev_edges.end()});

        const auto fast = enumerate_layouts(graph, dev);
        const auto brute = ft::brute_force_layouts(graph, dev);
        CHECK(fast.layouts == brute);
        for (const auto &layout : fast.layouts) {
            CHECK(layout.valid_for(graph, dev));
        }
    }
}

TEST_CASE("layout sets serialize deterministically") {
    const auto dev = device_from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    auto a = enumerate_layouts(path_graph(4), dev);
    auto b = enumerate_layouts(path_graph(4), dev);
    a.circuit_hash = b.circuit_hash = "test";
    CHECK(layouts_to_json(a).dump() == layouts_to_json(b).dump());
}

TEST_CASE("overlap counts shared physical qubits") {
    CHECK(overlap(Layout{{0, 1, 2}}, Layout{{0, 1, 2}}) == 3);
    CHECK(overlap(Layout{{0, 1, 2}}, Layout{{3, 4, 5}}) == 0);
    CHECK(overlap(Layout{{0, 1, 2}}, Layout{{2, 3, 4}}) == 1);
    CHECK(overlap(Layout{{7, 1, 64}}, Layout{{64, 9, 7}}) == 2);  // multi-word masks
}

TEST_CASE("overlap truncation keeps everything below the threshold") {
    LayoutSet set;
    set.layouts = {Layout{{0, 1}}, Layout{{2, 3}}, Layout{{4, 5}}};

    SUBCASE("pairwise disjoint images all survive eta=1") {
        CHECK(truncate_by_overlap(set, 1).layouts.size() == 3);
    }
    SUBCASE("eta above the qubit count keeps everything") {
        set.layouts.push_back(Layout{{0, 1}});
        CHECK(truncate_by_overlap(set, 3).layouts.size() == 4);
    }
    SUBCASE("eta=0 is rejected") {
        CHECK_THROWS_AS(truncate_by_overlap(set, 0), ValidationError);
    }
}

TEST_CASE("greedy truncation soundness on random layout sets") {
    Rng rng(stable_hash({0x74727563ULL}));
    for (int trial = 0; trial < 50; ++trial) {
        CAPTURE(trial);
        const uint32_t n_virt = 3 + static_cast<uint32_t>(rng.below(4));
        const uint32_t n_phys = 12;
        LayoutSet set;
        const size_t count = 5 + rng.below(40);
        std::set<std::vector<uint32_t>> seen;
        while (set.layouts.size() < count) {
            std::vector<uint32_t> pool(n_phys);
            for (uint32_t p = 0; p < n_phys; ++p) pool[p] = p;
            rng.shuffle(pool);
            pool.resize(n_virt);
            if (seen.insert(pool).second) set.layouts.push_back(Layout{pool});
        }
        std::sort(set.layouts.begin(), set.layouts.end());
        const uint32_t eta = 1 + static_cast<uint32_t>(rng.below(n_virt));

        const LayoutSet kept = truncate_by_overlap(set, eta);
        REQUIRE(!kept.layouts.empty());
        CHECK(kept.layouts.front() == set.layouts.front());  // first always accepted

        // Accepted layouts are pairwise below the threshold.
        for (size_t i = 0; i < kept.layouts.size(); ++i) {
            for (size_t j = i + 1; j < kept.layouts.size(); ++j) {
                CHECK(overlap(kept.layouts[i], kept.layouts[j]) < eta);
            }
        }
        // Every rejected layout collides with at least one accepted one.
        std::set<std::vector<uint32_t>> kept_set;
        for (const auto &l : kept.layouts) kept_set.insert(l.mapping);
        for (const auto &l : set.layouts) {
            if (kept_set.count(l.mapping)) continue;
            bool collides = false;
            for (const auto &k : kept.layouts) {
                if (overlap(l, k) >= eta) {
                    collides = true;
                    break;
                }
            }
            CHECK(collides);
        }
    }
}
