// Copyright 2026 The reusekit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "reusekit/generators.hpp"

#include <random>
#include <stdexcept>

namespace reusekit {

namespace {

constexpr Addr kArrayBase = 0x100000;

MemRef rd(Addr a, bool shared = false) { return {a, RefKind::read, shared}; }
MemRef wr(Addr a, bool shared = false) { return {a, RefKind::write, shared}; }

}  // namespace

Trace gen_matmul(int n, int m, int p) {
    if (n < 1 || m < 1 || p < 1)
        throw std::invalid_argument("gen_matmul: dimensions must be >= 1");

    const Addr a_base = kArrayBase;
    const Addr b_base = a_base + Addr(n) * m * kElementBytes;
    const Addr c_base = b_base + Addr(m) * p * kElementBytes;

    Trace t;
    t.regions.set("mm_body", Region::par("mm"));
    t.blocks.reserve(std::size_t(n) * m * p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < p; ++j)
            for (int k = 0; k < m; ++k) {
                Addr a = a_base + (Addr(i) * m + k) * kElementBytes;
                Addr b = b_base + (Addr(k) * p + j) * kElementBytes;
                Addr c = c_base + (Addr(i) * p + j) * kElementBytes;
                t.blocks.push_back({"mm_body", {rd(a), rd(b), rd(c, true), wr(c, true)}});
            }
    return t;
}

std::vector<std::vector<std::uint32_t>> build_random_graph(int nodes, double edge_prob,
                                                           std::uint64_t seed) {
    if (nodes < 1) throw std::invalid_argument("build_random_graph: nodes must be >= 1");
    if (edge_prob < 0.0 || edge_prob > 1.0)
        throw std::invalid_argument("build_random_graph: edge_prob must be in [0,1]");

    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::uint32_t>> adj(nodes);
    for (int u = 0; u < nodes; ++u)
        for (int v = u + 1; v < nodes; ++v) {
            // 53-bit uniform draw; mt19937_64 output is specified bit-exactly,
            // so the graph is identical across platforms.
            double x = double(rng() >> 11) * 0x1.0p-53;
            if (x < edge_prob) {
                adj[u].push_back(std::uint32_t(v));
                adj[v].push_back(std::uint32_t(u));
            }
        }
    return adj;
}

Trace gen_bfs(int nodes, double edge_prob, std::uint64_t seed) {
    auto adj = build_random_graph(nodes, edge_prob, seed);  // validates arguments

    // CSR adjacency followed by visited, the two frontier buffers, and a
    // level counter, all 8-byte elements.
    std::size_t edge_slots = 0;
    for (const auto& nbrs : adj) edge_slots += nbrs.size();
    std::vector<std::size_t> row_ptr(nodes + 1, 0);
    for (int u = 0; u < nodes; ++u) row_ptr[u + 1] = row_ptr[u] + adj[u].size();

    const Addr rp_base = kArrayBase;
    const Addr ci_base = rp_base + Addr(nodes + 1) * kElementBytes;
    const Addr vis_base = ci_base + Addr(edge_slots) * kElementBytes;
    const Addr fr_base[2] = {vis_base + Addr(nodes) * kElementBytes,
                             vis_base + Addr(2) * nodes * kElementBytes};
    const Addr level_ctr = vis_base + Addr(3) * nodes * kElementBytes;

    auto rp_at = [&](int u) { return rp_base + Addr(u) * kElementBytes; };
    auto ci_at = [&](std::size_t e) { return ci_base + Addr(e) * kElementBytes; };
    auto vis_at = [&](std::uint32_t v) { return vis_base + Addr(v) * kElementBytes; };
    auto fr_at = [&](int buf, std::size_t slot) { return fr_base[buf] + Addr(slot) * kElementBytes; };

    Trace t;
    t.regions.set("bfs_init", Region::seq());
    t.regions.set("bfs_scan", Region::par("bfs_scan"));
    t.regions.set("bfs_level", Region::seq());

    std::vector<char> visited(nodes, 0);
    visited[0] = 1;
    t.blocks.push_back({"bfs_init", {wr(vis_at(0), true), wr(fr_at(0, 0), true)}});

    std::vector<std::uint32_t> frontier{0};
    int level = 0;
    while (!frontier.empty()) {
        int cur = level % 2, nxt = 1 - cur;
        std::vector<std::uint32_t> next_frontier;
        for (std::size_t idx = 0; idx < frontier.size(); ++idx) {
            std::uint32_t u = frontier[idx];
            BasicBlockRecord blk{"bfs_scan", {}};
            blk.refs.push_back(rd(fr_at(cur, idx), true));
            blk.refs.push_back(rd(rp_at(int(u))));
            blk.refs.push_back(rd(rp_at(int(u) + 1)));
            for (std::size_t e = row_ptr[u]; e < row_ptr[u + 1]; ++e) {
                std::uint32_t v = adj[u][e - row_ptr[u]];
                blk.refs.push_back(rd(ci_at(e)));
                blk.refs.push_back(rd(vis_at(v), true));
                if (!visited[v]) {
                    visited[v] = 1;
                    blk.refs.push_back(wr(vis_at(v), true));
                    blk.refs.push_back(wr(fr_at(nxt, next_frontier.size()), true));
                    next_frontier.push_back(v);
                }
            }
            t.blocks.push_back(std::move(blk));
        }
        t.blocks.push_back({"bfs_level", {rd(level_ctr), wr(level_ctr)}});
        frontier = std::move(next_frontier);
        ++level;
    }
    return t;
}

}  // namespace reusekit
