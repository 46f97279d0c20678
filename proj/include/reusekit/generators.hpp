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

#ifndef REUSEKIT_GENERATORS_HPP
#define REUSEKIT_GENERATORS_HPP

#include <cstdint>
#include <vector>

#include "reusekit/trace.hpp"

// Synthetic benchmark traces. Both generators emit 8-byte elements laid out
// contiguously from a fixed base address and are deterministic for fixed
// arguments.

namespace reusekit {

inline constexpr unsigned kElementBytes = 8;

// Triple-nested i-j-k multiply of row-major A(n x m) by B(m x p) into
// C(n x p). Every iteration is one occurrence of the parallel block
// "mm_body": R A[i][k], R B[k][j], R C[i][j], W C[i][j]; the C references
// are shared.
Trace gen_matmul(int n, int m, int p);

// Deterministic undirected G(nodes, edge_prob) adjacency, seeded. Exposed so
// tests can traverse the same graph independently of the BFS trace.
std::vector<std::vector<std::uint32_t>> build_random_graph(int nodes, double edge_prob,
                                                           std::uint64_t seed);

// Level-synchronous BFS from node 0 over build_random_graph's graph, CSR
// adjacency. Blocks: "bfs_init" (sequential; seeds visited/frontier),
// "bfs_scan" (parallel; one occurrence per frontier entry), "bfs_level"
// (sequential; level counter). Frontier and visited arrays are shared.
Trace gen_bfs(int nodes, double edge_prob, std::uint64_t seed);

}  // namespace reusekit

#endif
