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

#ifndef REUSEKIT_FORKJOIN_HPP
#define REUSEKIT_FORKJOIN_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "reusekit/generators.hpp"
#include "reusekit/trace.hpp"

// Mimicked multicore traces from a sequential basic-block labeled trace.
//
// Sequential-region blocks stay on core 0. Parallel-region block occurrences
// are either copied to every core (replicate) or statically split across
// cores in contiguous near-equal chunks (static_split). Private addresses on
// core c are shifted by c * offset_stride so the per-core address spaces are
// disjoint; shared references keep their address on every core. Per-core
// streams of each parallel region are interleaved round-robin, a fixed
// number of references per turn.
//
// The trace model is flat: a block is either sequential or belongs to one
// parallel region, so nested parallelism is not representable here.

namespace reusekit {

struct synthesis_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Schedule : std::uint8_t { replicate, static_split };

struct SynthesisConfig {
    std::uint32_t num_cores = 1;
    std::optional<Addr> offset_stride;  // nullopt = resolve automatically
    Schedule schedule = Schedule::replicate;
    std::uint32_t interleave_chunk = 1;  // references per round-robin turn
};

struct CoreRef {
    Addr address = 0;
    RefKind kind = RefKind::read;
    bool shared = false;
    std::uint32_t bb = 0;  // index into CoreTraceSet::bb_names

    friend bool operator==(const CoreRef&, const CoreRef&) = default;
};

struct MergedRef {
    Addr address = 0;
    RefKind kind = RefKind::read;
    bool shared = false;
    std::uint32_t bb = 0;
    std::uint32_t core = 0;

    friend bool operator==(const MergedRef&, const MergedRef&) = default;

    CoreRef core_ref() const { return {address, kind, shared, bb}; }
};

struct CoreTraceSet {
    std::vector<std::string> bb_names;
    RegionTable regions;
    std::vector<std::vector<CoreRef>> per_core;  // indexed by core id
    std::vector<MergedRef> merged;

    std::uint32_t num_cores() const { return std::uint32_t(per_core.size()); }
    std::size_t merged_size() const { return merged.size(); }
    std::vector<Addr> merged_addresses() const;

    // Builds per_core as the projection of merged; core ids must be
    // < num_cores and bb indices must name bb_names entries.
    static CoreTraceSet from_merged(std::vector<std::string> bb_names, RegionTable regions,
                                    std::uint32_t num_cores, std::vector<MergedRef> merged);
    // A one-core view of a sequential trace (merged == original stream).
    static CoreTraceSet single_core(const Trace& t);
};

// Smallest power of two strictly greater than the trace's occupied address
// span plus the access footprint. The span covers shared addresses too, so
// offset copies also clear the shared variables' addresses. Footprint
// defaults to the generators' element size.
Addr resolve_auto_stride(const Trace& t, unsigned footprint = kElementBytes);

CoreTraceSet synthesize(const Trace& t, const SynthesisConfig& cfg);

// Multicore serialization: the sequential text format plus a leading
// "CORES <n>" directive and "CORE <id>" lines switching the active core.
void write_multicore(std::ostream& out, const CoreTraceSet& cts);
std::string write_multicore(const CoreTraceSet& cts);
void write_multicore_file(const std::string& path, const CoreTraceSet& cts);
CoreTraceSet read_multicore(std::istream& in);
CoreTraceSet read_multicore_file(const std::string& path);

}  // namespace reusekit

#endif
