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

#ifndef REUSEKIT_TRACE_HPP
#define REUSEKIT_TRACE_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

// Basic-block labeled memory traces.
//
// Trace text format, one directive or reference per line:
//
//   # comment                       ignored (also blank lines)
//   REGION <bb_id> sequential       region metadata, may appear anywhere
//   REGION <bb_id> parallel <rid>
//   BB <bb_id>                      begins a block occurrence
//   [S] <R|W> <hex-address>         a reference; leading "S" marks it shared
//
// A companion region file carries the same metadata without the REGION
// keyword: "<bb_id> sequential" or "<bb_id> parallel <rid>" per line.
// Blocks with no declared region default to sequential (master thread).
// Unknown directives are rejected.

namespace reusekit {

using Addr = std::uint64_t;

enum class RefKind : std::uint8_t { read, write };

struct MemRef {
    Addr address = 0;
    RefKind kind = RefKind::read;
    bool shared = false;

    friend bool operator==(const MemRef&, const MemRef&) = default;
};

struct BasicBlockRecord {
    std::string bb_id;
    std::vector<MemRef> refs;  // program order within the block

    friend bool operator==(const BasicBlockRecord&, const BasicBlockRecord&) = default;
};

// Region classification of a basic block under the fork-join model.
struct Region {
    enum class Kind : std::uint8_t { sequential, parallel };
    Kind kind = Kind::sequential;
    std::string region_id;  // non-empty iff parallel

    static Region seq() { return {Kind::sequential, ""}; }
    static Region par(std::string id) { return {Kind::parallel, std::move(id)}; }
    bool is_parallel() const { return kind == Kind::parallel; }

    friend bool operator==(const Region&, const Region&) = default;
};

struct missing_region_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RegionTable {
    std::map<std::string, Region> entries;

    bool contains(const std::string& bb_id) const { return entries.count(bb_id) != 0; }
    void set(const std::string& bb_id, Region r) { entries[bb_id] = std::move(r); }
    // Throws missing_region_error when bb_id has no entry.
    const Region& lookup(const std::string& bb_id) const;

    friend bool operator==(const RegionTable&, const RegionTable&) = default;
};

struct Trace {
    std::vector<BasicBlockRecord> blocks;  // occurrence order; bb_ids may repeat
    RegionTable regions;

    std::size_t ref_count() const;
    bool empty() const { return blocks.empty(); }
    // Checks structural invariants (non-empty bb ids, every bb_id has a
    // region entry, parallel entries carry a region id). Throws on violation.
    void validate() const;

    friend bool operator==(const Trace&, const Trace&) = default;
};

struct parse_error : std::runtime_error {
    std::size_t line_no;  // 1-based; 0 when not tied to a line
    parse_error(const std::string& what, std::size_t line) : std::runtime_error(what), line_no(line) {}
};

// Parses the trace text format. Region metadata comes from in-band REGION
// directives plus the optional overlay (typically a companion region file);
// conflicting declarations for the same bb_id are an error. Blocks without
// any declaration are recorded as sequential.
Trace read_trace(std::istream& in, const RegionTable* overlay = nullptr);
Trace read_trace_file(const std::string& path, const RegionTable* overlay = nullptr);

// Canonical serialization: REGION directives (sorted by bb_id), then blocks.
// read_trace(write_trace(t)) == t, and re-serializing a canonical byte
// stream is byte-identical.
void write_trace(std::ostream& out, const Trace& t);
std::string write_trace(const Trace& t);
void write_trace_file(const std::string& path, const Trace& t);

// Companion region-metadata file: "<bb_id> sequential|parallel [<rid>]".
RegionTable read_region_file(std::istream& in);
RegionTable read_region_file(const std::string& path);

// True when the stream's first non-comment directive structure contains a
// CORE directive, i.e. the file is a multicore (CoreTraceSet) serialization.
bool is_multicore_trace_file(const std::string& path);

}  // namespace reusekit

#endif
