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

#include "reusekit/trace.hpp"

#include <fstream>
#include <sstream>

#include "text_format.hpp"

namespace reusekit {

using detail::declare_region;
using detail::parse_addr;
using detail::parse_region_tokens;
using detail::split_ws;

const Region& RegionTable::lookup(const std::string& bb_id) const {
    auto it = entries.find(bb_id);
    if (it == entries.end())
        throw missing_region_error("no region entry for basic block '" + bb_id + "'");
    return it->second;
}

std::size_t Trace::ref_count() const {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.refs.size();
    return n;
}

void Trace::validate() const {
    for (const auto& b : blocks) {
        if (b.bb_id.empty()) throw std::runtime_error("trace has a block with an empty bb_id");
        const Region& r = regions.lookup(b.bb_id);  // throws missing_region_error
        if (r.is_parallel() && r.region_id.empty())
            throw std::runtime_error("parallel region entry for '" + b.bb_id + "' has an empty region id");
    }
}

Trace read_trace(std::istream& in, const RegionTable* overlay) {
    Trace t;
    if (overlay) t.regions = *overlay;
    std::string line;
    std::size_t line_no = 0;
    bool in_block = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto toks = split_ws(line);
        if (toks.empty() || toks[0][0] == '#') continue;

        if (toks[0] == "BB") {
            if (toks.size() != 2) throw parse_error("BB directive takes one bb_id", line_no);
            t.blocks.push_back({toks[1], {}});
            in_block = true;
            continue;
        }
        if (toks[0] == "REGION") {
            if (toks.size() < 3) throw parse_error("short REGION directive", line_no);
            declare_region(t.regions, toks[1], parse_region_tokens(toks, 2, line_no), line_no);
            continue;
        }
        if (toks[0] == "CORE")
            throw parse_error("CORE directive in a sequential trace (use the multicore reader)",
                              line_no);

        std::size_t i = 0;
        bool shared = false;
        if (toks[0] == "S") {
            shared = true;
            i = 1;
        }
        if (toks.size() != i + 2 || (toks[i] != "R" && toks[i] != "W"))
            throw parse_error("unknown directive '" + toks[0] + "'", line_no);
        if (!in_block) throw parse_error("reference outside any block", line_no);
        MemRef ref{parse_addr(toks[i + 1], line_no),
                   toks[i] == "R" ? RefKind::read : RefKind::write, shared};
        t.blocks.back().refs.push_back(ref);
    }
    // Blocks that were never declared default to the master thread.
    for (const auto& b : t.blocks)
        if (!t.regions.contains(b.bb_id)) t.regions.set(b.bb_id, Region::seq());
    t.validate();
    return t;
}

Trace read_trace_file(const std::string& path, const RegionTable* overlay) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace file '" + path + "'");
    return read_trace(in, overlay);
}

void write_trace(std::ostream& out, const Trace& t) {
    detail::write_region_lines(out, t.regions);
    for (const auto& b : t.blocks) {
        out << "BB " << b.bb_id << '\n';
        for (const auto& r : b.refs) detail::write_ref_line(out, r);
    }
}

std::string write_trace(const Trace& t) {
    std::ostringstream out;
    write_trace(out, t);
    return out.str();
}

void write_trace_file(const std::string& path, const Trace& t) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_trace(out, t);
}

RegionTable read_region_file(std::istream& in) {
    RegionTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto toks = split_ws(line);
        if (toks.empty() || toks[0][0] == '#') continue;
        if (toks.size() < 2) throw parse_error("short region entry", line_no);
        declare_region(table, toks[0], parse_region_tokens(toks, 1, line_no), line_no);
    }
    return table;
}

RegionTable read_region_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open region file '" + path + "'");
    return read_region_file(in);
}

bool is_multicore_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace file '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
        auto toks = split_ws(line);
        if (toks.empty() || toks[0][0] == '#') continue;
        if (toks[0] == "CORE") return true;
    }
    return false;
}

}  // namespace reusekit
