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

#include "reusekit/forkjoin.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "text_format.hpp"

namespace reusekit {

std::vector<Addr> CoreTraceSet::merged_addresses() const {
    std::vector<Addr> out;
    out.reserve(merged.size());
    for (const auto& r : merged) out.push_back(r.address);
    return out;
}

CoreTraceSet CoreTraceSet::from_merged(std::vector<std::string> bb_names, RegionTable regions,
                                       std::uint32_t num_cores, std::vector<MergedRef> merged) {
    CoreTraceSet cts;
    cts.bb_names = std::move(bb_names);
    cts.regions = std::move(regions);
    cts.merged = std::move(merged);
    cts.per_core.resize(num_cores);
    for (const auto& r : cts.merged) {
        if (r.core >= num_cores) throw synthesis_error("merged reference tagged with out-of-range core");
        if (r.bb >= cts.bb_names.size()) throw synthesis_error("merged reference tagged with unknown block");
        cts.per_core[r.core].push_back(r.core_ref());
    }
    return cts;
}

CoreTraceSet CoreTraceSet::single_core(const Trace& t) {
    t.validate();
    CoreTraceSet cts;
    cts.regions = t.regions;
    cts.per_core.resize(1);
    std::unordered_map<std::string, std::uint32_t> bb_index;
    for (const auto& blk : t.blocks) {
        auto [it, fresh] = bb_index.try_emplace(blk.bb_id, std::uint32_t(cts.bb_names.size()));
        if (fresh) cts.bb_names.push_back(blk.bb_id);
        for (const auto& ref : blk.refs) {
            cts.per_core[0].push_back({ref.address, ref.kind, ref.shared, it->second});
            cts.merged.push_back({ref.address, ref.kind, ref.shared, it->second, 0});
        }
    }
    return cts;
}

Addr resolve_auto_stride(const Trace& t, unsigned footprint) {
    Addr lo = std::numeric_limits<Addr>::max(), hi = 0;
    bool any = false;
    for (const auto& blk : t.blocks)
        for (const auto& ref : blk.refs) {
            lo = std::min(lo, ref.address);
            hi = std::max(hi, ref.address);
            any = true;
        }
    if (!any) throw synthesis_error("cannot resolve offset stride: trace has no references");
    Addr span = hi - lo + footprint;
    if (span >= Addr(1) << 62) throw synthesis_error("address span too large for stride resolution");
    return std::bit_ceil(span + 1);  // smallest power of two strictly greater than span
}

namespace {

struct Segment {
    std::size_t first = 0, last = 0;  // block occurrence range [first, last)
    bool parallel = false;
};

std::vector<Segment> segment_blocks(const Trace& t) {
    std::vector<Segment> segs;
    for (std::size_t i = 0; i < t.blocks.size(); ++i) {
        const Region& r = t.regions.lookup(t.blocks[i].bb_id);
        bool start_new = segs.empty() || segs.back().parallel != r.is_parallel();
        if (!start_new && r.is_parallel()) {
            // a change of region id closes the current fork-join instance
            const Region& prev = t.regions.lookup(t.blocks[segs.back().first].bb_id);
            start_new = prev.region_id != r.region_id;
        }
        if (start_new) segs.push_back({i, i + 1, r.is_parallel()});
        else segs.back().last = i + 1;
    }
    return segs;
}

// Contiguous near-equal partition of k items over n cores, earlier cores
// taking the extra item: which core owns item i.
std::uint32_t chunk_owner(std::size_t i, std::size_t k, std::uint32_t n) {
    std::size_t base = k / n, extra = k % n;
    std::size_t fat = (base + 1) * extra;  // items owned by the first `extra` cores
    if (i < fat) return std::uint32_t(i / (base + 1));
    return std::uint32_t(extra + (i - fat) / base);
}

}  // namespace

CoreTraceSet synthesize(const Trace& t, const SynthesisConfig& cfg) {
    t.validate();
    if (cfg.num_cores < 1) throw synthesis_error("num_cores must be >= 1");
    if (cfg.interleave_chunk < 1) throw synthesis_error("interleave chunk must be >= 1");

    Addr stride;
    if (cfg.offset_stride) {
        stride = *cfg.offset_stride;
        Addr lo = std::numeric_limits<Addr>::max(), hi = 0;
        bool any_private = false;
        for (const auto& blk : t.blocks)
            for (const auto& ref : blk.refs)
                if (!ref.shared) {
                    lo = std::min(lo, ref.address);
                    hi = std::max(hi, ref.address);
                    any_private = true;
                }
        if (any_private && stride <= hi - lo)
            throw synthesis_error("offset stride does not exceed the private address span");
    } else {
        stride = resolve_auto_stride(t);
    }

    const std::uint32_t n = cfg.num_cores;
    CoreTraceSet cts;
    cts.regions = t.regions;
    cts.per_core.resize(n);

    std::unordered_map<std::string, std::uint32_t> bb_index;
    auto intern = [&](const std::string& id) {
        auto [it, fresh] = bb_index.try_emplace(id, std::uint32_t(cts.bb_names.size()));
        if (fresh) cts.bb_names.push_back(id);
        return it->second;
    };
    auto offset_ref = [&](const MemRef& ref, std::uint32_t bb, std::uint32_t core) {
        Addr a = ref.shared ? ref.address : ref.address + Addr(core) * stride;
        return CoreRef{a, ref.kind, ref.shared, bb};
    };

    for (const Segment& seg : segment_blocks(t)) {
        if (!seg.parallel) {
            for (std::size_t i = seg.first; i < seg.last; ++i) {
                std::uint32_t bb = intern(t.blocks[i].bb_id);
                for (const auto& ref : t.blocks[i].refs) {
                    cts.per_core[0].push_back({ref.address, ref.kind, ref.shared, bb});
                    cts.merged.push_back({ref.address, ref.kind, ref.shared, bb, 0});
                }
            }
            continue;
        }

        // Per-core streams of this fork-join instance.
        std::vector<std::vector<CoreRef>> streams(n);
        if (cfg.schedule == Schedule::replicate) {
            for (std::size_t i = seg.first; i < seg.last; ++i) {
                std::uint32_t bb = intern(t.blocks[i].bb_id);
                for (std::uint32_t c = 0; c < n; ++c)
                    for (const auto& ref : t.blocks[i].refs)
                        streams[c].push_back(offset_ref(ref, bb, c));
            }
        } else {
            // static_split: each block's occurrence list inside the region is
            // cut into contiguous chunks, one per core.
            std::unordered_map<std::string, std::size_t> occurrences, seen;
            for (std::size_t i = seg.first; i < seg.last; ++i) ++occurrences[t.blocks[i].bb_id];
            for (std::size_t i = seg.first; i < seg.last; ++i) {
                const auto& blk = t.blocks[i];
                std::uint32_t bb = intern(blk.bb_id);
                std::uint32_t c = chunk_owner(seen[blk.bb_id]++, occurrences[blk.bb_id], n);
                for (const auto& ref : blk.refs) streams[c].push_back(offset_ref(ref, bb, c));
            }
        }

        for (std::uint32_t c = 0; c < n; ++c)
            cts.per_core[c].insert(cts.per_core[c].end(), streams[c].begin(), streams[c].end());

        // Round-robin interleave, interleave_chunk references per turn.
        std::vector<std::size_t> pos(n, 0);
        bool pending = true;
        while (pending) {
            pending = false;
            for (std::uint32_t c = 0; c < n; ++c) {
                std::size_t take = std::min<std::size_t>(cfg.interleave_chunk,
                                                         streams[c].size() - pos[c]);
                for (std::size_t j = 0; j < take; ++j) {
                    const CoreRef& r = streams[c][pos[c] + j];
                    cts.merged.push_back({r.address, r.kind, r.shared, r.bb, c});
                }
                pos[c] += take;
                if (pos[c] < streams[c].size()) pending = true;
            }
        }
    }
    return cts;
}

void write_multicore(std::ostream& out, const CoreTraceSet& cts) {
    out << "CORES " << cts.num_cores() << '\n';
    detail::write_region_lines(out, cts.regions);
    bool have_group = false;
    std::uint32_t cur_core = 0, cur_bb = 0;
    for (const auto& r : cts.merged) {
        if (!have_group || r.core != cur_core) {
            out << "CORE " << r.core << '\n';
            cur_core = r.core;
            out << "BB " << cts.bb_names[r.bb] << '\n';
            cur_bb = r.bb;
            have_group = true;
        } else if (r.bb != cur_bb) {
            out << "BB " << cts.bb_names[r.bb] << '\n';
            cur_bb = r.bb;
        }
        detail::write_ref_line(out, {r.address, r.kind, r.shared});
    }
}

std::string write_multicore(const CoreTraceSet& cts) {
    std::ostringstream out;
    write_multicore(out, cts);
    return out.str();
}

void write_multicore_file(const std::string& path, const CoreTraceSet& cts) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_multicore(out, cts);
}

CoreTraceSet read_multicore(std::istream& in) {
    std::vector<std::string> bb_names;
    std::unordered_map<std::string, std::uint32_t> bb_index;
    RegionTable regions;
    std::vector<MergedRef> merged;
    std::uint32_t declared_cores = 0;
    std::optional<std::uint32_t> core;
    std::optional<std::uint32_t> bb;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto toks = detail::split_ws(line);
        if (toks.empty() || toks[0][0] == '#') continue;
        if (toks[0] == "CORES") {
            if (toks.size() != 2) throw parse_error("CORES directive takes one count", line_no);
            declared_cores = std::uint32_t(std::stoul(toks[1]));
            continue;
        }
        if (toks[0] == "CORE") {
            if (toks.size() != 2) throw parse_error("CORE directive takes one id", line_no);
            core = std::uint32_t(std::stoul(toks[1]));
            bb.reset();
            continue;
        }
        if (toks[0] == "REGION") {
            if (toks.size() < 3) throw parse_error("short REGION directive", line_no);
            detail::declare_region(regions, toks[1], detail::parse_region_tokens(toks, 2, line_no),
                                   line_no);
            continue;
        }
        if (toks[0] == "BB") {
            if (toks.size() != 2) throw parse_error("BB directive takes one bb_id", line_no);
            auto [it, fresh] = bb_index.try_emplace(toks[1], std::uint32_t(bb_names.size()));
            if (fresh) bb_names.push_back(toks[1]);
            bb = it->second;
            continue;
        }

        std::size_t i = 0;
        bool shared = false;
        if (toks[0] == "S") {
            shared = true;
            i = 1;
        }
        if (toks.size() != i + 2 || (toks[i] != "R" && toks[i] != "W"))
            throw parse_error("unknown directive '" + toks[0] + "'", line_no);
        if (!core) throw parse_error("reference before any CORE directive", line_no);
        if (!bb) throw parse_error("reference outside any block", line_no);
        merged.push_back({detail::parse_addr(toks[i + 1], line_no),
                          toks[i] == "R" ? RefKind::read : RefKind::write, shared, *bb, *core});
    }

    std::uint32_t max_core = 0;
    for (const auto& r : merged) max_core = std::max(max_core, r.core);
    std::uint32_t cores = std::max(declared_cores, merged.empty() ? declared_cores : max_core + 1);
    if (cores == 0) cores = 1;
    for (const auto& name : bb_names)
        if (!regions.contains(name)) regions.set(name, Region::seq());
    return CoreTraceSet::from_merged(std::move(bb_names), std::move(regions), cores,
                                     std::move(merged));
}

CoreTraceSet read_multicore_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace file '" + path + "'");
    return read_multicore(in);
}

}  // namespace reusekit
