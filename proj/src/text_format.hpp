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

// Internal helpers shared by the sequential and multicore trace serializers.

#ifndef REUSEKIT_TEXT_FORMAT_HPP
#define REUSEKIT_TEXT_FORMAT_HPP

#include <charconv>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "reusekit/trace.hpp"

namespace reusekit::detail {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

inline Addr parse_addr(const std::string& tok, std::size_t line_no) {
    std::size_t off = tok.rfind("0x", 0) == 0 || tok.rfind("0X", 0) == 0 ? 2 : 0;
    Addr value = 0;
    auto [ptr, ec] = std::from_chars(tok.data() + off, tok.data() + tok.size(), value, 16);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw parse_error("bad hex address '" + tok + "'", line_no);
    return value;
}

inline Region parse_region_tokens(const std::vector<std::string>& toks, std::size_t first,
                                  std::size_t line_no) {
    if (toks.size() == first + 1 && toks[first] == "sequential") return Region::seq();
    if (toks.size() == first + 2 && toks[first] == "parallel") {
        if (toks[first + 1].empty()) throw parse_error("empty region id", line_no);
        return Region::par(toks[first + 1]);
    }
    throw parse_error("bad region declaration", line_no);
}

inline void declare_region(RegionTable& table, const std::string& bb_id, const Region& r,
                           std::size_t line_no) {
    if (table.contains(bb_id) && !(table.entries.at(bb_id) == r))
        throw parse_error("conflicting region declaration for '" + bb_id + "'", line_no);
    table.set(bb_id, r);
}

inline void write_ref_line(std::ostream& out, const MemRef& r) {
    if (r.shared) out << "S ";
    out << (r.kind == RefKind::read ? "R" : "W") << " 0x" << std::hex << r.address << std::dec
        << '\n';
}

inline void write_region_lines(std::ostream& out, const RegionTable& regions) {
    for (const auto& [bb_id, r] : regions.entries) {
        out << "REGION " << bb_id;
        if (r.is_parallel())
            out << " parallel " << r.region_id << '\n';
        else
            out << " sequential\n";
    }
}

}  // namespace reusekit::detail

#endif
