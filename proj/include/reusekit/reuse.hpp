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

#ifndef REUSEKIT_REUSE_HPP
#define REUSEKIT_REUSE_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "reusekit/forkjoin.hpp"
#include "reusekit/trace.hpp"

// Reuse-distance profiles. The distance of a reference is the number of
// distinct cache lines touched strictly between it and the previous
// reference to the same line; first touches are infinite. Concurrent (CRD)
// profiles run one stack over the interleaved merged stream of all cores;
// private (PRD) profiles run one stack per core.

namespace reusekit {

using Distance = std::uint64_t;
inline constexpr Distance kInfiniteDistance = ~Distance(0);

struct Granularity {
    std::uint32_t line_bytes = 64;  // power of two; 1 = raw addresses

    void validate() const;
    Addr line_of(Addr a) const { return a / line_bytes; }
};

// Normalized reuse profile: probabilities per finite distance plus the
// infinite bin. line_bytes records the granularity the distances were
// measured at.
struct ReuseProfile {
    std::map<Distance, double> bins;
    double infinite = 0.0;
    std::uint32_t line_bytes = 1;

    double sum() const;
};

struct ReuseHistogram {
    std::map<Distance, std::uint64_t> finite_bins;
    std::uint64_t infinite_count = 0;
    std::uint64_t total = 0;
    std::uint32_t line_bytes = 1;

    void add(Distance d, std::uint64_t count = 1);
    ReuseProfile normalized() const;

    friend bool operator==(const ReuseHistogram&, const ReuseHistogram&) = default;
};

// Literal-scan engine: for each reference, walk backwards to the previous
// occurrence of its line, counting distinct lines seen. Quadratic; this is
// the oracle the tree engine is checked against.
std::vector<Distance> reuse_distances_naive(std::span<const Addr> stream, Granularity g);

// Order-statistic tree over last-access timestamps (Olken-style): each live
// line holds one node keyed by its last access time; the distance is the
// number of keys after the previous access. O(N log M) for M distinct lines.
std::vector<Distance> reuse_distances_fast(std::span<const Addr> stream, Granularity g);

ReuseHistogram histogram(std::span<const Distance> distances, std::uint32_t line_bytes = 1);

// Whole-stream profile of a sequential trace.
std::vector<Addr> address_stream(const Trace& t);
ReuseHistogram sequential_profile(const Trace& t, Granularity g);

// Concurrent reuse distances over the merged stream, one global stack.
std::vector<Distance> crd_distances(const CoreTraceSet& cts, Granularity g);
ReuseHistogram crd_profile(const CoreTraceSet& cts, Granularity g);

// Private-stack distances, one stack per core.
std::vector<std::vector<Distance>> prd_distances(const CoreTraceSet& cts, Granularity g);
std::vector<ReuseHistogram> prd_profiles(const CoreTraceSet& cts, Granularity g);

// Conditional profiles: distances are measured on the full stream (global
// stack), then credited to the issuing basic block. weight is the block's
// share of all references.
struct BBProfile {
    double weight = 0.0;
    ReuseHistogram hist;
};
std::map<std::string, BBProfile> per_bb_profiles(const Trace& t, Granularity g);
std::map<std::string, BBProfile> per_bb_profiles(const CoreTraceSet& cts, Granularity g);

// CSV is "distance,count" (or ",probability") with an "inf" sentinel row;
// JSON carries the bins plus line_bytes metadata.
void histogram_to_csv(std::ostream& out, const ReuseHistogram& h);
ReuseHistogram histogram_from_csv(std::istream& in);
std::string histogram_to_json(const ReuseHistogram& h);
ReuseHistogram histogram_from_json(const std::string& text);
void profile_to_csv(std::ostream& out, const ReuseProfile& p);
ReuseProfile profile_from_csv(std::istream& in);
std::string profile_to_json(const ReuseProfile& p);
ReuseProfile profile_from_json(const std::string& text);

}  // namespace reusekit

#endif
