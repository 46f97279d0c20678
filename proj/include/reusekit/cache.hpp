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

#ifndef REUSEKIT_CACHE_HPP
#define REUSEKIT_CACHE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "reusekit/reuse.hpp"

// Stack-distance cache model: a reference with reuse distance D hits an
// A-way cache of B blocks with probability
//
//   P(h|D) = sum_{a=0}^{A-1} C(D,a) (A/B)^a ((B-A)/B)^(D-a)
//
// i.e. the A-1 older ways survive when fewer than A of the D intervening
// distinct lines land in the same set under uniform random placement.
// First touches (infinite D) always miss.

namespace reusekit {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CacheConfig {
    std::uint64_t size_bytes = 0;
    std::uint32_t line_bytes = 64;
    std::uint32_t assoc = 1;
    std::string label;  // free-form id used in reports; canonical form if empty

    std::uint64_t blocks() const { return size_bytes / line_bytes; }
    std::uint64_t sets() const { return blocks() / assoc; }
    std::string id() const;
    void validate() const;

    // "SIZE:LINE:ASSOC" with optional KB/MB/GB suffix on SIZE, e.g.
    // "6MB:64:16"; the original text becomes the label.
    static CacheConfig parse(const std::string& text);
};

struct PredictionReport {
    CacheConfig config;
    double predicted_hit_rate = 0.0;
    std::optional<std::vector<std::pair<Distance, double>>> per_distance;
    std::string profile_id;
};

// P(h|D) evaluated stably in log space; exact 1.0 whenever D < A (the
// partial sum is then the full binomial sum) and exact fully-associative
// behavior at A == B. Pass kInfiniteDistance for a first touch.
double hit_probability(Distance d, const CacheConfig& cfg);

// Expected hit rate of a normalized profile measured at the cache's line
// size (mismatched granularity is a config_error).
PredictionReport predict_hit_rate(const ReuseProfile& profile, const CacheConfig& cfg,
                                  bool with_table = false);

std::vector<PredictionReport> sweep(const ReuseProfile& profile,
                                    std::span<const CacheConfig> configs);

// CSV is "config,predicted_hit_rate"; JSON optionally carries the
// per-distance table.
void reports_to_csv(std::ostream& out, std::span<const PredictionReport> reports);
std::vector<std::pair<std::string, double>> reports_from_csv(std::istream& in);
std::string report_to_json(const PredictionReport& r);

}  // namespace reusekit

#endif
