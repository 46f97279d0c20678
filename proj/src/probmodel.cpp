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

#include "reusekit/probmodel.hpp"

#include <cmath>

#include <json.hpp>

namespace reusekit {

MixtureProfile mix(std::vector<BasicBlockProfile> components) {
    double weight_sum = 0.0;
    std::uint32_t line_bytes = 0;
    for (const auto& c : components) {
        if (c.p_bb < 0.0) throw std::invalid_argument("negative component weight for '" + c.bb_id + "'");
        weight_sum += c.p_bb;
        bool empty = c.cond.bins.empty() && c.cond.infinite == 0.0;
        if (empty) {
            if (c.p_bb != 0.0)
                throw normalization_error("component '" + c.bb_id + "' has weight but an empty conditional");
            continue;
        }
        if (std::abs(c.cond.sum() - 1.0) > 1e-9)
            throw normalization_error("conditional of '" + c.bb_id + "' is not normalized");
        if (line_bytes == 0) line_bytes = c.cond.line_bytes;
        else if (line_bytes != c.cond.line_bytes)
            throw std::invalid_argument("components measured at different line sizes");
    }
    if (std::abs(weight_sum - 1.0) > 1e-9)
        throw normalization_error("component weights sum to " + std::to_string(weight_sum));

    MixtureProfile m;
    m.mixed.line_bytes = line_bytes == 0 ? 1 : line_bytes;
    for (const auto& c : components) {
        for (const auto& [d, p] : c.cond.bins) m.mixed.bins[d] += c.p_bb * p;
        m.mixed.infinite += c.p_bb * c.cond.infinite;
    }
    m.components = std::move(components);
    return m;
}

namespace {

std::vector<BasicBlockProfile> components_of(std::map<std::string, BBProfile> per_bb) {
    std::vector<BasicBlockProfile> out;
    out.reserve(per_bb.size());
    for (auto& [bb_id, prof] : per_bb)
        out.push_back({bb_id, prof.weight, prof.hist.normalized()});
    return out;
}

}  // namespace

MixtureProfile profile_from_trace(const Trace& t, Granularity g) {
    if (t.ref_count() == 0) throw std::invalid_argument("cannot profile an empty trace");
    return mix(components_of(per_bb_profiles(t, g)));
}

MixtureProfile profile_from_trace(const CoreTraceSet& cts, Granularity g) {
    if (cts.merged.empty()) throw std::invalid_argument("cannot profile an empty trace");
    return mix(components_of(per_bb_profiles(cts, g)));
}

std::string mixture_to_json(const MixtureProfile& m) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : m.components) {
        nlohmann::json bins = nlohmann::json::object();
        for (const auto& [d, p] : c.cond.bins) bins[std::to_string(d)] = p;
        comps.push_back({{"bb_id", c.bb_id},
                         {"p_bb", c.p_bb},
                         {"cond", {{"line_bytes", c.cond.line_bytes},
                                   {"infinite", c.cond.infinite},
                                   {"bins", bins}}}});
    }
    nlohmann::json mixed_bins = nlohmann::json::object();
    for (const auto& [d, p] : m.mixed.bins) mixed_bins[std::to_string(d)] = p;
    nlohmann::json j{{"components", comps},
                     {"mixed", {{"line_bytes", m.mixed.line_bytes},
                                {"infinite", m.mixed.infinite},
                                {"bins", mixed_bins}}}};
    return j.dump(2);
}

namespace {

ReuseProfile profile_from_json_obj(const nlohmann::json& j) {
    ReuseProfile p;
    p.line_bytes = j.at("line_bytes").get<std::uint32_t>();
    p.infinite = j.at("infinite").get<double>();
    for (const auto& [key, value] : j.at("bins").items())
        p.bins[std::stoull(key)] = value.get<double>();
    return p;
}

}  // namespace

MixtureProfile mixture_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    MixtureProfile m;
    for (const auto& c : j.at("components"))
        m.components.push_back({c.at("bb_id").get<std::string>(), c.at("p_bb").get<double>(),
                                profile_from_json_obj(c.at("cond"))});
    m.mixed = profile_from_json_obj(j.at("mixed"));
    return m;
}

}  // namespace reusekit
