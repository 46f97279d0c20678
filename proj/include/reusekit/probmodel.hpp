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

#ifndef REUSEKIT_PROBMODEL_HPP
#define REUSEKIT_PROBMODEL_HPP

#include <string>
#include <vector>

#include "reusekit/reuse.hpp"

// Probabilistic reuse profile as a mixture: the program profile is the sum
// over basic blocks of the block's execution share times its conditional
// distance distribution. With shares measured as reference counts on the
// same stream the conditionals came from, the mixture reproduces the global
// profile exactly.

namespace reusekit {

struct normalization_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BasicBlockProfile {
    std::string bb_id;
    double p_bb = 0.0;      // share of references issued by this block
    ReuseProfile cond;      // normalized distance distribution of the block
};

struct MixtureProfile {
    std::vector<BasicBlockProfile> components;
    ReuseProfile mixed;
};

// Bin-wise weighted sum of the components. Weights must be non-negative and
// sum to 1 within 1e-9; each non-empty conditional must itself be normalized.
MixtureProfile mix(std::vector<BasicBlockProfile> components);

// per_bb_profiles composed with mix; equals the directly measured global
// profile bin-for-bin.
MixtureProfile profile_from_trace(const Trace& t, Granularity g);
MixtureProfile profile_from_trace(const CoreTraceSet& cts, Granularity g);

std::string mixture_to_json(const MixtureProfile& m);
MixtureProfile mixture_from_json(const std::string& text);

}  // namespace reusekit

#endif
