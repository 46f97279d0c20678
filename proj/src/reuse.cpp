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

#include "reusekit/reuse.hpp"

#include <bit>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace reusekit {

void Granularity::validate() const {
    if (line_bytes < 1 || !std::has_single_bit(line_bytes))
        throw std::invalid_argument("line size must be a power of two >= 1");
}

double ReuseProfile::sum() const {
    double s = infinite;
    for (const auto& [d, p] : bins) s += p;
    return s;
}

void ReuseHistogram::add(Distance d, std::uint64_t count) {
    if (d == kInfiniteDistance)
        infinite_count += count;
    else
        finite_bins[d] += count;
    total += count;
}

ReuseProfile ReuseHistogram::normalized() const {
    ReuseProfile p;
    p.line_bytes = line_bytes;
    if (total == 0) return p;
    for (const auto& [d, c] : finite_bins) p.bins[d] = double(c) / double(total);
    p.infinite = double(infinite_count) / double(total);
    return p;
}

std::vector<Distance> reuse_distances_naive(std::span<const Addr> stream, Granularity g) {
    g.validate();
    const std::size_t n = stream.size();
    std::vector<std::uint32_t> id(n);
    std::unordered_map<Addr, std::uint32_t> line_ids;
    line_ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        id[i] = line_ids.try_emplace(g.line_of(stream[i]), std::uint32_t(line_ids.size()))
                    .first->second;

    std::vector<Distance> out(n);
    std::vector<std::uint64_t> mark(line_ids.size(), 0);
    std::uint64_t epoch = 0;
    for (std::size_t t = 0; t < n; ++t) {
        ++epoch;
        std::uint64_t distinct = 0;
        bool found = false;
        for (std::size_t j = t; j-- > 0;) {
            if (id[j] == id[t]) {
                found = true;
                break;
            }
            if (mark[id[j]] != epoch) {
                mark[id[j]] = epoch;
                ++distinct;
            }
        }
        out[t] = found ? distinct : kInfiniteDistance;
    }
    return out;
}

namespace {

// Order-statistic treap keyed by last-access timestamp. Every live line owns
// exactly one node, so the tree size is the distinct-line count.
class LastAccessTree {
  public:
    std::size_t count_greater(std::uint64_t key) const {
        std::size_t acc = 0;
        for (int t = root_; t >= 0;) {
            if (key < nodes_[t].key) {
                acc += size(nodes_[t].right) + 1;
                t = nodes_[t].left;
            } else {
                t = nodes_[t].right;
            }
        }
        return acc;
    }

    void insert(std::uint64_t key) {
        int l, r;
        split(root_, key, l, r);
        root_ = merge(merge(l, make(key)), r);
    }

    void erase(std::uint64_t key) { root_ = erase_rec(root_, key); }

  private:
    struct Node {
        std::uint64_t key;
        std::uint64_t pri;
        int left = -1, right = -1;
        std::uint32_t size = 1;
    };
    std::vector<Node> nodes_;
    std::vector<int> free_;
    int root_ = -1;
    std::uint64_t rng_state_ = 0x9E3779B97F4A7C15ull;

    std::uint64_t next_pri() {
        std::uint64_t z = (rng_state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    std::uint32_t size(int t) const { return t < 0 ? 0 : nodes_[t].size; }
    void pull(int t) { nodes_[t].size = 1 + size(nodes_[t].left) + size(nodes_[t].right); }

    int make(std::uint64_t key) {
        if (!free_.empty()) {
            int t = free_.back();
            free_.pop_back();
            nodes_[t] = {key, next_pri(), -1, -1, 1};
            return t;
        }
        nodes_.push_back({key, next_pri(), -1, -1, 1});
        return int(nodes_.size()) - 1;
    }

    // l gets keys < key, r gets keys >= key.
    void split(int t, std::uint64_t key, int& l, int& r) {
        if (t < 0) {
            l = r = -1;
            return;
        }
        if (nodes_[t].key < key) {
            l = t;
            split(nodes_[t].right, key, nodes_[t].right, r);
        } else {
            r = t;
            split(nodes_[t].left, key, l, nodes_[t].left);
        }
        pull(t);
    }

    int merge(int a, int b) {
        if (a < 0) return b;
        if (b < 0) return a;
        if (nodes_[a].pri > nodes_[b].pri) {
            nodes_[a].right = merge(nodes_[a].right, b);
            pull(a);
            return a;
        }
        nodes_[b].left = merge(a, nodes_[b].left);
        pull(b);
        return b;
    }

    int erase_rec(int t, std::uint64_t key) {
        if (t < 0) return -1;
        if (nodes_[t].key == key) {
            int joined = merge(nodes_[t].left, nodes_[t].right);
            free_.push_back(t);
            return joined;
        }
        if (key < nodes_[t].key)
            nodes_[t].left = erase_rec(nodes_[t].left, key);
        else
            nodes_[t].right = erase_rec(nodes_[t].right, key);
        pull(t);
        return t;
    }
};

}  // namespace

std::vector<Distance> reuse_distances_fast(std::span<const Addr> stream, Granularity g) {
    g.validate();
    std::vector<Distance> out(stream.size());
    std::unordered_map<Addr, std::uint64_t> last;  // line -> last access time
    last.reserve(stream.size() / 4 + 16);
    LastAccessTree tree;
    for (std::uint64_t t = 0; t < stream.size(); ++t) {
        Addr line = g.line_of(stream[t]);
        auto it = last.find(line);
        if (it == last.end()) {
            out[t] = kInfiniteDistance;
            last.emplace(line, t);
        } else {
            out[t] = tree.count_greater(it->second);
            tree.erase(it->second);
            it->second = t;
        }
        tree.insert(t);
    }
    return out;
}

ReuseHistogram histogram(std::span<const Distance> distances, std::uint32_t line_bytes) {
    ReuseHistogram h;
    h.line_bytes = line_bytes;
    for (Distance d : distances) h.add(d);
    return h;
}

std::vector<Addr> address_stream(const Trace& t) {
    std::vector<Addr> out;
    out.reserve(t.ref_count());
    for (const auto& blk : t.blocks)
        for (const auto& ref : blk.refs) out.push_back(ref.address);
    return out;
}

ReuseHistogram sequential_profile(const Trace& t, Granularity g) {
    auto stream = address_stream(t);
    return histogram(reuse_distances_fast(stream, g), g.line_bytes);
}

std::vector<Distance> crd_distances(const CoreTraceSet& cts, Granularity g) {
    return reuse_distances_fast(cts.merged_addresses(), g);
}

ReuseHistogram crd_profile(const CoreTraceSet& cts, Granularity g) {
    return histogram(crd_distances(cts, g), g.line_bytes);
}

std::vector<std::vector<Distance>> prd_distances(const CoreTraceSet& cts, Granularity g) {
    std::vector<std::vector<Distance>> out;
    out.reserve(cts.per_core.size());
    for (const auto& stream : cts.per_core) {
        std::vector<Addr> addrs;
        addrs.reserve(stream.size());
        for (const auto& r : stream) addrs.push_back(r.address);
        out.push_back(reuse_distances_fast(addrs, g));
    }
    return out;
}

std::vector<ReuseHistogram> prd_profiles(const CoreTraceSet& cts, Granularity g) {
    std::vector<ReuseHistogram> out;
    for (const auto& d : prd_distances(cts, g)) out.push_back(histogram(d, g.line_bytes));
    return out;
}

namespace {

std::map<std::string, BBProfile> credit_per_bb(std::span<const Addr> stream,
                                               std::span<const std::uint32_t> bb_of_ref,
                                               const std::vector<std::string>& bb_names,
                                               Granularity g) {
    auto dist = reuse_distances_fast(stream, g);
    std::map<std::string, BBProfile> out;
    for (const auto& name : bb_names) out[name].hist.line_bytes = g.line_bytes;
    for (std::size_t i = 0; i < stream.size(); ++i)
        out[bb_names[bb_of_ref[i]]].hist.add(dist[i]);
    if (!stream.empty())
        for (auto& [name, prof] : out) prof.weight = double(prof.hist.total) / double(stream.size());
    return out;
}

}  // namespace

std::map<std::string, BBProfile> per_bb_profiles(const Trace& t, Granularity g) {
    g.validate();
    std::vector<std::string> bb_names;
    std::unordered_map<std::string, std::uint32_t> index;
    std::vector<Addr> stream;
    std::vector<std::uint32_t> bb_of_ref;
    stream.reserve(t.ref_count());
    bb_of_ref.reserve(t.ref_count());
    for (const auto& blk : t.blocks) {
        auto [it, fresh] = index.try_emplace(blk.bb_id, std::uint32_t(bb_names.size()));
        if (fresh) bb_names.push_back(blk.bb_id);
        for (const auto& ref : blk.refs) {
            stream.push_back(ref.address);
            bb_of_ref.push_back(it->second);
        }
    }
    return credit_per_bb(stream, bb_of_ref, bb_names, g);
}

std::map<std::string, BBProfile> per_bb_profiles(const CoreTraceSet& cts, Granularity g) {
    g.validate();
    std::vector<Addr> stream;
    std::vector<std::uint32_t> bb_of_ref;
    stream.reserve(cts.merged.size());
    bb_of_ref.reserve(cts.merged.size());
    for (const auto& r : cts.merged) {
        stream.push_back(r.address);
        bb_of_ref.push_back(r.bb);
    }
    return credit_per_bb(stream, bb_of_ref, cts.bb_names, g);
}

// ---------------------------------------------------------------- formats

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void histogram_to_csv(std::ostream& out, const ReuseHistogram& h) {
    out << "# line_bytes " << h.line_bytes << '\n';
    out << "distance,count\n";
    for (const auto& [d, c] : h.finite_bins) out << d << ',' << c << '\n';
    out << "inf," << h.infinite_count << '\n';
}

ReuseHistogram histogram_from_csv(std::istream& in) {
    ReuseHistogram h;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ss(line.substr(1));
            std::string key;
            if (ss >> key && key == "line_bytes") ss >> h.line_bytes;
            continue;
        }
        if (line == "distance,count") continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw parse_error("bad histogram row", line_no);
        std::string ds = line.substr(0, comma);
        std::uint64_t c = std::stoull(line.substr(comma + 1));
        if (ds == "inf") {
            h.infinite_count += c;
            h.total += c;
        } else {
            h.add(std::stoull(ds), c);
        }
    }
    return h;
}

void profile_to_csv(std::ostream& out, const ReuseProfile& p) {
    out << "# line_bytes " << p.line_bytes << '\n';
    out << "distance,probability\n";
    for (const auto& [d, pr] : p.bins) out << d << ',' << fmt_double(pr) << '\n';
    out << "inf," << fmt_double(p.infinite) << '\n';
}

ReuseProfile profile_from_csv(std::istream& in) {
    ReuseProfile p;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ss(line.substr(1));
            std::string key;
            if (ss >> key && key == "line_bytes") ss >> p.line_bytes;
            continue;
        }
        if (line == "distance,probability") continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw parse_error("bad profile row", line_no);
        std::string ds = line.substr(0, comma);
        double pr = std::stod(line.substr(comma + 1));
        if (ds == "inf")
            p.infinite += pr;
        else
            p.bins[std::stoull(ds)] += pr;
    }
    return p;
}

std::string histogram_to_json(const ReuseHistogram& h) {
    nlohmann::json bins = nlohmann::json::object();
    for (const auto& [d, c] : h.finite_bins) bins[std::to_string(d)] = c;
    nlohmann::json j{{"line_bytes", h.line_bytes},
                     {"total", h.total},
                     {"infinite", h.infinite_count},
                     {"bins", bins}};
    return j.dump(2);
}

ReuseHistogram histogram_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    ReuseHistogram h;
    h.line_bytes = j.at("line_bytes").get<std::uint32_t>();
    for (const auto& [key, value] : j.at("bins").items())
        h.add(std::stoull(key), value.get<std::uint64_t>());
    h.add(kInfiniteDistance, j.at("infinite").get<std::uint64_t>());
    return h;
}

std::string profile_to_json(const ReuseProfile& p) {
    nlohmann::json bins = nlohmann::json::object();
    for (const auto& [d, pr] : p.bins) bins[std::to_string(d)] = pr;
    nlohmann::json j{{"line_bytes", p.line_bytes}, {"infinite", p.infinite}, {"bins", bins}};
    return j.dump(2);
}

ReuseProfile profile_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    ReuseProfile p;
    p.line_bytes = j.at("line_bytes").get<std::uint32_t>();
    p.infinite = j.at("infinite").get<double>();
    for (const auto& [key, value] : j.at("bins").items())
        p.bins[std::stoull(key)] = value.get<double>();
    return p;
}

}  // namespace reusekit
