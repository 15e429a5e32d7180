#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tic/error.hpp"

namespace tic {

// Node ids are dense in [0, node_count); ingestion remaps external ids.
using NodeId = std::uint32_t;

// Time intervals are 1-based: t in {1, ..., interval_count}.
using IntervalIndex = std::int32_t;

struct EdgeRecord {
    NodeId u = 0;
    NodeId v = 0;
    IntervalIndex t = 1;
    double p = 0.0;

    friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

// Closed interval range [first, last] of a propagation process.
struct Window {
    IntervalIndex first;
    IntervalIndex last;

    Window(IntervalIndex i, IntervalIndex j) : first(i), last(j) {
        if (i < 1 || j < i)
            throw InvalidArgument("window [" + std::to_string(i) + "," + std::to_string(j) +
                                  "] must satisfy 1 <= i <= j");
    }

    IntervalIndex length() const { return last - first + 1; }
};

// Directed evolving network: each stored (u,v,t) carries a probability in
// (0,1]. Pairs with probability 0 are simply absent, so traversal cost scales
// with live edges per interval. Immutable after build; concurrent reads are
// safe.
class TemporalNetwork {
  public:
    struct Arc {
        NodeId target;
        double p;
    };

    TemporalNetwork() = default;

    // Last write wins on duplicate (u,v,t); records with p == 0 are not stored.
    static TemporalNetwork build(std::size_t node_count, IntervalIndex interval_count,
                                 std::span<const EdgeRecord> records) {
        if (node_count == 0) throw InvalidArgument("network needs at least one node");
        if (interval_count < 1) throw InvalidArgument("network needs at least one interval");

        struct Tagged {
            EdgeRecord rec;
            std::size_t order;
        };
        std::vector<Tagged> tagged;
        tagged.reserve(records.size());
        for (std::size_t i = 0; i < records.size(); ++i) {
            const EdgeRecord& r = records[i];
            if (r.u >= node_count || r.v >= node_count)
                throw InvalidArgument("edge (" + std::to_string(r.u) + "," + std::to_string(r.v) +
                                      "): node id out of range [0," + std::to_string(node_count) + ")");
            if (r.u == r.v)
                throw InvalidArgument("self-loop on node " + std::to_string(r.u) + " is not allowed");
            if (r.t < 1 || r.t > interval_count)
                throw InvalidArgument("interval " + std::to_string(r.t) + " out of range [1," +
                                      std::to_string(interval_count) + "]");
            if (!(r.p >= 0.0 && r.p <= 1.0))
                throw InvalidArgument("probability " + std::to_string(r.p) + " outside [0,1]");
            tagged.push_back({r, i});
        }
        std::sort(tagged.begin(), tagged.end(), [](const Tagged& a, const Tagged& b) {
            if (a.rec.t != b.rec.t) return a.rec.t < b.rec.t;
            if (a.rec.u != b.rec.u) return a.rec.u < b.rec.u;
            if (a.rec.v != b.rec.v) return a.rec.v < b.rec.v;
            return a.order < b.order;
        });

        TemporalNetwork net;
        net.node_count_ = node_count;
        net.interval_count_ = interval_count;
        net.offsets_.assign(static_cast<std::size_t>(interval_count),
                            std::vector<std::size_t>(node_count + 1, 0));
        net.arcs_.assign(static_cast<std::size_t>(interval_count), {});

        // Sweep sorted runs of identical (t,u,v); the highest original order wins.
        for (std::size_t i = 0; i < tagged.size();) {
            std::size_t j = i + 1;
            while (j < tagged.size() && tagged[j].rec.t == tagged[i].rec.t &&
                   tagged[j].rec.u == tagged[i].rec.u && tagged[j].rec.v == tagged[i].rec.v)
                ++j;
            const EdgeRecord& last = tagged[j - 1].rec;
            if (last.p > 0.0) {
                net.arcs_[static_cast<std::size_t>(last.t - 1)].push_back({last.v, last.p});
                net.offsets_[static_cast<std::size_t>(last.t - 1)][last.u + 1]++;
            }
            i = j;
        }
        for (auto& offs : net.offsets_)
            for (std::size_t u = 1; u <= node_count; ++u) offs[u] += offs[u - 1];
        return net;
    }

    std::size_t node_count() const { return node_count_; }
    IntervalIndex interval_count() const { return interval_count_; }

    // Number of stored (u,v,t) triples.
    std::size_t record_count() const {
        std::size_t n = 0;
        for (const auto& a : arcs_) n += a.size();
        return n;
    }

    // Stored probability, or 0 when the pair is absent at t.
    double probability_at(NodeId u, NodeId v, IntervalIndex t) const {
        check_node(u);
        check_node(v);
        check_interval(t);
        const auto row = neighbors_at(u, t);
        const auto it = std::lower_bound(row.begin(), row.end(), v,
                                         [](const Arc& a, NodeId id) { return a.target < id; });
        return (it != row.end() && it->target == v) ? it->p : 0.0;
    }

    // Live out-arcs of u at interval t, ascending target id.
    std::span<const Arc> neighbors_at(NodeId u, IntervalIndex t) const {
        check_node(u);
        check_interval(t);
        const auto& offs = offsets_[static_cast<std::size_t>(t - 1)];
        const auto& arcs = arcs_[static_cast<std::size_t>(t - 1)];
        return {arcs.data() + offs[u], arcs.data() + offs[u + 1]};
    }

    // All stored records, sorted by (t,u,v).
    std::vector<EdgeRecord> records() const {
        std::vector<EdgeRecord> out;
        out.reserve(record_count());
        for (IntervalIndex t = 1; t <= interval_count_; ++t)
            for (NodeId u = 0; u < node_count_; ++u)
                for (const Arc& a : neighbors_at(u, t)) out.push_back({u, a.target, t, a.p});
        return out;
    }

    // Reverses every arc; an involution.
    TemporalNetwork transpose() const {
        std::vector<EdgeRecord> rev = records();
        for (EdgeRecord& r : rev) std::swap(r.u, r.v);
        return build(node_count_, interval_count_, rev);
    }

    void check_window(const Window& w) const {
        if (w.last > interval_count_)
            throw InvalidArgument("window end " + std::to_string(w.last) + " exceeds interval count " +
                                  std::to_string(interval_count_));
    }

  private:
    void check_node(NodeId u) const {
        if (u >= node_count_)
            throw InvalidArgument("node id " + std::to_string(u) + " out of range [0," +
                                  std::to_string(node_count_) + ")");
    }
    void check_interval(IntervalIndex t) const {
        if (t < 1 || t > interval_count_)
            throw InvalidArgument("interval " + std::to_string(t) + " out of range [1," +
                                  std::to_string(interval_count_) + "]");
    }

    std::size_t node_count_ = 0;
    IntervalIndex interval_count_ = 0;
    std::vector<std::vector<std::size_t>> offsets_; // per interval, node_count_+1 entries
    std::vector<std::vector<Arc>> arcs_;            // per interval, sorted rows
};

} // namespace tic
