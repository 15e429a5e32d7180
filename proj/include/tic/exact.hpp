#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tic/error.hpp"
#include "tic/temporal_network.hpp"

namespace tic {

struct ExactSpread {
    double mean = 0.0;
    double variance = 0.0;
};

namespace detail {

// Stored transmission records restricted to the window, plus a per-interval,
// per-source index into them. Each record carries one independent coin: a node
// pair is attempted at most once per realization (the target is active ever
// after the first success, and an active target blocks re-attempts), so
// enumerating record coins enumerates the whole process exactly.
struct ExactInstance {
    struct Try {
        NodeId target;
        std::size_t record;
    };
    std::vector<double> probs;
    std::vector<std::vector<std::vector<Try>>> by_interval_source;
    Window window{1, 1};
    std::size_t node_count = 0;

    static ExactInstance build(const TemporalNetwork& net, const Window& window,
                               std::size_t max_records) {
        net.check_window(window);
        ExactInstance inst;
        inst.window = window;
        inst.node_count = net.node_count();
        inst.by_interval_source.assign(static_cast<std::size_t>(window.length()),
                                       std::vector<std::vector<Try>>(net.node_count()));
        for (const EdgeRecord& rec : net.records()) {
            if (rec.t < window.first || rec.t > window.last) continue;
            if (inst.probs.size() >= max_records) {
                throw BoundExceeded("exact enumeration limited to " + std::to_string(max_records) +
                                    " in-window transmission records");
            }
            const std::size_t slot = static_cast<std::size_t>(rec.t - window.first);
            inst.by_interval_source[slot][rec.u].push_back(Try{rec.v, inst.probs.size()});
            inst.probs.push_back(rec.p);
        }
        return inst;
    }

    double outcome_probability(std::uint64_t mask) const {
        double p = 1.0;
        for (std::size_t r = 0; r < probs.size(); ++r) {
            p *= ((mask >> r) & 1u) ? probs[r] : 1.0 - probs[r];
        }
        return p;
    }

    // Deterministic cascade under a fixed coin assignment.
    std::size_t cascade(std::span<const NodeId> seeds, std::uint64_t mask,
                        std::vector<char>& active, std::vector<NodeId>& order) const {
        std::fill(active.begin(), active.end(), 0);
        order.clear();
        for (const NodeId s : seeds) {
            if (!active[s]) {
                active[s] = 1;
                order.push_back(s);
            }
        }
        // Each interval rescans the activation list from the start, so nodes
        // active since earlier intervals re-attempt under the new interval's
        // records; mid-interval activations are appended and scanned too.
        for (std::size_t slot = 0; slot < by_interval_source.size(); ++slot) {
            for (std::size_t head = 0; head < order.size(); ++head) {
                for (const Try& att : by_interval_source[slot][order[head]]) {
                    if (active[att.target]) continue;
                    if ((mask >> att.record) & 1u) {
                        active[att.target] = 1;
                        order.push_back(att.target);
                    }
                }
            }
        }
        return order.size();
    }
};

} // namespace detail

// Exact per-node activation probability under a single uniformly random seed,
// by exhaustive enumeration of all coin outcomes. Throws BoundExceeded when
// the window holds more than max_records stored records.
inline std::vector<double> exact_activation_probabilities(const TemporalNetwork& net,
                                                          const Window& window,
                                                          std::size_t max_records = 20) {
    const auto inst = detail::ExactInstance::build(net, window, max_records);
    const std::size_t n = inst.node_count;
    if (n == 0) throw InvalidArgument("network has no nodes");
    std::vector<double> probs(n, 0.0);
    std::vector<char> active(n, 0);
    std::vector<NodeId> order;
    order.reserve(n);
    const std::uint64_t outcomes = 1ull << inst.probs.size();
    for (NodeId s = 0; s < n; ++s) {
        for (std::uint64_t mask = 0; mask < outcomes; ++mask) {
            const double pm = inst.outcome_probability(mask);
            if (pm == 0.0) continue;
            inst.cascade(std::span<const NodeId>(&s, 1), mask, active, order);
            for (const NodeId v : order) probs[v] += pm;
        }
    }
    for (double& p : probs) p /= static_cast<double>(n);
    return probs;
}

// Exact distribution moments of the final active count for a fixed seed set.
inline ExactSpread exact_expected_actives(const TemporalNetwork& net, std::span<const NodeId> seeds,
                                          const Window& window, std::size_t max_records = 20) {
    if (seeds.empty()) throw InvalidArgument("seed set must be nonempty");
    for (const NodeId s : seeds) {
        if (s >= net.node_count()) throw InvalidArgument("seed node out of range");
    }
    const auto inst = detail::ExactInstance::build(net, window, max_records);
    std::vector<char> active(inst.node_count, 0);
    std::vector<NodeId> order;
    order.reserve(inst.node_count);
    const std::uint64_t outcomes = 1ull << inst.probs.size();
    double mean = 0.0;
    double second = 0.0;
    for (std::uint64_t mask = 0; mask < outcomes; ++mask) {
        const double pm = inst.outcome_probability(mask);
        if (pm == 0.0) continue;
        const double size = static_cast<double>(inst.cascade(seeds, mask, active, order));
        mean += pm * size;
        second += pm * size * size;
    }
    return ExactSpread{mean, second - mean * mean};
}

} // namespace tic
