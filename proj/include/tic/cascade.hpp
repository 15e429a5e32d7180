#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "tic/error.hpp"
#include "tic/parallel.hpp"
#include "tic/rng.hpp"
#include "tic/temporal_network.hpp"

namespace tic {

// One realization of the temporal cascade process. newly_active holds one list
// per interval of the window, in activation order; seeds are recorded under the
// interval before window.first via the seeds field, not in newly_active.
struct CascadeTrace {
    std::vector<NodeId> seeds;
    Window window{1, 1};
    std::vector<std::vector<NodeId>> newly_active;
    std::vector<NodeId> final_active; // sorted ascending
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Sequential draws from a stream: cheap, bit-reproducible traces.
struct SequentialDraw {
    Rng* rng;
    double operator()(NodeId, NodeId, IntervalIndex) { return rng->next_double(); }
};

// Counter-based draws keyed by (run key, u, v, t). Each stored transmission
// record is attempted at most once per realization, so this is an ordinary
// independent-coin realization; unlike sequential draws it keeps coins aligned
// across edge-modified copies of a network, making removal experiments
// monotone run by run.
struct KeyedDraw {
    std::uint64_t key;
    double operator()(NodeId u, NodeId v, IntervalIndex t) {
        const std::uint64_t pair = (static_cast<std::uint64_t>(u) << 32) | v;
        std::uint64_t h = key ^ mix64(pair + 0x9E3779B97F4A7C15ull);
        h = mix64(h + static_cast<std::uint64_t>(static_cast<std::uint32_t>(t)));
        return static_cast<double>(h >> 11) * 0x1.0p-53;
    }
};

} // namespace detail

// Runs cascades over one network with reusable buffers. Within an interval the
// process is a breadth-first epidemic run to completion: every node active at
// any point of the interval attempts each still-inactive out-neighbor exactly
// once with the interval's probability. Active nodes persist and re-attempt in
// every later interval of the window.
class CascadeEngine {
public:
    explicit CascadeEngine(const TemporalNetwork& net)
        : net_(&net), stamp_(net.node_count(), 0) {}

    // Returns the active nodes in activation order (seeds first, duplicates
    // dropped). The span is valid until the next run on this engine.
    std::span<const NodeId> run(std::span<const NodeId> seeds, const Window& window, Rng& rng) {
        detail::SequentialDraw draw{&rng};
        return run_impl(seeds, window, draw);
    }

    // Same process with draws keyed by (run_key, edge, interval); see KeyedDraw.
    std::span<const NodeId> run_keyed(std::span<const NodeId> seeds, const Window& window,
                                      std::uint64_t run_key) {
        detail::KeyedDraw draw{run_key};
        return run_impl(seeds, window, draw);
    }

    // interval_sizes()[0] is the seed count; entry i > 0 is the number of
    // active nodes after interval window.first + i - 1. Entries index prefixes
    // of the last run's activation-order list.
    std::span<const std::size_t> interval_sizes() const { return bounds_; }

private:
    template <typename Draw>
    std::span<const NodeId> run_impl(std::span<const NodeId> seeds, const Window& window, Draw& draw) {
        net_->check_window(window);
        if (seeds.empty()) throw InvalidArgument("seed set must be nonempty");
        if (++round_ == 0) {
            std::fill(stamp_.begin(), stamp_.end(), 0);
            round_ = 1;
        }
        active_.clear();
        bounds_.clear();
        for (const NodeId s : seeds) {
            if (s >= net_->node_count()) throw InvalidArgument("seed node out of range");
            if (stamp_[s] != round_) {
                stamp_[s] = round_;
                active_.push_back(s);
            }
        }
        bounds_.push_back(active_.size());
        for (IntervalIndex t = window.first; t <= window.last; ++t) {
            queue_.assign(active_.begin(), active_.end());
            for (std::size_t head = 0; head < queue_.size(); ++head) {
                const NodeId u = queue_[head];
                for (const auto& arc : net_->neighbors_at(u, t)) {
                    if (stamp_[arc.target] == round_) continue;
                    if (draw(u, arc.target, t) < arc.p) {
                        stamp_[arc.target] = round_;
                        active_.push_back(arc.target);
                        queue_.push_back(arc.target);
                    }
                }
            }
            bounds_.push_back(active_.size());
        }
        return active_;
    }

    const TemporalNetwork* net_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t round_ = 0;
    std::vector<NodeId> active_;
    std::vector<NodeId> queue_;
    std::vector<std::size_t> bounds_;
};

// Single full-trace realization.
inline CascadeTrace run_tic(const TemporalNetwork& net, std::span<const NodeId> seeds,
                            const Window& window, Rng& rng) {
    CascadeEngine engine(net);
    const auto order = engine.run(seeds, window, rng);
    const auto bounds = engine.interval_sizes();
    CascadeTrace trace;
    trace.seeds.assign(seeds.begin(), seeds.end());
    trace.window = window;
    trace.newly_active.resize(static_cast<std::size_t>(window.length()));
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        trace.newly_active[i].assign(order.begin() + static_cast<std::ptrdiff_t>(bounds[i]),
                                     order.begin() + static_cast<std::ptrdiff_t>(bounds[i + 1]));
    }
    trace.final_active.assign(order.begin(), order.end());
    std::sort(trace.final_active.begin(), trace.final_active.end());
    return trace;
}

// Monte Carlo estimate of per-node activation probability when the cascade
// starts from a single uniformly random seed. Simulation k draws from stream
// (seed, k), so results are independent of the worker count.
inline std::vector<double> estimate_activation_probabilities(const TemporalNetwork& net,
                                                             const Window& window,
                                                             std::uint64_t n_sims,
                                                             std::uint64_t seed,
                                                             unsigned n_workers = 1) {
    net.check_window(window);
    if (n_sims == 0) throw InvalidArgument("n_sims must be at least 1");
    if (net.node_count() == 0) throw InvalidArgument("network has no nodes");
    const unsigned workers = resolve_workers(n_workers);
    std::vector<std::vector<std::uint64_t>> partial(workers,
                                                    std::vector<std::uint64_t>(net.node_count(), 0));
    run_partitioned(n_sims, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        CascadeEngine engine(net);
        auto& counts = partial[w];
        for (std::uint64_t k = begin; k < end; ++k) {
            Rng rng = Rng::stream(seed, k);
            const NodeId s = static_cast<NodeId>(rng.next_index(net.node_count()));
            for (const NodeId v : engine.run(std::span<const NodeId>(&s, 1), window, rng)) {
                ++counts[v];
            }
        }
    });
    std::vector<double> probs(net.node_count(), 0.0);
    for (const auto& counts : partial) {
        for (std::size_t v = 0; v < counts.size(); ++v) probs[v] += static_cast<double>(counts[v]);
    }
    for (double& p : probs) p /= static_cast<double>(n_sims);
    return probs;
}

} // namespace tic
