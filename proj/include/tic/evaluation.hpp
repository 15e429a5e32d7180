#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "tic/cascade.hpp"
#include "tic/error.hpp"
#include "tic/hypergraph.hpp"
#include "tic/parallel.hpp"
#include "tic/rng.hpp"
#include "tic/sampler.hpp"
#include "tic/temporal_network.hpp"

namespace tic {

// A reusable batch of forward simulations, each from one uniformly random
// seed. Evaluating different node sets against one batch keeps the random
// numbers common, so metric comparisons are run-by-run consistent.
struct SimulationBatch {
    std::size_t node_count = 0;
    Window window{1, 1};
    std::vector<NodeId> seeds;                // one per simulation
    std::vector<std::vector<NodeId>> actives; // final active sets, activation order
};

inline SimulationBatch simulate_batch(const TemporalNetwork& net, const Window& window,
                                      std::size_t n_sims, std::uint64_t seed,
                                      unsigned n_workers = 1) {
    net.check_window(window);
    if (n_sims == 0) throw InvalidArgument("n_sims must be at least 1");
    if (net.node_count() == 0) throw InvalidArgument("network has no nodes");
    SimulationBatch batch;
    batch.node_count = net.node_count();
    batch.window = window;
    batch.seeds.resize(n_sims);
    batch.actives.resize(n_sims);
    run_partitioned(n_sims, n_workers, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
        CascadeEngine engine(net);
        for (std::uint64_t k = begin; k < end; ++k) {
            Rng rng = Rng::stream(seed, k);
            const NodeId s = static_cast<NodeId>(rng.next_index(net.node_count()));
            const auto active = engine.run(std::span<const NodeId>(&s, 1), window, rng);
            batch.seeds[k] = s;
            batch.actives[k].assign(active.begin(), active.end());
        }
    });
    return batch;
}

// Expected number of nodes that would reach the set: |V| * deg(S) / |N| on the
// sampling hypergraph.
inline double reverse_spread(const Hypergraph& h, std::span<const NodeId> nodes) {
    return estimate_influence(h, nodes);
}

// Fraction of simulations in which at least one member of the set turns
// active. With count_seed false, a member that is the run's own seed does not
// count as a detection by itself.
inline double binary_success_rate(const SimulationBatch& batch, std::span<const NodeId> nodes,
                                  bool count_seed = true) {
    std::vector<char> member(batch.node_count, 0);
    for (const NodeId v : nodes) {
        if (v >= batch.node_count) throw InvalidArgument("node id out of range");
        member[v] = 1;
    }
    if (batch.seeds.empty()) throw InvalidArgument("empty simulation batch");
    std::size_t hits = 0;
    for (std::size_t k = 0; k < batch.actives.size(); ++k) {
        for (const NodeId v : batch.actives[k]) {
            if (member[v] && (count_seed || v != batch.seeds[k])) {
                ++hits;
                break;
            }
        }
    }
    return static_cast<double>(hits) / static_cast<double>(batch.actives.size());
}

// Mean number of set members active at the end of a run.
inline double expected_spread(const SimulationBatch& batch, std::span<const NodeId> nodes) {
    std::vector<char> member(batch.node_count, 0);
    for (const NodeId v : nodes) {
        if (v >= batch.node_count) throw InvalidArgument("node id out of range");
        member[v] = 1;
    }
    if (batch.seeds.empty()) throw InvalidArgument("empty simulation batch");
    std::uint64_t total = 0;
    for (const auto& active : batch.actives) {
        for (const NodeId v : active) {
            if (member[v]) ++total;
        }
    }
    return static_cast<double>(total) / static_cast<double>(batch.actives.size());
}

// Rescales scores onto [0, 10]: minimum to 0, maximum to 10. All-equal inputs
// map to all zeros.
inline std::vector<double> normalize_scores(std::span<const double> values) {
    if (values.empty()) throw InvalidArgument("nothing to normalize");
    double lo = values[0];
    double hi = values[0];
    for (const double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    std::vector<double> out(values.size(), 0.0);
    if (hi == lo) return out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        out[i] = 10.0 * (values[i] - lo) / (hi - lo);
    }
    return out;
}

} // namespace tic
