#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tic/cascade.hpp"
#include "tic/error.hpp"
#include "tic/hypergraph.hpp"
#include "tic/parallel.hpp"
#include "tic/rng.hpp"
#include "tic/temporal_network.hpp"

namespace tic {

// Builds the sampling hypergraph: n_nets cascades, each from one uniformly
// random seed, each net the run's final active set. Sampling runs on the
// network as given, never on its transpose. Net k draws from stream (seed, k),
// so the result is byte-identical for any worker count.
inline Hypergraph build_hypergraph(const TemporalNetwork& net, const Window& window,
                                   std::size_t n_nets, std::uint64_t seed,
                                   unsigned n_workers = 1) {
    net.check_window(window);
    if (n_nets == 0) throw InvalidArgument("n_nets must be at least 1");
    if (net.node_count() == 0) throw InvalidArgument("network has no nodes");
    std::vector<std::vector<NodeId>> nets(n_nets);
    std::vector<NodeId> seeds(n_nets);
    run_partitioned(n_nets, n_workers, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
        CascadeEngine engine(net);
        for (std::uint64_t k = begin; k < end; ++k) {
            Rng rng = Rng::stream(seed, k);
            const NodeId s = static_cast<NodeId>(rng.next_index(net.node_count()));
            const auto active = engine.run(std::span<const NodeId>(&s, 1), window, rng);
            nets[k].assign(active.begin(), active.end());
            seeds[k] = s;
        }
    });
    return Hypergraph(net.node_count(), std::move(nets), std::move(seeds));
}

// Sampling estimate of expected influence in the window: |V| * deg(S) / |N|.
inline double estimate_influence(const Hypergraph& h, std::span<const NodeId> nodes) {
    if (h.n_nets() == 0) throw InvalidArgument("hypergraph has no nets");
    return static_cast<double>(h.node_count()) *
           static_cast<double>(h.degree_of_set(nodes)) / static_cast<double>(h.n_nets());
}

} // namespace tic
