#pragma once

#include <cstdint>
#include <vector>

#include "tic/rng.hpp"
#include "tic/temporal_network.hpp"

namespace support {

// Tiny random instances small enough for the exact enumeration oracle:
// up to 5 nodes, up to 6 stored (edge, interval) records, up to 3 intervals.
// A fifth of the draws use the degenerate probabilities 0 and 1 so boundary
// behavior gets exercised too.
inline tic::TemporalNetwork tiny_instance(std::uint64_t family_seed, std::uint64_t index,
                                          tic::Window* window_out = nullptr) {
    tic::Rng rng = tic::Rng::stream(family_seed, index);
    const std::size_t n_nodes = 2 + rng.next_index(4);
    const tic::IntervalIndex n_intervals = static_cast<tic::IntervalIndex>(1 + rng.next_index(3));
    const std::size_t n_records = 1 + rng.next_index(6);
    std::vector<tic::EdgeRecord> records;
    for (std::size_t r = 0; r < n_records; ++r) {
        tic::EdgeRecord rec;
        rec.u = static_cast<tic::NodeId>(rng.next_index(n_nodes));
        rec.v = static_cast<tic::NodeId>(rng.next_index(n_nodes - 1));
        if (rec.v >= rec.u) ++rec.v;
        rec.t = static_cast<tic::IntervalIndex>(1 + rng.next_index(
                    static_cast<std::uint64_t>(n_intervals)));
        const double kind = rng.next_double();
        if (kind < 0.1) {
            rec.p = 0.0;
        } else if (kind < 0.2) {
            rec.p = 1.0;
        } else {
            rec.p = rng.next_double();
        }
        records.push_back(rec);
    }
    if (window_out) *window_out = tic::Window{1, n_intervals};
    return tic::TemporalNetwork::build(n_nodes, n_intervals, records);
}

} // namespace support
