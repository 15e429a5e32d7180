#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tic/error.hpp"
#include "tic/rng.hpp"
#include "tic/temporal_network.hpp"

namespace tic {

// One observed interaction between two nodes. Events are undirected
// observations: an event (u,v) carries force for both ordered pairs.
struct ContactEvent {
    NodeId u = 0;
    NodeId v = 0;
    IntervalIndex t = 1;
    std::optional<double> distance;       // meters; absent = no proximity info
    std::optional<int> co_located_count;  // people at the shared venue, >= 1
};

// Hyper-parameters of the force-of-infection model. Two presets mirror the
// usual dataset classes; every field is overridable.
struct InfectionForceParams {
    double a = 0.0;              // proximity term weight
    double b = 0.0;              // density term weight
    double rho1 = 0.1;           // proximity decay
    double rho2 = 0.1;           // density decay
    double dist_threshold = 5.0; // meters; beyond it the proximity term is zero
    IntervalIndex history_window = 1; // t0, in interval units

    // Density-driven contacts (co-location counts, no distances).
    static InfectionForceParams density_profile(double b = 0.05) {
        InfectionForceParams p;
        p.a = 0.0;
        p.b = b;
        p.rho2 = 0.1;
        return p;
    }

    // Proximity-driven contacts (pairwise distances, no venue counts).
    static InfectionForceParams proximity_profile() {
        InfectionForceParams p;
        p.a = 0.05;
        p.b = 0.0;
        p.rho1 = 0.1;
        p.dist_threshold = 5.0;
        return p;
    }

    void validate() const {
        if (!(a >= 0.0) || !(b >= 0.0)) throw InvalidArgument("a and b must be >= 0");
        if (!(rho1 > 0.0) || !(rho2 > 0.0)) throw InvalidArgument("rho1 and rho2 must be > 0");
        if (!(dist_threshold > 0.0)) throw InvalidArgument("distance threshold must be > 0");
        if (history_window < 1) throw InvalidArgument("history window must be >= 1 interval");
    }
};

// Per-event transmission hazard: a*exp(-d*rho1) + b*exp(-rho2/m). A term is
// zero when its observation is absent, or (for the proximity term) when the
// distance exceeds the threshold.
inline double infection_force(const InfectionForceParams& params, const ContactEvent& event) {
    double force = 0.0;
    if (event.distance && *event.distance <= params.dist_threshold)
        force += params.a * std::exp(-*event.distance * params.rho1);
    if (event.co_located_count && *event.co_located_count >= 1)
        force += params.b * std::exp(-params.rho2 / static_cast<double>(*event.co_located_count));
    return force;
}

// Sum of forces over events matching the unordered pair {u,v} whose interval
// lies in the half-open history window (t - t0, t].
inline double accumulated_force(const InfectionForceParams& params,
                                std::span<const ContactEvent> events, NodeId u, NodeId v,
                                IntervalIndex t) {
    const IntervalIndex lo = t - params.history_window; // exclusive
    double sum = 0.0;
    for (const ContactEvent& e : events) {
        const bool pair_match = (e.u == u && e.v == v) || (e.u == v && e.v == u);
        if (pair_match && e.t > lo && e.t <= t) sum += infection_force(params, e);
    }
    return sum;
}

// 1 - exp(-sum of forces), strictly increasing from [0,inf) into [0,1).
inline double propagation_probability(double force_sum) {
    if (!(force_sum >= 0.0)) throw InvalidArgument("accumulated force must be >= 0");
    return -std::expm1(-force_sum);
}

// Builds the full temporal network from contact observations: for every pair
// with at least one event and every interval, the probability is the mapped
// accumulated force over that interval's history window. Events being
// undirected, both directions are stored.
inline TemporalNetwork assign_from_contacts(const InfectionForceParams& params,
                                            std::span<const ContactEvent> events,
                                            std::size_t node_count, IntervalIndex interval_count) {
    params.validate();
    for (const ContactEvent& e : events) {
        if (e.u >= node_count || e.v >= node_count)
            throw InvalidArgument("contact event node id out of range");
        if (e.u == e.v) throw InvalidArgument("contact event joins a node to itself");
        if (e.t < 1 || e.t > interval_count)
            throw InvalidArgument("contact event interval out of range");
        if (e.distance && *e.distance < 0.0) throw InvalidArgument("negative contact distance");
        if (e.co_located_count && *e.co_located_count < 1)
            throw InvalidArgument("co-location count must be >= 1");
    }

    // Group per unordered pair so each pair's window sums touch only its own events.
    std::map<std::pair<NodeId, NodeId>, std::vector<ContactEvent>> by_pair;
    for (const ContactEvent& e : events) {
        auto key = std::minmax(e.u, e.v);
        by_pair[{key.first, key.second}].push_back(e);
    }

    std::vector<EdgeRecord> records;
    for (const auto& [pair, pair_events] : by_pair) {
        // Per-interval force of this pair, then prefix sums for O(1) window sums.
        std::vector<double> force(static_cast<std::size_t>(interval_count) + 1, 0.0);
        for (const ContactEvent& e : pair_events)
            force[static_cast<std::size_t>(e.t)] += infection_force(params, e);
        std::vector<double> prefix(force.size() + 1, 0.0);
        for (std::size_t t = 1; t < force.size(); ++t) prefix[t + 1] = prefix[t] + force[t];

        for (IntervalIndex t = 1; t <= interval_count; ++t) {
            const IntervalIndex lo = std::max<IntervalIndex>(0, t - params.history_window);
            const double sum =
                prefix[static_cast<std::size_t>(t) + 1] - prefix[static_cast<std::size_t>(lo) + 1];
            const double p = propagation_probability(sum);
            if (p > 0.0) {
                records.push_back({pair.first, pair.second, t, p});
                records.push_back({pair.second, pair.first, t, p});
            }
        }
    }
    return TemporalNetwork::build(node_count, interval_count, records);
}

// Social-network style assignment: each directed edge gets one uniform interval
// in [1, interval_count] and one probability uniform in [0, p_max].
inline TemporalNetwork assign_uniform_random(std::span<const std::pair<NodeId, NodeId>> edges,
                                             std::size_t node_count, IntervalIndex interval_count,
                                             double p_max, Rng& rng) {
    if (!(p_max > 0.0 && p_max <= 1.0)) throw InvalidArgument("p_max must be in (0,1]");
    std::vector<EdgeRecord> records;
    records.reserve(edges.size());
    for (const auto& [u, v] : edges) {
        const auto t = static_cast<IntervalIndex>(
            1 + rng.next_index(static_cast<std::uint64_t>(interval_count)));
        records.push_back({u, v, t, rng.next_double() * p_max});
    }
    return TemporalNetwork::build(node_count, interval_count, records);
}

} // namespace tic
