#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tic/cascade.hpp"
#include "tic/error.hpp"
#include "tic/parallel.hpp"
#include "tic/rng.hpp"
#include "tic/temporal_network.hpp"
#include "tic/venues.hpp"

namespace tic {

struct EdgeDropResult {
    TemporalNetwork network;
    std::size_t removed_records = 0;
    // Per-venue removal counts in venue rank order; empty for random drops.
    std::vector<std::pair<std::string, std::size_t>> venue_allocation;
};

namespace detail {

inline TemporalNetwork rebuild_without(const TemporalNetwork& net,
                                       const std::vector<char>& dropped) {
    const auto records = net.records();
    std::vector<EdgeRecord> kept;
    kept.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!dropped[i]) kept.push_back(records[i]);
    }
    return TemporalNetwork::build(net.node_count(), net.interval_count(), kept);
}

inline std::size_t drop_target(double fraction, std::size_t record_count) {
    if (!(fraction >= 0.0 && fraction <= 1.0)) {
        throw InvalidArgument("drop fraction must lie in [0, 1]");
    }
    return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(record_count)));
}

} // namespace detail

// Removes floor(fraction * records) stored transmission records, chosen
// uniformly without replacement.
inline EdgeDropResult drop_edges_random(const TemporalNetwork& net, double fraction, Rng& rng) {
    const std::size_t count = net.record_count();
    const std::size_t n_drop = detail::drop_target(fraction, count);
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<char> dropped(count, 0);
    for (std::size_t i = 0; i < n_drop; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.next_index(count - i));
        std::swap(order[i], order[j]);
        dropped[order[i]] = 1;
    }
    return EdgeDropResult{detail::rebuild_without(net, dropped), n_drop, {}};
}

// Removes floor(fraction * records) stored records concentrated on the top_v
// venues with the most attached records. The removal budget is split across
// those venues by largest-remainder proportional allocation; shares above a
// venue's record count spill over to ranked venues with spare capacity.
// Throws when the top venues together hold fewer records than the budget.
inline EdgeDropResult drop_edges_priority(const TemporalNetwork& net, double fraction,
                                          const VenueMap& venue_map, std::size_t top_v, Rng& rng) {
    if (top_v == 0) throw InvalidArgument("top_v must be at least 1");
    const auto records = net.records();
    const std::size_t n_drop = detail::drop_target(fraction, records.size());
    std::vector<std::pair<std::string, std::vector<std::size_t>>> groups;
    {
        std::map<std::string, std::vector<std::size_t>> by_venue;
        for (std::size_t i = 0; i < records.size(); ++i) {
            const EdgeRecord& rec = records[i];
            if (const std::string* venue = venue_map.venue_of(rec.u, rec.v, rec.t)) {
                by_venue[*venue].push_back(i);
            }
        }
        groups.assign(by_venue.begin(), by_venue.end());
    }
    if (groups.empty()) throw InvalidArgument("no stored record maps to a venue");
    std::stable_sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) {
        return a.second.size() != b.second.size() ? a.second.size() > b.second.size()
                                                  : a.first < b.first;
    });
    groups.resize(std::min(top_v, groups.size()));
    std::size_t capacity = 0;
    for (const auto& [venue, members] : groups) capacity += members.size();
    if (capacity < n_drop) {
        throw InvalidArgument("top venues hold fewer records than the removal budget");
    }
    // Largest-remainder split of n_drop proportional to venue record counts.
    std::vector<std::size_t> alloc(groups.size(), 0);
    std::vector<std::pair<double, std::size_t>> remainder(groups.size());
    std::size_t assigned = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const double share = static_cast<double>(n_drop) *
                             static_cast<double>(groups[g].second.size()) /
                             static_cast<double>(capacity);
        alloc[g] = static_cast<std::size_t>(std::floor(share));
        remainder[g] = {share - std::floor(share), g};
        assigned += alloc[g];
    }
    std::stable_sort(remainder.begin(), remainder.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; assigned < n_drop && i < remainder.size(); ++i) {
        alloc[remainder[i].second] += 1;
        ++assigned;
    }
    std::size_t spill = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (alloc[g] > groups[g].second.size()) {
            spill += alloc[g] - groups[g].second.size();
            alloc[g] = groups[g].second.size();
        }
    }
    for (std::size_t g = 0; g < groups.size() && spill > 0; ++g) {
        const std::size_t spare = groups[g].second.size() - alloc[g];
        const std::size_t take = std::min(spare, spill);
        alloc[g] += take;
        spill -= take;
    }
    std::vector<char> dropped(records.size(), 0);
    EdgeDropResult out;
    out.removed_records = n_drop;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        auto& members = groups[g].second;
        for (std::size_t i = 0; i < alloc[g]; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.next_index(members.size() - i));
            std::swap(members[i], members[j]);
            dropped[members[i]] = 1;
        }
        out.venue_allocation.emplace_back(groups[g].first, alloc[g]);
    }
    out.network = detail::rebuild_without(net, dropped);
    return out;
}

struct SpreadReductionResult {
    double original_mean = 0.0;
    double modified_mean = 0.0;
    double original_se = 0.0;
    double modified_se = 0.0;
    double reduction_pct = 0.0;
    std::vector<std::size_t> original_sizes; // final active counts per run
    std::vector<std::size_t> modified_sizes;
};

namespace detail {

inline std::uint64_t run_key(std::uint64_t seed, std::uint64_t k) {
    return mix64(seed ^ (k + 1) * 0x9E3779B97F4A7C15ull);
}

inline void mean_se(const std::vector<std::size_t>& sizes, double& mean, double& se) {
    const double n = static_cast<double>(sizes.size());
    double sum = 0.0;
    for (const std::size_t s : sizes) sum += static_cast<double>(s);
    mean = sum / n;
    double ss = 0.0;
    for (const std::size_t s : sizes) {
        const double d = static_cast<double>(s) - mean;
        ss += d * d;
    }
    se = sizes.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
}

} // namespace detail

// Percent reduction of mean final spread from the given seeds after an edge
// intervention. Run k uses coins keyed by (seed, k, record), the same on both
// networks, so removing a superset of records never grows a run's spread.
inline SpreadReductionResult spread_reduction(const TemporalNetwork& original,
                                              const TemporalNetwork& modified,
                                              std::span<const NodeId> seeds, const Window& window,
                                              std::size_t n_sims, std::uint64_t seed,
                                              unsigned n_workers = 1) {
    if (original.node_count() != modified.node_count()) {
        throw InvalidArgument("networks must share one node space");
    }
    if (n_sims == 0) throw InvalidArgument("n_sims must be at least 1");
    original.check_window(window);
    modified.check_window(window);
    if (seeds.empty()) throw InvalidArgument("seed set must be nonempty");
    SpreadReductionResult out;
    out.original_sizes.resize(n_sims);
    out.modified_sizes.resize(n_sims);
    run_partitioned(n_sims, n_workers, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
        CascadeEngine eng_orig(original);
        CascadeEngine eng_mod(modified);
        for (std::uint64_t k = begin; k < end; ++k) {
            const std::uint64_t key = detail::run_key(seed, k);
            out.original_sizes[k] = eng_orig.run_keyed(seeds, window, key).size();
            out.modified_sizes[k] = eng_mod.run_keyed(seeds, window, key).size();
        }
    });
    detail::mean_se(out.original_sizes, out.original_mean, out.original_se);
    detail::mean_se(out.modified_sizes, out.modified_mean, out.modified_se);
    out.reduction_pct = 100.0 * (1.0 - out.modified_mean / out.original_mean);
    return out;
}

struct BackwardTraceResult {
    // Participation counts (events whose run contained the node), descending,
    // ties to the lower id; only nodes with nonzero counts appear.
    std::vector<std::pair<NodeId, std::uint64_t>> participation;
    std::vector<NodeId> top_contributors;
    double contribution_pct = 0.0;
    std::uint64_t total_events = 0;
    std::uint64_t runs_with_events = 0;
};

// Traces solution-set activations back to likely spreaders. An event is one
// solution member active at the end of a run; every run contributing events
// credits its other active nodes (or all active nodes when
// include_solution_members is set). contribution_pct is the share of events
// from runs containing at least one of the top_c ranked nodes. With
// exhaustive_seeds, one run starts from every node in turn instead of n_sims
// random seeds.
inline BackwardTraceResult backward_contribution(const TemporalNetwork& net,
                                                 std::span<const NodeId> solution,
                                                 const Window& window, std::size_t top_c,
                                                 std::size_t n_sims, std::uint64_t seed,
                                                 bool exhaustive_seeds = false,
                                                 bool include_solution_members = false,
                                                 unsigned n_workers = 1) {
    if (top_c == 0) throw InvalidArgument("top_c must be at least 1");
    net.check_window(window);
    if (solution.empty()) throw InvalidArgument("solution set must be nonempty");
    std::vector<char> member(net.node_count(), 0);
    for (const NodeId v : solution) {
        if (v >= net.node_count()) throw InvalidArgument("node id out of range");
        member[v] = 1;
    }
    const std::size_t n_runs = exhaustive_seeds ? net.node_count() : n_sims;
    if (n_runs == 0) throw InvalidArgument("n_sims must be at least 1");
    std::vector<std::uint32_t> events(n_runs, 0);
    std::vector<std::vector<NodeId>> participants(n_runs);
    run_partitioned(n_runs, n_workers, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
        CascadeEngine engine(net);
        for (std::uint64_t k = begin; k < end; ++k) {
            Rng rng = Rng::stream(seed, k);
            const NodeId s = exhaustive_seeds
                                 ? static_cast<NodeId>(k)
                                 : static_cast<NodeId>(rng.next_index(net.node_count()));
            const auto active = engine.run(std::span<const NodeId>(&s, 1), window, rng);
            std::uint32_t hit = 0;
            for (const NodeId v : active) {
                if (member[v]) ++hit;
            }
            if (hit == 0) continue;
            events[k] = hit;
            for (const NodeId v : active) {
                if (include_solution_members || !member[v]) participants[k].push_back(v);
            }
        }
    });
    BackwardTraceResult out;
    std::vector<std::uint64_t> count(net.node_count(), 0);
    for (std::size_t k = 0; k < n_runs; ++k) {
        if (events[k] == 0) continue;
        out.total_events += events[k];
        out.runs_with_events += 1;
        for (const NodeId v : participants[k]) count[v] += events[k];
    }
    for (NodeId v = 0; v < net.node_count(); ++v) {
        if (count[v] > 0) out.participation.emplace_back(v, count[v]);
    }
    std::stable_sort(out.participation.begin(), out.participation.end(),
                     [](const auto& a, const auto& b) {
                         return a.second != b.second ? a.second > b.second : a.first < b.first;
                     });
    const std::size_t top = std::min(top_c, out.participation.size());
    for (std::size_t i = 0; i < top; ++i) out.top_contributors.push_back(out.participation[i].first);
    if (out.total_events > 0 && !out.top_contributors.empty()) {
        std::vector<char> is_top(net.node_count(), 0);
        for (const NodeId v : out.top_contributors) is_top[v] = 1;
        std::uint64_t credited = 0;
        for (std::size_t k = 0; k < n_runs; ++k) {
            if (events[k] == 0) continue;
            for (const NodeId v : participants[k]) {
                if (is_top[v]) {
                    credited += events[k];
                    break;
                }
            }
        }
        out.contribution_pct =
            100.0 * static_cast<double>(credited) / static_cast<double>(out.total_events);
    }
    return out;
}

} // namespace tic
