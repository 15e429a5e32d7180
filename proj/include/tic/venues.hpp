#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tic/error.hpp"
#include "tic/temporal_network.hpp"

namespace tic {

struct VenueInfo {
    std::string category;
    std::uint64_t visits = 0;
};

// Links transmission records to the venue whose co-location produced them and
// keeps per-venue metadata. Ordered maps keep every traversal deterministic.
struct VenueMap {
    std::map<std::tuple<NodeId, NodeId, IntervalIndex>, std::string> edge_venue;
    std::map<std::string, VenueInfo> venues;

    const std::string* venue_of(NodeId u, NodeId v, IntervalIndex t) const {
        const auto it = edge_venue.find({u, v, t});
        return it == edge_venue.end() ? nullptr : &it->second;
    }
};

// One observed visit of a node at a venue during an interval.
struct NodeCheckin {
    NodeId node;
    std::string venue;
    IntervalIndex t;
};

struct VenueCoverage {
    std::vector<std::string> venues; // distinct venues visited, sorted
    std::vector<std::pair<std::string, std::size_t>> category_histogram;
};

// Venues a node set would monitor: the distinct venues its members check in
// at, restricted to the window when one is given. The histogram counts
// distinct venues per category, ordered by count descending then name.
inline VenueCoverage venue_coverage(std::span<const NodeId> nodes, const VenueMap& venue_map,
                                    std::span<const NodeCheckin> checkins,
                                    std::optional<Window> window = std::nullopt) {
    std::vector<char> member;
    NodeId max_node = 0;
    for (const NodeCheckin& c : checkins) max_node = std::max(max_node, c.node);
    for (const NodeId v : nodes) max_node = std::max(max_node, v);
    member.assign(static_cast<std::size_t>(max_node) + 1, 0);
    for (const NodeId v : nodes) member[v] = 1;
    std::vector<std::string> venues;
    for (const NodeCheckin& c : checkins) {
        if (!member[c.node]) continue;
        if (window && (c.t < window->first || c.t > window->last)) continue;
        venues.push_back(c.venue);
    }
    std::sort(venues.begin(), venues.end());
    venues.erase(std::unique(venues.begin(), venues.end()), venues.end());
    std::map<std::string, std::size_t> by_category;
    for (const std::string& venue : venues) {
        const auto it = venue_map.venues.find(venue);
        const std::string category =
            (it != venue_map.venues.end() && !it->second.category.empty()) ? it->second.category
                                                                           : "uncategorized";
        by_category[category] += 1;
    }
    VenueCoverage out;
    out.venues = std::move(venues);
    out.category_histogram.assign(by_category.begin(), by_category.end());
    std::stable_sort(out.category_histogram.begin(), out.category_histogram.end(),
                     [](const auto& a, const auto& b) {
                         return a.second != b.second ? a.second > b.second : a.first < b.first;
                     });
    return out;
}

} // namespace tic
