#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tic/csv.hpp"
#include "tic/error.hpp"
#include "tic/probability_model.hpp"
#include "tic/temporal_network.hpp"
#include "tic/venues.hpp"

namespace tic {

struct CheckinRecord {
    std::string user;
    std::string venue;
    std::uint64_t ts = 0; // epoch seconds
    std::string category; // may be empty
};

// Check-in file: header user,venue,ts plus optional category.
inline std::vector<CheckinRecord> load_checkins(const std::string& path) {
    CsvReader reader(path);
    const std::size_t cu = reader.column("user");
    const std::size_t cv = reader.column("venue");
    const std::size_t ct = reader.column("ts");
    const auto cc = reader.find_column("category");
    std::vector<CheckinRecord> out;
    while (reader.next_row()) {
        CheckinRecord rec;
        rec.user = reader.field(cu);
        rec.venue = reader.field(cv);
        if (rec.user.empty()) throw DataError(reader.where() + ": empty user id");
        if (rec.venue.empty()) throw DataError(reader.where() + ": empty venue id");
        rec.ts = reader.u64(ct);
        if (cc) rec.category = reader.field(*cc);
        out.push_back(std::move(rec));
    }
    return out;
}

struct PoiRecord {
    std::string id;
    std::string category;
    int open_min = 0;   // minute of day, inclusive
    int close_min = 0;  // minute of day, exclusive
    int dwell_min = 0;  // median visit duration, minutes
    double lat = 0.0;
    double lon = 0.0;
};

// POI file: header poi,category,open_min,close_min,dwell_min,lat,lon. One
// opening interval per POI, applied to every day.
inline std::vector<PoiRecord> load_pois(const std::string& path) {
    CsvReader reader(path);
    const std::size_t cid = reader.column("poi");
    const std::size_t ccat = reader.column("category");
    const std::size_t copen = reader.column("open_min");
    const std::size_t cclose = reader.column("close_min");
    const std::size_t cdwell = reader.column("dwell_min");
    const std::size_t clat = reader.column("lat");
    const std::size_t clon = reader.column("lon");
    std::vector<PoiRecord> out;
    std::set<std::string> seen;
    while (reader.next_row()) {
        PoiRecord poi;
        poi.id = reader.field(cid);
        if (poi.id.empty()) throw DataError(reader.where() + ": empty poi id");
        if (!seen.insert(poi.id).second) {
            throw DataError(reader.where() + ": duplicate poi id '" + poi.id + "'");
        }
        poi.category = reader.field(ccat);
        poi.open_min = static_cast<int>(reader.i64(copen));
        poi.close_min = static_cast<int>(reader.i64(cclose));
        poi.dwell_min = static_cast<int>(reader.i64(cdwell));
        poi.lat = reader.f64(clat);
        poi.lon = reader.f64(clon);
        if (poi.open_min < 0 || poi.close_min > 1440 || poi.open_min >= poi.close_min) {
            throw DataError(reader.where() + ": opening interval must satisfy 0 <= open < close <= 1440");
        }
        if (poi.dwell_min <= 0) throw DataError(reader.where() + ": dwell must be positive");
        if (poi.lat < -90.0 || poi.lat > 90.0 || poi.lon < -180.0 || poi.lon > 180.0) {
            throw DataError(reader.where() + ": coordinates out of range");
        }
        out.push_back(std::move(poi));
    }
    return out;
}

// Contact network assembled from co-location, before probability assignment.
// Intervals are 1-based calendar days within the observed span. Each event
// covers one unordered pair; probability assignment stores both directions.
struct ColocationResult {
    std::vector<std::string> node_labels; // dense id -> external id
    std::size_t node_count = 0;
    IntervalIndex interval_count = 1;
    std::vector<ContactEvent> events;
    VenueMap venue_map;
    std::vector<NodeCheckin> checkins; // deduplicated (node, venue, day)
};

// Connects every pair of users who check in at the same venue on the same
// calendar day; each event carries m = number of distinct visitors of that
// (venue, day). External user ids map to dense ids by first appearance.
inline ColocationResult build_colocation_daily(const std::vector<CheckinRecord>& checkins) {
    ColocationResult out;
    if (checkins.empty()) return out;
    std::map<std::string, NodeId> remap;
    for (const CheckinRecord& rec : checkins) {
        if (remap.emplace(rec.user, static_cast<NodeId>(out.node_labels.size())).second) {
            out.node_labels.push_back(rec.user);
        }
    }
    out.node_count = out.node_labels.size();
    std::uint64_t min_day = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t max_day = 0;
    for (const CheckinRecord& rec : checkins) {
        const std::uint64_t day = rec.ts / 86400;
        min_day = std::min(min_day, day);
        max_day = std::max(max_day, day);
    }
    out.interval_count = static_cast<IntervalIndex>(max_day - min_day + 1);
    // (venue, day) -> distinct visitors; venue metadata on the side.
    std::map<std::pair<std::string, IntervalIndex>, std::set<NodeId>> visitors;
    std::set<std::tuple<NodeId, std::string, IntervalIndex>> checkin_keys;
    for (const CheckinRecord& rec : checkins) {
        const IntervalIndex day = static_cast<IntervalIndex>(rec.ts / 86400 - min_day + 1);
        const NodeId node = remap.at(rec.user);
        visitors[{rec.venue, day}].insert(node);
        auto& info = out.venue_map.venues[rec.venue];
        info.visits += 1;
        if (info.category.empty() && !rec.category.empty()) info.category = rec.category;
        if (checkin_keys.insert({node, rec.venue, day}).second) {
            out.checkins.push_back(NodeCheckin{node, rec.venue, day});
        }
    }
    for (const auto& [key, nodes] : visitors) {
        if (nodes.size() < 2) continue;
        const auto& [venue, day] = key;
        const int m = static_cast<int>(nodes.size());
        for (auto it = nodes.begin(); it != nodes.end(); ++it) {
            for (auto jt = std::next(it); jt != nodes.end(); ++jt) {
                ContactEvent event;
                event.u = *it;
                event.v = *jt;
                event.t = day;
                event.co_located_count = m;
                out.events.push_back(event);
                out.venue_map.edge_venue.emplace(std::tuple{*it, *jt, day}, venue);
                out.venue_map.edge_venue.emplace(std::tuple{*jt, *it, day}, venue);
            }
        }
    }
    return out;
}

struct TrajectoryVisit {
    std::uint32_t individual = 0;
    std::uint32_t poi = 0;       // index into the POI list
    std::uint64_t arrive = 0;    // epoch seconds
    std::uint64_t depart = 0;    // arrive + dwell
};

// Connects individuals whose visits overlap the same (POI, slot); each event
// carries m = people in that slot. Repeated shared slots on one day produce
// repeated events, so longer overlaps accumulate more force. Intervals are
// 1-based calendar days.
inline ColocationResult build_colocation_slotted(const std::vector<TrajectoryVisit>& visits,
                                                 const std::vector<PoiRecord>& pois,
                                                 int slot_minutes = 5) {
    if (slot_minutes <= 0) throw InvalidArgument("slot_minutes must be positive");
    ColocationResult out;
    if (visits.empty()) return out;
    const std::uint64_t slot_sec = static_cast<std::uint64_t>(slot_minutes) * 60;
    std::uint32_t max_individual = 0;
    std::uint64_t min_day = std::numeric_limits<std::uint64_t>::max();
    for (const TrajectoryVisit& visit : visits) {
        if (visit.poi >= pois.size()) throw InvalidArgument("visit references unknown poi");
        if (visit.depart <= visit.arrive) throw InvalidArgument("visit must have positive duration");
        max_individual = std::max(max_individual, visit.individual);
        min_day = std::min(min_day, visit.arrive / 86400);
    }
    out.node_count = static_cast<std::size_t>(max_individual) + 1;
    out.node_labels.reserve(out.node_count);
    for (std::size_t i = 0; i < out.node_count; ++i) {
        out.node_labels.push_back(std::to_string(i));
    }
    std::map<std::pair<std::uint64_t, std::uint32_t>, std::set<NodeId>> slot_presence;
    std::set<std::tuple<NodeId, std::string, IntervalIndex>> checkin_keys;
    IntervalIndex max_interval = 1;
    for (const TrajectoryVisit& visit : visits) {
        const IntervalIndex day =
            static_cast<IntervalIndex>(visit.arrive / 86400 - min_day + 1);
        max_interval = std::max(max_interval, day);
        auto& info = out.venue_map.venues[pois[visit.poi].id];
        info.visits += 1;
        if (info.category.empty()) info.category = pois[visit.poi].category;
        if (checkin_keys.insert({visit.individual, pois[visit.poi].id, day}).second) {
            out.checkins.push_back(NodeCheckin{visit.individual, pois[visit.poi].id, day});
        }
        const std::uint64_t first = visit.arrive / slot_sec;
        const std::uint64_t last = (visit.depart - 1) / slot_sec;
        for (std::uint64_t slot = first; slot <= last; ++slot) {
            slot_presence[{slot, visit.poi}].insert(visit.individual);
        }
    }
    for (const auto& [key, people] : slot_presence) {
        if (people.size() < 2) continue;
        const auto& [slot, poi] = key;
        // A slot whose size does not divide a day can start on the previous
        // calendar day; attribute it to the day it starts on, clamped into
        // the observed span.
        const std::uint64_t slot_day = slot * slot_sec / 86400;
        const IntervalIndex day = static_cast<IntervalIndex>(
            slot_day < min_day + 1 ? 1 : slot_day - min_day + 1);
        max_interval = std::max(max_interval, day);
        const int m = static_cast<int>(people.size());
        for (auto it = people.begin(); it != people.end(); ++it) {
            for (auto jt = std::next(it); jt != people.end(); ++jt) {
                ContactEvent event;
                event.u = *it;
                event.v = *jt;
                event.t = day;
                event.co_located_count = m;
                out.events.push_back(event);
                out.venue_map.edge_venue.emplace(std::tuple{*it, *jt, day}, pois[poi].id);
                out.venue_map.edge_venue.emplace(std::tuple{*jt, *it, day}, pois[poi].id);
            }
        }
    }
    out.interval_count = max_interval;
    return out;
}

// Transition file: header src,dst,t,p, probabilities stored verbatim as p^t.
// Diagonal rows are skipped (self-transitions carry no propagation); rows with
// p outside [0, 1] or t < 1 abort with file and line.
inline TemporalNetwork load_transitions(const std::string& path, std::size_t node_count = 0,
                                        IntervalIndex interval_count = 0) {
    CsvReader reader(path);
    const std::size_t cs = reader.column("src");
    const std::size_t cd = reader.column("dst");
    const std::size_t ct = reader.column("t");
    const std::size_t cp = reader.column("p");
    std::vector<EdgeRecord> records;
    NodeId max_node = 0;
    IntervalIndex max_t = 1;
    while (reader.next_row()) {
        const std::uint64_t src = reader.u64(cs);
        const std::uint64_t dst = reader.u64(cd);
        const std::int64_t t = reader.i64(ct);
        const double p = reader.f64(cp);
        if (src > std::numeric_limits<NodeId>::max() || dst > std::numeric_limits<NodeId>::max()) {
            throw DataError(reader.where() + ": node id too large");
        }
        if (t < 1 || t > std::numeric_limits<IntervalIndex>::max()) {
            throw DataError(reader.where() + ": interval must be a positive integer");
        }
        if (!(p >= 0.0 && p <= 1.0)) {
            throw DataError(reader.where() + ": probability must lie in [0, 1]");
        }
        max_node = std::max({max_node, static_cast<NodeId>(src), static_cast<NodeId>(dst)});
        max_t = std::max(max_t, static_cast<IntervalIndex>(t));
        if (src == dst) continue;
        records.push_back(EdgeRecord{static_cast<NodeId>(src), static_cast<NodeId>(dst),
                                     static_cast<IntervalIndex>(t), p});
    }
    if (node_count == 0) {
        node_count = records.empty() ? 0 : static_cast<std::size_t>(max_node) + 1;
    }
    if (interval_count == 0) interval_count = max_t;
    return TemporalNetwork::build(node_count, interval_count, records);
}

struct EdgeList {
    std::vector<std::string> node_labels; // dense id -> external id
    std::vector<std::pair<NodeId, NodeId>> edges;
};

// Edge list file: header u,v with arbitrary external ids, remapped to dense
// ids in order of first appearance. Duplicate pairs keep their first
// occurrence; self-loops abort.
inline EdgeList load_edge_list(const std::string& path) {
    CsvReader reader(path);
    const std::size_t cu = reader.column("u");
    const std::size_t cv = reader.column("v");
    EdgeList out;
    std::map<std::string, NodeId> remap;
    std::set<std::pair<NodeId, NodeId>> seen;
    const auto intern = [&](const std::string& label) {
        const auto [it, fresh] = remap.emplace(label, static_cast<NodeId>(out.node_labels.size()));
        if (fresh) out.node_labels.push_back(label);
        return it->second;
    };
    while (reader.next_row()) {
        const std::string& lu = reader.field(cu);
        const std::string& lv = reader.field(cv);
        if (lu.empty() || lv.empty()) throw DataError(reader.where() + ": empty node id");
        if (lu == lv) throw DataError(reader.where() + ": self-loop '" + lu + "'");
        const NodeId u = intern(lu);
        const NodeId v = intern(lv);
        if (seen.insert({u, v}).second) out.edges.emplace_back(u, v);
    }
    return out;
}

} // namespace tic
