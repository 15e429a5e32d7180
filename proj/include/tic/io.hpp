#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "tic/csv.hpp"
#include "tic/error.hpp"
#include "tic/probability_model.hpp"
#include "tic/temporal_network.hpp"

namespace tic {

namespace detail {

inline std::string format_probability(double p) {
    char buf[32];
    const int written = std::snprintf(buf, sizeof buf, "%.17g", p);
    return std::string(buf, static_cast<std::size_t>(written));
}

} // namespace detail

// Canonical network file: header u,v,t,p then one stored record per row,
// sorted by (t, u, v). Probabilities round-trip exactly via %.17g.
inline void save_network_csv(const TemporalNetwork& net, std::ostream& out) {
    out << "u,v,t,p\n";
    for (const EdgeRecord& rec : net.records()) {
        out << rec.u << ',' << rec.v << ',' << rec.t << ',' << detail::format_probability(rec.p)
            << '\n';
    }
    if (!out) throw DataError("failed to write network stream");
}

inline void save_network_csv(const TemporalNetwork& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path + " for writing");
    save_network_csv(net, out);
    if (!out) throw DataError("failed to write " + path);
}

// Loads a u,v,t,p file. Pass zero to infer node_count (max id + 1) and
// interval_count (max t) from the data. Rows with p outside [0, 1], t < 1, or
// u == v are rejected with file and line; later duplicates of a (u, v, t) key
// overwrite earlier rows.
inline TemporalNetwork load_network_csv(const std::string& path, std::size_t node_count = 0,
                                        IntervalIndex interval_count = 0) {
    CsvReader reader(path);
    const std::size_t cu = reader.column("u");
    const std::size_t cv = reader.column("v");
    const std::size_t ct = reader.column("t");
    const std::size_t cp = reader.column("p");
    std::vector<EdgeRecord> records;
    NodeId max_node = 0;
    IntervalIndex max_t = 1;
    while (reader.next_row()) {
        const std::uint64_t u = reader.u64(cu);
        const std::uint64_t v = reader.u64(cv);
        const std::int64_t t = reader.i64(ct);
        const double p = reader.f64(cp);
        if (u == v) throw DataError(reader.where() + ": self-loop " + std::to_string(u));
        if (u > std::numeric_limits<NodeId>::max() || v > std::numeric_limits<NodeId>::max()) {
            throw DataError(reader.where() + ": node id too large");
        }
        if (t < 1 || t > std::numeric_limits<IntervalIndex>::max()) {
            throw DataError(reader.where() + ": interval must be a positive integer");
        }
        if (!(p >= 0.0 && p <= 1.0)) {
            throw DataError(reader.where() + ": probability must lie in [0, 1]");
        }
        records.push_back(EdgeRecord{static_cast<NodeId>(u), static_cast<NodeId>(v),
                                     static_cast<IntervalIndex>(t), p});
        max_node = std::max({max_node, static_cast<NodeId>(u), static_cast<NodeId>(v)});
        max_t = std::max(max_t, static_cast<IntervalIndex>(t));
    }
    if (node_count == 0) node_count = records.empty() ? 0 : static_cast<std::size_t>(max_node) + 1;
    if (interval_count == 0) interval_count = max_t;
    return TemporalNetwork::build(node_count, interval_count, records);
}

// Contact observations: header u,v,t plus optional d (distance) and m
// (co-located count) columns. A missing column leaves that term of the
// infection force at zero for every row; a row blank in both d and m is
// rejected because it carries no contact information.
struct ContactFile {
    std::vector<ContactEvent> events;
    std::size_t node_count = 0;
    IntervalIndex interval_count = 1;
};

inline ContactFile load_contact_distances(const std::string& path) {
    CsvReader reader(path);
    const std::size_t cu = reader.column("u");
    const std::size_t cv = reader.column("v");
    const std::size_t ct = reader.column("t");
    const auto cd = reader.find_column("d");
    const auto cm = reader.find_column("m");
    if (!cd && !cm) {
        throw DataError(path + ": need a distance column 'd' or a co-location column 'm'");
    }
    ContactFile out;
    NodeId max_node = 0;
    while (reader.next_row()) {
        ContactEvent event;
        const std::uint64_t u = reader.u64(cu);
        const std::uint64_t v = reader.u64(cv);
        const std::int64_t t = reader.i64(ct);
        if (u == v) throw DataError(reader.where() + ": self-contact " + std::to_string(u));
        if (u > std::numeric_limits<NodeId>::max() || v > std::numeric_limits<NodeId>::max()) {
            throw DataError(reader.where() + ": node id too large");
        }
        if (t < 1 || t > std::numeric_limits<IntervalIndex>::max()) {
            throw DataError(reader.where() + ": interval must be a positive integer");
        }
        event.u = static_cast<NodeId>(u);
        event.v = static_cast<NodeId>(v);
        event.t = static_cast<IntervalIndex>(t);
        if (cd && reader.has_value(*cd)) {
            const double d = reader.f64(*cd);
            if (d < 0.0) throw DataError(reader.where() + ": distance must be non-negative");
            event.distance = d;
        }
        if (cm && reader.has_value(*cm)) {
            const std::uint64_t m = reader.u64(*cm);
            if (m < 1) throw DataError(reader.where() + ": co-located count must be at least 1");
            event.co_located_count = static_cast<int>(std::min<std::uint64_t>(
                m, static_cast<std::uint64_t>(std::numeric_limits<int>::max())));
        }
        if (!event.distance && !event.co_located_count) {
            throw DataError(reader.where() + ": contact row carries neither distance nor count");
        }
        out.events.push_back(event);
        max_node = std::max({max_node, event.u, event.v});
        out.interval_count = std::max(out.interval_count, event.t);
    }
    out.node_count = out.events.empty() ? 0 : static_cast<std::size_t>(max_node) + 1;
    return out;
}

inline void save_contacts_csv(const std::vector<ContactEvent>& events, std::ostream& out) {
    out << "u,v,t,d,m\n";
    for (const ContactEvent& e : events) {
        out << e.u << ',' << e.v << ',' << e.t << ',';
        if (e.distance) out << detail::format_probability(*e.distance);
        out << ',';
        if (e.co_located_count) out << *e.co_located_count;
        out << '\n';
    }
    if (!out) throw DataError("failed to write contacts stream");
}

inline void save_contacts_csv(const std::vector<ContactEvent>& events, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path + " for writing");
    save_contacts_csv(events, out);
    if (!out) throw DataError("failed to write " + path);
}

} // namespace tic
