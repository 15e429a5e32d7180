#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "tic/error.hpp"
#include "tic/ingest.hpp"
#include "tic/rng.hpp"
#include "tic/temporal_network.hpp"

namespace tic {

// Great-circle distance in kilometres (mean earth radius).
inline double haversine_km(double lat1, double lon1, double lat2, double lon2) {
    constexpr double radius_km = 6371.0088;
    constexpr double deg = std::numbers::pi / 180.0;
    const double dlat = (lat2 - lat1) * deg;
    const double dlon = (lon2 - lon1) * deg;
    const double a = std::sin(dlat / 2) * std::sin(dlat / 2) +
                     std::cos(lat1 * deg) * std::cos(lat2 * deg) * std::sin(dlon / 2) *
                         std::sin(dlon / 2);
    return 2.0 * radius_km * std::asin(std::min(1.0, std::sqrt(a)));
}

struct TrajectoryParams {
    int max_visits = 6;
    double speed_kmh = 5.0;      // walking pace
    double speed_jitter = 0.5;   // each leg draws speed uniformly in +-50%
    std::vector<std::string> banned_categories;

    void validate() const {
        if (max_visits < 1) throw InvalidArgument("max_visits must be at least 1");
        if (!(speed_kmh > 0.0)) throw InvalidArgument("speed must be positive");
        if (!(speed_jitter >= 0.0 && speed_jitter < 1.0)) {
            throw InvalidArgument("speed jitter must lie in [0, 1)");
        }
    }
};

// Synthesizes per-day visit sequences. Each individual each day draws a start
// minute, a start POI open at that minute, and a target length; every next
// POI must be reachable before the day ends and open on arrival, where travel
// time is haversine distance at a per-leg speed drawn around speed_kmh. The
// trajectory truncates when no candidate remains.
inline std::vector<TrajectoryVisit> generate_trajectories(const std::vector<PoiRecord>& pois,
                                                          std::size_t n_individuals,
                                                          int n_days, Rng& rng,
                                                          const TrajectoryParams& params = {}) {
    if (pois.empty()) throw InvalidArgument("poi list must be nonempty");
    if (n_individuals == 0) throw InvalidArgument("need at least one individual");
    if (n_days < 1) throw InvalidArgument("need at least one day");
    params.validate();
    std::vector<char> banned(pois.size(), 0);
    for (std::size_t i = 0; i < pois.size(); ++i) {
        for (const std::string& cat : params.banned_categories) {
            if (pois[i].category == cat) banned[i] = 1;
        }
    }
    std::vector<std::vector<double>> dist_km(pois.size(), std::vector<double>(pois.size(), 0.0));
    for (std::size_t i = 0; i < pois.size(); ++i) {
        for (std::size_t j = i + 1; j < pois.size(); ++j) {
            const double d = haversine_km(pois[i].lat, pois[i].lon, pois[j].lat, pois[j].lon);
            dist_km[i][j] = d;
            dist_km[j][i] = d;
        }
    }
    const auto open_at = [&](std::size_t poi, std::uint64_t ts) {
        const int minute = static_cast<int>((ts % 86400) / 60);
        return minute >= pois[poi].open_min && minute < pois[poi].close_min;
    };
    std::vector<TrajectoryVisit> visits;
    std::vector<std::size_t> candidates;
    for (std::uint32_t person = 0; person < n_individuals; ++person) {
        for (int day = 0; day < n_days; ++day) {
            const std::uint64_t day_start = static_cast<std::uint64_t>(day) * 86400;
            const std::uint64_t day_end = day_start + 86400;
            const std::uint64_t start =
                day_start + 60 * rng.next_index(1440);
            const int target_len = 1 + static_cast<int>(rng.next_index(
                                           static_cast<std::uint64_t>(params.max_visits)));
            candidates.clear();
            for (std::size_t i = 0; i < pois.size(); ++i) {
                if (!banned[i] && open_at(i, start)) candidates.push_back(i);
            }
            if (candidates.empty()) continue;
            std::size_t current = candidates[rng.next_index(candidates.size())];
            std::uint64_t arrive = start;
            for (int leg = 0; leg < target_len; ++leg) {
                const std::uint64_t depart =
                    arrive + static_cast<std::uint64_t>(pois[current].dwell_min) * 60;
                visits.push_back(TrajectoryVisit{person, static_cast<std::uint32_t>(current),
                                                 arrive, depart});
                if (leg + 1 == target_len) break;
                const double speed =
                    params.speed_kmh * (1.0 + params.speed_jitter * (2.0 * rng.next_double() - 1.0));
                candidates.clear();
                for (std::size_t i = 0; i < pois.size(); ++i) {
                    if (i == current || banned[i]) continue;
                    const double travel_s = dist_km[current][i] / speed * 3600.0;
                    const std::uint64_t next_arrive =
                        depart + static_cast<std::uint64_t>(std::llround(travel_s));
                    if (next_arrive >= day_end) continue;
                    if (!open_at(i, next_arrive)) continue;
                    candidates.push_back(i);
                }
                if (candidates.empty()) break;
                const std::size_t chosen = candidates[rng.next_index(candidates.size())];
                const double travel_s = dist_km[current][chosen] / speed * 3600.0;
                arrive = depart + static_cast<std::uint64_t>(std::llround(travel_s));
                current = chosen;
            }
        }
    }
    return visits;
}

struct SyntheticParams {
    enum class Family { erdos_renyi, late_bloomer };
    Family family = Family::erdos_renyi;
    // erdos_renyi: every ordered pair appears independently each interval.
    double density = 0.01;
    double p_min = 0.05;
    double p_max = 0.3;
    // late_bloomer: a planted family where a block of "decoy" nodes gets a
    // huge burst of weak edges in the final interval only, so static degree
    // points at nodes that barely matter to propagation, while "collector"
    // nodes quietly receive most traffic in every earlier interval.
    std::size_t collectors = 60;
    std::size_t decoys = 60;
    int normal_out_degree = 2;
    double collector_bias = 0.6;
    int decoy_out_degree = 100;
    int decoy_in_degree = 5;
    double decoy_p = 0.02;
};

namespace detail {

inline TemporalNetwork generate_erdos_renyi(std::size_t n_nodes, IntervalIndex n_intervals,
                                            const SyntheticParams& params, Rng& rng) {
    if (!(params.density >= 0.0 && params.density <= 1.0)) {
        throw InvalidArgument("density must lie in [0, 1]");
    }
    std::vector<EdgeRecord> records;
    for (IntervalIndex t = 1; t <= n_intervals; ++t) {
        for (NodeId u = 0; u < n_nodes; ++u) {
            for (NodeId v = 0; v < n_nodes; ++v) {
                if (u == v) continue;
                if (params.density < 1.0 && rng.next_double() >= params.density) continue;
                const double p =
                    params.p_min + rng.next_double() * (params.p_max - params.p_min);
                records.push_back(EdgeRecord{u, v, t, p});
            }
        }
    }
    return TemporalNetwork::build(n_nodes, n_intervals, records);
}

inline TemporalNetwork generate_late_bloomer(std::size_t n_nodes, IntervalIndex n_intervals,
                                             const SyntheticParams& params, Rng& rng) {
    const std::size_t n_collectors = params.collectors;
    const std::size_t n_decoys = params.decoys;
    if (n_collectors == 0 || n_decoys == 0) {
        throw InvalidArgument("late bloomer needs collectors and decoys");
    }
    if (n_nodes <= n_collectors + n_decoys) {
        throw InvalidArgument("late bloomer needs nodes beyond collectors and decoys");
    }
    if (n_intervals < 2) throw InvalidArgument("late bloomer needs at least 2 intervals");
    const std::size_t normal_begin = n_collectors;
    const std::size_t normal_end = n_nodes - n_decoys;
    const std::size_t n_normals = normal_end - normal_begin;
    std::vector<EdgeRecord> records;
    const auto draw_p = [&]() {
        return params.p_min + rng.next_double() * (params.p_max - params.p_min);
    };
    for (IntervalIndex t = 1; t < n_intervals; ++t) {
        for (std::size_t u = normal_begin; u < normal_end; ++u) {
            for (int e = 0; e < params.normal_out_degree; ++e) {
                NodeId v;
                if (n_normals < 2 || rng.next_double() < params.collector_bias) {
                    v = static_cast<NodeId>(rng.next_index(n_collectors));
                } else {
                    std::size_t idx = static_cast<std::size_t>(rng.next_index(n_normals - 1));
                    if (normal_begin + idx >= u) ++idx;
                    v = static_cast<NodeId>(normal_begin + idx);
                }
                records.push_back(EdgeRecord{static_cast<NodeId>(u), v, t, draw_p()});
            }
        }
        for (std::size_t c = 0; c < n_collectors && n_collectors >= 2; ++c) {
            std::size_t idx = static_cast<std::size_t>(rng.next_index(n_collectors - 1));
            if (idx >= c) ++idx;
            records.push_back(
                EdgeRecord{static_cast<NodeId>(c), static_cast<NodeId>(idx), t, draw_p()});
        }
    }
    // Final interval: decoys flood the network with weak edges, gaining the
    // largest static degree while contributing almost nothing to cascades.
    const std::size_t n_others = normal_end; // collectors + normals
    std::vector<NodeId> others(n_others);
    std::iota(others.begin(), others.end(), NodeId{0});
    for (std::size_t d = normal_end; d < n_nodes; ++d) {
        const std::size_t out = std::min(static_cast<std::size_t>(params.decoy_out_degree),
                                         n_others);
        for (std::size_t i = 0; i < out; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.next_index(n_others - i));
            std::swap(others[i], others[j]);
            records.push_back(EdgeRecord{static_cast<NodeId>(d), others[i], n_intervals,
                                         params.decoy_p});
        }
        const std::size_t in = std::min(static_cast<std::size_t>(params.decoy_in_degree),
                                        n_others);
        for (std::size_t i = 0; i < in; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.next_index(n_others - i));
            std::swap(others[i], others[j]);
            records.push_back(EdgeRecord{others[i], static_cast<NodeId>(d), n_intervals,
                                         params.decoy_p});
        }
    }
    return TemporalNetwork::build(n_nodes, n_intervals, records);
}

} // namespace detail

inline TemporalNetwork generate_synthetic_network(std::size_t n_nodes, IntervalIndex n_intervals,
                                                  const SyntheticParams& params, Rng& rng) {
    if (n_nodes == 0) throw InvalidArgument("need at least one node");
    if (n_intervals < 1) throw InvalidArgument("need at least one interval");
    if (!(params.p_min >= 0.0 && params.p_max <= 1.0 && params.p_min <= params.p_max)) {
        throw InvalidArgument("probability range must satisfy 0 <= p_min <= p_max <= 1");
    }
    switch (params.family) {
    case SyntheticParams::Family::erdos_renyi:
        return detail::generate_erdos_renyi(n_nodes, n_intervals, params, rng);
    case SyntheticParams::Family::late_bloomer:
        return detail::generate_late_bloomer(n_nodes, n_intervals, params, rng);
    }
    throw InvalidArgument("unknown synthetic family");
}

} // namespace tic
