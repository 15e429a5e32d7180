#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <optional>
#include <vector>

#include "tic/error.hpp"
#include "tic/probability_model.hpp"
#include "tic/rng.hpp"

using tic::ContactEvent;
using tic::InfectionForceParams;
using tic::InvalidArgument;
using tic::NodeId;

namespace {

ContactEvent proximity_event(NodeId u, NodeId v, tic::IntervalIndex t, double d) {
    ContactEvent e;
    e.u = u;
    e.v = v;
    e.t = t;
    e.distance = d;
    return e;
}

ContactEvent density_event(NodeId u, NodeId v, tic::IntervalIndex t, int m) {
    ContactEvent e;
    e.u = u;
    e.v = v;
    e.t = t;
    e.co_located_count = m;
    return e;
}

} // namespace

TEST_CASE("force of infection point values") {
    const auto prox = InfectionForceParams::proximity_profile();
    // touching contact: full proximity weight
    REQUIRE(tic::infection_force(prox, proximity_event(0, 1, 1, 0.0)) ==
            Catch::Approx(0.05).epsilon(1e-12));
    // beyond the distance threshold the term vanishes
    REQUIRE(tic::infection_force(prox, proximity_event(0, 1, 1, 10.0)) == 0.0);
    // exactly at the threshold: 0.05 * exp(-0.5), high-precision reference
    REQUIRE(tic::infection_force(prox, proximity_event(0, 1, 1, 5.0)) ==
            Catch::Approx(0.0303265329856316711801899767496).epsilon(1e-6));
    // density term: 0.05 * exp(-0.1/10)
    const auto dens = InfectionForceParams::density_profile();
    REQUIRE(tic::infection_force(dens, density_event(0, 1, 1, 10)) ==
            Catch::Approx(0.049502491687458402678695298859).epsilon(1e-6));
}

TEST_CASE("absent observation fields contribute zero terms") {
    InfectionForceParams both;
    both.a = 0.05;
    both.b = 0.05;
    both.rho1 = 0.1;
    both.rho2 = 0.1;
    both.dist_threshold = 5.0;
    REQUIRE(tic::infection_force(both, proximity_event(0, 1, 1, 0.0)) ==
            Catch::Approx(0.05).epsilon(1e-12));
    REQUIRE(tic::infection_force(both, density_event(0, 1, 1, 1)) ==
            Catch::Approx(0.05 * std::exp(-0.1)).epsilon(1e-12));
    ContactEvent full = proximity_event(0, 1, 1, 0.0);
    full.co_located_count = 1;
    REQUIRE(tic::infection_force(both, full) ==
            Catch::Approx(0.05 + 0.05 * std::exp(-0.1)).epsilon(1e-12));
}

TEST_CASE("force monotonicity in distance and crowd size") {
    const auto prox = InfectionForceParams::proximity_profile();
    double prev = tic::infection_force(prox, proximity_event(0, 1, 1, 0.0));
    for (double d = 0.5; d <= 6.0; d += 0.5) {
        const double cur = tic::infection_force(prox, proximity_event(0, 1, 1, d));
        REQUIRE(cur <= prev);
        prev = cur;
    }
    const auto dens = InfectionForceParams::density_profile();
    prev = tic::infection_force(dens, density_event(0, 1, 1, 1));
    for (int m = 2; m <= 40; ++m) {
        const double cur = tic::infection_force(dens, density_event(0, 1, 1, m));
        REQUIRE(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("accumulated force uses the half-open history window") {
    const auto prox = InfectionForceParams::proximity_profile();
    InfectionForceParams wide = prox;
    wide.history_window = 2;
    const std::vector<ContactEvent> events{
        proximity_event(0, 1, 1, 0.0), // force 0.05
        proximity_event(0, 1, 3, 5.0), // force 0.05 e^-0.5
    };
    REQUIRE(tic::accumulated_force(prox, events, 0, 1, 2) == 0.0);
    REQUIRE(tic::accumulated_force(prox, events, 0, 1, 1) == Catch::Approx(0.05).epsilon(1e-12));
    // window (1, 3] catches the t=3 event only: t=1 sits exactly on the
    // excluded boundary
    REQUIRE(tic::accumulated_force(wide, events, 0, 1, 3) ==
            Catch::Approx(0.0303265329856316711801899767496).epsilon(1e-9));
    // unordered pair: both orientations see the same events
    REQUIRE(tic::accumulated_force(prox, events, 1, 0, 1) == Catch::Approx(0.05).epsilon(1e-12));
    REQUIRE(tic::accumulated_force(prox, events, 0, 2, 1) == 0.0);
}

TEST_CASE("propagation probability") {
    REQUIRE(tic::propagation_probability(0.0) == 0.0);
    REQUIRE(tic::propagation_probability(std::log(2.0)) == Catch::Approx(0.5).epsilon(1e-12));
    REQUIRE(tic::propagation_probability(0.1) ==
            Catch::Approx(0.0951625819640404268357509405535).epsilon(1e-6));
    REQUIRE_THROWS_AS(tic::propagation_probability(-0.01), InvalidArgument);
    double prev = -1.0;
    for (double f = 0.0; f <= 30.0; f += 0.25) {
        const double p = tic::propagation_probability(f);
        REQUIRE(p >= 0.0);
        REQUIRE(p < 1.0);
        REQUIRE(p > prev);
        prev = p;
    }
    // accumulation never decreases risk
    tic::Rng rng = tic::Rng::seeded(5);
    for (int i = 0; i < 200; ++i) {
        const double f1 = rng.next_double() * 3.0;
        const double f2 = rng.next_double() * 3.0;
        const double joint = tic::propagation_probability(f1 + f2);
        REQUIRE(joint >= tic::propagation_probability(f1));
        REQUIRE(joint >= tic::propagation_probability(f2));
    }
}

TEST_CASE("assign_from_contacts composes force and probability") {
    const auto prox = InfectionForceParams::proximity_profile();
    const std::vector<ContactEvent> events{proximity_event(0, 1, 1, 0.0)};
    const auto net = tic::assign_from_contacts(prox, events, 2, 2);
    // single symmetric event: both directions get 1 - e^{-0.05}
    REQUIRE(net.probability_at(0, 1, 1) ==
            Catch::Approx(0.0487705754992859909085746802203).epsilon(1e-9));
    REQUIRE(net.probability_at(1, 0, 1) == net.probability_at(0, 1, 1));
    // t0=1: the t=1 event leaves the window by t=2
    REQUIRE(net.probability_at(0, 1, 2) == 0.0);
}

TEST_CASE("repeated contact each interval gives constant per-interval p") {
    const auto prox = InfectionForceParams::proximity_profile();
    std::vector<ContactEvent> events;
    for (tic::IntervalIndex t = 1; t <= 4; ++t) events.push_back(proximity_event(0, 1, t, 2.0));
    const auto net = tic::assign_from_contacts(prox, events, 2, 4);
    const double p1 = net.probability_at(0, 1, 1);
    REQUIRE(p1 > 0.0);
    for (tic::IntervalIndex t = 2; t <= 4; ++t) {
        REQUIRE(net.probability_at(0, 1, t) == Catch::Approx(p1).epsilon(1e-12));
    }
}

TEST_CASE("assignment from symmetric events is symmetric") {
    tic::Rng rng = tic::Rng::seeded(31);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<ContactEvent> events;
        const std::size_t n = 5;
        const int n_events = 1 + static_cast<int>(rng.next_index(8));
        for (int e = 0; e < n_events; ++e) {
            NodeId u = static_cast<NodeId>(rng.next_index(n));
            NodeId v = static_cast<NodeId>(rng.next_index(n - 1));
            if (v >= u) ++v;
            const auto t = static_cast<tic::IntervalIndex>(1 + rng.next_index(3));
            if (rng.next_double() < 0.5) {
                events.push_back(proximity_event(u, v, t, rng.next_double() * 6.0));
            } else {
                events.push_back(density_event(u, v, t, 1 + static_cast<int>(rng.next_index(9))));
            }
        }
        InfectionForceParams params;
        params.a = 0.05;
        params.b = 0.03;
        params.history_window = 2;
        const auto net = tic::assign_from_contacts(params, events, n, 3);
        for (tic::IntervalIndex t = 1; t <= 3; ++t) {
            for (NodeId u = 0; u < n; ++u) {
                for (NodeId v = 0; v < n; ++v) {
                    if (u == v) continue;
                    REQUIRE(net.probability_at(u, v, t) == net.probability_at(v, u, t));
                }
            }
        }
    }
}

TEST_CASE("assign_from_contacts validates events") {
    const auto prox = InfectionForceParams::proximity_profile();
    const auto one = [](ContactEvent event) { return std::vector<ContactEvent>{event}; };
    REQUIRE_THROWS_AS(tic::assign_from_contacts(prox, one(proximity_event(0, 5, 1, 0.0)), 2, 2),
                      InvalidArgument);
    REQUIRE_THROWS_AS(tic::assign_from_contacts(prox, one(proximity_event(0, 1, 9, 0.0)), 2, 2),
                      InvalidArgument);
    REQUIRE_THROWS_AS(tic::assign_from_contacts(prox, one(proximity_event(0, 0, 1, 0.0)), 2, 2),
                      InvalidArgument);
    ContactEvent empty;
    empty.u = 0;
    empty.v = 1;
    empty.t = 1;
    // No distance and no co-location count: zero force, so nothing is stored.
    const auto net = tic::assign_from_contacts(prox, one(empty), 2, 2);
    REQUIRE(net.record_count() == 0);
}

TEST_CASE("parameter validation") {
    InfectionForceParams params;
    params.a = -0.1;
    REQUIRE_THROWS_AS(params.validate(), InvalidArgument);
    params = {};
    params.rho1 = 0.0;
    REQUIRE_THROWS_AS(params.validate(), InvalidArgument);
    params = {};
    params.history_window = 0;
    REQUIRE_THROWS_AS(params.validate(), InvalidArgument);
    params = {};
    params.dist_threshold = -1.0;
    REQUIRE_THROWS_AS(params.validate(), InvalidArgument);
}

TEST_CASE("uniform random assignment") {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < 100; ++u) {
        for (NodeId v = 0; v < 100; ++v) {
            if (u != v) edges.emplace_back(u, v);
        }
    }
    // 9900 edges over 25 intervals
    tic::Rng rng = tic::Rng::seeded(77);
    const auto net = tic::assign_uniform_random(edges, 100, 25, 0.3, rng);
    tic::Rng rng2 = tic::Rng::seeded(77);
    const auto net2 = tic::assign_uniform_random(edges, 100, 25, 0.3, rng2);
    REQUIRE(net.records() == net2.records());
    std::vector<int> hist(26, 0);
    for (const auto& rec : net.records()) {
        REQUIRE(rec.p <= 0.3);
        REQUIRE(rec.p >= 0.0);
        REQUIRE(rec.t >= 1);
        REQUIRE(rec.t <= 25);
        ++hist[rec.t];
    }
    // every edge lands in exactly one interval (p=0 draws are measure-zero)
    REQUIRE(net.record_count() == edges.size());
    const double expected = static_cast<double>(edges.size()) / 25.0;
    double chi2 = 0.0;
    for (int t = 1; t <= 25; ++t) {
        const double d = hist[t] - expected;
        chi2 += d * d / expected;
    }
    // 1% critical value, chi-square with 24 degrees of freedom.
    REQUIRE(chi2 < 42.97982013935165);
    REQUIRE_THROWS_AS(tic::assign_uniform_random(edges, 100, 25, 0.0, rng), InvalidArgument);
    REQUIRE_THROWS_AS(tic::assign_uniform_random(edges, 100, 25, 1.5, rng), InvalidArgument);
}
