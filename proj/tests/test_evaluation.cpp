#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "tic/evaluation.hpp"
#include "tic/exact.hpp"
#include "tic/hypergraph.hpp"
#include "tic/sampler.hpp"
#include "tic/solvers.hpp"
#include "tic/temporal_network.hpp"

#include "support/instances.hpp"

namespace {

using tic::NodeId;

std::vector<NodeId> all_nodes(std::size_t n) {
    std::vector<NodeId> ids(n);
    std::iota(ids.begin(), ids.end(), NodeId{0});
    return ids;
}

} // namespace

TEST_CASE("reverse spread applies the coverage formula") {
    // 10 nodes, 100 nets; node 0 sits in 5 nets, node 1 in the rest.
    std::vector<std::vector<NodeId>> nets;
    std::vector<NodeId> seeds;
    for (int i = 0; i < 5; ++i) {
        nets.push_back({0});
        seeds.push_back(0);
    }
    for (int i = 0; i < 95; ++i) {
        nets.push_back({1});
        seeds.push_back(1);
    }
    const tic::Hypergraph h(10, std::move(nets), std::move(seeds));

    const std::vector<NodeId> s{0};
    CHECK(tic::reverse_spread(h, s) == Catch::Approx(0.5));

    const auto everyone = all_nodes(10);
    CHECK(tic::reverse_spread(h, everyone) == Catch::Approx(10.0));
}

TEST_CASE("reverse spread of a single node in an edgeless network is about one") {
    const auto net = tic::TemporalNetwork::build(10, 1, {});
    const std::size_t n_nets = 20000;
    const auto h = tic::build_hypergraph(net, {1, 1}, n_nets, 77);
    const std::vector<NodeId> s{3};
    const double q = 1.0 / 10.0;
    const double sigma = 10.0 * std::sqrt(q * (1.0 - q) / static_cast<double>(n_nets));
    CHECK(tic::reverse_spread(h, s) == Catch::Approx(1.0).margin(3.0 * sigma));
}

TEST_CASE("reverse spread grows monotonically with the set") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        tic::Window window{1, 1};
        const auto net = support::tiny_instance(300 + seed, 0, &window);
        const auto h = tic::build_hypergraph(net, window, 500, 40 + seed);
        std::vector<NodeId> s;
        double prev = 0.0;
        for (NodeId v = 0; v < net.node_count(); ++v) {
            s.push_back(v);
            const double cur = tic::reverse_spread(h, s);
            INFO("seed " << seed << " |S| " << s.size());
            CHECK(cur >= prev);
            prev = cur;
        }
        CHECK(prev == Catch::Approx(static_cast<double>(net.node_count())));
    }
}

TEST_CASE("reverse spread of singletons tracks exact activation probabilities") {
    tic::Window window{1, 1};
    const auto net = support::tiny_instance(911, 4, &window);
    const auto exact = tic::exact_activation_probabilities(net, window);
    const std::size_t n_nets = 60000;
    const auto h = tic::build_hypergraph(net, window, n_nets, 5);
    const double v_count = static_cast<double>(net.node_count());
    for (NodeId v = 0; v < net.node_count(); ++v) {
        const double p = exact[v];
        const double sigma = v_count * std::sqrt(p * (1.0 - p) / static_cast<double>(n_nets));
        const std::vector<NodeId> s{v};
        INFO("node " << v);
        CHECK(tic::reverse_spread(h, s) == Catch::Approx(v_count * p).margin(3.0 * sigma + 1e-12));
    }
}

TEST_CASE("binary success rate is one when the set is everything") {
    tic::Window window{1, 1};
    const auto net = support::tiny_instance(17, 2, &window);
    const auto batch = tic::simulate_batch(net, window, 500, 9);
    CHECK(tic::binary_success_rate(batch, all_nodes(net.node_count())) == 1.0);
}

TEST_CASE("binary success rate of a singleton in an edgeless network is one over n") {
    const auto net = tic::TemporalNetwork::build(10, 1, {});
    const std::size_t n_sims = 20000;
    const auto batch = tic::simulate_batch(net, {1, 1}, n_sims, 123);
    const std::vector<NodeId> s{7};
    const double p = 0.1;
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(n_sims));
    CHECK(tic::binary_success_rate(batch, s) == Catch::Approx(p).margin(3.0 * sigma));
}

TEST_CASE("binary success rate saturates on a deterministic complete network") {
    std::vector<tic::EdgeRecord> records;
    for (NodeId u = 0; u < 4; ++u) {
        for (NodeId v = 0; v < 4; ++v) {
            if (u != v) records.push_back({u, v, 1, 1.0});
        }
    }
    const auto net = tic::TemporalNetwork::build(4, 1, records);
    const auto batch = tic::simulate_batch(net, {1, 1}, 300, 4);
    const std::vector<NodeId> s{2};
    CHECK(tic::binary_success_rate(batch, s) == 1.0);
}

TEST_CASE("binary success rate can exclude the seed's own membership") {
    const auto empty_net = tic::TemporalNetwork::build(6, 1, {});
    const auto empty_batch = tic::simulate_batch(empty_net, {1, 1}, 2000, 21);
    const std::vector<NodeId> s{1};
    CHECK(tic::binary_success_rate(empty_batch, s, false) == 0.0);

    const std::vector<tic::EdgeRecord> records{{0, 1, 1, 1.0}};
    const auto net = tic::TemporalNetwork::build(2, 1, records);
    const std::size_t n_sims = 20000;
    const auto batch = tic::simulate_batch(net, {1, 1}, n_sims, 55);
    CHECK(tic::binary_success_rate(batch, s, true) == 1.0);
    const double sigma = std::sqrt(0.25 / static_cast<double>(n_sims));
    // Counts only the runs seeded at the other node.
    CHECK(tic::binary_success_rate(batch, s, false) == Catch::Approx(0.5).margin(3.0 * sigma));
}

TEST_CASE("binary success rate is monotone over supersets on a shared batch") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        tic::Window window{1, 1};
        const auto net = support::tiny_instance(620 + seed, 1, &window);
        const auto batch = tic::simulate_batch(net, window, 400, seed);
        std::vector<NodeId> s;
        double prev = 0.0;
        for (NodeId v = 0; v < net.node_count(); ++v) {
            s.push_back(v);
            const double cur = tic::binary_success_rate(batch, s);
            INFO("seed " << seed << " |S| " << s.size());
            CHECK(cur >= prev);
            prev = cur;
        }
        CHECK(prev == 1.0);
    }
}

TEST_CASE("expected spread basics") {
    const auto net = tic::TemporalNetwork::build(5, 1, {});
    const auto batch = tic::simulate_batch(net, {1, 1}, 1000, 31);
    CHECK(tic::expected_spread(batch, std::vector<NodeId>{}) == 0.0);
    CHECK(tic::expected_spread(batch, all_nodes(5)) == 1.0);
}

TEST_CASE("expected spread of a downstream node matches its activation probability") {
    const std::vector<tic::EdgeRecord> records{{0, 1, 1, 0.3}};
    const auto net = tic::TemporalNetwork::build(2, 1, records);
    const std::size_t n_sims = 20000;
    const auto batch = tic::simulate_batch(net, {1, 1}, n_sims, 2024);
    const std::vector<NodeId> s{1};
    const double p = 0.65; // seed at b half the time, else 0.3 through the edge
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(n_sims));
    CHECK(tic::expected_spread(batch, s) == Catch::Approx(p).margin(3.0 * sigma));
}

TEST_CASE("expected spread is additive over a shared batch") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        tic::Window window{1, 1};
        const auto net = support::tiny_instance(745 + seed, 3, &window);
        if (net.node_count() < 3) continue;
        const auto batch = tic::simulate_batch(net, window, 300, seed * 13 + 1);
        const std::vector<NodeId> s1{0};
        const std::vector<NodeId> s2{1, 2};
        const std::vector<NodeId> both{0, 1, 2};
        const double sum = tic::expected_spread(batch, s1) + tic::expected_spread(batch, s2);
        INFO("seed " << seed);
        CHECK(tic::expected_spread(batch, both) == Catch::Approx(sum));

        const std::vector<NodeId> overlap{0, 1};
        const double lhs = tic::expected_spread(batch, overlap);
        const double rhs =
            tic::expected_spread(batch, s1) + tic::expected_spread(batch, std::vector<NodeId>{1});
        CHECK(lhs == Catch::Approx(rhs));
    }
}

TEST_CASE("metric ranges stay inside their contracts") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        tic::Window window{1, 1};
        const auto net = support::tiny_instance(870 + seed, 2, &window);
        const auto batch = tic::simulate_batch(net, window, 250, seed + 3);
        const auto h = tic::build_hypergraph(net, window, 400, seed + 8);
        for (std::size_t k = 1; k <= net.node_count(); ++k) {
            const auto sol = tic::rsm_solve(h, k);
            const double bsr = tic::binary_success_rate(batch, sol.nodes);
            const double es = tic::expected_spread(batch, sol.nodes);
            const double rs = tic::reverse_spread(h, sol.nodes);
            INFO("seed " << seed << " k " << k);
            CHECK(bsr >= 0.0);
            CHECK(bsr <= 1.0);
            CHECK(es >= 0.0);
            CHECK(es <= static_cast<double>(sol.nodes.size()));
            CHECK(rs >= 0.0);
            CHECK(rs <= static_cast<double>(net.node_count()));
        }
    }
}

TEST_CASE("simulate_batch is deterministic and worker-count independent") {
    tic::Window window{1, 1};
    const auto net = support::tiny_instance(51, 0, &window);
    const auto one = tic::simulate_batch(net, window, 600, 12, 1);
    const auto again = tic::simulate_batch(net, window, 600, 12, 1);
    const auto wide = tic::simulate_batch(net, window, 600, 12, 3);
    CHECK(one.seeds == again.seeds);
    CHECK(one.actives == again.actives);
    CHECK(one.seeds == wide.seeds);
    CHECK(one.actives == wide.actives);

    const auto other = tic::simulate_batch(net, window, 600, 13, 1);
    CHECK(one.seeds != other.seeds);

    for (std::size_t k = 0; k < one.actives.size(); ++k) {
        REQUIRE(!one.actives[k].empty());
        CHECK(one.actives[k].front() == one.seeds[k]);
    }
    CHECK_THROWS_AS(tic::simulate_batch(net, window, 0, 1), tic::InvalidArgument);
}

TEST_CASE("normalization maps onto the 0 to 10 scale") {
    const std::vector<double> v{2.0, 4.0, 6.0};
    const auto out = tic::normalize_scores(v);
    REQUIRE(out.size() == 3);
    CHECK(out[0] == Catch::Approx(0.0));
    CHECK(out[1] == Catch::Approx(5.0));
    CHECK(out[2] == Catch::Approx(10.0));

    const std::vector<double> single{7.0};
    CHECK(tic::normalize_scores(single) == std::vector<double>{0.0});

    const std::vector<double> identity{0.0, 10.0};
    const auto id_out = tic::normalize_scores(identity);
    CHECK(id_out[0] == Catch::Approx(0.0));
    CHECK(id_out[1] == Catch::Approx(10.0));

    const std::vector<double> flat{3.0, 3.0, 3.0};
    CHECK(tic::normalize_scores(flat) == std::vector<double>{0.0, 0.0, 0.0});

    CHECK_THROWS_AS(tic::normalize_scores(std::vector<double>{}), tic::InvalidArgument);
}
