#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <span>
#include <sstream>
#include <vector>

#include "support/instances.hpp"
#include "tic/error.hpp"
#include "tic/exact.hpp"
#include "tic/hypergraph.hpp"
#include "tic/sampler.hpp"

using tic::EdgeRecord;
using tic::Hypergraph;
using tic::NodeId;
using tic::TemporalNetwork;
using tic::Window;

namespace {
std::vector<NodeId> vec(std::span<const NodeId> s) { return {s.begin(), s.end()}; }
} // namespace

TEST_CASE("hypergraph construction and incidence") {
    Hypergraph h(4, {{0, 1}, {2}, {1, 2, 3}}, {0, 2, 3});
    REQUIRE(h.n_nets() == 3);
    REQUIRE(h.node_count() == 4);
    REQUIRE(h.degree(1) == 2);
    REQUIRE(h.degree(0) == 1);
    REQUIRE(h.seed_of(1) == 2);
    REQUIRE(vec(h.pins(2)) == std::vector<NodeId>{1, 2, 3});
    REQUIRE(h.degree_of_set(std::vector<NodeId>{}) == 0);
    REQUIRE(h.degree_of_set(std::vector<NodeId>{0, 1, 2, 3}) == 3);
    REQUIRE(h.degree_of_set(std::vector<NodeId>{1}) == 2);
    REQUIRE(h.degree_of_set(std::vector<NodeId>{1, 2}) == 3);
    REQUIRE_THROWS_AS(h.degree(9), tic::InvalidArgument);
    REQUIRE_THROWS_AS(Hypergraph(2, {{0}}, {0, 1}), tic::InvalidArgument);
    REQUIRE_THROWS_AS(Hypergraph(2, {{0}}, {1}), tic::InvalidArgument); // seed not a pin
    REQUIRE_THROWS_AS(Hypergraph(2, {{0, 5}}, {0}), tic::InvalidArgument);
}

TEST_CASE("degree_of_set is monotone and subadditive") {
    Window w{1, 1};
    const auto net = support::tiny_instance(401, 2, &w);
    const auto h = tic::build_hypergraph(net, w, 500, 17);
    tic::Rng rng = tic::Rng::seeded(3);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<NodeId> small;
        std::vector<NodeId> big;
        for (NodeId v = 0; v < net.node_count(); ++v) {
            const double roll = rng.next_double();
            if (roll < 0.3) small.push_back(v);
            if (roll < 0.6) big.push_back(v);
        }
        REQUIRE(h.degree_of_set(small) <= h.degree_of_set(big));
        std::size_t sum = 0;
        for (const NodeId v : small) sum += h.degree(v);
        REQUIRE(h.degree_of_set(small) <= sum);
    }
}

TEST_CASE("every net contains its seed and sorted unique pins") {
    Window w{1, 1};
    const auto net = support::tiny_instance(402, 5, &w);
    const auto h = tic::build_hypergraph(net, w, 300, 23);
    REQUIRE(h.n_nets() == 300);
    for (std::size_t k = 0; k < h.n_nets(); ++k) {
        const auto pins = h.pins(k);
        REQUIRE(!pins.empty());
        REQUIRE(std::is_sorted(pins.begin(), pins.end()));
        REQUIRE(std::adjacent_find(pins.begin(), pins.end()) == pins.end());
        REQUIRE(std::binary_search(pins.begin(), pins.end(), h.seed_of(k)));
    }
}

TEST_CASE("sampling is deterministic and worker-independent") {
    Window w{1, 1};
    const auto net = support::tiny_instance(403, 1, &w);
    const auto a = tic::build_hypergraph(net, w, 400, 5, 1);
    const auto b = tic::build_hypergraph(net, w, 400, 5, 3);
    REQUIRE(a.n_nets() == b.n_nets());
    for (std::size_t k = 0; k < a.n_nets(); ++k) {
        REQUIRE(a.seed_of(k) == b.seed_of(k));
        REQUIRE(vec(a.pins(k)) == vec(b.pins(k)));
    }
    const auto c = tic::build_hypergraph(net, w, 400, 6);
    bool any_difference = false;
    for (std::size_t k = 0; k < a.n_nets(); ++k) {
        if (a.seed_of(k) != c.seed_of(k) || vec(a.pins(k)) != vec(c.pins(k))) any_difference = true;
    }
    REQUIRE(any_difference);
}

TEST_CASE("sampling runs on the network as given, not its transpose") {
    // a->b with p=1: b sits in every net, a only in the half seeded at a.
    const auto net = TemporalNetwork::build(2, 1, std::vector<EdgeRecord>{{0, 1, 1, 1.0}});
    const auto h = tic::build_hypergraph(net, Window{1, 1}, 2000, 31);
    REQUIRE(h.degree(1) == 2000);
    REQUIRE(h.degree(0) < 1200);
    REQUIRE(h.degree(0) > 800);
}

TEST_CASE("net degrees match exact activation probabilities") {
    for (std::uint64_t i = 0; i < 10; ++i) {
        Window w{1, 1};
        const auto net = support::tiny_instance(404, i, &w);
        const auto exact = tic::exact_activation_probabilities(net, w);
        const std::size_t n_nets = 60000;
        const auto h = tic::build_hypergraph(net, w, n_nets, 2000 + i);
        for (NodeId v = 0; v < net.node_count(); ++v) {
            const double freq = static_cast<double>(h.degree(v)) / n_nets;
            const double sigma = std::sqrt(exact[v] * (1.0 - exact[v]) / n_nets);
            REQUIRE(std::abs(freq - exact[v]) <= 3.0 * sigma + 1e-12);
        }
    }
}

TEST_CASE("influence estimate scales covered nets") {
    Hypergraph h(3, {{0, 1}, {1}, {2}, {0, 2}}, {0, 1, 2, 2});
    REQUIRE(tic::estimate_influence(h, std::vector<NodeId>{1}) ==
            Catch::Approx(3.0 * 2.0 / 4.0));
    REQUIRE(tic::estimate_influence(h, std::vector<NodeId>{0, 1, 2}) == Catch::Approx(3.0));
}

TEST_CASE("hypergraph binary cache round-trips") {
    Window w{1, 1};
    const auto net = support::tiny_instance(405, 7, &w);
    const auto h = tic::build_hypergraph(net, w, 250, 77);
    std::stringstream buf;
    h.save(buf);
    const auto back = Hypergraph::load(buf);
    REQUIRE(back.node_count() == h.node_count());
    REQUIRE(back.n_nets() == h.n_nets());
    for (std::size_t k = 0; k < h.n_nets(); ++k) {
        REQUIRE(back.seed_of(k) == h.seed_of(k));
        REQUIRE(vec(back.pins(k)) == vec(h.pins(k)));
    }
    const auto path = std::filesystem::temp_directory_path() / "tic_test_hypergraph.bin";
    h.save(path.string());
    const auto from_file = Hypergraph::load(path.string());
    REQUIRE(from_file.n_nets() == h.n_nets());
    std::filesystem::remove(path);
}

TEST_CASE("cache loader rejects corrupt streams") {
    std::stringstream empty;
    REQUIRE_THROWS_AS(Hypergraph::load(empty), tic::DataError);
    std::stringstream junk("this is not a cache");
    REQUIRE_THROWS_AS(Hypergraph::load(junk), tic::DataError);
    Window w{1, 1};
    const auto net = support::tiny_instance(406, 0, &w);
    const auto h = tic::build_hypergraph(net, w, 20, 1);
    std::stringstream buf;
    h.save(buf);
    std::string bytes = buf.str();
    bytes.resize(bytes.size() / 2);
    std::stringstream truncated(bytes);
    REQUIRE_THROWS_AS(Hypergraph::load(truncated), tic::DataError);
}

TEST_CASE("sampler argument validation") {
    Window w{1, 1};
    const auto net = support::tiny_instance(407, 0, &w);
    REQUIRE_THROWS_AS(tic::build_hypergraph(net, w, 0, 1), tic::InvalidArgument);
    REQUIRE_THROWS_AS(tic::build_hypergraph(net, Window{1, 9}, 10, 1), tic::InvalidArgument);
}
