#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "tic/error.hpp"
#include "tic/hypergraph.hpp"
#include "tic/rng.hpp"
#include "tic/temporal_network.hpp"

namespace tic {

struct SolutionSet {
    std::string method;
    std::size_t requested_k = 0;
    std::vector<NodeId> nodes; // selection order
    // Cumulative nets covered after each pick; empty for methods that do not
    // operate on a hypergraph.
    std::vector<std::size_t> covered_after_pick;
};

// Sentinel selection: greedy maximum coverage over the hypergraph. Each pick
// takes the node covering the most still-uncovered nets (ties to the lowest
// id), then removes the covered nets from every degree. Picks continue even
// when all remaining gains are zero, so exactly min(k, |V|) nodes come back.
inline SolutionSet rsm_solve(const Hypergraph& h, std::size_t k) {
    if (k == 0) throw InvalidArgument("k must be at least 1");
    const std::size_t n = h.node_count();
    const std::size_t picks = std::min(k, n);
    SolutionSet out;
    out.method = "rsm";
    out.requested_k = k;
    out.nodes.reserve(picks);
    out.covered_after_pick.reserve(picks);
    std::vector<std::size_t> gain(n, 0);
    for (NodeId v = 0; v < n; ++v) gain[v] = h.degree(v);
    std::vector<char> selected(n, 0);
    std::vector<char> covered(h.n_nets(), 0);
    std::size_t total = 0;
    for (std::size_t pick = 0; pick < picks; ++pick) {
        NodeId best = 0;
        bool found = false;
        for (NodeId v = 0; v < n; ++v) {
            if (selected[v]) continue;
            if (!found || gain[v] > gain[best]) {
                best = v;
                found = true;
            }
        }
        selected[best] = 1;
        total += gain[best];
        out.nodes.push_back(best);
        out.covered_after_pick.push_back(total);
        for (const std::uint32_t net : h.incident_nets(best)) {
            if (covered[net]) continue;
            covered[net] = 1;
            for (const NodeId pin : h.pins(net)) {
                if (gain[pin] > 0) --gain[pin];
            }
        }
    }
    return out;
}

// Susceptible selection: the k highest-degree nodes of the hypergraph, no
// coverage interaction. Ties go to the lowest id.
inline SolutionSet esm_solve(const Hypergraph& h, std::size_t k) {
    if (k == 0) throw InvalidArgument("k must be at least 1");
    const std::size_t n = h.node_count();
    const std::size_t picks = std::min(k, n);
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(picks), order.end(),
                      [&](NodeId a, NodeId b) {
                          const std::size_t da = h.degree(a);
                          const std::size_t db = h.degree(b);
                          return da != db ? da > db : a < b;
                      });
    SolutionSet out;
    out.method = "esm";
    out.requested_k = k;
    out.nodes.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(picks));
    std::vector<char> covered(h.n_nets(), 0);
    std::size_t total = 0;
    for (const NodeId v : out.nodes) {
        for (const std::uint32_t net : h.incident_nets(v)) {
            if (!covered[net]) {
                covered[net] = 1;
                ++total;
            }
        }
        out.covered_after_pick.push_back(total);
    }
    return out;
}

// Structural baseline: rank nodes by the number of distinct (neighbor,
// interval) pairs touching them inside the window, both directions merged, so
// u->v and v->u in the same interval count once for each endpoint.
inline SolutionSet max_deg_solve(const TemporalNetwork& net, const Window& window, std::size_t k) {
    if (k == 0) throw InvalidArgument("k must be at least 1");
    net.check_window(window);
    const std::size_t n = net.node_count();
    std::vector<std::size_t> deg(n, 0);
    std::vector<std::pair<NodeId, NodeId>> contacts;
    for (IntervalIndex t = window.first; t <= window.last; ++t) {
        contacts.clear();
        for (NodeId u = 0; u < n; ++u) {
            for (const auto& arc : net.neighbors_at(u, t)) {
                contacts.emplace_back(u, arc.target);
                contacts.emplace_back(arc.target, u);
            }
        }
        std::sort(contacts.begin(), contacts.end());
        contacts.erase(std::unique(contacts.begin(), contacts.end()), contacts.end());
        for (const auto& [node, neighbor] : contacts) deg[node] += 1;
    }
    const std::size_t picks = std::min(k, n);
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(picks), order.end(),
                      [&](NodeId a, NodeId b) {
                          return deg[a] != deg[b] ? deg[a] > deg[b] : a < b;
                      });
    SolutionSet out;
    out.method = "max_deg";
    out.requested_k = k;
    out.nodes.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(picks));
    return out;
}

// Uniform sample of min(k, node_count) distinct nodes (partial Fisher-Yates).
inline SolutionSet random_solve(std::size_t node_count, std::size_t k, Rng& rng) {
    if (k == 0) throw InvalidArgument("k must be at least 1");
    if (node_count == 0) throw InvalidArgument("node_count must be at least 1");
    const std::size_t picks = std::min(k, node_count);
    std::vector<NodeId> ids(node_count);
    std::iota(ids.begin(), ids.end(), NodeId{0});
    for (std::size_t i = 0; i < picks; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.next_index(node_count - i));
        std::swap(ids[i], ids[j]);
    }
    SolutionSet out;
    out.method = "random";
    out.requested_k = k;
    out.nodes.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(picks));
    return out;
}

struct CoverOptimum {
    std::vector<NodeId> nodes;
    std::size_t coverage = 0;
};

// Test oracle: best k-subset coverage by brute force. Guarded by a bound on
// the number of k-subsets; ties resolve to the lexicographically smallest
// subset because subsets are enumerated in lexicographic order.
inline CoverOptimum exhaustive_cover_opt(const Hypergraph& h, std::size_t k,
                                         double max_combinations = 1e6) {
    if (k == 0) throw InvalidArgument("k must be at least 1");
    const std::size_t n = h.node_count();
    const std::size_t picks = std::min(k, n);
    if (picks == 0) return CoverOptimum{};
    double combos = 1.0;
    for (std::size_t i = 0; i < picks; ++i) {
        combos *= static_cast<double>(n - i) / static_cast<double>(i + 1);
        if (combos > max_combinations) {
            throw BoundExceeded("subset count exceeds exhaustive search bound");
        }
    }
    const std::size_t blocks = (h.n_nets() + 63) / 64;
    std::vector<std::uint64_t> node_mask(n * blocks, 0);
    for (NodeId v = 0; v < n; ++v) {
        for (const std::uint32_t net : h.incident_nets(v)) {
            node_mask[v * blocks + net / 64] |= 1ull << (net % 64);
        }
    }
    std::vector<std::uint64_t> acc((picks + 1) * blocks, 0);
    std::vector<std::size_t> count(picks + 1, 0);
    std::vector<NodeId> choice(picks, 0);
    CoverOptimum best;
    best.coverage = 0;
    bool have_best = false;
    // choice[d] iterates over candidate ids at depth d; acc rows hold the
    // union of covered-net bitmasks along the current path.
    std::size_t depth = 0;
    choice[0] = 0;
    while (true) {
        if (choice[depth] > n - (picks - depth)) {
            if (depth == 0) break;
            --depth;
            ++choice[depth];
            continue;
        }
        const NodeId v = choice[depth];
        std::size_t added = 0;
        for (std::size_t b = 0; b < blocks; ++b) {
            const std::uint64_t merged = acc[depth * blocks + b] | node_mask[v * blocks + b];
            acc[(depth + 1) * blocks + b] = merged;
            added += static_cast<std::size_t>(std::popcount(merged));
        }
        count[depth + 1] = added;
        if (depth + 1 == picks) {
            if (!have_best || count[picks] > best.coverage) {
                have_best = true;
                best.coverage = count[picks];
                best.nodes.assign(choice.begin(), choice.end());
            }
            ++choice[depth];
        } else {
            ++depth;
            choice[depth] = static_cast<NodeId>(choice[depth - 1] + 1);
        }
    }
    return best;
}

} // namespace tic
