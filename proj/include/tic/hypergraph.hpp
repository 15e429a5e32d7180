#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "tic/error.hpp"
#include "tic/temporal_network.hpp"

namespace tic {

// Random-reachable-set hypergraph: net k is the final active set of one
// cascade started from a single random seed; deg(v) counts the nets that
// contain v. Each net stores its seed so success-rate style diagnostics can
// exclude it without resampling.
class Hypergraph {
public:
    Hypergraph(std::size_t node_count, std::vector<std::vector<NodeId>> nets,
               std::vector<NodeId> seeds)
        : node_count_(node_count), nets_(std::move(nets)), seeds_(std::move(seeds)) {
        if (nets_.size() != seeds_.size()) {
            throw InvalidArgument("one seed per net required");
        }
        incident_.assign(node_count_, {});
        for (std::size_t k = 0; k < nets_.size(); ++k) {
            auto& net = nets_[k];
            if (net.empty()) throw InvalidArgument("net must contain at least its seed");
            std::sort(net.begin(), net.end());
            net.erase(std::unique(net.begin(), net.end()), net.end());
            if (net.back() >= node_count_) throw InvalidArgument("net member out of range");
            if (!std::binary_search(net.begin(), net.end(), seeds_[k])) {
                throw InvalidArgument("net must contain its seed");
            }
            for (const NodeId v : net) incident_[v].push_back(static_cast<std::uint32_t>(k));
        }
    }

    std::size_t node_count() const { return node_count_; }
    std::size_t n_nets() const { return nets_.size(); }
    std::span<const NodeId> pins(std::size_t k) const { return nets_.at(k); }
    NodeId seed_of(std::size_t k) const { return seeds_.at(k); }

    std::size_t degree(NodeId v) const {
        check_node(v);
        return incident_[v].size();
    }

    std::span<const std::uint32_t> incident_nets(NodeId v) const {
        check_node(v);
        return incident_[v];
    }

    // Number of nets hitting at least one member of S. Empty S covers nothing;
    // S = V covers every net, since each net contains its seed.
    std::size_t degree_of_set(std::span<const NodeId> nodes) const {
        std::vector<char> covered(nets_.size(), 0);
        std::size_t count = 0;
        for (const NodeId v : nodes) {
            check_node(v);
            for (const std::uint32_t k : incident_[v]) {
                if (!covered[k]) {
                    covered[k] = 1;
                    ++count;
                }
            }
        }
        return count;
    }

    void save(std::ostream& out) const {
        write_u32(out, kMagic);
        write_u32(out, kVersion);
        write_u32(out, static_cast<std::uint32_t>(node_count_));
        write_u32(out, static_cast<std::uint32_t>(nets_.size()));
        for (std::size_t k = 0; k < nets_.size(); ++k) {
            write_u32(out, seeds_[k]);
            write_u32(out, static_cast<std::uint32_t>(nets_[k].size()));
            for (const NodeId v : nets_[k]) write_u32(out, v);
        }
        if (!out) throw DataError("failed to write hypergraph stream");
    }

    void save(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw DataError("cannot open " + path + " for writing");
        save(out);
        if (!out) throw DataError("failed to write " + path);
    }

    static Hypergraph load(std::istream& in) {
        if (read_u32(in) != kMagic) throw DataError("not a hypergraph cache (bad magic)");
        if (read_u32(in) != kVersion) throw DataError("unsupported hypergraph cache version");
        const std::uint32_t node_count = read_u32(in);
        const std::uint32_t n_nets = read_u32(in);
        std::vector<std::vector<NodeId>> nets(n_nets);
        std::vector<NodeId> seeds(n_nets);
        for (std::uint32_t k = 0; k < n_nets; ++k) {
            seeds[k] = read_u32(in);
            const std::uint32_t size = read_u32(in);
            nets[k].resize(size);
            for (std::uint32_t i = 0; i < size; ++i) nets[k][i] = read_u32(in);
        }
        return Hypergraph(node_count, std::move(nets), std::move(seeds));
    }

    static Hypergraph load(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw DataError("cannot open " + path);
        return load(in);
    }

private:
    static constexpr std::uint32_t kMagic = 0x48434954u; // "TICH", little endian
    static constexpr std::uint32_t kVersion = 1;

    static void write_u32(std::ostream& out, std::uint32_t value) {
        unsigned char bytes[4];
        for (int i = 0; i < 4; ++i) bytes[i] = static_cast<unsigned char>((value >> (8 * i)) & 0xFF);
        out.write(reinterpret_cast<const char*>(bytes), 4);
    }

    static std::uint32_t read_u32(std::istream& in) {
        unsigned char bytes[4];
        in.read(reinterpret_cast<char*>(bytes), 4);
        if (!in) throw DataError("truncated hypergraph stream");
        std::uint32_t value = 0;
        for (int i = 0; i < 4; ++i) value |= static_cast<std::uint32_t>(bytes[i]) << (8 * i);
        return value;
    }

    void check_node(NodeId v) const {
        if (v >= node_count_) throw InvalidArgument("node id out of range");
    }

    std::size_t node_count_;
    std::vector<std::vector<NodeId>> nets_;
    std::vector<NodeId> seeds_;
    std::vector<std::vector<std::uint32_t>> incident_;
};

} // namespace tic
