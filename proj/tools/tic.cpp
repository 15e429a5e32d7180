#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tic/tic.hpp"

namespace {

using json = nlohmann::ordered_json;
using tic::IntervalIndex;
using tic::NodeId;

// Reports echo inputs by basename so identical runs from different
// directories stay byte-identical.
std::string base_name(const std::string& path) {
    return std::filesystem::path(path).filename().string();
}

std::string fmt_double(double value) {
    char buf[32];
    const int written = std::snprintf(buf, sizeof buf, "%.17g", value);
    return std::string(buf, static_cast<std::size_t>(written));
}

tic::Window parse_window(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw tic::InvalidArgument("window must look like i:j, got '" + text + "'");
    }
    try {
        const long first = std::stol(text.substr(0, colon));
        const long last = std::stol(text.substr(colon + 1));
        return tic::Window{static_cast<IntervalIndex>(first), static_cast<IntervalIndex>(last)};
    } catch (const std::exception&) {
        throw tic::InvalidArgument("window must look like i:j, got '" + text + "'");
    }
}

tic::Window window_or_full(const tic::TemporalNetwork& net, const std::string& text) {
    if (text.empty()) return tic::Window{1, net.interval_count()};
    return parse_window(text);
}

std::vector<NodeId> parse_id_list(const std::string& text) {
    std::vector<NodeId> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(static_cast<NodeId>(std::stoul(item)));
        } catch (const std::exception&) {
            throw tic::InvalidArgument("bad node id '" + item + "' in list");
        }
    }
    if (out.empty()) throw tic::InvalidArgument("node id list is empty");
    return out;
}

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw tic::DataError("cannot open " + path + " for writing");
    out << content;
    if (!out) throw tic::DataError("failed to write " + path);
}

void emit_report(const std::string& path, const json& report) {
    const std::string text = report.dump(2) + "\n";
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        write_text(path, text);
    }
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw tic::DataError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const std::exception& e) {
        throw tic::DataError(path + ": " + e.what());
    }
}

std::uint64_t derive(std::uint64_t seed, std::uint64_t salt) {
    return tic::detail::mix64(seed ^ (salt + 1) * 0x9E3779B97F4A7C15ull);
}

// --- venue bundle ---------------------------------------------------------
// JSON sidecar tying a contact network to its venues: per-venue metadata, the
// venue behind each directed record, and deduplicated per-day check-ins.

struct VenueBundle {
    std::vector<std::string> node_labels;
    std::size_t node_count = 0;
    IntervalIndex interval_count = 1;
    tic::VenueMap venue_map;
    std::vector<tic::NodeCheckin> checkins;
};

json venue_bundle_to_json(const tic::ColocationResult& result) {
    json out;
    out["node_count"] = result.node_count;
    out["interval_count"] = result.interval_count;
    out["node_labels"] = result.node_labels;
    json venues = json::object();
    for (const auto& [name, info] : result.venue_map.venues) {
        venues[name] = json{{"category", info.category}, {"visits", info.visits}};
    }
    out["venues"] = std::move(venues);
    json edges = json::array();
    for (const auto& [key, venue] : result.venue_map.edge_venue) {
        const auto& [u, v, t] = key;
        edges.push_back(json::array({u, v, t, venue}));
    }
    out["edges"] = std::move(edges);
    json checkins = json::array();
    for (const tic::NodeCheckin& c : result.checkins) {
        checkins.push_back(json::array({c.node, c.venue, c.t}));
    }
    out["checkins"] = std::move(checkins);
    return out;
}

VenueBundle load_venue_bundle(const std::string& path) {
    const json data = load_json(path);
    VenueBundle bundle;
    try {
        bundle.node_count = data.at("node_count").get<std::size_t>();
        bundle.interval_count = data.at("interval_count").get<IntervalIndex>();
        if (data.contains("node_labels")) {
            bundle.node_labels = data.at("node_labels").get<std::vector<std::string>>();
        }
        for (const auto& [name, info] : data.at("venues").items()) {
            bundle.venue_map.venues[name] =
                tic::VenueInfo{info.at("category").get<std::string>(),
                               info.at("visits").get<std::uint64_t>()};
        }
        for (const auto& edge : data.at("edges")) {
            bundle.venue_map.edge_venue[{edge.at(0).get<NodeId>(), edge.at(1).get<NodeId>(),
                                         edge.at(2).get<IntervalIndex>()}] =
                edge.at(3).get<std::string>();
        }
        for (const auto& c : data.at("checkins")) {
            bundle.checkins.push_back(tic::NodeCheckin{
                c.at(0).get<NodeId>(), c.at(1).get<std::string>(), c.at(2).get<IntervalIndex>()});
        }
    } catch (const json::exception& e) {
        throw tic::DataError(path + ": " + e.what());
    }
    return bundle;
}

json solution_to_json(const tic::SolutionSet& sol) {
    json out;
    out["method"] = sol.method;
    out["k"] = sol.requested_k;
    out["nodes"] = sol.nodes;
    out["covered_after_pick"] = sol.covered_after_pick;
    return out;
}

tic::SolutionSet solution_from_json(const std::string& path) {
    const json data = load_json(path);
    tic::SolutionSet sol;
    try {
        sol.method = data.at("method").get<std::string>();
        sol.requested_k = data.at("k").get<std::size_t>();
        sol.nodes = data.at("nodes").get<std::vector<NodeId>>();
        if (data.contains("covered_after_pick")) {
            sol.covered_after_pick = data.at("covered_after_pick").get<std::vector<std::size_t>>();
        }
    } catch (const json::exception& e) {
        throw tic::DataError(path + ": " + e.what());
    }
    if (sol.nodes.empty()) throw tic::DataError(path + ": solution has no nodes");
    return sol;
}

// --- build ----------------------------------------------------------------

struct BuildOpts {
    std::string mode;
    std::string checkins;
    std::string pois;
    std::string input;
    std::string out;
    std::string venues_out;
    std::size_t individuals = 100;
    int days = 7;
    int slot_minutes = 5;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::size_t nodes = 0;
    IntervalIndex intervals = 0;
    std::string family = "erdos_renyi";
    double density = 0.01;
    double p_min = 0.05;
    double p_max = 0.3;
    std::size_t collectors = 60;
    std::size_t decoys = 60;
    int normal_out_degree = 2;
    double collector_bias = 0.6;
    int decoy_out_degree = 100;
    int decoy_in_degree = 5;
    double decoy_p = 0.02;
    int max_visits = 6;
    double speed_kmh = 5.0;
    double speed_jitter = 0.5;
    std::vector<std::string> banned;
};

void require_seed(bool seed_set, const std::string& what) {
    if (!seed_set) throw tic::InvalidArgument("--seed is required for " + what);
}

void emit_colocation(const tic::ColocationResult& result, const BuildOpts& opts,
                     const std::string& mode) {
    tic::save_contacts_csv(result.events, opts.out);
    if (!opts.venues_out.empty()) {
        write_text(opts.venues_out, venue_bundle_to_json(result).dump(2) + "\n");
    }
    json summary;
    summary["command"] = "build";
    summary["mode"] = mode;
    summary["out"] = opts.out;
    summary["node_count"] = result.node_count;
    summary["interval_count"] = result.interval_count;
    summary["events"] = result.events.size();
    std::cout << summary.dump() << "\n";
}

void run_build(const BuildOpts& opts) {
    if (opts.mode == "daily") {
        if (opts.checkins.empty()) throw tic::InvalidArgument("--checkins is required for daily");
        const auto checkins = tic::load_checkins(opts.checkins);
        emit_colocation(tic::build_colocation_daily(checkins), opts, "daily");
    } else if (opts.mode == "slotted") {
        if (opts.pois.empty()) throw tic::InvalidArgument("--pois is required for slotted");
        require_seed(opts.seed_set, "trajectory generation");
        const auto pois = tic::load_pois(opts.pois);
        tic::TrajectoryParams params;
        params.max_visits = opts.max_visits;
        params.speed_kmh = opts.speed_kmh;
        params.speed_jitter = opts.speed_jitter;
        params.banned_categories = opts.banned;
        tic::Rng rng = tic::Rng::seeded(opts.seed);
        const auto visits =
            tic::generate_trajectories(pois, opts.individuals, opts.days, rng, params);
        emit_colocation(tic::build_colocation_slotted(visits, pois, opts.slot_minutes), opts,
                        "slotted");
    } else if (opts.mode == "transitions") {
        if (opts.input.empty()) throw tic::InvalidArgument("--input is required for transitions");
        const auto net = tic::load_transitions(opts.input, opts.nodes, opts.intervals);
        tic::save_network_csv(net, opts.out);
        json summary;
        summary["command"] = "build";
        summary["mode"] = "transitions";
        summary["out"] = opts.out;
        summary["node_count"] = net.node_count();
        summary["interval_count"] = net.interval_count();
        summary["records"] = net.record_count();
        std::cout << summary.dump() << "\n";
    } else if (opts.mode == "synthetic") {
        require_seed(opts.seed_set, "synthetic generation");
        if (opts.nodes == 0 || opts.intervals == 0) {
            throw tic::InvalidArgument("--nodes and --intervals are required for synthetic");
        }
        tic::SyntheticParams params;
        if (opts.family == "erdos_renyi") {
            params.family = tic::SyntheticParams::Family::erdos_renyi;
        } else if (opts.family == "late_bloomer") {
            params.family = tic::SyntheticParams::Family::late_bloomer;
        } else {
            throw tic::InvalidArgument("unknown family '" + opts.family + "'");
        }
        params.density = opts.density;
        params.p_min = opts.p_min;
        params.p_max = opts.p_max;
        params.collectors = opts.collectors;
        params.decoys = opts.decoys;
        params.normal_out_degree = opts.normal_out_degree;
        params.collector_bias = opts.collector_bias;
        params.decoy_out_degree = opts.decoy_out_degree;
        params.decoy_in_degree = opts.decoy_in_degree;
        params.decoy_p = opts.decoy_p;
        tic::Rng rng = tic::Rng::seeded(opts.seed);
        const auto net =
            tic::generate_synthetic_network(opts.nodes, opts.intervals, params, rng);
        tic::save_network_csv(net, opts.out);
        json summary;
        summary["command"] = "build";
        summary["mode"] = "synthetic";
        summary["family"] = opts.family;
        summary["out"] = opts.out;
        summary["node_count"] = net.node_count();
        summary["interval_count"] = net.interval_count();
        summary["records"] = net.record_count();
        std::cout << summary.dump() << "\n";
    } else {
        throw tic::InvalidArgument("unknown build mode '" + opts.mode + "'");
    }
}

void register_build(CLI::App& app) {
    auto opts = std::make_shared<BuildOpts>();
    CLI::App* sub = app.add_subcommand(
        "build", "Build a contact or probability network from raw inputs");
    sub->add_option("--mode", opts->mode, "daily | slotted | transitions | synthetic")
        ->required();
    sub->add_option("--checkins", opts->checkins, "check-in CSV (user,venue,ts[,category])");
    sub->add_option("--pois", opts->pois, "POI CSV for trajectory generation");
    sub->add_option("--input", opts->input, "input CSV for transitions mode");
    sub->add_option("--out", opts->out, "output path (contacts CSV or network CSV)")->required();
    sub->add_option("--venues", opts->venues_out, "write the venue bundle JSON here");
    sub->add_option("--individuals", opts->individuals, "trajectory individuals");
    sub->add_option("--days", opts->days, "trajectory days");
    sub->add_option("--slot-minutes", opts->slot_minutes, "co-location slot length");
    sub->add_option("--seed", opts->seed, "rng master seed")
        ->each([opts](const std::string&) { opts->seed_set = true; });
    sub->add_option("--nodes", opts->nodes, "node count (0 = infer)");
    sub->add_option("--intervals", opts->intervals, "interval count (0 = infer)");
    sub->add_option("--family", opts->family, "synthetic family: erdos_renyi | late_bloomer");
    sub->add_option("--density", opts->density, "erdos_renyi edge density");
    sub->add_option("--p-min", opts->p_min, "minimum edge probability");
    sub->add_option("--p-max", opts->p_max, "maximum edge probability");
    sub->add_option("--collectors", opts->collectors, "late bloomer collector count");
    sub->add_option("--decoys", opts->decoys, "late bloomer decoy count");
    sub->add_option("--normal-out-degree", opts->normal_out_degree, "late bloomer normal degree");
    sub->add_option("--collector-bias", opts->collector_bias, "late bloomer collector bias");
    sub->add_option("--decoy-out-degree", opts->decoy_out_degree, "late bloomer decoy out degree");
    sub->add_option("--decoy-in-degree", opts->decoy_in_degree, "late bloomer decoy in degree");
    sub->add_option("--decoy-p", opts->decoy_p, "late bloomer decoy probability");
    sub->add_option("--max-visits", opts->max_visits, "trajectory visits per day cap");
    sub->add_option("--speed", opts->speed_kmh, "trajectory walking speed km/h");
    sub->add_option("--speed-jitter", opts->speed_jitter, "per-leg speed jitter in [0,1)");
    sub->add_option("--ban-category", opts->banned, "exclude POI categories (repeatable)");
    sub->callback([opts]() { run_build(*opts); });
}

// --- assign ---------------------------------------------------------------

struct AssignOpts {
    std::string mode = "contacts";
    std::string contacts;
    std::string edges;
    std::string out;
    std::string labels_out;
    std::string preset = "density";
    double a = 0.0;
    double b = 0.0;
    double rho1 = 0.0;
    double rho2 = 0.0;
    double dist_threshold = 0.0;
    IntervalIndex history_window = 0;
    bool a_set = false, b_set = false, rho1_set = false, rho2_set = false;
    bool dist_set = false, window_set = false;
    std::size_t nodes = 0;
    IntervalIndex intervals = 0;
    double p_max = 0.3;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void run_assign(const AssignOpts& opts) {
    if (opts.mode == "contacts") {
        if (opts.contacts.empty()) throw tic::InvalidArgument("--contacts is required");
        tic::InfectionForceParams params;
        if (opts.preset == "density") {
            params = tic::InfectionForceParams::density_profile();
        } else if (opts.preset == "proximity") {
            params = tic::InfectionForceParams::proximity_profile();
        } else if (opts.preset == "custom") {
            // every field comes from the overrides below
        } else {
            throw tic::InvalidArgument("unknown preset '" + opts.preset + "'");
        }
        if (opts.a_set) params.a = opts.a;
        if (opts.b_set) params.b = opts.b;
        if (opts.rho1_set) params.rho1 = opts.rho1;
        if (opts.rho2_set) params.rho2 = opts.rho2;
        if (opts.dist_set) params.dist_threshold = opts.dist_threshold;
        if (opts.window_set) params.history_window = opts.history_window;
        const auto contacts = tic::load_contact_distances(opts.contacts);
        const std::size_t node_count = std::max(opts.nodes, contacts.node_count);
        const IntervalIndex interval_count =
            std::max(opts.intervals, contacts.interval_count);
        const auto net =
            tic::assign_from_contacts(params, contacts.events, node_count, interval_count);
        tic::save_network_csv(net, opts.out);
        json summary;
        summary["command"] = "assign";
        summary["mode"] = "contacts";
        summary["preset"] = opts.preset;
        summary["out"] = opts.out;
        summary["node_count"] = net.node_count();
        summary["interval_count"] = net.interval_count();
        summary["records"] = net.record_count();
        std::cout << summary.dump() << "\n";
    } else if (opts.mode == "uniform") {
        if (opts.edges.empty()) throw tic::InvalidArgument("--edges is required");
        require_seed(opts.seed_set, "uniform probability assignment");
        if (opts.intervals == 0) {
            throw tic::InvalidArgument("--intervals is required for uniform assignment");
        }
        const auto list = tic::load_edge_list(opts.edges);
        const std::size_t node_count = std::max(opts.nodes, list.node_labels.size());
        tic::Rng rng = tic::Rng::seeded(opts.seed);
        const auto net = tic::assign_uniform_random(list.edges, node_count, opts.intervals,
                                                    opts.p_max, rng);
        tic::save_network_csv(net, opts.out);
        if (!opts.labels_out.empty()) {
            json labels;
            labels["node_labels"] = list.node_labels;
            write_text(opts.labels_out, labels.dump(2) + "\n");
        }
        json summary;
        summary["command"] = "assign";
        summary["mode"] = "uniform";
        summary["out"] = opts.out;
        summary["node_count"] = net.node_count();
        summary["interval_count"] = net.interval_count();
        summary["records"] = net.record_count();
        std::cout << summary.dump() << "\n";
    } else {
        throw tic::InvalidArgument("unknown assign mode '" + opts.mode + "'");
    }
}

void register_assign(CLI::App& app) {
    auto opts = std::make_shared<AssignOpts>();
    CLI::App* sub =
        app.add_subcommand("assign", "Assign propagation probabilities to contacts or edges");
    sub->add_option("--mode", opts->mode, "contacts | uniform");
    sub->add_option("--contacts", opts->contacts, "contact CSV (u,v,t[,d][,m])");
    sub->add_option("--edges", opts->edges, "edge list CSV (u,v)");
    sub->add_option("--out", opts->out, "output network CSV")->required();
    sub->add_option("--labels", opts->labels_out, "write node label JSON here");
    sub->add_option("--preset", opts->preset, "density | proximity | custom");
    sub->add_option("--a", opts->a, "proximity weight")
        ->each([opts](const std::string&) { opts->a_set = true; });
    sub->add_option("--b", opts->b, "density weight")
        ->each([opts](const std::string&) { opts->b_set = true; });
    sub->add_option("--rho1", opts->rho1, "proximity decay")
        ->each([opts](const std::string&) { opts->rho1_set = true; });
    sub->add_option("--rho2", opts->rho2, "density decay")
        ->each([opts](const std::string&) { opts->rho2_set = true; });
    sub->add_option("--dist-threshold", opts->dist_threshold, "proximity cutoff (meters)")
        ->each([opts](const std::string&) { opts->dist_set = true; });
    sub->add_option("--history-window", opts->history_window, "force accumulation window t0")
        ->each([opts](const std::string&) { opts->window_set = true; });
    sub->add_option("--nodes", opts->nodes, "node count (0 = infer)");
    sub->add_option("--intervals", opts->intervals, "interval count (0 = infer)");
    sub->add_option("--p-max", opts->p_max, "uniform probability upper bound");
    sub->add_option("--seed", opts->seed, "rng master seed")
        ->each([opts](const std::string&) { opts->seed_set = true; });
    sub->callback([opts]() { run_assign(*opts); });
}

// --- sample ---------------------------------------------------------------

struct SampleOpts {
    std::string network;
    std::string window;
    std::size_t nodes = 0;
    IntervalIndex intervals = 0;
    std::size_t n_nets = 20000;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    std::string out;
    std::string report;
};

void run_sample(const SampleOpts& opts) {
    const auto net = tic::load_network_csv(opts.network, opts.nodes, opts.intervals);
    const tic::Window window = window_or_full(net, opts.window);
    const auto h = tic::build_hypergraph(net, window, opts.n_nets, opts.seed, opts.workers);
    h.save(opts.out);
    std::size_t total_pins = 0;
    std::size_t max_pins = 0;
    for (std::size_t k = 0; k < h.n_nets(); ++k) {
        total_pins += h.pins(k).size();
        max_pins = std::max(max_pins, h.pins(k).size());
    }
    json report;
    report["command"] = "sample";
    report["network"] = base_name(opts.network);
    report["window"] = json::array({window.first, window.last});
    report["n_nets"] = h.n_nets();
    report["seed"] = opts.seed;
    report["node_count"] = h.node_count();
    report["total_pins"] = total_pins;
    report["max_pins"] = max_pins;
    report["mean_pins"] = static_cast<double>(total_pins) / static_cast<double>(h.n_nets());
    report["out"] = base_name(opts.out);
    if (!opts.report.empty()) write_text(opts.report, report.dump(2) + "\n");
    std::cout << report.dump() << "\n";
}

void register_sample(CLI::App& app) {
    auto opts = std::make_shared<SampleOpts>();
    CLI::App* sub =
        app.add_subcommand("sample", "Sample the random-reachable-set hypergraph");
    sub->add_option("--network", opts->network, "network CSV (u,v,t,p)")->required();
    sub->add_option("--window", opts->window, "observation window i:j (default full)");
    sub->add_option("--nodes", opts->nodes, "node count (0 = infer)");
    sub->add_option("--intervals", opts->intervals, "interval count (0 = infer)");
    sub->add_option("--n-nets", opts->n_nets, "number of sampled nets");
    sub->add_option("--seed", opts->seed, "rng master seed")->required();
    sub->add_option("--workers", opts->workers, "worker threads (0 = cores)");
    sub->add_option("--out", opts->out, "hypergraph cache output path")->required();
    sub->add_option("--report", opts->report, "also write the sampling report JSON here");
    sub->callback([opts]() { run_sample(*opts); });
}

// --- solve ----------------------------------------------------------------

struct SolveOpts {
    std::string method;
    std::string hypergraph;
    std::string network;
    std::string window;
    std::size_t nodes = 0;
    IntervalIndex intervals = 0;
    long long k = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double max_combinations = 1e6;
    std::string out;
};

void run_solve(const SolveOpts& opts) {
    if (opts.k < 1) throw tic::InvalidArgument("--k must be at least 1");
    const std::size_t k = static_cast<std::size_t>(opts.k);
    json report;
    if (opts.method == "rsm" || opts.method == "esm") {
        if (opts.hypergraph.empty()) {
            throw tic::InvalidArgument("--hypergraph is required for " + opts.method);
        }
        const auto h = tic::Hypergraph::load(opts.hypergraph);
        const auto sol = opts.method == "rsm" ? tic::rsm_solve(h, k) : tic::esm_solve(h, k);
        report = solution_to_json(sol);
    } else if (opts.method == "maxdeg") {
        if (opts.network.empty()) throw tic::InvalidArgument("--network is required for maxdeg");
        const auto net = tic::load_network_csv(opts.network, opts.nodes, opts.intervals);
        const auto sol = tic::max_deg_solve(net, window_or_full(net, opts.window), k);
        report = solution_to_json(sol);
    } else if (opts.method == "random") {
        if (opts.network.empty()) throw tic::InvalidArgument("--network is required for random");
        require_seed(opts.seed_set, "random selection");
        const auto net = tic::load_network_csv(opts.network, opts.nodes, opts.intervals);
        tic::Rng rng = tic::Rng::seeded(opts.seed);
        report = solution_to_json(tic::random_solve(net.node_count(), k, rng));
    } else if (opts.method == "optimal") {
        if (opts.hypergraph.empty()) {
            throw tic::InvalidArgument("--hypergraph is required for optimal");
        }
        const auto h = tic::Hypergraph::load(opts.hypergraph);
        const auto opt = tic::exhaustive_cover_opt(h, k, opts.max_combinations);
        report["method"] = "optimal";
        report["k"] = k;
        report["nodes"] = opt.nodes;
        report["coverage"] = opt.coverage;
    } else {
        throw tic::InvalidArgument("unknown method '" + opts.method + "'");
    }
    emit_report(opts.out, report);
}

void register_solve(CLI::App& app) {
    auto opts = std::make_shared<SolveOpts>();
    CLI::App* sub = app.add_subcommand("solve", "Select a k-node solution set");
    sub->add_option("--method", opts->method, "rsm | esm | maxdeg | random | optimal")
        ->required();
    sub->add_option("--hypergraph", opts->hypergraph, "hypergraph cache (rsm/esm/optimal)");
    sub->add_option("--network", opts->network, "network CSV (maxdeg/random)");
    sub->add_option("--window", opts->window, "window i:j for maxdeg (default full)");
    sub->add_option("--nodes", opts->nodes, "node count (0 = infer)");
    sub->add_option("--intervals", opts->intervals, "interval count (0 = infer)");
    sub->add_option("--k", opts->k, "solution size")->required();
    sub->add_option("--seed", opts->seed, "rng master seed (random method)")
        ->each([opts](const std::string&) { opts->seed_set = true; });
    sub->add_option("--max-combinations", opts->max_combinations,
                    "search bound for the optimal method");
    sub->add_option("--out", opts->out, "solution JSON path (default stdout)");
    sub->callback([opts]() { run_solve(*opts); });
}

// --- evaluate -------------------------------------------------------------

struct EvaluateOpts {
    std::string network;
    std::string window;
    std::size_t nodes = 0;
    IntervalIndex intervals = 0;
    std::string methods = "rsm,esm,maxdeg,random";
    std::vector<std::string> solutions;
    long long k = 10;
    std::size_t n_nets = 20000;
    std::size_t n_sims = 1000;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    std::string out;
    std::string csv;
};

void run_evaluate(const EvaluateOpts& opts) {
    if (opts.k < 1) throw tic::InvalidArgument("--k must be at least 1");
    const std::size_t k = static_cast<std::size_t>(opts.k);
    const auto net = tic::load_network_csv(opts.network, opts.nodes, opts.intervals);
    const tic::Window window = window_or_full(net, opts.window);
    const auto methods = split_csv(opts.methods);
    if (methods.empty() && opts.solutions.empty()) {
        throw tic::InvalidArgument("nothing to evaluate: no methods, no solutions");
    }
    const auto h = tic::build_hypergraph(net, window, opts.n_nets, opts.seed, opts.workers);
    const auto batch =
        tic::simulate_batch(net, window, opts.n_sims, derive(opts.seed, 1), opts.workers);

    std::vector<tic::SolutionSet> entries;
    for (const std::string& method : methods) {
        if (method == "rsm") {
            entries.push_back(tic::rsm_solve(h, k));
        } else if (method == "esm") {
            entries.push_back(tic::esm_solve(h, k));
        } else if (method == "maxdeg") {
            entries.push_back(tic::max_deg_solve(net, window, k));
        } else if (method == "random") {
            tic::Rng rng = tic::Rng::seeded(derive(opts.seed, 2));
            entries.push_back(tic::random_solve(net.node_count(), k, rng));
        } else {
            throw tic::InvalidArgument("unknown method '" + method + "'");
        }
    }
    for (const std::string& path : opts.solutions) {
        entries.push_back(solution_from_json(path));
    }

    std::vector<double> rs, bsr, es;
    for (const tic::SolutionSet& sol : entries) {
        for (const NodeId v : sol.nodes) {
            if (v >= net.node_count()) {
                throw tic::DataError("solution node " + std::to_string(v) +
                                     " is outside the network");
            }
        }
        rs.push_back(tic::reverse_spread(h, sol.nodes));
        bsr.push_back(tic::binary_success_rate(batch, sol.nodes));
        es.push_back(tic::expected_spread(batch, sol.nodes));
    }
    const auto rs_n = tic::normalize_scores(rs);
    const auto bsr_n = tic::normalize_scores(bsr);
    const auto es_n = tic::normalize_scores(es);

    json report;
    report["command"] = "evaluate";
    report["config"] = json{{"network", base_name(opts.network)},
                            {"window", json::array({window.first, window.last})},
                            {"k", k},
                            {"n_nets", opts.n_nets},
                            {"n_sims", opts.n_sims},
                            {"seed", opts.seed}};
    json results = json::array();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        json row;
        row["method"] = entries[i].method;
        row["nodes"] = entries[i].nodes;
        row["reverse_spread"] = rs[i];
        row["binary_success_rate"] = bsr[i];
        row["expected_spread"] = es[i];
        row["normalized"] = json{{"reverse_spread", rs_n[i]},
                                 {"binary_success_rate", bsr_n[i]},
                                 {"expected_spread", es_n[i]}};
        results.push_back(std::move(row));
    }
    report["results"] = std::move(results);
    emit_report(opts.out, report);

    if (!opts.csv.empty()) {
        std::ostringstream table;
        table << "method,reverse_spread,binary_success_rate,expected_spread,"
                 "reverse_spread_norm,binary_success_rate_norm,expected_spread_norm\n";
        for (std::size_t i = 0; i < entries.size(); ++i) {
            table << entries[i].method << ',' << fmt_double(rs[i]) << ',' << fmt_double(bsr[i])
                  << ',' << fmt_double(es[i]) << ',' << fmt_double(rs_n[i]) << ','
                  << fmt_double(bsr_n[i]) << ',' << fmt_double(es_n[i]) << '\n';
        }
        write_text(opts.csv, table.str());
    }
}

void register_evaluate(CLI::App& app) {
    auto opts = std::make_shared<EvaluateOpts>();
    CLI::App* sub = app.add_subcommand(
        "evaluate", "Score solution methods with reverse spread, success rate, and spread");
    sub->add_option("--network", opts->network, "network CSV (u,v,t,p)")->required();
    sub->add_option("--window", opts->window, "window i:j (default full)");
    sub->add_option("--nodes", opts->nodes, "node count (0 = infer)");
    sub->add_option("--intervals", opts->intervals, "interval count (0 = infer)");
    sub->add_option("--methods", opts->methods, "comma list: rsm,esm,maxdeg,random ('' = none)");
    sub->add_option("--solution", opts->solutions, "extra solution JSON files (repeatable)");
    sub->add_option("--k", opts->k, "solution size for built-in methods");
    sub->add_option("--n-nets", opts->n_nets, "hypergraph size");
    sub->add_option("--n-sims", opts->n_sims, "forward simulations");
    sub->add_option("--seed", opts->seed, "rng master seed")->required();
    sub->add_option("--workers", opts->workers, "worker threads (0 = cores)");
    sub->add_option("--out", opts->out, "report JSON path (default stdout)");
    sub->add_option("--csv", opts->csv, "also write a CSV metric table here");
    sub->callback([opts]() { run_evaluate(*opts); });
}

// --- intervene ------------------------------------------------------------

struct InterveneOpts {
    std::string network;
    std::string window;
    std::size_t nodes = 0;
    IntervalIndex intervals = 0;
    std::string strategy = "random";
    double fraction = 0.3;
    std::string venues;
    std::size_t top_v = 50;
    std::string seeds;
    std::size_t seed_size = 10;
    std::size_t n_sims = 20;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    std::string out;
    std::string save_modified;
};

void run_intervene(const InterveneOpts& opts) {
    const auto net = tic::load_network_csv(opts.network, opts.nodes, opts.intervals);
    const tic::Window window = window_or_full(net, opts.window);
    tic::Rng rng = tic::Rng::seeded(opts.seed);

    tic::EdgeDropResult drop;
    if (opts.strategy == "random") {
        drop = tic::drop_edges_random(net, opts.fraction, rng);
    } else if (opts.strategy == "priority") {
        if (opts.venues.empty()) {
            throw tic::InvalidArgument("--venues is required for the priority strategy");
        }
        const VenueBundle bundle = load_venue_bundle(opts.venues);
        drop = tic::drop_edges_priority(net, opts.fraction, bundle.venue_map, opts.top_v, rng);
    } else {
        throw tic::InvalidArgument("unknown strategy '" + opts.strategy + "'");
    }

    std::vector<NodeId> seeds;
    if (!opts.seeds.empty()) {
        seeds = parse_id_list(opts.seeds);
        for (const NodeId v : seeds) {
            if (v >= net.node_count()) {
                throw tic::InvalidArgument("seed node " + std::to_string(v) +
                                           " is outside the network");
            }
        }
    } else {
        tic::Rng pick = tic::Rng::seeded(derive(opts.seed, 3));
        seeds = tic::random_solve(net.node_count(), opts.seed_size, pick).nodes;
    }

    const auto result = tic::spread_reduction(net, drop.network, seeds, window, opts.n_sims,
                                              derive(opts.seed, 4), opts.workers);
    if (!opts.save_modified.empty()) tic::save_network_csv(drop.network, opts.save_modified);

    json report;
    report["command"] = "intervene";
    report["strategy"] = opts.strategy;
    report["fraction"] = opts.fraction;
    report["window"] = json::array({window.first, window.last});
    report["seed"] = opts.seed;
    report["n_sims"] = opts.n_sims;
    report["removed_records"] = drop.removed_records;
    report["remaining_records"] = drop.network.record_count();
    json alloc = json::array();
    for (const auto& [venue, count] : drop.venue_allocation) {
        alloc.push_back(json::array({venue, count}));
    }
    report["venue_allocation"] = std::move(alloc);
    report["seeds"] = seeds;
    report["original_mean"] = result.original_mean;
    report["modified_mean"] = result.modified_mean;
    report["original_se"] = result.original_se;
    report["modified_se"] = result.modified_se;
    report["reduction_pct"] = result.reduction_pct;
    emit_report(opts.out, report);
}

void register_intervene(CLI::App& app) {
    auto opts = std::make_shared<InterveneOpts>();
    CLI::App* sub =
        app.add_subcommand("intervene", "Drop edges and measure the spread reduction");
    sub->add_option("--network", opts->network, "network CSV (u,v,t,p)")->required();
    sub->add_option("--window", opts->window, "window i:j (default full)");
    sub->add_option("--nodes", opts->nodes, "node count (0 = infer)");
    sub->add_option("--intervals", opts->intervals, "interval count (0 = infer)");
    sub->add_option("--strategy", opts->strategy, "random | priority");
    sub->add_option("--fraction", opts->fraction, "fraction of records to drop");
    sub->add_option("--venues", opts->venues, "venue bundle JSON (priority strategy)");
    sub->add_option("--top-v", opts->top_v, "busiest venues eligible for priority drops");
    sub->add_option("--seeds", opts->seeds, "comma list of outbreak seed nodes");
    sub->add_option("--seed-size", opts->seed_size, "random outbreak seed count");
    sub->add_option("--n-sims", opts->n_sims, "simulations per network");
    sub->add_option("--seed", opts->seed, "rng master seed")->required();
    sub->add_option("--workers", opts->workers, "worker threads (0 = cores)");
    sub->add_option("--out", opts->out, "report JSON path (default stdout)");
    sub->add_option("--save-modified", opts->save_modified, "write the modified network here");
    sub->callback([opts]() { run_intervene(*opts); });
}

// --- trace ----------------------------------------------------------------

struct TraceOpts {
    std::string network;
    std::string window;
    std::size_t nodes = 0;
    IntervalIndex intervals = 0;
    std::string solution;
    std::size_t top_c = 0;
    std::size_t n_sims = 1000;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool exhaustive = false;
    bool include_members = false;
    std::string venues;
    unsigned workers = 0;
    std::string out;
};

void run_trace(const TraceOpts& opts) {
    const auto net = tic::load_network_csv(opts.network, opts.nodes, opts.intervals);
    const tic::Window window = window_or_full(net, opts.window);
    const tic::SolutionSet sol = solution_from_json(opts.solution);
    if (!opts.exhaustive) require_seed(opts.seed_set, "sampled backward tracing");
    const std::size_t top_c = opts.top_c != 0 ? opts.top_c : sol.nodes.size();
    const auto result =
        tic::backward_contribution(net, sol.nodes, window, top_c, opts.n_sims, opts.seed,
                                   opts.exhaustive, opts.include_members, opts.workers);

    json report;
    report["command"] = "trace";
    report["method"] = sol.method;
    report["solution_nodes"] = sol.nodes;
    report["window"] = json::array({window.first, window.last});
    report["top_c"] = top_c;
    report["exhaustive"] = opts.exhaustive;
    report["n_runs"] = opts.exhaustive ? net.node_count() : opts.n_sims;
    json participation = json::array();
    for (const auto& [node, count] : result.participation) {
        participation.push_back(json::array({node, count}));
    }
    report["participation"] = std::move(participation);
    report["top_contributors"] = result.top_contributors;
    report["contribution_pct"] = result.contribution_pct;
    report["total_events"] = result.total_events;
    report["runs_with_events"] = result.runs_with_events;

    if (!opts.venues.empty()) {
        const VenueBundle bundle = load_venue_bundle(opts.venues);
        const auto cover = tic::venue_coverage(sol.nodes, bundle.venue_map, bundle.checkins,
                                               window);
        json venue_section;
        venue_section["distinct_venues"] = cover.venues.size();
        venue_section["venues"] = cover.venues;
        json histogram = json::array();
        for (const auto& [category, count] : cover.category_histogram) {
            histogram.push_back(json::array({category, count}));
        }
        venue_section["categories"] = std::move(histogram);
        report["venue_coverage"] = std::move(venue_section);
    }
    emit_report(opts.out, report);
}

void register_trace(CLI::App& app) {
    auto opts = std::make_shared<TraceOpts>();
    CLI::App* sub =
        app.add_subcommand("trace", "Backward-trace the spreaders behind a solution set");
    sub->add_option("--network", opts->network, "network CSV (u,v,t,p)")->required();
    sub->add_option("--window", opts->window, "window i:j (default full)");
    sub->add_option("--nodes", opts->nodes, "node count (0 = infer)");
    sub->add_option("--intervals", opts->intervals, "interval count (0 = infer)");
    sub->add_option("--solution", opts->solution, "solution JSON from solve")->required();
    sub->add_option("--top-c", opts->top_c, "contributor count (0 = solution size)");
    sub->add_option("--n-sims", opts->n_sims, "sampled runs (ignored with --exhaustive)");
    sub->add_option("--seed", opts->seed, "rng master seed")
        ->each([opts](const std::string&) { opts->seed_set = true; });
    sub->add_flag("--exhaustive", opts->exhaustive, "one run per node instead of sampling");
    sub->add_flag("--include-members", opts->include_members,
                  "count solution members as contributors");
    sub->add_option("--venues", opts->venues, "venue bundle JSON for coverage reporting");
    sub->add_option("--workers", opts->workers, "worker threads (0 = cores)");
    sub->add_option("--out", opts->out, "report JSON path (default stdout)");
    sub->callback([opts]() { run_trace(*opts); });
}

// --- bench ----------------------------------------------------------------

struct BenchOpts {
    std::string network;
    std::string window;
    std::size_t nodes = 0;
    IntervalIndex intervals = 0;
    std::string mode = "nets";
    std::string sizes;
    std::size_t n_nets = 20000;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    std::string out;
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 1.0;
};

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LinearFit fit;
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0.0, ss_tot = 0.0;
    const double mean_y = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double predicted = fit.slope * x[i] + fit.intercept;
        ss_res += (y[i] - predicted) * (y[i] - predicted);
        ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
    }
    fit.r2 = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

void run_bench(const BenchOpts& opts) {
    const auto net = tic::load_network_csv(opts.network, opts.nodes, opts.intervals);
    const tic::Window window = window_or_full(net, opts.window);
    std::vector<std::uint64_t> sizes;
    const std::string size_text = !opts.sizes.empty()       ? opts.sizes
                                  : opts.mode == "nets"     ? "20000,40000,80000"
                                                            : "";
    if (size_text.empty() && opts.mode == "intervals") {
        for (IntervalIndex t = window.first; t <= window.last; ++t) {
            sizes.push_back(static_cast<std::uint64_t>(t - window.first + 1));
        }
    } else {
        for (const std::string& item : split_csv(size_text)) {
            try {
                sizes.push_back(std::stoull(item));
            } catch (const std::exception&) {
                throw tic::InvalidArgument("bad size '" + item + "'");
            }
        }
    }
    if (sizes.size() < 2) throw tic::InvalidArgument("need at least two sizes to fit a line");

    std::vector<double> xs, ys;
    json points = json::array();
    for (const std::uint64_t size : sizes) {
        tic::Window bench_window = window;
        std::size_t n_nets = opts.n_nets;
        if (opts.mode == "nets") {
            n_nets = static_cast<std::size_t>(size);
        } else if (opts.mode == "intervals") {
            const IntervalIndex last =
                static_cast<IntervalIndex>(window.first + static_cast<IntervalIndex>(size) - 1);
            if (last > window.last) {
                throw tic::InvalidArgument("interval size exceeds the window");
            }
            bench_window = tic::Window{window.first, last};
        } else {
            throw tic::InvalidArgument("unknown bench mode '" + opts.mode + "'");
        }
        const auto start = std::chrono::steady_clock::now();
        const auto h = tic::build_hypergraph(net, bench_window, n_nets, opts.seed, opts.workers);
        const auto stop = std::chrono::steady_clock::now();
        const double seconds = std::chrono::duration<double>(stop - start).count();
        xs.push_back(static_cast<double>(size));
        ys.push_back(seconds);
        json point;
        point["size"] = size;
        point["n_nets"] = n_nets;
        point["window"] = json::array({bench_window.first, bench_window.last});
        point["seconds"] = seconds;
        point["total_pins"] = [&h] {
            std::size_t total = 0;
            for (std::size_t k = 0; k < h.n_nets(); ++k) total += h.pins(k).size();
            return total;
        }();
        points.push_back(std::move(point));
    }
    const LinearFit fit = fit_line(xs, ys);

    json report;
    report["command"] = "bench";
    report["mode"] = opts.mode;
    report["network"] = base_name(opts.network);
    report["seed"] = opts.seed;
    report["points"] = std::move(points);
    report["fit"] = json{{"slope", fit.slope}, {"intercept", fit.intercept}, {"r2", fit.r2}};
    emit_report(opts.out, report);
}

void register_bench(CLI::App& app) {
    auto opts = std::make_shared<BenchOpts>();
    CLI::App* sub = app.add_subcommand(
        "bench", "Time hypergraph sampling against net count or window length");
    sub->add_option("--network", opts->network, "network CSV (u,v,t,p)")->required();
    sub->add_option("--window", opts->window, "window i:j (default full)");
    sub->add_option("--nodes", opts->nodes, "node count (0 = infer)");
    sub->add_option("--intervals", opts->intervals, "interval count (0 = infer)");
    sub->add_option("--mode", opts->mode, "nets | intervals");
    sub->add_option("--sizes", opts->sizes, "comma list of sizes to measure");
    sub->add_option("--n-nets", opts->n_nets, "net count for the intervals mode");
    sub->add_option("--seed", opts->seed, "rng master seed")->required();
    sub->add_option("--workers", opts->workers, "worker threads (0 = cores)");
    sub->add_option("--out", opts->out, "report JSON path (default stdout)");
    sub->callback([opts]() { run_bench(*opts); });
}

void emit_error(const std::string& type, int code, const std::string& message) {
    json err;
    err["error"] = json{{"type", type}, {"exit", code}, {"message", message}};
    std::cerr << err.dump() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Temporal independent-cascade toolkit: build, sample, solve, evaluate"};
    app.require_subcommand(1);
    register_build(app);
    register_assign(app);
    register_sample(app);
    register_solve(app);
    register_evaluate(app);
    register_intervene(app);
    register_trace(app);
    register_bench(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_error("usage", 2, e.what());
        return 2;
    } catch (const tic::InvalidArgument& e) {
        emit_error("usage", 2, e.what());
        return 2;
    } catch (const tic::DataError& e) {
        emit_error("data", 3, e.what());
        return 3;
    } catch (const tic::BoundExceeded& e) {
        emit_error("bound", 4, e.what());
        return 4;
    } catch (const std::exception& e) {
        emit_error("internal", 1, e.what());
        return 1;
    }
    return 0;
}
