// Command-line front end: run the replication x TTL sweep, verify the engine
// against the oracle, re-emit plot data, export topologies.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "floodsim/experiment.hpp"
#include "floodsim/topology_io.hpp"

namespace {

using namespace floodsim;

void add_config_options(CLI::App& app, ExperimentConfig& c) {
    app.add_option("--nodes", c.nodes, "Overlay size")->capture_default_str();
    app.add_option("--objects", c.objects, "Distinct objects")->capture_default_str();
    app.add_option("--deg-min", c.deg_min, "Minimum target degree")->capture_default_str();
    app.add_option("--deg-max", c.deg_max, "Maximum target degree")->capture_default_str();
    app.add_option("--replication-set", c.replication_set, "Replication values, comma separated")
        ->delimiter(',')
        ->capture_default_str();
    app.add_option("--ttl-set", c.ttl_set, "Initial TTL values, comma separated")
        ->delimiter(',')
        ->capture_default_str();
    app.add_option("--generators", c.generators, "Query-generating nodes")->capture_default_str();
    app.add_option("--queries", c.queries, "Queries per cell")->capture_default_str();
    app.add_option("--seed", c.seed, "Master seed")->capture_default_str();
    app.add_option("--local-nodes", c.local_nodes,
                   "Generator nodes with local statistics (default: three lowest-id generators)")
        ->delimiter(',');
    app.add_flag("--origin-local-hit", c.origin_local_hit,
                 "Let the originator answer a query from its own store");
    app.add_option("--poisson-rate", c.poisson_rate, "Queries per time unit per generator")
        ->capture_default_str();
    app.add_option("--run-id", c.run_id, "Run label written to the CSV files (default: seed<N>)");
}

int cmd_run(const ExperimentConfig& config, const std::string& out_dir, bool trace, bool plots) {
    const auto start = std::chrono::steady_clock::now();
    RunOptions options;
    options.keep_traces = trace;
    const ExperimentResult result = run_experiment(config, options);
    write_outputs(out_dir, config, result, plots);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    std::cerr << "wrote " << result.sweep.rows().size() << " sweep cells to " << out_dir << " in "
              << format_number(std::round(elapsed.count() * 100) / 100) << " s\n";
    return 0;
}

int cmd_verify(const VerifyConfig& config) {
    const VerifyReport report = verify(config);
    std::cout << "cases=" << report.cases_run << " successes=" << report.successes
              << " mismatches=" << report.mismatches << '\n';
    if (report.passed()) {
        std::cout << "PASS engine matches oracle\n";
        return 0;
    }
    std::cout << "FAIL first mismatch:\n" << report.first_failure;
    return 1;
}

int cmd_plot_data(const std::string& sweep_path, const std::string& out_dir) {
    std::ifstream in(sweep_path);
    if (!in) throw std::runtime_error("cannot open " + sweep_path);
    write_plot_files(out_dir, read_sweep_csv(in));
    return 0;
}

struct TopologyArgs {
    std::size_t nodes = 1000;
    std::uint32_t deg_min = 2;
    std::uint32_t deg_max = 8;
    std::uint64_t seed = 1;
    std::size_t objects = 500;
    std::uint32_t replication = 0;
    std::string graph_out = "graph.txt";
    std::string placement_out;
};

int cmd_topology(const TopologyArgs& a) {
    const OverlayGraph graph =
        generate_graph(a.nodes, {a.deg_min, a.deg_max}, stream_seed(a.seed, Stream::Topology));
    std::map<std::string, std::string> files;
    std::ostringstream g;
    write_edge_list(g, graph);
    files[a.graph_out] = std::move(g).str();
    if (a.replication > 0) {
        const ReplicaPlacement placement = place_replicas(
            graph, a.objects, a.replication, stream_seed(a.seed, Stream::Placement, a.replication));
        std::ostringstream p;
        write_placement(p, placement);
        files[a.placement_out.empty() ? "placement_rp" + std::to_string(a.replication) + ".txt"
                                      : a.placement_out] = std::move(p).str();
    }
    write_files_atomically(".", files);
    std::cerr << "nodes=" << graph.node_count() << " edges=" << graph.edge_count()
              << " repair-edges=" << graph.repair_edges() << '\n';
    return 0;
}

struct Commands {
    ExperimentConfig run_config;
    std::string run_out = "results";
    bool run_trace = false;
    bool run_no_plot = false;

    VerifyConfig verify_config;
    std::string fault = "none";

    std::string sweep_path;
    std::string plot_out = "plot";

    TopologyArgs topo;
    std::string config_path;

    CLI::App* run = nullptr;
    CLI::App* verify = nullptr;
    CLI::App* plot = nullptr;
    CLI::App* topology = nullptr;
};

void build(CLI::App& app, Commands& c) {
    app.require_subcommand(1);

    c.run = app.add_subcommand("run", "Run the replication x TTL sweep");
    c.run->add_option("--config", c.config_path, "Flat key=value file; flags override its values");
    add_config_options(*c.run, c.run_config);
    c.run->add_option("--out-dir", c.run_out, "Output directory")->capture_default_str();
    c.run->add_flag("--trace", c.run_trace, "Write per-query trace CSV files");
    c.run->add_flag("--no-plot", c.run_no_plot, "Skip plot data files");

    auto& v = c.verify_config;
    c.verify = app.add_subcommand("verify", "Check the engine against the BFS oracle");
    c.verify->add_option("--config", c.config_path, "Flat key=value file; flags override its values");
    c.verify->add_option("--cases", v.cases)->capture_default_str();
    c.verify->add_option("--min-nodes", v.min_nodes)->capture_default_str();
    c.verify->add_option("--max-nodes", v.max_nodes)->capture_default_str();
    c.verify->add_option("--deg-min", v.deg_min)->capture_default_str();
    c.verify->add_option("--deg-max", v.deg_max)->capture_default_str();
    c.verify->add_option("--ttl-set", v.ttl_set, "Fixed TTL choices (default: 0..max-ttl)")->delimiter(',');
    c.verify->add_option("--max-ttl", v.max_ttl)->capture_default_str();
    c.verify->add_option("--seed", v.seed)->capture_default_str();
    c.verify->add_flag("--origin-local-hit", v.origin_local_hit);
    c.verify->add_option("--inject-fault", c.fault, "Negative control: none or frozen-ttl")
        ->check(CLI::IsMember({"none", "frozen-ttl"}))
        ->capture_default_str();

    c.plot = app.add_subcommand("plot-data", "Write per-metric plot tables from a sweep CSV");
    c.plot->add_option("--sweep", c.sweep_path, "sweep.csv produced by run")->required();
    c.plot->add_option("--out-dir", c.plot_out)->capture_default_str();

    auto& t = c.topo;
    c.topology = app.add_subcommand("topology", "Export the overlay and optionally a placement");
    c.topology->add_option("--nodes", t.nodes)->capture_default_str();
    c.topology->add_option("--deg-min", t.deg_min)->capture_default_str();
    c.topology->add_option("--deg-max", t.deg_max)->capture_default_str();
    c.topology->add_option("--seed", t.seed)->capture_default_str();
    c.topology->add_option("--objects", t.objects)->capture_default_str();
    c.topology->add_option("--replication", t.replication, "Also export a placement with this replication");
    c.topology->add_option("--graph-out", t.graph_out)->capture_default_str();
    c.topology->add_option("--placement-out", t.placement_out);
}

// Turns "key=value" lines into "--key=value" arguments. Blank lines and
// lines starting with '#' are skipped.
std::vector<std::string> config_file_args(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::vector<std::string> args;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected key=value");
        }
        auto key = line.substr(0, eq);
        auto value = line.substr(eq + 1);
        key.erase(key.find_last_not_of(" \t") + 1);
        value.erase(0, value.find_first_not_of(" \t"));
        args.push_back("--" + key + "=" + value);
    }
    return args;
}

// Locates "--config PATH" / "--config=PATH" after the subcommand name.
std::optional<std::pair<std::string, std::string>> find_config(int argc, char** argv) {
    if (argc < 2) return std::nullopt;
    for (int i = 2; i < argc; ++i) {
        std::string_view arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return std::pair{std::string(argv[1]), std::string(argv[i + 1])};
        if (arg.starts_with("--config=")) return std::pair{std::string(argv[1]), std::string(arg.substr(9))};
    }
    return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
    Commands commands;

    // Config file values are applied first; the real command line is parsed
    // afterwards into the same targets, so flags take precedence.
    if (auto config = find_config(argc, argv)) {
        CLI::App file_app{"config"};
        build(file_app, commands);
        try {
            auto args = config_file_args(config->second);
            args.insert(args.begin(), config->first);
            std::reverse(args.begin(), args.end());
            file_app.parse(args);
        } catch (const CLI::ParseError& e) {
            std::cerr << "error in " << config->second << ": " << e.what() << '\n';
            return 2;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return 2;
        }
    }

    CLI::App app{"Flooding search simulator for unstructured P2P overlays"};
    build(app, commands);
    CLI11_PARSE(app, argc, argv);

    try {
        if (*commands.run) {
            return cmd_run(commands.run_config, commands.run_out, commands.run_trace, !commands.run_no_plot);
        }
        if (*commands.verify) {
            commands.verify_config.fault = commands.fault == "frozen-ttl" ? Fault::FrozenTtl : Fault::None;
            return cmd_verify(commands.verify_config);
        }
        if (*commands.plot) return cmd_plot_data(commands.sweep_path, commands.plot_out);
        if (*commands.topology) return cmd_topology(commands.topo);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
