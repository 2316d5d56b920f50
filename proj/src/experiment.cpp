#include "floodsim/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "floodsim/oracle.hpp"
#include "floodsim/rng.hpp"
#include "floodsim/topology_io.hpp"

namespace floodsim {

namespace {

std::string join(const std::vector<std::uint32_t>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(values[i]);
    }
    return out;
}

template <class T>
std::string join_ids(const std::vector<T>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(values[i]);
    }
    return out;
}

std::string cell_trace_name(std::uint32_t rp, std::uint32_t ttl) {
    return "traces/trace_rp" + std::to_string(rp) + "_ttl" + std::to_string(ttl) + ".csv";
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t master, Stream stream, std::uint64_t index) {
    return derive_seed(master, static_cast<std::uint64_t>(stream), index);
}

void validate(const ExperimentConfig& c) {
    if (c.nodes < 2) throw ConfigError("nodes must be at least 2");
    if (c.objects < 1) throw ConfigError("objects must be at least 1");
    if (c.deg_min < 1) throw ConfigError("deg-min must be at least 1");
    if (c.deg_max < c.deg_min) throw ConfigError("deg-max must not be below deg-min");
    if (c.deg_max >= c.nodes) {
        throw ConfigError("deg-max " + std::to_string(c.deg_max) + " infeasible for " +
                          std::to_string(c.nodes) + " nodes");
    }
    if (c.replication_set.empty()) throw ConfigError("replication-set is empty");
    for (auto rp : c.replication_set) {
        if (rp < 1 || rp > c.nodes) {
            throw ConfigError("replication " + std::to_string(rp) + " outside [1, " +
                              std::to_string(c.nodes) + "]");
        }
    }
    if (c.ttl_set.empty()) throw ConfigError("ttl-set is empty");
    if (std::set(c.replication_set.begin(), c.replication_set.end()).size() != c.replication_set.size()) {
        throw ConfigError("replication-set has repeated values");
    }
    if (std::set(c.ttl_set.begin(), c.ttl_set.end()).size() != c.ttl_set.size()) {
        throw ConfigError("ttl-set has repeated values");
    }
    if (c.generators < 1 || c.generators > c.nodes) {
        throw ConfigError("generators must be in [1, " + std::to_string(c.nodes) + "]");
    }
    if (c.queries < 1) throw ConfigError("queries must be at least 1");
    if (!(c.poisson_rate > 0.0)) throw ConfigError("poisson-rate must be positive");
    if (c.run_id.find_first_of(",\n\r") != std::string::npos) {
        throw ConfigError("run-id must not contain commas or newlines");
    }
}

std::string effective_run_id(const ExperimentConfig& config) {
    return config.run_id.empty() ? "seed" + std::to_string(config.seed) : config.run_id;
}

std::vector<NodeId> choose_generators(std::size_t node_count, std::size_t count, std::uint64_t seed) {
    if (count > node_count) throw ConfigError("more generators than nodes");
    Rng rng(seed);
    std::vector<NodeId> pool(node_count);
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < count; ++i) std::swap(pool[i], pool[i + rng.below(node_count - i)]);
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
    validate(config);
    ExperimentResult result;
    result.graph = generate_graph(config.nodes, {config.deg_min, config.deg_max},
                                  stream_seed(config.seed, Stream::Topology));
    result.generators = choose_generators(config.nodes, config.generators,
                                          stream_seed(config.seed, Stream::Generators));
    if (config.local_nodes.empty()) {
        result.local_nodes = default_local_nodes(result.generators);
    } else {
        for (NodeId v : config.local_nodes) {
            if (!std::binary_search(result.generators.begin(), result.generators.end(), v)) {
                throw ConfigError("local node " + std::to_string(v) + " is not a generator (generators: " +
                                  join_ids(result.generators) + ")");
            }
        }
        result.local_nodes = config.local_nodes;
    }
    result.arrivals = sample_arrivals(result.generators, config.poisson_rate, config.queries,
                                      config.objects, stream_seed(config.seed, Stream::Workload));

    std::vector<std::uint32_t> replications(config.replication_set);
    std::vector<std::uint32_t> ttls(config.ttl_set);
    std::sort(replications.begin(), replications.end());
    std::sort(ttls.begin(), ttls.end());

    const ProtocolOptions protocol{config.origin_local_hit, Fault::None};
    std::map<CellKey, MetricSet> cells;
    for (auto rp : replications) {
        const ReplicaPlacement placement =
            place_replicas(result.graph, config.objects, rp, stream_seed(config.seed, Stream::Placement, rp));
        result.replica_totals[rp] = placement.total_replicas();
        for (auto ttl : ttls) {
            auto outcomes = run_arrivals(result.graph, placement, result.arrivals, ttl, protocol);
            cells[{rp, ttl}] = aggregate(outcomes);
            for (const auto& local : aggregate_local(outcomes, result.local_nodes)) {
                result.local_rows.push_back({rp, ttl, local});
            }
            if (options.keep_traces) {
                std::ostringstream text;
                write_trace_csv(text, outcomes, result.arrivals);
                result.traces[{rp, ttl}] = std::move(text).str();
            }
            if (options.on_cell) options.on_cell({rp, ttl, &placement, outcomes});
        }
    }
    result.sweep = summarize_sweep(cells);
    return result;
}

std::string manifest_text(const ExperimentConfig& c, const ExperimentResult& r) {
    std::ostringstream out;
    out << "version=" << kVersion << '\n'
        << "run-id=" << effective_run_id(c) << '\n'
        << "seed=" << c.seed << '\n'
        << "nodes=" << c.nodes << '\n'
        << "objects=" << c.objects << '\n'
        << "deg-min=" << c.deg_min << '\n'
        << "deg-max=" << c.deg_max << '\n'
        << "replication-set=" << join(c.replication_set) << '\n'
        << "ttl-set=" << join(c.ttl_set) << '\n'
        << "generators=" << c.generators << '\n'
        << "queries=" << c.queries << '\n'
        << "local-nodes=" << join_ids(r.local_nodes) << '\n'
        << "origin-local-hit=" << (c.origin_local_hit ? "true" : "false") << '\n'
        << "poisson-rate=" << format_number(c.poisson_rate) << '\n'
        << "# derived\n"
        << "generator-nodes=" << join_ids(r.generators) << '\n'
        << "edges=" << r.graph.edge_count() << '\n'
        << "repair-edges=" << r.graph.repair_edges() << '\n';
    for (const auto& [rp, total] : r.replica_totals) {
        const Rational mean = expected_store_size(c.objects, rp, c.nodes);
        out << "replicas[" << rp << "]=" << total << " mean-store=" << mean.num << '/' << mean.den << '\n';
    }
    return std::move(out).str();
}

std::string trend_report(const SweepTable& sweep) {
    std::ostringstream out;
    const auto& rps = sweep.replications();
    for (auto ttl : sweep.ttls()) {
        out << "ttl=" << ttl << " hits_per_query:";
        for (auto rp : rps) out << ' ' << rp << '=' << format_number(sweep.at(rp, ttl).hits_per_query);
        out << '\n';
        for (std::size_t i = 1; i < rps.size(); ++i) {
            const double lower = sweep.at(rps[i - 1], ttl).hits_per_query;
            const double upper = sweep.at(rps[i], ttl).hits_per_query;
            if (upper < lower) {
                out << "  attenuation: hits_per_query drops from rp=" << rps[i - 1] << " ("
                    << format_number(lower) << ") to rp=" << rps[i] << " (" << format_number(upper)
                    << ")\n";
            }
        }
    }
    return std::move(out).str();
}

void write_files_atomically(const std::filesystem::path& dir,
                            const std::map<std::string, std::string>& files) {
    namespace fs = std::filesystem;
    std::vector<std::pair<fs::path, fs::path>> staged;
    try {
        for (const auto& [name, contents] : files) {
            const fs::path target = dir / name;
            fs::create_directories(target.parent_path());
            fs::path temp = target;
            temp += ".tmp";
            std::ofstream out(temp, std::ios::binary | std::ios::trunc);
            staged.emplace_back(temp, target);
            out << contents;
            out.close();
            if (!out) throw std::runtime_error("failed writing " + temp.string());
        }
    } catch (...) {
        std::error_code ignored;
        for (const auto& [temp, target] : staged) fs::remove(temp, ignored);
        throw;
    }
    for (const auto& [temp, target] : staged) fs::rename(temp, target);
}

void write_plot_files(const std::filesystem::path& dir, const SweepTable& sweep) {
    std::map<std::string, std::string> files;
    for (auto metric : kPlotMetrics) {
        std::ostringstream text;
        write_plot_data(text, sweep, metric);
        files[plot_file_name(metric)] = std::move(text).str();
    }
    write_files_atomically(dir, files);
}

void write_outputs(const std::filesystem::path& dir, const ExperimentConfig& config,
                   const ExperimentResult& result, bool write_plots) {
    const std::string run_id = effective_run_id(config);
    std::map<std::string, std::string> files;
    {
        std::ostringstream text;
        write_sweep_csv(text, result.sweep, run_id);
        files["sweep.csv"] = std::move(text).str();
    }
    {
        std::ostringstream text;
        write_local_csv(text, result.local_rows, run_id);
        files["local.csv"] = std::move(text).str();
    }
    files["manifest.txt"] = manifest_text(config, result);
    files["report.txt"] = trend_report(result.sweep);
    if (write_plots) {
        for (auto metric : kPlotMetrics) {
            std::ostringstream text;
            write_plot_data(text, result.sweep, metric);
            files["plot/" + plot_file_name(metric)] = std::move(text).str();
        }
    }
    for (const auto& [key, text] : result.traces) files[cell_trace_name(key.first, key.second)] = text;
    write_files_atomically(dir, files);
}

VerifyReport verify(const VerifyConfig& config) {
    if (config.min_nodes < 2 || config.max_nodes < config.min_nodes) {
        throw ConfigError("verify needs 2 <= min-nodes <= max-nodes");
    }
    if (config.deg_min < 1 || config.deg_max < config.deg_min) throw ConfigError("bad degree bounds");

    VerifyReport report;
    for (std::size_t i = 0; i < config.cases; ++i) {
        Rng rng(derive_seed(config.seed, i));
        const std::size_t n = rng.between(config.min_nodes, config.max_nodes);
        const auto dmax = static_cast<std::uint32_t>(std::min<std::size_t>(config.deg_max, n - 1));
        const DegreeSpec degrees{std::min(config.deg_min, dmax), dmax};
        const OverlayGraph graph = generate_graph(n, degrees, rng.next());
        const std::size_t objects = rng.between(1, 16);
        // Mostly sparse replication so floods travel; sometimes dense.
        const auto rp = static_cast<std::uint32_t>(
            rng.below(4) == 0 ? rng.between(1, n) : rng.between(1, std::max<std::size_t>(1, n / 10)));
        const ReplicaPlacement placement = place_replicas(graph, objects, rp, rng.next());
        const auto origin = static_cast<NodeId>(rng.below(n));
        const auto object = static_cast<ObjectId>(rng.below(objects));
        const auto ttl = static_cast<std::uint32_t>(
            config.ttl_set.empty() ? rng.between(0, config.max_ttl)
                                   : config.ttl_set[rng.below(config.ttl_set.size())]);

        FloodEngine engine(graph, placement, {config.origin_local_hit, config.fault});
        std::vector<TraceEvent> trace;
        const QueryOutcome got = engine.run_query(origin, object, ttl, i, &trace);
        const OracleOptions oracle_options{config.origin_local_hit};
        const OracleResult want = oracle_query(graph, placement, origin, object, ttl, oracle_options);
        const std::uint64_t want_forwarded =
            oracle_forwarded_count(graph, placement, origin, object, ttl, oracle_options);

        std::set<NodeId> processed{origin};
        for (const auto& e : trace) {
            if (e.disposition != Disposition::Duplicate) processed.insert(e.to);
        }
        std::uint64_t flood_bound = graph.degree(origin);
        for (NodeId v : processed) {
            if (v != origin) flood_bound += graph.degree(v) - 1;
        }

        std::vector<std::string> problems;
        if (got.success() != want.success) problems.emplace_back("success flag differs");
        if (got.hit_nodes() != want.hit_nodes) problems.emplace_back("hit nodes differ");
        if (got.first_hit_hops != want.min_hit_distance) problems.emplace_back("first-hit distance differs");
        if (got.forwarded_packets != want_forwarded) problems.emplace_back("forwarded count differs");
        if (std::vector<NodeId>(processed.begin(), processed.end()) != want.processed_nodes) {
            problems.emplace_back("processed node set differs");
        }
        if (got.rounds_elapsed > ttl) problems.emplace_back("rounds exceed ttl");
        if (got.first_hit_hops && *got.first_hit_hops > ttl) problems.emplace_back("first hit beyond ttl");
        if (got.forwarded_packets > flood_bound) problems.emplace_back("forwarded count above flood bound");
        if (ttl == 0 && got.forwarded_packets != 0) problems.emplace_back("packets sent with ttl 0");

        ++report.cases_run;
        if (got.success()) ++report.successes;
        if (problems.empty()) continue;
        ++report.mismatches;
        if (!report.first_failure.empty()) continue;

        std::ostringstream out;
        out << "case " << i << ": nodes=" << n << " objects=" << objects << " replication=" << rp
            << " origin=" << origin << " object=" << object << " ttl=" << ttl << '\n';
        for (const auto& p : problems) out << "  mismatch: " << p << '\n';
        out << "  engine: success=" << got.success() << " hits=" << join_ids(got.hit_nodes())
            << " first_hit=" << (got.first_hit_hops ? std::to_string(*got.first_hit_hops) : "-")
            << " forwarded=" << got.forwarded_packets << " rounds=" << got.rounds_elapsed << '\n';
        out << "  oracle: success=" << want.success << " hits=" << join_ids(want.hit_nodes)
            << " min_distance=" << (want.min_hit_distance ? std::to_string(*want.min_hit_distance) : "-")
            << " forwarded=" << want_forwarded << '\n';
        out << "  holders of object " << object << ": " << join_ids(std::vector<NodeId>(
                                                           placement.holders(object).begin(),
                                                           placement.holders(object).end()))
            << '\n';
        out << "  query trace (round from->to ttl disposition):\n";
        for (const auto& e : trace) {
            out << "    " << e.round << ' ' << e.from << "->" << e.to << ' ' << e.ttl << ' '
                << to_string(e.disposition) << '\n';
        }
        out << "  overlay:\n";
        std::ostringstream edges;
        write_edge_list(edges, graph);
        std::istringstream lines(edges.str());
        for (std::string line; std::getline(lines, line);) out << "    " << line << '\n';
        report.first_failure = std::move(out).str();
    }
    return report;
}

}  // namespace floodsim
