#ifndef FLOODSIM_EXPERIMENT_HPP
#define FLOODSIM_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "floodsim/engine.hpp"
#include "floodsim/metrics.hpp"
#include "floodsim/report.hpp"
#include "floodsim/topology.hpp"

namespace floodsim {

inline constexpr std::string_view kVersion = "1.0.0";

struct ExperimentConfig {
    std::size_t nodes = 1000;
    std::size_t objects = 500;
    std::uint32_t deg_min = 2;
    std::uint32_t deg_max = 8;
    std::vector<std::uint32_t> replication_set{2, 8, 32, 128, 512};
    std::vector<std::uint32_t> ttl_set{1, 2, 3, 4, 5, 6, 7, 8};
    std::size_t generators = 10;
    std::uint64_t queries = 10000;
    std::uint64_t seed = 1;
    std::vector<NodeId> local_nodes;  // empty: three lowest-id generators
    bool origin_local_hit = false;
    double poisson_rate = 1.0;
    std::string run_id;  // empty: derived from the seed
};

// Independent random streams, each derived from the master seed. The
// workload stream is shared by every cell so that all cells replay the same
// queries (paired comparisons across TTL and replication).
enum class Stream : std::uint64_t { Topology = 1, Generators = 2, Placement = 3, Workload = 4 };

std::uint64_t stream_seed(std::uint64_t master, Stream stream, std::uint64_t index = 0);

/// Throws ConfigError describing the first infeasible field.
void validate(const ExperimentConfig& config);

std::string effective_run_id(const ExperimentConfig& config);

// Uniformly drawn distinct generator nodes.
std::vector<NodeId> choose_generators(std::size_t node_count, std::size_t count, std::uint64_t seed);

struct CellRun {
    std::uint32_t replication = 0;
    std::uint32_t ttl = 0;
    const ReplicaPlacement* placement = nullptr;
    std::span<const QueryOutcome> outcomes;
};

struct ExperimentResult {
    OverlayGraph graph;
    std::vector<NodeId> generators;
    std::vector<NodeId> local_nodes;
    std::vector<Arrival> arrivals;
    SweepTable sweep;
    std::vector<LocalRow> local_rows;
    std::map<CellKey, std::string> traces;  // per-cell trace CSV text, if requested
    std::map<std::uint32_t, std::uint64_t> replica_totals;  // replication -> sum of store sizes
};

struct RunOptions {
    bool keep_traces = false;
    // Called once per cell, in (replication, ttl) order, before outcomes are dropped.
    std::function<void(const CellRun&)> on_cell;
};

/// Builds the overlay once, re-draws placement per replication value and
/// replays the shared workload for every (replication, ttl) cell.
ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

std::string manifest_text(const ExperimentConfig& config, const ExperimentResult& result);

// Attenuation and trend notes for the sweep (informational, never fails).
std::string trend_report(const SweepTable& sweep);

/// Writes sweep.csv, local.csv, manifest.txt, report.txt, plot/*.dat and
/// optionally traces/*.csv under `dir`. Each file is written to a temporary
/// name and renamed into place only after every file has been produced.
void write_outputs(const std::filesystem::path& dir, const ExperimentConfig& config,
                   const ExperimentResult& result, bool write_plots = true);

void write_plot_files(const std::filesystem::path& dir, const SweepTable& sweep);

// Writes `files` (relative path -> contents) under `dir`, all-or-nothing.
void write_files_atomically(const std::filesystem::path& dir,
                            const std::map<std::string, std::string>& files);

struct VerifyConfig {
    std::size_t cases = 1000;
    std::size_t min_nodes = 20;
    std::size_t max_nodes = 200;
    std::uint32_t deg_min = 2;
    std::uint32_t deg_max = 8;
    std::vector<std::uint32_t> ttl_set;  // empty: uniform in [0, max_ttl]
    std::uint32_t max_ttl = 8;
    std::uint64_t seed = 1;
    bool origin_local_hit = false;
    Fault fault = Fault::None;
};

struct VerifyReport {
    std::size_t cases_run = 0;
    std::size_t mismatches = 0;
    std::size_t successes = 0;  // cases where the engine found the object
    std::string first_failure;  // description and delivery trace of the first mismatch

    bool passed() const { return mismatches == 0; }
};

/// Compares the engine against the absorbing-BFS oracle on randomized
/// instances and checks per-query invariants.
VerifyReport verify(const VerifyConfig& config);

}  // namespace floodsim

#endif  // FLOODSIM_EXPERIMENT_HPP
