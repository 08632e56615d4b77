#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nearcrit/model.hpp"
#include "nearcrit/rng.hpp"

namespace nearcrit {

std::string build_tag();

struct SweepPoint {
    std::uint64_t n = 0;
    double epsilon = 0.0;
    int replicates = 1;
    std::string model = "c1";  // "gnp" | "c1"
};

struct SweepConfig {
    std::vector<SweepPoint> grid;
    double delta = 0.25;  // mixing-time parameter
    bool measure_mixing = true;
};

struct SweepRecord {
    std::uint64_t n = 0;
    double epsilon = 0.0;
    double lambda = 0.0;
    std::uint64_t seed = 0;    // master seed
    std::uint64_t stream = 0;  // derived stream index
    std::string model;
    int replicate = 0;
    std::uint64_t giant_size = 0;
    std::uint64_t core_size = 0;
    std::uint64_t kernel_size = 0;
    std::uint64_t kernel_edges = 0;
    std::uint64_t longest_2path = 0;
    std::uint64_t max_tree_size = 0;
    std::int64_t tmix_heuristic = -1;   // -1 when not measured or failed
    std::int64_t cesaro_heuristic = -1;
    double runtime_ms = 0.0;  // volatile; excluded from the primary CSV
    std::string error;        // per-replicate failure, recorded not fatal
};

/// One record per (grid point, replicate), deterministic given the master
/// seed; rows come back in grid order regardless of thread completion order.
std::vector<SweepRecord> run_sweep(const SweepConfig& config, std::uint64_t master_seed,
                                   int threads = 1);

/// Primary CSV: deterministic columns only (no runtime_ms).
std::string sweep_csv(std::span<const SweepRecord> records);
std::string sweep_schema_json();

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};
/// Least squares on (log x, log y); needs >= 3 positive points.
LineFit fit_loglog(std::span<const std::pair<double, double>> points);

inline constexpr std::array<const char*, 5> kContiguityStatistics = {
    "giant_size", "core_size", "kernel_size", "kernel_edges", "longest_2path"};

struct StatSummary {
    double mean = 0.0;
    double stddev = 0.0;
};

struct ContiguityTable {
    std::uint64_t n = 0;
    double epsilon = 0.0;
    int replicates = 0;
    std::array<StatSummary, 5> gnp;
    std::array<StatSummary, 5> c1;
    std::array<double, 5> ratio;  // gnp mean / c1 mean
};
/// Replicate means and stds of the five structure statistics under both
/// models, plus the ratios of means. Supercritical only.
ContiguityTable contiguity_compare(std::uint64_t n, double epsilon, int replicates,
                                   std::uint64_t master_seed, int threads = 1);

struct SubcriticalReport {
    std::uint64_t n = 0;
    double epsilon = 0.0;
    int replicates = 0;
    std::uint32_t r = 0;  // ceil((1/20) eps^-1 log lambda)
    std::uint64_t s = 0;  // ceil((1/64) eps^-2 log lambda)
    std::vector<std::uint64_t> component_count;   // per replicate, at budget eps*n
    std::vector<std::uint64_t> max_component;     // per replicate, full extraction
    std::vector<std::uint64_t> max_diameter;      // per replicate
    std::vector<std::uint64_t> b_event_trees;     // exploration trees satisfying B
    std::vector<std::uint64_t> explored_trees;    // completed exploration trees
};
SubcriticalReport subcritical_survey(std::uint64_t n, double epsilon, int replicates,
                                     std::uint64_t master_seed, int threads = 1);

/// Statistics of one supercritical replicate, shared by the sweep and the
/// contiguity comparison.
struct GiantStats {
    std::uint64_t giant_size = 0;
    std::uint64_t core_size = 0;
    std::uint64_t kernel_size = 0;
    std::uint64_t kernel_edges = 0;
    std::uint64_t longest_2path = 0;
    std::uint64_t max_tree_size = 0;
};
GiantStats giant_stats(const GiantDecomposition& d);

/// gnp pipeline: sample G(n,(1+eps)/n), extract the largest component,
/// decompose it.
GiantDecomposition gnp_giant_decomposition(RngStream& stream, const ModelParams& params);

}  // namespace nearcrit
