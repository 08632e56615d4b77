#include "nearcrit/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "nearcrit/decompose.hpp"
#include "nearcrit/walk.hpp"

#ifndef NEARCRIT_BUILD_TAG
#define NEARCRIT_BUILD_TAG "unknown"
#endif

namespace nearcrit {

std::string build_tag() { return NEARCRIT_BUILD_TAG; }

namespace {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Deterministic work pool: tasks indexed 0..count-1, results slotted by
/// index, worker count irrelevant to the output.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const int workers = std::min<int>(threads, static_cast<int>(count));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

GiantStats giant_stats(const GiantDecomposition& d) {
    GiantStats s;
    s.giant_size = d.full.vertex_count();
    s.core_size = d.core.vertex_count();
    s.kernel_size = d.kernel.vertex_count();
    s.kernel_edges = d.kernel.edge_count();
    s.longest_2path = d.longest_path_edges();
    s.max_tree_size = d.max_tree_size();
    return s;
}

GiantDecomposition gnp_giant_decomposition(RngStream& stream, const ModelParams& params) {
    if (params.regime != Regime::supercritical)
        throw std::invalid_argument("gnp_giant_decomposition: supercritical params required");
    const double p = (1.0 + params.epsilon) / static_cast<double>(params.n);
    const MultiGraph g = sample_gnp(stream, params.n, p);
    const auto parts = components(g);
    const VertexSet giant = VertexSet::checked(parts.front(), g.vertex_count());
    const SubgraphExtract extracted = extract_subgraph(g, giant);
    return decompose_extracted_giant(extracted.graph);
}

namespace {

SweepRecord run_replicate(const SweepPoint& point, const SweepConfig& config,
                          std::uint64_t master_seed, std::uint64_t stream_index, int replicate) {
    SweepRecord rec;
    rec.n = point.n;
    rec.epsilon = point.epsilon;
    rec.seed = master_seed;
    rec.stream = stream_index;
    rec.model = point.model;
    rec.replicate = replicate;
    const auto started = std::chrono::steady_clock::now();
    try {
        const ModelParams params = ModelParams::supercritical(point.n, point.epsilon);
        rec.lambda = params.lambda;
        RngStream stream(master_seed, stream_index);
        const GiantDecomposition d = point.model == "gnp" ? gnp_giant_decomposition(stream, params)
                                                          : build_c1tilde(stream, params);
        const GiantStats stats = giant_stats(d);
        rec.giant_size = stats.giant_size;
        rec.core_size = stats.core_size;
        rec.kernel_size = stats.kernel_size;
        rec.kernel_edges = stats.kernel_edges;
        rec.longest_2path = stats.longest_2path;
        rec.max_tree_size = stats.max_tree_size;
        if (config.measure_mixing) {
            const WorstStartHints hints = worst_start_hints(d);
            const WorstStartResult mix =
                tmix_worst(d.full, config.delta, WorstStartStrategy::heuristic, &hints);
            rec.tmix_heuristic = static_cast<std::int64_t>(mix.tmix);
            rec.cesaro_heuristic = static_cast<std::int64_t>(mix.cesaro);
        }
    } catch (const std::exception& ex) {
        rec.error = ex.what();
    }
    rec.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();
    return rec;
}

}  // namespace

std::vector<SweepRecord> run_sweep(const SweepConfig& config, std::uint64_t master_seed,
                                   int threads) {
    struct Task {
        std::size_t grid_index;
        int replicate;
        std::uint64_t stream_index;
    };
    std::vector<Task> tasks;
    for (std::size_t gi = 0; gi < config.grid.size(); ++gi) {
        const SweepPoint& point = config.grid[gi];
        if (!(point.epsilon > 0.0) ||
            point.epsilon * point.epsilon * point.epsilon * static_cast<double>(point.n) < 8.0)
            throw std::invalid_argument("run_sweep: grid point must satisfy eps^3 n >= 8");
        if (point.model != "gnp" && point.model != "c1")
            throw std::invalid_argument("run_sweep: model must be gnp or c1");
        for (int r = 0; r < point.replicates; ++r)
            tasks.push_back({gi, r, (static_cast<std::uint64_t>(gi) << 20) | static_cast<std::uint64_t>(r)});
    }
    std::vector<SweepRecord> records(tasks.size());
    parallel_for(tasks.size(), threads, [&](std::size_t i) {
        const Task& t = tasks[i];
        records[i] = run_replicate(config.grid[t.grid_index], config, master_seed, t.stream_index,
                                   t.replicate);
    });
    return records;
}

std::string sweep_csv(std::span<const SweepRecord> records) {
    std::string out = "# build: " + build_tag() + "\n";
    out +=
        "n,epsilon,lambda,seed,stream,model,replicate,giant_size,core_size,kernel_size,"
        "kernel_edges,longest_2path,max_tree_size,tmix_heuristic,cesaro_heuristic\n";
    for (const SweepRecord& r : records) {
        out += std::to_string(r.n) + ',' + format_double(r.epsilon) + ',' +
               format_double(r.lambda) + ',' + std::to_string(r.seed) + ',' +
               std::to_string(r.stream) + ',' + r.model + ',' + std::to_string(r.replicate) + ',' +
               std::to_string(r.giant_size) + ',' + std::to_string(r.core_size) + ',' +
               std::to_string(r.kernel_size) + ',' + std::to_string(r.kernel_edges) + ',' +
               std::to_string(r.longest_2path) + ',' + std::to_string(r.max_tree_size) + ',' +
               std::to_string(r.tmix_heuristic) + ',' + std::to_string(r.cesaro_heuristic) + '\n';
    }
    return out;
}

std::string sweep_schema_json() {
    return R"({
  "build": ")" + build_tag() +
           R"(",
  "columns": [
    {"name": "n", "type": "integer"},
    {"name": "epsilon", "type": "real"},
    {"name": "lambda", "type": "real", "note": "epsilon^3 * n, exact"},
    {"name": "seed", "type": "integer"},
    {"name": "stream", "type": "integer"},
    {"name": "model", "type": "string", "enum": ["gnp", "c1"]},
    {"name": "replicate", "type": "integer"},
    {"name": "giant_size", "type": "integer"},
    {"name": "core_size", "type": "integer"},
    {"name": "kernel_size", "type": "integer"},
    {"name": "kernel_edges", "type": "integer"},
    {"name": "longest_2path", "type": "integer"},
    {"name": "max_tree_size", "type": "integer"},
    {"name": "tmix_heuristic", "type": "integer", "note": "-1 when unmeasured"},
    {"name": "cesaro_heuristic", "type": "integer", "note": "-1 when unmeasured"}
  ],
  "note": "runtime_ms is reported separately; wall-clock timing is excluded from primary outputs to keep them byte-stable"
}
)";
}

LineFit fit_loglog(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3) throw std::invalid_argument("fit_loglog: need at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<std::pair<double, double>> logs;
    logs.reserve(points.size());
    for (const auto& [x, y] : points) {
        if (!(x > 0.0) || !(y > 0.0))
            throw std::invalid_argument("fit_loglog: points must be positive");
        logs.emplace_back(std::log(x), std::log(y));
    }
    const double m = static_cast<double>(logs.size());
    for (const auto& [lx, ly] : logs) {
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_loglog: degenerate x values");
    LineFit fit;
    fit.slope = (m * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / m;
    double ss_res = 0, ss_tot = 0;
    const double mean_y = sy / m;
    for (const auto& [lx, ly] : logs) {
        const double pred = fit.intercept + fit.slope * lx;
        ss_res += (ly - pred) * (ly - pred);
        ss_tot += (ly - mean_y) * (ly - mean_y);
    }
    fit.r2 = ss_tot == 0.0 ? (ss_res == 0.0 ? 1.0 : 0.0) : 1.0 - ss_res / ss_tot;
    return fit;
}

ContiguityTable contiguity_compare(std::uint64_t n, double epsilon, int replicates,
                                   std::uint64_t master_seed, int threads) {
    const ModelParams params = ModelParams::supercritical(n, epsilon);  // validates the regime
    ContiguityTable table;
    table.n = n;
    table.epsilon = epsilon;
    table.replicates = replicates;

    std::vector<GiantStats> gnp_stats(replicates), c1_stats(replicates);
    parallel_for(static_cast<std::size_t>(replicates) * 2, threads, [&](std::size_t task) {
        const bool is_gnp = task < static_cast<std::size_t>(replicates);
        const int rep = static_cast<int>(is_gnp ? task : task - replicates);
        RngStream stream(master_seed,
                         (is_gnp ? 0x100000ull : 0x200000ull) | static_cast<std::uint64_t>(rep));
        if (is_gnp)
            gnp_stats[rep] = giant_stats(gnp_giant_decomposition(stream, params));
        else
            c1_stats[rep] = giant_stats(build_c1tilde(stream, params));
    });

    auto summarize = [&](const std::vector<GiantStats>& stats, int which) {
        StatSummary s;
        double sum = 0, sum_sq = 0;
        for (const GiantStats& g : stats) {
            const std::uint64_t vals[5] = {g.giant_size, g.core_size, g.kernel_size,
                                           g.kernel_edges, g.longest_2path};
            const double v = static_cast<double>(vals[which]);
            sum += v;
            sum_sq += v * v;
        }
        const double m = static_cast<double>(stats.size());
        s.mean = sum / m;
        const double var = std::max(0.0, sum_sq / m - s.mean * s.mean);
        s.stddev = std::sqrt(var * (m > 1 ? m / (m - 1) : 1.0));
        return s;
    };
    for (int k = 0; k < 5; ++k) {
        table.gnp[k] = summarize(gnp_stats, k);
        table.c1[k] = summarize(c1_stats, k);
        table.ratio[k] = table.c1[k].mean == 0.0 ? 0.0 : table.gnp[k].mean / table.c1[k].mean;
    }
    return table;
}

SubcriticalReport subcritical_survey(std::uint64_t n, double epsilon, int replicates,
                                     std::uint64_t master_seed, int threads) {
    const ModelParams params = ModelParams::subcritical(n, epsilon);
    SubcriticalReport report;
    report.n = n;
    report.epsilon = epsilon;
    report.replicates = replicates;
    const double log_lambda = std::log(params.lambda);
    report.r = static_cast<std::uint32_t>(std::ceil(log_lambda / (20.0 * epsilon)));
    report.s = static_cast<std::uint64_t>(std::ceil(log_lambda / (64.0 * epsilon * epsilon)));
    report.component_count.resize(replicates);
    report.max_component.resize(replicates);
    report.max_diameter.resize(replicates);
    report.b_event_trees.resize(replicates);
    report.explored_trees.resize(replicates);

    const std::uint64_t budget =
        static_cast<std::uint64_t>(epsilon * static_cast<double>(n));
    parallel_for(static_cast<std::size_t>(replicates), threads, [&](std::size_t rep) {
        RngStream explore_stream(master_seed, 0x300000ull | rep);
        const ExplorationTrees trees =
            explore_component_trees(explore_stream, n, epsilon, budget);
        report.component_count[rep] = trees.trees.size();
        report.explored_trees[rep] = trees.trees.size();
        std::uint64_t b_hits = 0;
        for (const RootedTree& t : trees.trees)
            if (t.size() >= report.s &&
                detect_tree_event(t, report.r, report.s, TreeEvent::B))
                ++b_hits;
        report.b_event_trees[rep] = b_hits;

        RngStream graph_stream(master_seed, 0x400000ull | rep);
        const MultiGraph g =
            sample_gnp(graph_stream, n, (1.0 - epsilon) / static_cast<double>(n));
        const auto parts = components(g);
        report.max_component[rep] = parts.front().size();
        // exact diameters: double sweep on tree components, all-sources BFS
        // on the rare components with excess; skip parts too small to matter
        std::uint64_t max_diam = 0;
        for (const auto& part : parts) {
            if (part.size() <= max_diam) break;  // parts are size-sorted
            const VertexSet set = VertexSet::checked(part, g.vertex_count());
            const SubgraphExtract sub = extract_subgraph(g, set);
            const std::uint64_t edges = sub.graph.edge_count();
            if (edges + 1 == part.size()) {
                // tree: double sweep is exact
                auto far = [&](VertexId src) {
                    const auto dist = bfs_distances(sub.graph, src);
                    VertexId best = src;
                    for (VertexId v = 0; v < sub.graph.vertex_count(); ++v)
                        if (dist[v] > dist[best] && dist[v] != kUnreachable) best = v;
                    return std::make_pair(best, dist[best]);
                };
                const auto [a, da] = far(0);
                const auto [b, db] = far(a);
                (void)b;
                (void)da;
                max_diam = std::max<std::uint64_t>(max_diam, db);
            } else {
                for (VertexId src = 0; src < sub.graph.vertex_count(); ++src) {
                    const auto dist = bfs_distances(sub.graph, src);
                    for (std::uint32_t dv : dist)
                        if (dv != kUnreachable)
                            max_diam = std::max<std::uint64_t>(max_diam, dv);
                }
            }
        }
        report.max_diameter[rep] = max_diam;
    });
    return report;
}

}  // namespace nearcrit
