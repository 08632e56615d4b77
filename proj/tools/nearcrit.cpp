#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "nearcrit/decompose.hpp"
#include "nearcrit/graph_io.hpp"
#include "nearcrit/isoperimetry.hpp"
#include "nearcrit/model.hpp"
#include "nearcrit/sweep.hpp"
#include "nearcrit/walk.hpp"

using json = nlohmann::ordered_json;
using namespace nearcrit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPrecondition = 2;
constexpr int kExitResourceCap = 3;

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_json(const std::string& path, const json& doc) {
    write_text(path, doc.dump(2) + "\n");
}

json manifest_base(std::uint64_t seed) {
    json m;
    m["build"] = build_tag();
    m["seed"] = seed;
    return m;
}

/// Largest component, relabelled; identity when already connected.
SubgraphExtract largest_component(const MultiGraph& g) {
    const auto parts = components(g);
    if (parts.empty()) throw std::invalid_argument("empty graph");
    return extract_subgraph(g, VertexSet::checked(parts.front(), g.vertex_count()));
}

int cmd_generate(const std::string& model, std::uint64_t n, double epsilon, std::uint64_t seed,
                 const std::string& out, bool subcritical) {
    RngStream stream(seed, 0);
    json side = manifest_base(seed);
    side["model"] = model;
    side["n"] = n;
    side["epsilon"] = epsilon;
    side["regime"] = subcritical ? "subcritical" : "supercritical";
    side["lambda"] = epsilon * epsilon * epsilon * static_cast<double>(n);
    if (model == "c1") {
        if (subcritical) throw std::invalid_argument("c1 model is supercritical only");
        const ModelParams params = ModelParams::supercritical(n, epsilon);
        DegreeProfile profile;
        const GiantDecomposition d = build_c1tilde(stream, params, &profile);
        write_edge_list_file(out, d.full);
        side["mu"] = params.mu;
        side["kernel_size"] = d.kernel.vertex_count();
        side["kernel_edges"] = d.kernel.edge_count();
        side["core_size"] = d.core.vertex_count();
        side["full_size"] = d.full.vertex_count();
        side["loop_count"] = d.loop_count();
        side["parity_rejections"] = profile.parity_rejections;
        side["rate_rejections"] = profile.rate_rejections;
    } else if (model == "gnp") {
        const double p = (subcritical ? 1.0 - epsilon : 1.0 + epsilon) / static_cast<double>(n);
        const MultiGraph g = sample_gnp(stream, n, p);
        write_edge_list_file(out, g);
        side["p"] = p;
        side["edges"] = g.edge_count();
        if (!subcritical) {
            const SubgraphExtract giant = largest_component(g);
            const GiantDecomposition d = decompose_extracted_giant(giant.graph);
            const ModelParams params = ModelParams::supercritical(n, epsilon);
            side["mu"] = params.mu;
            side["kernel_size"] = d.kernel.vertex_count();
            side["kernel_edges"] = d.kernel.edge_count();
            side["core_size"] = d.core.vertex_count();
            side["full_size"] = d.full.vertex_count();
            side["loop_count"] = d.loop_count();
            side["parity_rejections"] = 0;
        }
    } else {
        throw std::invalid_argument("unknown model: " + model);
    }
    side["streams"] = json::array({0});
    write_json(out + ".json", side);
    return kExitOk;
}

int cmd_decompose(const std::string& in, const std::string& out) {
    const MultiGraph g = read_edge_list_file(in);
    const SubgraphExtract giant = largest_component(g);
    const GiantDecomposition d = decompose_extracted_giant(giant.graph);
    json doc;
    doc["build"] = build_tag();
    doc["input_vertices"] = g.vertex_count();
    doc["giant_size"] = giant.graph.vertex_count();
    doc["core_size"] = d.core.vertex_count();
    doc["kernel_size"] = d.kernel.vertex_count();
    doc["kernel_edges"] = d.kernel.edge_count();
    doc["longest_2path"] = longest_2path(d);
    doc["tree_count"] = d.trivial ? 1 : d.tree_of_core_vertex.size();
    doc["max_tree"] = d.max_tree_size();
    doc["disjoint_cycles"] = d.disjoint_cycles.size();
    doc["trivial"] = d.trivial;
    write_json(out, doc);
    return kExitOk;
}

int cmd_mix(const std::string& in, double delta, const std::string& strategy, std::uint64_t seed,
            const std::string& out) {
    const MultiGraph g = read_edge_list_file(in);
    const SubgraphExtract giant = largest_component(g);
    WorstStartHints hints;
    const WorstStartStrategy strat = strategy == "exhaustive" ? WorstStartStrategy::exhaustive
                                                              : WorstStartStrategy::heuristic;
    if (strat == WorstStartStrategy::heuristic)
        hints = worst_start_hints(decompose_extracted_giant(giant.graph));
    const WorstStartResult r = tmix_worst(giant.graph, delta, strat, &hints);
    json doc = manifest_base(seed);
    doc["giant_size"] = giant.graph.vertex_count();
    doc["delta"] = delta;
    doc["strategy"] = strategy;
    doc["tmix"] = r.tmix;
    doc["cesaro"] = r.cesaro;
    doc["argmax_vertex"] = giant.to_parent[r.argmax];
    doc["iterations"] = r.iterations;
    write_json(out, doc);
    return kExitOk;
}

int cmd_profile(const std::string& in, const std::string& mode, std::uint64_t seed,
                const std::string& out) {
    const MultiGraph g = read_edge_list_file(in);
    const SubgraphExtract giant = largest_component(g);
    RngStream stream(seed, 0);
    const ProfileMode m = mode == "exact" ? ProfileMode::exact : ProfileMode::sampled;
    const ConductanceProfile profile = conductance_profile(giant.graph, m, &stream);
    json doc = manifest_base(seed);
    doc["mode"] = mode;
    doc["certified"] = profile.certified;
    doc["pi_min"] = profile.pi_min;
    json buckets = json::array();
    for (std::size_t j = 1; j <= profile.phi.size(); ++j) {
        json b;
        b["p"] = std::ldexp(1.0, -static_cast<int>(j));
        b["phi"] = profile.phi[j - 1];
        buckets.push_back(b);
    }
    doc["buckets"] = buckets;
    doc["fr_upper_bound"] = fr_upper_bound(profile);
    write_json(out, doc);
    return kExitOk;
}

int cmd_sweep(const std::vector<std::uint64_t>& n_list, const std::vector<double>& eps_list,
              int replicates, const std::string& model, bool no_mixing, double delta,
              std::uint64_t seed, int threads, const std::string& out,
              const std::string& format) {
    SweepConfig config;
    config.delta = delta;
    config.measure_mixing = !no_mixing;
    for (std::uint64_t n : n_list)
        for (double eps : eps_list) config.grid.push_back({n, eps, replicates, model});
    const auto records = run_sweep(config, seed, threads);
    double total_ms = 0.0;
    for (const auto& r : records) {
        total_ms += r.runtime_ms;
        if (!r.error.empty())
            std::cerr << "replicate n=" << r.n << " eps=" << r.epsilon << " rep=" << r.replicate
                      << " failed: " << r.error << "\n";
    }
    std::cerr << "sweep: " << records.size() << " records, " << total_ms << " ms total\n";
    if (format == "json") {
        json doc = manifest_base(seed);
        doc["schema"] = json::parse(sweep_schema_json());
        json rows = json::array();
        for (const auto& r : records) {
            json row;
            row["n"] = r.n;
            row["epsilon"] = r.epsilon;
            row["lambda"] = r.lambda;
            row["seed"] = r.seed;
            row["stream"] = r.stream;
            row["model"] = r.model;
            row["replicate"] = r.replicate;
            row["giant_size"] = r.giant_size;
            row["core_size"] = r.core_size;
            row["kernel_size"] = r.kernel_size;
            row["kernel_edges"] = r.kernel_edges;
            row["longest_2path"] = r.longest_2path;
            row["max_tree_size"] = r.max_tree_size;
            row["tmix_heuristic"] = r.tmix_heuristic;
            row["cesaro_heuristic"] = r.cesaro_heuristic;
            rows.push_back(row);
        }
        doc["records"] = rows;
        write_json(out, doc);
    } else {
        write_text(out, sweep_csv(records));
        write_json(out + ".manifest.json", [&] {
            json m = manifest_base(seed);
            m["schema"] = json::parse(sweep_schema_json());
            m["records"] = records.size();
            json streams = json::array();
            for (const auto& r : records) streams.push_back(r.stream);
            m["streams"] = streams;
            return m;
        }());
    }
    return kExitOk;
}

int cmd_explore(std::uint64_t n, double epsilon, int replicates, std::uint64_t seed, int threads,
                const std::string& out) {
    const SubcriticalReport report = subcritical_survey(n, epsilon, replicates, seed, threads);
    json doc = manifest_base(seed);
    doc["n"] = n;
    doc["epsilon"] = epsilon;
    doc["replicates"] = replicates;
    doc["r"] = report.r;
    doc["s"] = report.s;
    json streams = json::array();
    for (int rep = 0; rep < replicates; ++rep) {
        streams.push_back(0x300000ull | static_cast<std::uint64_t>(rep));
        streams.push_back(0x400000ull | static_cast<std::uint64_t>(rep));
    }
    doc["streams"] = streams;
    doc["component_count"] = report.component_count;
    doc["max_component"] = report.max_component;
    doc["max_diameter"] = report.max_diameter;
    doc["b_event_trees"] = report.b_event_trees;
    doc["explored_trees"] = report.explored_trees;
    write_json(out, doc);
    return kExitOk;
}

int cmd_compare(std::uint64_t n, double epsilon, int replicates, std::uint64_t seed, int threads,
                const std::string& out) {
    const ContiguityTable table = contiguity_compare(n, epsilon, replicates, seed, threads);
    json doc = manifest_base(seed);
    doc["n"] = n;
    doc["epsilon"] = epsilon;
    doc["replicates"] = replicates;
    json streams = json::array();
    for (int rep = 0; rep < replicates; ++rep) {
        streams.push_back(0x100000ull | static_cast<std::uint64_t>(rep));
        streams.push_back(0x200000ull | static_cast<std::uint64_t>(rep));
    }
    doc["streams"] = streams;
    json stats = json::object();
    for (std::size_t k = 0; k < kContiguityStatistics.size(); ++k) {
        json entry;
        entry["gnp_mean"] = table.gnp[k].mean;
        entry["gnp_std"] = table.gnp[k].stddev;
        entry["c1_mean"] = table.c1[k].mean;
        entry["c1_std"] = table.c1[k].stddev;
        entry["ratio"] = table.ratio[k];
        stats[kContiguityStatistics[k]] = entry;
    }
    doc["statistics"] = stats;
    write_json(out, doc);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"near-critical random graph lab"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 1;
    int threads = 1;
    std::string out = "out";
    std::string format = "csv";
    app.add_option("--seed", seed, "master seed")->capture_default_str();
    app.add_option("--threads", threads, "worker threads")->capture_default_str();

    auto* gen = app.add_subcommand("generate", "generate a graph and JSON sidecar");
    std::string gen_model = "c1";
    std::uint64_t gen_n = 100000;
    double gen_eps = 0.1;
    bool gen_sub = false;
    gen->add_option("--model", gen_model, "gnp|c1")->capture_default_str();
    gen->add_option("--n", gen_n)->required();
    gen->add_option("--epsilon", gen_eps)->required();
    gen->add_flag("--subcritical", gen_sub, "use p=(1-eps)/n (gnp only)");
    gen->add_option("--out", out)->required();

    auto* dec = app.add_subcommand("decompose", "2-core/kernel/tree decomposition of the largest component");
    std::string in_path;
    dec->add_option("--in", in_path)->required();
    dec->add_option("--out", out)->required();

    auto* mix = app.add_subcommand("mix", "mixing times of the lazy walk on the largest component");
    double delta = 0.25;
    std::string strategy = "heuristic";
    mix->add_option("--in", in_path)->required();
    mix->add_option("--delta", delta)->capture_default_str();
    mix->add_option("--strategy", strategy, "exhaustive|heuristic")->capture_default_str();
    mix->add_option("--out", out)->required();

    auto* prof = app.add_subcommand("profile", "conductance profile and FR sum");
    std::string mode = "exact";
    prof->add_option("--in", in_path)->required();
    prof->add_option("--mode", mode, "exact|sampled")->capture_default_str();
    prof->add_option("--out", out)->required();

    auto* sweep = app.add_subcommand("sweep", "replicate sweep over an (n, epsilon) grid");
    std::vector<std::uint64_t> n_list;
    std::vector<double> eps_list;
    int replicates = 5;
    std::string model = "c1";
    bool no_mixing = false;
    sweep->add_option("--n-list", n_list)->required()->delimiter(',');
    sweep->add_option("--epsilon-list", eps_list)->required()->delimiter(',');
    sweep->add_option("--replicates", replicates)->capture_default_str();
    sweep->add_option("--model", model, "gnp|c1")->capture_default_str();
    sweep->add_flag("--no-mixing", no_mixing, "skip mixing-time measurement");
    sweep->add_option("--delta", delta)->capture_default_str();
    sweep->add_option("--format", format, "csv|json")->capture_default_str();
    sweep->add_option("--out", out)->required();

    auto* explore = app.add_subcommand("explore", "subcritical exploration survey");
    std::uint64_t exp_n = 1000000;
    double exp_eps = 0.05;
    explore->add_option("--n", exp_n)->required();
    explore->add_option("--epsilon", exp_eps)->required();
    explore->add_option("--replicates", replicates)->capture_default_str();
    explore->add_option("--out", out)->required();

    auto* compare = app.add_subcommand("compare", "contiguity sanity: gnp giant vs c1 statistics");
    compare->add_option("--n", exp_n)->required();
    compare->add_option("--epsilon", exp_eps)->required();
    compare->add_option("--replicates", replicates)->capture_default_str();
    compare->add_option("--out", out)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_generate(gen_model, gen_n, gen_eps, seed, out, gen_sub);
        if (dec->parsed()) return cmd_decompose(in_path, out);
        if (mix->parsed()) return cmd_mix(in_path, delta, strategy, seed, out);
        if (prof->parsed()) return cmd_profile(in_path, mode, seed, out);
        if (sweep->parsed())
            return cmd_sweep(n_list, eps_list, replicates, model, no_mixing, delta, seed, threads,
                             out, format);
        if (explore->parsed()) return cmd_explore(exp_n, exp_eps, replicates, seed, threads, out);
        if (compare->parsed()) return cmd_compare(exp_n, exp_eps, replicates, seed, threads, out);
    } catch (const ResourceCapError& ex) {
        std::cerr << "resource cap: " << ex.what() << "\n";
        return kExitResourceCap;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "precondition: " << ex.what() << "\n";
        return kExitPrecondition;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return kExitOk;
}
