#include "nearcrit/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nearcrit {

std::uint64_t GiantDecomposition::max_tree_size() const {
    std::uint64_t best = 0;
    for (const auto& t : tree_of_core_vertex) best = std::max<std::uint64_t>(best, t.size());
    if (whole_graph_tree) best = std::max<std::uint64_t>(best, whole_graph_tree->size());
    return best;
}

std::uint64_t GiantDecomposition::longest_path_edges() const {
    std::uint64_t best = 0;
    for (const auto& path : path_of_kernel_edge)
        best = std::max<std::uint64_t>(best, path.size() - 1);
    return best;
}

std::uint64_t GiantDecomposition::loop_count() const {
    std::uint64_t loops = 0;
    for (const auto& [u, v] : kernel.edges())
        if (u == v) ++loops;
    return loops;
}

void GiantDecomposition::validate() const {
    auto fail = [](const char* msg) { throw std::logic_error(std::string("GiantDecomposition: ") + msg); };
    if (trivial) {
        if (core.vertex_count() != 0 || kernel.vertex_count() != 0) fail("trivial but core/kernel nonempty");
        if (!whole_graph_tree || whole_graph_tree->size() != full.vertex_count())
            fail("trivial decomposition must carry the whole-graph tree");
        return;
    }
    for (VertexId v = 0; v < kernel.vertex_count(); ++v)
        if (kernel.degree(v) < 3) fail("kernel vertex of degree < 3");
    if (path_of_kernel_edge.size() != kernel.edge_count()) fail("path map size mismatch");

    std::uint64_t internal = 0;
    std::vector<std::uint32_t> path_degree(core.vertex_count(), 0);
    for (EdgeId e = 0; e < kernel.edge_count(); ++e) {
        const auto& path = path_of_kernel_edge[e];
        if (path.size() < 2) fail("path with fewer than 2 vertices");
        const auto [a, b] = kernel.edge(e);
        const VertexId ca = core_vertex_of_kernel_vertex[a];
        const VertexId cb = core_vertex_of_kernel_vertex[b];
        const bool fwd = path.front() == ca && path.back() == cb;
        const bool rev = path.front() == cb && path.back() == ca;
        if (!fwd && !rev) fail("re-contracted path does not reproduce its kernel edge");
        internal += path.size() - 2;
        for (std::size_t i = 1; i + 1 < path.size(); ++i) {
            if (core.degree(path[i]) != 2) fail("2-path internal vertex of core-degree != 2");
            ++path_degree[path[i]];
        }
    }
    std::uint64_t cycle_vertices = 0;
    for (const auto& cyc : disjoint_cycles) cycle_vertices += cyc.size();
    if (core.vertex_count() != kernel.vertex_count() + internal + cycle_vertices)
        fail("core vertex count != kernel + path internals + cycle vertices");

    if (tree_of_core_vertex.size() != core.vertex_count()) fail("tree map size mismatch");
    std::uint64_t tree_extra = 0;
    for (const auto& t : tree_of_core_vertex) tree_extra += t.size() - 1;
    if (full.vertex_count() != core.vertex_count() + tree_extra)
        fail("full vertex count != core + attached tree vertices");
    if (full_vertex_of_core_vertex.size() != core.vertex_count()) fail("core->full map size");
    for (VertexId cv = 0; cv < core.vertex_count(); ++cv) {
        if (tree_full_ids[cv].size() != tree_of_core_vertex[cv].size()) fail("tree id map size");
        if (tree_full_ids[cv][0] != full_vertex_of_core_vertex[cv])
            fail("tree root not identified with its core vertex");
    }
}

MultiGraph sample_gnp(RngStream& stream, std::uint64_t n, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_gnp: p must be in [0,1]");
    if (n > kNoVertex) throw std::invalid_argument("sample_gnp: n too large");
    std::vector<std::pair<VertexId, VertexId>> edges;
    if (n < 2 || p == 0.0) return MultiGraph(static_cast<VertexId>(n), std::move(edges));
    if (p == 1.0) {
        edges.reserve(n * (n - 1) / 2);
        for (VertexId u = 0; u < n; ++u)
            for (VertexId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
        return MultiGraph(static_cast<VertexId>(n), std::move(edges));
    }
    edges.reserve(static_cast<std::size_t>(p * 0.5 * static_cast<double>(n) *
                                           static_cast<double>(n - 1) * 1.1) + 16);
    const double log_q = std::log1p(-p);
    // walk the lexicographic pair order (u,v), v > u, with geometric skips
    std::uint64_t u = 0, v = 0;  // v==u means "row u not entered yet"
    for (;;) {
        const double r = 1.0 - stream.uniform01();  // (0,1]
        double skip_d = std::floor(std::log(r) / log_q);
        std::uint64_t skip = skip_d >= 9.0e18 ? ~0ull : static_cast<std::uint64_t>(skip_d);
        // advance (u,v) by skip+1 positions
        std::uint64_t advance = skip + 1;
        for (;;) {
            const std::uint64_t row_left = (n - 1) - v;  // positions remaining in row u
            if (advance <= row_left) {
                v += advance;
                break;
            }
            advance -= row_left;
            ++u;
            if (u >= n - 1) return MultiGraph(static_cast<VertexId>(n), std::move(edges));
            v = u;
        }
        edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
    }
}

DegreeProfile sample_degree_profile(RngStream& stream, const ModelParams& params) {
    if (params.regime != Regime::supercritical)
        throw std::invalid_argument("sample_degree_profile: supercritical params required");
    const std::uint64_t n = params.n;
    const double mean = 1.0 + params.epsilon - params.mu;
    const double variance = 1.0 / (params.epsilon * static_cast<double>(n));

    DegreeProfile profile;
    profile.degrees.resize(n);
    for (;;) {
        double rate = stream.normal(mean, variance);
        while (rate <= 0.0) {
            ++profile.rate_rejections;
            rate = stream.normal(mean, variance);
        }
        profile.poisson_rate = rate;
        // parity failure is a fair coin, so a batch of 100 attempts per rate
        // practically never runs out
        for (int attempt = 0; attempt < 100; ++attempt) {
            std::uint64_t heavy_sum = 0;
            for (std::uint64_t u = 0; u < n; ++u) {
                const std::uint64_t d = stream.poisson(rate);
                profile.degrees[u] = static_cast<std::uint32_t>(d);
                if (d >= 3) heavy_sum += d;
            }
            if (heavy_sum % 2 == 0) {
                profile.counts.clear();
                profile.kernel_vertex_count = 0;
                for (std::uint64_t u = 0; u < n; ++u) {
                    const std::uint32_t d = profile.degrees[u];
                    if (d >= profile.counts.size()) profile.counts.resize(d + 1, 0);
                    ++profile.counts[d];
                    if (d >= 3) ++profile.kernel_vertex_count;
                }
                if (profile.counts.size() < 4) profile.counts.resize(4, 0);
                return profile;
            }
            ++profile.parity_rejections;
        }
    }
}

MultiGraph sample_kernel(RngStream& stream, const DegreeProfile& profile) {
    std::vector<VertexId> stubs;
    VertexId next_id = 0;
    for (std::uint64_t u = 0; u < profile.degrees.size(); ++u) {
        const std::uint32_t d = profile.degrees[u];
        if (d < 3) continue;
        for (std::uint32_t i = 0; i < d; ++i) stubs.push_back(next_id);
        ++next_id;
    }
    if (stubs.size() % 2 != 0)
        throw std::logic_error("sample_kernel: odd half-edge total despite parity conditioning");
    // Fisher-Yates shuffle, then pair consecutive stubs: a uniform matching
    for (std::size_t i = stubs.size(); i > 1; --i) {
        const std::size_t j = stream.uniform_below(i);
        std::swap(stubs[i - 1], stubs[j]);
    }
    std::vector<std::pair<VertexId, VertexId>> edges;
    edges.reserve(stubs.size() / 2);
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) edges.emplace_back(stubs[i], stubs[i + 1]);
    return MultiGraph(next_id, std::move(edges));
}

RootedTree sample_pgw_tree(RngStream& stream, double mu, std::uint64_t size_cap) {
    if (!(mu >= 0.0 && mu < 1.0)) throw std::invalid_argument("sample_pgw_tree: mu must be in [0,1)");
    std::vector<VertexId> parent{kNoVertex};
    std::size_t head = 0;
    while (head < parent.size()) {
        const VertexId v = static_cast<VertexId>(head++);
        const std::uint64_t offspring = stream.poisson(mu);
        for (std::uint64_t c = 0; c < offspring; ++c) {
            if (parent.size() >= size_cap)
                throw ResourceCapError("sample_pgw_tree: size cap exceeded");
            parent.push_back(v);
        }
    }
    return RootedTree::from_parents(std::move(parent));
}

GiantDecomposition build_c1tilde(RngStream& stream, const ModelParams& params,
                                 DegreeProfile* profile_out) {
    if (params.regime != Regime::supercritical)
        throw std::invalid_argument("build_c1tilde: supercritical params required");
    const DegreeProfile profile = sample_degree_profile(stream, params);
    MultiGraph kernel = sample_kernel(stream, profile);
    if (profile_out) *profile_out = profile;

    GiantDecomposition d;
    const VertexId kn = kernel.vertex_count();
    d.core_vertex_of_kernel_vertex.resize(kn);
    for (VertexId v = 0; v < kn; ++v) d.core_vertex_of_kernel_vertex[v] = v;

    // Step 2: replace each kernel edge by a fresh path of Geom(1-mu) edges
    VertexId next_core = kn;
    std::vector<std::pair<VertexId, VertexId>> core_edges;
    d.path_of_kernel_edge.resize(kernel.edge_count());
    for (EdgeId e = 0; e < kernel.edge_count(); ++e) {
        const auto [a, b] = kernel.edge(e);
        const std::uint64_t length = stream.geometric_path_length(params.mu);
        auto& path = d.path_of_kernel_edge[e];
        path.reserve(length + 1);
        path.push_back(a);
        for (std::uint64_t i = 1; i < length; ++i) path.push_back(next_core++);
        path.push_back(b);
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
            core_edges.emplace_back(path[i], path[i + 1]);
    }
    MultiGraph core(next_core, std::move(core_edges));

    // Step 3: an independent PGW(mu) tree at every core vertex, root
    // identified with the core vertex
    const VertexId cn = core.vertex_count();
    d.tree_of_core_vertex.reserve(cn);
    d.tree_full_ids.resize(cn);
    d.full_vertex_of_core_vertex.resize(cn);
    std::vector<std::pair<VertexId, VertexId>> full_edges;
    for (const auto& [u, v] : core.edges()) full_edges.emplace_back(u, v);
    VertexId next_full = cn;
    for (VertexId cv = 0; cv < cn; ++cv) {
        d.full_vertex_of_core_vertex[cv] = cv;
        RootedTree tree = sample_pgw_tree(stream, params.mu);
        auto& ids = d.tree_full_ids[cv];
        ids.resize(tree.size());
        ids[0] = cv;
        for (VertexId t = 1; t < tree.size(); ++t) ids[t] = next_full++;
        for (VertexId t = 1; t < tree.size(); ++t)
            full_edges.emplace_back(ids[tree.parent(t)], ids[t]);
        d.tree_of_core_vertex.push_back(std::move(tree));
    }
    d.full = MultiGraph(next_full, std::move(full_edges));
    d.core = std::move(core);
    d.kernel = std::move(kernel);
    return d;
}

}  // namespace nearcrit
