#include "nearcrit/decompose.hpp"

#include <algorithm>
#include <stdexcept>

namespace nearcrit {

VertexSet k_core(const MultiGraph& g, std::uint32_t k, PeelOrder order) {
    if (k == 0) throw std::invalid_argument("k_core: k must be positive");
    const VertexId n = g.vertex_count();
    std::vector<std::uint32_t> deg(n);
    std::vector<char> removed(n, 0);
    std::vector<VertexId> worklist;
    for (VertexId v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        if (deg[v] < k) {
            worklist.push_back(v);
            removed[v] = 1;
        }
    }
    std::size_t head = 0;
    while (head < worklist.size()) {
        VertexId v;
        if (order == PeelOrder::queue) {
            v = worklist[head++];
        } else {
            v = worklist.back();
            worklist.pop_back();
        }
        for (const HalfEdge& h : g.incident(v)) {
            const VertexId w = h.neighbor;
            if (removed[w]) continue;
            if (--deg[w] < k) {
                removed[w] = 1;
                worklist.push_back(w);
            }
        }
    }
    std::vector<VertexId> kept;
    for (VertexId v = 0; v < n; ++v)
        if (!removed[v]) kept.push_back(v);
    return VertexSet::checked(std::move(kept), n);
}

KernelDecomposition kernel_decompose(const MultiGraph& core) {
    const VertexId n = core.vertex_count();
    for (VertexId v = 0; v < n; ++v)
        if (core.degree(v) < 2)
            throw std::invalid_argument("kernel_decompose: input must have min degree >= 2");

    KernelDecomposition out;
    std::vector<VertexId> kernel_id(n, kNoVertex);
    VertexId kernel_n = 0;
    for (VertexId v = 0; v < n; ++v)
        if (core.degree(v) >= 3) kernel_id[v] = kernel_n++;
    out.input_vertex_of_kernel_vertex.resize(kernel_n);
    for (VertexId v = 0; v < n; ++v)
        if (kernel_id[v] != kNoVertex) out.input_vertex_of_kernel_vertex[kernel_id[v]] = v;

    std::vector<char> edge_seen(core.edge_count(), 0);
    std::vector<std::pair<VertexId, VertexId>> kernel_edges;

    // walk each maximal chain of degree-2 vertices from its branch endpoint
    for (VertexId a = 0; a < n; ++a) {
        if (core.degree(a) < 3) continue;
        for (const HalfEdge& first : core.incident(a)) {
            if (edge_seen[first.edge]) continue;
            edge_seen[first.edge] = 1;
            std::vector<VertexId> path{a, first.neighbor};
            EdgeId prev = first.edge;
            VertexId cur = first.neighbor;
            while (core.degree(cur) == 2) {
                const auto inc = core.incident(cur);
                const HalfEdge& next = inc[0].edge == prev ? inc[1] : inc[0];
                edge_seen[next.edge] = 1;
                prev = next.edge;
                cur = next.neighbor;
                path.push_back(cur);
            }
            kernel_edges.emplace_back(kernel_id[a], kernel_id[cur]);
            out.path_of_kernel_edge.push_back(std::move(path));
        }
    }
    out.kernel = MultiGraph(kernel_n, std::move(kernel_edges));

    // untouched edges belong to pure-cycle components (all degree 2)
    std::vector<char> cycle_seen(n, 0);
    for (VertexId v = 0; v < n; ++v) {
        if (core.degree(v) != 2 || cycle_seen[v]) continue;
        const auto inc = core.incident(v);
        if (edge_seen[inc[0].edge]) continue;
        std::vector<VertexId> cycle{v};
        cycle_seen[v] = 1;
        edge_seen[inc[0].edge] = 1;
        EdgeId prev = inc[0].edge;
        VertexId cur = inc[0].neighbor;
        while (cur != v) {
            cycle.push_back(cur);
            cycle_seen[cur] = 1;
            const auto cinc = core.incident(cur);
            const HalfEdge& next = cinc[0].edge == prev ? cinc[1] : cinc[0];
            edge_seen[next.edge] = 1;
            prev = next.edge;
            cur = next.neighbor;
        }
        out.disjoint_cycles.push_back(std::move(cycle));
    }
    return out;
}

namespace {

/// Attached trees: components of g minus the core-induced edges, each rooted
/// at its unique core vertex.
void attach_trees(const MultiGraph& g, const std::vector<VertexId>& core_to_full,
                  const std::vector<char>& in_core, GiantDecomposition& d) {
    const VertexId cn = static_cast<VertexId>(core_to_full.size());
    d.tree_of_core_vertex.reserve(cn);
    d.tree_full_ids.resize(cn);
    std::vector<char> visited(g.vertex_count(), 0);
    for (VertexId cv = 0; cv < cn; ++cv) {
        const VertexId root = core_to_full[cv];
        std::vector<VertexId> parent{kNoVertex};
        std::vector<VertexId> full_ids{root};
        visited[root] = 1;
        std::size_t head = 0;
        while (head < full_ids.size()) {
            const VertexId v = full_ids[head];
            const VertexId local_v = static_cast<VertexId>(head);
            ++head;
            for (const HalfEdge& h : g.incident(v)) {
                const VertexId w = h.neighbor;
                // skip edges inside the core: both endpoints in the 2-core
                if (in_core[v] && in_core[w]) continue;
                if (visited[w]) continue;
                visited[w] = 1;
                parent.push_back(local_v);
                full_ids.push_back(w);
            }
        }
        d.tree_of_core_vertex.push_back(RootedTree::from_parents(std::move(parent)));
        d.tree_full_ids[cv] = std::move(full_ids);
    }
}

}  // namespace

GiantDecomposition decompose_extracted_giant(const MultiGraph& g) {
    if (g.vertex_count() == 0) throw std::invalid_argument("decompose_extracted_giant: empty graph");
    {
        const auto dist = bfs_distances(g, 0);
        for (std::uint32_t dv : dist)
            if (dv == kUnreachable)
                throw std::invalid_argument("decompose_extracted_giant: graph must be connected");
    }
    GiantDecomposition d;
    const VertexSet core_set = k_core(g, 2);
    if (core_set.empty()) {
        d.trivial = true;
        d.full = g;
        std::vector<VertexId> parent(g.vertex_count(), kNoVertex);
        const auto dist = bfs_distances(g, 0);
        for (VertexId v = 1; v < g.vertex_count(); ++v) {
            for (const HalfEdge& h : g.incident(v)) {
                if (dist[h.neighbor] + 1 == dist[v]) {
                    parent[v] = h.neighbor;
                    break;
                }
            }
        }
        d.whole_graph_tree = RootedTree::from_parents(std::move(parent));
        return d;
    }

    SubgraphExtract core_ex = extract_subgraph(g, core_set);
    std::vector<char> in_core(g.vertex_count(), 0);
    for (VertexId v : core_set.ids()) in_core[v] = 1;

    d.full = g;
    d.core = std::move(core_ex.graph);
    d.full_vertex_of_core_vertex = std::move(core_ex.to_parent);
    attach_trees(g, d.full_vertex_of_core_vertex, in_core, d);

    KernelDecomposition kd = kernel_decompose(d.core);
    d.kernel = std::move(kd.kernel);
    d.path_of_kernel_edge = std::move(kd.path_of_kernel_edge);
    d.core_vertex_of_kernel_vertex = std::move(kd.input_vertex_of_kernel_vertex);
    d.disjoint_cycles = std::move(kd.disjoint_cycles);
    return d;
}

namespace {

struct ExplorationSink {
    std::vector<std::uint64_t>* sizes = nullptr;
    std::vector<RootedTree>* trees = nullptr;
};

std::uint64_t explore(RngStream& stream, std::uint64_t n, double epsilon,
                      std::uint64_t vertex_budget, const ExplorationSink& sink) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("explore_components: epsilon must be in (0,1)");
    const double p = (1.0 - epsilon) / static_cast<double>(n);
    if (vertex_budget > n) vertex_budget = n;
    std::uint64_t unseen = n;
    std::uint64_t exposed = 0;
    std::vector<VertexId> parent;
    while (unseen > 0 && exposed < vertex_budget) {
        parent.assign(1, kNoVertex);
        --unseen;
        ++exposed;
        std::size_t head = 0;
        bool aborted = false;
        while (head < parent.size()) {
            const VertexId v = static_cast<VertexId>(head++);
            const std::uint64_t offspring = stream.binomial(unseen, p);
            for (std::uint64_t c = 0; c < offspring; ++c) parent.push_back(v);
            unseen -= offspring;
            exposed += offspring;
            if (exposed >= vertex_budget && head < parent.size()) {
                aborted = true;
                break;
            }
        }
        if (aborted) break;
        if (sink.sizes) sink.sizes->push_back(parent.size());
        if (sink.trees) sink.trees->push_back(RootedTree::from_parents(parent));
    }
    return exposed;
}

}  // namespace

ExplorationResult explore_components(RngStream& stream, std::uint64_t n, double epsilon,
                                     std::uint64_t vertex_budget) {
    ExplorationResult result;
    ExplorationSink sink;
    sink.sizes = &result.component_sizes;
    result.exposed = explore(stream, n, epsilon, vertex_budget, sink);
    return result;
}

ExplorationTrees explore_component_trees(RngStream& stream, std::uint64_t n, double epsilon,
                                         std::uint64_t vertex_budget) {
    ExplorationTrees result;
    ExplorationSink sink;
    sink.trees = &result.trees;
    result.exposed = explore(stream, n, epsilon, vertex_budget, sink);
    return result;
}

namespace {

bool detect_event_b(const RootedTree& t, std::uint32_t r, std::uint64_t s) {
    if (r == 0) return false;  // distance 0 needs v == w, excluded by distinctness
    const auto sizes = t.subtree_sizes();
    std::vector<VertexId> heavy;
    for (VertexId v = 0; v < t.size(); ++v)
        if (sizes[v] >= s) heavy.push_back(v);
    if (heavy.size() < 2) return false;
    // ancestors of a heavy vertex are heavy, so any heavy vertex at depth
    // >= r pairs with its r-th ancestor
    for (VertexId v : heavy)
        if (t.level(v) >= r) return true;
    // remaining heavy vertices all sit at depth < r: cross pairs only
    for (std::size_t i = 0; i < heavy.size(); ++i) {
        for (std::size_t j = i + 1; j < heavy.size(); ++j) {
            VertexId a = heavy[i], b = heavy[j];
            std::uint32_t dist = 0;
            while (t.level(a) > t.level(b)) {
                a = t.parent(a);
                ++dist;
            }
            while (t.level(b) > t.level(a)) {
                b = t.parent(b);
                ++dist;
            }
            while (a != b) {
                a = t.parent(a);
                b = t.parent(b);
                dist += 2;
            }
            if (dist == r) return true;
        }
    }
    return false;
}

}  // namespace

bool detect_tree_event(const RootedTree& t, std::uint32_t r, std::uint64_t s, TreeEvent kind) {
    if (s == 0) throw std::invalid_argument("detect_tree_event: s must be positive");
    if (kind == TreeEvent::B) return detect_event_b(t, r, s);
    const auto sizes = t.subtree_sizes();
    for (VertexId v = 0; v < t.size(); ++v)
        if (t.level(v) == r && sizes[v] >= s) return true;
    return false;
}

std::uint64_t longest_2path(const GiantDecomposition& d) { return d.longest_path_edges(); }

}  // namespace nearcrit
