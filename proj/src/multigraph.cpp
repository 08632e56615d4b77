#include "nearcrit/multigraph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace nearcrit {

MultiGraph::MultiGraph(VertexId vertex_count, std::vector<std::pair<VertexId, VertexId>> edges)
    : n_(vertex_count), edges_(std::move(edges)) {
    offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (const auto& [u, v] : edges_) {
        if (u >= n_ || v >= n_)
            throw std::invalid_argument("MultiGraph: edge endpoint out of range");
        ++offsets_[u + 1];
        ++offsets_[v + 1];
    }
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
    incidence_.resize(offsets_.back());
    std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (EdgeId e = 0; e < edges_.size(); ++e) {
        const auto [u, v] = edges_[e];
        incidence_[cursor[u]++] = {v, e};
        incidence_[cursor[v]++] = {u, e};  // a loop lands twice in u's list
    }
}

void MultiGraph::require_vertex(VertexId v) const {
    if (v >= n_) throw std::invalid_argument("vertex id out of range");
}

VertexSet VertexSet::checked(std::vector<VertexId> ids, VertexId vertex_count) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (ids[i] >= vertex_count) throw std::invalid_argument("VertexSet: id out of range");
        if (i > 0 && ids[i] <= ids[i - 1])
            throw std::invalid_argument("VertexSet: ids must be strictly increasing");
    }
    VertexSet s;
    s.ids_ = std::move(ids);
    return s;
}

VertexSet VertexSet::from_unsorted(std::vector<VertexId> ids, VertexId vertex_count) {
    std::sort(ids.begin(), ids.end());
    return checked(std::move(ids), vertex_count);
}

bool VertexSet::contains(VertexId v) const {
    return std::binary_search(ids_.begin(), ids_.end(), v);
}

RootedTree RootedTree::from_parents(std::vector<VertexId> parent) {
    const VertexId n = static_cast<VertexId>(parent.size());
    if (n == 0) throw std::invalid_argument("RootedTree: empty");
    RootedTree t;
    t.root_ = kNoVertex;
    std::vector<std::uint32_t> child_count(n, 0);
    for (VertexId v = 0; v < n; ++v) {
        if (parent[v] == kNoVertex) {
            if (t.root_ != kNoVertex) throw std::invalid_argument("RootedTree: multiple roots");
            t.root_ = v;
        } else if (parent[v] >= n) {
            throw std::invalid_argument("RootedTree: parent out of range");
        } else {
            ++child_count[parent[v]];
        }
    }
    if (t.root_ == kNoVertex) throw std::invalid_argument("RootedTree: no root");

    t.child_off_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (VertexId v = 0; v < n; ++v) t.child_off_[v + 1] = t.child_off_[v] + child_count[v];
    t.children_.resize(t.child_off_.back());
    std::vector<std::uint32_t> cursor(t.child_off_.begin(), t.child_off_.end() - 1);
    for (VertexId v = 0; v < n; ++v)
        if (parent[v] != kNoVertex) t.children_[cursor[parent[v]]++] = v;

    // level assignment doubles as the acyclicity check
    t.level_.assign(n, kUnreachable);
    t.level_[t.root_] = 0;
    std::vector<VertexId> queue{t.root_};
    std::size_t head = 0, reached = 1;
    while (head < queue.size()) {
        const VertexId v = queue[head++];
        for (VertexId c : t.children(v)) {
            t.level_[c] = t.level_[v] + 1;
            queue.push_back(c);
            ++reached;
        }
    }
    if (reached != n) throw std::invalid_argument("RootedTree: parent links contain a cycle");
    t.parent_ = std::move(parent);
    return t;
}

std::vector<std::uint32_t> RootedTree::subtree_sizes() const {
    const VertexId n = size();
    std::vector<std::uint32_t> sizes(n, 1);
    // process deepest-first: order vertices by level descending
    std::vector<VertexId> order(n);
    for (VertexId v = 0; v < n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(),
              [this](VertexId a, VertexId b) { return level_[a] > level_[b]; });
    for (VertexId v : order)
        if (parent_[v] != kNoVertex) sizes[parent_[v]] += sizes[v];
    return sizes;
}

std::uint32_t degree(const MultiGraph& g, VertexId v) {
    g.require_vertex(v);
    return g.degree(v);
}

std::uint64_t volume(const MultiGraph& g, const VertexSet& s) {
    std::uint64_t sum = 0;
    for (VertexId v : s.ids()) {
        g.require_vertex(v);
        sum += g.degree(v);
    }
    return sum;
}

EdgeCut boundary_and_induced(const MultiGraph& g, const VertexSet& s) {
    std::vector<char> in_s(g.vertex_count(), 0);
    for (VertexId v : s.ids()) {
        g.require_vertex(v);
        in_s[v] = 1;
    }
    EdgeCut cut{0, 0};
    for (const auto& [u, v] : g.edges()) {
        const int inside = in_s[u] + in_s[v];
        if (u == v) {
            if (in_s[u]) ++cut.induced;  // a loop is never a boundary edge
        } else if (inside == 2) {
            ++cut.induced;
        } else if (inside == 1) {
            ++cut.boundary;
        }
    }
    return cut;
}

std::vector<std::vector<VertexId>> components(const MultiGraph& g) {
    const VertexId n = g.vertex_count();
    std::vector<std::vector<VertexId>> parts;
    std::vector<char> seen(n, 0);
    std::vector<VertexId> queue;
    for (VertexId start = 0; start < n; ++start) {
        if (seen[start]) continue;
        queue.clear();
        queue.push_back(start);
        seen[start] = 1;
        std::size_t head = 0;
        while (head < queue.size()) {
            const VertexId v = queue[head++];
            for (const HalfEdge& h : g.incident(v)) {
                if (!seen[h.neighbor]) {
                    seen[h.neighbor] = 1;
                    queue.push_back(h.neighbor);
                }
            }
        }
        std::sort(queue.begin(), queue.end());
        parts.push_back(queue);
    }
    std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.front() < b.front();
    });
    return parts;
}

std::int64_t tree_excess(const MultiGraph& g, const VertexSet& part) {
    if (part.empty()) throw std::invalid_argument("tree_excess: empty part");
    const EdgeCut cut = boundary_and_induced(g, part);
    if (cut.boundary != 0)
        throw std::invalid_argument("tree_excess: part is not a whole component");
    // connectivity: BFS inside the part from its first vertex
    std::vector<std::uint32_t> dist = bfs_distances(g, part.ids().front());
    for (VertexId v : part.ids())
        if (dist[v] == kUnreachable)
            throw std::invalid_argument("tree_excess: part is not connected");
    return static_cast<std::int64_t>(cut.induced) - static_cast<std::int64_t>(part.size()) + 1;
}

std::vector<std::uint32_t> bfs_distances(const MultiGraph& g, VertexId src) {
    g.require_vertex(src);
    std::vector<std::uint32_t> dist(g.vertex_count(), kUnreachable);
    dist[src] = 0;
    std::vector<VertexId> queue{src};
    std::size_t head = 0;
    while (head < queue.size()) {
        const VertexId v = queue[head++];
        for (const HalfEdge& h : g.incident(v)) {
            if (dist[h.neighbor] == kUnreachable) {
                dist[h.neighbor] = dist[v] + 1;
                queue.push_back(h.neighbor);
            }
        }
    }
    return dist;
}

namespace {

// farthest vertex from src within the tree, walking parent+children links
std::pair<VertexId, std::uint32_t> tree_farthest(const RootedTree& t, VertexId src) {
    std::vector<std::uint32_t> dist(t.size(), kUnreachable);
    dist[src] = 0;
    std::vector<VertexId> queue{src};
    std::size_t head = 0;
    VertexId far = src;
    while (head < queue.size()) {
        const VertexId v = queue[head++];
        if (dist[v] > dist[far]) far = v;
        auto visit = [&](VertexId w) {
            if (w != kNoVertex && dist[w] == kUnreachable) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        };
        visit(t.parent(v));
        for (VertexId c : t.children(v)) visit(c);
    }
    return {far, dist[far]};
}

}  // namespace

std::uint32_t tree_diameter(const RootedTree& t) {
    const auto [a, da] = tree_farthest(t, t.root());
    const auto [b, db] = tree_farthest(t, a);
    (void)b;
    (void)da;
    return db;
}

SubgraphExtract extract_subgraph(const MultiGraph& g, const VertexSet& s) {
    std::vector<VertexId> local(g.vertex_count(), kNoVertex);
    std::vector<VertexId> to_parent(s.ids().begin(), s.ids().end());
    for (VertexId i = 0; i < to_parent.size(); ++i) local[to_parent[i]] = i;
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (const auto& [u, v] : g.edges())
        if (local[u] != kNoVertex && local[v] != kNoVertex)
            edges.emplace_back(local[u], local[v]);
    return {MultiGraph(static_cast<VertexId>(to_parent.size()), std::move(edges)),
            std::move(to_parent)};
}

}  // namespace nearcrit
