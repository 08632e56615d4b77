#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nearcrit {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr VertexId kNoVertex = 0xFFFFFFFFu;
inline constexpr std::uint32_t kUnreachable = 0xFFFFFFFFu;

struct HalfEdge {
    VertexId neighbor;
    EdgeId edge;
};

/// Immutable sparse undirected multigraph. Loops and parallel edges are
/// allowed; a loop contributes 2 to its endpoint's degree and appears twice
/// in that vertex's incidence list.
class MultiGraph {
public:
    MultiGraph() = default;
    MultiGraph(VertexId vertex_count, std::vector<std::pair<VertexId, VertexId>> edges);

    VertexId vertex_count() const { return n_; }
    EdgeId edge_count() const { return static_cast<EdgeId>(edges_.size()); }
    const std::vector<std::pair<VertexId, VertexId>>& edges() const { return edges_; }
    std::pair<VertexId, VertexId> edge(EdgeId e) const { return edges_[e]; }

    std::span<const HalfEdge> incident(VertexId v) const {
        return {incidence_.data() + offsets_[v], incidence_.data() + offsets_[v + 1]};
    }
    std::uint32_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

    void require_vertex(VertexId v) const;

private:
    VertexId n_ = 0;
    std::vector<std::pair<VertexId, VertexId>> edges_;
    std::vector<HalfEdge> incidence_;
    std::vector<std::uint32_t> offsets_;
};

/// Sorted set of vertex ids within one graph (strictly increasing, all < n).
class VertexSet {
public:
    VertexSet() = default;

    /// Validates strict ordering and range; throws std::invalid_argument.
    static VertexSet checked(std::vector<VertexId> ids, VertexId vertex_count);
    /// Sorts first, then validates uniqueness and range.
    static VertexSet from_unsorted(std::vector<VertexId> ids, VertexId vertex_count);

    const std::vector<VertexId>& ids() const { return ids_; }
    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }
    bool contains(VertexId v) const;

private:
    std::vector<VertexId> ids_;
};

/// Rooted tree in parent/level form with a children adjacency. Vertex ids are
/// tree-local, 0-based; the root is the unique vertex whose parent is
/// kNoVertex.
class RootedTree {
public:
    RootedTree() = default;
    /// Builds from a parent vector (exactly one kNoVertex entry). Throws on
    /// cycles, multiple roots, or out-of-range parents.
    static RootedTree from_parents(std::vector<VertexId> parent);

    VertexId size() const { return static_cast<VertexId>(parent_.size()); }
    VertexId root() const { return root_; }
    VertexId parent(VertexId v) const { return parent_[v]; }
    std::uint32_t level(VertexId v) const { return level_[v]; }
    std::span<const VertexId> children(VertexId v) const {
        return {children_.data() + child_off_[v], children_.data() + child_off_[v + 1]};
    }
    /// Subtree vertex counts, |T_v| for every v (root entry equals size()).
    std::vector<std::uint32_t> subtree_sizes() const;

private:
    std::vector<VertexId> parent_;
    std::vector<std::uint32_t> level_;
    std::vector<VertexId> children_;
    std::vector<std::uint32_t> child_off_;
    VertexId root_ = 0;
};

std::uint32_t degree(const MultiGraph& g, VertexId v);

/// d_G(S): sum of degrees over S.
std::uint64_t volume(const MultiGraph& g, const VertexSet& s);

struct EdgeCut {
    std::uint64_t induced;   // e_G(S): edges with both endpoints in S (a loop counts 1)
    std::uint64_t boundary;  // |∂_G S|: edges with exactly one endpoint in S
};
EdgeCut boundary_and_induced(const MultiGraph& g, const VertexSet& s);

/// Connected components, sorted by size descending, ties broken by smallest
/// contained vertex id. Vertices inside each part are ascending.
std::vector<std::vector<VertexId>> components(const MultiGraph& g);

/// (#edges within part) - |part| + 1. `part` must be one connected component.
std::int64_t tree_excess(const MultiGraph& g, const VertexSet& part);

/// Hop distances from src; kUnreachable marks the other components.
std::vector<std::uint32_t> bfs_distances(const MultiGraph& g, VertexId src);

/// Exact diameter (edge count) by double sweep; exact on trees.
std::uint32_t tree_diameter(const RootedTree& t);

struct SubgraphExtract {
    MultiGraph graph;
    std::vector<VertexId> to_parent;  // dense new id -> id in the parent graph
};
/// Relabelled induced subgraph: keeps every edge with both endpoints in s.
SubgraphExtract extract_subgraph(const MultiGraph& g, const VertexSet& s);

}  // namespace nearcrit
