#pragma once

#include <cstdint>
#include <vector>

#include "nearcrit/model.hpp"
#include "nearcrit/multigraph.hpp"
#include "nearcrit/rng.hpp"

namespace nearcrit {

enum class PeelOrder { queue, stack };  // both must give the same k-core

/// Maximal vertex set whose induced subgraph has min degree >= k,
/// by repeated deletion. Empty result allowed.
VertexSet k_core(const MultiGraph& g, std::uint32_t k, PeelOrder order = PeelOrder::queue);

struct KernelDecomposition {
    MultiGraph kernel;
    std::vector<std::vector<VertexId>> path_of_kernel_edge;  // ids in the input graph
    std::vector<VertexId> input_vertex_of_kernel_vertex;
    std::vector<std::vector<VertexId>> disjoint_cycles;
};

/// Sets aside pure-cycle components, contracts every maximal 2-path to one
/// kernel edge (kernel loops and parallel edges included). Input must have
/// min degree >= 2.
KernelDecomposition kernel_decompose(const MultiGraph& core);

/// 2-core / kernel / attached-tree decomposition of a connected graph.
/// An empty 2-core yields the flagged trivial decomposition.
GiantDecomposition decompose_extracted_giant(const MultiGraph& g);

struct ExplorationResult {
    std::vector<std::uint64_t> component_sizes;  // completed components, discovery order
    std::uint64_t exposed = 0;
};
/// Breadth-first exploration of G(n, (1-eps)/n) revealing one component at a
/// time, without materializing the graph; stops once `vertex_budget`
/// vertices are exposed (an in-progress component is abandoned, not listed).
ExplorationResult explore_components(RngStream& stream, std::uint64_t n, double epsilon,
                                     std::uint64_t vertex_budget);

struct ExplorationTrees {
    std::vector<RootedTree> trees;
    std::uint64_t exposed = 0;
};
/// Same process, returning each completed component as its exploration tree.
ExplorationTrees explore_component_trees(RngStream& stream, std::uint64_t n, double epsilon,
                                         std::uint64_t vertex_budget);

enum class TreeEvent { A, B };

/// Event A: some depth-r vertex has subtree size >= s.
/// Event B: two distinct vertices with subtree sizes >= s lie at tree
/// distance exactly r.
bool detect_tree_event(const RootedTree& t, std::uint32_t r, std::uint64_t s, TreeEvent kind);

/// Max 2-path length (edge count) over kernel edges; 0 if the kernel is empty.
std::uint64_t longest_2path(const GiantDecomposition& d);

}  // namespace nearcrit
