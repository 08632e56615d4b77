#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nearcrit/multigraph.hpp"
#include "nearcrit/rng.hpp"

namespace nearcrit {

struct DegreeProfile {
    std::vector<std::uint32_t> degrees;        // D_u for u in [n]
    std::vector<std::uint64_t> counts;         // counts[k] = N_k; meaningful for k >= 3
    std::uint64_t kernel_vertex_count = 0;     // N = sum_{k>=3} N_k
    std::uint64_t parity_rejections = 0;       // resampled batches before parity held
    std::uint64_t rate_rejections = 0;         // Lambda <= 0 redraws
    double poisson_rate = 0.0;                 // the accepted Lambda
};

/// Kernel multigraph + the maps that expand it back to the 2-core and the
/// full graph. Tree-local vertex 0 is always the root (= its core vertex).
struct GiantDecomposition {
    MultiGraph full;
    MultiGraph core;
    MultiGraph kernel;
    /// kernel edge id -> ordered core vertex ids of its 2-path (endpoints
    /// included, so a path of length L lists L+1 ids; a kernel loop repeats
    /// its endpoint at both ends).
    std::vector<std::vector<VertexId>> path_of_kernel_edge;
    /// core components that are pure cycles, dropped from the kernel
    std::vector<std::vector<VertexId>> disjoint_cycles;
    std::vector<RootedTree> tree_of_core_vertex;           // one per core vertex
    std::vector<std::vector<VertexId>> tree_full_ids;      // tree-local id -> full id
    std::vector<VertexId> core_vertex_of_kernel_vertex;
    std::vector<VertexId> full_vertex_of_core_vertex;
    /// set when the input had an empty 2-core: the whole graph is one tree
    bool trivial = false;
    std::optional<RootedTree> whole_graph_tree;

    std::uint64_t max_tree_size() const;
    std::uint64_t longest_path_edges() const;
    std::uint64_t loop_count() const;  // loops in the kernel
    /// Checks every structural invariant; throws std::logic_error on failure.
    void validate() const;
};

/// G(n,p) simple graph via geometric skips over the C(n,2) pair order.
MultiGraph sample_gnp(RngStream& stream, std::uint64_t n, double p);

/// Lambda ~ N(1+eps-mu, 1/(eps n)) once per profile (redrawn while <= 0);
/// D_u iid Poisson(Lambda), resampled until sum over D_u >= 3 is even.
DegreeProfile sample_degree_profile(RngStream& stream, const ModelParams& params);

/// Configuration model on the profile's degree >= 3 vertices: uniform
/// perfect matching of half-edges; loops and parallel edges retained.
MultiGraph sample_kernel(RngStream& stream, const DegreeProfile& profile);

/// Breadth-first Poisson(mu) Galton-Watson realization; throws
/// ResourceCapError if the size would exceed size_cap.
RootedTree sample_pgw_tree(RngStream& stream, double mu,
                           std::uint64_t size_cap = 100'000'000);

/// Steps 1-3 of the contiguous model: kernel, geometric path expansion,
/// attached PGW(mu) trees. All decomposition maps are populated.
/// profile_out, when given, receives the accepted degree profile.
GiantDecomposition build_c1tilde(RngStream& stream, const ModelParams& params,
                                 DegreeProfile* profile_out = nullptr);

}  // namespace nearcrit
