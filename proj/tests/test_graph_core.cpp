#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "nearcrit/graph_io.hpp"
#include "nearcrit/multigraph.hpp"
#include "test_support.hpp"

using namespace nearcrit;
using namespace testsupport;

TEST_CASE("degree: loop and multiplicity conventions") {
    const MultiGraph triangle = cycle_graph(3);
    for (VertexId v = 0; v < 3; ++v) CHECK(degree(triangle, v) == 2);

    const MultiGraph loop(1, {{0, 0}});
    CHECK(degree(loop, 0) == 2);

    const MultiGraph star = star_graph(3);
    CHECK(degree(star, 0) == 3);

    CHECK_THROWS_AS(degree(triangle, 3), std::invalid_argument);
}

TEST_CASE("volume over vertex sets") {
    const MultiGraph triangle = cycle_graph(3);
    CHECK(volume(triangle, VertexSet::checked({0, 1, 2}, 3)) == 6);
    CHECK(volume(triangle, VertexSet::checked({1}, 3)) == 2);
    CHECK(volume(triangle, VertexSet()) == 0);
}

TEST_CASE("boundary_and_induced on C4") {
    const MultiGraph c4 = cycle_graph(4);
    const EdgeCut adjacent = boundary_and_induced(c4, VertexSet::checked({0, 1}, 4));
    CHECK(adjacent.induced == 1);
    CHECK(adjacent.boundary == 2);
    const EdgeCut opposite = boundary_and_induced(c4, VertexSet::checked({0, 2}, 4));
    CHECK(opposite.induced == 0);
    CHECK(opposite.boundary == 4);
    const EdgeCut all = boundary_and_induced(c4, VertexSet::checked({0, 1, 2, 3}, 4));
    CHECK(all.induced == c4.edge_count());
    CHECK(all.boundary == 0);
}

TEST_CASE("volume identity d(S) = 2 e(S) + |dS| on random multigraphs") {
    std::mt19937_64 rng(20260808);
    for (int trial = 0; trial < 100; ++trial) {
        const VertexId n = 2 + static_cast<VertexId>(rng() % 10);
        const MultiGraph g = random_multigraph(rng, n, static_cast<EdgeId>(rng() % 20));
        std::vector<VertexId> picked;
        for (VertexId v = 0; v < n; ++v)
            if (rng() & 1) picked.push_back(v);
        const VertexSet s = VertexSet::checked(std::move(picked), n);
        const EdgeCut cut = boundary_and_induced(g, s);
        CHECK(volume(g, s) == 2 * cut.induced + cut.boundary);
    }
}

TEST_CASE("components: ordering and maximality") {
    MultiGraph two_triangles(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
    auto parts = components(two_triangles);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].size() == 3);
    CHECK(parts[1].size() == 3);
    CHECK(parts[0].front() == 0);  // tie broken by smallest contained id

    const MultiGraph edgeless(3, {});
    CHECK(components(edgeless).size() == 3);

    const MultiGraph p5 = path_graph(5);
    CHECK(components(p5).size() == 1);

    // maximality: no boundary edges out of any part
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const MultiGraph g = random_multigraph(rng, 12, 10);
        for (const auto& part : components(g)) {
            const EdgeCut cut = boundary_and_induced(g, VertexSet::checked(part, 12));
            CHECK(cut.boundary == 0);
        }
    }
}

TEST_CASE("tree_excess") {
    const MultiGraph triangle = cycle_graph(3);
    CHECK(tree_excess(triangle, VertexSet::checked({0, 1, 2}, 3)) == 1);

    const MultiGraph p5 = path_graph(5);
    CHECK(tree_excess(p5, VertexSet::checked({0, 1, 2, 3, 4}, 5)) == 0);

    // theta graph: 7 edges, 6 vertices, excess 7 - 6 + 1 = 2
    const MultiGraph theta = theta_graph();
    CHECK(tree_excess(theta, VertexSet::checked({0, 1, 2, 3, 4, 5}, 6)) == 2);

    // nonnegative on every component of random graphs
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const MultiGraph g = random_multigraph(rng, 10, 12);
        for (const auto& part : components(g))
            CHECK(tree_excess(g, VertexSet::checked(part, 10)) >= 0);
    }

    CHECK_THROWS_AS(tree_excess(p5, VertexSet::checked({0, 1}, 5)), std::invalid_argument);
}

TEST_CASE("bfs_distances basics and Floyd-Warshall oracle") {
    const MultiGraph p3 = path_graph(3);
    const auto d = bfs_distances(p3, 0);
    CHECK(d == std::vector<std::uint32_t>{0, 1, 2});

    const MultiGraph pair(2, {});
    CHECK(bfs_distances(pair, 0)[1] == kUnreachable);

    const MultiGraph c6 = cycle_graph(6);
    const auto dc = bfs_distances(c6, 2);
    CHECK(*std::max_element(dc.begin(), dc.end()) == 3);

    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 40; ++trial) {
        const VertexId n = 2 + static_cast<VertexId>(rng() % 11);
        const MultiGraph g = random_multigraph(rng, n, static_cast<EdgeId>(rng() % 18));
        const auto fw = floyd_warshall(g);
        for (VertexId src = 0; src < n; ++src) CHECK(bfs_distances(g, src) == fw[src]);
    }
}

TEST_CASE("rooted tree construction and diameter") {
    // path of 4 edges rooted at the middle vertex
    const RootedTree mid_path =
        RootedTree::from_parents({kNoVertex, 0, 1, 0, 3});  // levels 0,1,2,1,2
    CHECK(tree_diameter(mid_path) == 4);

    const RootedTree single = RootedTree::from_parents({kNoVertex});
    CHECK(tree_diameter(single) == 0);

    const RootedTree star = RootedTree::from_parents({kNoVertex, 0, 0, 0, 0, 0});
    CHECK(tree_diameter(star) == 2);

    CHECK(mid_path.level(0) == 0);
    CHECK(mid_path.level(2) == 2);
    CHECK(mid_path.subtree_sizes()[0] == 5);

    CHECK_THROWS(RootedTree::from_parents({0, 1, 2}));           // cycle, no root
    CHECK_THROWS(RootedTree::from_parents({kNoVertex, kNoVertex}));  // two roots
}

TEST_CASE("edge list round trip and ordering") {
    std::mt19937_64 rng(515);
    const MultiGraph g = random_multigraph(rng, 9, 14);
    std::ostringstream out;
    write_edge_list(out, g);
    std::istringstream in(out.str());
    const MultiGraph back = read_edge_list(in);
    CHECK(back.vertex_count() == g.vertex_count());
    REQUIRE(back.edge_count() == g.edge_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) CHECK(back.degree(v) == g.degree(v));

    // writer output is lexicographically sorted and stable
    std::ostringstream again;
    write_edge_list(again, back);
    CHECK(again.str() == out.str());

    // reader tolerates arbitrary order
    std::istringstream shuffled("3 2\n2 1\n0 1\n");
    const MultiGraph small = read_edge_list(shuffled);
    CHECK(small.degree(1) == 2);
}

TEST_CASE("extract_subgraph keeps multiplicities and relabels densely") {
    const MultiGraph g(5, {{0, 1}, {0, 1}, {1, 1}, {1, 2}, {3, 4}});
    const SubgraphExtract sub = extract_subgraph(g, VertexSet::checked({0, 1}, 5));
    CHECK(sub.graph.vertex_count() == 2);
    CHECK(sub.graph.edge_count() == 3);  // two parallel + one loop
    CHECK(sub.graph.degree(1) == 4);
    CHECK(sub.to_parent == std::vector<VertexId>{0, 1});
}
