#include "nearcrit/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nearcrit {

void write_edge_list(std::ostream& out, const MultiGraph& g) {
    std::vector<std::pair<VertexId, VertexId>> sorted;
    sorted.reserve(g.edge_count());
    for (auto [u, v] : g.edges()) {
        if (u > v) std::swap(u, v);
        sorted.emplace_back(u, v);
    }
    std::sort(sorted.begin(), sorted.end());
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& [u, v] : sorted) out << u << ' ' << v << '\n';
}

void write_edge_list_file(const std::string& path, const MultiGraph& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_edge_list(out, g);
    if (!out) throw std::runtime_error("write failed: " + path);
}

MultiGraph read_edge_list(std::istream& in) {
    std::uint64_t n = 0, m = 0;
    if (!(in >> n >> m)) throw std::runtime_error("edge list: missing header");
    if (n > kNoVertex) throw std::runtime_error("edge list: vertex count too large");
    std::vector<std::pair<VertexId, VertexId>> edges;
    edges.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        std::uint64_t u = 0, v = 0;
        if (!(in >> u >> v)) throw std::runtime_error("edge list: truncated");
        if (u >= n || v >= n) throw std::runtime_error("edge list: endpoint out of range");
        edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
    }
    return MultiGraph(static_cast<VertexId>(n), std::move(edges));
}

MultiGraph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return read_edge_list(in);
}

}  // namespace nearcrit
