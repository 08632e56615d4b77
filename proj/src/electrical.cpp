#include "nearcrit/electrical.hpp"

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>
#include <cmath>
#include <stdexcept>

#include "nearcrit/walk.hpp"

namespace nearcrit {

namespace {

constexpr Eigen::Index kDenseCutoff = 500;

/// Solves the Laplacian Dirichlet problem: rows/columns of `boundary`
/// vertices are removed (their voltage is fixed at 0) and L_ff x = rhs_f is
/// solved for the free vertices. Loops are excluded; parallel edges sum.
std::vector<double> solve_grounded_laplacian(const MultiGraph& g,
                                             const std::vector<char>& boundary,
                                             const std::vector<double>& rhs) {
    const VertexId n = g.vertex_count();
    std::vector<Eigen::Index> row(n, -1);
    std::vector<VertexId> free_vertices;
    for (VertexId v = 0; v < n; ++v)
        if (!boundary[v]) {
            row[v] = static_cast<Eigen::Index>(free_vertices.size());
            free_vertices.push_back(v);
        }
    std::vector<double> voltage(n, 0.0);
    const Eigen::Index m = static_cast<Eigen::Index>(free_vertices.size());
    if (m == 0) return voltage;

    std::vector<Eigen::Triplet<double>> triplets;
    for (Eigen::Index i = 0; i < m; ++i) {
        const VertexId x = free_vertices[i];
        double diag = 0.0;
        for (const HalfEdge& h : g.incident(x)) {
            if (h.neighbor == x) continue;  // loop: no current
            diag += 1.0;
            if (!boundary[h.neighbor]) triplets.emplace_back(i, row[h.neighbor], -1.0);
        }
        triplets.emplace_back(i, i, diag);
    }
    Eigen::VectorXd b(m);
    for (Eigen::Index i = 0; i < m; ++i) b[i] = rhs[free_vertices[i]];

    Eigen::VectorXd x;
    if (m < kDenseCutoff) {
        Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(m, m);
        for (const auto& t : triplets) dense(t.row(), t.col()) += t.value();
        x = dense.ldlt().solve(b);
    } else {
        Eigen::SparseMatrix<double> sparse(m, m);
        sparse.setFromTriplets(triplets.begin(), triplets.end());
        Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                                 Eigen::DiagonalPreconditioner<double>>
            cg;
        cg.setTolerance(1e-14);
        cg.setMaxIterations(20 * m);
        cg.compute(sparse);
        x = cg.solve(b);
    }
    // residual guard at 1e-12 relative to the injected current
    double residual = 0.0;
    {
        Eigen::VectorXd r = -b;
        for (const auto& t : triplets) r[t.row()] += t.value() * x[t.col()];
        residual = r.cwiseAbs().maxCoeff();
    }
    const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
    if (residual > 1e-12 * scale * 1e2)
        throw std::runtime_error("laplacian solve: residual too large");
    for (Eigen::Index i = 0; i < m; ++i) voltage[free_vertices[i]] = x[i];
    return voltage;
}

void require_connected_el(const MultiGraph& g) {
    const auto dist = bfs_distances(g, 0);
    for (std::uint32_t d : dist)
        if (d == kUnreachable) throw std::invalid_argument("electrical: graph must be connected");
}

}  // namespace

double effective_resistance(const MultiGraph& g, VertexId a, VertexId b) {
    g.require_vertex(a);
    g.require_vertex(b);
    if (a == b) throw std::invalid_argument("effective_resistance: a == b");
    require_connected_el(g);
    std::vector<char> boundary(g.vertex_count(), 0);
    boundary[b] = 1;
    std::vector<double> rhs(g.vertex_count(), 0.0);
    rhs[a] = 1.0;
    const auto v = solve_grounded_laplacian(g, boundary, rhs);
    return v[a];
}

double escape_probability(const MultiGraph& g, VertexId v, const VertexSet& targets) {
    g.require_vertex(v);
    if (targets.empty()) throw std::invalid_argument("escape_probability: empty target set");
    if (targets.contains(v)) throw std::invalid_argument("escape_probability: v is a target");
    require_connected_el(g);
    const VertexId n = g.vertex_count();

    // route 1: C_eff(v <-> targets) / deg(v). Unit voltage at v, 0 on the
    // targets; the escape flow is the current leaving v.
    std::vector<char> boundary(n, 0);
    boundary[v] = 1;
    for (VertexId t : targets.ids()) boundary[t] = 1;
    std::vector<double> rhs(n, 0.0);
    for (const HalfEdge& h : g.incident(v)) {
        if (h.neighbor == v) continue;
        if (!boundary[h.neighbor]) rhs[h.neighbor] += 1.0;  // L_fv * 1 moved to the rhs
    }
    const auto u = solve_grounded_laplacian(g, boundary, rhs);
    double current = 0.0;
    for (const HalfEdge& h : g.incident(v)) {
        if (h.neighbor == v) continue;
        const double nb = h.neighbor == v ? 1.0
                          : targets.contains(h.neighbor) ? 0.0
                          : boundary[h.neighbor] ? 0.0
                                                 : u[h.neighbor];
        current += 1.0 - nb;
    }
    const double route_conductance = current / static_cast<double>(g.degree(v));

    // route 2: absorbing chain for the embedded non-lazy walk; success on
    // the targets, failure on returning to v
    std::vector<Eigen::Index> row(n, -1);
    std::vector<VertexId> unknowns;
    for (VertexId x = 0; x < n; ++x)
        if (!boundary[x]) {
            row[x] = static_cast<Eigen::Index>(unknowns.size());
            unknowns.push_back(x);
        }
    const Eigen::Index m = static_cast<Eigen::Index>(unknowns.size());
    Eigen::VectorXd f;
    if (m > 0) {
        Eigen::MatrixXd A;
        Eigen::SparseMatrix<double> As;
        std::vector<Eigen::Triplet<double>> triplets;
        Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            const VertexId x = unknowns[i];
            const double move = 1.0 / g.degree(x);
            double diag = 1.0;
            for (const HalfEdge& h : g.incident(x)) {
                if (targets.contains(h.neighbor)) {
                    b[i] += move;
                } else if (h.neighbor == v) {
                    // absorbed as failure: contributes 0
                } else if (h.neighbor == x) {
                    diag -= move;
                } else {
                    triplets.emplace_back(i, row[h.neighbor], -move);
                }
            }
            triplets.emplace_back(i, i, diag);
        }
        if (m < kDenseCutoff) {
            A = Eigen::MatrixXd::Zero(m, m);
            for (const auto& t : triplets) A(t.row(), t.col()) += t.value();
            f = A.fullPivLu().solve(b);
        } else {
            As.resize(m, m);
            As.setFromTriplets(triplets.begin(), triplets.end());
            Eigen::BiCGSTAB<Eigen::SparseMatrix<double>> solver;
            solver.setTolerance(1e-14);
            solver.setMaxIterations(20 * m);
            solver.compute(As);
            f = solver.solve(b);
        }
    }
    double route_absorbing = 0.0;
    {
        const double move = 1.0 / g.degree(v);
        for (const HalfEdge& h : g.incident(v)) {
            if (targets.contains(h.neighbor))
                route_absorbing += move;
            else if (h.neighbor != v && !boundary[h.neighbor])
                route_absorbing += move * f[row[h.neighbor]];
        }
    }

    if (std::abs(route_conductance - route_absorbing) > 1e-9)
        throw std::runtime_error("escape_probability: dual routes disagree beyond 1e-9");
    return route_absorbing;
}

double voltage_hitting(const MultiGraph& g, VertexId z, const VertexSet& targets) {
    g.require_vertex(z);
    if (targets.empty()) throw std::invalid_argument("voltage_hitting: empty target set");
    if (targets.contains(z)) throw std::invalid_argument("voltage_hitting: z is a target");
    require_connected_el(g);
    std::vector<char> boundary(g.vertex_count(), 0);
    for (VertexId t : targets.ids()) boundary[t] = 1;
    std::vector<double> rhs(g.vertex_count(), 0.0);
    rhs[z] = 1.0;
    const auto v = solve_grounded_laplacian(g, boundary, rhs);
    double sum = 0.0;
    for (VertexId x = 0; x < g.vertex_count(); ++x)
        sum += static_cast<double>(g.degree(x)) * v[x];
    return sum;
}

CommuteCheck commute_time_check(const MultiGraph& g, VertexId v, VertexId w) {
    if (v == w) throw std::invalid_argument("commute_time_check: v == w");
    require_connected_el(g);
    const VertexSet tv = VertexSet::checked({v}, g.vertex_count());
    const VertexSet tw = VertexSet::checked({w}, g.vertex_count());
    const auto h_to_w_simple = hitting_times(g, tw, /*simple_walk=*/true);
    const auto h_to_v_simple = hitting_times(g, tv, /*simple_walk=*/true);
    const auto h_to_w_lazy = hitting_times(g, tw, /*simple_walk=*/false);
    const auto h_to_v_lazy = hitting_times(g, tv, /*simple_walk=*/false);
    CommuteCheck out;
    out.commute_simple = h_to_w_simple[v] + h_to_v_simple[w];
    out.commute_lazy = h_to_w_lazy[v] + h_to_v_lazy[w];
    out.commute_identity =
        2.0 * static_cast<double>(g.edge_count()) * effective_resistance(g, v, w);
    return out;
}

}  // namespace nearcrit
