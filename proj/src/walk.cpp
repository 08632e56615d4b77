#include "nearcrit/walk.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nearcrit/decompose.hpp"

namespace nearcrit {

namespace {

// resolves knife-edge comparisons where TV(t) equals delta in exact
// arithmetic (round-off would otherwise make the step count depend on the
// evaluation order)
constexpr double kTvComparisonSlack = 1e-12;

void require_connected(const MultiGraph& g) {
    if (g.vertex_count() == 0) throw std::invalid_argument("walk: empty graph");
    const auto dist = bfs_distances(g, 0);
    for (std::uint32_t d : dist)
        if (d == kUnreachable) throw std::invalid_argument("walk: graph must be connected");
}

}  // namespace

LazyWalkOperator::LazyWalkOperator(const MultiGraph& g) {
    require_connected(g);
    const VertexId n = g.vertex_count();
    for (VertexId v = 0; v < n; ++v)
        if (g.degree(v) == 0) throw std::invalid_argument("walk: zero-degree vertex");

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(n) + 2 * g.edge_count());
    for (VertexId x = 0; x < n; ++x) {
        const double move = 0.5 / g.degree(x);
        triplets.emplace_back(x, x, 0.5);  // holding half
        for (const HalfEdge& h : g.incident(x)) triplets.emplace_back(h.neighbor, x, move);
    }
    op_.resize(n, n);
    op_.setFromTriplets(triplets.begin(), triplets.end());

    pi_.resize(n);
    const double two_e = 2.0 * static_cast<double>(g.edge_count());
    for (VertexId v = 0; v < n; ++v) pi_[v] = g.degree(v) / two_e;
}

DistVector LazyWalkOperator::apply(const DistVector& d) const {
    if (d.size() != op_.rows()) throw std::invalid_argument("lazy_step: size mismatch");
    return op_ * d;
}

DistVector LazyWalkOperator::step(const DistVector& d) const {
    DistVector next = apply(d);
    const double mass = next.sum();
    if (std::abs(mass - 1.0) > 1e-12) next /= mass;
    return next;
}

DistVector LazyWalkOperator::delta(VertexId v) const {
    DistVector d = DistVector::Zero(op_.rows());
    d[v] = 1.0;
    return d;
}

DistVector lazy_step(const MultiGraph& g, const DistVector& d) {
    return LazyWalkOperator(g).step(d);
}

DistVector stationary_distribution(const MultiGraph& g) {
    require_connected(g);
    DistVector pi(g.vertex_count());
    const double two_e = 2.0 * static_cast<double>(g.edge_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) pi[v] = g.degree(v) / two_e;
    return pi;
}

double tv_distance(const DistVector& a, const DistVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("tv_distance: size mismatch");
    return 0.5 * (a - b).lpNorm<1>();
}

std::uint64_t tmix_from(const LazyWalkOperator& op, VertexId v, double delta) {
    DistVector d = op.delta(v);
    for (std::uint64_t t = 0; t <= kWalkIterationCap; ++t) {
        if (tv_distance(d, op.stationary()) <= delta + kTvComparisonSlack) return t;
        d = op.step(d);
    }
    throw ResourceCapError("tmix_from: iteration cap exceeded");
}

std::uint64_t tmix_from(const MultiGraph& g, VertexId v, double delta) {
    g.require_vertex(v);
    return tmix_from(LazyWalkOperator(g), v, delta);
}

std::uint64_t cesaro_tmix(const LazyWalkOperator& op, VertexId v, double delta) {
    DistVector d = op.delta(v);
    DistVector sum = DistVector::Zero(op.size());
    for (std::uint64_t t = 1; t <= kWalkIterationCap; ++t) {
        sum += d;
        if (tv_distance(sum / static_cast<double>(t), op.stationary()) <= delta + kTvComparisonSlack)
            return t;
        d = op.step(d);
    }
    throw ResourceCapError("cesaro_tmix: iteration cap exceeded");
}

std::uint64_t cesaro_tmix(const MultiGraph& g, VertexId v, double delta) {
    g.require_vertex(v);
    return cesaro_tmix(LazyWalkOperator(g), v, delta);
}

MixPair mix_pair_from(const LazyWalkOperator& op, VertexId v, double delta) {
    MixPair out;
    bool have_tmix = false, have_cesaro = false;
    DistVector d = op.delta(v);
    DistVector sum = DistVector::Zero(op.size());
    for (std::uint64_t t = 0; t <= kWalkIterationCap; ++t) {
        if (!have_tmix && tv_distance(d, op.stationary()) <= delta + kTvComparisonSlack) {
            out.tmix = t;
            have_tmix = true;
        }
        if (t >= 1 && !have_cesaro &&
            tv_distance(sum / static_cast<double>(t), op.stationary()) <=
                delta + kTvComparisonSlack) {
            out.cesaro = t;
            have_cesaro = true;
        }
        if (have_tmix && have_cesaro) {
            out.iterations = t;
            return out;
        }
        sum += d;
        d = op.step(d);
    }
    throw ResourceCapError("mix_pair_from: iteration cap exceeded");
}

namespace {

std::vector<VertexId> double_sweep_endpoints(const MultiGraph& g) {
    auto far_of = [&](VertexId src) {
        const auto dist = bfs_distances(g, src);
        VertexId far = src;
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            if (dist[v] != kUnreachable && dist[v] > dist[far]) far = v;
        return far;
    };
    const VertexId a = far_of(0);
    const VertexId b = far_of(a);
    return {a, b};
}

}  // namespace

WorstStartHints worst_start_hints(const GiantDecomposition& d) {
    WorstStartHints hints;
    if (d.trivial) {
        const RootedTree& t = *d.whole_graph_tree;
        VertexId deepest = t.root();
        for (VertexId v = 0; v < t.size(); ++v)
            if (t.level(v) > t.level(deepest)) deepest = v;
        hints.candidates.push_back(deepest);
        return hints;
    }
    std::uint32_t best_depth = 0;
    VertexId best_leaf = kNoVertex;
    for (VertexId cv = 0; cv < d.tree_of_core_vertex.size(); ++cv) {
        const RootedTree& t = d.tree_of_core_vertex[cv];
        for (VertexId v = 0; v < t.size(); ++v) {
            if (t.level(v) >= best_depth) {
                best_depth = t.level(v);
                best_leaf = d.tree_full_ids[cv][v];
            }
        }
    }
    if (best_leaf != kNoVertex) hints.candidates.push_back(best_leaf);
    std::uint64_t best_len = 0;
    const std::vector<VertexId>* best_path = nullptr;
    for (const auto& path : d.path_of_kernel_edge) {
        if (path.size() - 1 >= best_len) {
            best_len = path.size() - 1;
            best_path = &path;
        }
    }
    if (best_path && !best_path->empty()) {
        hints.candidates.push_back(d.full_vertex_of_core_vertex[best_path->front()]);
        hints.candidates.push_back(d.full_vertex_of_core_vertex[best_path->back()]);
        // the path midpoint sits deepest inside the trap
        hints.candidates.push_back(
            d.full_vertex_of_core_vertex[(*best_path)[best_path->size() / 2]]);
    }
    return hints;
}

WorstStartResult tmix_worst(const MultiGraph& g, double delta, WorstStartStrategy strategy,
                            const WorstStartHints* hints) {
    std::vector<VertexId> candidates;
    WorstStartHints derived;
    if (strategy == WorstStartStrategy::exhaustive) {
        if (g.vertex_count() > 5000)
            throw std::invalid_argument("tmix_worst: exhaustive limited to 5000 vertices");
        candidates.resize(g.vertex_count());
        for (VertexId v = 0; v < g.vertex_count(); ++v) candidates[v] = v;
    } else {
        candidates = double_sweep_endpoints(g);
        if (!hints) {
            derived = worst_start_hints(decompose_extracted_giant(g));
            hints = &derived;
        }
        for (VertexId v : hints->candidates)
            if (v < g.vertex_count()) candidates.push_back(v);
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    }

    const LazyWalkOperator op(g);
    WorstStartResult best;
    bool first = true;
    for (VertexId v : candidates) {
        const MixPair pair = mix_pair_from(op, v, delta);
        best.iterations += pair.iterations;
        if (first || pair.tmix > best.tmix) {
            best.tmix = pair.tmix;
            best.argmax = v;
            first = false;
        }
        best.cesaro = std::max(best.cesaro, pair.cesaro);
    }
    return best;
}

std::vector<double> hitting_times(const MultiGraph& g, const VertexSet& targets,
                                  bool simple_walk) {
    if (targets.empty()) throw std::invalid_argument("hitting_times: empty target set");
    const VertexId n = g.vertex_count();
    std::vector<char> is_target(n, 0);
    for (VertexId v : targets.ids()) {
        g.require_vertex(v);
        is_target[v] = 1;
    }
    // reachability of targets from every vertex, else the system is singular
    {
        std::vector<std::uint32_t> dist(n, kUnreachable);
        std::vector<VertexId> queue;
        for (VertexId v : targets.ids()) {
            dist[v] = 0;
            queue.push_back(v);
        }
        std::size_t head = 0;
        while (head < queue.size()) {
            const VertexId v = queue[head++];
            for (const HalfEdge& h : g.incident(v))
                if (dist[h.neighbor] == kUnreachable) {
                    dist[h.neighbor] = dist[v] + 1;
                    queue.push_back(h.neighbor);
                }
        }
        for (VertexId v = 0; v < n; ++v)
            if (dist[v] == kUnreachable)
                throw std::invalid_argument("hitting_times: vertex disconnected from targets");
    }

    std::vector<Eigen::Index> row(n, -1);
    std::vector<VertexId> unknowns;
    for (VertexId v = 0; v < n; ++v)
        if (!is_target[v]) {
            row[v] = static_cast<Eigen::Index>(unknowns.size());
            unknowns.push_back(v);
        }
    std::vector<double> result(n, 0.0);
    if (unknowns.empty()) return result;

    // (I - Q) h = 1 over non-target states; lazy kernel is (1/2)I + (1/2)P
    std::vector<Eigen::Triplet<double>> triplets;
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(unknowns.size()); ++i) {
        const VertexId x = unknowns[i];
        double diag = 1.0;
        if (!simple_walk) diag -= 0.5;
        const double move = (simple_walk ? 1.0 : 0.5) / g.degree(x);
        std::vector<std::pair<Eigen::Index, double>> buf;
        for (const HalfEdge& h : g.incident(x)) {
            if (is_target[h.neighbor]) continue;
            if (h.neighbor == x)
                diag -= move;
            else
                buf.emplace_back(row[h.neighbor], -move);
        }
        triplets.emplace_back(i, i, diag);
        for (const auto& [j, val] : buf) triplets.emplace_back(i, j, val);
    }
    Eigen::SparseMatrix<double> A(static_cast<Eigen::Index>(unknowns.size()),
                                  static_cast<Eigen::Index>(unknowns.size()));
    A.setFromTriplets(triplets.begin(), triplets.end());
    const Eigen::VectorXd rhs = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(unknowns.size()));

    Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
    solver.compute(A);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("hitting_times: factorization failed");
    const Eigen::VectorXd h = solver.solve(rhs);
    const double residual = (A * h - rhs).cwiseAbs().maxCoeff();
    if (residual > 1e-10) throw std::runtime_error("hitting_times: residual above 1e-10");
    for (std::size_t i = 0; i < unknowns.size(); ++i) result[unknowns[i]] = h[static_cast<Eigen::Index>(i)];
    return result;
}

std::uint64_t simulate_local_time(RngStream& stream, const MultiGraph& g, VertexId start,
                                  VertexId v, std::uint64_t horizon) {
    g.require_vertex(start);
    g.require_vertex(v);
    VertexId pos = start;
    std::uint64_t visits = (pos == v) ? 1 : 0;
    for (std::uint64_t t = 1; t <= horizon; ++t) {
        if ((stream.next_u64() & 1ull) == 0) {
            const auto inc = g.incident(pos);
            if (inc.empty()) throw std::invalid_argument("simulate_local_time: zero-degree vertex");
            pos = inc[stream.uniform_below(inc.size())].neighbor;
        }
        if (pos == v) ++visits;
    }
    return visits;
}

}  // namespace nearcrit
