#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cstdint>
#include <vector>

#include "nearcrit/multigraph.hpp"
#include "nearcrit/rng.hpp"

namespace nearcrit {

/// Probability vector over one connected component's vertices.
using DistVector = Eigen::VectorXd;

inline constexpr std::uint64_t kWalkIterationCap = 100'000'000;

/// Lazy walk: hold with probability 1/2, else move along a uniformly chosen
/// incident half-edge (a loop holds two half-edges, so it contributes
/// 2/deg(x) self-mass within the move half). The operator is the
/// column-stochastic matrix M with d' = M d.
class LazyWalkOperator {
public:
    explicit LazyWalkOperator(const MultiGraph& g);  // requires connected, no degree-0 vertex

    Eigen::Index size() const { return op_.rows(); }
    const DistVector& stationary() const { return pi_; }

    /// Raw operator application, no mass correction.
    DistVector apply(const DistVector& d) const;
    /// One evolution step; renormalizes when the mass drift exceeds 1e-12.
    DistVector step(const DistVector& d) const;

    DistVector delta(VertexId v) const;

private:
    Eigen::SparseMatrix<double> op_;
    DistVector pi_;
};

DistVector lazy_step(const MultiGraph& g, const DistVector& d);

/// Lazy-walk stationary distribution pi(x) = d(x) / 2|E|.
DistVector stationary_distribution(const MultiGraph& g);

/// Total-variation distance (1/2) sum |a - b|; sizes must match.
double tv_distance(const DistVector& a, const DistVector& b);

/// Least t with TV(P_v(S_t in .), pi) <= delta; TV from a fixed start is
/// non-increasing in t, so the first crossing is the minimum.
std::uint64_t tmix_from(const MultiGraph& g, VertexId v, double delta);
std::uint64_t tmix_from(const LazyWalkOperator& op, VertexId v, double delta);

/// Least t with TV((1/t) sum_{i<t} P_v(S_i in .), pi) <= delta.
std::uint64_t cesaro_tmix(const MultiGraph& g, VertexId v, double delta);
std::uint64_t cesaro_tmix(const LazyWalkOperator& op, VertexId v, double delta);

/// Both mixing times from one trajectory pass.
struct MixPair {
    std::uint64_t tmix = 0;
    std::uint64_t cesaro = 0;
    std::uint64_t iterations = 0;
};
MixPair mix_pair_from(const LazyWalkOperator& op, VertexId v, double delta);

enum class WorstStartStrategy { exhaustive, heuristic };

/// Extra worst-start candidates taken from a decomposition: the deepest
/// attached-tree leaf and the two endpoints of the longest 2-path.
struct WorstStartHints {
    std::vector<VertexId> candidates;
};

struct GiantDecomposition;  // nearcrit/model.hpp

struct WorstStartResult {
    std::uint64_t tmix = 0;
    VertexId argmax = 0;
    std::uint64_t cesaro = 0;        // Cesaro time at the same argmax scan
    std::uint64_t iterations = 0;    // total operator applications
};

/// Candidates a decomposition justifies: the deepest attached-tree leaf and
/// the endpoints and midpoint of the longest 2-path (full-graph ids).
WorstStartHints worst_start_hints(const GiantDecomposition& d);

/// exhaustive: max over every start (allowed up to 5000 vertices).
/// heuristic: max over BFS double-sweep endpoints plus hint candidates;
/// without supplied hints the graph's own decomposition provides them.
WorstStartResult tmix_worst(const MultiGraph& g, double delta, WorstStartStrategy strategy,
                            const WorstStartHints* hints = nullptr);

/// Expected hitting time of the target set from every vertex, lazy walk,
/// solved to residual 1e-10. simple_walk=true drops the holding half.
std::vector<double> hitting_times(const MultiGraph& g, const VertexSet& targets,
                                  bool simple_walk = false);

/// Monte Carlo local time: #{0 <= t <= horizon : S_t = v} on one trajectory.
std::uint64_t simulate_local_time(RngStream& stream, const MultiGraph& g, VertexId start,
                                  VertexId v, std::uint64_t horizon);

}  // namespace nearcrit
