#pragma once

#include <cstdint>
#include <vector>

#include "nearcrit/multigraph.hpp"
#include "nearcrit/rng.hpp"

namespace nearcrit {

/// Exact fraction, reduced, den > 0.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational make(std::int64_t num, std::int64_t den);
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational&, const Rational&) = default;
};
bool rational_less(const Rational& a, const Rational& b);

/// min over nonempty S with d_G(S) <= e(G) of |dS| / d_G(S), exact rational
/// arithmetic, Gray-code enumeration of all subsets. Throws for > 24
/// vertices, directing callers to profile sampling.
Rational isoperimetric_number(const MultiGraph& g);

/// Phi(S) for the lazy walk: the numerator sum_{x in S, y notin S} pi(x)p_xy
/// equals |dS|/(4e), divided by pi(S)pi(S^c). S must be proper and nonempty.
double set_conductance(const MultiGraph& g, const VertexSet& s);

struct ConductanceProfile {
    /// phi[j-1] = Phi(2^-j) for j = 1..ceil(log2(1/pi_min)); 1 where no
    /// connected set lands in the bucket.
    std::vector<double> phi;
    double pi_min = 0.0;
    bool certified = false;  // exact enumeration vs sampled lower-quality estimate
};

enum class ProfileMode { exact, sampled };

/// exact: enumerates connected subsets (work-capped; dense graphs beyond
/// ~20 vertices exceed the cap and throw). sampled: greedy local search
/// from 512 random connected seeds, reported with certified=false.
ConductanceProfile conductance_profile(const MultiGraph& g, ProfileMode mode,
                                       RngStream* stream = nullptr);

/// The C-free Fountoulakis-Reed sum: sum_j Phi(2^-j)^-2.
double fr_upper_bound(const ConductanceProfile& profile);

}  // namespace nearcrit
