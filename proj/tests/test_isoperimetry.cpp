#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nearcrit/isoperimetry.hpp"
#include "test_support.hpp"

using namespace nearcrit;
using namespace testsupport;

namespace {

/// Mask-enumeration oracle for the isoperimetric number: every nonempty
/// subset, recomputed from scratch.
Rational oracle_isoperimetric(const MultiGraph& g) {
    const VertexId n = g.vertex_count();
    const std::uint64_t e = g.edge_count();
    bool found = false;
    Rational best{0, 1};
    for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
        std::int64_t vol = 0, boundary = 0;
        for (VertexId v = 0; v < n; ++v)
            if (mask & (1ull << v)) vol += g.degree(v);
        for (auto [u, v] : g.edges()) {
            if (u == v) continue;
            const bool iu = mask & (1ull << u), iv = mask & (1ull << v);
            if (iu != iv) ++boundary;
        }
        if (vol == 0 || vol > static_cast<std::int64_t>(e)) continue;
        const Rational frac = Rational::make(boundary, vol);
        if (!found || rational_less(frac, best)) {
            best = frac;
            found = true;
        }
    }
    return best;
}

bool connected_mask(const MultiGraph& g, std::uint64_t mask) {
    VertexId start = kNoVertex;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (mask & (1ull << v)) {
            start = v;
            break;
        }
    if (start == kNoVertex) return false;
    std::uint64_t seen = 1ull << start;
    std::vector<VertexId> queue{start};
    while (!queue.empty()) {
        const VertexId v = queue.back();
        queue.pop_back();
        for (const HalfEdge& h : g.incident(v)) {
            const std::uint64_t bit = 1ull << h.neighbor;
            if ((mask & bit) && !(seen & bit)) {
                seen |= bit;
                queue.push_back(h.neighbor);
            }
        }
    }
    return seen == mask;
}

/// Mask-enumeration oracle for the exact conductance profile.
std::vector<double> oracle_profile(const MultiGraph& g) {
    const VertexId n = g.vertex_count();
    const std::uint64_t e = g.edge_count();
    const std::uint64_t two_e = 2 * e;
    std::uint64_t dmin = ~0ull;
    for (VertexId v = 0; v < n; ++v) dmin = std::min<std::uint64_t>(dmin, g.degree(v));
    int buckets = 0;
    while ((dmin << buckets) < two_e) ++buckets;
    buckets = std::max(buckets, 1);
    std::vector<double> best(buckets, 1.0);
    for (std::uint64_t mask = 1; mask + 1 < (1ull << n); ++mask) {
        if (!connected_mask(g, mask)) continue;
        std::uint64_t vol = 0, boundary = 0;
        for (VertexId v = 0; v < n; ++v)
            if (mask & (1ull << v)) vol += g.degree(v);
        for (auto [u, v] : g.edges()) {
            if (u == v) continue;
            const bool iu = mask & (1ull << u), iv = mask & (1ull << v);
            if (iu != iv) ++boundary;
        }
        const double phi = static_cast<double>(boundary) * static_cast<double>(e) /
                           (static_cast<double>(vol) * static_cast<double>(two_e - vol));
        for (int j = 1; j <= buckets; ++j)
            if ((vol << (j + 1)) >= two_e && (vol << j) <= two_e)
                best[j - 1] = std::min(best[j - 1], phi);
    }
    return best;
}

}  // namespace

TEST_CASE("isoperimetric_number: frozen values") {
    const Rational k4 = isoperimetric_number(complete_graph(4));
    CHECK(k4 == Rational::make(2, 3));
    const Rational c6 = isoperimetric_number(cycle_graph(6));
    CHECK(c6 == Rational::make(1, 3));
    const Rational k2 = isoperimetric_number(path_graph(2));
    CHECK(k2 == Rational::make(1, 1));
    CHECK_THROWS_AS(isoperimetric_number(cycle_graph(25)), std::invalid_argument);
}

TEST_CASE("isoperimetric_number matches the mask oracle on random graphs") {
    std::mt19937_64 rng(10101);
    for (int trial = 0; trial < 30; ++trial) {
        const VertexId n = 2 + static_cast<VertexId>(rng() % 9);
        const MultiGraph g = random_connected_multigraph(rng, n, static_cast<EdgeId>(rng() % 8));
        CHECK(isoperimetric_number(g) == oracle_isoperimetric(g));
    }
}

TEST_CASE("set_conductance: values and symmetry at pi = 1/2") {
    const MultiGraph c4 = cycle_graph(4);
    CHECK(set_conductance(c4, VertexSet::checked({0, 1}, 4)) == doctest::Approx(0.5));
    CHECK(set_conductance(path_graph(2), VertexSet::checked({0}, 2)) == doctest::Approx(1.0));

    // Phi(S) = Phi(S^c) whenever pi(S) = 1/2
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const VertexId n = 4 + static_cast<VertexId>(rng() % 8);
        const MultiGraph g = random_connected_multigraph(rng, n, static_cast<EdgeId>(rng() % 8));
        for (std::uint64_t mask = 1; mask + 1 < (1ull << n); ++mask) {
            std::uint64_t vol = 0;
            std::vector<VertexId> inside, outside;
            for (VertexId v = 0; v < n; ++v) {
                if (mask & (1ull << v)) {
                    vol += g.degree(v);
                    inside.push_back(v);
                } else {
                    outside.push_back(v);
                }
            }
            if (vol * 2 != 2ull * g.edge_count()) continue;
            const double a = set_conductance(g, VertexSet::checked(inside, n));
            const double b = set_conductance(g, VertexSet::checked(outside, n));
            CHECK(a == doctest::Approx(b).epsilon(1e-12));
            break;
        }
    }
    CHECK_THROWS_AS(set_conductance(c4, VertexSet::checked({0, 1, 2, 3}, 4)),
                    std::invalid_argument);
}

TEST_CASE("conductance numerator identity, exact in rationals") {
    // sum over boundary pairs of pi(x) p_xy, as fractions, equals |dS|/(4e)
    std::mt19937_64 rng(9944);
    for (int trial = 0; trial < 50; ++trial) {
        const VertexId n = 3 + static_cast<VertexId>(rng() % 8);
        const MultiGraph g = random_connected_multigraph(rng, n, static_cast<EdgeId>(rng() % 8));
        std::vector<char> in_s(n, 0);
        std::vector<VertexId> inside;
        for (VertexId v = 0; v < n; ++v)
            if (rng() & 1) {
                in_s[v] = 1;
                inside.push_back(v);
            }
        if (inside.empty() || inside.size() == n) continue;
        const std::int64_t two_e = 2 * static_cast<std::int64_t>(g.edge_count());
        Rational numerator = Rational::make(0, 1);
        for (VertexId x = 0; x < n; ++x) {
            if (!in_s[x]) continue;
            for (const HalfEdge& h : g.incident(x)) {
                if (h.neighbor == x || in_s[h.neighbor]) continue;
                // pi(x) * (one half-edge of the move half) = d(x)/2e * 1/(2 d(x))
                const Rational term = Rational::make(
                    static_cast<std::int64_t>(g.degree(x)),
                    two_e * 2 * static_cast<std::int64_t>(g.degree(x)));
                numerator = Rational::make(
                    numerator.num * term.den + term.num * numerator.den,
                    numerator.den * term.den);
            }
        }
        std::int64_t boundary = 0;
        for (auto [u, v] : g.edges())
            if (u != v && in_s[u] != in_s[v]) ++boundary;
        CHECK(numerator == Rational::make(boundary, 2 * two_e));
    }
}

TEST_CASE("exact conductance profile: K2, C8, and the mask oracle") {
    const ConductanceProfile k2 = conductance_profile(path_graph(2), ProfileMode::exact);
    REQUIRE(k2.phi.size() == 1);
    CHECK(k2.phi[0] == doctest::Approx(1.0));
    CHECK(k2.pi_min == doctest::Approx(0.5));
    CHECK(k2.certified);

    const ConductanceProfile c8 = conductance_profile(cycle_graph(8), ProfileMode::exact);
    REQUIRE(c8.phi.size() == 3);
    CHECK(c8.phi[0] == doctest::Approx(0.25));         // half arc
    CHECK(c8.phi[1] == doctest::Approx(1.0 / 3.0));    // arc of 2
    CHECK(c8.phi[2] == doctest::Approx(4.0 / 7.0));    // single vertex

    std::mt19937_64 rng(8888);
    for (int trial = 0; trial < 25; ++trial) {
        const VertexId n = 3 + static_cast<VertexId>(rng() % 8);
        const MultiGraph g = random_connected_multigraph(rng, n, static_cast<EdgeId>(rng() % 6));
        const ConductanceProfile mine = conductance_profile(g, ProfileMode::exact);
        const std::vector<double> oracle = oracle_profile(g);
        REQUIRE(mine.phi.size() == oracle.size());
        for (std::size_t j = 0; j < oracle.size(); ++j)
            CHECK(mine.phi[j] == doctest::Approx(oracle[j]).epsilon(1e-12));
    }
}

TEST_CASE("sampled profile agrees with exact on C8 and K4") {
    RngStream stream(2, 0);
    const ConductanceProfile exact_c8 = conductance_profile(cycle_graph(8), ProfileMode::exact);
    const ConductanceProfile sampled_c8 =
        conductance_profile(cycle_graph(8), ProfileMode::sampled, &stream);
    CHECK_FALSE(sampled_c8.certified);
    REQUIRE(sampled_c8.phi.size() == exact_c8.phi.size());
    for (std::size_t j = 0; j < exact_c8.phi.size(); ++j)
        CHECK(sampled_c8.phi[j] == doctest::Approx(exact_c8.phi[j]).epsilon(1e-9));

    const ConductanceProfile exact_k4 = conductance_profile(complete_graph(4), ProfileMode::exact);
    const ConductanceProfile sampled_k4 =
        conductance_profile(complete_graph(4), ProfileMode::sampled, &stream);
    REQUIRE(sampled_k4.phi.size() == exact_k4.phi.size());
    for (std::size_t j = 0; j < exact_k4.phi.size(); ++j)
        CHECK(sampled_k4.phi[j] == doctest::Approx(exact_k4.phi[j]).epsilon(1e-9));
}

TEST_CASE("fr_upper_bound: flat profile, cycle scaling, zero rejection") {
    ConductanceProfile flat;
    flat.phi = {1.0, 1.0, 1.0};
    flat.pi_min = 0.125;
    CHECK(fr_upper_bound(flat) == doctest::Approx(3.0));

    const double f8 = fr_upper_bound(conductance_profile(cycle_graph(8), ProfileMode::exact));
    const double f16 = fr_upper_bound(conductance_profile(cycle_graph(16), ProfileMode::exact));
    const double f32 = fr_upper_bound(conductance_profile(cycle_graph(32), ProfileMode::exact));
    CHECK(f16 / f8 >= 3.0);
    CHECK(f16 / f8 <= 16.0 / 3.0);
    CHECK(f32 / f16 >= 3.0);
    CHECK(f32 / f16 <= 16.0 / 3.0);

    ConductanceProfile bad;
    bad.phi = {0.5, 0.0};
    CHECK_THROWS_AS(fr_upper_bound(bad), std::domain_error);
}
