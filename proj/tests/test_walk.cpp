#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "nearcrit/isoperimetry.hpp"  // Rational, for the exact reversibility check
#include "nearcrit/walk.hpp"
#include "test_support.hpp"

using namespace nearcrit;
using namespace testsupport;

TEST_CASE("lazy_step basics") {
    const MultiGraph k2 = path_graph(2);
    LazyWalkOperator op(k2);
    const DistVector after = op.step(op.delta(0));
    CHECK(after[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(after[1] == doctest::Approx(0.5).epsilon(1e-14));

    // zero-degree vertex rejected
    CHECK_THROWS_AS(LazyWalkOperator(MultiGraph(1, {})), std::invalid_argument);
    CHECK_THROWS_AS(LazyWalkOperator(MultiGraph(4, {{0, 1}, {2, 3}})), std::invalid_argument);

    // single vertex with a loop: identity chain
    const MultiGraph loop(1, {{0, 0}});
    LazyWalkOperator lop(loop);
    CHECK(lop.step(lop.delta(0))[0] == doctest::Approx(1.0));
}

TEST_CASE("probability conservation before renormalization") {
    std::mt19937_64 rng(640);
    for (int trial = 0; trial < 10; ++trial) {
        const VertexId n = 3 + static_cast<VertexId>(rng() % 40);
        const MultiGraph g = random_connected_multigraph(rng, n, static_cast<EdgeId>(rng() % 30));
        LazyWalkOperator op(g);
        DistVector d = op.delta(static_cast<VertexId>(rng() % n));
        for (int t = 0; t < 2000; ++t) {
            d = op.apply(d);
            CHECK(std::abs(d.sum() - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("stationary distribution is fixed by lazy_step") {
    std::mt19937_64 rng(321);
    for (int trial = 0; trial < 50; ++trial) {
        const VertexId n = 2 + static_cast<VertexId>(rng() % 99);
        const MultiGraph g = random_connected_multigraph(rng, n, static_cast<EdgeId>(rng() % 40));
        LazyWalkOperator op(g);
        const DistVector pi = op.stationary();
        CHECK(tv_distance(op.step(pi), pi) <= 1e-14);
    }
}

TEST_CASE("two-step evolution on C4 matches the dense matrix power") {
    const MultiGraph c4 = cycle_graph(4);
    LazyWalkOperator op(c4);
    DistVector d = op.delta(1);
    d = op.step(d);
    d = op.step(d);
    const Eigen::MatrixXd P = dense_lazy_kernel(c4);
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(4);
    row(1) = 1.0;
    row = row * P * P;
    for (int i = 0; i < 4; ++i) CHECK(d[i] == doctest::Approx(row(i)).epsilon(1e-14));
}

TEST_CASE("tv_distance") {
    DistVector a(2), b(2);
    a << 1.0, 0.0;
    b << 0.5, 0.5;
    CHECK(tv_distance(a, a) == 0.0);
    CHECK(tv_distance(a, b) == doctest::Approx(0.5));
    DistVector c(3), d(3);
    c << 1.0, 0.0, 0.0;
    d << 0.0, 0.4, 0.6;
    CHECK(tv_distance(c, d) == doctest::Approx(1.0));
    CHECK_THROWS_AS(tv_distance(a, d), std::invalid_argument);
}

TEST_CASE("tmix_from: frozen examples and oracle equality") {
    CHECK(tmix_from(path_graph(2), 0, 0.25) == 1);

    const MultiGraph c8 = cycle_graph(8);
    CHECK(tmix_from(c8, 3, 0.25) == oracle_tmix(c8, 3, 0.25));

    const MultiGraph k5 = complete_graph(5);
    const std::uint64_t tk5 = tmix_from(k5, 0, 0.25);
    CHECK(tk5 == oracle_tmix(k5, 0, 0.25));
    CHECK(tk5 <= 3);
}

TEST_CASE("cesaro_tmix: frozen examples and oracle equality") {
    CHECK(cesaro_tmix(path_graph(2), 0, 0.25) == 2);

    const MultiGraph k5 = complete_graph(5);
    const std::uint64_t ck5 = cesaro_tmix(k5, 0, 0.25);
    CHECK(ck5 == oracle_cesaro(k5, 0, 0.25));
    CHECK(ck5 <= 8);
}

TEST_CASE("TV from a fixed start is monotone along trajectories") {
    std::mt19937_64 rng(552);
    for (int trial = 0; trial < 20; ++trial) {
        const VertexId n = 3 + static_cast<VertexId>(rng() % 30);
        const MultiGraph g = random_connected_multigraph(rng, n, static_cast<EdgeId>(rng() % 20));
        LazyWalkOperator op(g);
        DistVector d = op.delta(static_cast<VertexId>(rng() % n));
        double prev = tv_distance(d, op.stationary());
        for (int t = 0; t < 200; ++t) {
            d = op.step(d);
            const double cur = tv_distance(d, op.stationary());
            CHECK(cur <= prev + 1e-12);
            prev = cur;
        }
    }
}

TEST_CASE("reversibility pi(x) p_xy = pi(y) p_yx, exact in rationals") {
    std::mt19937_64 rng(8181);
    for (int trial = 0; trial < 25; ++trial) {
        const VertexId n = 2 + static_cast<VertexId>(rng() % 19);
        const MultiGraph g = random_connected_multigraph(rng, n, static_cast<EdgeId>(rng() % 25));
        // multiplicity matrix
        std::vector<std::vector<std::int64_t>> mult(n, std::vector<std::int64_t>(n, 0));
        for (auto [u, v] : g.edges()) {
            if (u == v) continue;
            ++mult[u][v];
            ++mult[v][u];
        }
        const std::int64_t two_e = 2 * static_cast<std::int64_t>(g.edge_count());
        for (VertexId x = 0; x < n; ++x) {
            for (VertexId y = 0; y < n; ++y) {
                if (x == y || mult[x][y] == 0) continue;
                // pi(x) p_xy = (d(x)/2e) (m_xy / 2 d(x)) = m_xy / 4e
                const Rational left = Rational::make(
                    static_cast<std::int64_t>(g.degree(x)) * mult[x][y],
                    two_e * 2 * static_cast<std::int64_t>(g.degree(x)));
                const Rational right = Rational::make(
                    static_cast<std::int64_t>(g.degree(y)) * mult[y][x],
                    two_e * 2 * static_cast<std::int64_t>(g.degree(y)));
                CHECK(left == right);
            }
        }
    }
}

TEST_CASE("cesaro sandwich: 8 tmix(1/8) >= cesaro(1/4)") {
    std::mt19937_64 rng(2211);
    for (int trial = 0; trial < 50; ++trial) {
        const VertexId n = 3 + static_cast<VertexId>(rng() % 198);
        const MultiGraph g = random_connected_multigraph(rng, n, n / 2, /*allow_loops=*/false);
        LazyWalkOperator op(g);
        const VertexId v = static_cast<VertexId>(rng() % n);
        CHECK(8 * tmix_from(op, v, 0.125) >= cesaro_tmix(op, v, 0.25));
    }
}

TEST_CASE("tmix_worst: exhaustive argmax and heuristic quality") {
    const MultiGraph p3 = path_graph(3);
    const WorstStartResult exact = tmix_worst(p3, 0.25, WorstStartStrategy::exhaustive);
    CHECK((exact.argmax == 0 || exact.argmax == 2));  // an endpoint

    std::mt19937_64 rng(7412);
    for (int trial = 0; trial < 50; ++trial) {
        const VertexId n = 8 + static_cast<VertexId>(rng() % 193);
        const MultiGraph g = random_connected_multigraph(rng, n, n / 3, /*allow_loops=*/false);
        const WorstStartResult ex = tmix_worst(g, 0.25, WorstStartStrategy::exhaustive);
        const WorstStartResult heur = tmix_worst(g, 0.25, WorstStartStrategy::heuristic);
        CHECK(heur.tmix <= ex.tmix);
        CHECK(2 * heur.tmix >= ex.tmix);  // heuristic >= 0.5 exhaustive on this corpus
    }

    CHECK_THROWS_AS(tmix_worst(MultiGraph(5001, [] {
                        std::vector<std::pair<VertexId, VertexId>> edges;
                        for (VertexId v = 0; v + 1 < 5001; ++v) edges.emplace_back(v, v + 1);
                        return edges;
                    }()),
                    0.25, WorstStartStrategy::exhaustive),
                    std::invalid_argument);
}

TEST_CASE("hitting_times: lazy examples and dense oracle") {
    const MultiGraph ab = path_graph(2);
    const auto h = hitting_times(ab, VertexSet::checked({1}, 2));
    CHECK(h[0] == doctest::Approx(2.0).epsilon(1e-10));  // lazy success prob 1/2
    CHECK(h[1] == 0.0);

    const MultiGraph c4 = cycle_graph(4);
    const auto hc = hitting_times(c4, VertexSet::checked({0}, 4));
    CHECK(hc[2] == doctest::Approx(8.0).epsilon(1e-10));  // lazy = 2x simple walk's 4

    const auto all = hitting_times(c4, VertexSet::checked({0, 1, 2, 3}, 4));
    for (double v : all) CHECK(v == 0.0);

    CHECK_THROWS_AS(hitting_times(MultiGraph(3, {{0, 1}}), VertexSet::checked({0}, 3)),
                    std::invalid_argument);  // vertex 2 disconnected from targets

    std::mt19937_64 rng(9292);
    for (int trial = 0; trial < 30; ++trial) {
        const VertexId n = 3 + static_cast<VertexId>(rng() % 10);
        const MultiGraph g = random_connected_multigraph(rng, n, static_cast<EdgeId>(rng() % 10));
        std::vector<VertexId> targets{static_cast<VertexId>(rng() % n)};
        const auto mine = hitting_times(g, VertexSet::checked(targets, n));
        const auto oracle = oracle_hitting(g, targets, /*lazy=*/true);
        for (VertexId v = 0; v < n; ++v) CHECK(mine[v] == doctest::Approx(oracle[v]).epsilon(1e-8));
    }
}

TEST_CASE("simulate_local_time: K2 oracle mean and basics") {
    const MultiGraph k2 = path_graph(2);
    RngStream stream(5150, 0);
    CHECK(simulate_local_time(stream, k2, 0, 0, 0) == 1);
    CHECK(simulate_local_time(stream, k2, 1, 0, 0) == 0);

    // dense oracle: E_v N_{v,1000} = sum_t (P^t)_vv = 1 + 1000 * (1/2) = 501
    const int trajectories = 10'000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < trajectories; ++i) {
        const double visits = static_cast<double>(simulate_local_time(stream, k2, 0, 0, 1000));
        sum += visits;
        sum_sq += visits * visits;
    }
    const double mean = sum / trajectories;
    const double sd = std::sqrt((sum_sq / trajectories - mean * mean) / trajectories);
    CHECK(std::abs(mean - 501.0) < 3.0 * sd);
}

TEST_CASE("local time started elsewhere never beats the diagonal start") {
    // exact expectations via dense powers: E_u N_{v,s} <= E_v N_{v,s}
    std::mt19937_64 rng(417);
    for (int trial = 0; trial < 50; ++trial) {
        const VertexId n = 3 + static_cast<VertexId>(rng() % 10);
        const MultiGraph g = random_connected_multigraph(rng, n, static_cast<EdgeId>(rng() % 8));
        const Eigen::MatrixXd P = dense_lazy_kernel(g);
        Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
        for (int t = 0; t <= 1000; ++t) {
            acc += power;
            power = power * P;
        }
        for (VertexId v = 0; v < n; ++v)
            for (VertexId u = 0; u < n; ++u) CHECK(acc(u, v) <= acc(v, v) + 1e-9);
    }
}
