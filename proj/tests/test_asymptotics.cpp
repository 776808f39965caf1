#include "doctest.h"

#include <cmath>
#include <random>

#include "cyclecount/asymptotics.hpp"
#include "cyclecount/simulator.hpp"
#include "oracles.hpp"
#include "test_graphs.hpp"

using namespace cyclecount;

TEST_CASE("count_lattice basics") {
    CHECK(count_lattice({2.0}, 7.0) == 3); // n in {1, 2, 3}
    double t1 = std::sqrt(2.0) + std::sqrt(5.0);
    double t2 = std::sqrt(2.0) + std::sqrt(3.0);
    CHECK(count_lattice({t1, t2}, 10.0) == 2); // (1,1) and (1,2)
    CHECK(count_lattice({t1, t2}, 1.0) == 0);  // below min(times)
    CHECK(count_lattice({3.0}, 0.0) == 0);
    CHECK_THROWS_AS(count_lattice({0.0}, 5.0), ValidationError);
}

TEST_CASE("count_lattice agrees with a grid scan and is monotone") {
    std::mt19937_64 rng(3);
    std::vector<double> pool{std::sqrt(2.0), std::sqrt(3.0), std::sqrt(5.0),
                             std::sqrt(7.0), std::sqrt(11.0)};
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t k = 1 + rng() % 3;
        std::vector<double> times;
        for (std::size_t i = 0; i < k; ++i) times.push_back(pool[rng() % pool.size()]);
        double T = static_cast<double>(rng() % 2000) / 100.0;
        CHECK(count_lattice(times, T) == oracle::grid_count(times, T));
        CHECK(count_lattice(times, T) <= count_lattice(times, T + 1.0));
    }
}

TEST_CASE("count_lattice flags sums within 1e-9 of the horizon") {
    bool near = false;
    count_lattice({2.0}, 6.0, &near);
    CHECK(near); // 3 * 2.0 sits exactly on the horizon
    near = false;
    count_lattice({2.0}, 6.5, &near);
    CHECK_FALSE(near);
}

TEST_CASE("n1_exact on the pure cycle is floor(T/L)") {
    MetricDigraph g = testfix::cycle3();
    ReachableTuples D = enumerate_reachable_tuples(g);
    double L = g.total_length();
    for (double T : {0.5, 5.4, 10.76, 16.15, 21.5, 53.82}) {
        long long expected = static_cast<long long>(std::floor(T / L));
        CHECK(n1_exact(g, D, T) == expected);
    }
}

TEST_CASE("n1_exact matches the hand sum 2+3+2 at T=10") {
    MetricDigraph g = testfix::two_vertex();
    ReachableTuples D = enumerate_reachable_tuples(g);
    CHECK(n1_exact(g, D, 10.0) == 7);
}

TEST_CASE("n1_exact equals the simulator on quad") {
    MetricDigraph g = testfix::quad();
    ReachableTuples D = enumerate_reachable_tuples(g);
    EventLog log = simulate(g, 30.0);
    for (double T : {3.0, 7.5, 12.0, 18.25, 24.0, 30.0})
        CHECK(n1_exact(g, D, T) == n_x(log, 1, T));
}

TEST_CASE("leading coefficients: pure cycle gives N(T) = 1") {
    MetricDigraph g = testfix::cycle3();
    ReachableTuples D = enumerate_reachable_tuples(g);
    AsymptoticReport report = leading_coefficients(g, D.at(1));
    CHECK(report.beta == 1);
    CHECK(report.n_leading == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("leading coefficients: two-vertex closed form") {
    MetricDigraph g = testfix::two_vertex();
    ReachableTuples D = enumerate_reachable_tuples(g);
    AsymptoticReport report = leading_coefficients(g, D.at(2));

    double t_outer = std::sqrt(2.0) + std::sqrt(5.0);
    double t_inner = std::sqrt(2.0) + std::sqrt(3.0);
    double a1 = 1.0 / (2.0 * t_outer * t_inner);
    CHECK(report.a1 == doctest::Approx(a1).epsilon(1e-14));
    double total = std::sqrt(2.0) + std::sqrt(3.0) + std::sqrt(5.0);
    CHECK(report.n_leading == doctest::Approx(total * a1 * 2).epsilon(1e-14));
    // Single complete tuple: the closed form coincides.
    REQUIRE(report.single_tuple_coefficient.has_value());
    CHECK(*report.single_tuple_coefficient == doctest::Approx(report.n_leading).epsilon(1e-12));
}

TEST_CASE("leading coefficient on quad reproduces the reference constant") {
    MetricDigraph g = testfix::quad();
    ReachableTuples D = enumerate_reachable_tuples(g);
    AsymptoticReport report = leading_coefficients(g, D.at(5));
    CHECK(report.beta == 5);
    CHECK(std::fabs(report.n_leading - 0.000064826299) / 0.000064826299 < 1e-9);

    double term_sum = 0;
    for (double t : report.per_tuple_terms) {
        CHECK(t > 0);
        term_sum += t;
    }
    CHECK(report.a1 == doctest::Approx(term_sum).epsilon(1e-14));
}

TEST_CASE("sperner closed form") {
    CHECK(sperner_coefficient({5.0}, 5.0) == doctest::Approx(1.0));
    MetricDigraph g = testfix::one_way10();
    ReachableTuples D = enumerate_reachable_tuples(g);
    REQUIRE(D.at(D.beta).size() == 1);
    AsymptoticReport report = leading_coefficients(g, D.at(D.beta));
    std::vector<double> times;
    for (const Cycle& c : D.at(D.beta)[0]) times.push_back(c.time(g));
    double direct = sperner_coefficient(times, g.total_length());
    CHECK(std::fabs(report.n_leading - direct) / direct < 1e-12);
}

TEST_CASE("coefficient sum is invariant under outer-edge reordering") {
    for (const char* doc :
         {testfix::kCycle3, testfix::kTwoVertex, testfix::kQuad, testfix::kOneWay10}) {
        MetricDigraph g = load_graph(doc);
        MetricDigraph r = with_outer_order(g, OuterOrder::DescendingHead);
        double s1 = reorder_invariant_sum(g, enumerate_reachable_tuples(g).at(betti(g)));
        double s2 = reorder_invariant_sum(r, enumerate_reachable_tuples(r).at(betti(r)));
        CHECK(std::fabs(s1 - s2) / s1 < 1e-12);
    }
}

TEST_CASE("empty D_beta is rejected") {
    MetricDigraph g = testfix::cycle3();
    CHECK_THROWS_AS(leading_coefficients(g, {}), ValidationError);
}
