#pragma once

// Independent oracles for the differential tests. These deliberately avoid
// the library's event dedup, lattice pruning and enumeration machinery:
// brute force is the point.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "cyclecount/graph.hpp"
#include "cyclecount/time_vector.hpp"

namespace oracle {

// Every arrival event (vertex, exact time vector) reachable by any walk from
// vertex 1 within the horizon, found by exhaustive path enumeration.
// Exponential in T; keep horizons small.
inline std::set<std::pair<int, std::vector<std::int32_t>>> walk_events(
    const cyclecount::MetricDigraph& g, double T) {
    std::set<std::pair<int, std::vector<std::int32_t>>> events;
    std::vector<std::int32_t> counts(g.edges().size(), 0);

    auto dfs = [&](auto&& self, int v, double t) -> void {
        for (int e : g.out_order(v)) {
            double t2 = t + g.length(e);
            if (t2 > T) continue;
            counts[static_cast<std::size_t>(e)]++;
            events.emplace(g.edge(e).head, counts);
            self(self, g.edge(e).head, t2);
            counts[static_cast<std::size_t>(e)]--;
        }
    };
    dfs(dfs, 1, 0.0);
    return events;
}

// Distinct arrival times at vertex 1 up to T; the brute-force N_1(T).
inline long long walk_n1(const cyclecount::MetricDigraph& g, double T) {
    long long n = 0;
    for (const auto& [vertex, counts] : walk_events(g, T))
        if (vertex == 1) ++n;
    return n;
}

// Lattice count by plain nested scanning, no pruning shared with the
// implementation under test.
inline long long grid_count(const std::vector<double>& times, double T) {
    std::size_t k = times.size();
    std::vector<long long> n(k, 1);
    long long count = 0;
    auto scan = [&](auto&& self, std::size_t j) -> void {
        if (j == k) {
            double sum = 0;
            for (std::size_t i = 0; i < k; ++i) sum += static_cast<double>(n[i]) * times[i];
            if (sum <= T) ++count;
            return;
        }
        for (n[j] = 1; static_cast<double>(n[j]) * times[j] <= T; ++n[j]) self(self, j + 1);
    };
    if (k > 0) scan(scan, 0);
    return count;
}

// Rank over Q of an integer matrix, by fraction-free elimination.
inline int integer_rank(std::vector<std::vector<long long>> m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    int rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pivot = row;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[row], m[pivot]);
        for (std::size_t r = row + 1; r < rows; ++r) {
            if (m[r][col] == 0) continue;
            long long a = m[row][col], b = m[r][col];
            for (std::size_t c = 0; c < cols; ++c) m[r][c] = m[r][c] * a - m[row][c] * b;
        }
        ++row;
        ++rank;
    }
    return rank;
}

// Random Hamiltonian graph with n <= 5, |E| <= 9 and sqrt-of-distinct-prime
// lengths: the inner cycle plus a few random chords or parallels.
inline cyclecount::MetricDigraph random_hamiltonian_graph(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int n = 2 + static_cast<int>(rng() % 4u);
    const int max_extra = 9 - n;
    const int extra = static_cast<int>(rng() % static_cast<std::uint64_t>(max_extra + 1));

    std::vector<long long> primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
    std::shuffle(primes.begin(), primes.end(), rng);

    std::vector<cyclecount::Edge> edges;
    std::size_t next_prime = 0;
    auto push = [&](int tail, int head) {
        cyclecount::Edge e;
        e.tail = tail;
        e.head = head;
        e.length = cyclecount::EdgeLength::sqrt_of(primes[next_prime++]);
        edges.push_back(e);
    };
    for (int v = 1; v <= n; ++v) push(v, v % n + 1);
    for (int i = 0; i < extra; ++i) {
        int tail = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        int head = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        if (head == tail) head = tail % n + 1;
        push(tail, head);
    }
    return cyclecount::MetricDigraph(n, std::move(edges));
}

} // namespace oracle
