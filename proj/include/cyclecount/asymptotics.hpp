#pragma once

// Exact N_1(T) by lattice-point counting over the reachable tuples, and the
// closed-form leading coefficients of the counting asymptotics.

#include <optional>
#include <vector>

#include "cyclecount/cycle_algebra.hpp"
#include "cyclecount/graph.hpp"

namespace cyclecount {

// Number of integer tuples (n_1..n_k), n_j >= 1, with sum n_j*times[j] <= T.
// Bounded depth-first enumeration with partial-sum pruning; 0 when T < sum.
// `near_boundary`, when given, is set if a lattice sum lies within 1e-9 of T.
long long count_lattice(const std::vector<double>& times, double T,
                        bool* near_boundary = nullptr);

// N_1(T): sum of count_lattice over every tuple in D_1 .. D_beta.
long long n1_exact(const MetricDigraph& g, const ReachableTuples& D, double T,
                   bool* near_boundary = nullptr);

struct AsymptoticReport {
    int beta = 0;
    double a1 = 0.0;        // coefficient of T^beta in N_1
    double n_leading = 0.0; // coefficient of T^(beta-1) in N
    std::size_t tuple_count = 0;
    std::vector<double> per_tuple_terms;  // 1/(beta! * prod t(d_i)), by tuple id
    std::optional<double> single_tuple_coefficient; // set when |D_beta| = 1
};

// a1 = sum over D_beta of 1/(beta! prod t(d_i)); N(T) leading coefficient is
// (sum of edge lengths) * a1 * beta.
AsymptoticReport leading_coefficients(const MetricDigraph& g,
                                      const std::vector<CycleTuple>& d_beta);

// total_length / ((beta-1)! * prod cycle_times): the closed form for graphs
// with a single complete tuple, kept as an independent cross-check route.
double sperner_coefficient(const std::vector<double>& cycle_times, double total_length);

// sum over D_beta of 1/prod t(d_i); invariant under edge reordering.
double reorder_invariant_sum(const MetricDigraph& g, const std::vector<CycleTuple>& d_beta);

} // namespace cyclecount
