#include "cyclecount/asymptotics.hpp"

#include <cmath>

namespace cyclecount {

namespace {

constexpr double kBoundaryEps = 1e-9;

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

std::vector<double> tuple_cycle_times(const MetricDigraph& g, const CycleTuple& tuple) {
    std::vector<double> times;
    times.reserve(tuple.size());
    for (const Cycle& c : tuple) times.push_back(c.time(g));
    return times;
}

} // namespace

long long count_lattice(const std::vector<double>& times, double T, bool* near_boundary) {
    for (double t : times)
        if (!(t > 0)) throw ValidationError("lattice times must be positive");
    const std::size_t k = times.size();
    if (k == 0) return 0;

    // suffix[j] = sum of times[j..): the cost of taking every remaining n = 1.
    std::vector<double> suffix(k + 1, 0.0);
    for (std::size_t j = k; j-- > 0;) suffix[j] = suffix[j + 1] + times[j];

    long long count = 0;
    auto dfs = [&](auto&& self, std::size_t j, double partial) -> void {
        for (long long n = 1;; ++n) {
            double here = partial + static_cast<double>(n) * times[j];
            double least_total = here + suffix[j + 1]; // full sum with remaining n = 1
            if (near_boundary && std::fabs(least_total - T) < kBoundaryEps)
                *near_boundary = true;
            if (least_total > T) break;
            if (j + 1 == k)
                ++count;
            else
                self(self, j + 1, here);
        }
    };
    dfs(dfs, 0, 0.0);
    return count;
}

long long n1_exact(const MetricDigraph& g, const ReachableTuples& D, double T,
                   bool* near_boundary) {
    long long total = 0;
    for (int k = 1; k <= D.beta; ++k)
        for (const CycleTuple& d : D.at(k))
            total += count_lattice(tuple_cycle_times(g, d), T, near_boundary);
    return total;
}

AsymptoticReport leading_coefficients(const MetricDigraph& g,
                                      const std::vector<CycleTuple>& d_beta) {
    if (d_beta.empty()) throw ValidationError("D_beta is empty");
    const int beta = betti(g);
    const double beta_factorial = factorial(beta);

    AsymptoticReport report;
    report.beta = beta;
    report.tuple_count = d_beta.size();

    KahanSum a1;
    for (const CycleTuple& d : d_beta) {
        if (static_cast<int>(d.size()) != beta)
            throw std::logic_error("tuple length does not match beta");
        double product = 1.0;
        for (const Cycle& c : d) product *= c.time(g);
        double term = 1.0 / (beta_factorial * product);
        report.per_tuple_terms.push_back(term);
        a1.add(term);
    }
    report.a1 = a1.sum;
    report.n_leading = g.total_length() * report.a1 * beta;
    if (d_beta.size() == 1)
        report.single_tuple_coefficient =
            sperner_coefficient(tuple_cycle_times(g, d_beta.front()), g.total_length());
    return report;
}

double sperner_coefficient(const std::vector<double>& cycle_times, double total_length) {
    if (cycle_times.empty()) throw ValidationError("need at least one cycle time");
    double product = 1.0;
    for (double t : cycle_times) {
        if (!(t > 0)) throw ValidationError("cycle times must be positive");
        product *= t;
    }
    const int beta = static_cast<int>(cycle_times.size());
    return total_length / (factorial(beta - 1) * product);
}

double reorder_invariant_sum(const MetricDigraph& g, const std::vector<CycleTuple>& d_beta) {
    KahanSum sum;
    for (const CycleTuple& d : d_beta) {
        double product = 1.0;
        for (const Cycle& c : d) product *= c.time(g);
        sum.add(1.0 / product);
    }
    return sum.sum;
}

} // namespace cyclecount
