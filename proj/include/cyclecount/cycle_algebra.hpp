#pragma once

// The set H of integer circulations, the mark/walk algorithm that splits a
// circulation into weighted cycles (sigma), the time-to-circulation map
// (omega), their composition mu, and the enumeration of complete and
// reachable cycle tuples D_1 .. D_beta.

#include <cstdint>
#include <optional>
#include <vector>

#include "cyclecount/graph.hpp"
#include "cyclecount/time_vector.hpp"

namespace cyclecount {

// Non-negative integer edge weights with flow conservation at every vertex:
// instances of this type are always conserving, construction checks it.
class Circulation {
public:
    static std::optional<Circulation> try_make(const MetricDigraph& g,
                                               std::vector<long long> weights);
    static Circulation zero(const MetricDigraph& g);
    static Circulation from_cycles(const MetricDigraph& g,
                                   const std::vector<std::pair<Cycle, long long>>& parts);

    const std::vector<long long>& weights() const { return weights_; }
    long long weight(int edge_id) const { return weights_[static_cast<std::size_t>(edge_id)]; }
    bool is_zero() const;

    bool operator==(const Circulation& other) const { return weights_ == other.weights_; }

private:
    explicit Circulation(std::vector<long long> weights) : weights_(std::move(weights)) {}
    std::vector<long long> weights_;
};

bool flow_conserving(const MetricDigraph& g, const std::vector<long long>& weights);

// Marks accumulated by the algorithm; only outer edges are ever marked.
struct MarkState {
    std::vector<char> marked;

    explicit MarkState(const MetricDigraph& g) : marked(g.edges().size(), 0) {}
    bool is_marked(int edge_id) const { return marked[static_cast<std::size_t>(edge_id)] != 0; }
    void mark(const MetricDigraph& g, int edge_id) {
        if (g.edge(edge_id).inner) throw std::logic_error("inner edges are never marked");
        marked[static_cast<std::size_t>(edge_id)] = 1;
    }
};

struct WeightedCycle {
    Cycle cycle;
    long long multiplicity = 1;

    bool operator==(const WeightedCycle& other) const {
        return multiplicity == other.multiplicity && cycle == other.cycle;
    }
};

using WeightedCycleTuple = std::vector<WeightedCycle>;
using CycleTuple = std::vector<Cycle>;

// Indicator vector of a cycle (one traversal of each of its edges).
TimeVector cycle_vector(const MetricDigraph& g, const Cycle& c);

// Sum of multiplicity * cycle_vector over the tuple; t of the tuple.
TimeVector tuple_time_vector(const MetricDigraph& g, const WeightedCycleTuple& tuple);
TimeVector tuple_time_vector(const MetricDigraph& g, const CycleTuple& tuple);

// Walk from vertex 1 along first unmarked edges until a vertex repeats.
struct WalkResult {
    Cycle cycle;
    int loop_vertex; // where the walk closed; marking traverses from here
};
WalkResult step1_walk(const MetricDigraph& g, const MarkState& marks);

// Full record of one algorithm run.
struct SplitTrace {
    WeightedCycleTuple tuple;         // zero-multiplicity cycles dropped
    int iterations = 0;               // step-1 count; always equals beta
    std::vector<long long> residual;  // weights left at termination (all zero)
};

SplitTrace sigma_split_trace(const MetricDigraph& g, const Circulation& h);
WeightedCycleTuple sigma_split(const MetricDigraph& g, const Circulation& h);

// Circulation with the given traversal counts, or nullopt when flow
// conservation fails ("not in H").
std::optional<Circulation> omega(const MetricDigraph& g, const TimeVector& counts);

// mu = sigma o omega; preserves the time vector. nullopt when not in H.
std::optional<WeightedCycleTuple> mu(const MetricDigraph& g, const TimeVector& counts);

// True when the positive-weight subgraph is connected and touches vertex 1,
// i.e. the circulation traces a closed walk through the start vertex and its
// time is an entry time of vertex 1.
bool eulerian_through_start(const MetricDigraph& g, const Circulation& h);

// All complete tuples of generated cycles (each has exactly beta cycles and
// ends with the inner cycle), deduplicated and sorted.
std::vector<CycleTuple> enumerate_complete_tuples(const MetricDigraph& g);

// D_k for k = 1..beta: subsequences s of complete tuples whose time is an
// entry time of vertex 1 and with mu(t(s)) = ((s_1,1),...,(s_k,1)).
struct ReachableTuples {
    int beta = 0;
    std::vector<std::vector<CycleTuple>> by_length; // [1..beta]; [0] unused

    const std::vector<CycleTuple>& at(int k) const {
        return by_length[static_cast<std::size_t>(k)];
    }
};

ReachableTuples enumerate_reachable_tuples(const MetricDigraph& g);

// Random non-negative integer combination of the simple cycles with
// coefficients in [0, bound]; conserving by construction.
Circulation random_circulation(const MetricDigraph& g, std::uint64_t seed, long long bound);

} // namespace cyclecount
