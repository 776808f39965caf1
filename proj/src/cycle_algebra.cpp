#include "cyclecount/cycle_algebra.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace cyclecount {

bool flow_conserving(const MetricDigraph& g, const std::vector<long long>& weights) {
    std::vector<long long> balance(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
    for (const Edge& e : g.edges()) {
        long long w = weights[static_cast<std::size_t>(e.id)];
        balance[static_cast<std::size_t>(e.tail)] -= w;
        balance[static_cast<std::size_t>(e.head)] += w;
    }
    for (int v = 1; v <= g.vertex_count(); ++v)
        if (balance[static_cast<std::size_t>(v)] != 0) return false;
    return true;
}

std::optional<Circulation> Circulation::try_make(const MetricDigraph& g,
                                                 std::vector<long long> weights) {
    if (weights.size() != g.edges().size())
        throw std::logic_error("weight vector size does not match edge count");
    for (long long w : weights)
        if (w < 0) return std::nullopt;
    if (!flow_conserving(g, weights)) return std::nullopt;
    return Circulation(std::move(weights));
}

Circulation Circulation::zero(const MetricDigraph& g) {
    return Circulation(std::vector<long long>(g.edges().size(), 0));
}

Circulation Circulation::from_cycles(const MetricDigraph& g,
                                     const std::vector<std::pair<Cycle, long long>>& parts) {
    std::vector<long long> weights(g.edges().size(), 0);
    for (const auto& [cycle, mult] : parts) {
        if (mult < 0) throw ValidationError("cycle multiplicity must be non-negative");
        for (int e : cycle.edge_ids()) weights[static_cast<std::size_t>(e)] += mult;
    }
    auto made = try_make(g, std::move(weights));
    if (!made) throw std::logic_error("cycle combination failed flow conservation");
    return *made;
}

bool Circulation::is_zero() const {
    for (long long w : weights_)
        if (w != 0) return false;
    return true;
}

TimeVector cycle_vector(const MetricDigraph& g, const Cycle& c) {
    TimeVector v(g.edges().size());
    for (int e : c.edge_ids()) v = v + TimeVector::unit(g.edges().size(), e);
    return v;
}

namespace {

TimeVector accumulate_tuple(const MetricDigraph& g,
                            const std::vector<std::pair<const Cycle*, long long>>& parts) {
    std::vector<long long> acc(g.edges().size(), 0);
    for (const auto& [cycle, mult] : parts)
        for (int e : cycle->edge_ids()) acc[static_cast<std::size_t>(e)] += mult;
    std::vector<std::int32_t> counts(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) {
        if (acc[i] > INT32_MAX) throw CapExceeded("edge traversal count overflow");
        counts[i] = static_cast<std::int32_t>(acc[i]);
    }
    return TimeVector(std::move(counts));
}

} // namespace

TimeVector tuple_time_vector(const MetricDigraph& g, const WeightedCycleTuple& tuple) {
    std::vector<std::pair<const Cycle*, long long>> parts;
    parts.reserve(tuple.size());
    for (const auto& wc : tuple) parts.emplace_back(&wc.cycle, wc.multiplicity);
    return accumulate_tuple(g, parts);
}

TimeVector tuple_time_vector(const MetricDigraph& g, const CycleTuple& tuple) {
    std::vector<std::pair<const Cycle*, long long>> parts;
    parts.reserve(tuple.size());
    for (const Cycle& c : tuple) parts.emplace_back(&c, 1);
    return accumulate_tuple(g, parts);
}

WalkResult step1_walk(const MetricDigraph& g, const MarkState& marks) {
    std::vector<int> first_visit(static_cast<std::size_t>(g.vertex_count()) + 1, -1);
    std::vector<int> walk_edges;
    int v = 1;
    first_visit[1] = 0;
    for (;;) {
        int chosen = -1;
        for (int e : g.out_order(v)) {
            if (!marks.is_marked(e)) {
                chosen = e;
                break;
            }
        }
        if (chosen < 0) throw std::logic_error("walk stuck: corrupted mark state");
        walk_edges.push_back(chosen);
        v = g.edge(chosen).head;
        int seen = first_visit[static_cast<std::size_t>(v)];
        if (seen >= 0) {
            // Loop portion runs from the first occurrence of v to now.
            std::vector<int> loop(walk_edges.begin() + seen, walk_edges.end());
            return WalkResult{Cycle(std::move(loop), g), v};
        }
        first_visit[static_cast<std::size_t>(v)] = static_cast<int>(walk_edges.size());
    }
}

namespace {

// Cycle edges rotated so traversal starts at `from_vertex`.
std::vector<int> rotated_edges(const MetricDigraph& g, const Cycle& c, int from_vertex) {
    const auto& edges = c.edge_ids();
    std::size_t offset = 0;
    while (offset < edges.size() && g.edge(edges[offset]).tail != from_vertex) ++offset;
    if (offset == edges.size()) throw std::logic_error("rotation vertex not on cycle");
    std::vector<int> out;
    out.reserve(edges.size());
    for (std::size_t k = 0; k < edges.size(); ++k)
        out.push_back(edges[(offset + k) % edges.size()]);
    return out;
}

} // namespace

SplitTrace sigma_split_trace(const MetricDigraph& g, const Circulation& h) {
    SplitTrace trace;
    trace.residual = h.weights();
    MarkState marks(g);

    for (;;) {
        WalkResult wr = step1_walk(g, marks);
        auto ordered = rotated_edges(g, wr.cycle, wr.loop_vertex);

        long long mult = trace.residual[static_cast<std::size_t>(ordered.front())];
        for (int e : ordered) mult = std::min(mult, trace.residual[static_cast<std::size_t>(e)]);
        for (int e : ordered) trace.residual[static_cast<std::size_t>(e)] -= mult;
        ++trace.iterations;
        if (mult > 0) trace.tuple.push_back(WeightedCycle{wr.cycle, mult});

        if (wr.cycle.is_inner()) break;

        // Mark the first zero outer edge along the cycle, traversing in walk
        // direction from the vertex where the loop closed.
        int to_mark = -1;
        for (int e : ordered) {
            if (!g.edge(e).inner && trace.residual[static_cast<std::size_t>(e)] == 0) {
                to_mark = e;
                break;
            }
        }
        if (to_mark < 0) throw std::logic_error("outer cycle with no zero outer edge");
        marks.mark(g, to_mark);
    }
    return trace;
}

WeightedCycleTuple sigma_split(const MetricDigraph& g, const Circulation& h) {
    return sigma_split_trace(g, h).tuple;
}

std::optional<Circulation> omega(const MetricDigraph& g, const TimeVector& counts) {
    std::vector<long long> weights(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        weights[i] = counts.counts()[i];
    return Circulation::try_make(g, std::move(weights));
}

std::optional<WeightedCycleTuple> mu(const MetricDigraph& g, const TimeVector& counts) {
    auto h = omega(g, counts);
    if (!h) return std::nullopt;
    return sigma_split(g, *h);
}

bool eulerian_through_start(const MetricDigraph& g, const Circulation& h) {
    std::vector<std::vector<int>> touch(static_cast<std::size_t>(g.vertex_count()) + 1);
    bool any = false;
    for (const Edge& e : g.edges()) {
        if (h.weight(e.id) > 0) {
            any = true;
            touch[static_cast<std::size_t>(e.tail)].push_back(e.head);
            touch[static_cast<std::size_t>(e.head)].push_back(e.tail);
        }
    }
    if (!any || touch[1].empty()) return false;

    // In/out sums match at every vertex (type invariant), so an Eulerian
    // circuit through vertex 1 exists iff the support is connected to it.
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
    std::vector<int> stack{1};
    seen[1] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : touch[static_cast<std::size_t>(v)]) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                stack.push_back(w);
            }
        }
    }
    for (int v = 1; v <= g.vertex_count(); ++v)
        if (!touch[static_cast<std::size_t>(v)].empty() && !seen[static_cast<std::size_t>(v)])
            return false;
    return true;
}

std::vector<CycleTuple> enumerate_complete_tuples(const MetricDigraph& g) {
    std::vector<CycleTuple> out;
    CycleTuple prefix;
    MarkState marks(g);

    auto dfs = [&](auto&& self) -> void {
        WalkResult wr = step1_walk(g, marks);
        if (wr.cycle.is_inner()) {
            CycleTuple tuple = prefix;
            tuple.push_back(wr.cycle);
            out.push_back(std::move(tuple));
            return;
        }
        prefix.push_back(wr.cycle);
        for (int v : wr.cycle.vertices(g)) {
            int first_outer = -1;
            for (int e : g.out_order(v)) {
                if (!g.edge(e).inner && !marks.is_marked(e)) {
                    first_outer = e;
                    break;
                }
            }
            if (first_outer < 0) continue;
            marks.marked[static_cast<std::size_t>(first_outer)] = 1;
            self(self);
            marks.marked[static_cast<std::size_t>(first_outer)] = 0;
        }
        prefix.pop_back();
    };
    dfs(dfs);

    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ReachableTuples enumerate_reachable_tuples(const MetricDigraph& g) {
    const int beta = betti(g);
    ReachableTuples result;
    result.beta = beta;
    result.by_length.assign(static_cast<std::size_t>(beta) + 1, {});

    auto complete = enumerate_complete_tuples(g);

    // Candidate pool: every non-empty subsequence of every complete tuple.
    std::set<CycleTuple> candidates;
    for (const CycleTuple& tuple : complete) {
        const auto size = tuple.size();
        for (std::uint64_t mask = 1; mask < (1ull << size); ++mask) {
            CycleTuple sub;
            for (std::size_t i = 0; i < size; ++i)
                if (mask & (1ull << i)) sub.push_back(tuple[i]);
            candidates.insert(std::move(sub));
        }
    }

    for (const CycleTuple& s : candidates) {
        TimeVector ts = tuple_time_vector(g, s);
        auto h = omega(g, ts);
        if (!h || !eulerian_through_start(g, *h)) continue;
        WeightedCycleTuple split = sigma_split(g, *h);
        if (split.size() != s.size()) continue;
        bool same = true;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (split[i].multiplicity != 1 || !(split[i].cycle == s[i])) {
                same = false;
                break;
            }
        }
        if (same) result.by_length[s.size()].push_back(s);
    }
    for (auto& dk : result.by_length) std::sort(dk.begin(), dk.end());
    return result;
}

Circulation random_circulation(const MetricDigraph& g, std::uint64_t seed, long long bound) {
    if (bound < 0) throw ValidationError("bound must be >= 0");
    auto cycles = simple_cycles(g);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> coeff(0, bound);
    std::vector<std::pair<Cycle, long long>> parts;
    parts.reserve(cycles.size());
    for (const Cycle& c : cycles) parts.emplace_back(c, bound == 0 ? 0 : coeff(rng));
    return Circulation::from_cycles(g, parts);
}

} // namespace cyclecount
