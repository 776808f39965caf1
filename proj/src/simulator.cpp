#include "cyclecount/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cyclecount {

namespace {

constexpr double kHorizonEps = 1e-9;

// Flat event arena plus an open-addressing table that dedups events by
// (vertex, counts). Indices address the arena; the table never owns data.
struct Arena {
    int m; // edge count
    std::vector<std::int16_t> counts;
    std::vector<std::int32_t> vertices;
    std::vector<double> numerics;

    const std::int16_t* slice(std::int32_t i) const {
        return counts.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(m);
    }
    std::size_t size() const { return vertices.size(); }

    std::size_t hash_of(std::int32_t i) const {
        const std::int16_t* c = slice(i);
        std::size_t h = 1469598103934665603ull;
        for (int k = 0; k < m; ++k) {
            h ^= static_cast<std::size_t>(static_cast<std::uint16_t>(c[k]));
            h *= 1099511628211ull;
        }
        h ^= static_cast<std::size_t>(vertices[static_cast<std::size_t>(i)]);
        h *= 1099511628211ull;
        return h;
    }
    bool equal(std::int32_t a, std::int32_t b) const {
        if (vertices[static_cast<std::size_t>(a)] != vertices[static_cast<std::size_t>(b)])
            return false;
        const std::int16_t* ca = slice(a);
        const std::int16_t* cb = slice(b);
        for (int k = 0; k < m; ++k)
            if (ca[k] != cb[k]) return false;
        return true;
    }
    // Lexicographic on counts; deterministic heap tiebreak.
    bool counts_less(std::int32_t a, std::int32_t b) const {
        const std::int16_t* ca = slice(a);
        const std::int16_t* cb = slice(b);
        for (int k = 0; k < m; ++k)
            if (ca[k] != cb[k]) return ca[k] < cb[k];
        return false;
    }
};

struct DedupTable {
    std::vector<std::int32_t> slots;
    std::size_t mask;
    std::size_t used = 0;

    explicit DedupTable(std::size_t pow2) : slots(pow2, -1), mask(pow2 - 1) {}

    // Returns true if `idx` was new; grows at 70% load.
    bool insert(std::int32_t idx, const Arena& arena) {
        if ((used + 1) * 10 > slots.size() * 7) grow(arena);
        std::size_t at = arena.hash_of(idx) & mask;
        while (slots[at] >= 0) {
            if (arena.equal(slots[at], idx)) return false;
            at = (at + 1) & mask;
        }
        slots[at] = idx;
        ++used;
        return true;
    }

    void grow(const Arena& arena) {
        std::vector<std::int32_t> old = std::move(slots);
        slots.assign(old.size() * 2, -1);
        mask = slots.size() - 1;
        for (std::int32_t idx : old) {
            if (idx < 0) continue;
            std::size_t at = arena.hash_of(idx) & mask;
            while (slots[at] >= 0) at = (at + 1) & mask;
            slots[at] = idx;
        }
    }
};

} // namespace

EventLog simulate(const MetricDigraph& g, double T, const SimOptions& opt) {
    if (T < 0) throw ValidationError("horizon must be >= 0");
    const int m = g.edge_count();

    Arena arena;
    arena.m = m;
    DedupTable table(1024);
    bool near_horizon = false;

    // Min-heap on (numeric, vertex, counts): ties between distinct vectors
    // cannot occur for Q-independent lengths, but keep runs deterministic.
    auto after = [&arena](std::int32_t a, std::int32_t b) {
        std::size_t ia = static_cast<std::size_t>(a), ib = static_cast<std::size_t>(b);
        if (arena.numerics[ia] != arena.numerics[ib])
            return arena.numerics[ia] > arena.numerics[ib];
        if (arena.vertices[ia] != arena.vertices[ib])
            return arena.vertices[ia] > arena.vertices[ib];
        return arena.counts_less(b, a);
    };
    std::vector<std::int32_t> heap;

    // Seed: vertex 1 at the zero vector.
    arena.counts.assign(static_cast<std::size_t>(m), 0);
    arena.vertices.push_back(1);
    arena.numerics.push_back(0.0);
    table.insert(0, arena);
    heap.push_back(0);

    std::vector<std::int32_t> pop_order;
    while (!heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), after);
        std::int32_t idx = heap.back();
        heap.pop_back();
        pop_order.push_back(idx);

        const int vertex = arena.vertices[static_cast<std::size_t>(idx)];
        for (int e : g.out_order(vertex)) {
            // Tentatively append the successor, then dedup. Growth is manual:
            // plain reserve(size + m) would reallocate on every append.
            if (arena.counts.size() + static_cast<std::size_t>(m) > arena.counts.capacity())
                arena.counts.reserve(std::max(arena.counts.capacity() * 2,
                                              arena.counts.size() + static_cast<std::size_t>(m)));
            const std::size_t base = static_cast<std::size_t>(idx) * static_cast<std::size_t>(m);
            double numeric = 0.0;
            for (int k = 0; k < m; ++k) {
                std::int16_t c = arena.counts[base + static_cast<std::size_t>(k)];
                if (k == e) {
                    if (c == INT16_MAX) throw CapExceeded("edge traversal count overflow");
                    ++c;
                }
                arena.counts.push_back(c);
                numeric += static_cast<double>(c) * g.length(k);
            }
            if (std::fabs(numeric - T) < kHorizonEps) near_horizon = true;
            if (numeric > T) {
                arena.counts.resize(arena.counts.size() - static_cast<std::size_t>(m));
                continue;
            }
            arena.vertices.push_back(g.edge(e).head);
            arena.numerics.push_back(numeric);
            std::int32_t next = static_cast<std::int32_t>(arena.size()) - 1;
            if (!table.insert(next, arena)) {
                arena.vertices.pop_back();
                arena.numerics.pop_back();
                arena.counts.resize(arena.counts.size() - static_cast<std::size_t>(m));
                continue;
            }
            if (static_cast<long long>(arena.size()) > opt.event_cap)
                throw CapExceeded("event cap of " + std::to_string(opt.event_cap) +
                                  " exceeded; raise --event-cap or CYCLECOUNT_EVENT_CAP");
            heap.push_back(next);
            std::push_heap(heap.begin(), heap.end(), after);
        }
    }

    EventLog::Flat flat;
    flat.edge_count = m;
    flat.counts = std::move(arena.counts);
    flat.vertices = std::move(arena.vertices);
    flat.numerics = std::move(arena.numerics);
    flat.pop_order = std::move(pop_order);
    return EventLog(g, std::move(flat), T, near_horizon);
}

EventLog::EventLog(const MetricDigraph& g, Flat flat, double horizon, bool near_horizon)
    : flat_(std::move(flat)), horizon_(horizon), near_horizon_(near_horizon) {
    times_by_vertex_.assign(static_cast<std::size_t>(g.vertex_count()) + 1, {});
    for (std::size_t i = 0; i < flat_.vertices.size(); ++i)
        times_by_vertex_[static_cast<std::size_t>(flat_.vertices[i])].push_back(flat_.numerics[i]);
    for (auto& ts : times_by_vertex_) std::sort(ts.begin(), ts.end());
}

std::vector<Event> EventLog::events() const {
    std::vector<Event> out;
    out.reserve(flat_.vertices.size());
    const int m = flat_.edge_count;
    for (std::int32_t idx : flat_.pop_order) {
        std::vector<std::int32_t> counts(static_cast<std::size_t>(m));
        const std::size_t base = static_cast<std::size_t>(idx) * static_cast<std::size_t>(m);
        for (int k = 0; k < m; ++k)
            counts[static_cast<std::size_t>(k)] = flat_.counts[base + static_cast<std::size_t>(k)];
        out.push_back(Event{flat_.vertices[static_cast<std::size_t>(idx)],
                            TimeVector(std::move(counts)),
                            flat_.numerics[static_cast<std::size_t>(idx)]});
    }
    return out;
}

long long EventLog::departures_up_to(int vertex, double T) const {
    if (vertex < 1 || static_cast<std::size_t>(vertex) >= times_by_vertex_.size())
        throw ValidationError("vertex out of range");
    const auto& ts = times_by_vertex_[static_cast<std::size_t>(vertex)];
    return std::upper_bound(ts.begin(), ts.end(), T) - ts.begin();
}

long long EventLog::entries_up_to(int vertex, double T) const {
    long long count = departures_up_to(vertex, T);
    if (vertex == 1 && T >= 0) --count; // drop the departure seed
    return count;
}

long long n_x(const EventLog& log, int vertex) { return log.entries_up_to(vertex, log.horizon()); }

long long n_x(const EventLog& log, int vertex, double T) {
    if (T > log.horizon()) throw ValidationError("query beyond the simulated horizon");
    return log.entries_up_to(vertex, T);
}

long long n_total(const MetricDigraph& g, const EventLog& log, double T) {
    if (T > log.horizon()) throw ValidationError("query beyond the simulated horizon");
    long long total = 0;
    for (const Edge& e : g.edges())
        total += log.departures_up_to(e.tail, T) -
                 log.departures_up_to(e.tail, T - e.length.value);
    return total;
}

long long segment_count(const MetricDigraph& g, const EventLog& log, double T,
                        int edge_id, double r, double tau) {
    if (edge_id < 0 || edge_id >= g.edge_count()) throw ValidationError("edge id out of range");
    if (r < 0 || tau < 0 || r + tau > g.length(edge_id))
        throw ValidationError("segment out of edge bounds");
    if (T > log.horizon()) throw ValidationError("query beyond the simulated horizon");
    // A point at distance d from the edge start left the tail at T - d, so
    // d in [r, r + tau) means departures in (T - r - tau, T - r].
    int tail = g.edge(edge_id).tail;
    return log.departures_up_to(tail, T - r) - log.departures_up_to(tail, T - r - tau);
}

} // namespace cyclecount
