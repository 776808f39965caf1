#pragma once

// Exact discrete-event simulation of the point propagation system. Arrival
// events are deduplicated by (vertex, exact time vector), which is what keeps
// the log polynomial in the horizon.

#include <cstdint>
#include <vector>

#include "cyclecount/graph.hpp"
#include "cyclecount/time_vector.hpp"

namespace cyclecount {

struct Event {
    int vertex;
    TimeVector time;
    double numeric; // cached time.numeric(g)
};

struct SimOptions {
    long long event_cap = 10'000'000;
};

// Immutable record of one simulation run: every arrival event with numeric
// time <= horizon. The zero-time event at vertex 1 is the departure seed,
// not an entry. Counts are stored flat so horizons in the tens of millions
// of events stay affordable; events() materializes on demand.
class EventLog {
public:
    struct Flat {
        int edge_count = 0;
        std::vector<std::int16_t> counts;  // event i occupies [i*m, (i+1)*m)
        std::vector<std::int32_t> vertices;
        std::vector<double> numerics;
        std::vector<std::int32_t> pop_order; // ranks sorted by numeric time
    };

    EventLog(const MetricDigraph& g, Flat flat, double horizon, bool near_horizon);

    double horizon() const { return horizon_; }
    std::size_t event_count() const { return flat_.vertices.size(); }

    // All events in time order; intended for desk-scale logs.
    std::vector<Event> events() const;

    // Some produced or rejected event lies within 1e-9 of the horizon; counts
    // at this horizon sit on a jump point and deserve a warning.
    bool near_horizon() const { return near_horizon_; }

    // Entry count at `vertex` up to numeric time T (seed excluded).
    long long entries_up_to(int vertex, double T) const;

    // Departure count at `vertex` up to T (seed included).
    long long departures_up_to(int vertex, double T) const;

private:
    Flat flat_;
    double horizon_;
    bool near_horizon_;
    std::vector<std::vector<double>> times_by_vertex_; // sorted, seed included
};

EventLog simulate(const MetricDigraph& g, double T, const SimOptions& opt = {});

// Number of entry times <= T at vertex x (N_x). Defaults to the log horizon.
long long n_x(const EventLog& log, int vertex);
long long n_x(const EventLog& log, int vertex, double T);

// Number of points in flight at time T: pairs (event, outgoing edge) with
// entry <= T < entry + length. This is N(T).
long long n_total(const MetricDigraph& g, const EventLog& log, double T);

// Points on the segment [r, r + tau) of edge `e`, measured from the edge
// start, at time T. This is N_{tau,e,r}(T).
long long segment_count(const MetricDigraph& g, const EventLog& log, double T,
                        int edge_id, double r, double tau);

} // namespace cyclecount
