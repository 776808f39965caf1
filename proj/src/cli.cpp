#include "cyclecount/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "cyclecount/asymptotics.hpp"
#include "cyclecount/cycle_algebra.hpp"
#include "cyclecount/graph.hpp"
#include "cyclecount/simulator.hpp"

namespace cyclecount {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

ordered_json cycle_json(const Cycle& c, const MetricDigraph& g) {
    ordered_json j;
    j["vertices"] = c.vertices(g);
    j["edges"] = c.edge_ids();
    return j;
}

std::string tuple_text(const CycleTuple& tuple, const MetricDigraph& g) {
    std::string out;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i) out += " ; ";
        out += to_string(tuple[i], g);
    }
    return out;
}

void emit_warnings(const MetricDigraph& g, std::ostream& err) {
    for (const auto& w : g.warnings()) err << "warning: " << w << "\n";
}

void warn_near_horizon(double T, std::ostream& err) {
    err << "warning: an event time lies within 1e-9 of T=" << fmt12(T)
        << "; the count sits on a jump point\n";
}

double require_horizon(const RunConfig& config) {
    if (!config.horizon) throw ValidationError("this command needs --T");
    if (*config.horizon < 0) throw ValidationError("horizon must be >= 0");
    return *config.horizon;
}

void check_beta_cap(const MetricDigraph& g, const RunConfig& config) {
    if (betti(g) > config.beta_cap)
        throw CapExceeded("beta = " + std::to_string(betti(g)) +
                          " exceeds --beta-cap " + std::to_string(config.beta_cap) +
                          "; enumeration cost grows as 2^beta");
}

int do_validate(const MetricDigraph& g, const RunConfig& config, std::ostream& out) {
    std::vector<int> cycle_labels;
    for (int v = 1; v <= g.vertex_count(); ++v) cycle_labels.push_back(g.original_label(v));
    if (config.format == OutputFormat::Json) {
        ordered_json j;
        j["vertices"] = g.vertex_count();
        j["edges"] = g.edge_count();
        j["beta"] = betti(g);
        j["hamiltonian_cycle"] = cycle_labels;
        j["warnings"] = g.warnings();
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "graph: valid\n";
    out << "vertices: " << g.vertex_count() << "\n";
    out << "edges: " << g.edge_count() << "\n";
    out << "beta: " << betti(g) << "\n";
    out << "hamiltonian cycle (input labels):";
    for (int v : cycle_labels) out << " " << v;
    out << "\n";
    return 0;
}

int do_simulate(const MetricDigraph& g, const RunConfig& config, std::ostream& out,
                std::ostream& err) {
    const double T = require_horizon(config);
    EventLog log = simulate(g, T, SimOptions{config.event_cap});
    if (log.near_horizon()) warn_near_horizon(T, err);

    out << "T: " << fmt12(T) << "\n";
    out << "N(T): " << n_total(g, log, T) << "\n";
    out << "N1(T): " << n_x(log, 1) << "\n";
    if (config.vertex) {
        if (*config.vertex < 1 || *config.vertex > g.vertex_count())
            throw ValidationError("vertex out of range");
        out << "N_" << *config.vertex << "(T): " << n_x(log, *config.vertex) << "\n";
    }
    if (config.segment) {
        const SegmentQuery& q = *config.segment;
        out << "segment e" << q.edge_id << " [" << fmt12(q.r) << "," << fmt12(q.r + q.tau)
            << "): " << segment_count(g, log, T, q.edge_id, q.r, q.tau) << "\n";
    }
    return 0;
}

int do_enumerate(const MetricDigraph& g, const RunConfig& config, std::ostream& out) {
    check_beta_cap(g, config);
    ReachableTuples D = enumerate_reachable_tuples(g);
    if (config.format == OutputFormat::Json) {
        ordered_json j;
        j["beta"] = D.beta;
        ordered_json sizes = ordered_json::object();
        ordered_json sets = ordered_json::object();
        for (int k = 1; k <= D.beta; ++k) {
            sizes[std::to_string(k)] = D.at(k).size();
            ordered_json list = ordered_json::array();
            for (const CycleTuple& tuple : D.at(k)) {
                ordered_json jt = ordered_json::array();
                for (const Cycle& c : tuple) jt.push_back(cycle_json(c, g));
                list.push_back(jt);
            }
            sets[std::to_string(k)] = list;
        }
        j["sizes"] = sizes;
        j["D"] = sets;
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "beta: " << D.beta << "\n";
    for (int k = 1; k <= D.beta; ++k) {
        out << "|D_" << k << "| = " << D.at(k).size() << "\n";
        for (const CycleTuple& tuple : D.at(k)) out << "  " << tuple_text(tuple, g) << "\n";
    }
    return 0;
}

int do_coefficient(const MetricDigraph& g, const RunConfig& config, std::ostream& out) {
    check_beta_cap(g, config);
    ReachableTuples D = enumerate_reachable_tuples(g);
    AsymptoticReport report = leading_coefficients(g, D.at(D.beta));
    if (config.format == OutputFormat::Json) {
        ordered_json j;
        j["beta"] = report.beta;
        j["tuple_count"] = report.tuple_count;
        j["a1"] = report.a1;
        j["n_leading"] = report.n_leading;
        j["per_tuple_terms"] = report.per_tuple_terms;
        if (report.single_tuple_coefficient)
            j["single_tuple_coefficient"] = *report.single_tuple_coefficient;
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "beta: " << report.beta << "\n";
    out << "|D_beta|: " << report.tuple_count << "\n";
    out << "a1: " << fmt12(report.a1) << "\n";
    out << "n_leading: " << fmt12(report.n_leading) << "\n";
    if (report.single_tuple_coefficient)
        out << "single-tuple coefficient: " << fmt12(*report.single_tuple_coefficient) << "\n";
    return 0;
}

int do_check(const MetricDigraph& g, const RunConfig& config, std::ostream& out,
             std::ostream& err) {
    check_beta_cap(g, config);
    const double T = require_horizon(config);
    EventLog log = simulate(g, T, SimOptions{config.event_cap});
    if (log.near_horizon()) warn_near_horizon(T, err);

    ReachableTuples D = enumerate_reachable_tuples(g);
    bool near = false;
    long long formula = n1_exact(g, D, T, &near);
    if (near) warn_near_horizon(T, err);
    long long simulated = n_x(log, 1);

    if (simulated == formula) {
        out << "N1=" << simulated << " (both paths)\n";
        return 0;
    }
    out << "mismatch: simulator N1=" << simulated << ", formula N1=" << formula << "\n";
    return 1;
}

int do_convergence(const MetricDigraph& g, const RunConfig& config, std::ostream& out,
                   std::ostream& err) {
    const double t_max = require_horizon(config);
    if (t_max <= 0) throw ValidationError("convergence needs --t-max > 0");
    const int samples = config.samples.value_or(0);
    if (samples < 2) throw ValidationError("convergence needs --samples >= 2");

    EventLog log = simulate(g, t_max, SimOptions{config.event_cap});
    if (log.near_horizon()) warn_near_horizon(t_max, err);
    const int beta = betti(g);

    std::ostringstream csv;
    csv << "T,N,N1,ratio\n";
    for (int i = 1; i <= samples; ++i) {
        double T;
        if (config.linear_spacing) {
            T = t_max * static_cast<double>(i) / samples;
        } else {
            // Geometric ladder from t_max/samples up to t_max.
            double g_ratio = std::pow(static_cast<double>(samples),
                                      1.0 / static_cast<double>(samples - 1));
            T = (t_max / samples) * std::pow(g_ratio, i - 1);
        }
        if (i == samples) T = t_max;
        long long N = n_total(g, log, T);
        long long N1 = n_x(log, 1, T);
        double ratio = static_cast<double>(N) / std::pow(T, beta - 1);
        csv << fmt12(T) << "," << N << "," << N1 << "," << fmt12(ratio) << "\n";
    }

    if (config.output) {
        std::ofstream f(*config.output, std::ios::binary);
        if (!f) throw ParseError("cannot open output file: " + *config.output);
        f << csv.str();
        err << "wrote " << samples << " rows to " << *config.output << "\n";
    } else {
        out << csv.str();
    }
    return 0;
}

} // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        MetricDigraph g = load_graph_file(config.graph_path);
        emit_warnings(g, err);
        if (config.command != Command::Validate && config.command != Command::Simulate)
            require_min_beta(g, config.min_beta);

        switch (config.command) {
            case Command::Validate: return do_validate(g, config, out);
            case Command::Simulate: return do_simulate(g, config, out, err);
            case Command::Enumerate: return do_enumerate(g, config, out);
            case Command::Coefficient: return do_coefficient(g, config, out);
            case Command::Check: return do_check(g, config, out, err);
            case Command::Convergence: return do_convergence(g, config, out, err);
        }
        return 0;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    }
}

} // namespace cyclecount
