// cyclecount: counting-function analysis of point propagation on directed
// Hamiltonian metric graphs. See the README for the graph file schema.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "cyclecount/cli.hpp"

namespace {

long long default_event_cap() {
    if (const char* env = std::getenv("CYCLECOUNT_EVENT_CAP")) {
        try {
            long long cap = std::stoll(env);
            if (cap > 0) return cap;
        } catch (...) {
        }
        std::cerr << "warning: ignoring unparsable CYCLECOUNT_EVENT_CAP\n";
    }
    return 10'000'000;
}

bool parse_segment(const std::string& text, cyclecount::SegmentQuery& q) {
    std::istringstream in(text);
    char c1 = 0, c2 = 0;
    in >> q.edge_id >> c1 >> q.r >> c2 >> q.tau;
    return in && !in.fail() && c1 == ',' && c2 == ',' && in.eof();
}

} // namespace

int main(int argc, char** argv) {
    using cyclecount::Command;
    using cyclecount::OutputFormat;
    using cyclecount::RunConfig;

    RunConfig config;
    config.event_cap = default_event_cap();

    CLI::App app{"counting functions of point propagation on directed Hamiltonian metric graphs"};
    app.require_subcommand(1);

    std::string format = "text";
    bool coefficient_json = false;
    std::string segment_text;
    double horizon = 0.0;
    int samples = 100;
    std::string output;
    int vertex = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--graph", config.graph_path, "graph JSON file")->required();
        cmd->add_option("--event-cap", config.event_cap,
                        "maximum number of simulation events");
        cmd->add_option("--beta-cap", config.beta_cap,
                        "refuse enumeration above this Betti number");
        cmd->add_option("--min-beta", config.min_beta,
                        "require beta >= this for analysis commands");
    };

    CLI::App* validate = app.add_subcommand("validate", "parse, validate and summarize a graph");
    add_common(validate);
    validate->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* simulate = app.add_subcommand("simulate", "run the dynamics up to a horizon");
    add_common(simulate);
    simulate->add_option("--T", horizon, "horizon")->required();
    simulate->add_option("--vertex", vertex, "also report N_x for this vertex");
    simulate->add_option("--segment", segment_text, "also report a segment count: e,r,tau");

    CLI::App* enumerate = app.add_subcommand("enumerate", "list reachable cycle tuples D_1..D_beta");
    add_common(enumerate);
    enumerate->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* coefficient = app.add_subcommand("coefficient", "leading asymptotic coefficients");
    add_common(coefficient);
    coefficient->add_flag("--json", coefficient_json, "emit JSON");

    CLI::App* convergence = app.add_subcommand("convergence", "CSV sweep of N(T)/T^(beta-1)");
    add_common(convergence);
    convergence->add_option("--t-max", horizon, "largest horizon")->required();
    convergence->add_option("--samples", samples, "number of rows")->capture_default_str();
    convergence->add_option("--out", output, "CSV output path (stdout if omitted)");
    convergence->add_flag("--linear", config.linear_spacing, "linear instead of geometric spacing");

    CLI::App* check = app.add_subcommand("check", "compare simulated and formula N1 exactly");
    add_common(check);
    check->add_option("--T", horizon, "horizon")->required();

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) config.command = Command::Validate;
    if (simulate->parsed()) {
        config.command = Command::Simulate;
        config.horizon = horizon;
        if (simulate->count("--vertex")) config.vertex = vertex;
        if (!segment_text.empty()) {
            cyclecount::SegmentQuery q;
            if (!parse_segment(segment_text, q)) {
                std::cerr << "error: --segment expects e,r,tau\n";
                return 3;
            }
            config.segment = q;
        }
    }
    if (enumerate->parsed()) config.command = Command::Enumerate;
    if (coefficient->parsed()) {
        config.command = Command::Coefficient;
        if (coefficient_json) format = "json";
    }
    if (convergence->parsed()) {
        config.command = Command::Convergence;
        config.horizon = horizon;
        config.samples = samples;
        if (!output.empty()) config.output = output;
        config.format = OutputFormat::Csv;
    }
    if (check->parsed()) {
        config.command = Command::Check;
        config.horizon = horizon;
    }
    if (format == "json") config.format = OutputFormat::Json;

    return cyclecount::run(config, std::cout, std::cerr);
}
