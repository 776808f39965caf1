#include "doctest.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cyclecount/cli.hpp"
#include "test_graphs.hpp"

using namespace cyclecount;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(RunConfig config) {
    std::ostringstream out, err;
    int code = run(config, out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("validate summarizes a good graph") {
    RunConfig config;
    config.command = Command::Validate;
    config.graph_path = testfix::write_temp_graph("quad", testfix::kQuad);
    CliResult r = run_cli(config);
    CHECK(r.code == 0);
    CHECK(contains(r.out, "beta: 5"));
    CHECK(contains(r.out, "hamiltonian cycle (input labels): 1 2 3 4"));

    config.format = OutputFormat::Json;
    CliResult j = run_cli(config);
    CHECK(j.code == 0);
    CHECK(contains(j.out, "\"beta\": 5"));
}

TEST_CASE("exit codes follow the error taxonomy") {
    RunConfig config;
    config.command = Command::Validate;
    config.graph_path = "definitely_missing_file.json";
    CHECK(run_cli(config).code == 2);

    config.graph_path = testfix::write_temp_graph("broken", "{ this is not json");
    CHECK(run_cli(config).code == 2);

    config.graph_path = testfix::write_temp_graph("noham", R"({
      "vertices": 3,
      "edges": [
        {"from":1,"to":2,"length":{"sqrt":2}},
        {"from":1,"to":3,"length":{"sqrt":3}},
        {"from":2,"to":1,"length":{"sqrt":5}},
        {"from":3,"to":1,"length":{"sqrt":7}}
      ]
    })");
    CliResult r = run_cli(config);
    CHECK(r.code == 3);
    CHECK(contains(r.err, "no Hamiltonian cycle"));

    // Cap exceeded paths.
    RunConfig sim;
    sim.command = Command::Simulate;
    sim.graph_path = testfix::write_temp_graph("quad", testfix::kQuad);
    sim.horizon = 50.0;
    sim.event_cap = 10;
    CHECK(run_cli(sim).code == 4);

    RunConfig coeff;
    coeff.command = Command::Coefficient;
    coeff.graph_path = sim.graph_path;
    coeff.beta_cap = 3;
    CHECK(run_cli(coeff).code == 4);

    // beta >= 2 mode rejects the pure cycle for analysis commands.
    RunConfig strict;
    strict.command = Command::Coefficient;
    strict.graph_path = testfix::write_temp_graph("cycle3", testfix::kCycle3);
    strict.min_beta = 2;
    CHECK(run_cli(strict).code == 3);
    strict.min_beta = 1;
    CHECK(run_cli(strict).code == 0);
}

TEST_CASE("check reports agreement on the two-vertex graph at T=10") {
    RunConfig config;
    config.command = Command::Check;
    config.graph_path = testfix::write_temp_graph("two_vertex", testfix::kTwoVertex);
    config.horizon = 10.0;
    CliResult r = run_cli(config);
    CHECK(r.code == 0);
    CHECK(contains(r.out, "N1=7 (both paths)"));
}

TEST_CASE("coefficient prints the quad constant") {
    RunConfig config;
    config.command = Command::Coefficient;
    config.graph_path = testfix::write_temp_graph("quad", testfix::kQuad);
    CliResult r = run_cli(config);
    CHECK(r.code == 0);
    CHECK(contains(r.out, "6.4826299"));
}

TEST_CASE("enumerate output is deterministic and sorted") {
    RunConfig config;
    config.command = Command::Enumerate;
    config.graph_path = testfix::write_temp_graph("two_vertex", testfix::kTwoVertex);
    CliResult a = run_cli(config);
    CliResult b = run_cli(config);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(contains(a.out, "|D_1| = 2"));
    CHECK(contains(a.out, "|D_2| = 1"));

    config.format = OutputFormat::Json;
    CliResult j = run_cli(config);
    CHECK(j.code == 0);
    CHECK(contains(j.out, "\"beta\": 2"));
}

TEST_CASE("simulate reports requested counts") {
    RunConfig config;
    config.command = Command::Simulate;
    config.graph_path = testfix::write_temp_graph("cycle3", testfix::kCycle3);
    config.horizon = 25.0;
    config.vertex = 2;
    config.segment = SegmentQuery{0, 0.0, 1.0};
    CliResult r = run_cli(config);
    CHECK(r.code == 0);
    CHECK(contains(r.out, "N(T): 1"));
    CHECK(contains(r.out, "N1(T): 4"));
    CHECK(contains(r.out, "N_2(T): "));
    CHECK(contains(r.out, "segment e0 [0,1): "));
}

TEST_CASE("convergence emits a well-formed strictly increasing CSV") {
    RunConfig config;
    config.command = Command::Convergence;
    config.graph_path = testfix::write_temp_graph("two_vertex", testfix::kTwoVertex);
    config.horizon = 60.0;
    config.samples = 8;
    CliResult a = run_cli(config);
    CliResult b = run_cli(config);
    CHECK(a.code == 0);
    CHECK(a.out == b.out); // byte-identical reruns

    std::istringstream lines(a.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "T,N,N1,ratio");
    int rows = 0;
    double last_t = 0.0;
    double final_ratio = 0.0;
    while (std::getline(lines, line)) {
        ++rows;
        std::istringstream row(line);
        double t;
        char comma;
        long long n, n1;
        double ratio;
        row >> t >> comma >> n >> comma >> n1 >> comma >> ratio;
        CHECK(t > last_t);
        last_t = t;
        final_ratio = ratio;
    }
    CHECK(rows == 8);

    // The last ratio is already in the right neighborhood of the coefficient:
    // n_leading = (sqrt2+sqrt3+sqrt5) * 2 * a1 with a1 = 1/(2 t(c1) t(c2)).
    double t_outer = std::sqrt(2.0) + std::sqrt(5.0);
    double t_inner = std::sqrt(2.0) + std::sqrt(3.0);
    double expected = (std::sqrt(2.0) + std::sqrt(3.0) + std::sqrt(5.0)) / (t_outer * t_inner);
    CHECK(std::fabs(final_ratio - expected) / expected < 0.3);

    config.samples = 1;
    CHECK(run_cli(config).code == 3); // needs >= 2 samples
}

TEST_CASE("convergence supports linear spacing and file output") {
    RunConfig config;
    config.command = Command::Convergence;
    config.graph_path = testfix::write_temp_graph("cycle3", testfix::kCycle3);
    config.horizon = 20.0;
    config.samples = 4;
    config.linear_spacing = true;
    CliResult r = run_cli(config);
    CHECK(r.code == 0);
    CHECK(contains(r.out, "5,")); // linear ladder hits T = 20 * 1/4

    config.output = "cyclecount_test_out.csv";
    CliResult f = run_cli(config);
    CHECK(f.code == 0);
    CHECK(f.out.empty());
    std::ifstream written(*config.output);
    std::string header;
    std::getline(written, header);
    CHECK(header == "T,N,N1,ratio");
}

TEST_CASE("missing horizon is a validation error") {
    RunConfig config;
    config.command = Command::Simulate;
    config.graph_path = testfix::write_temp_graph("cycle3", testfix::kCycle3);
    CHECK(run_cli(config).code == 3);
}
