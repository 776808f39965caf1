#pragma once

// Command dispatch shared by the cyclecount binary and the CLI tests.

#include <iosfwd>
#include <optional>
#include <string>

namespace cyclecount {

enum class Command { Validate, Simulate, Enumerate, Coefficient, Convergence, Check };
enum class OutputFormat { Text, Json, Csv };

struct SegmentQuery {
    int edge_id = 0;
    double r = 0.0;
    double tau = 0.0;
};

struct RunConfig {
    Command command = Command::Validate;
    std::string graph_path;
    std::optional<double> horizon;
    std::optional<int> samples;
    std::optional<std::string> output; // convergence CSV target; stdout if unset
    OutputFormat format = OutputFormat::Text;
    long long event_cap = 10'000'000;
    int beta_cap = 12;
    int min_beta = 1;
    bool linear_spacing = false;
    std::optional<int> vertex;          // simulate: also report N_x
    std::optional<SegmentQuery> segment; // simulate: also report a segment count
};

// Exit status: 0 ok, 1 check mismatch, 2 file/parse error, 3 validation
// error, 4 cap exceeded.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace cyclecount
