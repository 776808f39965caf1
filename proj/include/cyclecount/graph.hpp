#pragma once

// Directed Hamiltonian metric graphs: loading, validation, vertex renumbering
// so the Hamiltonian cycle reads (1, 2, ..., n), inner/outer edge
// classification and the per-vertex outgoing edge order (inner edge last).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cyclecount/errors.hpp"

namespace cyclecount {

// Edge length: either sqrt(k) for a positive square-free integer k, or a
// positive literal. sqrt-of-distinct-square-free lengths are certified
// linearly independent over Q; literals are the user's responsibility.
struct EdgeLength {
    enum class Kind { Sqrt, Literal };

    Kind kind = Kind::Literal;
    long long radicand = 0; // meaningful for Kind::Sqrt
    double value = 0.0;     // numeric evaluation, always > 0

    static EdgeLength sqrt_of(long long k);
    static EdgeLength literal(double x);
};

struct Edge {
    int id = 0;   // 0-based, file order
    int tail = 0; // vertices are 1-based after renumbering
    int head = 0;
    EdgeLength length;
    bool inner = false; // designated edge tail -> tail+1 (mod n) on the cycle
};

enum class OuterOrder {
    AscendingHead, // outer edges by ascending head id, ties by file order
    DescendingHead // exact reverse of the ascending list
};

class MetricDigraph {
public:
    // Builds from already-renumbered edge endpoints. Most callers go through
    // load_graph; tests use this to assemble graphs directly.
    MetricDigraph(int vertex_count, std::vector<Edge> edges,
                  OuterOrder order = OuterOrder::AscendingHead,
                  std::vector<int> original_labels = {});

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int start_vertex() const { return 1; }

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }
    double length(int id) const { return edges_[static_cast<std::size_t>(id)].length.value; }
    double total_length() const { return total_length_; }

    // Designated inner edge leaving vertex v.
    int inner_edge_of(int v) const { return inner_edge_of_[static_cast<std::size_t>(v)]; }
    // Outgoing edge ids of v, inner edge last.
    const std::vector<int>& out_order(int v) const { return out_order_[static_cast<std::size_t>(v)]; }

    OuterOrder outer_order() const { return order_; }

    // Label the vertex carried in the input document (before renumbering).
    int original_label(int v) const { return original_labels_[static_cast<std::size_t>(v)]; }

    // Non-fatal notes from validation (e.g. literal lengths present).
    const std::vector<std::string>& warnings() const { return warnings_; }
    void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<int> inner_edge_of_;         // [1..n]
    std::vector<std::vector<int>> out_order_; // [1..n]
    std::vector<int> original_labels_;       // [1..n] -> document label
    double total_length_ = 0.0;
    OuterOrder order_;
    std::vector<std::string> warnings_;
};

// beta = |E| - |V| + 1, the first Betti number.
int betti(const MetricDigraph& g);

// Throws ValidationError unless betti(g) >= min_beta.
void require_min_beta(const MetricDigraph& g, int min_beta);

// Same graph with the outer portion of every out_order rebuilt under the
// given policy. Inner designation is unchanged.
MetricDigraph with_outer_order(const MetricDigraph& g, OuterOrder order);

// Parses and validates a graph document (JSON, schema in the README),
// renumbers vertices so the Hamiltonian cycle is (1, ..., n) with the
// declared start vertex as 1, and fixes the edge order.
MetricDigraph load_graph(std::string_view document,
                         OuterOrder order = OuterOrder::AscendingHead);

MetricDigraph load_graph_file(const std::string& path,
                              OuterOrder order = OuterOrder::AscendingHead);

// Simple directed cycle, stored under a canonical rotation (the edge whose
// tail is the smallest vertex comes first) so equality is rotation-invariant.
class Cycle {
public:
    Cycle(std::vector<int> walk_edges, const MetricDigraph& g);

    const std::vector<int>& edge_ids() const { return edges_; }
    std::size_t size() const { return edges_.size(); }
    bool is_inner() const { return inner_; }

    // Tail vertices in canonical traversal order.
    std::vector<int> vertices(const MetricDigraph& g) const;

    double time(const MetricDigraph& g) const;

    bool operator==(const Cycle& other) const { return edges_ == other.edges_; }
    bool operator<(const Cycle& other) const { return edges_ < other.edges_; }

private:
    std::vector<int> edges_;
    bool inner_;
};

std::string to_string(const Cycle& c, const MetricDigraph& g);

// All simple directed cycles, deterministically ordered (rooted at their
// smallest vertex, lexicographic by edge ids).
std::vector<Cycle> simple_cycles(const MetricDigraph& g);

} // namespace cyclecount
