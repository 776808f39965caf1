#include "cyclecount/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace cyclecount {

namespace {

bool is_square_free(long long k) {
    for (long long p = 2; p * p <= k; ++p) {
        if (k % (p * p) == 0) return false;
    }
    return true;
}

} // namespace

EdgeLength EdgeLength::sqrt_of(long long k) {
    if (k <= 0) throw ValidationError("sqrt length requires a positive integer radicand");
    if (!is_square_free(k))
        throw ValidationError("radicand " + std::to_string(k) + " is not square-free");
    EdgeLength len;
    len.kind = Kind::Sqrt;
    len.radicand = k;
    len.value = std::sqrt(static_cast<double>(k));
    return len;
}

EdgeLength EdgeLength::literal(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw ValidationError("edge length must be a positive finite number");
    EdgeLength len;
    len.kind = Kind::Literal;
    len.value = x;
    return len;
}

MetricDigraph::MetricDigraph(int vertex_count, std::vector<Edge> edges,
                             OuterOrder order, std::vector<int> original_labels)
    : n_(vertex_count), edges_(std::move(edges)), order_(order) {
    if (n_ < 2) throw ValidationError("graph needs at least 2 vertices");
    if (original_labels.empty()) {
        original_labels_.resize(static_cast<std::size_t>(n_) + 1);
        for (int v = 1; v <= n_; ++v) original_labels_[static_cast<std::size_t>(v)] = v;
    } else {
        if (original_labels.size() != static_cast<std::size_t>(n_) + 1)
            throw ValidationError("original label table has the wrong size");
        original_labels_ = std::move(original_labels);
    }

    for (std::size_t i = 0; i < edges_.size(); ++i) {
        Edge& e = edges_[i];
        e.id = static_cast<int>(i);
        e.inner = false;
        if (e.tail < 1 || e.tail > n_ || e.head < 1 || e.head > n_)
            throw ValidationError("edge endpoint out of range");
        if (e.tail == e.head) throw ValidationError("self-loops are not supported");
        total_length_ += e.length.value;
    }

    // Designate inner edges: for each vertex i the earliest file edge
    // i -> i+1 (n -> 1). Parallel candidates beyond the first stay outer.
    inner_edge_of_.assign(static_cast<std::size_t>(n_) + 1, -1);
    for (const Edge& e : edges_) {
        int next = e.tail % n_ + 1;
        if (e.head == next && inner_edge_of_[static_cast<std::size_t>(e.tail)] < 0)
            inner_edge_of_[static_cast<std::size_t>(e.tail)] = e.id;
    }
    for (int v = 1; v <= n_; ++v) {
        int id = inner_edge_of_[static_cast<std::size_t>(v)];
        if (id < 0)
            throw ValidationError("vertices are not numbered along a Hamiltonian cycle: no edge " +
                                  std::to_string(v) + " -> " + std::to_string(v % n_ + 1));
        edges_[static_cast<std::size_t>(id)].inner = true;
    }

    // Outgoing order: outer edges under the policy, inner edge last.
    out_order_.assign(static_cast<std::size_t>(n_) + 1, {});
    for (const Edge& e : edges_)
        if (!e.inner) out_order_[static_cast<std::size_t>(e.tail)].push_back(e.id);
    for (int v = 1; v <= n_; ++v) {
        auto& order_v = out_order_[static_cast<std::size_t>(v)];
        std::sort(order_v.begin(), order_v.end(), [&](int a, int b) {
            const Edge& ea = edges_[static_cast<std::size_t>(a)];
            const Edge& eb = edges_[static_cast<std::size_t>(b)];
            if (ea.head != eb.head) return ea.head < eb.head;
            return ea.id < eb.id;
        });
        if (order_ == OuterOrder::DescendingHead)
            std::reverse(order_v.begin(), order_v.end());
        order_v.push_back(inner_edge_of_[static_cast<std::size_t>(v)]);
    }

    // Linear independence of lengths: pairwise-distinct square-free radicands
    // are certified; anything involving literals is the user's responsibility.
    std::set<long long> radicands;
    std::set<double> literal_values;
    bool any_literal = false;
    for (const Edge& e : edges_) {
        if (e.length.kind == EdgeLength::Kind::Sqrt) {
            if (!radicands.insert(e.length.radicand).second)
                throw ValidationError("duplicate radicand sqrt(" +
                                      std::to_string(e.length.radicand) +
                                      "): lengths are rationally dependent");
        } else {
            any_literal = true;
            if (!literal_values.insert(e.length.value).second)
                throw ValidationError("two edges share the literal length " +
                                      std::to_string(e.length.value) +
                                      ": lengths are rationally dependent");
        }
    }
    if (any_literal)
        warnings_.push_back("literal edge lengths present: linear independence over Q "
                            "is not certified and is the caller's responsibility");
}

int betti(const MetricDigraph& g) {
    return g.edge_count() - g.vertex_count() + 1;
}

void require_min_beta(const MetricDigraph& g, int min_beta) {
    if (betti(g) < min_beta)
        throw ValidationError("graph has beta = " + std::to_string(betti(g)) +
                              ", but beta >= " + std::to_string(min_beta) + " was requested");
}

MetricDigraph with_outer_order(const MetricDigraph& g, OuterOrder order) {
    std::vector<int> labels(static_cast<std::size_t>(g.vertex_count()) + 1);
    for (int v = 1; v <= g.vertex_count(); ++v)
        labels[static_cast<std::size_t>(v)] = g.original_label(v);
    return MetricDigraph(g.vertex_count(), g.edges(), order, std::move(labels));
}

namespace {

// Lexicographically smallest Hamiltonian cycle starting at `start`, found by
// backtracking that tries neighbors in ascending order. Desk-scale graphs
// keep the exponential worst case irrelevant.
std::optional<std::vector<int>> find_hamiltonian_cycle(
    int n, int start, const std::vector<std::vector<int>>& adj) {
    std::vector<int> path{start};
    std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
    used[static_cast<std::size_t>(start)] = 1;

    auto edge_exists = [&](int u, int w) {
        const auto& row = adj[static_cast<std::size_t>(u)];
        return std::binary_search(row.begin(), row.end(), w);
    };

    std::optional<std::vector<int>> found;
    auto dfs = [&](auto&& self, int v) -> bool {
        if (static_cast<int>(path.size()) == n)
            return edge_exists(v, start);
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (used[static_cast<std::size_t>(w)]) continue;
            used[static_cast<std::size_t>(w)] = 1;
            path.push_back(w);
            if (self(self, w)) return true;
            path.pop_back();
            used[static_cast<std::size_t>(w)] = 0;
        }
        return false;
    };
    if (dfs(dfs, start)) found = path;
    return found;
}

using nlohmann::json;

EdgeLength parse_length(const json& j) {
    if (!j.is_object() || j.size() != 1)
        throw ParseError("length must be exactly one of {\"sqrt\": k} or {\"value\": x}");
    if (j.contains("sqrt")) {
        const auto& k = j.at("sqrt");
        if (!k.is_number_integer() || k.get<long long>() <= 0)
            throw ParseError("\"sqrt\" takes a positive integer");
        return EdgeLength::sqrt_of(k.get<long long>());
    }
    if (j.contains("value")) {
        const auto& x = j.at("value");
        if (!x.is_number()) throw ParseError("\"value\" takes a positive number");
        return EdgeLength::literal(x.get<double>());
    }
    throw ParseError("length must be exactly one of {\"sqrt\": k} or {\"value\": x}");
}

} // namespace

MetricDigraph load_graph(std::string_view document, OuterOrder order) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges"))
        throw ParseError("graph document needs \"vertices\" and \"edges\"");
    if (!doc.at("vertices").is_number_integer())
        throw ParseError("\"vertices\" must be an integer");
    const int n = doc.at("vertices").get<int>();
    if (n < 2) throw ValidationError("graph needs at least 2 vertices");

    int start = 1;
    if (doc.contains("start")) {
        if (!doc.at("start").is_number_integer()) throw ParseError("\"start\" must be an integer");
        start = doc.at("start").get<int>();
        if (start < 1 || start > n) throw ValidationError("start vertex out of range");
    }

    struct RawEdge {
        int from, to;
        EdgeLength length;
    };
    std::vector<RawEdge> raw;
    if (!doc.at("edges").is_array()) throw ParseError("\"edges\" must be an array");
    for (const auto& je : doc.at("edges")) {
        if (!je.is_object() || !je.contains("from") || !je.contains("to") || !je.contains("length"))
            throw ParseError("each edge needs \"from\", \"to\" and \"length\"");
        if (!je.at("from").is_number_integer() || !je.at("to").is_number_integer())
            throw ParseError("edge endpoints must be integers");
        RawEdge e{je.at("from").get<int>(), je.at("to").get<int>(), parse_length(je.at("length"))};
        if (e.from < 1 || e.from > n || e.to < 1 || e.to > n)
            throw ValidationError("edge endpoint out of range");
        if (e.from == e.to) throw ValidationError("self-loops are not supported");
        raw.push_back(e);
    }

    // Collapse parallel edges into a sorted adjacency for the cycle search.
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) + 1);
    for (const RawEdge& e : raw) adj[static_cast<std::size_t>(e.from)].push_back(e.to);
    for (auto& row : adj) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }

    std::vector<int> cycle;
    if (doc.contains("hamiltonian_cycle")) {
        if (!doc.at("hamiltonian_cycle").is_array())
            throw ParseError("\"hamiltonian_cycle\" must be an array of vertex ids");
        cycle = doc.at("hamiltonian_cycle").get<std::vector<int>>();
        if (static_cast<int>(cycle.size()) != n)
            throw ValidationError("declared Hamiltonian cycle must list every vertex once");
        std::unordered_set<int> seen;
        for (int v : cycle) {
            if (v < 1 || v > n || !seen.insert(v).second)
                throw ValidationError("declared Hamiltonian cycle must list every vertex once");
        }
        auto it = std::find(cycle.begin(), cycle.end(), start);
        std::rotate(cycle.begin(), it, cycle.end());
        for (int i = 0; i < n; ++i) {
            int u = cycle[static_cast<std::size_t>(i)];
            int w = cycle[static_cast<std::size_t>((i + 1) % n)];
            const auto& row = adj[static_cast<std::size_t>(u)];
            if (!std::binary_search(row.begin(), row.end(), w))
                throw ValidationError("declared Hamiltonian cycle uses missing edge " +
                                      std::to_string(u) + " -> " + std::to_string(w));
        }
    } else {
        auto found = find_hamiltonian_cycle(n, start, adj);
        if (!found) throw ValidationError("no Hamiltonian cycle");
        cycle = *found;
    }

    // Renumber so the cycle reads (1, ..., n) with the start vertex as 1.
    std::vector<int> new_id(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> labels(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i) {
        new_id[static_cast<std::size_t>(cycle[static_cast<std::size_t>(i)])] = i + 1;
        labels[static_cast<std::size_t>(i + 1)] = cycle[static_cast<std::size_t>(i)];
    }
    std::vector<Edge> edges;
    edges.reserve(raw.size());
    for (const RawEdge& e : raw) {
        Edge out;
        out.tail = new_id[static_cast<std::size_t>(e.from)];
        out.head = new_id[static_cast<std::size_t>(e.to)];
        out.length = e.length;
        edges.push_back(out);
    }
    return MetricDigraph(n, std::move(edges), order, std::move(labels));
}

MetricDigraph load_graph_file(const std::string& path, OuterOrder order) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open graph file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_graph(buf.str(), order);
}

Cycle::Cycle(std::vector<int> walk_edges, const MetricDigraph& g) : edges_(std::move(walk_edges)) {
    if (edges_.empty()) throw std::logic_error("cycle needs at least one edge");
    inner_ = true;
    std::unordered_set<int> tails;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = g.edge(edges_[i]);
        const Edge& next = g.edge(edges_[(i + 1) % edges_.size()]);
        if (e.head != next.tail) throw std::logic_error("cycle edges do not chain");
        if (!tails.insert(e.tail).second) throw std::logic_error("cycle repeats a vertex");
        if (!e.inner) inner_ = false;
    }
    // Canonical rotation: edge with the smallest tail first.
    std::size_t best = 0;
    for (std::size_t i = 1; i < edges_.size(); ++i)
        if (g.edge(edges_[i]).tail < g.edge(edges_[best]).tail) best = i;
    std::rotate(edges_.begin(), edges_.begin() + static_cast<std::ptrdiff_t>(best), edges_.end());
}

std::vector<int> Cycle::vertices(const MetricDigraph& g) const {
    std::vector<int> out;
    out.reserve(edges_.size());
    for (int id : edges_) out.push_back(g.edge(id).tail);
    return out;
}

double Cycle::time(const MetricDigraph& g) const {
    double t = 0.0;
    for (int id : edges_) t += g.length(id);
    return t;
}

std::string to_string(const Cycle& c, const MetricDigraph& g) {
    std::ostringstream out;
    auto verts = c.vertices(g);
    for (int v : verts) out << v << "->";
    out << verts.front() << " [";
    for (std::size_t i = 0; i < c.edge_ids().size(); ++i) {
        if (i) out << ",";
        out << "e" << c.edge_ids()[i];
    }
    out << "]";
    return out.str();
}

std::vector<Cycle> simple_cycles(const MetricDigraph& g) {
    std::vector<Cycle> cycles;
    const int n = g.vertex_count();
    // Adjacency by ascending edge id so the enumeration order is stable.
    std::vector<std::vector<int>> out_edges(static_cast<std::size_t>(n) + 1);
    for (const Edge& e : g.edges()) out_edges[static_cast<std::size_t>(e.tail)].push_back(e.id);

    std::vector<int> path;
    std::vector<char> on_path(static_cast<std::size_t>(n) + 1, 0);
    // Cycles are rooted at their smallest vertex; only vertices > root are
    // allowed inside, so each cycle appears exactly once.
    auto dfs = [&](auto&& self, int root, int v) -> void {
        for (int id : out_edges[static_cast<std::size_t>(v)]) {
            const Edge& e = g.edge(id);
            if (e.head == root) {
                path.push_back(id);
                cycles.emplace_back(path, g);
                path.pop_back();
            } else if (e.head > root && !on_path[static_cast<std::size_t>(e.head)]) {
                on_path[static_cast<std::size_t>(e.head)] = 1;
                path.push_back(id);
                self(self, root, e.head);
                path.pop_back();
                on_path[static_cast<std::size_t>(e.head)] = 0;
            }
        }
    };
    for (int root = 1; root <= n; ++root) {
        on_path[static_cast<std::size_t>(root)] = 1;
        dfs(dfs, root, root);
        on_path[static_cast<std::size_t>(root)] = 0;
    }
    std::sort(cycles.begin(), cycles.end());
    return cycles;
}

} // namespace cyclecount
