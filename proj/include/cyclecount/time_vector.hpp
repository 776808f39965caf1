#pragma once

// Times as exact non-negative integer vectors of edge-traversal counts.
// Edge lengths are linearly independent over Q, so two times are equal
// iff their vectors are equal; floating point is used only for ordering
// against a horizon, never for equality.

#include <cstdint>
#include <vector>

#include "cyclecount/errors.hpp"
#include "cyclecount/graph.hpp"

namespace cyclecount {

class TimeVector {
public:
    explicit TimeVector(std::size_t edge_count) : counts_(edge_count, 0) {}

    explicit TimeVector(std::vector<std::int32_t> counts) : counts_(std::move(counts)) {
        for (auto c : counts_)
            if (c < 0) throw ValidationError("traversal counts must be non-negative");
    }

    static TimeVector unit(std::size_t edge_count, int edge_id) {
        TimeVector v(edge_count);
        v.counts_[static_cast<std::size_t>(edge_id)] = 1;
        return v;
    }

    std::size_t size() const { return counts_.size(); }
    std::int32_t operator[](int edge_id) const {
        return counts_[static_cast<std::size_t>(edge_id)];
    }
    const std::vector<std::int32_t>& counts() const { return counts_; }

    bool is_zero() const {
        for (auto c : counts_)
            if (c != 0) return false;
        return true;
    }

    // Componentwise sum; counts are hard-capped at int32 range.
    friend TimeVector operator+(const TimeVector& a, const TimeVector& b) {
        if (a.counts_.size() != b.counts_.size())
            throw std::logic_error("time vectors over different edge sets");
        TimeVector out(a.counts_.size());
        for (std::size_t i = 0; i < a.counts_.size(); ++i) {
            std::int64_t sum = static_cast<std::int64_t>(a.counts_[i]) + b.counts_[i];
            if (sum > INT32_MAX) throw CapExceeded("edge traversal count overflow");
            out.counts_[i] = static_cast<std::int32_t>(sum);
        }
        return out;
    }

    // Sum of counts[e] * length(e), accumulated in fixed edge-id order so the
    // value is a canonical function of the vector.
    double numeric(const MetricDigraph& g) const {
        double t = 0.0;
        for (std::size_t i = 0; i < counts_.size(); ++i)
            t += static_cast<double>(counts_[i]) * g.length(static_cast<int>(i));
        return t;
    }

    bool operator==(const TimeVector& other) const { return counts_ == other.counts_; }
    bool operator<(const TimeVector& other) const { return counts_ < other.counts_; }

    std::size_t hash() const {
        std::size_t h = 1469598103934665603ull; // FNV-1a
        for (auto c : counts_) {
            h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(c));
            h *= 1099511628211ull;
        }
        return h;
    }

private:
    std::vector<std::int32_t> counts_;
};

enum class TimeComparison { Equal, Different };

// Decidable equality of times via vector identity.
inline TimeComparison compare_exact(const TimeVector& a, const TimeVector& b) {
    return a == b ? TimeComparison::Equal : TimeComparison::Different;
}

} // namespace cyclecount
