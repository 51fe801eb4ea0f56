#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace normlab {

/// Finitely supported real sequence in canonical sparse form: entries sorted
/// by strictly increasing 1-based coordinate index, no stored zeros.
class FiniteVector {
public:
    struct Entry {
        std::uint32_t index;  // 1-based coordinate
        double value;

        friend bool operator==(const Entry&, const Entry&) = default;
    };

    FiniteVector() = default;

    /// e_i
    static FiniteVector unit(std::uint32_t index);

    /// Entries must have strictly increasing indices >= 1; zeros are dropped.
    static FiniteVector from_entries(std::vector<Entry> entries);

    /// Position k (0-based) becomes coordinate k+1; zeros are dropped.
    static FiniteVector from_dense(std::span<const double> values);

    const std::vector<Entry>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }
    std::size_t support_size() const { return entries_.size(); }
    std::uint32_t max_index() const { return entries_.empty() ? 0 : entries_.back().index; }

    /// Value at a coordinate (0 when outside the support).
    double at(std::uint32_t index) const;

    /// Dense copy covering at least max_index coordinates.
    std::vector<double> to_dense(std::size_t min_size = 0) const;

    friend FiniteVector operator+(const FiniteVector& a, const FiniteVector& b);
    friend FiniteVector operator-(const FiniteVector& a, const FiniteVector& b);
    friend FiniteVector operator-(const FiniteVector& a);
    friend FiniteVector operator*(double s, const FiniteVector& a);
    friend FiniteVector operator*(const FiniteVector& a, double s) { return s * a; }

    friend bool operator==(const FiniteVector&, const FiniteVector&) = default;

private:
    std::vector<Entry> entries_;
};

}  // namespace normlab
