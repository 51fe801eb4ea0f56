#include "normlab/finite_vector.hpp"

#include <algorithm>

#include "normlab/errors.hpp"

namespace normlab {

FiniteVector FiniteVector::unit(std::uint32_t index) {
    if (index == 0) throw input_error("coordinate indices are 1-based");
    FiniteVector v;
    v.entries_.push_back({index, 1.0});
    return v;
}

FiniteVector FiniteVector::from_entries(std::vector<Entry> entries) {
    FiniteVector v;
    std::uint32_t prev = 0;
    for (const Entry& e : entries) {
        if (e.index == 0) throw input_error("coordinate indices are 1-based");
        if (e.index <= prev) throw input_error("entry indices must be strictly increasing");
        prev = e.index;
        if (e.value != 0.0) v.entries_.push_back(e);
    }
    return v;
}

FiniteVector FiniteVector::from_dense(std::span<const double> values) {
    FiniteVector v;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (values[k] != 0.0) v.entries_.push_back({static_cast<std::uint32_t>(k + 1), values[k]});
    }
    return v;
}

double FiniteVector::at(std::uint32_t index) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, std::uint32_t i) { return e.index < i; });
    return (it != entries_.end() && it->index == index) ? it->value : 0.0;
}

std::vector<double> FiniteVector::to_dense(std::size_t min_size) const {
    std::vector<double> out(std::max<std::size_t>(min_size, max_index()), 0.0);
    for (const Entry& e : entries_) out[e.index - 1] = e.value;
    return out;
}

namespace {

template <typename Combine>
FiniteVector merge(const FiniteVector& a, const FiniteVector& b, Combine combine) {
    std::vector<FiniteVector::Entry> out;
    out.reserve(a.entries().size() + b.entries().size());
    auto ia = a.entries().begin(), ea = a.entries().end();
    auto ib = b.entries().begin(), eb = b.entries().end();
    while (ia != ea || ib != eb) {
        std::uint32_t idx;
        double va = 0.0, vb = 0.0;
        if (ib == eb || (ia != ea && ia->index < ib->index)) {
            idx = ia->index;
            va = ia->value;
            ++ia;
        } else if (ia == ea || ib->index < ia->index) {
            idx = ib->index;
            vb = ib->value;
            ++ib;
        } else {
            idx = ia->index;
            va = ia->value;
            vb = ib->value;
            ++ia;
            ++ib;
        }
        double v = combine(va, vb);
        if (v != 0.0) out.push_back({idx, v});
    }
    return FiniteVector::from_entries(std::move(out));
}

}  // namespace

FiniteVector operator+(const FiniteVector& a, const FiniteVector& b) {
    return merge(a, b, [](double x, double y) { return x + y; });
}

FiniteVector operator-(const FiniteVector& a, const FiniteVector& b) {
    return merge(a, b, [](double x, double y) { return x - y; });
}

FiniteVector operator-(const FiniteVector& a) {
    return -1.0 * a;
}

FiniteVector operator*(double s, const FiniteVector& a) {
    std::vector<FiniteVector::Entry> out;
    out.reserve(a.entries().size());
    for (const auto& e : a.entries()) {
        double v = s * e.value;
        if (v != 0.0) out.push_back({e.index, v});
    }
    return FiniteVector::from_entries(std::move(out));
}

}  // namespace normlab
