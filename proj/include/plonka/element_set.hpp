#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <vector>

namespace plonka {

using ElementId = std::uint32_t;

inline constexpr std::size_t kMaxUniverse = 64;

/// Subset of a universe of at most 64 elements, stored as a bitmask.
class ElementSet {
public:
    constexpr ElementSet() = default;
    constexpr explicit ElementSet(std::uint64_t mask) : mask_(mask) {}

    static constexpr ElementSet full(std::size_t n) {
        return ElementSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }
    static constexpr ElementSet single(ElementId e) { return ElementSet(std::uint64_t{1} << e); }
    static ElementSet of(const std::vector<ElementId>& ids) {
        ElementSet s;
        for (ElementId e : ids) s.insert(e);
        return s;
    }

    constexpr std::uint64_t mask() const { return mask_; }
    constexpr bool empty() const { return mask_ == 0; }
    constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask_)); }
    constexpr bool contains(ElementId e) const { return (mask_ >> e) & 1U; }
    constexpr void insert(ElementId e) { mask_ |= std::uint64_t{1} << e; }
    constexpr void erase(ElementId e) { mask_ &= ~(std::uint64_t{1} << e); }

    constexpr bool subset_of(ElementSet o) const { return (mask_ & ~o.mask_) == 0; }
    constexpr bool proper_subset_of(ElementSet o) const { return subset_of(o) && mask_ != o.mask_; }
    constexpr bool intersects(ElementSet o) const { return (mask_ & o.mask_) != 0; }

    constexpr ElementSet operator|(ElementSet o) const { return ElementSet(mask_ | o.mask_); }
    constexpr ElementSet operator&(ElementSet o) const { return ElementSet(mask_ & o.mask_); }
    constexpr ElementSet operator-(ElementSet o) const { return ElementSet(mask_ & ~o.mask_); }
    constexpr ElementSet& operator|=(ElementSet o) { mask_ |= o.mask_; return *this; }
    constexpr ElementSet& operator&=(ElementSet o) { mask_ &= o.mask_; return *this; }

    /// Smallest member; undefined on the empty set.
    constexpr ElementId first() const { return static_cast<ElementId>(std::countr_zero(mask_)); }

    /// Members in ascending order.
    std::vector<ElementId> elements() const {
        std::vector<ElementId> out;
        out.reserve(size());
        for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(static_cast<ElementId>(std::countr_zero(m)));
        return out;
    }

    /// Canonical order: by cardinality, then by bitmask.
    friend constexpr std::strong_ordering canonical_compare(ElementSet a, ElementSet b) {
        if (auto c = a.size() <=> b.size(); c != 0) return c;
        return a.mask_ <=> b.mask_;
    }

    friend constexpr bool operator==(ElementSet, ElementSet) = default;

private:
    std::uint64_t mask_ = 0;
};

}  // namespace plonka
