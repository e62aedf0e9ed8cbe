#pragma once

#include <optional>
#include <vector>

#include "plonka/frames.hpp"

namespace plonka {

/// A Płonka homomorphism between the complements at frame positions src ≤ dst.
struct PHom {
    std::size_t src = 0;
    std::size_t dst = 0;
    ElementMap map;
    bool verified = false;

    friend bool operator==(const PHom& a, const PHom& b) {
        return a.src == b.src && a.dst == b.dst && a.map == b.map;
    }
};

/// A tuple on which the extended map changes an operation value that lies at or above the target.
struct PViolation {
    std::size_t op = 0;
    std::vector<ElementId> args;
    ElementId value = 0;         ///< F(args)
    ElementId mapped_value = 0;  ///< F(f_φ(args))
};

/// f_φ: φ on its domain, identity elsewhere; the result is total on the universe.
ElementMap extend(const ElementMap& phi, std::size_t universe_size);

/// First tuple (op-major, lexicographic) breaking the Płonka condition for φ from complement `src`
/// to complement `dst`, or nullopt. Throws InputError if src ≰ dst or φ is not a homomorphism
/// between the two complement algebras.
std::optional<PViolation> p_violation(const Frame& frame, std::size_t src, std::size_t dst, const ElementMap& phi);

/// Every breaking tuple in the same order, up to `limit` of them.
std::vector<PViolation> p_violations(const Frame& frame, std::size_t src, std::size_t dst, const ElementMap& phi,
                                     std::size_t limit = static_cast<std::size_t>(-1));

bool is_p_homomorphism(const Frame& frame, std::size_t src, std::size_t dst, const ElementMap& phi);

/// All Płonka homomorphisms from complement `src` to complement `dst`, in lexicographic map order.
std::vector<PHom> enumerate_phoms(const Frame& frame, std::size_t src, std::size_t dst);

/// Outcome of the homomorphism search for one comparable pair of a frame.
struct PairAnalysis {
    std::size_t src = 0;
    std::size_t dst = 0;
    std::size_t plain_count = 0;
    std::vector<PHom> phoms;
    /// First plain homomorphism rejected by the Płonka condition, with its witness.
    std::optional<std::pair<ElementMap, PViolation>> first_rejected;
};

PairAnalysis analyze_pair(const Frame& frame, std::size_t src, std::size_t dst);

/// Applies `first` (src → mid), then `second` (mid → dst). The composite is re-verified.
PHom compose_phoms(const Frame& frame, const PHom& first, const PHom& second);

}  // namespace plonka
