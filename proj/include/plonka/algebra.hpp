#pragma once

#include <bit>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "plonka/element_set.hpp"

namespace plonka {

inline constexpr unsigned kDefaultMaxArity = 3;

/// Total operation on a universe of `universe_size` elements.
/// The table is row-major: the first argument is the most significant digit.
struct Operation {
    std::string name;
    unsigned arity = 0;
    std::size_t universe_size = 0;
    std::vector<ElementId> table;

    ElementId apply(const ElementId* args) const {
        std::size_t idx = 0;
        for (unsigned k = 0; k < arity; ++k) idx = idx * universe_size + args[k];
        return table[idx];
    }
    ElementId apply(std::span<const ElementId> args) const { return apply(args.data()); }

    bool operator==(const Operation&) const = default;
};

using Signature = std::vector<std::pair<std::string, unsigned>>;

/// A finite algebra given by its operation tables. Immutable after construction.
class Algebra {
public:
    /// Validates totality, closure, name uniqueness and arity bounds; throws InputError.
    Algebra(std::string name, std::vector<std::string> element_names, std::vector<Operation> operations,
            unsigned max_arity = kDefaultMaxArity);

    const std::string& name() const { return name_; }
    std::size_t size() const { return element_names_.size(); }
    ElementSet universe() const { return ElementSet::full(size()); }

    const std::vector<std::string>& element_names() const { return element_names_; }
    const std::string& element_name(ElementId e) const { return element_names_.at(e); }
    std::optional<ElementId> find_element(std::string_view name) const;

    const std::vector<Operation>& operations() const { return operations_; }
    const Operation& operation(std::size_t k) const { return operations_[k]; }
    std::size_t operation_count() const { return operations_.size(); }

    Signature signature() const;
    bool similar_to(const Algebra& other) const { return signature() == other.signature(); }

    /// True iff some operation has arity at least two.
    bool has_nonunary_operation() const;

    /// Checked table lookup; throws InputError on bad index, arity or id.
    ElementId evaluate(std::size_t op_index, std::span<const ElementId> args) const;

    /// Same tables under a different name.
    Algebra renamed(std::string name) const;

    /// Element-for-element equality of the element names and all tables (algebra names are ignored).
    bool same_tables(const Algebra& other) const {
        return element_names_ == other.element_names_ && operations_ == other.operations_;
    }

    bool operator==(const Algebra&) const = default;

private:
    std::string name_;
    std::vector<std::string> element_names_;
    std::vector<Operation> operations_;
};

/// Calls `fn(std::span<const ElementId>)` for every tuple in pool^arity, in lexicographic order.
/// `fn` may return false to stop early; the function then returns false.
template <typename Fn>
bool for_each_tuple(std::span<const ElementId> pool, unsigned arity, Fn&& fn) {
    if (pool.empty()) return true;
    std::vector<std::size_t> digit(arity, 0);
    std::vector<ElementId> tuple(arity, pool[0]);
    for (;;) {
        if constexpr (std::is_same_v<decltype(fn(std::span<const ElementId>(tuple))), bool>) {
            if (!fn(std::span<const ElementId>(tuple))) return false;
        } else {
            fn(std::span<const ElementId>(tuple));
        }
        unsigned k = arity;
        while (k > 0) {
            --k;
            if (++digit[k] < pool.size()) {
                tuple[k] = pool[digit[k]];
                break;
            }
            digit[k] = 0;
            tuple[k] = pool[0];
            if (k == 0) return true;
        }
        if (arity == 0) return true;
    }
}

bool is_closed(const Algebra& alg, ElementSet subset);

/// Least superset of `seed` closed under every operation.
ElementSet closure(const Algebra& alg, ElementSet seed);

/// The subalgebra on a closed subset. Element names are kept; ids are renumbered in ascending order.
Algebra restrict(const Algebra& alg, ElementSet subset, std::string name = {});

/// Position of `e` among the members of `subset` in ascending order.
inline std::size_t rank_in(ElementSet subset, ElementId e) {
    return static_cast<std::size_t>(std::popcount(subset.mask() & ((std::uint64_t{1} << e) - 1)));
}

/// Total map from a source set to a target set, stored densely over the source universe.
class ElementMap {
public:
    static constexpr ElementId kUnmapped = ~ElementId{0};

    ElementMap() = default;
    ElementMap(std::size_t source_universe, ElementSet domain)
        : image_(source_universe, kUnmapped), domain_(domain) {}

    static ElementMap identity(std::size_t source_universe, ElementSet domain);

    ElementSet domain() const { return domain_; }
    std::size_t source_universe() const { return image_.size(); }
    ElementId operator()(ElementId e) const { return image_[e]; }
    void set(ElementId source, ElementId target) { image_[source] = target; }
    ElementSet range() const;
    bool is_identity() const;

    /// (after ∘ *this): apply this map, then `after`.
    ElementMap then(const ElementMap& after) const;

    /// Pairs (source, target) in ascending source order.
    std::vector<std::pair<ElementId, ElementId>> pairs() const;

    friend bool operator==(const ElementMap& a, const ElementMap& b) {
        return a.domain_ == b.domain_ && a.image_ == b.image_;
    }
    /// Lexicographic on the images listed in ascending source order.
    friend bool operator<(const ElementMap& a, const ElementMap& b) { return a.image_ < b.image_; }

private:
    std::vector<ElementId> image_;
    ElementSet domain_;
};

/// True iff `map` (defined on src_set, landing in dst_set) commutes with every operation.
bool is_homomorphism(const Algebra& src_alg, ElementSet src_set, const Algebra& dst_alg, ElementSet dst_set,
                     const ElementMap& map);

/// All homomorphisms from the subalgebra on `src_set` of `src_alg` to the subalgebra on `dst_set`
/// of `dst_alg`, in lexicographic order. Both sets must be closed and the algebras similar.
std::vector<ElementMap> enumerate_homomorphisms(const Algebra& src_alg, ElementSet src_set, const Algebra& dst_alg,
                                                ElementSet dst_set);

/// Homomorphisms between two closed subsets of the same algebra.
inline std::vector<ElementMap> enumerate_homomorphisms(const Algebra& alg, ElementSet src, ElementSet dst) {
    return enumerate_homomorphisms(alg, src, alg, dst);
}

}  // namespace plonka
