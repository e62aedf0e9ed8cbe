#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "plonka/algebra.hpp"

namespace plonka {

inline constexpr std::size_t kDefaultMaxUniverse = 16;

/// Universe cap for subset scans: `PLONKA_MAX_UNIVERSE` if set and valid, otherwise the default.
std::size_t max_universe_from_environment();

/// True iff `subset` is closed and every operation applied to a tuple over the whole universe
/// with at least one argument outside `subset` yields a value outside `subset`.
bool is_isolated(const Algebra& alg, ElementSet subset);

/// Isolation of `inner` relative to the subalgebra on `outer` (tuples range over `outer` only).
bool is_isolated_within(const Algebra& alg, ElementSet outer, ElementSet inner);

/// All isolated subuniverses of an algebra, ordered by inclusion.
class IsolatedFamily {
public:
    IsolatedFamily(std::shared_ptr<const Algebra> algebra, std::vector<ElementSet> members);

    const Algebra& algebra() const { return *algebra_; }
    const std::shared_ptr<const Algebra>& algebra_ptr() const { return algebra_; }

    std::size_t size() const { return members_.size(); }
    const std::vector<ElementSet>& members() const { return members_; }
    ElementSet member(std::size_t i) const { return members_.at(i); }
    std::size_t top() const { return top_; }

    bool leq(std::size_t i, std::size_t j) const { return members_[i].subset_of(members_[j]); }
    std::optional<std::size_t> index_of(ElementSet s) const;

private:
    std::shared_ptr<const Algebra> algebra_;
    std::vector<ElementSet> members_;
    std::size_t top_ = 0;
};

/// Exhaustive scan of all non-empty subsets; members sorted by (size, bitmask).
/// Throws ResourceError above `max_universe` and InputError when every operation is unary.
IsolatedFamily all_isolated(std::shared_ptr<const Algebra> alg, std::size_t max_universe = kDefaultMaxUniverse);
IsolatedFamily all_isolated(const Algebra& alg, std::size_t max_universe = kDefaultMaxUniverse);

/// Index of the intersection of all members containing members[i] ∪ members[j].
std::size_t family_join(const IsolatedFamily& fam, std::size_t i, std::size_t j);

/// Index of the intersection of the named members, or nullopt when it is empty.
std::optional<std::size_t> family_meet(const IsolatedFamily& fam, const std::vector<std::size_t>& indices);

}  // namespace plonka
