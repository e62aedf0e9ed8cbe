#include "plonka/isolation.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "plonka/error.hpp"

namespace plonka {

std::size_t max_universe_from_environment() {
    const char* raw = std::getenv("PLONKA_MAX_UNIVERSE");
    if (raw == nullptr || *raw == '\0') return kDefaultMaxUniverse;
    char* end = nullptr;
    unsigned long value = std::strtoul(raw, &end, 10);
    if (*end != '\0' || value == 0) return kDefaultMaxUniverse;
    return std::min<std::size_t>(value, kMaxUniverse);
}

namespace {

bool isolated_over(const Algebra& alg, ElementSet ambient, ElementSet subset) {
    const auto pool = ambient.elements();
    for (const auto& op : alg.operations()) {
        bool ok = for_each_tuple(pool, op.arity, [&](std::span<const ElementId> t) {
            const bool inside = subset.contains(op.apply(t));
            bool all_in = true;
            for (ElementId a : t) all_in = all_in && subset.contains(a);
            // Closed on the subset, and any outsider argument forces an outside value.
            return all_in ? inside : !inside;
        });
        if (!ok) return false;
    }
    return true;
}

}  // namespace

bool is_isolated(const Algebra& alg, ElementSet subset) {
    if (subset.empty()) throw InputError("isolation test on an empty set");
    if (!subset.subset_of(alg.universe())) throw InputError("set is not contained in the universe");
    return isolated_over(alg, alg.universe(), subset);
}

bool is_isolated_within(const Algebra& alg, ElementSet outer, ElementSet inner) {
    if (inner.empty()) throw InputError("isolation test on an empty set");
    if (!inner.subset_of(outer)) return false;
    if (!is_closed(alg, outer)) throw InputError("outer set is not closed");
    return isolated_over(alg, outer, inner);
}

IsolatedFamily::IsolatedFamily(std::shared_ptr<const Algebra> algebra, std::vector<ElementSet> members)
    : algebra_(std::move(algebra)), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end(), [](ElementSet a, ElementSet b) { return canonical_compare(a, b) < 0; });
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    auto top = index_of(algebra_->universe());
    if (!top) throw DefectError("isolated family does not contain the full universe");
    top_ = *top;
}

std::optional<std::size_t> IsolatedFamily::index_of(ElementSet s) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), s,
                               [](ElementSet a, ElementSet b) { return canonical_compare(a, b) < 0; });
    if (it == members_.end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - members_.begin());
}

IsolatedFamily all_isolated(std::shared_ptr<const Algebra> alg, std::size_t max_universe) {
    if (!alg->has_nonunary_operation())
        throw InputError("algebra '" + alg->name() +
                         "' has no operation of arity at least 2; decomposition requires one");
    const std::size_t n = alg->size();
    if (n > max_universe)
        throw ResourceError("universe of " + std::to_string(n) + " elements exceeds the cap of " +
                            std::to_string(max_universe) + " for the scan over all 2^" + std::to_string(n) +
                            " subsets (raise --max-universe or PLONKA_MAX_UNIVERSE)");
    std::vector<ElementSet> members;
    const std::uint64_t limit = ElementSet::full(n).mask();
    for (std::uint64_t mask = 1;; ++mask) {
        ElementSet s(mask);
        if (is_closed(*alg, s) && is_isolated(*alg, s)) members.push_back(s);
        if (mask == limit) break;
    }
    return IsolatedFamily(std::move(alg), std::move(members));
}

IsolatedFamily all_isolated(const Algebra& alg, std::size_t max_universe) {
    return all_isolated(std::make_shared<const Algebra>(alg), max_universe);
}

std::size_t family_join(const IsolatedFamily& fam, std::size_t i, std::size_t j) {
    if (i >= fam.size() || j >= fam.size()) throw InputError("family index out of range");
    const ElementSet both = fam.member(i) | fam.member(j);
    ElementSet meet = fam.algebra().universe();
    for (ElementSet m : fam.members())
        if (both.subset_of(m)) meet &= m;
    auto idx = fam.index_of(meet);
    if (!idx) throw DefectError("intersection of isolated supersets is not isolated");
    return *idx;
}

std::optional<std::size_t> family_meet(const IsolatedFamily& fam, const std::vector<std::size_t>& indices) {
    if (indices.empty()) throw InputError("meet of an empty list of members");
    ElementSet meet = fam.algebra().universe();
    for (std::size_t i : indices) {
        if (i >= fam.size()) throw InputError("family index out of range");
        meet &= fam.member(i);
    }
    if (meet.empty()) return std::nullopt;
    auto idx = fam.index_of(meet);
    if (!idx) throw DefectError("non-empty intersection of isolated members is not isolated");
    return idx;
}

}  // namespace plonka
