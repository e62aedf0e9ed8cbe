#include "plonka/algebra.hpp"

#include <algorithm>
#include <set>

#include "plonka/error.hpp"

namespace plonka {

Algebra::Algebra(std::string name, std::vector<std::string> element_names, std::vector<Operation> operations,
                 unsigned max_arity)
    : name_(std::move(name)), element_names_(std::move(element_names)), operations_(std::move(operations)) {
    const std::size_t n = element_names_.size();
    if (n == 0) throw InputError("algebra '" + name_ + "': universe is empty");
    if (n > kMaxUniverse)
        throw InputError("algebra '" + name_ + "': universe has " + std::to_string(n) + " elements, at most " +
                         std::to_string(kMaxUniverse) + " are supported");
    std::set<std::string_view> seen;
    for (const auto& e : element_names_) {
        if (e.empty()) throw InputError("algebra '" + name_ + "': empty element name");
        if (!seen.insert(e).second) throw InputError("algebra '" + name_ + "': duplicate element name '" + e + "'");
    }
    std::set<std::string_view> op_names;
    for (const auto& op : operations_) {
        if (!op_names.insert(op.name).second)
            throw InputError("algebra '" + name_ + "': duplicate operation name '" + op.name + "'");
        if (op.arity < 1)
            throw InputError("algebra '" + name_ + "': operation '" + op.name + "' has arity 0; constants are not supported");
        if (op.arity > max_arity)
            throw InputError("algebra '" + name_ + "': operation '" + op.name + "' has arity " + std::to_string(op.arity) +
                             ", maximum is " + std::to_string(max_arity));
        if (op.universe_size != n)
            throw InputError("algebra '" + name_ + "': operation '" + op.name + "' is defined over a universe of the wrong size");
        std::size_t expected = 1;
        for (unsigned k = 0; k < op.arity; ++k) expected *= n;
        if (op.table.size() != expected)
            throw InputError("algebra '" + name_ + "': operation '" + op.name + "' table has " +
                             std::to_string(op.table.size()) + " entries, expected " + std::to_string(expected));
        for (ElementId v : op.table)
            if (v >= n) throw InputError("algebra '" + name_ + "': operation '" + op.name + "' yields an element id out of range");
    }
}

std::optional<ElementId> Algebra::find_element(std::string_view name) const {
    auto it = std::find(element_names_.begin(), element_names_.end(), name);
    if (it == element_names_.end()) return std::nullopt;
    return static_cast<ElementId>(it - element_names_.begin());
}

Signature Algebra::signature() const {
    Signature sig;
    sig.reserve(operations_.size());
    for (const auto& op : operations_) sig.emplace_back(op.name, op.arity);
    return sig;
}

bool Algebra::has_nonunary_operation() const {
    return std::any_of(operations_.begin(), operations_.end(), [](const Operation& op) { return op.arity >= 2; });
}

ElementId Algebra::evaluate(std::size_t op_index, std::span<const ElementId> args) const {
    if (op_index >= operations_.size())
        throw InputError("operation index " + std::to_string(op_index) + " out of range");
    const Operation& op = operations_[op_index];
    if (args.size() != op.arity)
        throw InputError("operation '" + op.name + "' expects " + std::to_string(op.arity) + " arguments, got " +
                         std::to_string(args.size()));
    for (ElementId a : args)
        if (a >= size()) throw InputError("element id " + std::to_string(a) + " out of range");
    return op.apply(args);
}

Algebra Algebra::renamed(std::string name) const {
    Algebra copy = *this;
    copy.name_ = std::move(name);
    return copy;
}

bool is_closed(const Algebra& alg, ElementSet subset) {
    if (subset.empty()) throw InputError("closure test on an empty set");
    if (!subset.subset_of(alg.universe())) throw InputError("set is not contained in the universe");
    const auto pool = subset.elements();
    for (const auto& op : alg.operations()) {
        bool ok = for_each_tuple(pool, op.arity, [&](std::span<const ElementId> t) { return subset.contains(op.apply(t)); });
        if (!ok) return false;
    }
    return true;
}

ElementSet closure(const Algebra& alg, ElementSet seed) {
    if (seed.empty()) throw InputError("closure of an empty set");
    if (!seed.subset_of(alg.universe())) throw InputError("set is not contained in the universe");
    ElementSet current = seed;
    for (;;) {
        ElementSet next = current;
        const auto pool = current.elements();
        for (const auto& op : alg.operations())
            for_each_tuple(pool, op.arity, [&](std::span<const ElementId> t) { next.insert(op.apply(t)); });
        if (next == current) return current;
        current = next;
    }
}

Algebra restrict(const Algebra& alg, ElementSet subset, std::string name) {
    if (!is_closed(alg, subset)) throw InputError("cannot restrict to a set that is not closed under the operations");
    const auto members = subset.elements();
    std::vector<std::string> names;
    names.reserve(members.size());
    for (ElementId e : members) names.push_back(alg.element_name(e));
    std::vector<Operation> ops;
    for (const auto& op : alg.operations()) {
        Operation r{op.name, op.arity, members.size(), {}};
        for_each_tuple(members, op.arity, [&](std::span<const ElementId> t) {
            r.table.push_back(static_cast<ElementId>(rank_in(subset, op.apply(t))));
        });
        ops.push_back(std::move(r));
    }
    return Algebra(name.empty() ? alg.name() : std::move(name), std::move(names), std::move(ops), ~0U);
}

ElementMap ElementMap::identity(std::size_t source_universe, ElementSet domain) {
    ElementMap m(source_universe, domain);
    for (ElementId e : domain.elements()) m.set(e, e);
    return m;
}

ElementSet ElementMap::range() const {
    ElementSet r;
    for (ElementId e : domain_.elements()) r.insert(image_[e]);
    return r;
}

bool ElementMap::is_identity() const {
    for (ElementId e : domain_.elements())
        if (image_[e] != e) return false;
    return true;
}

ElementMap ElementMap::then(const ElementMap& after) const {
    ElementMap out(image_.size(), domain_);
    for (ElementId e : domain_.elements()) out.set(e, after(image_[e]));
    return out;
}

std::vector<std::pair<ElementId, ElementId>> ElementMap::pairs() const {
    std::vector<std::pair<ElementId, ElementId>> out;
    for (ElementId e : domain_.elements()) out.emplace_back(e, image_[e]);
    return out;
}

namespace {

void require_similar_closed(const Algebra& src_alg, ElementSet src_set, const Algebra& dst_alg, ElementSet dst_set) {
    if (!src_alg.similar_to(dst_alg)) throw InputError("homomorphism search between algebras that are not similar");
    if (!is_closed(src_alg, src_set)) throw InputError("homomorphism source set is not closed");
    if (!is_closed(dst_alg, dst_set)) throw InputError("homomorphism target set is not closed");
}

/// Checks the homomorphism equation on every tuple over `assigned` whose result is also assigned.
bool consistent_on(const Algebra& src_alg, const Algebra& dst_alg, const std::vector<ElementId>& assigned,
                   ElementSet assigned_set, const ElementMap& map, std::vector<ElementId>& scratch) {
    for (std::size_t k = 0; k < src_alg.operation_count(); ++k) {
        const Operation& sop = src_alg.operation(k);
        const Operation& dop = dst_alg.operation(k);
        scratch.resize(sop.arity);
        bool ok = for_each_tuple(assigned, sop.arity, [&](std::span<const ElementId> t) {
            ElementId r = sop.apply(t);
            if (!assigned_set.contains(r)) return true;
            for (unsigned i = 0; i < sop.arity; ++i) scratch[i] = map(t[i]);
            return map(r) == dop.apply(scratch.data());
        });
        if (!ok) return false;
    }
    return true;
}

}  // namespace

bool is_homomorphism(const Algebra& src_alg, ElementSet src_set, const Algebra& dst_alg, ElementSet dst_set,
                     const ElementMap& map) {
    require_similar_closed(src_alg, src_set, dst_alg, dst_set);
    if (map.domain() != src_set || map.source_universe() != src_alg.size()) return false;
    if (!map.range().subset_of(dst_set)) return false;
    std::vector<ElementId> scratch;
    return consistent_on(src_alg, dst_alg, src_set.elements(), src_set, map, scratch);
}

std::vector<ElementMap> enumerate_homomorphisms(const Algebra& src_alg, ElementSet src_set, const Algebra& dst_alg,
                                                ElementSet dst_set) {
    require_similar_closed(src_alg, src_set, dst_alg, dst_set);
    const auto sources = src_set.elements();
    const auto targets = dst_set.elements();
    std::vector<ElementMap> found;
    ElementMap map(src_alg.size(), src_set);
    std::vector<ElementId> prefix;
    std::vector<ElementId> scratch;

    // Depth-first over sources in ascending id order; candidate targets ascending gives lexicographic output.
    auto search = [&](auto&& self, std::size_t depth, ElementSet assigned) -> void {
        if (depth == sources.size()) {
            found.push_back(map);
            return;
        }
        const ElementId x = sources[depth];
        prefix.push_back(x);
        assigned.insert(x);
        for (ElementId y : targets) {
            map.set(x, y);
            if (consistent_on(src_alg, dst_alg, prefix, assigned, map, scratch)) self(self, depth + 1, assigned);
        }
        map.set(x, ElementMap::kUnmapped);
        prefix.pop_back();
    };
    search(search, 0, ElementSet{});
    return found;
}

}  // namespace plonka
