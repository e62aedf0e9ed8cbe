#include "plonka/partition.hpp"

#include "plonka/error.hpp"

namespace plonka {

namespace {

constexpr ElementId kUnknown = ElementMap::kUnmapped;

/// Axiom instances over a possibly partial table; instances touching an unknown cell are skipped.
class Checker {
public:
    Checker(const Algebra& alg, const std::vector<ElementId>& table) : alg_(alg), table_(table), n_(alg.size()) {
        for (ElementId e = 0; e < n_; ++e) all_.push_back(e);
    }

    std::optional<AxiomResult> first_violation(Axiom ax) const {
        switch (ax) {
            case Axiom::P1: return check3(ax, [&](ElementId a, ElementId b, ElementId c) {
                    return std::make_pair(f(f(a, b), c), f(a, f(b, c)));
                });
            case Axiom::P3: return check3(ax, [&](ElementId a, ElementId b, ElementId c) {
                    return std::make_pair(f(a, f(b, c)), f(a, f(c, b)));
                });
            case Axiom::P2:
                for (ElementId a = 0; a < n_; ++a)
                    if (differ(f(a, a), a)) return AxiomResult{ax, false, std::nullopt, {a}};
                return std::nullopt;
            case Axiom::P4: return check_p4();
            case Axiom::P5: return check_p5();
            case Axiom::P6: return check_p6();
            case Axiom::P7:
                for (std::size_t k = 0; k < alg_.operation_count(); ++k) {
                    const Operation& op = alg_.operation(k);
                    for (ElementId a = 0; a < n_; ++a) {
                        std::vector<ElementId> same(op.arity, a);
                        if (differ(f(a, op.apply(same.data())), a)) return AxiomResult{ax, false, k, {a}};
                    }
                }
                return std::nullopt;
        }
        return std::nullopt;
    }

private:
    ElementId f(ElementId a, ElementId b) const {
        if (a == kUnknown || b == kUnknown) return kUnknown;
        return table_[a * n_ + b];
    }
    ElementId apply(const Operation& op, const std::vector<ElementId>& args) const {
        for (ElementId x : args)
            if (x == kUnknown) return kUnknown;
        return op.apply(args.data());
    }
    static bool differ(ElementId x, ElementId y) { return x != kUnknown && y != kUnknown && x != y; }

    template <typename Sides>
    std::optional<AxiomResult> check3(Axiom ax, Sides sides) const {
        for (ElementId a = 0; a < n_; ++a)
            for (ElementId b = 0; b < n_; ++b)
                for (ElementId c = 0; c < n_; ++c) {
                    auto [l, r] = sides(a, b, c);
                    if (differ(l, r)) return AxiomResult{ax, false, std::nullopt, {a, b, c}};
                }
        return std::nullopt;
    }

    std::optional<AxiomResult> check_p4() const {
        std::optional<AxiomResult> out;
        for (std::size_t k = 0; k < alg_.operation_count() && !out; ++k) {
            const Operation& op = alg_.operation(k);
            std::vector<ElementId> inner(op.arity);
            for_each_tuple(all_, op.arity, [&](std::span<const ElementId> t) {
                const ElementId value = op.apply(t);
                for (ElementId b = 0; b < n_; ++b) {
                    for (unsigned i = 0; i < op.arity; ++i) inner[i] = f(t[i], b);
                    if (differ(f(value, b), apply(op, inner))) {
                        std::vector<ElementId> w(t.begin(), t.end());
                        w.push_back(b);
                        out = AxiomResult{Axiom::P4, false, k, std::move(w)};
                        return false;
                    }
                }
                return true;
            });
        }
        return out;
    }

    std::optional<AxiomResult> check_p5() const {
        std::optional<AxiomResult> out;
        for (std::size_t k = 0; k < alg_.operation_count() && !out; ++k) {
            const Operation& op = alg_.operation(k);
            std::vector<ElementId> inner(op.arity);
            for_each_tuple(all_, op.arity, [&](std::span<const ElementId> t) {
                const ElementId value = op.apply(t);
                for (ElementId b = 0; b < n_; ++b) {
                    for (unsigned i = 0; i < op.arity; ++i) inner[i] = f(b, t[i]);
                    if (differ(f(b, value), f(b, apply(op, inner)))) {
                        std::vector<ElementId> w{b};
                        w.insert(w.end(), t.begin(), t.end());
                        out = AxiomResult{Axiom::P5, false, k, std::move(w)};
                        return false;
                    }
                }
                return true;
            });
        }
        return out;
    }

    std::optional<AxiomResult> check_p6() const {
        std::optional<AxiomResult> out;
        for (std::size_t k = 0; k < alg_.operation_count() && !out; ++k) {
            const Operation& op = alg_.operation(k);
            for_each_tuple(all_, op.arity, [&](std::span<const ElementId> t) {
                const ElementId value = op.apply(t);
                for (unsigned l = 0; l < op.arity; ++l)
                    if (differ(f(value, t[l]), value)) {
                        std::vector<ElementId> w(t.begin(), t.end());
                        w.push_back(l + 1);
                        out = AxiomResult{Axiom::P6, false, k, std::move(w)};
                        return false;
                    }
                return true;
            });
        }
        return out;
    }

    const Algebra& alg_;
    const std::vector<ElementId>& table_;
    std::size_t n_;
    std::vector<ElementId> all_;
};

}  // namespace

PartitionFunction::PartitionFunction(std::size_t universe_size, std::vector<ElementId> table)
    : n_(universe_size), table_(std::move(table)) {
    if (table_.size() != n_ * n_) throw InputError("partition table must have universe_size^2 entries");
    for (ElementId v : table_)
        if (v >= n_) throw InputError("partition table value out of range");
}

bool PartitionFunction::is_first_projection() const {
    for (ElementId a = 0; a < n_; ++a)
        for (ElementId b = 0; b < n_; ++b)
            if ((*this)(a, b) != a) return false;
    return true;
}

Operation PartitionFunction::as_operation(std::string name) const { return Operation{std::move(name), 2, n_, table_}; }

std::string axiom_name(Axiom a) { return "P" + std::to_string(static_cast<int>(a) + 1); }

bool AxiomReport::all_hold() const {
    for (const auto& r : results)
        if (!r.holds) return false;
    return true;
}

const AxiomResult& AxiomReport::at(Axiom a) const {
    for (const auto& r : results)
        if (r.axiom == a) return r;
    throw InputError("axiom missing from report");
}

AxiomReport verify_axioms(const Algebra& alg, const PartitionFunction& f) {
    if (f.universe_size() != alg.size()) throw InputError("partition function and algebra differ in size");
    Checker check(alg, f.table());
    AxiomReport report;
    for (Axiom ax : kAxiomOrder) {
        auto v = check.first_violation(ax);
        report.results.push_back(v ? std::move(*v) : AxiomResult{ax, true, std::nullopt, {}});
    }
    return report;
}

PartitionFunction from_system(const DirectSystem& system) {
    const auto layout = system.sum_layout();
    const std::size_t n = layout.size();
    std::vector<ElementId> offset(system.size(), 0);
    for (std::size_t i = 1; i < system.size(); ++i)
        offset[i] = offset[i - 1] + static_cast<ElementId>(system.component(i - 1).size());
    std::vector<ElementId> table(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            auto [i, a] = layout[x];
            const std::size_t m = system.join(i, layout[y].first);
            table[x * n + y] = offset[m] + system.hom(i, m)(a);
        }
    PartitionFunction f(n, std::move(table));
    const AxiomReport report = verify_axioms(plonka_sum(system), f);
    for (const auto& r : report.results)
        if (!r.holds) throw DefectError("partition function of a direct system fails " + axiom_name(r.axiom));
    return f;
}

PartitionFunction from_system_on(const Algebra& alg, const DirectSystem& system) {
    const PartitionFunction f = from_system(system);
    const auto layout = system.sum_layout();
    const std::size_t n = layout.size();
    if (n != alg.size()) throw InputError("system and algebra differ in size");
    std::vector<ElementId> to_alg(n);
    for (std::size_t x = 0; x < n; ++x) {
        auto [i, e] = layout[x];
        auto id = alg.find_element(system.component(i).element_name(e));
        if (!id) throw InputError("element '" + system.component(i).element_name(e) + "' is not in the algebra");
        to_alg[x] = *id;
    }
    std::vector<ElementId> table(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) table[to_alg[x] * n + to_alg[y]] = to_alg[f(x, y)];
    return PartitionFunction(n, std::move(table));
}

SearchOutcome brute_force_search(const Algebra& alg, std::size_t budget, bool require_nontrivial,
                                 std::size_t max_universe) {
    const std::size_t n = alg.size();
    if (n > max_universe)
        throw InputError("partition search is limited to " + std::to_string(max_universe) +
                         " elements; raise the limit explicitly");
    std::vector<ElementId> table(n * n, kUnknown);
    SearchOutcome out;

    bool conflict = false;
    auto pin = [&](ElementId a, ElementId b, ElementId v) {
        ElementId& cell = table[a * n + b];
        if (cell != kUnknown && cell != v) conflict = true;
        cell = v;
    };
    for (ElementId a = 0; a < n; ++a) pin(a, a, a);
    std::vector<ElementId> all(n);
    for (ElementId e = 0; e < n; ++e) all[e] = e;
    for (const Operation& op : alg.operations()) {
        for_each_tuple(all, op.arity, [&](std::span<const ElementId> t) {
            const ElementId v = op.apply(t);
            for (ElementId x : t) pin(v, x, v);
        });
        for (ElementId a = 0; a < n; ++a) {
            std::vector<ElementId> same(op.arity, a);
            pin(a, op.apply(same.data()), a);
        }
    }
    if (conflict) return out;

    Checker check(alg, table);
    auto consistent = [&] {
        for (Axiom ax : kAxiomOrder)
            if (check.first_violation(ax)) return false;
        return true;
    };
    if (!consistent()) return out;

    std::vector<std::size_t> free_cells;
    for (std::size_t c = 0; c < table.size(); ++c)
        if (table[c] == kUnknown) free_cells.push_back(c);

    auto search = [&](auto&& self, std::size_t idx) -> bool {
        if (idx == free_cells.size()) {
            PartitionFunction f(n, table);
            if (require_nontrivial && f.is_first_projection()) return false;
            out.found = std::move(f);
            return true;
        }
        const std::size_t cell = free_cells[idx];
        for (ElementId v = 0; v < n; ++v) {
            if (++out.nodes > budget) {
                out.exhausted = true;
                return true;
            }
            table[cell] = v;
            if (consistent() && self(self, idx + 1)) return true;
        }
        table[cell] = kUnknown;
        return false;
    };
    search(search, 0);
    if (out.exhausted) out.found.reset();
    return out;
}

}  // namespace plonka
