#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "plonka/systems.hpp"

namespace plonka {

/// A binary function on the universe, stored row-major.
class PartitionFunction {
public:
    PartitionFunction(std::size_t universe_size, std::vector<ElementId> table);

    std::size_t universe_size() const { return n_; }
    ElementId operator()(ElementId a, ElementId b) const { return table_[a * n_ + b]; }
    const std::vector<ElementId>& table() const { return table_; }
    bool is_first_projection() const;
    /// The table as a binary operation named `name`.
    Operation as_operation(std::string name = "f") const;

    friend bool operator==(const PartitionFunction&, const PartitionFunction&) = default;

private:
    std::size_t n_ = 0;
    std::vector<ElementId> table_;
};

enum class Axiom { P1, P2, P3, P4, P5, P6, P7 };

/// Axioms in the order they are checked.
inline constexpr std::array<Axiom, 7> kAxiomOrder = {Axiom::P2, Axiom::P6, Axiom::P7, Axiom::P4,
                                                    Axiom::P5, Axiom::P1, Axiom::P3};

std::string axiom_name(Axiom a);

struct AxiomResult {
    Axiom axiom = Axiom::P1;
    bool holds = true;
    std::optional<std::size_t> op;     ///< operation index, for the schemas quantifying over operations
    std::vector<ElementId> witness;    ///< variable assignment of the first failing instance
};

struct AxiomReport {
    std::vector<AxiomResult> results;  ///< in kAxiomOrder
    bool all_hold() const;
    const AxiomResult& at(Axiom a) const;
};

/// Checks every instance of every axiom exhaustively. Witness layouts:
/// P1, P3: (a, b, c); P2: (a); P4: (a_1..a_k, b); P5: (b, a_1..a_k); P6: (a_1..a_k, l); P7: (a).
AxiomReport verify_axioms(const Algebra& alg, const PartitionFunction& f);

/// f(a, b) = φ_{i, i∨j}(a) for a in component i and b in component j, over the universe of
/// plonka_sum(system). Throws DefectError if any axiom fails.
PartitionFunction from_system(const DirectSystem& system);

/// from_system re-indexed onto `alg` by element names. Throws InputError if the sum has other elements.
PartitionFunction from_system_on(const Algebra& alg, const DirectSystem& system);

struct SearchOutcome {
    std::optional<PartitionFunction> found;
    bool exhausted = false;   ///< the node budget cut the search short
    std::size_t nodes = 0;
};

inline constexpr std::size_t kDefaultSearchBudget = 20'000'000;
inline constexpr std::size_t kDefaultSearchMaxUniverse = 4;

/// Backtracking search for a partition function. Diagonal, f(F(ā), a_l) and f(a, F(a,…,a)) cells are
/// pinned first; remaining cells are filled with every fully instantiated axiom instance checked on the way.
/// With `require_nontrivial` the first projection (which satisfies every axiom) is excluded, so a hit
/// certifies a decomposition over at least two indices. Throws InputError above `max_universe`.
SearchOutcome brute_force_search(const Algebra& alg, std::size_t budget = kDefaultSearchBudget,
                                 bool require_nontrivial = true,
                                 std::size_t max_universe = kDefaultSearchMaxUniverse);

}  // namespace plonka
