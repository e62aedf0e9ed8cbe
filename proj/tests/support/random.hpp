#pragma once

#include <random>
#include <string>
#include <vector>

#include "plonka/error.hpp"
#include "plonka/systems.hpp"

namespace testing_support {

using Rng = std::mt19937_64;

inline plonka::ElementId pick(Rng& rng, std::size_t n) {
    return static_cast<plonka::ElementId>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
}

/// Random algebra with one binary operation and, sometimes, a unary one.
/// With `idempotent_zero`, element 0 is fixed by every operation.
inline plonka::Algebra random_algebra(Rng& rng, std::size_t n, bool unary, const std::string& prefix = "x",
                                      bool idempotent_zero = false) {
    std::vector<std::string> names;
    for (std::size_t e = 0; e < n; ++e) names.push_back(prefix + std::to_string(e));
    std::vector<plonka::Operation> ops;
    plonka::Operation mul{"*", 2, n, std::vector<plonka::ElementId>(n * n)};
    for (auto& v : mul.table) v = pick(rng, n);
    if (idempotent_zero) mul.table[0] = 0;
    ops.push_back(std::move(mul));
    if (unary) {
        plonka::Operation neg{"'", 1, n, std::vector<plonka::ElementId>(n)};
        for (auto& v : neg.table) v = pick(rng, n);
        if (idempotent_zero) neg.table[0] = 0;
        ops.push_back(std::move(neg));
    }
    return plonka::Algebra("R" + prefix, std::move(names), std::move(ops));
}

/// Random join-semilattice order on k indices (pairs i ≤ j, i < j numerically).
inline std::vector<std::pair<std::size_t, std::size_t>> random_semilattice(Rng& rng, std::size_t k) {
    for (;;) {
        std::vector<bool> leq(k * k, false);
        for (std::size_t i = 0; i < k; ++i) leq[i * k + i] = true;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                if (rng() % 2) leq[i * k + j] = true;
        for (std::size_t m = 0; m < k; ++m)
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    if (leq[i * k + m] && leq[m * k + j]) leq[i * k + j] = true;
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i)
            for (std::size_t j = 0; j < k && ok; ++j) {
                bool found = false;
                for (std::size_t c = 0; c < k && !found; ++c) {
                    if (!leq[i * k + c] || !leq[j * k + c]) continue;
                    bool least = true;
                    for (std::size_t d = 0; d < k; ++d)
                        if (leq[i * k + d] && leq[j * k + d] && !leq[c * k + d]) least = false;
                    found = least;
                }
                ok = found;
            }
        if (!ok) continue;
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                if (i != j && leq[i * k + j]) out.emplace_back(i, j);
        return out;
    }
}

/// Random direct system with `k` indices and components of 1..max_component elements.
/// Every component fixes its element 0, so constant maps onto it are always available as a fallback.
inline plonka::DirectSystem random_system(Rng& rng, std::size_t k, std::size_t max_component, bool unary,
                                          const std::string& name = "D") {
    const auto order = random_semilattice(rng, k);
    std::vector<plonka::Algebra> comps;
    std::vector<std::string> indices;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t n = 1 + pick(rng, max_component);
        comps.push_back(random_algebra(rng, n, unary, "c" + std::to_string(i) + "_", true));
        indices.push_back("i" + std::to_string(i));
    }
    // Covers of the random order.
    std::vector<std::pair<std::size_t, std::size_t>> covers;
    auto le = [&](std::size_t i, std::size_t j) {
        if (i == j) return true;
        for (auto [a, b] : order)
            if (a == i && b == j) return true;
        return false;
    };
    for (auto [i, j] : order) {
        bool between = false;
        for (std::size_t m = 0; m < k; ++m)
            if (m != i && m != j && le(i, m) && le(m, j)) between = true;
        if (!between) covers.emplace_back(i, j);
    }
    for (int attempt = 0; attempt < 30; ++attempt) {
        std::vector<plonka::DirectSystem::Edge> edges;
        for (auto [i, j] : covers) {
            auto homs = plonka::enumerate_homomorphisms(comps[i], comps[i].universe(), comps[j], comps[j].universe());
            edges.push_back({i, j, homs[pick(rng, homs.size())]});
        }
        try {
            return plonka::DirectSystem(name, indices, order, comps, std::move(edges));
        } catch (const plonka::InputError&) {
        }
    }
    std::vector<plonka::DirectSystem::Edge> edges;
    for (auto [i, j] : covers) {
        plonka::ElementMap m(comps[i].size(), comps[i].universe());
        for (plonka::ElementId e = 0; e < comps[i].size(); ++e) m.set(e, 0);
        edges.push_back({i, j, std::move(m)});
    }
    return plonka::DirectSystem(name, indices, order, comps, std::move(edges));
}

}  // namespace testing_support
