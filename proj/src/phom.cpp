#include "plonka/phom.hpp"

#include "plonka/error.hpp"

namespace plonka {

ElementMap extend(const ElementMap& phi, std::size_t universe_size) {
    ElementMap f(universe_size, ElementSet::full(universe_size));
    for (ElementId e = 0; e < universe_size; ++e) f.set(e, phi.domain().contains(e) ? phi(e) : e);
    return f;
}

namespace {

void require_pair(const Frame& frame, std::size_t src, std::size_t dst) {
    if (src >= frame.size() || dst >= frame.size()) throw InputError("frame position out of range");
    if (!frame.leq(src, dst)) throw InputError("source position is not below target position in the frame");
}

}  // namespace

std::vector<PViolation> p_violations(const Frame& frame, std::size_t src, std::size_t dst, const ElementMap& phi,
                                     std::size_t limit) {
    require_pair(frame, src, dst);
    const Algebra& alg = frame.algebra();
    if (!is_homomorphism(alg, frame.complement(src), alg, frame.complement(dst), phi))
        throw InputError("map is not a homomorphism between the complement algebras");

    const ElementMap f = extend(phi, alg.size());
    const ElementSet upper = frame.upper_union(dst);
    const auto universe = alg.universe().elements();
    std::vector<PViolation> found;
    std::vector<ElementId> mapped;
    for (std::size_t k = 0; k < alg.operation_count() && found.size() < limit; ++k) {
        const Operation& op = alg.operation(k);
        mapped.resize(op.arity);
        for_each_tuple(universe, op.arity, [&](std::span<const ElementId> t) {
            const ElementId value = op.apply(t);
            if (!upper.contains(value)) return true;
            for (unsigned i = 0; i < op.arity; ++i) mapped[i] = f(t[i]);
            const ElementId moved = op.apply(mapped.data());
            if (moved == value) return true;
            found.push_back(PViolation{k, {t.begin(), t.end()}, value, moved});
            return found.size() < limit;
        });
    }
    return found;
}

std::optional<PViolation> p_violation(const Frame& frame, std::size_t src, std::size_t dst, const ElementMap& phi) {
    auto v = p_violations(frame, src, dst, phi, 1);
    if (v.empty()) return std::nullopt;
    return std::move(v.front());
}

bool is_p_homomorphism(const Frame& frame, std::size_t src, std::size_t dst, const ElementMap& phi) {
    if (src == dst) {
        require_pair(frame, src, dst);
        return phi.domain() == frame.complement(src) && phi.is_identity();
    }
    return !p_violation(frame, src, dst, phi);
}

PairAnalysis analyze_pair(const Frame& frame, std::size_t src, std::size_t dst) {
    require_pair(frame, src, dst);
    PairAnalysis out{src, dst, 0, {}, std::nullopt};
    const Algebra& alg = frame.algebra();
    if (src == dst) {
        out.plain_count = 1;
        out.phoms.push_back(PHom{src, dst, ElementMap::identity(alg.size(), frame.complement(src)), true});
        return out;
    }
    auto homs = enumerate_homomorphisms(alg, frame.complement(src), frame.complement(dst));
    out.plain_count = homs.size();
    for (auto& h : homs) {
        if (auto v = p_violation(frame, src, dst, h)) {
            if (!out.first_rejected) out.first_rejected.emplace(h, std::move(*v));
        } else {
            out.phoms.push_back(PHom{src, dst, std::move(h), true});
        }
    }
    return out;
}

std::vector<PHom> enumerate_phoms(const Frame& frame, std::size_t src, std::size_t dst) {
    return analyze_pair(frame, src, dst).phoms;
}

PHom compose_phoms(const Frame& frame, const PHom& first, const PHom& second) {
    if (first.dst != second.src) throw InputError("P-homomorphisms are not composable");
    PHom out{first.src, second.dst, first.map.then(second.map), false};
    if (!is_p_homomorphism(frame, out.src, out.dst, out.map))
        throw DefectError("composite of P-homomorphisms is not a P-homomorphism");
    out.verified = true;
    return out;
}

}  // namespace plonka
