#include "plonka/systems.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <set>
#include <tuple>

#include "plonka/error.hpp"

namespace plonka {

namespace {

std::string describe_set(const Algebra& alg, ElementSet s) {
    std::string out = "{";
    bool first = true;
    for (ElementId e : s.elements()) {
        if (!first) out += ",";
        out += alg.element_name(e);
        first = false;
    }
    return out + "}";
}

std::string describe_tuple(const Algebra& alg, const std::string& op, const std::vector<ElementId>& args) {
    std::string out = op + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ",";
        out += alg.element_name(args[i]);
    }
    return out + ")";
}

}  // namespace

std::string member_label(const Frame& frame, std::size_t pos) {
    return "B" + std::to_string(frame.family_index(pos) + 1);
}

const ElementMap& SoundHomSet::hom(std::size_t p, std::size_t q) const {
    const auto& h = homs_.at(p * k_ + q);
    if (!h) throw InputError("no homomorphism stored for this pair of positions");
    return *h;
}

std::vector<SoundHomSet> search_sound_sets(const Frame& frame, std::size_t max_results) {
    std::vector<std::vector<PHom>> candidates;
    for (auto [p, q] : frame.covering_pairs()) candidates.push_back(enumerate_phoms(frame, p, q));
    return search_sound_sets(frame, candidates, max_results);
}

std::vector<SoundHomSet> search_sound_sets(const Frame& frame, const std::vector<std::vector<PHom>>& cover_candidates,
                                           std::size_t max_results) {
    const auto& covers = frame.covering_pairs();
    if (cover_candidates.size() != covers.size()) throw InputError("one candidate list per covering pair is required");
    const std::size_t k = frame.size();
    const std::size_t n = frame.algebra().size();

    // Positions are in ascending family order, so every upper cover of s has a larger position.
    std::vector<std::vector<std::size_t>> groups;
    std::vector<std::size_t> group_source;
    for (std::size_t s = k; s-- > 0;) {
        std::vector<std::size_t> g;
        for (std::size_t c = 0; c < covers.size(); ++c)
            if (covers[c].first == s) g.push_back(c);
        if (g.empty()) continue;
        groups.push_back(std::move(g));
        group_source.push_back(s);
    }

    std::vector<std::optional<ElementMap>> comp(k * k);
    for (std::size_t p = 0; p < k; ++p) comp[p * k + p] = ElementMap::identity(n, frame.complement(p));
    std::vector<std::size_t> choice(covers.size(), 0);
    std::vector<std::pair<std::vector<std::size_t>, SoundHomSet>> found;

    auto search = [&](auto&& self, std::size_t g, std::size_t c) -> void {
        if (g == groups.size()) {
            if (found.size() >= max_results)
                throw ResourceError("more than " + std::to_string(max_results) + " sound sets for one frame");
            found.emplace_back(choice, SoundHomSet(k, comp));
            return;
        }
        const auto& group = groups[g];
        const std::size_t s = group_source[g];
        if (c < group.size()) {
            for (std::size_t i = 0; i < cover_candidates[group[c]].size(); ++i) {
                choice[group[c]] = i;
                self(self, g, c + 1);
            }
            return;
        }
        for (std::size_t j = 0; j < k; ++j) {
            if (!frame.less(s, j)) continue;
            std::optional<ElementMap> agreed;
            for (std::size_t cover : group) {
                const std::size_t mid = covers[cover].second;
                if (!frame.leq(mid, j)) continue;
                ElementMap via = cover_candidates[cover][choice[cover]].map.then(*comp[mid * k + j]);
                if (!agreed) {
                    agreed = std::move(via);
                } else if (!(via == *agreed)) {
                    return;
                }
            }
            comp[s * k + j] = std::move(agreed);
        }
        self(self, g + 1, 0);
    };
    search(search, 0, 0);

    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<SoundHomSet> out;
    out.reserve(found.size());
    for (auto& f : found) out.push_back(std::move(f.second));
    return out;
}

std::optional<std::string> sound_set_violation(const Frame& frame, const SoundHomSet& sound) {
    const std::size_t k = frame.size();
    if (sound.frame_size() != k) return std::string("size does not match the frame");
    for (std::size_t p = 0; p < k; ++p)
        for (std::size_t q = 0; q < k; ++q)
            if (frame.leq(p, q) != sound.defined(p, q))
                return "maps must be given exactly for comparable pairs (" + member_label(frame, p) + ", " +
                       member_label(frame, q) + ")";
    for (std::size_t p = 0; p < k; ++p)
        if (!is_p_homomorphism(frame, p, p, sound.hom(p, p)))
            return "map on " + member_label(frame, p) + " is not the identity";
    for (auto [p, q] : frame.covering_pairs()) {
        const ElementMap& phi = sound.hom(p, q);
        if (phi.domain() != frame.complement(p) || !phi.range().subset_of(frame.complement(q)) ||
            !is_p_homomorphism(frame, p, q, phi))
            return "map " + member_label(frame, p) + " -> " + member_label(frame, q) +
                   " is not a Płonka homomorphism";
    }

    // Walk every maximal chain of covers explicitly.
    std::vector<std::vector<std::size_t>> up(k);
    for (auto [p, q] : frame.covering_pairs()) up[p].push_back(q);
    std::optional<std::string> bad;
    auto walk = [&](auto&& self, std::size_t start, std::size_t at, const ElementMap& acc) -> void {
        if (bad) return;
        if (at != start && !(acc == sound.hom(start, at))) {
            bad = "composite along a chain from " + member_label(frame, start) + " to " + member_label(frame, at) +
                  " differs from the stored map";
            return;
        }
        for (std::size_t next : up[at]) self(self, start, next, acc.then(sound.hom(at, next)));
    };
    for (std::size_t p = 0; p < k && !bad; ++p) walk(walk, p, p, sound.hom(p, p));
    return bad;
}

DirectSystem::DirectSystem(std::string name, std::vector<std::string> index_names,
                           const std::vector<std::pair<std::size_t, std::size_t>>& order,
                           std::vector<Algebra> components, std::vector<Edge> homs)
    : name_(std::move(name)), index_names_(std::move(index_names)), components_(std::move(components)) {
    const std::size_t k = index_names_.size();
    if (k == 0) throw InputError("semilattice clause: the index set is empty");
    {
        std::set<std::string> seen;
        for (const auto& nm : index_names_)
            if (!seen.insert(nm).second) throw InputError("semilattice clause: index '" + nm + "' is repeated");
    }
    if (components_.size() != k)
        throw InputError("family clause: expected " + std::to_string(k) + " components, got " +
                         std::to_string(components_.size()));

    leq_.assign(k * k, false);
    for (std::size_t i = 0; i < k; ++i) leq_[i * k + i] = true;
    for (auto [i, j] : order) {
        if (i >= k || j >= k) throw InputError("semilattice clause: order pair refers to an unknown index");
        leq_[i * k + j] = true;
    }
    for (std::size_t m = 0; m < k; ++m)
        for (std::size_t i = 0; i < k; ++i)
            if (leq_[i * k + m])
                for (std::size_t j = 0; j < k; ++j)
                    if (leq_[m * k + j]) leq_[i * k + j] = true;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (leq_[i * k + j] && leq_[j * k + i])
                throw InputError("semilattice clause: indices '" + index_names_[i] + "' and '" + index_names_[j] +
                                 "' lie below each other");

    join_.assign(k * k, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            std::optional<std::size_t> least;
            for (std::size_t c = 0; c < k; ++c) {
                if (!leq(i, c) || !leq(j, c)) continue;
                bool below_all = true;
                for (std::size_t d = 0; d < k && below_all; ++d)
                    if (leq(i, d) && leq(j, d) && !leq(c, d)) below_all = false;
                if (below_all) least = c;
            }
            if (!least)
                throw InputError("semilattice clause: indices '" + index_names_[i] + "' and '" + index_names_[j] +
                                 "' have no least upper bound");
            join_[i * k + j] = *least;
        }
    top_ = 0;
    for (std::size_t i = 1; i < k; ++i) top_ = join(top_, i);

    {
        std::map<std::string, std::size_t> owner;
        for (std::size_t i = 0; i < k; ++i)
            for (const auto& e : components_[i].element_names()) {
                auto [it, fresh] = owner.emplace(e, i);
                if (!fresh)
                    throw InputError("family clause: element '" + e + "' occurs in components '" +
                                     index_names_[it->second] + "' and '" + index_names_[i] + "'");
            }
    }
    for (std::size_t i = 1; i < k; ++i)
        if (!components_[i].similar_to(components_[0]))
            throw InputError("family clause: components '" + index_names_[0] + "' and '" + index_names_[i] +
                             "' are not similar");

    for (auto& edge : homs) {
        if (edge.src >= k || edge.dst >= k) throw InputError("homomorphism clause: map refers to an unknown index");
        const std::string label = "'" + index_names_[edge.src] + "' -> '" + index_names_[edge.dst] + "'";
        if (!leq(edge.src, edge.dst)) throw InputError("homomorphism clause: map " + label + " goes against the order");
        const Algebra& a = components_[edge.src];
        const Algebra& b = components_[edge.dst];
        if (edge.map.source_universe() != a.size() || edge.map.domain() != a.universe())
            throw InputError("homomorphism clause: map " + label + " is not total on its source");
        for (ElementId e = 0; e < a.size(); ++e)
            if (edge.map(e) >= b.size()) throw InputError("homomorphism clause: map " + label + " leaves its target");
        if (!is_homomorphism(a, a.universe(), b, b.universe(), edge.map))
            throw InputError("homomorphism clause: map " + label + " is not a homomorphism");
        if (edge.src == edge.dst && !edge.map.is_identity())
            throw InputError("identity clause: map on '" + index_names_[edge.src] + "' is not the identity");
        if (!homs_.emplace(std::make_pair(edge.src, edge.dst), std::move(edge.map)).second)
            throw InputError("homomorphism clause: map " + label + " is given twice");
    }
    for (std::size_t i = 0; i < k; ++i)
        homs_.try_emplace({i, i}, ElementMap::identity(components_[i].size(), components_[i].universe()));

    const auto covers = covering_pairs();
    for (auto [i, j] : covers)
        if (!homs_.count({i, j}))
            throw InputError("homomorphism clause: no map given for '" + index_names_[i] + "' <= '" +
                             index_names_[j] + "'");
    for (bool progress = true; progress;) {
        progress = false;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                if (!leq(i, j) || homs_.count({i, j})) continue;
                for (auto [a, m] : covers) {
                    if (a != i || !leq(m, j)) continue;
                    auto rest = homs_.find({m, j});
                    if (rest == homs_.end()) continue;
                    homs_.emplace(std::make_pair(i, j), homs_.at({i, m}).then(rest->second));
                    progress = true;
                    break;
                }
            }
    }

    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (!leq(i, j)) continue;
            for (std::size_t m = 0; m < k; ++m) {
                if (!leq(j, m)) continue;
                if (!(hom(i, j).then(hom(j, m)) == hom(i, m)))
                    throw InputError("composition clause: maps '" + index_names_[i] + "' -> '" + index_names_[j] +
                                     "' -> '" + index_names_[m] + "' do not compose to '" + index_names_[i] +
                                     "' -> '" + index_names_[m] + "'");
            }
        }
}

const ElementMap& DirectSystem::hom(std::size_t i, std::size_t j) const {
    auto it = homs_.find({i, j});
    if (it == homs_.end()) throw InputError("indices are not comparable");
    return it->second;
}

std::vector<std::pair<std::size_t, std::size_t>> DirectSystem::covering_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t k = size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j || !leq(i, j)) continue;
            bool between = false;
            for (std::size_t m = 0; m < k && !between; ++m)
                between = m != i && m != j && leq(i, m) && leq(m, j);
            if (!between) out.emplace_back(i, j);
        }
    return out;
}

std::vector<std::pair<std::size_t, ElementId>> DirectSystem::sum_layout() const {
    std::vector<std::pair<std::size_t, ElementId>> out;
    for (std::size_t i = 0; i < size(); ++i)
        for (ElementId e = 0; e < components_[i].size(); ++e) out.emplace_back(i, e);
    return out;
}

DirectSystem assemble(const Frame& frame, const SoundHomSet& sound, std::string name) {
    const Algebra& alg = frame.algebra();
    const std::size_t k = frame.size();
    std::vector<std::string> labels;
    std::vector<Algebra> comps;
    for (std::size_t p = 0; p < k; ++p) {
        labels.push_back(member_label(frame, p));
        comps.push_back(restrict(alg, frame.complement(p), labels.back()));
    }
    std::vector<std::pair<std::size_t, std::size_t>> order;
    std::vector<DirectSystem::Edge> edges;
    for (std::size_t p = 0; p < k; ++p)
        for (std::size_t q = 0; q < k; ++q) {
            if (!frame.less(p, q)) continue;
            order.emplace_back(p, q);
            const ElementSet cp = frame.complement(p);
            const ElementSet cq = frame.complement(q);
            ElementMap local(cp.size(), ElementSet::full(cp.size()));
            const ElementMap& phi = sound.hom(p, q);
            for (ElementId e : cp.elements())
                local.set(static_cast<ElementId>(rank_in(cp, e)), static_cast<ElementId>(rank_in(cq, phi(e))));
            edges.push_back({p, q, std::move(local)});
        }
    try {
        return DirectSystem(std::move(name), std::move(labels), order, std::move(comps), std::move(edges));
    } catch (const InputError& e) {
        throw DefectError(std::string("frame and sound set do not form a direct system: ") + e.what());
    }
}

Algebra plonka_sum(const DirectSystem& system) {
    const auto layout = system.sum_layout();
    const std::size_t n = layout.size();
    if (n > kMaxUniverse) throw InputError("sum has more than 64 elements");
    std::vector<ElementId> offset(system.size(), 0);
    for (std::size_t i = 1; i < system.size(); ++i)
        offset[i] = offset[i - 1] + static_cast<ElementId>(system.component(i - 1).size());
    std::vector<std::string> names;
    for (auto [i, e] : layout) names.push_back(system.component(i).element_name(e));

    std::vector<ElementId> all(n);
    for (std::size_t e = 0; e < n; ++e) all[e] = static_cast<ElementId>(e);
    std::vector<Operation> ops;
    const Algebra& first = system.component(0);
    for (std::size_t k = 0; k < first.operation_count(); ++k) {
        Operation op{first.operation(k).name, first.operation(k).arity, n, {}};
        std::vector<ElementId> local(op.arity);
        for_each_tuple(all, op.arity, [&](std::span<const ElementId> t) {
            std::size_t m = layout[t[0]].first;
            for (unsigned a = 1; a < op.arity; ++a) m = system.join(m, layout[t[a]].first);
            for (unsigned a = 0; a < op.arity; ++a) {
                auto [idx, e] = layout[t[a]];
                local[a] = system.hom(idx, m)(e);
            }
            op.table.push_back(offset[m] + system.component(m).operation(k).apply(local.data()));
        });
        ops.push_back(std::move(op));
    }
    return Algebra(system.name(), std::move(names), std::move(ops), ~0U);
}

bool verify_reconstruction(const Algebra& original, const DirectSystem& system) {
    const Algebra sum = plonka_sum(system);
    if (sum.size() != original.size() || sum.signature() != original.signature()) return false;
    std::vector<ElementId> to_orig(sum.size());
    for (ElementId e = 0; e < sum.size(); ++e) {
        auto id = original.find_element(sum.element_name(e));
        if (!id) return false;
        to_orig[e] = *id;
    }
    std::vector<ElementId> mapped;
    for (std::size_t k = 0; k < sum.operation_count(); ++k) {
        const Operation& s = sum.operation(k);
        const Operation& o = original.operation(k);
        mapped.resize(s.arity);
        const auto all = sum.universe().elements();
        bool ok = for_each_tuple(all, s.arity, [&](std::span<const ElementId> t) {
            for (unsigned a = 0; a < s.arity; ++a) mapped[a] = to_orig[t[a]];
            return to_orig[s.apply(t)] == o.apply(mapped.data());
        });
        if (!ok) return false;
    }
    return true;
}

std::string algebra_digest(const Algebra& alg) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](std::uint64_t byte) {
        h ^= byte & 0xffU;
        h *= 0x100000001b3ULL;
    };
    auto feed_string = [&](const std::string& s) {
        for (unsigned char c : s) feed(c);
        feed(0);
    };
    auto feed_word = [&](std::uint64_t w) {
        for (int i = 0; i < 4; ++i) feed(w >> (8 * i));
    };
    for (const auto& e : alg.element_names()) feed_string(e);
    for (const auto& op : alg.operations()) {
        feed_string(op.name);
        feed_word(op.arity);
        for (ElementId v : op.table) feed_word(v);
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 0xf];
    return out;
}

namespace {

std::string pair_failure(const Frame& frame, const PairAnalysis& pa) {
    const Algebra& alg = frame.algebra();
    const std::string from = member_label(frame, pa.src) + " " + describe_set(alg, frame.complement(pa.src));
    const std::string to = member_label(frame, pa.dst) + " " + describe_set(alg, frame.complement(pa.dst));
    if (pa.plain_count == 0) return "no homomorphism from " + from + " to " + to;
    const auto& [map, v] = *pa.first_rejected;
    const ElementMap f = extend(map, alg.size());
    std::vector<ElementId> moved;
    for (ElementId a : v.args) moved.push_back(f(a));
    const std::string& op = alg.operation(v.op).name;
    return "every homomorphism from " + from + " to " + to + " breaks the value condition, e.g. " +
           describe_tuple(alg, op, v.args) + " = " + alg.element_name(v.value) + " but " +
           describe_tuple(alg, op, moved) + " = " + alg.element_name(v.mapped_value);
}

}  // namespace

DecompositionReport decompose(std::shared_ptr<const Algebra> alg, const DecomposeOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    DecompositionReport report;
    report.algebra = alg;
    report.digest = algebra_digest(*alg);
    report.family = std::make_shared<const IsolatedFamily>(all_isolated(alg, options.max_universe));

    // Pair outcomes depend only on the two complements and the union above the target.
    std::map<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>, PairAnalysis> cache;
    for (Frame& frame : enumerate_frames(report.family)) {
        FrameReport fr{std::move(frame), {}, {}, {}};
        const Frame& f = fr.frame;
        for (std::size_t p = 0; p < f.size(); ++p)
            for (std::size_t q = 0; q < f.size(); ++q) {
                if (!f.less(p, q)) continue;
                auto key = std::make_tuple(f.complement(p).mask(), f.complement(q).mask(), f.upper_union(q).mask());
                auto it = cache.find(key);
                if (it == cache.end()) it = cache.emplace(key, analyze_pair(f, p, q)).first;
                PairAnalysis pa = it->second;
                pa.src = p;
                pa.dst = q;
                for (auto& h : pa.phoms) {
                    h.src = p;
                    h.dst = q;
                }
                fr.pairs.push_back(std::move(pa));
            }

        std::vector<std::vector<PHom>> candidates;
        for (auto [p, q] : f.covering_pairs()) {
            auto it = std::find_if(fr.pairs.begin(), fr.pairs.end(),
                                   [&](const PairAnalysis& pa) { return pa.src == p && pa.dst == q; });
            if (it->phoms.empty() && fr.failure.empty()) fr.failure = pair_failure(f, *it);
            candidates.push_back(it->phoms);
        }
        if (fr.failure.empty()) {
            fr.sound_sets = search_sound_sets(f, candidates, options.max_sound_sets_per_frame);
            if (fr.sound_sets.empty())
                fr.failure = "every covering pair has Płonka homomorphisms, but no choice agrees along all chains";
        }
        const std::size_t frame_id = report.frames.size();
        for (std::size_t s = 0; s < fr.sound_sets.size(); ++s) {
            DirectSystem sys = assemble(
                f, fr.sound_sets[s], alg->name() + "-frame" + std::to_string(frame_id + 1) + "-set" + std::to_string(s + 1));
            if (!verify_reconstruction(*alg, sys)) throw DefectError("assembled system does not reconstruct the algebra");
            report.systems.push_back(SystemRecord{frame_id, s, std::move(sys)});
        }
        report.frames.push_back(std::move(fr));
    }
    report.is_plonka_sum = !report.systems.empty();
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

DecompositionReport decompose(const Algebra& alg, const DecomposeOptions& options) {
    return decompose(std::make_shared<const Algebra>(alg), options);
}

}  // namespace plonka
