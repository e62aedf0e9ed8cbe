#include "plonka/frames.hpp"

#include <algorithm>

#include "plonka/error.hpp"

namespace plonka {

namespace {

std::string describe(const IsolatedFamily& fam, std::size_t idx) {
    std::string out = "{";
    bool first = true;
    for (ElementId e : fam.member(idx).elements()) {
        if (!first) out += ",";
        out += fam.algebra().element_name(e);
        first = false;
    }
    return out + "}";
}

/// Least upper bound inside the selection, if one exists.
std::optional<std::size_t> join_within(const IsolatedFamily& fam, const std::vector<std::size_t>& sel, std::size_t a,
                                       std::size_t b) {
    const ElementSet both = fam.member(sel[a]) | fam.member(sel[b]);
    std::optional<std::size_t> best;
    for (std::size_t c = 0; c < sel.size(); ++c) {
        if (!both.subset_of(fam.member(sel[c]))) continue;
        if (!best || fam.member(sel[c]).subset_of(fam.member(sel[*best]))) best = c;
    }
    if (!best) return std::nullopt;
    // The candidate must lie below every upper bound.
    for (std::size_t c = 0; c < sel.size(); ++c)
        if (both.subset_of(fam.member(sel[c])) && !fam.member(sel[*best]).subset_of(fam.member(sel[c])))
            return std::nullopt;
    return best;
}

}  // namespace

std::optional<std::string> frame_violation(const IsolatedFamily& fam, std::vector<std::size_t> sel) {
    std::sort(sel.begin(), sel.end());
    sel.erase(std::unique(sel.begin(), sel.end()), sel.end());
    for (std::size_t i : sel)
        if (i >= fam.size()) return "family index " + std::to_string(i) + " out of range";
    if (sel.size() < 2) return std::string("a frame needs at least two members");
    if (!std::binary_search(sel.begin(), sel.end(), fam.top())) return std::string("the full universe is not selected");
    for (std::size_t a = 0; a < sel.size(); ++a)
        for (std::size_t b = a + 1; b < sel.size(); ++b)
            if (!join_within(fam, sel, a, b))
                return "members " + describe(fam, sel[a]) + " and " + describe(fam, sel[b]) +
                       " have no least upper bound among the selected members";
    // Pairwise intersections suffice: every multi-way intersection is reached by iterating them.
    for (std::size_t a = 0; a < sel.size(); ++a)
        for (std::size_t b = a + 1; b < sel.size(); ++b) {
            auto meet = family_meet(fam, {sel[a], sel[b]});
            if (meet && !std::binary_search(sel.begin(), sel.end(), *meet))
                return "intersection " + describe(fam, *meet) + " of selected members is not selected";
        }
    return std::nullopt;
}

std::vector<ElementSet> complements_of(const IsolatedFamily& fam, const std::vector<std::size_t>& sel) {
    std::vector<ElementSet> out;
    out.reserve(sel.size());
    for (std::size_t p : sel) {
        ElementSet below;
        for (std::size_t q : sel)
            if (fam.member(q).proper_subset_of(fam.member(p))) below |= fam.member(q);
        ElementSet c = fam.member(p) - below;
        if (c.empty()) throw DefectError("complement of " + describe(fam, p) + " is empty");
        if (!is_closed(fam.algebra(), c)) throw DefectError("complement of " + describe(fam, p) + " is not closed");
        out.push_back(c);
    }
    return out;
}

Frame::Frame(std::shared_ptr<const IsolatedFamily> family, std::vector<std::size_t> selected)
    : family_(std::move(family)), selected_(std::move(selected)) {
    std::sort(selected_.begin(), selected_.end());
    selected_.erase(std::unique(selected_.begin(), selected_.end()), selected_.end());
    if (auto why = frame_violation(*family_, selected_)) throw InputError("not a frame: " + *why);

    const std::size_t k = selected_.size();
    join_.assign(k * k, 0);
    for (std::size_t p = 0; p < k; ++p)
        for (std::size_t q = 0; q < k; ++q) join_[p * k + q] = *join_within(*family_, selected_, p, q);

    for (std::size_t p = 0; p < k; ++p)
        for (std::size_t q = 0; q < k; ++q) {
            if (!less(p, q)) continue;
            bool between = false;
            for (std::size_t r = 0; r < k && !between; ++r) between = less(p, r) && less(r, q);
            if (!between) covers_.emplace_back(p, q);
        }

    complements_ = complements_of(*family_, selected_);

    const std::size_t n = algebra().size();
    least_position_.assign(n, 0);
    for (ElementId e = 0; e < n; ++e) {
        std::optional<std::size_t> found;
        for (std::size_t p = 0; p < k; ++p)
            if (complements_[p].contains(e)) {
                if (found) throw DefectError("complements of a frame overlap");
                found = p;
            }
        if (!found) throw DefectError("complements of a frame do not cover the universe");
        least_position_[e] = *found;
    }
}

ElementSet Frame::upper_union(std::size_t pos) const {
    ElementSet out;
    for (std::size_t q = 0; q < size(); ++q)
        if (leq(pos, q)) out |= complements_[q];
    return out;
}

std::vector<Frame> enumerate_frames(std::shared_ptr<const IsolatedFamily> family) {
    const IsolatedFamily& fam = *family;
    const std::size_t top = fam.top();
    std::vector<std::vector<std::size_t>> candidates;
    std::vector<bool> chosen(fam.size(), false);
    std::vector<std::size_t> current;

    // Members are visited in ascending canonical order, so the intersection of a new member with any
    // chosen one is smaller and has already been decided; intersection closure is enforced on the fly.
    auto search = [&](auto&& self, std::size_t idx) -> void {
        if (idx == fam.size()) {
            candidates.push_back(current);
            return;
        }
        if (idx != top) self(self, idx + 1);
        bool closed = true;
        for (std::size_t c : current) {
            auto meet = family_meet(fam, {c, idx});
            if (meet && *meet != idx && !chosen[*meet]) {
                closed = false;
                break;
            }
        }
        if (!closed) return;
        chosen[idx] = true;
        current.push_back(idx);
        self(self, idx + 1);
        current.pop_back();
        chosen[idx] = false;
    };
    search(search, 0);

    std::vector<Frame> frames;
    for (auto& sel : candidates)
        if (!frame_violation(fam, sel)) frames.emplace_back(family, std::move(sel));
    std::sort(frames.begin(), frames.end(), [](const Frame& a, const Frame& b) { return a.selected() < b.selected(); });
    return frames;
}

std::size_t route_by_least_index(const Frame& frame, std::span<const ElementId> args) {
    if (args.empty()) throw InputError("routing an empty tuple");
    std::size_t pos = frame.least_position(args[0]);
    for (std::size_t i = 1; i < args.size(); ++i) pos = frame.join(pos, frame.least_position(args[i]));
    return pos;
}

}  // namespace plonka
