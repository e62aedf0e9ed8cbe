#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plonka/isolation.hpp"

namespace plonka {

/// A frame of isolated algebras: a selection J of family members that
///  - has at least two members and is a join-semilattice under inclusion (joins taken inside J),
///  - contains the full universe,
///  - contains every family member that is an intersection of members of J.
///
/// Members are addressed by position 0..size()-1 in ascending family order; the top is last.
class Frame {
public:
    /// Throws InputError naming the failed condition when `selected` is not a frame.
    Frame(std::shared_ptr<const IsolatedFamily> family, std::vector<std::size_t> selected);

    const IsolatedFamily& family() const { return *family_; }
    const std::shared_ptr<const IsolatedFamily>& family_ptr() const { return family_; }
    const Algebra& algebra() const { return family_->algebra(); }

    std::size_t size() const { return selected_.size(); }
    const std::vector<std::size_t>& selected() const { return selected_; }
    std::size_t family_index(std::size_t pos) const { return selected_.at(pos); }
    ElementSet member(std::size_t pos) const { return family_->member(selected_.at(pos)); }
    std::size_t top() const { return selected_.size() - 1; }

    bool leq(std::size_t p, std::size_t q) const { return member(p).subset_of(member(q)); }
    bool less(std::size_t p, std::size_t q) const { return p != q && leq(p, q); }
    std::size_t join(std::size_t p, std::size_t q) const { return join_[p * size() + q]; }

    /// Pairs (p, q) with q covering p inside J, ordered lexicographically.
    const std::vector<std::pair<std::size_t, std::size_t>>& covering_pairs() const { return covers_; }

    /// Member minus the union of all strictly smaller members of J.
    ElementSet complement(std::size_t pos) const { return complements_.at(pos); }
    const std::vector<ElementSet>& complements() const { return complements_; }

    /// Least position whose member contains `e`; `e` lies in exactly that complement.
    std::size_t least_position(ElementId e) const { return least_position_.at(e); }

    /// Union of complements at positions ≥ pos.
    ElementSet upper_union(std::size_t pos) const;

private:
    std::shared_ptr<const IsolatedFamily> family_;
    std::vector<std::size_t> selected_;
    std::vector<std::size_t> join_;
    std::vector<std::pair<std::size_t, std::size_t>> covers_;
    std::vector<ElementSet> complements_;
    std::vector<std::size_t> least_position_;
};

/// Reason `selected` fails to be a frame, or nullopt when it is one.
std::optional<std::string> frame_violation(const IsolatedFamily& family, std::vector<std::size_t> selected);

/// Complement sets for a selection that is known to be a frame. Throws DefectError if any complement
/// comes out empty or not closed.
std::vector<ElementSet> complements_of(const IsolatedFamily& family, const std::vector<std::size_t>& selected);

/// Every frame of the family, ordered lexicographically by selected family indices.
std::vector<Frame> enumerate_frames(std::shared_ptr<const IsolatedFamily> family);

/// Position of the member that routes a tuple: the join of the arguments' least positions.
std::size_t route_by_least_index(const Frame& frame, std::span<const ElementId> args);

}  // namespace plonka
