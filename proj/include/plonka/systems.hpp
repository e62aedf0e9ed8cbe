#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "plonka/phom.hpp"

namespace plonka {

/// One Płonka homomorphism for every comparable pair of a frame, path-independent along covers.
/// Maps are over ambient element ids.
class SoundHomSet {
public:
    SoundHomSet(std::size_t frame_size, std::vector<std::optional<ElementMap>> homs)
        : k_(frame_size), homs_(std::move(homs)) {}

    std::size_t frame_size() const { return k_; }
    /// Defined exactly for p ≤ q.
    const ElementMap& hom(std::size_t p, std::size_t q) const;
    bool defined(std::size_t p, std::size_t q) const { return homs_.at(p * k_ + q).has_value(); }

    friend bool operator==(const SoundHomSet&, const SoundHomSet&) = default;

private:
    std::size_t k_ = 0;
    std::vector<std::optional<ElementMap>> homs_;
};

/// All sound sets of the frame in lexicographic order of the covering assignments
/// (covering pairs taken in their canonical order). Throws ResourceError past `max_results`.
std::vector<SoundHomSet> search_sound_sets(const Frame& frame, std::size_t max_results = 1'000'000);

/// Same search with precomputed candidate P-homomorphisms per covering pair (parallel to
/// frame.covering_pairs()).
std::vector<SoundHomSet> search_sound_sets(const Frame& frame, const std::vector<std::vector<PHom>>& cover_candidates,
                                           std::size_t max_results);

/// Reason the set is not sound for the frame, or nullopt. Checks identities on the diagonal,
/// the Płonka condition on covering pairs and agreement along every maximal covering chain.
std::optional<std::string> sound_set_violation(const Frame& frame, const SoundHomSet& sound);

/// Direct system: a join-semilattice of indices, disjoint similar algebras and coherent homomorphisms.
/// Homomorphisms map component-local element ids.
class DirectSystem {
public:
    struct Edge {
        std::size_t src;
        std::size_t dst;
        ElementMap map;
    };

    /// `order` lists pairs i ≤ j (closed reflexively and transitively). Maps for identities may be
    /// omitted, as may maps for non-covering pairs (then derived along covers). Throws InputError
    /// naming the violated clause.
    DirectSystem(std::string name, std::vector<std::string> index_names,
                 const std::vector<std::pair<std::size_t, std::size_t>>& order, std::vector<Algebra> components,
                 std::vector<Edge> homs);

    const std::string& name() const { return name_; }
    std::size_t size() const { return index_names_.size(); }
    const std::vector<std::string>& index_names() const { return index_names_; }
    const std::string& index_name(std::size_t i) const { return index_names_.at(i); }
    bool leq(std::size_t i, std::size_t j) const { return leq_[i * size() + j]; }
    std::size_t join(std::size_t i, std::size_t j) const { return join_[i * size() + j]; }
    std::size_t top() const { return top_; }
    const std::vector<Algebra>& components() const { return components_; }
    const Algebra& component(std::size_t i) const { return components_.at(i); }
    const ElementMap& hom(std::size_t i, std::size_t j) const;
    bool is_trivial() const { return size() < 2; }

    /// Pairs (i, j) with j covering i, lexicographic.
    std::vector<std::pair<std::size_t, std::size_t>> covering_pairs() const;

    /// Component index and local id of each element of the sum universe (components in index order).
    std::vector<std::pair<std::size_t, ElementId>> sum_layout() const;

private:
    std::string name_;
    std::vector<std::string> index_names_;
    std::vector<bool> leq_;
    std::vector<std::size_t> join_;
    std::size_t top_ = 0;
    std::vector<Algebra> components_;
    std::map<std::pair<std::size_t, std::size_t>, ElementMap> homs_;
};

/// The direct system carried by a frame and a sound set: complement algebras indexed by frame positions.
DirectSystem assemble(const Frame& frame, const SoundHomSet& sound, std::string name = "system");

/// Płonka sum: universe is the union of the components (in index order); each operation maps every
/// argument into the component at the join of the argument indices and evaluates there.
Algebra plonka_sum(const DirectSystem& system);

/// True iff the sum has exactly the elements and tables of `original` (matched by element name).
bool verify_reconstruction(const Algebra& original, const DirectSystem& system);

struct DecomposeOptions {
    std::size_t max_universe = kDefaultMaxUniverse;
    std::size_t max_sound_sets_per_frame = 1'000'000;
};

struct FrameReport {
    Frame frame;
    std::vector<PairAnalysis> pairs;  ///< every comparable pair p < q
    std::vector<SoundHomSet> sound_sets;
    std::string failure;  ///< empty when the frame carries at least one system
};

struct SystemRecord {
    std::size_t frame_id = 0;
    std::size_t sound_set_id = 0;
    DirectSystem system;
};

struct DecompositionReport {
    std::shared_ptr<const Algebra> algebra;
    std::shared_ptr<const IsolatedFamily> family;
    std::vector<FrameReport> frames;
    std::vector<SystemRecord> systems;
    bool is_plonka_sum = false;
    std::string digest;
    double elapsed_seconds = 0.0;
};

/// Full two-step decomposition: isolated family, frames with complements, Płonka homomorphisms,
/// sound sets and the reconstruction-checked systems they carry.
DecompositionReport decompose(std::shared_ptr<const Algebra> alg, const DecomposeOptions& options = {});
DecompositionReport decompose(const Algebra& alg, const DecomposeOptions& options = {});

/// Stable 64-bit FNV-1a digest of element names and tables, as 16 hex digits.
std::string algebra_digest(const Algebra& alg);

/// Name used for frame position `pos` in reports and assembled systems: "B<family index + 1>".
std::string member_label(const Frame& frame, std::size_t pos);

}  // namespace plonka
