#include <doctest.h>

#include "plonka/error.hpp"
#include "support/data.hpp"
#include "support/facts.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace plonka;
using testing_support::load;

namespace {

std::shared_ptr<const IsolatedFamily> family_of(const Algebra& alg) {
    return std::make_shared<const IsolatedFamily>(all_isolated(std::make_shared<const Algebra>(alg)));
}

}  // namespace

TEST_CASE("frames of the Boolean sum") {
    const auto fam = family_of(load("a1"));
    const auto frames = enumerate_frames(fam);
    REQUIRE(frames.size() == 3);
    CHECK(frames[0].selected() == std::vector<std::size_t>{0, 1, 2});
    CHECK(frames[0].covering_pairs() == std::vector<std::pair<std::size_t, std::size_t>>{{0, 2}, {1, 2}});
    CHECK(frames[0].complement(2) == testing_support::named(fam->algebra(), {"e", "f"}));
    CHECK(frames[1].selected() == std::vector<std::size_t>{0, 2});
    CHECK(frames[1].complement(1) == testing_support::named(fam->algebra(), {"c", "d", "e", "f"}));
}

TEST_CASE("selections that are not frames are rejected with a reason") {
    const auto fam = family_of(load("a1"));
    CHECK(frame_violation(*fam, {2}).has_value());
    CHECK(frame_violation(*fam, {0, 1}).has_value());
    CHECK_THROWS_AS(Frame(fam, {0}), InputError);
    CHECK_FALSE(frame_violation(*fam, {1, 2}).has_value());
}

TEST_CASE("joins are taken inside the selection") {
    // Chain {a1,a2} ⊂ {a1..a6} ⊂ top together with {a3,a4}: the join of the two atoms inside
    // the selection is the six-element member.
    const auto fam = family_of(load("a7"));
    const Frame fr(fam, {0, 1, 2, 5});
    CHECK(fr.join(0, 1) == 2);
    CHECK(fr.covering_pairs() == std::vector<std::pair<std::size_t, std::size_t>>{{0, 2}, {1, 2}, {2, 3}});
    // Dropping the six-element member leaves the top as the join.
    const Frame wide(fam, {0, 1, 5});
    CHECK(wide.join(0, 1) == 2);
}

TEST_CASE("frame enumeration matches the definition on random algebras") {
    testing_support::Rng rng(99);
    int nontrivial = 0;
    for (int round = 0; round < 200; ++round) {
        const Algebra alg = testing_support::random_algebra(rng, 2 + round % 5, round % 3 == 0);
        const auto fam = family_of(alg);
        std::vector<std::uint64_t> masks;
        for (ElementSet s : fam->members()) masks.push_back(s.mask());
        const auto want = testing_support::oracle::frames(masks, alg.universe().mask());
        const auto got = enumerate_frames(fam);
        REQUIRE(got.size() == want.size());
        for (std::size_t f = 0; f < got.size(); ++f) {
            CHECK(got[f].selected() == want[f]);
            std::vector<std::uint64_t> sel;
            for (std::size_t i : want[f]) sel.push_back(masks[i]);
            for (std::size_t p = 0; p < sel.size(); ++p)
                CHECK(got[f].complement(p).mask() == testing_support::oracle::complement(sel, p));
            CHECK(testing_support::check_frame(got[f], false).empty());
        }
        nontrivial += !got.empty();
    }
    CHECK(nontrivial > 0);
}

TEST_CASE("routing uses the join of least positions") {
    const auto fam = family_of(load("a1"));
    const auto frames = enumerate_frames(fam);
    const Frame& fr = frames[0];
    const auto& alg = fr.algebra();
    const std::vector<ElementId> ac{*alg.find_element("a"), *alg.find_element("c")};
    const std::vector<ElementId> ab{*alg.find_element("a"), *alg.find_element("b")};
    CHECK(route_by_least_index(fr, ac) == 2);
    CHECK(route_by_least_index(fr, ab) == 0);
    CHECK(fr.upper_union(0) == testing_support::named(alg, {"a", "b", "e", "f"}));
}
