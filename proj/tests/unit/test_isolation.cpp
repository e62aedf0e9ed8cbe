#include <cstdlib>

#include <doctest.h>

#include "plonka/error.hpp"
#include "support/data.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace plonka;
using testing_support::load;
using testing_support::named;

namespace {

std::vector<std::vector<std::string>> names_of(const IsolatedFamily& fam) {
    std::vector<std::vector<std::string>> out;
    for (ElementSet s : fam.members()) {
        std::vector<std::string> n;
        for (ElementId e : s.elements()) n.push_back(fam.algebra().element_name(e));
        out.push_back(n);
    }
    return out;
}

}  // namespace

TEST_CASE("Boolean sum has three isolated subuniverses") {
    const Algebra a1 = load("a1");
    const auto fam = all_isolated(a1);
    CHECK(names_of(fam) == std::vector<std::vector<std::string>>{{"a", "b"}, {"c", "d"}, {"a", "b", "c", "d", "e", "f"}});
    CHECK_FALSE(is_isolated(a1, named(a1, {"e", "f"})));
    CHECK(is_closed(a1, named(a1, {"e", "f"})));
    CHECK(fam.top() == 2);
}

TEST_CASE("family sizes of the small examples") {
    CHECK(all_isolated(load("a2")).size() == 3);
    CHECK(all_isolated(load("a3")).size() == 2);
    CHECK(all_isolated(load("a8")).size() == 6);
}

TEST_CASE("eleven-element example lists six nested universes") {
    const auto fam = all_isolated(load("a7"));
    CHECK(names_of(fam) == std::vector<std::vector<std::string>>{
                               {"a1", "a2"},
                               {"a3", "a4"},
                               {"a1", "a2", "a3", "a4", "a5", "a6"},
                               {"a1", "a2", "a3", "a4", "a5", "a6", "a9"},
                               {"a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8"},
                               {"a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9", "a10", "a11"}});
}

TEST_CASE("scan agrees with the definition on random algebras") {
    testing_support::Rng rng(2024);
    for (int round = 0; round < 150; ++round) {
        const Algebra alg = testing_support::random_algebra(rng, 1 + round % 6, round % 4 == 0);
        const auto fam = all_isolated(alg);
        const auto want = testing_support::oracle::isolated_family(alg);
        REQUIRE(fam.size() == want.size());
        for (std::uint64_t m : want) CHECK(fam.index_of(ElementSet(m)).has_value());
        for (std::size_t i = 1; i < fam.size(); ++i)
            CHECK(canonical_compare(fam.member(i - 1), fam.member(i)) < 0);
        CHECK(fam.member(fam.top()) == alg.universe());
    }
}

TEST_CASE("join and meet on the family") {
    const Algebra a7 = load("a7");
    const auto fam = all_isolated(a7);
    CHECK(family_join(fam, 0, 1) == 2);
    CHECK(family_join(fam, 3, 4) == 5);
    CHECK(family_meet(fam, {3, 4}) == std::optional<std::size_t>(2));
    CHECK_FALSE(family_meet(fam, {0, 1}).has_value());
    CHECK_THROWS_AS(family_join(fam, 0, 17), InputError);
}

TEST_CASE("size cap and unary-only signatures") {
    const Algebra a7 = load("a7");
    CHECK_THROWS_AS(all_isolated(a7, 10), ResourceError);
    const Algebra unary("U", {"a", "b"}, {Operation{"'", 1, 2, {1, 0}}});
    CHECK_THROWS_AS(all_isolated(unary), InputError);
}

TEST_CASE("environment override of the cap") {
    ::setenv("PLONKA_MAX_UNIVERSE", "9", 1);
    CHECK(max_universe_from_environment() == 9);
    ::setenv("PLONKA_MAX_UNIVERSE", "lots", 1);
    CHECK(max_universe_from_environment() == kDefaultMaxUniverse);
    ::unsetenv("PLONKA_MAX_UNIVERSE");
    CHECK(max_universe_from_environment() == kDefaultMaxUniverse);
}

TEST_CASE("relative isolation follows inclusion") {
    const Algebra a7 = load("a7");
    const auto fam = all_isolated(a7);
    for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t j = 0; j < fam.size(); ++j)
            CHECK(is_isolated_within(a7, fam.member(j), fam.member(i)) == fam.leq(i, j));
}
