#include <doctest.h>
#include <json.hpp>

#include "plonka/error.hpp"
#include "plonka/io.hpp"
#include "support/data.hpp"
#include "support/random.hpp"

using namespace plonka;
using testing_support::load;
using testing_support::read_text;

namespace {

ParseError parse_error(const std::string& text) {
    try {
        parse_algebra(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("document parsed");
    return ParseError(0, 0, "");
}

std::size_t count(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("four-element chain document") {
    const Algebra a4 = load("a4");
    CHECK(a4.name() == "A4");
    CHECK(a4.element_names() == std::vector<std::string>{"a", "b", "c", "d"});
    REQUIRE(a4.operation_count() == 1);
    const std::vector<std::string> want{"a", "b", "c", "d", "b", "b", "c", "d", "c", "c", "d", "c", "d", "d", "d", "c"};
    for (std::size_t k = 0; k < 16; ++k) CHECK(a4.element_name(a4.operation(0).table[k]) == want[k]);
}

TEST_CASE("Boolean sum document") {
    const Algebra a1 = load("a1");
    CHECK(a1.signature() == Signature{{"∧", 2}, {"∨", 2}, {"'", 1}});
    const auto id = [&](const char* n) { return *a1.find_element(n); };
    CHECK(a1.evaluate(0, std::vector<ElementId>{id("a"), id("c")}) == id("e"));
    CHECK(a1.evaluate(1, std::vector<ElementId>{id("b"), id("d")}) == id("f"));
    CHECK(a1.evaluate(2, std::vector<ElementId>{id("e")}) == id("f"));
}

TEST_CASE("syntax errors carry line and column") {
    const auto short_row = parse_error("algebra X\nelements a b\nop * arity 2\na b\nb\n");
    CHECK(short_row.line() == 5);
    CHECK(std::string(short_row.what()).find("row") != std::string::npos);
    const auto unknown = parse_error("algebra X\nelements a b\nop * arity 2\na b\nb q\n");
    CHECK(unknown.line() == 5);
    CHECK(unknown.column() == 3);
    const auto missing_row = parse_error("algebra X\nelements a b\nop * arity 2\na b\n");
    CHECK(missing_row.line() >= 4);
    const auto bad_head = parse_error("algebr X\n");
    CHECK(bad_head.line() == 1);
    CHECK(bad_head.column() == 1);
}

TEST_CASE("semantic errors") {
    CHECK_THROWS_AS(parse_algebra("algebra X\nelements a a\nop * arity 2\na a\na a\n"), InputError);
    CHECK_THROWS_AS(parse_algebra("algebra X\nelements a b\nop ' arity 1\na -> b\n"), InputError);
    CHECK_THROWS_AS(parse_algebra("algebra X\nelements a b\nop ' arity 1\na -> b\na -> a\nb -> a\n"), InputError);
    CHECK_THROWS_AS(parse_algebra("algebra X\nelements a b\nop * arity 4\n"), InputError);
}

TEST_CASE("comments and ternary tables") {
    const std::string doc =
        "# majority\nalgebra M   # trailing\nelements x y\nop m arity 3\n"
        "x x x -> x\nx x y -> x\nx y x -> x\nx y y -> y\ny x x -> x\ny x y -> y\ny y x -> y\ny y y -> y\n";
    const Algebra m = parse_algebra(doc);
    CHECK(m.operation(0).arity == 3);
    CHECK(m.evaluate(0, std::vector<ElementId>{0, 1, 1}) == 1);
    CHECK(parse_algebra(render_algebra(m)) == m);
}

TEST_CASE("render then parse is the identity") {
    for (const char* name : {"a1", "a2", "a2-printed", "a3", "a4", "a5", "a6", "a7", "a8"}) {
        const Algebra alg = load(name);
        CHECK(parse_algebra(render_algebra(alg)) == alg);
    }
    testing_support::Rng rng(3);
    for (int round = 0; round < 100; ++round) {
        const Algebra alg = testing_support::random_algebra(rng, 1 + round % 8, round % 2);
        CHECK(parse_algebra(render_algebra(alg)) == alg);
    }
}

TEST_CASE("system documents round-trip") {
    const DirectSystem a1 = testing_support::load_system("a1");
    const DirectSystem back = parse_system(render_system(a1));
    CHECK(back.index_names() == a1.index_names());
    CHECK(plonka_sum(back) == plonka_sum(a1));
    testing_support::Rng rng(4);
    for (int round = 0; round < 30; ++round) {
        const DirectSystem d = testing_support::random_system(rng, 1 + round % 4, 3, round % 2);
        const DirectSystem e = parse_system(render_system(d));
        CHECK(render_system(e) == render_system(d));
        CHECK(plonka_sum(e).same_tables(plonka_sum(d)));
    }
}

TEST_CASE("system documents are validated by clause") {
    std::string text = read_text("a1.sys");
    const auto pos = text.find("hom 2 3: c -> e d -> f");
    REQUIRE(pos != std::string::npos);
    std::string missing = text.substr(0, pos);
    try {
        parse_system(missing);
        FAIL("accepted");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("homomorphism clause") != std::string::npos);
    }
    std::string bad = text;
    bad.replace(pos, 22, "hom 2 3: c -> f d -> f");
    CHECK_THROWS_AS(parse_system(bad), InputError);
}

TEST_CASE("text report of a negative example") {
    const std::string out = render_report(decompose(load("a8")), ReportFormat::Text);
    CHECK(out.find("A8 is not a Płonka sum") != std::string::npos);
    CHECK(out.find("reason:") != std::string::npos);
    const std::string pos = render_report(decompose(load("a1")), ReportFormat::Text);
    CHECK(pos.find("A1 is a Płonka sum") != std::string::npos);
}

TEST_CASE("json report is stable and well formed") {
    RenderOptions quiet;
    quiet.include_timing = false;
    const std::string one = render_report(decompose(load("a6")), ReportFormat::Json, quiet);
    const std::string two = render_report(decompose(load("a6")), ReportFormat::Json, quiet);
    CHECK(one == two);
    const auto doc = nlohmann::json::parse(one);
    CHECK(doc["schema"] == 1);
    CHECK_FALSE(doc.contains("timing"));
    CHECK(doc["report"]["is_plonka_sum"] == true);
    CHECK(doc["report"]["systems"].size() == 10);
    for (const auto& s : doc["report"]["systems"]) CHECK(s["reconstructs"] == true);

    const auto neg = nlohmann::json::parse(render_report(decompose(load("a3")), ReportFormat::Json));
    CHECK(neg["report"]["systems"].is_array());
    CHECK(neg["report"]["systems"].empty());
    CHECK(neg["report"]["is_plonka_sum"] == false);
    CHECK(neg["timing"].contains("elapsed_seconds"));
}

TEST_CASE("dot output has one digraph per frame and per system") {
    const auto report = decompose(load("a7"));
    const std::string dot = render_report(report, ReportFormat::Dot);
    CHECK(count(dot, "digraph frame") == report.frames.size());
    CHECK(count(dot, "digraph system") == report.systems.size());
    std::size_t start = 0;
    for (const auto& fr : report.frames) {
        const auto open = dot.find("digraph frame", start);
        const auto close = dot.find("}\n", open);
        const std::string body = dot.substr(open, close - open);
        CHECK(count(body, "[label=") == fr.frame.size());
        start = close;
    }
}

TEST_CASE("format names") {
    CHECK(parse_report_format("json") == ReportFormat::Json);
    CHECK(parse_report_format("dot") == ReportFormat::Dot);
    CHECK_THROWS_AS(parse_report_format("yaml"), InputError);
}

TEST_CASE("family and frame listings") {
    const auto fam = all_isolated(load("a1"));
    const std::string text = render_family(fam, ReportFormat::Text);
    CHECK(text.find("B1 {a,b}") != std::string::npos);
    const auto json = nlohmann::json::parse(render_family(fam, ReportFormat::Json));
    CHECK(json["schema"] == 1);
    CHECK(json["isolated"].size() == 3);
}
