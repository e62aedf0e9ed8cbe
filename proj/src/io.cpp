#include "plonka/io.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "plonka/error.hpp"

namespace plonka {

namespace {

using Json = nlohmann::ordered_json;

struct Token {
    std::string text;
    std::size_t column = 1;
};

struct Line {
    std::size_t number = 0;
    std::vector<Token> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(start, end - start);
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
            if (i >= raw.size()) break;
            std::size_t j = i;
            while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r') ++j;
            line.tokens.push_back(Token{std::string(raw.substr(i, j - i)), i + 1});
            i = j;
        }
        if (!line.tokens.empty()) out.push_back(std::move(line));
        if (end == text.size()) break;
        start = end + 1;
    }
    return out;
}

[[noreturn]] void fail(const Line& line, std::size_t tok, const std::string& what) {
    const std::size_t col = tok < line.tokens.size() ? line.tokens[tok].column : 1;
    throw ParseError(line.number, col, what);
}

bool is_keyword(const std::string& s) {
    static const std::set<std::string> words = {"algebra", "elements", "op",  "end",   "system",
                                                "indices", "order",    "hom", "component"};
    return words.count(s) != 0;
}

std::size_t parse_count(const Line& line, std::size_t tok) {
    const std::string& s = line.tokens[tok].text;
    if (s.empty() || s.size() > 6 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        fail(line, tok, "expected a positive integer, got '" + s + "'");
    return std::stoul(s);
}

class AlgebraReader {
public:
    AlgebraReader(const std::vector<Line>& lines, std::size_t& pos, unsigned max_arity)
        : lines_(lines), pos_(pos), max_arity_(max_arity) {}

    /// Reads one algebra block; stops before `end` or any line that does not belong to the block.
    Algebra read() {
        const Line& head = next("'algebra <name>'");
        if (head.tokens[0].text != "algebra") fail(head, 0, "expected 'algebra', got '" + head.tokens[0].text + "'");
        if (head.tokens.size() != 2) fail(head, std::min<std::size_t>(head.tokens.size(), 2), "expected 'algebra <name>'");
        const std::string name = head.tokens[1].text;

        const Line& el = next("'elements ...'");
        if (el.tokens[0].text != "elements") fail(el, 0, "expected 'elements', got '" + el.tokens[0].text + "'");
        if (el.tokens.size() < 2) fail(el, 1, "no elements declared");
        for (std::size_t t = 1; t < el.tokens.size(); ++t) {
            const std::string& e = el.tokens[t].text;
            if (e == "->" || is_keyword(e)) fail(el, t, "'" + e + "' cannot be used as an element name");
            if (index_.count(e)) fail(el, t, "duplicate element '" + e + "'");
            if (names_.size() == kMaxUniverse) fail(el, t, "more than 64 elements");
            index_.emplace(e, static_cast<ElementId>(names_.size()));
            names_.push_back(e);
        }

        std::vector<Operation> ops;
        std::set<std::string> op_names;
        while (pos_ < lines_.size() && lines_[pos_].tokens[0].text == "op") {
            const Line& ol = lines_[pos_++];
            if (ol.tokens.size() != 4 || ol.tokens[2].text != "arity")
                fail(ol, std::min<std::size_t>(ol.tokens.size(), 3), "expected 'op <name> arity <k>'");
            const std::string& op_name = ol.tokens[1].text;
            if (!op_names.insert(op_name).second) fail(ol, 1, "duplicate operation '" + op_name + "'");
            const std::size_t arity = parse_count(ol, 3);
            if (arity == 0 || arity > max_arity_)
                fail(ol, 3, "arity must be between 1 and " + std::to_string(max_arity_));
            ops.push_back(read_table(op_name, static_cast<unsigned>(arity)));
        }
        try {
            return Algebra(name, names_, std::move(ops), max_arity_);
        } catch (const ParseError&) {
            throw;
        } catch (const InputError& e) {
            fail(head, 1, e.what());
        }
    }

private:
    const Line& next(const std::string& expected) {
        if (pos_ >= lines_.size()) {
            const std::size_t last = lines_.empty() ? 1 : lines_.back().number + 1;
            throw ParseError(last, 1, "unexpected end of document, expected " + expected);
        }
        return lines_[pos_++];
    }

    ElementId element(const Line& line, std::size_t tok) const {
        auto it = index_.find(line.tokens[tok].text);
        if (it == index_.end()) fail(line, tok, "unknown element '" + line.tokens[tok].text + "'");
        return it->second;
    }

    Operation read_table(const std::string& name, unsigned arity) {
        const std::size_t n = names_.size();
        std::size_t cells = 1;
        for (unsigned k = 0; k < arity; ++k) cells *= n;
        Operation op{name, arity, n, std::vector<ElementId>(cells, ElementMap::kUnmapped)};
        if (arity == 2) {
            for (std::size_t r = 0; r < n; ++r) {
                const Line& row = next("row " + std::to_string(r + 1) + " of operation '" + name + "'");
                if (is_keyword(row.tokens[0].text)) fail(row, 0, "operation '" + name + "' has only " + std::to_string(r) + " rows, expected " + std::to_string(n));
                if (row.tokens.size() != n)
                    fail(row, std::min(row.tokens.size(), n),
                         "row " + std::to_string(r + 1) + " of operation '" + name + "' has " +
                             std::to_string(row.tokens.size()) + " entries, expected " + std::to_string(n));
                for (std::size_t c = 0; c < n; ++c) op.table[r * n + c] = element(row, c);
            }
            return op;
        }
        for (std::size_t i = 0; i < cells; ++i) {
            const Line& l = next("a table line of operation '" + name + "'");
            if (is_keyword(l.tokens[0].text))
                fail(l, 0, "operation '" + name + "' lists " + std::to_string(i) + " of " + std::to_string(cells) + " entries");
            if (l.tokens.size() != arity + 2 || l.tokens[arity].text != "->")
                fail(l, std::min<std::size_t>(l.tokens.size(), arity),
                     "expected " + std::to_string(arity) + " argument(s), '->' and a value");
            std::size_t idx = 0;
            for (unsigned k = 0; k < arity; ++k) idx = idx * n + element(l, k);
            if (op.table[idx] != ElementMap::kUnmapped) fail(l, 0, "entry given twice for operation '" + name + "'");
            op.table[idx] = element(l, arity + 1);
        }
        return op;
    }

    const std::vector<Line>& lines_;
    std::size_t& pos_;
    unsigned max_arity_;
    std::vector<std::string> names_;
    std::map<std::string, ElementId> index_;
};

std::size_t display_width(const std::string& s) {
    std::size_t len = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++len;
    return len;
}

std::string pad(const std::string& s, std::size_t width) {
    const std::size_t len = display_width(s);
    return s + std::string(width > len ? width - len : 0, ' ');
}

void render_op(std::ostringstream& out, const Algebra& alg, const Operation& op) {
    const std::size_t n = alg.size();
    out << "op " << op.name << " arity " << op.arity << "\n";
    if (op.arity == 2) {
        std::size_t width = 0;
        for (const auto& e : alg.element_names()) width = std::max(width, display_width(e));
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                const std::string& v = alg.element_name(op.table[r * n + c]);
                out << (c + 1 < n ? pad(v, width) + " " : v);
            }
            out << "\n";
        }
        return;
    }
    const auto all = alg.universe().elements();
    for_each_tuple(all, op.arity, [&](std::span<const ElementId> t) {
        for (ElementId e : t) out << alg.element_name(e) << " ";
        out << "-> " << alg.element_name(op.apply(t)) << "\n";
    });
}

std::string set_text(const Algebra& alg, ElementSet s) {
    std::string out = "{";
    bool first = true;
    for (ElementId e : s.elements()) {
        if (!first) out += ",";
        out += alg.element_name(e);
        first = false;
    }
    return out + "}";
}

Json set_json(const Algebra& alg, ElementSet s) {
    Json out = Json::array();
    for (ElementId e : s.elements()) out.push_back(alg.element_name(e));
    return out;
}

Json map_json(const Algebra& alg, const ElementMap& m) {
    Json out = Json::object();
    for (auto [a, b] : m.pairs()) out[alg.element_name(a)] = alg.element_name(b);
    return out;
}

std::string map_text(const Algebra& alg, const ElementMap& m) {
    std::string out = "{";
    bool first = true;
    for (auto [a, b] : m.pairs()) {
        if (!first) out += ", ";
        out += alg.element_name(a) + "->" + alg.element_name(b);
        first = false;
    }
    return out + "}";
}

std::string tuple_text(const Algebra& alg, const std::string& op, const std::vector<ElementId>& args) {
    std::string out = op + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ",";
        out += alg.element_name(args[i]);
    }
    return out + ")";
}

std::string family_label(std::size_t idx) { return "B" + std::to_string(idx + 1); }

Json family_json(const IsolatedFamily& fam) {
    Json out = Json::array();
    for (std::size_t i = 0; i < fam.size(); ++i)
        out.push_back(Json{{"label", family_label(i)}, {"elements", set_json(fam.algebra(), fam.member(i))}});
    return out;
}

Json frame_json(const Frame& f, std::size_t id) {
    const Algebra& alg = f.algebra();
    Json members = Json::array();
    Json complements = Json::array();
    for (std::size_t p = 0; p < f.size(); ++p) {
        members.push_back(member_label(f, p));
        complements.push_back(Json{{"member", member_label(f, p)}, {"elements", set_json(alg, f.complement(p))}});
    }
    Json covers = Json::array();
    for (auto [p, q] : f.covering_pairs()) covers.push_back(Json::array({member_label(f, p), member_label(f, q)}));
    return Json{{"id", id + 1}, {"members", members}, {"covering_pairs", covers}, {"complements", complements}};
}

Json system_json(const DirectSystem& s) {
    Json comps = Json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
        Json elems = Json::array();
        for (const auto& e : s.component(i).element_names()) elems.push_back(e);
        comps.push_back(Json{{"index", s.index_name(i)}, {"elements", elems}});
    }
    Json order = Json::array();
    Json homs = Json::array();
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (i == j || !s.leq(i, j)) continue;
            order.push_back(Json::array({s.index_name(i), s.index_name(j)}));
            Json m = Json::object();
            for (auto [a, b] : s.hom(i, j).pairs())
                m[s.component(i).element_name(a)] = s.component(j).element_name(b);
            homs.push_back(Json{{"src", s.index_name(i)}, {"dst", s.index_name(j)}, {"map", m}});
        }
    Json covers = Json::array();
    for (auto [i, j] : s.covering_pairs()) covers.push_back(Json::array({s.index_name(i), s.index_name(j)}));
    return Json{{"name", s.name()}, {"indices", s.index_names()}, {"order", order},
                {"covering_pairs", covers}, {"components", comps}, {"homs", homs}};
}

std::string dot_id(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string rejection_text(const Frame& f, const PairAnalysis& pa) {
    const Algebra& alg = f.algebra();
    const auto& [map, v] = *pa.first_rejected;
    const ElementMap ext = extend(map, alg.size());
    std::vector<ElementId> moved;
    for (ElementId a : v.args) moved.push_back(ext(a));
    const std::string& op = alg.operation(v.op).name;
    return map_text(alg, map) + " rejected: " + tuple_text(alg, op, v.args) + " = " + alg.element_name(v.value) +
           " but " + tuple_text(alg, op, moved) + " = " + alg.element_name(v.mapped_value);
}

std::string report_text(const DecompositionReport& r, const RenderOptions& options) {
    const Algebra& alg = *r.algebra;
    std::ostringstream out;
    out << "algebra " << alg.name() << ": " << alg.size() << " elements, digest " << r.digest << "\n";
    out << "isolated members: " << r.family->size() << "\n";
    for (std::size_t i = 0; i < r.family->size(); ++i)
        out << "  " << family_label(i) << " " << set_text(alg, r.family->member(i)) << "\n";
    out << "frames: " << r.frames.size() << "\n";
    for (std::size_t id = 0; id < r.frames.size(); ++id) {
        const FrameReport& fr = r.frames[id];
        const Frame& f = fr.frame;
        out << "frame " << id + 1 << ":";
        for (std::size_t p = 0; p < f.size(); ++p) out << " " << member_label(f, p);
        out << "\n  covering pairs:";
        for (auto [p, q] : f.covering_pairs()) out << " " << member_label(f, p) << "<" << member_label(f, q);
        out << "\n  complements:";
        for (std::size_t p = 0; p < f.size(); ++p) out << " " << member_label(f, p) << "=" << set_text(alg, f.complement(p));
        out << "\n";
        for (const PairAnalysis& pa : fr.pairs) {
            out << "  " << member_label(f, pa.src) << " -> " << member_label(f, pa.dst) << ": " << pa.plain_count
                << " homomorphisms, " << pa.phoms.size() << " Płonka";
            if (pa.first_rejected) out << "; " << rejection_text(f, pa);
            out << "\n";
        }
        out << "  sound sets: " << fr.sound_sets.size() << "\n";
        if (!fr.failure.empty()) out << "  reason: " << fr.failure << "\n";
    }
    out << "systems: " << r.systems.size() << "\n";
    for (const SystemRecord& rec : r.systems) {
        const DirectSystem& s = rec.system;
        out << "system " << s.name() << " (frame " << rec.frame_id + 1 << ")\n";
        for (std::size_t i = 0; i < s.size(); ++i) {
            out << "  " << s.index_name(i) << " {";
            for (std::size_t e = 0; e < s.component(i).size(); ++e)
                out << (e ? "," : "") << s.component(i).element_name(static_cast<ElementId>(e));
            out << "}\n";
        }
        for (auto [i, j] : s.covering_pairs()) {
            out << "  " << s.index_name(i) << " -> " << s.index_name(j) << ":";
            for (auto [a, b] : s.hom(i, j).pairs())
                out << " " << s.component(i).element_name(a) << "->" << s.component(j).element_name(b);
            out << "\n";
        }
    }
    if (options.include_timing) out << "elapsed: " << r.elapsed_seconds << " s\n";
    out << alg.name() << (r.is_plonka_sum ? " is a Płonka sum" : " is not a Płonka sum") << "\n";
    return out.str();
}

std::string report_dot(const DecompositionReport& r) {
    const Algebra& alg = *r.algebra;
    std::ostringstream out;
    for (std::size_t id = 0; id < r.frames.size(); ++id) {
        const Frame& f = r.frames[id].frame;
        out << "digraph frame" << id + 1 << " {\n  rankdir=BT;\n";
        for (std::size_t p = 0; p < f.size(); ++p)
            out << "  " << dot_id(member_label(f, p)) << " [label=" << dot_id(member_label(f, p) + " " + set_text(alg, f.complement(p)))
                << "];\n";
        for (auto [p, q] : f.covering_pairs())
            out << "  " << dot_id(member_label(f, p)) << " -> " << dot_id(member_label(f, q)) << ";\n";
        out << "}\n";
    }
    for (std::size_t id = 0; id < r.systems.size(); ++id) {
        const DirectSystem& s = r.systems[id].system;
        out << "digraph system" << id + 1 << " {\n  rankdir=BT;\n  label=" << dot_id(s.name()) << ";\n";
        for (std::size_t i = 0; i < s.size(); ++i) out << "  " << dot_id(s.index_name(i)) << ";\n";
        for (auto [i, j] : s.covering_pairs()) {
            std::string label;
            for (auto [a, b] : s.hom(i, j).pairs())
                label += (label.empty() ? "" : " ") + s.component(i).element_name(a) + "->" + s.component(j).element_name(b);
            out << "  " << dot_id(s.index_name(i)) << " -> " << dot_id(s.index_name(j)) << " [label=" << dot_id(label)
                << "];\n";
        }
        out << "}\n";
    }
    return out.str();
}

}  // namespace

Algebra parse_algebra(std::string_view text, unsigned max_arity) {
    const auto lines = tokenize(text);
    std::size_t pos = 0;
    Algebra alg = AlgebraReader(lines, pos, max_arity).read();
    if (pos < lines.size()) fail(lines[pos], 0, "unexpected '" + lines[pos].tokens[0].text + "'");
    return alg;
}

std::string render_algebra(const Algebra& alg) {
    std::ostringstream out;
    out << "algebra " << alg.name() << "\nelements";
    for (const auto& e : alg.element_names()) out << " " << e;
    out << "\n";
    for (const auto& op : alg.operations()) render_op(out, alg, op);
    return out.str();
}

DirectSystem parse_system(std::string_view text, unsigned max_arity) {
    const auto lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, 1, "empty system document");
    std::size_t pos = 0;
    const Line& head = lines[pos++];
    if (head.tokens[0].text != "system" || head.tokens.size() != 2) fail(head, 0, "expected 'system <name>'");
    if (pos >= lines.size() || lines[pos].tokens[0].text != "indices")
        throw ParseError(pos < lines.size() ? lines[pos].number : head.number + 1, 1, "expected 'indices ...'");
    const Line& il = lines[pos++];
    std::vector<std::string> names;
    std::map<std::string, std::size_t> index;
    for (std::size_t t = 1; t < il.tokens.size(); ++t) {
        if (!index.emplace(il.tokens[t].text, names.size()).second)
            fail(il, t, "duplicate index '" + il.tokens[t].text + "'");
        names.push_back(il.tokens[t].text);
    }
    if (names.empty()) fail(il, 1, "no indices declared");
    auto lookup = [&](const Line& l, std::size_t t, std::string text) {
        auto it = index.find(text);
        if (it == index.end()) fail(l, t, "unknown index '" + text + "'");
        return it->second;
    };

    std::vector<std::pair<std::size_t, std::size_t>> order;
    std::vector<std::optional<Algebra>> comps(names.size());
    struct PendingHom {
        std::size_t src, dst;
        std::vector<std::pair<std::string, std::string>> pairs;
        const Line* line;
    };
    std::vector<PendingHom> pending;

    while (pos < lines.size()) {
        const Line& l = lines[pos];
        const std::string& kw = l.tokens[0].text;
        if (kw == "order") {
            ++pos;
            if (l.tokens.size() < 3 || l.tokens.size() % 2 == 0) fail(l, l.tokens.size(), "expected 'order <i> <j>'");
            for (std::size_t t = 1; t + 1 < l.tokens.size(); t += 2)
                order.emplace_back(lookup(l, t, l.tokens[t].text), lookup(l, t + 1, l.tokens[t + 1].text));
        } else if (kw == "component") {
            ++pos;
            if (l.tokens.size() != 2) fail(l, 0, "expected 'component <index>'");
            const std::size_t i = lookup(l, 1, l.tokens[1].text);
            if (comps[i]) fail(l, 1, "component '" + names[i] + "' given twice");
            comps[i] = AlgebraReader(lines, pos, max_arity).read();
            if (pos >= lines.size() || lines[pos].tokens[0].text != "end")
                throw ParseError(pos < lines.size() ? lines[pos].number : lines.back().number + 1, 1,
                                 "expected 'end' after component '" + names[i] + "'");
            if (lines[pos].tokens.size() != 1) fail(lines[pos], 1, "unexpected text after 'end'");
            ++pos;
        } else if (kw == "hom") {
            ++pos;
            // Accept "hom i j: ..." and "hom i j : ...".
            std::vector<Token> toks(l.tokens.begin() + 1, l.tokens.end());
            std::size_t colon = toks.size();
            for (std::size_t t = 0; t < toks.size(); ++t) {
                if (toks[t].text == ":") {
                    colon = t;
                    toks.erase(toks.begin() + static_cast<std::ptrdiff_t>(t));
                    break;
                }
                if (toks[t].text.size() > 1 && toks[t].text.back() == ':') {
                    toks[t].text.pop_back();
                    colon = t + 1;
                    break;
                }
            }
            if (colon != 2) fail(l, 0, "expected 'hom <i> <j>: <e> -> <v> ...'");
            PendingHom h{lookup(l, 1, toks[0].text), lookup(l, 2, toks[1].text), {}, &l};
            std::size_t t = 2;
            while (t < toks.size()) {
                if (t + 2 >= toks.size()) fail(l, t + 1, "incomplete pair in hom line");
                std::string v = toks[t + 2].text;
                if (!v.empty() && v.back() == ',') v.pop_back();
                if (toks[t + 1].text != "->") fail(l, t + 2, "expected '->'");
                h.pairs.emplace_back(toks[t].text, v);
                t += 3;
            }
            pending.push_back(std::move(h));
        } else {
            fail(l, 0, "unexpected '" + kw + "'");
        }
    }

    std::vector<Algebra> components;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (!comps[i]) throw InputError("family clause: component '" + names[i] + "' is missing");
        components.push_back(std::move(*comps[i]));
    }
    std::vector<DirectSystem::Edge> edges;
    for (const PendingHom& h : pending) {
        const Algebra& a = components[h.src];
        const Algebra& b = components[h.dst];
        ElementMap m(a.size(), a.universe());
        for (const auto& [from, to] : h.pairs) {
            auto x = a.find_element(from);
            auto y = b.find_element(to);
            if (!x) fail(*h.line, 0, "'" + from + "' is not an element of component '" + names[h.src] + "'");
            if (!y) fail(*h.line, 0, "'" + to + "' is not an element of component '" + names[h.dst] + "'");
            if (m(*x) != ElementMap::kUnmapped) fail(*h.line, 0, "'" + from + "' is mapped twice");
            m.set(*x, *y);
        }
        for (ElementId e = 0; e < a.size(); ++e)
            if (m(e) == ElementMap::kUnmapped)
                fail(*h.line, 0, "map does not send '" + a.element_name(e) + "' anywhere");
        edges.push_back({h.src, h.dst, std::move(m)});
    }
    return DirectSystem(head.tokens[1].text, std::move(names), order, std::move(components), std::move(edges));
}

std::string render_system(const DirectSystem& s) {
    std::ostringstream out;
    out << "system " << s.name() << "\nindices";
    for (const auto& n : s.index_names()) out << " " << n;
    out << "\n";
    const auto covers = s.covering_pairs();
    for (auto [i, j] : covers) out << "order " << s.index_name(i) << " " << s.index_name(j) << "\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        out << "component " << s.index_name(i) << "\n";
        out << render_algebra(s.component(i));
        out << "end\n";
    }
    for (auto [i, j] : covers) {
        out << "hom " << s.index_name(i) << " " << s.index_name(j) << ":";
        for (auto [a, b] : s.hom(i, j).pairs())
            out << " " << s.component(i).element_name(a) << " -> " << s.component(j).element_name(b);
        out << "\n";
    }
    return out.str();
}

ReportFormat parse_report_format(std::string_view name) {
    if (name == "json") return ReportFormat::Json;
    if (name == "text") return ReportFormat::Text;
    if (name == "dot") return ReportFormat::Dot;
    throw InputError("unknown format '" + std::string(name) + "' (expected json, text or dot)");
}

std::string render_report(const DecompositionReport& r, ReportFormat format, const RenderOptions& options) {
    if (format == ReportFormat::Text) return report_text(r, options);
    if (format == ReportFormat::Dot) return report_dot(r);

    const Algebra& alg = *r.algebra;
    Json frames = Json::array();
    for (std::size_t id = 0; id < r.frames.size(); ++id) {
        const FrameReport& fr = r.frames[id];
        const Frame& f = fr.frame;
        Json j = frame_json(f, id);
        Json pairs = Json::array();
        for (const PairAnalysis& pa : fr.pairs) {
            Json maps = Json::array();
            for (const PHom& h : pa.phoms) maps.push_back(map_json(alg, h.map));
            Json p{{"src", member_label(f, pa.src)}, {"dst", member_label(f, pa.dst)},
                   {"homomorphisms", pa.plain_count}, {"p_homomorphisms", maps}};
            if (pa.first_rejected) {
                const auto& [map, v] = *pa.first_rejected;
                Json args = Json::array();
                for (ElementId a : v.args) args.push_back(alg.element_name(a));
                p["rejected"] = Json{{"map", map_json(alg, map)},
                                     {"operation", alg.operation(v.op).name},
                                     {"arguments", args},
                                     {"value", alg.element_name(v.value)},
                                     {"mapped_value", alg.element_name(v.mapped_value)}};
            }
            pairs.push_back(std::move(p));
        }
        j["pairs"] = std::move(pairs);
        j["sound_sets"] = fr.sound_sets.size();
        j["failure"] = fr.failure.empty() ? Json(nullptr) : Json(fr.failure);
        frames.push_back(std::move(j));
    }
    Json systems = Json::array();
    for (const SystemRecord& rec : r.systems) {
        Json s = system_json(rec.system);
        s["frame"] = rec.frame_id + 1;
        s["reconstructs"] = true;
        systems.push_back(std::move(s));
    }
    Json elements = Json::array();
    for (const auto& e : alg.element_names()) elements.push_back(e);
    Json body{{"algebra", Json{{"name", alg.name()}, {"digest", r.digest}, {"elements", elements}}},
              {"isolated", family_json(*r.family)},
              {"frames", frames},
              {"systems", systems},
              {"is_plonka_sum", r.is_plonka_sum}};
    Json doc{{"schema", 1}, {"report", body}};
    if (options.include_timing) doc["timing"] = Json{{"elapsed_seconds", r.elapsed_seconds}};
    return doc.dump(2) + "\n";
}

std::string render_family(const IsolatedFamily& fam, ReportFormat format) {
    if (format == ReportFormat::Json) return Json{{"schema", 1}, {"isolated", family_json(fam)}}.dump(2) + "\n";
    std::ostringstream out;
    for (std::size_t i = 0; i < fam.size(); ++i)
        out << family_label(i) << " " << set_text(fam.algebra(), fam.member(i)) << "\n";
    return out.str();
}

std::string render_frames(const std::vector<Frame>& frames, ReportFormat format) {
    if (format == ReportFormat::Json) {
        Json arr = Json::array();
        for (std::size_t id = 0; id < frames.size(); ++id) arr.push_back(frame_json(frames[id], id));
        return Json{{"schema", 1}, {"frames", arr}}.dump(2) + "\n";
    }
    std::ostringstream out;
    for (std::size_t id = 0; id < frames.size(); ++id) {
        const Frame& f = frames[id];
        out << "frame " << id + 1 << ":";
        for (std::size_t p = 0; p < f.size(); ++p)
            out << " " << member_label(f, p) << "=" << set_text(f.algebra(), f.complement(p));
        out << "\n";
    }
    return out.str();
}

std::string render_partition(const Algebra& alg, const PartitionFunction& f) {
    std::ostringstream out;
    render_op(out, alg, f.as_operation("f"));
    return out.str();
}

std::string render_axioms(const Algebra& alg, const AxiomReport& report) {
    std::ostringstream out;
    for (const AxiomResult& r : report.results) {
        out << axiom_name(r.axiom) << (r.holds ? " holds" : " fails");
        if (!r.holds) {
            out << " at";
            if (r.op) out << " " << alg.operation(*r.op).name;
            out << " (";
            for (std::size_t i = 0; i < r.witness.size(); ++i) {
                const bool index_slot = r.axiom == Axiom::P6 && i + 1 == r.witness.size();
                out << (i ? ", " : "") << (index_slot ? "l=" + std::to_string(r.witness[i]) : alg.element_name(r.witness[i]));
            }
            out << ")";
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace plonka
