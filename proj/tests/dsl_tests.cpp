#include <doctest.h>

#include <fstream>
#include <sstream>

#include "typoid/constructions.hpp"
#include "typoid/dsl.hpp"

using namespace typoid;
using namespace typoid::dsl;

namespace {

std::vector<std::string> codes(const ParseResult& r) {
    std::vector<std::string> out;
    for (const auto& d : r.diagnostics) out.push_back(d.code);
    return out;
}

bool has_code(const ParseResult& r, const std::string& code) {
    const auto c = codes(r);
    return std::find(c.begin(), c.end(), code) != c.end();
}

const Diagnostic& first_with(const ParseResult& r, const std::string& code) {
    for (const auto& d : r.diagnostics)
        if (d.code == code) return d;
    FAIL("no diagnostic " << code);
    return r.diagnostics.front();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* const z2_text = R"(typoid Z2 {
  terms x ;
  path p : x -> x ;
  comp p . p = refl_x ;
  pinv p = p ;
  edge e : x ~ x ;
  strictunits ;
  star e * e = eqv_x ;
  einv e = e ;
  idtoeqv p => e ;
}
)";

} // namespace

TEST_CASE("a bare term list is the unit typoid") {
    const auto r = parse("typoid U { terms x ; }");
    REQUIRE(r.ok());
    const auto* u = r.document->find_typoid("U");
    REQUIRE(u);
    CHECK(u->typoid.term_count() == 1);
    CHECK(u->typoid.path_count() == 1);
    CHECK(u->typoid.edge_count() == 1);
    CHECK(u->paths == std::vector<std::string>{"refl_x"});
    CHECK(u->edges == std::vector<std::string>{"eqv_x"});
    CHECK(validate_typoid(u->typoid).valid());
}

TEST_CASE("the Z2 source matches the programmatic equality typoid") {
    const auto r = parse(z2_text);
    REQUIRE(r.ok());
    const auto& parsed = *r.document->find_typoid("Z2");
    CHECK(parsed.typoid.term_count() == 1);
    CHECK(parsed.typoid.path_count() == 2);
    auto expected = with_default_names(equality_typoid(cyclic_groupoid(2), "Z2"));
    expected.terms = {"x"};
    expected.paths = {"refl_x", "p"};
    expected.edges = {"eqv_x", "e"};
    CHECK(structurally_equal(parsed, expected));
}

TEST_CASE("explicit and implicit unit entries give the same typoid") {
    const auto a = parse(z2_text);
    const auto b = parse(read_file(CORPUS_DIR "/z2_explicit.typoid"));
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    CHECK(structurally_equal(*a.document->find_typoid("Z2"), *b.document->find_typoid("Z2")));
}

TEST_CASE("an endpoint mismatch in comp is reported at the entry") {
    const auto r = parse("typoid G {\n  terms a b ;\n  path p : a -> b ;\n  path q : a -> b ;\n  comp p . q = p ;\n}\n");
    CHECK_FALSE(r.ok());
    const auto& d = first_with(r, "E005");
    CHECK(d.span.line == 5);
    CHECK(d.span.column == 12);
    CHECK(d.span.length == 1);
    CHECK(d.format().rfind("5:12: error[E005]:", 0) == 0);
}

TEST_CASE("each diagnostic code is raised by its own mistake") {
    CHECK(has_code(parse("typoid U { terms x ; $ }"), "E001"));
    CHECK(has_code(parse("typoid U { terms x }"), "E002"));
    CHECK(has_code(parse("typoid U { terms x x ; }"), "E003"));
    CHECK(has_code(parse("typoid U { terms x ; }\ntypoid U { terms y ; }"), "E003"));
    CHECK(has_code(parse("typoid U { terms x ; edge e : x ~ y ; }"), "E004"));
    CHECK(has_code(parse("typoid U { terms x ; edge e : x ~ x ; einv e = e ; einv e = eqv_x ; star e * e = eqv_x ; strictunits ; }"), "E006"));
    CHECK(has_code(parse("typoid U { terms x ; path p : x -> x ; pinv p = p ; }"), "E007"));
    CHECK(has_code(parse("typoid U { }"), "E008"));
    CHECK(has_code(parse("typoid A { terms a b ; }\ntypoid B { terms c ; }\nmorphism m : A -> B { term a |-> c ; }"), "E009"));
    CHECK(has_code(parse("morphism m : A -> B { }"), "E004"));
}

TEST_CASE("a repeated identical entry is only a warning") {
    const auto r = parse("typoid U { terms x ; edge e : x ~ x ; strictunits ; star e * e = eqv_x ; star e * e = eqv_x ; einv e = e ; }");
    REQUIRE(r.ok());
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics.front().code == "W001");
    CHECK(r.diagnostics.front().severity == Diagnostic::Severity::Warning);
}

TEST_CASE("parsing recovers and reports every error") {
    const auto r = parse("typoid A { terms x ; edge e : x ~ y ; }\ntypoid B { terms y }\ntypoid C { terms z ; path p : z -> w ; }");
    CHECK_FALSE(r.ok());
    CHECK(codes(r) == std::vector<std::string>{"E004", "E008", "E002", "E004"});
    CHECK(std::is_sorted(r.diagnostics.begin(), r.diagnostics.end(), [](const Diagnostic& a, const Diagnostic& b) { return a.span < b.span; }));
}

TEST_CASE("comments before an error shift its line but not its column") {
    const std::string body = "typoid U {\n  terms x ;\n  edge e : x ~ nowhere ;\n}\n";
    const auto plain = parse(body);
    const auto commented = parse("# leading comment\n# another one\n" + body);
    REQUIRE(plain.diagnostics.size() == commented.diagnostics.size());
    for (std::size_t i = 0; i < plain.diagnostics.size(); ++i) {
        CHECK(plain.diagnostics[i].code == commented.diagnostics[i].code);
        CHECK(plain.diagnostics[i].message == commented.diagnostics[i].message);
        CHECK(plain.diagnostics[i].span.line + 2 == commented.diagnostics[i].span.line);
        CHECK(plain.diagnostics[i].span.column == commented.diagnostics[i].span.column);
    }
    const auto trailing = parse("typoid U {\n  terms x ; # note\n  edge e : x ~ nowhere ;\n}\n");
    CHECK(trailing.diagnostics == plain.diagnostics);
}

TEST_CASE("canonical text is a fixed point of parse then serialize") {
    const auto once = serialize(*parse(z2_text).document);
    CHECK(once == z2_text);
    const auto twice = serialize(*parse(once).document);
    CHECK(once == twice);
}

TEST_CASE("every corpus file round-trips") {
    for (const char* name : {"unit", "twoedge", "ab", "stock", "z2_explicit"}) {
        CAPTURE(name);
        const auto r = parse(read_file(std::string(CORPUS_DIR "/") + name + ".typoid"));
        REQUIRE(r.ok());
        const auto text = serialize(*r.document);
        const auto back = parse(text);
        REQUIRE(back.ok());
        CHECK(structurally_equal(*r.document, *back.document));
        CHECK(serialize(*back.document) == text);
    }
}

TEST_CASE("stock typoids and their constructions round-trip") {
    for (const auto& t : stock::corpus()) {
        CAPTURE(t.name);
        Document d;
        d.declarations.push_back({with_default_names(t), {}});
        const auto r = parse(serialize(d));
        REQUIRE(r.ok());
        CHECK(structurally_equal(d, *r.document));
    }
}

TEST_CASE("products keep factor names and round-trip") {
    const auto doc = parse(read_file(CORPUS_DIR "/ab.typoid"));
    REQUIRE(doc.ok());
    const auto& a = *doc.document->find_typoid("A");
    const auto& b = *doc.document->find_typoid("B");
    const auto p = product_typoid(a.typoid, b.typoid);
    const auto named = product_names(a, b, p.typoid);
    CHECK(named.terms == std::vector<std::string>{"a0_b", "a1_b"});
    Document d;
    d.declarations.push_back({named, {}});
    const auto r = parse(serialize(d));
    REQUIRE(r.ok());
    CHECK(structurally_equal(d, *r.document));
}

TEST_CASE("morphisms are parsed with implicit refl and eqv images") {
    const auto r = parse(read_file(CORPUS_DIR "/stock.typoid"));
    REQUIRE(r.ok());
    const auto& d = *r.document;
    const auto* pick = d.find_morphism("pick_a");
    REQUIRE(pick);
    const auto* unit = d.find_typoid("unit");
    const auto* prop = d.find_typoid("prop2");
    CHECK(pick->term_map == std::vector<TermId>{TermId{0u}});
    CHECK(validate_morphism(unit->typoid, prop->typoid, *pick).valid());

    const auto* collapse = d.find_morphism("collapse");
    REQUIRE(collapse);
    CHECK(validate_morphism(d.find_typoid("eq_z2")->typoid, unit->typoid, *collapse).valid());

    const auto* flip = d.find_morphism("flip");
    REQUIRE(flip);
    CHECK(flip->term_map == std::vector<TermId>{TermId{1u}, TermId{0u}});
    CHECK(d.morphisms().size() == 3);
    CHECK(d.typoids().size() == 5);
}

TEST_CASE("an empty term list declares the empty typoid") {
    const auto r = parse("typoid E { terms ; }");
    REQUIRE(r.ok());
    CHECK(r.document->find_typoid("E")->typoid.term_count() == 0);
    CHECK(serialize(*r.document) == "typoid E {\n  terms ;\n  strictunits ;\n}\n");
}

TEST_CASE("structural equality ignores id layout but not names") {
    const auto a = parse("typoid P { terms a b ; }");
    const auto b = parse("typoid P { terms b a ; }");
    const auto c = parse("typoid P { terms a c ; }");
    CHECK(structurally_equal(*a.document, *b.document));
    CHECK_FALSE(structurally_equal(*a.document, *c.document));
}
