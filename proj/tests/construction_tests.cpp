#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "typoid/constructions.hpp"
#include "typoid/error.hpp"
#include "typoid/univalence.hpp"

using namespace typoid;

namespace {

bool univalent(const Typoid& t) { return std::holds_alternative<UnivalenceCertificate>(check_univalence(t)); }

} // namespace

TEST_CASE("equality typoid of Z2 has two edges in two cells") {
    const auto t = stock::eq_z2();
    CHECK(t.term_count() == 1);
    CHECK(t.edge_count() == 2);
    CHECK_FALSE(t.layer.cells.same(EdgeId{0u}, EdgeId{1u}));
    CHECK(univalent(t));
}

TEST_CASE("product layout pairs ids row-major") {
    const auto a = stock::prop2();
    const auto b = stock::eq_z2();
    const auto p = product_typoid(a, b);
    const auto& prov = p.provenance;
    CHECK(p.typoid.name == "prop2_x_eq_z2");
    CHECK(p.typoid.term_count() == 2);
    CHECK(p.typoid.path_count() == 8);
    CHECK(p.typoid.edge_count() == 8);
    CHECK(validate_typoid(p.typoid).valid());
    for (std::size_t e1 = 0; e1 < a.edge_count(); ++e1)
        for (std::size_t e2 = 0; e2 < b.edge_count(); ++e2) {
            const EdgeId e = prov.pair_edge(EdgeId{e1}, EdgeId{e2});
            CHECK(prov.unpair_edge(e) == std::pair{EdgeId{e1}, EdgeId{e2}});
            // componentwise composition on composable pairs
            for (std::size_t d1 = 0; d1 < a.edge_count(); ++d1) {
                if (!a.layer.composable(EdgeId{e1}, EdgeId{d1})) continue;
                for (std::size_t d2 = 0; d2 < b.edge_count(); ++d2) {
                    if (!b.layer.composable(EdgeId{e2}, EdgeId{d2})) continue;
                    const EdgeId d = prov.pair_edge(EdgeId{d1}, EdgeId{d2});
                    CHECK(p.typoid.star(e, d) == prov.pair_edge(a.star(EdgeId{e1}, EdgeId{d1}), b.star(EdgeId{e2}, EdgeId{d2})));
                }
            }
        }
}

TEST_CASE("product cells are componentwise") {
    const auto a = stock::eqv_rich();
    const auto b = stock::twoedge();
    const auto p = product_typoid(a, b);
    const auto& prov = p.provenance;
    for (std::size_t e = 0; e < p.typoid.edge_count(); ++e)
        for (std::size_t d = 0; d < p.typoid.edge_count(); ++d) {
            const auto [e1, e2] = prov.unpair_edge(EdgeId{e});
            const auto [d1, d2] = prov.unpair_edge(EdgeId{d});
            CHECK(p.typoid.layer.cells.same(EdgeId{e}, EdgeId{d}) == (a.layer.cells.same(e1, d1) && b.layer.cells.same(e2, d2)));
        }
}

TEST_CASE("projections and pairing") {
    const auto a = stock::prop2();
    const auto b = stock::eqv_rich();
    const auto p = product_typoid(a, b);
    const auto [pr1, pr2] = projections(p.typoid, p.provenance);
    CHECK(validate_morphism(p.typoid, a, pr1).valid());
    CHECK(validate_morphism(p.typoid, b, pr2).valid());
    CHECK(is_strict(p.typoid, a, pr1));

    const auto c = stock::prop2();
    const auto f = identity_morphism(c);
    auto g = enumerate_typoid_functions(c, b, 100).back();
    g.source = c.name;
    const auto h = pairing(f, g, p.typoid, p.provenance);
    CHECK(validate_morphism(c, p.typoid, h).valid());
    const auto back1 = compose_morphisms(h, pr1);
    const auto back2 = compose_morphisms(h, pr2);
    CHECK(back1.term_map == f.term_map);
    CHECK(back1.edge_map == f.edge_map);
    CHECK(back2.edge_map == g.edge_map);
    CHECK_THROWS_AS(projections(p.typoid, product_typoid(a, a).provenance), ContractError);
}

TEST_CASE("truncation keeps the base and has one edge per ordered pair") {
    const auto t = truncate(stock::eq_z2());
    CHECK(t.name == "eq_z2_t");
    CHECK(t.path_count() == 2);
    CHECK(t.edge_count() == 1);
    CHECK(validate_typoid(t).valid());
    const auto b = truncate(universe_typoid(std::vector<std::size_t>{1, 2, 1}));
    CHECK(b.edge_count() == 9);
    for (std::uint32_t x = 0; x < 3; ++x)
        for (std::uint32_t y = 0; y < 3; ++y) {
            const EdgeId e = truncation_edge(b, TermId{x}, TermId{y});
            CHECK(b.layer.ends[e.index()] == Endpoints{TermId{x}, TermId{y}});
        }
    CHECK(validate_typoid(b).valid());
}

TEST_CASE("term maps into a truncation become typoid functions") {
    const auto src = stock::eq_z2();
    const auto dst = truncate(stock::prop2());
    for (const auto& f : testing::all_term_maps(1, 2)) {
        const auto m = morphism_into_truncation(src, dst, f);
        CHECK(validate_morphism(src, dst, m).valid());
        for (EdgeId e : m.edge_map) CHECK(e == truncation_edge(dst, f[0], f[0]));
    }
}

TEST_CASE("a path with no possible image is named") {
    const auto src = stock::prop2();
    const auto dst = truncate(stock::bool_disc());
    const std::vector<TermId> f{TermId{0u}, TermId{1u}};
    try {
        (void)morphism_into_truncation(src, dst, f);
        FAIL("expected InputError");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("path p") != std::string::npos);
    }
    CHECK_THROWS_AS(morphism_into_truncation(src, dst, std::vector<TermId>{TermId{0u}}), InputError);
}

TEST_CASE("univalent completion adds a path per cell") {
    const auto c = univalent_completion(stock::twoedge());
    CHECK(c.path_count() == 2);
    CHECK(validate_typoid(c).valid());
    CHECK(univalent(c));

    const auto t = univalent_completion(truncate(stock::bool_disc()));
    CHECK(t.path_count() == 4);
    CHECK(HomIndex<PathId>(t.base)(TermId{0u}, TermId{1u}).size() == 1);
    CHECK(univalent(t));

    for (const auto& x : stock::corpus()) {
        CAPTURE(x.name);
        const auto y = univalent_completion(x);
        CHECK(validate_typoid(y).valid());
        CHECK(univalent(y));
    }
}

TEST_CASE("universe typoids list bijections lexicographically") {
    const std::vector<std::size_t> one_one{1, 1};
    const auto u11 = universe_typoid(one_one);
    CHECK(u11.term_count() == 2);
    CHECK(HomIndex<EdgeId>(u11.layer)(TermId{0u}, TermId{1u}).size() == 1);
    CHECK(univalent(u11));

    const std::vector<std::size_t> two{2};
    const auto u2 = universe_typoid(two);
    CHECK(u2.edge_count() == 2);
    CHECK(u2.path_count() == 2);
    CHECK(universe_bijection(two, u2, EdgeId{0u}) == std::vector<std::size_t>{0, 1});
    CHECK(universe_bijection(two, u2, EdgeId{1u}) == std::vector<std::size_t>{1, 0});
    CHECK(univalent(u2));

    const std::vector<std::size_t> zero_one{0, 1};
    const auto u01 = universe_typoid(zero_one);
    CHECK(HomIndex<EdgeId>(u01.layer)(TermId{0u}, TermId{1u}).empty());
    CHECK(univalent(u01));
}

TEST_CASE("universe composition is composition of functions") {
    const std::vector<std::size_t> cards{3, 3};
    const auto u = universe_typoid(cards);
    REQUIRE(validate_typoid(u).valid());
    for (std::size_t e = 0; e < u.edge_count(); ++e) {
        const auto f = universe_bijection(cards, u, EdgeId{e});
        const auto inv = universe_bijection(cards, u, u.einv(EdgeId{e}));
        for (std::size_t a = 0; a < 3; ++a) CHECK(inv[f[a]] == a);
        for (std::size_t d = 0; d < u.edge_count(); ++d) {
            if (!u.layer.composable(EdgeId{e}, EdgeId{d})) continue;
            const auto g = universe_bijection(cards, u, EdgeId{d});
            const auto gf = universe_bijection(cards, u, u.star(EdgeId{e}, EdgeId{d}));
            for (std::size_t a = 0; a < 3; ++a) CHECK(gf[a] == g[f[a]]);
        }
    }
    CHECK_THROWS_AS(universe_typoid(std::vector<std::size_t>{6, 6}, "big", 1000), ResourceLimit);
}

TEST_CASE("exponential out of the unit counts the eqv cell") {
    for (const auto& b : stock::corpus()) {
        if (b.edge_count() > 16) continue;
        CAPTURE(b.name);
        const auto e = exponential_typoid(stock::unit(), b);
        std::size_t expected = 0;
        for (std::size_t y = 0; y < b.term_count(); ++y) expected += b.layer.cells.members(b.eqv(TermId{y})).size();
        CHECK(e.terms.size() == expected);
        CHECK(validate_typoid(e.typoid).valid());
    }
}

TEST_CASE("exponential of bool_disc into Z2 has pointwise edges") {
    const auto e = exponential_typoid(stock::bool_disc(), stock::eq_z2());
    CHECK(e.typoid.name == "eq_z2_pow_bool_disc");
    CHECK(e.terms.size() == 1);
    CHECK(e.edges.size() == 4);
    CHECK(validate_typoid(e.typoid).valid());
    CHECK(univalent(e.typoid));
    for (std::size_t i = 0; i < e.edges.size(); ++i) {
        const EdgeId inv = e.typoid.einv(EdgeId{i});
        for (std::size_t x = 0; x < 2; ++x) CHECK(e.edges[inv.index()].components[x] == stock::eq_z2().einv(e.edges[i].components[x]));
    }
}

TEST_CASE("exponential edges satisfy the naturality square") {
    const auto a = stock::eq_z2();
    const auto b = stock::eqv_rich();
    const auto e = exponential_typoid(a, b);
    REQUIRE(validate_typoid(e.typoid).valid());
    for (const auto& edge : e.edges)
        for (std::size_t k = 0; k < a.edge_count(); ++k) {
            const auto& f = e.terms[edge.from];
            const auto& g = e.terms[edge.to];
            const auto& ends = a.layer.ends[k];
            const EdgeId lhs = b.star(f.phi(EdgeId{k}), edge.components[ends.target.index()]);
            const EdgeId rhs = b.star(edge.components[ends.source.index()], g.phi(EdgeId{k}));
            CHECK(b.layer.cells.same(lhs, rhs));
        }
}

TEST_CASE("exponential enumeration limits are named") {
    try {
        (void)exponential_typoid(stock::bool_disc(), stock::prop2(), {2, 256});
        FAIL("expected max-terms");
    } catch (const ResourceLimit& e) {
        CHECK(e.bound() == "max-terms");
    }
    try {
        (void)exponential_typoid(stock::bool_disc(), stock::prop2(), {64, 3});
        FAIL("expected max-edges");
    } catch (const ResourceLimit& e) {
        CHECK(e.bound() == "max-edges");
    }
}

TEST_CASE("typoid functions are enumerated in a fixed order and all validate") {
    const auto a = stock::prop2();
    const auto b = stock::eqv_rich();
    const auto first = enumerate_typoid_functions(a, b, 100);
    const auto second = enumerate_typoid_functions(a, b, 100);
    CHECK(first == second);
    CHECK(first.size() == 16);
    for (const auto& m : first) CHECK(validate_morphism(a, b, m).valid());
}

TEST_CASE("corpus lists every stock typoid with its truncation and pairwise products") {
    const auto corpus = stock::corpus();
    const auto names = [&] {
        std::vector<std::string> out;
        for (const auto& t : corpus) out.push_back(t.name);
        return out;
    }();
    for (const char* n : {"unit", "bool_disc", "prop2", "twoedge", "eqv_rich", "eq_z2", "u2", "u11", "twoedge_t", "u2_x_twoedge"})
        CHECK(std::find(names.begin(), names.end(), n) != names.end());
    CHECK(corpus.size() == 8 + 8 + 64);
}
