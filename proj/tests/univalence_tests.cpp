#include <doctest.h>

#include "oracles.hpp"
#include "typoid/univalence.hpp"

using namespace typoid;

namespace {

UnivalenceCertificate certificate(const UnivalenceResult& r) {
    REQUIRE(std::holds_alternative<UnivalenceCertificate>(r));
    return std::get<UnivalenceCertificate>(r);
}

NotUnivalent witness(const UnivalenceResult& r) {
    REQUIRE(std::holds_alternative<NotUnivalent>(r));
    return std::get<NotUnivalent>(r);
}

} // namespace

TEST_CASE("equality typoids are strictly univalent with the identity table") {
    for (const auto& g : testing::small_groupoids(3)) {
        const auto t = equality_typoid(g, "eq");
        const auto& c = certificate(check_univalence(t));
        CHECK(c.strict);
        for (std::size_t e = 0; e < t.edge_count(); ++e) CHECK(c.ua[e] == PathId{e});
        CHECK(verify_certificate(t, c).valid());
    }
}

TEST_CASE("an unhit cell class is reported for twoedge") {
    const auto w = witness(check_univalence(stock::twoedge()));
    CHECK(w.reason == NotUnivalent::Reason::NotSurjective);
    CHECK(w.unhit == EdgeId{1u});
    CHECK(w.violation().law == Law::RoundTrip2);
}

TEST_CASE("two paths in one cell are reported as a collision") {
    const auto w = witness(check_univalence(truncate(stock::eq_z2())));
    CHECK(w.reason == NotUnivalent::Reason::NotInjective);
    CHECK(w.paths == std::vector<PathId>{PathId{0u}, PathId{1u}});
    CHECK(w.violation().law == Law::RoundTrip1);
}

TEST_CASE("truncations of propositions are univalent, of disconnected bases not") {
    CHECK(std::holds_alternative<UnivalenceCertificate>(check_univalence(truncate(stock::prop2()))));
    const auto w = witness(check_univalence(truncate(stock::bool_disc())));
    CHECK(w.reason == NotUnivalent::Reason::NotSurjective);
    CHECK(w.source != w.target);
}

TEST_CASE("invalid typoids are refused") {
    auto t = stock::eq_z2();
    t.idtoeqv[0] = EdgeId{1u};
    CHECK_THROWS_AS(check_univalence(t), ContractError);
}

TEST_CASE("a swapped table fails the first round trip") {
    const auto t = stock::eq_z2();
    UnivalenceCertificate c{t.name, {PathId{1u}, PathId{0u}}, false};
    const auto report = verify_certificate(t, c);
    CHECK(report.has(Law::RoundTrip1));
    CHECK(report.has(Law::RoundTrip2));
}

TEST_CASE("a table splitting a cell is not well defined") {
    // base Z2 = {r, p}; edges eqv, e in one cell over r and d alone over p
    const auto t = testing::layered_typoid(cyclic_groupoid(2), cyclic_groupoid(2), {2, 1}, {PathId{0u}, PathId{1u}}, {}, "split");
    REQUIRE(validate_typoid(t).valid());
    const UnivalenceCertificate c{t.name, {PathId{0u}, PathId{1u}, PathId{1u}}, true};
    const auto report = verify_certificate(t, c);
    CHECK(report.has(Law::UaWellDefined));
    CHECK(report.has(Law::RoundTrip2));
    const UnivalenceCertificate short_table{t.name, {PathId{0u}}, true};
    CHECK(verify_certificate(t, short_table).has(Law::Bookkeeping));
}

TEST_CASE("certificates agree with the brute-force oracle on a sample of the family") {
    const auto family = testing::exhaustive_family(1, 2);
    REQUIRE(family.size() > 10);
    for (const auto& t : family) {
        CAPTURE(t.name);
        const auto result = check_univalence(t);
        const auto oracle = testing::brute_force_ua(t);
        CHECK(std::holds_alternative<UnivalenceCertificate>(result) == (oracle.satisfying > 0));
        if (const auto* c = std::get_if<UnivalenceCertificate>(&result)) {
            CHECK(oracle.satisfying == 1);
            CHECK(c->ua == oracle.table);
            CHECK(c->strict);
            CHECK(verify_certificate(t, *c).valid());
        }
    }
}

TEST_CASE("the ua table is a typoid function into the equality typoid") {
    for (const auto& t : stock::univalent_basics()) {
        CAPTURE(t.name);
        const auto& c = certificate(check_univalence(t));
        const auto eq = equality_typoid(t.base, equality_name(t));
        const auto m = ua_morphism(t, c);
        CHECK(validate_morphism(t, eq, m).valid());
        CHECK(is_strict(t, eq, m));
    }
}

TEST_CASE("induced morphisms out of univalent typoids") {
    const auto z2 = stock::eq_z2();
    const auto rich = stock::eqv_rich();
    const std::vector<TermId> f{TermId{0u}};
    for (const auto& ap : enumerate_ap_functors(z2.base, rich.base, f)) {
        const auto m = induce_morphism(z2, rich, f, ap);
        CHECK(validate_morphism(z2, rich, m).valid());
        CHECK(is_strict(z2, rich, m));
    }
    const auto id = induce_morphism(z2, z2, f, std::vector<PathId>{PathId{0u}, PathId{1u}});
    CHECK(id.edge_map == identity_morphism(z2).edge_map);
}

TEST_CASE("inducing from a non-univalent source carries the witness") {
    const auto t = stock::twoedge();
    try {
        (void)induce_morphism(t, t, std::vector<TermId>{TermId{0u}}, std::vector<PathId>{PathId{0u}});
        FAIL("expected NotUnivalentError");
    } catch (const NotUnivalentError& e) {
        CHECK(e.witness().reason == NotUnivalent::Reason::NotSurjective);
    }
}

TEST_CASE("inducing with a path table that is not a functor is a contract error") {
    const auto z2 = stock::eq_z2();
    CHECK_THROWS_AS(induce_morphism(z2, z2, std::vector<TermId>{TermId{0u}}, std::vector<PathId>{PathId{1u}, PathId{1u}}), ContractError);
}

TEST_CASE("commuting squares for induced morphisms and projections") {
    const auto z2 = stock::eq_z2();
    const auto& cz = certificate(check_univalence(z2));
    const auto id = identity_morphism(z2);
    CHECK(check_square(z2, z2, id, cz).valid());
    CHECK(check_square_edges(z2, z2, id, cz, cz).valid());

    const auto u2 = universe_typoid(std::vector<std::size_t>{2}, "u2");
    const auto prod = product_typoid(z2, u2);
    const auto [pr1, pr2] = projections(prod.typoid, prod.provenance);
    CHECK(check_square(prod.typoid, z2, pr1, cz).valid());
    CHECK(check_square(prod.typoid, u2, pr2, certificate(check_univalence(u2))).valid());

    auto broken = id;
    broken.path_map = {PathId{0u}, PathId{0u}};
    CHECK(check_square(z2, z2, broken, cz).has(Law::Square));
}

TEST_CASE("pointed factors of a univalent product are certified") {
    const auto a = stock::prop2();
    const auto b = stock::eq_z2();
    const auto prod = product_typoid(a, b);
    const auto factors = check_pointed_factors(a, b, prod, TermId{1u}, TermId{0u});
    REQUIRE(factors.first);
    REQUIRE(factors.second);
    CHECK(verify_certificate(a, *factors.first).valid());
    CHECK(verify_certificate(b, *factors.second).valid());
    CHECK(factors.notes.empty());

    const auto only_a = check_pointed_factors(a, b, prod, std::nullopt, TermId{0u});
    CHECK(only_a.first);
    CHECK_FALSE(only_a.second);
    CHECK(only_a.notes.size() == 1);
}

TEST_CASE("an empty factor leaves the other factor uncertified") {
    const auto a = stock::twoedge();
    const auto empty = equality_typoid(discrete_groupoid(0), "empty");
    const auto prod = product_typoid(a, empty);
    CHECK(prod.typoid.term_count() == 0);
    REQUIRE(std::holds_alternative<UnivalenceCertificate>(check_univalence(prod.typoid)));
    const auto factors = check_pointed_factors(a, empty, prod, TermId{0u}, std::nullopt);
    CHECK_FALSE(factors.first);
    REQUIRE(factors.second);
    CHECK(verify_certificate(empty, *factors.second).valid());
    REQUIRE(factors.notes.size() == 1);
    CHECK(factors.notes.front().find("empty") != std::string::npos);
}

TEST_CASE("a non-univalent product is refused") {
    const auto a = stock::twoedge();
    const auto prod = product_typoid(a, stock::unit());
    CHECK_THROWS_AS(check_pointed_factors(a, stock::unit(), prod, TermId{0u}, TermId{0u}), ContractError);
}
