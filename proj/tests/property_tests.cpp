#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "typoid/dsl.hpp"
#include "typoid/univalence.hpp"

using namespace typoid;

namespace {

std::mt19937& rng() {
    static std::mt19937 gen(20240611u);
    return gen;
}

template <class T>
const T& pick(const std::vector<T>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng())];
}

bool univalent(const Typoid& t) { return std::holds_alternative<UnivalenceCertificate>(check_univalence(t)); }

bool singleton_homs(const FiniteGroupoid& g) {
    const HomIndex<PathId> homs(g);
    for (std::size_t x = 0; x < g.term_count; ++x)
        for (std::size_t y = 0; y < g.term_count; ++y)
            if (homs(TermId{x}, TermId{y}).size() != 1) return false;
    return true;
}

} // namespace

TEST_CASE("random products are univalent exactly when both factors are") {
    const auto corpus = stock::corpus();
    for (int round = 0; round < 40; ++round) {
        const auto& a = pick(corpus);
        const auto& b = pick(corpus);
        if (a.edge_count() * b.edge_count() > 400) continue;
        CAPTURE(a.name);
        CAPTURE(b.name);
        const auto p = product_typoid(a, b);
        CHECK(validate_typoid(p.typoid).valid());
        CHECK(univalent(p.typoid) == (univalent(a) && univalent(b)));
    }
}

TEST_CASE("random members of the family agree with the oracle and the truncation rule") {
    const auto family = testing::exhaustive_family(2, 3);
    for (int round = 0; round < 150; ++round) {
        const auto& t = pick(family);
        CAPTURE(t.name);
        const auto oracle = testing::brute_force_ua(t);
        CHECK(univalent(t) == (oracle.satisfying == 1));
        CHECK(oracle.satisfying <= 1);
        CHECK(univalent(truncate(t)) == singleton_homs(t.base));
    }
}

TEST_CASE("random chains of typoid functions compose to typoid functions") {
    std::vector<Typoid> pool = stock::univalent_basics();
    pool.push_back(stock::twoedge());
    pool.push_back(truncate(stock::bool_disc()));
    for (int round = 0; round < 60; ++round) {
        const auto& a = pick(pool);
        const auto& b = pick(pool);
        const auto& c = pick(pool);
        const auto fs = enumerate_typoid_functions(a, b, 5000);
        const auto gs = enumerate_typoid_functions(b, c, 5000);
        if (fs.empty() || gs.empty()) continue;
        const auto h = compose_morphisms(pick(fs), pick(gs));
        CAPTURE(h.name);
        CHECK(validate_morphism(a, c, h).valid());
    }
}

TEST_CASE("random product documents survive a text round trip") {
    const auto basics = stock::univalent_basics();
    for (int round = 0; round < 20; ++round) {
        const auto a = dsl::with_default_names(pick(basics));
        auto b = dsl::with_default_names(pick(basics));
        if (b.typoid.name == a.typoid.name) continue;
        dsl::Document d;
        d.declarations.push_back({dsl::product_names(a, b, product_typoid(a.typoid, b.typoid).typoid), {}});
        const auto text = dsl::serialize(d);
        const auto r = dsl::parse(text);
        REQUIRE(r.ok());
        CHECK(dsl::structurally_equal(d, *r.document));
        CHECK(dsl::serialize(*r.document) == text);
    }
}
