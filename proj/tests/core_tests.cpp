#include <doctest.h>

#include "typoid/constructions.hpp"
#include "typoid/core.hpp"
#include "typoid/error.hpp"

using namespace typoid;

namespace {

/// One term, refl only, edges eqv, a, b with Z3 composition; a shares the
/// eqv cell while b does not, which breaks congruence and nothing else.
Typoid z3_with_bad_cell() {
    Typoid t;
    t.name = "z3bad";
    t.base = discrete_groupoid(1);
    auto& L = t.layer;
    L.term_count = 1;
    for (int i = 0; i < 3; ++i) L.add_arrow(TermId{0u}, TermId{0u});
    L.allocate();
    L.unit[0] = EdgeId{0u};
    for (std::uint32_t i = 0; i < 3; ++i) {
        L.set_inverse(EdgeId{i}, EdgeId{(3 - i) % 3});
        for (std::uint32_t j = 0; j < 3; ++j) L.set_compose(EdgeId{i}, EdgeId{j}, EdgeId{(i + j) % 3});
    }
    L.cells = CellPartition({EdgeId{0u}, EdgeId{0u}, EdgeId{2u}});
    t.idtoeqv = {EdgeId{0u}};
    return t;
}

} // namespace

TEST_CASE("groupoid builders satisfy the strict groupoid laws") {
    CHECK(validate_groupoid(discrete_groupoid(3)).valid());
    CHECK(validate_groupoid(codiscrete_groupoid(3)).valid());
    for (std::size_t k = 1; k <= 4; ++k) CHECK(validate_groupoid(cyclic_groupoid(k)).valid());
    CHECK(validate_groupoid(connected_cyclic_groupoid(3, 2)).valid());
    CHECK(codiscrete_groupoid(3).arrow_count() == 9);
    CHECK(connected_cyclic_groupoid(2, 3).arrow_count() == 12);
}

TEST_CASE("a broken associativity entry is reported with its triple") {
    auto g = cyclic_groupoid(3);
    g.set_compose(PathId{1u}, PathId{1u}, PathId{1u});
    const auto report = validate_groupoid(g);
    CHECK(report.has(Law::Groupoid));
}

TEST_CASE("stock typoids pass the axioms and the derived inverse laws") {
    for (const auto& t : stock::corpus()) {
        CAPTURE(t.name);
        CHECK(validate_typoid(t).valid());
        CHECK(derived_laws(t).valid());
    }
}

TEST_CASE("a failed unit law names the offending edge") {
    auto t = stock::twoedge();
    t.layer.set_compose(EdgeId{0u}, EdgeId{1u}, EdgeId{0u});
    const auto report = validate_typoid(t);
    REQUIRE(report.has(Law::Typ1));
    const auto& v = *std::find_if(report.violations.begin(), report.violations.end(), [](const Violation& x) { return x.law == Law::Typ1; });
    CHECK(v.witness == std::vector<Witness>{Witness::edge(EdgeId{1u})});
}

TEST_CASE("a wrong inverse breaks Typ2") {
    auto t = equality_typoid(cyclic_groupoid(3), "z3");
    t.layer.set_inverse(EdgeId{1u}, EdgeId{1u});
    CHECK(validate_typoid(t).has(Law::Bookkeeping) == false);
    CHECK(validate_typoid(t).has(Law::Typ2));
}

TEST_CASE("a non-associative star breaks Typ3") {
    auto t = equality_typoid(cyclic_groupoid(3), "z3");
    t.layer.set_compose(EdgeId{1u}, EdgeId{1u}, EdgeId{1u});
    CHECK(validate_typoid(t).has(Law::Typ3));
}

TEST_CASE("cells that are not a congruence break Typ4 alone") {
    const auto t = z3_with_bad_cell();
    const auto report = validate_typoid(t);
    CHECK(report.has(Law::Typ4));
    CHECK_FALSE(report.has(Law::Typ1));
    CHECK_FALSE(report.has(Law::Typ2));
    CHECK_FALSE(report.has(Law::Typ3));
}

TEST_CASE("idtoeqv must send refl to eqv on the nose") {
    auto t = stock::eq_z2();
    t.idtoeqv[0] = EdgeId{1u};
    CHECK(validate_typoid(t).has(Law::IdtoEqv));
}

TEST_CASE("idtoeqv must be functorial up to cells") {
    auto t = equality_typoid(cyclic_groupoid(3), "z3");
    t.idtoeqv[1] = EdgeId{2u};
    t.idtoeqv[2] = EdgeId{2u};
    CHECK(validate_typoid(t).has(Law::IdtoEqv));
}

TEST_CASE("a partition joining different hom-sets is rejected") {
    auto t = stock::prop2();
    std::vector<EdgeId> reps;
    for (std::uint32_t e = 0; e < t.edge_count(); ++e) reps.push_back(EdgeId{e});
    reps[1] = EdgeId{0u};
    t.layer.cells = CellPartition(reps);
    CHECK(validate_typoid(t).has(Law::Partition));
}

TEST_CASE("missing table entries are bookkeeping violations, not crashes") {
    auto t = stock::prop2();
    t.layer.composite[1] = EdgeId{};
    t.base.inverse[2] = PathId{};
    t.idtoeqv.pop_back();
    const auto report = validate_typoid(t);
    CHECK(report.has(Law::Bookkeeping));
}

TEST_CASE("cells_equal compares within a hom and refuses across homs") {
    const auto t = stock::eqv_rich();
    CHECK(cells_equal(t, EdgeId{0u}, EdgeId{1u}));
    CHECK_FALSE(cells_equal(stock::twoedge(), EdgeId{0u}, EdgeId{1u}));
    const auto p = stock::prop2();
    const auto cross = HomIndex<EdgeId>(p.layer)(TermId{0u}, TermId{1u}).front();
    CHECK_THROWS_AS((void)cells_equal(p, p.eqv(TermId{0u}), cross), ContractError);
}

TEST_CASE("proposition and set predicates on base groupoids") {
    CHECK(is_prop(codiscrete_groupoid(2)));
    CHECK(is_prop_and_set(codiscrete_groupoid(2)));
    CHECK_FALSE(is_prop(discrete_groupoid(2)));
    CHECK(is_prop(cyclic_groupoid(2)));
    CHECK_FALSE(is_prop_and_set(cyclic_groupoid(2)));
    CHECK(is_set(cyclic_groupoid(2)));
}

TEST_CASE("the work bound stops validation with a named limit") {
    const auto t = universe_typoid(std::vector<std::size_t>{3, 3});
    try {
        (void)validate_typoid(t, {50});
        FAIL("expected a resource limit");
    } catch (const ResourceLimit& e) {
        CHECK(e.bound() == "max-checks");
    }
}

TEST_CASE("cell partitions from pairs label classes by their smallest edge") {
    const std::pair<EdgeId, EdgeId> pairs[] = {{EdgeId{3u}, EdgeId{1u}}, {EdgeId{4u}, EdgeId{3u}}};
    const auto c = CellPartition::from_pairs(5, pairs);
    CHECK(c.representative(EdgeId{4u}) == EdgeId{1u});
    CHECK(c.members(EdgeId{3u}) == std::vector<EdgeId>{EdgeId{1u}, EdgeId{3u}, EdgeId{4u}});
    CHECK(c.representative(EdgeId{2u}) == EdgeId{2u});
}

TEST_CASE("composable triples count what associativity checking visits") {
    CHECK(composable_triples(cyclic_groupoid(3)) == 27);
    CHECK(composable_triples(codiscrete_groupoid(2)) == 16);
    CHECK(composable_triples(discrete_groupoid(4)) == 4);
}

TEST_CASE("reports are deterministic after normalization") {
    auto t = z3_with_bad_cell();
    auto a = validate_typoid(t);
    auto b = validate_typoid(t);
    CHECK(a.violations == b.violations);
    CHECK(law_code(Law::Bookkeeping) == "L001");
    CHECK(law_code(Law::Typ4) == "L007");
}
