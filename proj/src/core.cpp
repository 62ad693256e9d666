#include "typoid/core.hpp"

#include <algorithm>
#include <numeric>

#include "check_context.hpp"
#include "typoid/error.hpp"

namespace typoid {

using detail::arrow_label;
using detail::arrow_label_or_none;
using detail::Checker;
using detail::term_label;
using detail::witness_of;

CellPartition CellPartition::discrete(std::size_t edge_count) {
    std::vector<EdgeId> reps(edge_count);
    for (std::size_t e = 0; e < edge_count; ++e) reps[e] = EdgeId{e};
    return CellPartition(std::move(reps));
}

CellPartition CellPartition::from_pairs(std::size_t edge_count, std::span<const std::pair<EdgeId, EdgeId>> pairs) {
    std::vector<std::size_t> parent(edge_count);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t e) {
        while (parent[e] != e) e = parent[e] = parent[parent[e]];
        return e;
    };
    for (const auto& [a, b] : pairs) {
        if (a.index() >= edge_count || b.index() >= edge_count) continue;
        auto ra = find(a.index()), rb = find(b.index());
        if (ra == rb) continue;
        // the smaller id becomes the root
        if (rb < ra) std::swap(ra, rb);
        parent[rb] = ra;
    }
    std::vector<EdgeId> reps(edge_count);
    for (std::size_t e = 0; e < edge_count; ++e) reps[e] = EdgeId{find(e)};
    return CellPartition(std::move(reps));
}

std::vector<EdgeId> CellPartition::members(EdgeId e) const {
    std::vector<EdgeId> out;
    const auto r = representative(e);
    if (!r.valid()) return out;
    for (std::size_t d = 0; d < rep_.size(); ++d)
        if (rep_[d] == r) out.push_back(EdgeId{d});
    return out;
}

void CellPartition::grow(std::size_t edge_count) {
    for (std::size_t e = rep_.size(); e < edge_count; ++e) rep_.push_back(EdgeId{e});
}

namespace {

const char* kind_word(Witness::Kind kind) { return kind == Witness::Kind::Path ? "path" : "edge"; }

/// Bookkeeping of an arrow table: endpoints in range, units, inverses and
/// composites total with consistent endpoints.
template <class ArrowId>
void check_tables(const ArrowTables<ArrowId>& t, Checker& c, Witness::Kind kind) {
    const std::size_t n = t.arrow_count();
    const std::string word = kind_word(kind);
    for (std::size_t i = 0; i < n; ++i) {
        const ArrowId a{i};
        const auto& e = t.ends[i];
        c.expect(Law::Bookkeeping, e.source.index() < t.term_count && e.target.index() < t.term_count, {witness_of(a)},
                 [&] { return word + " " + arrow_label(a) + " has an endpoint outside the term range"; });
    }
    if (t.unit.size() != t.term_count) {
        c.fail(Law::Bookkeeping, {}, "unit table has " + std::to_string(t.unit.size()) + " entries for " +
                                         std::to_string(t.term_count) + " terms");
    } else {
        for (std::size_t x = 0; x < t.term_count; ++x) {
            const TermId term{x};
            const ArrowId u = t.unit[x];
            c.expect(Law::Bookkeeping, t.contains(u) && t.ends[u.index()] == Endpoints{term, term}, {Witness::term(term)},
                     [&] { return "unit of " + term_label(term) + " is not a " + word + " " + term_label(term) + " -> " + term_label(term); });
        }
    }
    if (t.inverse.size() != n) {
        c.fail(Law::Bookkeeping, {}, "inverse table has " + std::to_string(t.inverse.size()) + " entries for " +
                                         std::to_string(n) + " " + word + "s");
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const ArrowId a{i}, b = t.inverse[i];
            c.expect(Law::Bookkeeping, t.contains(b) && t.source(b) == t.target(a) && t.target(b) == t.source(a), {witness_of(a)},
                     [&] { return "inverse of " + arrow_label(a) + " is missing or has wrong endpoints"; });
        }
    }
    if (t.composite.size() != n * n) {
        c.fail(Law::Bookkeeping, {}, "composition table is not sized for " + std::to_string(n) + " " + word + "s");
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const ArrowId a{i}, b{j};
            const ArrowId ab = t.composite[i * n + j];
            if (t.composable(a, b)) {
                c.expect(Law::Bookkeeping, t.contains(ab) && t.source(ab) == t.source(a) && t.target(ab) == t.target(b),
                         {witness_of(a), witness_of(b)}, [&] {
                             return "composite of " + arrow_label(a) + " and " + arrow_label(b) + " is " +
                                    (t.contains(ab) ? "between the wrong terms" : "missing");
                         });
            } else if (ab.valid()) {
                c.fail(Law::Bookkeeping, {witness_of(a), witness_of(b)},
                       "composite given for non-composable " + arrow_label(a) + ", " + arrow_label(b));
            }
        }
    }
}

/// Strict groupoid laws on the nose.
void check_strict_laws(const FiniteGroupoid& g, Checker& c) {
    const auto out = detail::outgoing(g);
    for (std::size_t i = 0; i < g.arrow_count(); ++i) {
        const PathId p{i};
        if (!detail::well_placed(g, p)) continue;
        const PathId rs = g.unit_of(g.source(p)), rt = g.unit_of(g.target(p));
        c.expect(Law::Groupoid, g.compose(rs, p) == p, {witness_of(p)},
                 [&] { return "refl . " + arrow_label(p) + " is " + arrow_label_or_none(g.compose(rs, p)); });
        c.expect(Law::Groupoid, g.compose(p, rt) == p, {witness_of(p)},
                 [&] { return arrow_label(p) + " . refl is " + arrow_label_or_none(g.compose(p, rt)); });
        const PathId q = g.invert(p);
        c.expect(Law::Groupoid, rs.valid() && g.compose(p, q) == rs, {witness_of(p)},
                 [&] { return arrow_label(p) + " . inv(" + arrow_label(p) + ") is " + arrow_label_or_none(g.compose(p, q)) + ", not refl"; });
        c.expect(Law::Groupoid, rt.valid() && g.compose(q, p) == rt, {witness_of(p)},
                 [&] { return "inv(" + arrow_label(p) + ") . " + arrow_label(p) + " is " + arrow_label_or_none(g.compose(q, p)) + ", not refl"; });
    }
    for (std::size_t i = 0; i < g.arrow_count(); ++i) {
        const PathId p{i};
        if (!detail::well_placed(g, p)) continue;
        for (PathId q : out[g.target(p).index()]) {
            for (PathId r : out[g.target(q).index()]) {
                const PathId lhs = g.compose(g.compose(p, q), r);
                const PathId rhs = g.compose(p, g.compose(q, r));
                c.expect(Law::Groupoid, lhs.valid() && lhs == rhs, {witness_of(p), witness_of(q), witness_of(r)}, [&] {
                    return "(" + arrow_label(p) + " . " + arrow_label(q) + ") . " + arrow_label(r) + " = " + arrow_label_or_none(lhs) +
                           " but " + arrow_label(p) + " . (" + arrow_label(q) + " . " + arrow_label(r) + ") = " + arrow_label_or_none(rhs);
                });
            }
        }
    }
}

void check_partition(const EquivalenceLayer& layer, Checker& c) {
    const auto& cells = layer.cells;
    if (cells.size() != layer.arrow_count()) {
        c.fail(Law::Partition, {}, "cell partition covers " + std::to_string(cells.size()) + " of " +
                                       std::to_string(layer.arrow_count()) + " edges");
        return;
    }
    for (std::size_t i = 0; i < layer.arrow_count(); ++i) {
        const EdgeId e{i}, r = cells.representative(e);
        c.expect(Law::Partition,
                 layer.contains(r) && layer.ends[r.index()] == layer.ends[i] && cells.representative(r) == r && r <= e,
                 {Witness::edge(e)}, [&] { return "cell label of " + arrow_label(e) + " is not a normalized class of its hom-set"; });
    }
}

void check_typoid_laws(const Typoid& t, Checker& c) {
    const auto& L = t.layer;
    const auto& cells = L.cells;
    auto same = [&](EdgeId a, EdgeId b) { return a.valid() && b.valid() && cells.same(a, b); };
    const auto out = detail::outgoing(L);

    std::vector<std::vector<EdgeId>> class_members(L.arrow_count());
    for (std::size_t i = 0; i < L.arrow_count(); ++i) {
        const EdgeId r = cells.representative(EdgeId{i});
        if (L.contains(r)) class_members[r.index()].push_back(EdgeId{i});
    }
    auto members = [&](EdgeId e) -> const std::vector<EdgeId>& {
        static const std::vector<EdgeId> none;
        const EdgeId r = cells.representative(e);
        return L.contains(r) ? class_members[r.index()] : none;
    };

    for (std::size_t i = 0; i < L.arrow_count(); ++i) {
        const EdgeId e{i};
        if (!detail::well_placed(L, e)) continue;
        const EdgeId ex = L.eqv(L.source(e)), ey = L.eqv(L.target(e));
        c.expect(Law::Typ1, same(L.star(ex, e), e), {Witness::edge(e)},
                 [&] { return "eqv * " + arrow_label(e) + " = " + arrow_label_or_none(L.star(ex, e)) + " is not in the cell of " + arrow_label(e); });
        c.expect(Law::Typ1, same(L.star(e, ey), e), {Witness::edge(e)},
                 [&] { return arrow_label(e) + " * eqv = " + arrow_label_or_none(L.star(e, ey)) + " is not in the cell of " + arrow_label(e); });
        const EdgeId d = L.einv(e);
        c.expect(Law::Typ2, same(L.star(e, d), ex), {Witness::edge(e)},
                 [&] { return arrow_label(e) + " * einv(" + arrow_label(e) + ") is not in the cell of eqv"; });
        c.expect(Law::Typ2, same(L.star(d, e), ey), {Witness::edge(e)},
                 [&] { return "einv(" + arrow_label(e) + ") * " + arrow_label(e) + " is not in the cell of eqv"; });
    }

    for (std::size_t i = 0; i < L.arrow_count(); ++i) {
        const EdgeId e1{i};
        if (!detail::well_placed(L, e1)) continue;
        for (EdgeId e2 : out[L.target(e1).index()]) {
            for (EdgeId e3 : out[L.target(e2).index()]) {
                const EdgeId lhs = L.star(L.star(e1, e2), e3), rhs = L.star(e1, L.star(e2, e3));
                c.expect(Law::Typ3, same(lhs, rhs), {Witness::edge(e1), Witness::edge(e2), Witness::edge(e3)}, [&] {
                    return "(" + arrow_label(e1) + " * " + arrow_label(e2) + ") * " + arrow_label(e3) + " = " + arrow_label_or_none(lhs) +
                           " and " + arrow_label(e1) + " * (" + arrow_label(e2) + " * " + arrow_label(e3) + ") = " +
                           arrow_label_or_none(rhs) + " lie in different cells";
                });
            }
        }
    }

    for (std::size_t i = 0; i < L.arrow_count(); ++i) {
        const EdgeId e1{i};
        if (!detail::well_placed(L, e1)) continue;
        for (EdgeId e2 : out[L.target(e1).index()]) {
            const EdgeId lhs = L.star(e1, e2);
            for (EdgeId d1 : members(e1)) {
                for (EdgeId d2 : members(e2)) {
                    if (!L.composable(d1, d2)) continue;
                    const EdgeId rhs = L.star(d1, d2);
                    c.expect(Law::Typ4, same(lhs, rhs), {Witness::edge(e1), Witness::edge(e2), Witness::edge(d1), Witness::edge(d2)}, [&] {
                        return arrow_label(e1) + " * " + arrow_label(e2) + " and " + arrow_label(d1) + " * " + arrow_label(d2) +
                               " lie in different cells although their factors are cell-equal";
                    });
                }
            }
        }
    }
}

void check_idtoeqv(const Typoid& t, Checker& c) {
    const auto& g = t.base;
    const auto& L = t.layer;
    if (t.idtoeqv.size() != g.arrow_count()) {
        c.fail(Law::Bookkeeping, {}, "idtoeqv covers " + std::to_string(t.idtoeqv.size()) + " of " +
                                         std::to_string(g.arrow_count()) + " paths");
        return;
    }
    bool placed = true;
    for (std::size_t i = 0; i < g.arrow_count(); ++i) {
        const PathId p{i};
        const EdgeId e = t.idtoeqv[i];
        placed &= c.expect(Law::Bookkeeping, L.contains(e) && g.ends[i] == L.ends[e.index()], {Witness::path(p)},
                           [&] { return "idtoeqv(" + arrow_label(p) + ") is missing or between the wrong terms"; });
    }
    for (std::size_t x = 0; x < t.term_count(); ++x) {
        const TermId term{x};
        const PathId r = g.unit_of(term);
        c.expect(Law::IdtoEqv, t.to_edge(r).valid() && t.to_edge(r) == L.eqv(term), {Witness::term(term)},
                 [&] { return "idtoeqv(refl_" + term_label(term) + ") = " + arrow_label_or_none(t.to_edge(r)) + " is not eqv"; });
    }
    if (!placed) return;
    const auto out = detail::outgoing(g);
    for (std::size_t i = 0; i < g.arrow_count(); ++i) {
        const PathId p{i};
        if (!detail::well_placed(g, p)) continue;
        for (PathId q : out[g.target(p).index()]) {
            const EdgeId lhs = t.to_edge(g.compose(p, q));
            const EdgeId rhs = L.star(t.to_edge(p), t.to_edge(q));
            c.expect(Law::IdtoEqv, lhs.valid() && rhs.valid() && L.cells.same(lhs, rhs), {Witness::path(p), Witness::path(q)}, [&] {
                return "idtoeqv(" + arrow_label(p) + " . " + arrow_label(q) + ") is not cell-equal to idtoeqv(" + arrow_label(p) +
                       ") * idtoeqv(" + arrow_label(q) + ")";
            });
        }
    }
}

} // namespace

ValidationReport validate_groupoid(const FiniteGroupoid& g, const ValidationOptions& options) {
    ValidationReport report;
    Checker c(report, options.max_checks);
    check_tables(g, c, Witness::Kind::Path);
    check_strict_laws(g, c);
    report.normalize();
    return report;
}

ValidationReport validate_typoid(const Typoid& t, const ValidationOptions& options) {
    ValidationReport report;
    Checker c(report, options.max_checks);
    check_tables(t.base, c, Witness::Kind::Path);
    check_strict_laws(t.base, c);
    if (t.layer.term_count != t.base.term_count) {
        c.fail(Law::Bookkeeping, {}, "edge layer has " + std::to_string(t.layer.term_count) + " terms, base has " +
                                         std::to_string(t.base.term_count));
    } else {
        check_tables(t.layer, c, Witness::Kind::Edge);
        check_partition(t.layer, c);
        check_typoid_laws(t, c);
        check_idtoeqv(t, c);
    }
    report.normalize();
    return report;
}

ValidationReport derived_laws(const Typoid& t, const ValidationOptions& options) {
    ValidationReport report;
    Checker c(report, options.max_checks);
    const auto& L = t.layer;
    auto same = [&](EdgeId a, EdgeId b) { return a.valid() && b.valid() && L.cells.same(a, b); };
    for (std::size_t x = 0; x < t.term_count(); ++x) {
        const EdgeId ex = L.eqv(TermId{x});
        c.expect(Law::InverseUnit, same(L.einv(ex), ex), {Witness::term(TermId{x})},
                 [&] { return "einv(eqv_" + term_label(TermId{x}) + ") is not in the cell of eqv"; });
    }
    for (std::size_t i = 0; i < L.arrow_count(); ++i) {
        const EdgeId e{i};
        c.expect(Law::InverseInvolution, same(L.einv(L.einv(e)), e), {Witness::edge(e)},
                 [&] { return "einv(einv(" + arrow_label(e) + ")) is not in the cell of " + arrow_label(e); });
        for (EdgeId d : L.cells.members(e)) {
            c.expect(Law::InverseCongruence, same(L.einv(e), L.einv(d)), {Witness::edge(e), Witness::edge(d)},
                     [&] { return "einv does not respect the cell of " + arrow_label(e) + " and " + arrow_label(d); });
        }
    }
    report.normalize();
    return report;
}

bool cells_equal(const Typoid& t, EdgeId e, EdgeId d) {
    const auto& L = t.layer;
    if (!L.contains(e) || !L.contains(d)) throw ContractError("cells_equal: edge id out of range");
    if (!(L.ends[e.index()] == L.ends[d.index()]))
        throw ContractError("cells_equal: " + arrow_label(e) + " and " + arrow_label(d) + " are in different hom-sets");
    return L.cells.same(e, d);
}

bool is_prop(const FiniteGroupoid& g) {
    const HomIndex<PathId> homs(g);
    for (std::size_t x = 0; x < g.term_count; ++x)
        for (std::size_t y = 0; y < g.term_count; ++y)
            if (homs(TermId{x}, TermId{y}).empty()) return false;
    return true;
}

bool is_set(const FiniteGroupoid&) { return true; }

bool is_prop_and_set(const FiniteGroupoid& g) {
    const HomIndex<PathId> homs(g);
    for (std::size_t x = 0; x < g.term_count; ++x)
        for (std::size_t y = 0; y < g.term_count; ++y)
            if (homs(TermId{x}, TermId{y}).size() != 1) return false;
    return true;
}

} // namespace typoid
