#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "typoid/ids.hpp"
#include "typoid/report.hpp"

namespace typoid {

struct Endpoints {
    TermId source;
    TermId target;

    friend bool operator==(const Endpoints&, const Endpoints&) = default;
};

/// Arrows between terms with a unit per term, a composition table and an
/// inverse table. Models both the base groupoid (arrows are paths) and the
/// edge layer of a typoid (arrows are edges).
///
/// The composition table is dense, indexed by `a * arrow_count() + b`; entries
/// for non-composable pairs stay invalid. Tables are plain data so malformed
/// input can be represented and reported by the validators.
template <class ArrowId>
struct ArrowTables {
    std::size_t term_count = 0;
    std::vector<Endpoints> ends;
    std::vector<ArrowId> unit;
    std::vector<ArrowId> composite;
    std::vector<ArrowId> inverse;

    std::size_t arrow_count() const { return ends.size(); }
    bool contains(ArrowId a) const { return a.valid() && a.index() < ends.size(); }
    TermId source(ArrowId a) const { return ends[a.index()].source; }
    TermId target(ArrowId a) const { return ends[a.index()].target; }
    bool composable(ArrowId a, ArrowId b) const { return target(a) == source(b); }

    /// Composite of a then b, or an invalid id when the entry is absent.
    ArrowId compose(ArrowId a, ArrowId b) const {
        if (!contains(a) || !contains(b)) return ArrowId{};
        const std::size_t slot = a.index() * arrow_count() + b.index();
        return slot < composite.size() ? composite[slot] : ArrowId{};
    }
    ArrowId invert(ArrowId a) const { return contains(a) && a.index() < inverse.size() ? inverse[a.index()] : ArrowId{}; }
    ArrowId unit_of(TermId x) const { return x.index() < unit.size() ? unit[x.index()] : ArrowId{}; }

    ArrowId add_arrow(TermId source, TermId target) {
        const std::size_t old = arrow_count();
        ends.push_back({source, target});
        if (!composite.empty()) {
            std::vector<ArrowId> grown((old + 1) * (old + 1));
            for (std::size_t a = 0; a < old; ++a)
                for (std::size_t b = 0; b < old; ++b) grown[a * (old + 1) + b] = composite[a * old + b];
            composite = std::move(grown);
        }
        if (!inverse.empty()) inverse.emplace_back();
        return ArrowId{old};
    }

    /// Sizes the composition and inverse tables for the current arrows.
    void allocate() {
        composite.assign(arrow_count() * arrow_count(), ArrowId{});
        inverse.assign(arrow_count(), ArrowId{});
        unit.resize(term_count);
    }

    void set_compose(ArrowId a, ArrowId b, ArrowId c) {
        if (composite.size() != arrow_count() * arrow_count()) composite.assign(arrow_count() * arrow_count(), ArrowId{});
        composite[a.index() * arrow_count() + b.index()] = c;
    }
    void set_inverse(ArrowId a, ArrowId b) {
        inverse.resize(arrow_count());
        inverse[a.index()] = b;
    }

    friend bool operator==(const ArrowTables&, const ArrowTables&) = default;
};

/// Arrows grouped by hom-set (source, target), each list ascending.
template <class ArrowId>
class HomIndex {
public:
    explicit HomIndex(const ArrowTables<ArrowId>& tables) : terms_(tables.term_count), homs_(terms_ * terms_) {
        for (std::size_t a = 0; a < tables.arrow_count(); ++a) {
            const auto& e = tables.ends[a];
            if (e.source.index() < terms_ && e.target.index() < terms_)
                homs_[e.source.index() * terms_ + e.target.index()].push_back(ArrowId{a});
        }
    }

    std::span<const ArrowId> operator()(TermId x, TermId y) const { return homs_[x.index() * terms_ + y.index()]; }
    std::size_t term_count() const { return terms_; }

private:
    std::size_t terms_;
    std::vector<std::vector<ArrowId>> homs_;
};

using FiniteGroupoid = ArrowTables<PathId>;

/// The cell relation on edges: each edge is labelled with the smallest edge
/// of its class. Classes never cross hom-sets in a well-formed partition.
class CellPartition {
public:
    CellPartition() = default;
    explicit CellPartition(std::vector<EdgeId> representatives) : rep_(std::move(representatives)) {}

    /// Identity partition: every edge is its own class.
    static CellPartition discrete(std::size_t edge_count);
    /// Closure of the given pairs under reflexivity, symmetry and transitivity.
    static CellPartition from_pairs(std::size_t edge_count, std::span<const std::pair<EdgeId, EdgeId>> pairs);

    std::size_t size() const { return rep_.size(); }
    EdgeId representative(EdgeId e) const { return e.index() < rep_.size() ? rep_[e.index()] : EdgeId{}; }
    bool same(EdgeId e, EdgeId d) const {
        const auto r = representative(e);
        return r.valid() && r == representative(d);
    }
    const std::vector<EdgeId>& representatives() const { return rep_; }
    /// Edges sharing e's class, ascending.
    std::vector<EdgeId> members(EdgeId e) const;
    void grow(std::size_t edge_count);

    friend bool operator==(const CellPartition&, const CellPartition&) = default;

private:
    std::vector<EdgeId> rep_;
};

struct EquivalenceLayer : ArrowTables<EdgeId> {
    CellPartition cells;

    EdgeId eqv(TermId x) const { return unit_of(x); }
    EdgeId star(EdgeId e, EdgeId d) const { return compose(e, d); }
    EdgeId einv(EdgeId e) const { return invert(e); }

    friend bool operator==(const EquivalenceLayer&, const EquivalenceLayer&) = default;
};

/// A finite 2-typoid: strict base groupoid, edge layer with cells, and the
/// map sending each base path to an edge between the same terms.
struct Typoid {
    std::string name;
    FiniteGroupoid base;
    EquivalenceLayer layer;
    std::vector<EdgeId> idtoeqv;

    std::size_t term_count() const { return base.term_count; }
    std::size_t path_count() const { return base.arrow_count(); }
    std::size_t edge_count() const { return layer.arrow_count(); }

    PathId refl(TermId x) const { return base.unit_of(x); }
    PathId comp(PathId p, PathId q) const { return base.compose(p, q); }
    PathId inv(PathId p) const { return base.invert(p); }
    EdgeId eqv(TermId x) const { return layer.eqv(x); }
    EdgeId star(EdgeId e, EdgeId d) const { return layer.star(e, d); }
    EdgeId einv(EdgeId e) const { return layer.einv(e); }
    EdgeId to_edge(PathId p) const { return p.valid() && p.index() < idtoeqv.size() ? idtoeqv[p.index()] : EdgeId{}; }

    friend bool operator==(const Typoid&, const Typoid&) = default;
};

struct ValidationOptions {
    std::uint64_t max_checks = default_max_checks;
};

ValidationReport validate_groupoid(const FiniteGroupoid& g, const ValidationOptions& options = {});
ValidationReport validate_typoid(const Typoid& t, const ValidationOptions& options = {});
/// Inverse laws that follow from Typ1-Typ4.
ValidationReport derived_laws(const Typoid& t, const ValidationOptions& options = {});

/// Throws ContractError when e and d are not in the same hom-set.
bool cells_equal(const Typoid& t, EdgeId e, EdgeId d);

/// Base-groupoid predicates: every hom inhabited / every hom a singleton.
/// Path equality is id equality, so every base is a set.
bool is_prop(const FiniteGroupoid& g);
bool is_set(const FiniteGroupoid& g);
bool is_prop_and_set(const FiniteGroupoid& g);

/// Number of composable triples (a, b, c); what Typ3 or associativity
/// checking must enumerate.
template <class ArrowId>
std::uint64_t composable_triples(const ArrowTables<ArrowId>& tables) {
    const std::size_t n = tables.term_count;
    // in[y] = arrows ending at y, out[y] = arrows starting at y; triple count
    // is sum over middle arrows b: y->z of in(y) * out(z).
    std::vector<std::uint64_t> in(n, 0), out(n, 0);
    for (const auto& e : tables.ends) {
        if (e.source.index() >= n || e.target.index() >= n) continue;
        ++out[e.source.index()];
        ++in[e.target.index()];
    }
    std::uint64_t total = 0;
    for (const auto& e : tables.ends) {
        if (e.source.index() >= n || e.target.index() >= n) continue;
        total += in[e.source.index()] * out[e.target.index()];
    }
    return total;
}

} // namespace typoid
