#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "typoid/core.hpp"
#include "typoid/morphisms.hpp"

namespace typoid {

// --- base groupoids -------------------------------------------------------

/// n terms, refl paths only.
FiniteGroupoid discrete_groupoid(std::size_t terms);
/// n terms, exactly one path between any two terms.
FiniteGroupoid codiscrete_groupoid(std::size_t terms);
/// One term whose loops form the cyclic group of the given order.
FiniteGroupoid cyclic_groupoid(std::size_t order);
/// Connected groupoid on `terms` terms with cyclic vertex group of `order`.
FiniteGroupoid connected_cyclic_groupoid(std::size_t terms, std::size_t order);

// --- typoids --------------------------------------------------------------

/// Edges are the base paths, eqv = refl, star = comp, einv = inv, each edge
/// its own cell, idtoeqv the identity.
Typoid equality_typoid(const FiniteGroupoid& g, std::string name);

/// Pairing data of a product typoid. Terms, paths and edges of the product
/// are pairs of factor ids laid out row-major, so pairing and unpairing are
/// exact inverses.
struct ProductProvenance {
    std::string first;
    std::string second;
    std::size_t first_terms = 0, second_terms = 0;
    std::size_t first_paths = 0, second_paths = 0;
    std::size_t first_edges = 0, second_edges = 0;

    TermId pair_term(TermId a, TermId b) const { return TermId{a.index() * second_terms + b.index()}; }
    std::pair<TermId, TermId> unpair_term(TermId z) const {
        return {TermId{z.index() / second_terms}, TermId{z.index() % second_terms}};
    }
    /// Pairs of component paths into a product path.
    PathId pair_path(PathId p, PathId q) const { return PathId{p.index() * second_paths + q.index()}; }
    std::pair<PathId, PathId> unpair_path(PathId p) const {
        return {PathId{p.index() / second_paths}, PathId{p.index() % second_paths}};
    }
    /// T: component edges to a product edge.
    EdgeId pair_edge(EdgeId e1, EdgeId e2) const { return EdgeId{e1.index() * second_edges + e2.index()}; }
    /// Upsilon: a product edge to its components.
    std::pair<EdgeId, EdgeId> unpair_edge(EdgeId e) const {
        return {EdgeId{e.index() / second_edges}, EdgeId{e.index() % second_edges}};
    }

    friend bool operator==(const ProductProvenance&, const ProductProvenance&) = default;
};

struct Product {
    Typoid typoid;
    ProductProvenance provenance;
};

std::string product_name(const Typoid& a, const Typoid& b);
Product product_typoid(const Typoid& a, const Typoid& b);

/// The two projections, acting on edges by unpairing.
std::pair<TypoidMorphism, TypoidMorphism> projections(const Typoid& product, const ProductProvenance& provenance);

/// Pairing of f : C -> A and g : C -> B into C -> A x B.
TypoidMorphism pairing(const TypoidMorphism& f, const TypoidMorphism& g, const Typoid& product, const ProductProvenance& provenance);

/// Same base groupoid, exactly one edge per ordered pair of terms.
Typoid truncate(const Typoid& t);

/// The edge of a truncation between two terms.
inline EdgeId truncation_edge(const Typoid& truncated, TermId x, TermId y) {
    return EdgeId{x.index() * truncated.term_count() + y.index()};
}

/// A term map into a truncation, acting on edges by the unique edge between
/// the images. When `path_map` is empty an ap functor is searched for;
/// throws InputError naming the offending path when none exists.
TypoidMorphism morphism_into_truncation(const Typoid& source, const Typoid& truncated, std::span<const TermId> term_map,
                                        std::span<const PathId> path_map = {});

/// Replaces the base groupoid by the edge layer quotiented by cells.
Typoid univalent_completion(const Typoid& t);

/// Edges are bijections between the given finite sets, cells are equality of
/// functions, base paths are bijections too and idtoeqv is the identity.
/// Bijections of a hom are listed lexicographically, identity first.
Typoid universe_typoid(std::span<const std::size_t> cardinalities, std::string name = "U",
                       std::size_t max_edges = 100'000);

/// The permutation (image of 0..n-1) behind an edge of a universe typoid.
std::vector<std::size_t> universe_bijection(std::span<const std::size_t> cardinalities, const Typoid& universe, EdgeId e);

// --- exponential ----------------------------------------------------------

struct ExponentialLimits {
    std::size_t max_terms = 64;
    std::size_t max_edges = 256;
};

/// An edge phi ~ theta of the exponential: one component f(x) ~ g(x) per
/// source term.
struct ExponentialEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    std::vector<EdgeId> components;

    friend bool operator==(const ExponentialEdge&, const ExponentialEdge&) = default;
};

struct Exponential {
    Typoid typoid;
    /// Canonical terms: validated typoid functions source -> target.
    std::vector<TypoidMorphism> terms;
    std::vector<ExponentialEdge> edges;
};

std::string exponential_name(const Typoid& source, const Typoid& target);

/// B^A: typoid functions A -> B with natural families between them. Throws
/// ResourceLimit naming "max-terms" or "max-edges" when enumeration exceeds
/// the limits.
Exponential exponential_typoid(const Typoid& source, const Typoid& target, const ExponentialLimits& limits = {});

/// All typoid functions source -> target (term map, ap functor, edge table)
/// in lexicographic order. Throws ResourceLimit past `max_terms`.
std::vector<TypoidMorphism> enumerate_typoid_functions(const Typoid& source, const Typoid& target, std::size_t max_terms);

// --- stock typoids ---------------------------------------------------------

namespace stock {

Typoid unit();
/// Two terms, refl paths only.
Typoid bool_disc();
/// Two terms, one path between any two.
Typoid prop2();
/// One term, one path, two edges in separate cells.
Typoid twoedge();
/// One term, one path, two edges sharing the eqv cell.
Typoid eqv_rich();
/// Equality typoid of the two-element group on one term.
Typoid eq_z2();

/// Every stock typoid, plus truncations and pairwise products of the
/// univalent base cases.
std::vector<Typoid> corpus();
/// The univalent members of the stock set (no derived constructions).
std::vector<Typoid> univalent_basics();

} // namespace stock

} // namespace typoid
