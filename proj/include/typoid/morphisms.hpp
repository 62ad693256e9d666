#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "typoid/core.hpp"

namespace typoid {

/// A typoid function: a term map, its action on base paths (ap) and its
/// action on edges (Phi). The cell action is the property that Phi maps
/// cell-equal edges to cell-equal edges; it carries no data.
struct TypoidMorphism {
    std::string name;
    std::string source;
    std::string target;
    std::vector<TermId> term_map;
    std::vector<PathId> path_map;
    std::vector<EdgeId> edge_map;

    TermId term(TermId x) const { return x.index() < term_map.size() ? term_map[x.index()] : TermId{}; }
    PathId ap(PathId p) const { return p.valid() && p.index() < path_map.size() ? path_map[p.index()] : PathId{}; }
    EdgeId phi(EdgeId e) const { return e.valid() && e.index() < edge_map.size() ? edge_map[e.index()] : EdgeId{}; }

    friend bool operator==(const TypoidMorphism&, const TypoidMorphism&) = default;
};

struct MorphismOptions {
    std::uint64_t max_checks = default_max_checks;
    /// When false the base-path action is ignored entirely, which is the
    /// plain reading of a typoid function as term map plus edge action.
    bool check_ap = true;
};

ValidationReport validate_morphism(const Typoid& source, const Typoid& target, const TypoidMorphism& m,
                                   const MorphismOptions& options = {});

/// Phi(eqv_x) is eqv_f(x) as an id, not merely in its cell.
bool is_strict(const Typoid& source, const Typoid& target, const TypoidMorphism& m);

/// Phi(einv e) ~ einv(Phi e) for every edge.
ValidationReport check_inverse_law(const Typoid& source, const Typoid& target, const TypoidMorphism& m,
                                   const ValidationOptions& options = {});

/// g after f. Throws ContractError when f's target is not g's source.
TypoidMorphism compose_morphisms(const TypoidMorphism& f, const TypoidMorphism& g);

TypoidMorphism identity_morphism(const Typoid& t);

/// Name given to the equality typoid of t's base.
std::string equality_name(const Typoid& t);

/// The identity on terms and paths from the equality typoid of t's base
/// into t, acting on edges by t's idtoeqv table.
TypoidMorphism identity_from_equality(const Typoid& t);

/// All strict functors between base groupoids that agree with the term map,
/// in lexicographic order of their path tables. Stops after `limit` results.
std::vector<std::vector<PathId>> enumerate_ap_functors(const FiniteGroupoid& source, const FiniteGroupoid& target,
                                                       std::span<const TermId> term_map, std::size_t limit = SIZE_MAX);

/// First functor found by enumerate_ap_functors, if any.
std::optional<std::vector<PathId>> find_ap_functor(const FiniteGroupoid& source, const FiniteGroupoid& target,
                                                   std::span<const TermId> term_map);

} // namespace typoid
