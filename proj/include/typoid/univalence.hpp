#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "typoid/constructions.hpp"
#include "typoid/core.hpp"
#include "typoid/error.hpp"
#include "typoid/morphisms.hpp"

namespace typoid {

/// A ua table: for every edge e : x ~ y, a base path ua(e) : x = y.
struct UnivalenceCertificate {
    std::string typoid;
    std::vector<PathId> ua;
    bool strict = false;

    PathId operator()(EdgeId e) const { return e.valid() && e.index() < ua.size() ? ua[e.index()] : PathId{}; }

    friend bool operator==(const UnivalenceCertificate&, const UnivalenceCertificate&) = default;
};

/// Why p -> cell(idtoeqv(p)) fails to be a bijection on some hom.
struct NotUnivalent {
    enum class Reason { NotInjective, NotSurjective };
    Reason reason = Reason::NotSurjective;
    TermId source;
    TermId target;
    /// NotInjective: two paths landing in the same cell.
    std::vector<PathId> paths;
    /// NotSurjective: representative of a cell class no path reaches.
    EdgeId unhit;
    std::string detail;

    /// The witness as a report entry (round-trip 1 breaks on a collision,
    /// round-trip 2 on an unhit class).
    Violation violation() const;
};

using UnivalenceResult = std::variant<UnivalenceCertificate, NotUnivalent>;

/// Throws ContractError when t does not pass validate_typoid.
UnivalenceResult check_univalence(const Typoid& t, const ValidationOptions& options = {});

/// Checks both round-trips and well-definedness on cells exhaustively.
ValidationReport verify_certificate(const Typoid& t, const UnivalenceCertificate& c, const ValidationOptions& options = {});

/// Raised by induce_morphism when the source has no certificate.
class NotUnivalentError : public Error {
public:
    explicit NotUnivalentError(NotUnivalent witness)
        : Error("source typoid is not univalent: " + witness.detail), witness_(std::move(witness)) {}
    const NotUnivalent& witness() const { return witness_; }

private:
    NotUnivalent witness_;
};

/// Phi = idtoeqv_dst . ap . ua_src. Throws ContractError when `ap` is not a
/// strict functor over the term map.
TypoidMorphism induce_morphism(const Typoid& source, const Typoid& target, std::span<const TermId> term_map,
                               std::span<const PathId> ap, const UnivalenceCertificate& source_ua);
/// As above, computing the source certificate; throws NotUnivalentError.
TypoidMorphism induce_morphism(const Typoid& source, const Typoid& target, std::span<const TermId> term_map,
                               std::span<const PathId> ap);

/// ua_dst(Phi(idtoeqv_src(p))) = ap(p) for every source path p.
ValidationReport check_square(const Typoid& source, const Typoid& target, const TypoidMorphism& m,
                              const UnivalenceCertificate& target_ua);

/// ua_dst(Phi(e)) = ap(ua_src(e)) for every source edge e.
ValidationReport check_square_edges(const Typoid& source, const Typoid& target, const TypoidMorphism& m,
                                    const UnivalenceCertificate& source_ua, const UnivalenceCertificate& target_ua);

/// The ua table packaged as a morphism t -> equality typoid of t's base.
TypoidMorphism ua_morphism(const Typoid& t, const UnivalenceCertificate& c);

struct PointedFactors {
    std::optional<UnivalenceCertificate> first;
    std::optional<UnivalenceCertificate> second;
    /// Reasons a factor certificate was not produced.
    std::vector<std::string> notes;
};

/// Factor certificates read off a univalent product: A is certified through
/// the embedding e -> (e, eqv_b) when a point b of B is given, and B
/// symmetrically. Throws ContractError when the product is not univalent.
PointedFactors check_pointed_factors(const Typoid& a, const Typoid& b, const Product& product, std::optional<TermId> a_point,
                                     std::optional<TermId> b_point);

} // namespace typoid
