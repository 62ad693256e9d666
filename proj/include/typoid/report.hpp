#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "typoid/ids.hpp"

namespace typoid {

/// Law tags. The first block belongs to the typoid axioms, the rest to
/// morphisms and univalence checks.
enum class Law : std::uint8_t {
    Bookkeeping,
    Groupoid,
    Partition,
    Typ1,
    Typ2,
    Typ3,
    Typ4,
    IdtoEqv,
    InverseUnit,        // einv(eqv_x) ~ eqv_x
    InverseInvolution,  // einv(einv(e)) ~ e
    InverseCongruence,  // e ~ d => einv(e) ~ einv(d)
    Functor,            // ap preserves refl and composition
    UnitPreservation,   // Phi(eqv_x) ~ eqv_f(x)
    CompPreservation,   // Phi(e * d) ~ Phi(e) * Phi(d)
    CellRespect,        // e ~ d => Phi(e) ~ Phi(d)
    InverseLaw,         // Phi(einv e) ~ einv(Phi e)
    RoundTrip1,         // ua(idtoeqv(p)) = p
    RoundTrip2,         // idtoeqv(ua(e)) ~ e
    UaWellDefined,      // e ~ d => ua(e) = ua(d)
    Square,             // ua_B(Phi(idtoeqv_A(p))) = ap(p)
    SquareEdges,        // ua_B(Phi(e)) = ap(ua_A(e))
    Naturality,         // exponential edge squares
};

inline constexpr std::size_t law_count = static_cast<std::size_t>(Law::Naturality) + 1;

std::string_view law_name(Law law);
/// Stable diagnostic code for a law violation, "L001".. in enum order.
std::string law_code(Law law);

struct Witness {
    enum class Kind : std::uint8_t { Term, Path, Edge };
    Kind kind;
    std::uint32_t value;

    static Witness term(TermId id) { return {Kind::Term, id.value}; }
    static Witness path(PathId id) { return {Kind::Path, id.value}; }
    static Witness edge(EdgeId id) { return {Kind::Edge, id.value}; }

    friend auto operator<=>(const Witness&, const Witness&) = default;
};

struct Violation {
    Law law;
    std::vector<Witness> witness;
    std::string detail;

    friend auto operator<=>(const Violation&, const Violation&) = default;
};

/// Outcome of a law check. Witness ids refer to the structure under test
/// (the source typoid for morphism checks).
struct ValidationReport {
    std::vector<Violation> violations;
    std::array<std::uint64_t, law_count> checks{};

    bool valid() const { return violations.empty(); }
    bool has(Law law) const;
    std::uint64_t checks_of(Law law) const { return checks[static_cast<std::size_t>(law)]; }
    std::uint64_t total_checks() const;

    void merge(const ValidationReport& other);
    /// Sorts violations so reports compare equal regardless of traversal order.
    void normalize();
};

inline constexpr std::uint64_t default_max_checks = 10'000'000;

} // namespace typoid
