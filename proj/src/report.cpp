#include "typoid/report.hpp"

#include <algorithm>
#include <numeric>

namespace typoid {

std::string_view law_name(Law law) {
    switch (law) {
    case Law::Bookkeeping: return "Bookkeeping";
    case Law::Groupoid: return "Groupoid";
    case Law::Partition: return "Partition";
    case Law::Typ1: return "Typ1";
    case Law::Typ2: return "Typ2";
    case Law::Typ3: return "Typ3";
    case Law::Typ4: return "Typ4";
    case Law::IdtoEqv: return "IdtoEqv";
    case Law::InverseUnit: return "InverseUnit";
    case Law::InverseInvolution: return "InverseInvolution";
    case Law::InverseCongruence: return "InverseCongruence";
    case Law::Functor: return "Functor";
    case Law::UnitPreservation: return "UnitPreservation";
    case Law::CompPreservation: return "CompPreservation";
    case Law::CellRespect: return "CellRespect";
    case Law::InverseLaw: return "InverseLaw";
    case Law::RoundTrip1: return "RoundTrip1";
    case Law::RoundTrip2: return "RoundTrip2";
    case Law::UaWellDefined: return "UaWellDefined";
    case Law::Square: return "Square";
    case Law::SquareEdges: return "SquareEdges";
    case Law::Naturality: return "Naturality";
    }
    return "?";
}

std::string law_code(Law law) {
    const auto n = static_cast<unsigned>(law) + 1;
    std::string digits = std::to_string(n);
    return "L" + std::string(3 - std::min<std::size_t>(3, digits.size()), '0') + digits;
}

bool ValidationReport::has(Law law) const {
    return std::any_of(violations.begin(), violations.end(), [law](const Violation& v) { return v.law == law; });
}

std::uint64_t ValidationReport::total_checks() const {
    return std::accumulate(checks.begin(), checks.end(), std::uint64_t{0});
}

void ValidationReport::merge(const ValidationReport& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
    for (std::size_t i = 0; i < law_count; ++i) checks[i] += other.checks[i];
}

void ValidationReport::normalize() { std::sort(violations.begin(), violations.end()); }

} // namespace typoid
