#pragma once

#include <string>
#include <vector>

#include "typoid/core.hpp"
#include "typoid/error.hpp"
#include "typoid/report.hpp"

namespace typoid::detail {

/// Accumulates checks and violations into a report and enforces the work
/// bound on law instances.
class Checker {
public:
    Checker(ValidationReport& report, std::uint64_t max_checks) : report_(report), max_checks_(max_checks) {}

    template <class Detail>
    bool expect(Law law, bool ok, std::vector<Witness> witness, Detail&& detail) {
        tick(law);
        if (!ok) report_.violations.push_back({law, std::move(witness), std::string(detail())});
        return ok;
    }

    void fail(Law law, std::vector<Witness> witness, std::string detail) {
        tick(law);
        report_.violations.push_back({law, std::move(witness), std::move(detail)});
    }

    void tick(Law law) {
        ++report_.checks[static_cast<std::size_t>(law)];
        if (++spent_ > max_checks_)
            throw ResourceLimit("max-checks", "law-instance budget of " + std::to_string(max_checks_) + " exceeded");
    }

private:
    ValidationReport& report_;
    std::uint64_t max_checks_;
    std::uint64_t spent_ = 0;
};

inline std::string term_label(TermId x) { return "x" + std::to_string(x.value); }
inline std::string arrow_label(PathId p) { return "p" + std::to_string(p.value); }
inline std::string arrow_label(EdgeId e) { return "e" + std::to_string(e.value); }
inline std::string arrow_label_or_none(PathId p) { return p.valid() ? arrow_label(p) : std::string("<none>"); }
inline std::string arrow_label_or_none(EdgeId e) { return e.valid() ? arrow_label(e) : std::string("<none>"); }

inline Witness witness_of(PathId p) { return Witness::path(p); }
inline Witness witness_of(EdgeId e) { return Witness::edge(e); }

/// Arrows leaving each term, ascending. Arrows with out-of-range endpoints
/// are left out.
template <class ArrowId>
std::vector<std::vector<ArrowId>> outgoing(const ArrowTables<ArrowId>& t) {
    std::vector<std::vector<ArrowId>> out(t.term_count);
    for (std::size_t a = 0; a < t.arrow_count(); ++a) {
        const auto& e = t.ends[a];
        if (e.source.index() < t.term_count && e.target.index() < t.term_count) out[e.source.index()].push_back(ArrowId{a});
    }
    return out;
}

template <class ArrowId>
bool well_placed(const ArrowTables<ArrowId>& t, ArrowId a) {
    return t.contains(a) && t.source(a).index() < t.term_count && t.target(a).index() < t.term_count;
}

} // namespace typoid::detail
