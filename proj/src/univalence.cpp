#include "typoid/univalence.hpp"

#include <functional>

#include "check_context.hpp"

namespace typoid {

using detail::arrow_label;
using detail::arrow_label_or_none;
using detail::Checker;
using detail::term_label;

Violation NotUnivalent::violation() const {
    Violation v;
    if (reason == Reason::NotInjective) {
        v.law = Law::RoundTrip1;
        for (PathId p : paths) v.witness.push_back(Witness::path(p));
    } else {
        v.law = Law::RoundTrip2;
        v.witness.push_back(Witness::edge(unhit));
    }
    v.detail = detail;
    return v;
}

UnivalenceResult check_univalence(const Typoid& t, const ValidationOptions& options) {
    const auto report = validate_typoid(t, options);
    if (!report.valid()) throw ContractError(t.name + " is not a valid typoid: " + report.violations.front().detail);

    const auto& cells = t.layer.cells;
    const HomIndex<PathId> paths(t.base);
    const HomIndex<EdgeId> edges(t.layer);
    UnivalenceCertificate cert;
    cert.typoid = t.name;
    cert.ua.assign(t.edge_count(), PathId{});
    // preimage[rep] = the path whose idtoeqv lands in the class of rep
    std::vector<PathId> preimage(t.edge_count());

    for (std::size_t x = 0; x < t.term_count(); ++x)
        for (std::size_t y = 0; y < t.term_count(); ++y) {
            const TermId tx{x}, ty{y};
            const std::string hom = term_label(tx) + " -> " + term_label(ty);
            for (PathId p : paths(tx, ty)) {
                const EdgeId rep = cells.representative(t.to_edge(p));
                if (preimage[rep.index()].valid()) {
                    NotUnivalent w;
                    w.reason = NotUnivalent::Reason::NotInjective;
                    w.source = tx;
                    w.target = ty;
                    w.paths = {preimage[rep.index()], p};
                    w.detail = "paths " + arrow_label(preimage[rep.index()]) + " and " + arrow_label(p) + " on " + hom +
                               " both land in the cell of " + arrow_label(rep);
                    return w;
                }
                preimage[rep.index()] = p;
            }
            for (EdgeId e : edges(tx, ty)) {
                const EdgeId rep = cells.representative(e);
                if (!preimage[rep.index()].valid()) {
                    NotUnivalent w;
                    w.reason = NotUnivalent::Reason::NotSurjective;
                    w.source = tx;
                    w.target = ty;
                    w.unhit = rep;
                    w.detail = "no path on " + hom + " lands in the cell of " + arrow_label(rep);
                    return w;
                }
                cert.ua[e.index()] = preimage[rep.index()];
            }
        }

    cert.strict = true;
    for (std::size_t x = 0; x < t.term_count(); ++x)
        cert.strict = cert.strict && cert(t.eqv(TermId{x})) == t.refl(TermId{x});
    if (!cert.strict) throw Error("internal: certificate of " + t.name + " is not strict");
    return cert;
}

ValidationReport verify_certificate(const Typoid& t, const UnivalenceCertificate& c, const ValidationOptions& options) {
    ValidationReport report;
    Checker check(report, options.max_checks);
    if (c.ua.size() != t.edge_count()) {
        check.fail(Law::Bookkeeping, {}, "ua table has " + std::to_string(c.ua.size()) + " entries for " + std::to_string(t.edge_count()) + " edges");
        report.normalize();
        return report;
    }
    bool placed = true;
    for (std::size_t i = 0; i < t.edge_count(); ++i) {
        const EdgeId e{i};
        const PathId p = c(e);
        placed &= check.expect(Law::Bookkeeping, t.base.contains(p) && t.base.ends[p.index()] == t.layer.ends[i], {Witness::edge(e)},
                               [&] { return "ua(" + arrow_label(e) + ") = " + arrow_label_or_none(p) + " has the wrong endpoints"; });
    }
    if (!placed) {
        report.normalize();
        return report;
    }
    for (std::size_t i = 0; i < t.path_count(); ++i) {
        const PathId p{i};
        const EdgeId e = t.to_edge(p);
        const PathId back = c(e);
        check.expect(Law::RoundTrip1, back == p, {Witness::path(p)},
                     [&] { return "ua(idtoeqv(" + arrow_label(p) + ")) = " + arrow_label_or_none(back); });
    }
    const auto& cells = t.layer.cells;
    for (std::size_t i = 0; i < t.edge_count(); ++i) {
        const EdgeId e{i};
        const EdgeId there = t.to_edge(c(e));
        check.expect(Law::RoundTrip2, there.valid() && cells.same(there, e), {Witness::edge(e)},
                     [&] { return "idtoeqv(ua(" + arrow_label(e) + ")) = " + arrow_label_or_none(there) + " is not in the cell of " + arrow_label(e); });
        for (EdgeId d : cells.members(e)) {
            if (d <= e) continue;
            check.expect(Law::UaWellDefined, c(e) == c(d), {Witness::edge(e), Witness::edge(d)},
                         [&] { return arrow_label(e) + " and " + arrow_label(d) + " share a cell but ua differs"; });
        }
    }
    report.normalize();
    return report;
}

TypoidMorphism induce_morphism(const Typoid& source, const Typoid& target, std::span<const TermId> term_map,
                               std::span<const PathId> ap, const UnivalenceCertificate& source_ua) {
    TypoidMorphism m;
    m.name = "induced_" + source.name + "_" + target.name;
    m.source = source.name;
    m.target = target.name;
    m.term_map.assign(term_map.begin(), term_map.end());
    m.path_map.assign(ap.begin(), ap.end());
    for (std::size_t e = 0; e < source.edge_count(); ++e) m.edge_map.push_back(target.to_edge(m.ap(source_ua(EdgeId{e}))));

    const auto report = validate_morphism(source, target, m);
    for (const auto& v : report.violations)
        if (v.law == Law::Bookkeeping || v.law == Law::Functor) throw ContractError("term map and ap do not form a strict functor: " + v.detail);
    if (!report.valid()) throw Error("internal: induced morphism fails " + std::string(law_name(report.violations.front().law)));
    return m;
}

TypoidMorphism induce_morphism(const Typoid& source, const Typoid& target, std::span<const TermId> term_map,
                               std::span<const PathId> ap) {
    auto result = check_univalence(source);
    if (auto* w = std::get_if<NotUnivalent>(&result)) throw NotUnivalentError(std::move(*w));
    return induce_morphism(source, target, term_map, ap, std::get<UnivalenceCertificate>(result));
}

ValidationReport check_square(const Typoid& source, const Typoid& target, const TypoidMorphism& m, const UnivalenceCertificate& target_ua) {
    (void)target;
    ValidationReport report;
    Checker check(report, default_max_checks);
    for (std::size_t i = 0; i < source.path_count(); ++i) {
        const PathId p{i};
        const PathId lhs = target_ua(m.phi(source.to_edge(p)));
        check.expect(Law::Square, lhs.valid() && lhs == m.ap(p), {Witness::path(p)}, [&] {
            return "ua(Phi(idtoeqv(" + arrow_label(p) + "))) = " + arrow_label_or_none(lhs) + " but ap(" + arrow_label(p) +
                   ") = " + arrow_label_or_none(m.ap(p));
        });
    }
    report.normalize();
    return report;
}

ValidationReport check_square_edges(const Typoid& source, const Typoid& target, const TypoidMorphism& m,
                                    const UnivalenceCertificate& source_ua, const UnivalenceCertificate& target_ua) {
    (void)target;
    ValidationReport report;
    Checker check(report, default_max_checks);
    for (std::size_t i = 0; i < source.edge_count(); ++i) {
        const EdgeId e{i};
        const PathId lhs = target_ua(m.phi(e)), rhs = m.ap(source_ua(e));
        check.expect(Law::SquareEdges, lhs.valid() && lhs == rhs, {Witness::edge(e)}, [&] {
            return "ua(Phi(" + arrow_label(e) + ")) = " + arrow_label_or_none(lhs) + " but ap(ua(" + arrow_label(e) + ")) = " +
                   arrow_label_or_none(rhs);
        });
    }
    report.normalize();
    return report;
}

TypoidMorphism ua_morphism(const Typoid& t, const UnivalenceCertificate& c) {
    TypoidMorphism m;
    m.name = "ua_" + t.name;
    m.source = t.name;
    m.target = equality_name(t);
    for (std::size_t x = 0; x < t.term_count(); ++x) m.term_map.emplace_back(x);
    for (std::size_t p = 0; p < t.path_count(); ++p) m.path_map.emplace_back(p);
    // equality typoid edges are the base paths
    for (PathId p : c.ua) m.edge_map.emplace_back(p.value);
    return m;
}

namespace {

UnivalenceCertificate factor_certificate(const Typoid& factor, const UnivalenceCertificate& product_ua,
                                         const std::function<EdgeId(EdgeId)>& embed, const std::function<PathId(PathId)>& project) {
    UnivalenceCertificate c;
    c.typoid = factor.name;
    for (std::size_t e = 0; e < factor.edge_count(); ++e) c.ua.push_back(project(product_ua(embed(EdgeId{e}))));
    c.strict = true;
    for (std::size_t x = 0; x < factor.term_count(); ++x) c.strict = c.strict && c(factor.eqv(TermId{x})) == factor.refl(TermId{x});
    return c;
}

} // namespace

PointedFactors check_pointed_factors(const Typoid& a, const Typoid& b, const Product& product, std::optional<TermId> a_point,
                                     std::optional<TermId> b_point) {
    const auto& prov = product.provenance;
    if (prov.first != a.name || prov.second != b.name)
        throw ContractError(product.typoid.name + " is not the product of " + a.name + " and " + b.name);
    auto result = check_univalence(product.typoid);
    if (auto* w = std::get_if<NotUnivalent>(&result)) throw ContractError(product.typoid.name + " is not univalent: " + w->detail);
    const auto& ua = std::get<UnivalenceCertificate>(result);

    PointedFactors out;
    if (b_point && b_point->index() < b.term_count()) {
        const EdgeId eqv_b = b.eqv(*b_point);
        out.first = factor_certificate(
            a, ua, [&](EdgeId e) { return prov.pair_edge(e, eqv_b); }, [&](PathId p) { return prov.unpair_path(p).first; });
    } else {
        out.notes.push_back(b.term_count() == 0 ? b.name + " is empty, so " + a.name + " cannot be certified through it"
                                                : "no point of " + b.name + " given, " + a.name + " not certified");
    }
    if (a_point && a_point->index() < a.term_count()) {
        const EdgeId eqv_a = a.eqv(*a_point);
        out.second = factor_certificate(
            b, ua, [&](EdgeId e) { return prov.pair_edge(eqv_a, e); }, [&](PathId p) { return prov.unpair_path(p).second; });
    } else {
        out.notes.push_back(a.term_count() == 0 ? a.name + " is empty, so " + b.name + " cannot be certified through it"
                                                : "no point of " + a.name + " given, " + b.name + " not certified");
    }
    return out;
}

} // namespace typoid
