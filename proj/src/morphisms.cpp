#include "typoid/morphisms.hpp"

#include "check_context.hpp"
#include "typoid/error.hpp"

namespace typoid {

using detail::arrow_label;
using detail::arrow_label_or_none;
using detail::Checker;
using detail::term_label;

namespace {

bool check_morphism_tables(const Typoid& s, const Typoid& t, const TypoidMorphism& m, bool with_ap, Checker& c) {
    bool ok = true;
    if (m.term_map.size() != s.term_count()) {
        c.fail(Law::Bookkeeping, {}, "term map has " + std::to_string(m.term_map.size()) + " entries for " +
                                         std::to_string(s.term_count()) + " terms");
        return false;
    }
    for (std::size_t x = 0; x < s.term_count(); ++x) {
        ok &= c.expect(Law::Bookkeeping, m.term_map[x].index() < t.term_count(), {Witness::term(TermId{x})},
                       [&] { return "image of " + term_label(TermId{x}) + " is outside the target"; });
    }
    if (!ok) return false;
    auto image_ends = [&](const Endpoints& e) { return Endpoints{m.term(e.source), m.term(e.target)}; };
    if (with_ap) {
        if (m.path_map.size() != s.path_count()) {
            c.fail(Law::Bookkeeping, {}, "path map has " + std::to_string(m.path_map.size()) + " entries for " +
                                             std::to_string(s.path_count()) + " paths");
            ok = false;
        } else {
            for (std::size_t i = 0; i < s.path_count(); ++i) {
                const PathId p{i}, q = m.path_map[i];
                ok &= c.expect(Law::Bookkeeping, t.base.contains(q) && t.base.ends[q.index()] == image_ends(s.base.ends[i]),
                               {Witness::path(p)}, [&] { return "ap(" + arrow_label(p) + ") does not connect the images of its endpoints"; });
            }
        }
    }
    if (m.edge_map.size() != s.edge_count()) {
        c.fail(Law::Bookkeeping, {}, "edge map has " + std::to_string(m.edge_map.size()) + " entries for " +
                                         std::to_string(s.edge_count()) + " edges");
        return false;
    }
    for (std::size_t i = 0; i < s.edge_count(); ++i) {
        const EdgeId e{i}, d = m.edge_map[i];
        ok &= c.expect(Law::Bookkeeping, t.layer.contains(d) && t.layer.ends[d.index()] == image_ends(s.layer.ends[i]),
                       {Witness::edge(e)}, [&] { return "Phi(" + arrow_label(e) + ") does not connect the images of its endpoints"; });
    }
    return ok;
}

} // namespace

ValidationReport validate_morphism(const Typoid& s, const Typoid& t, const TypoidMorphism& m, const MorphismOptions& options) {
    ValidationReport report;
    Checker c(report, options.max_checks);
    if (!check_morphism_tables(s, t, m, options.check_ap, c)) {
        report.normalize();
        return report;
    }
    if (options.check_ap) {
        for (std::size_t x = 0; x < s.term_count(); ++x) {
            const TermId term{x};
            c.expect(Law::Functor, m.ap(s.refl(term)) == t.refl(m.term(term)), {Witness::term(term)},
                     [&] { return "ap(refl_" + term_label(term) + ") is not refl"; });
        }
        const auto out = detail::outgoing(s.base);
        for (std::size_t i = 0; i < s.path_count(); ++i) {
            const PathId p{i};
            if (!detail::well_placed(s.base, p)) continue;
            for (PathId q : out[s.base.target(p).index()]) {
                const PathId lhs = m.ap(s.comp(p, q)), rhs = t.comp(m.ap(p), m.ap(q));
                c.expect(Law::Functor, lhs.valid() && lhs == rhs, {Witness::path(p), Witness::path(q)},
                         [&] { return "ap(" + arrow_label(p) + " . " + arrow_label(q) + ") is not ap(" + arrow_label(p) + ") . ap(" + arrow_label(q) + ")"; });
            }
        }
    }
    const auto& cells = t.layer.cells;
    auto same = [&](EdgeId a, EdgeId b) { return a.valid() && b.valid() && cells.same(a, b); };
    for (std::size_t x = 0; x < s.term_count(); ++x) {
        const TermId term{x};
        const EdgeId image = m.phi(s.eqv(term));
        c.expect(Law::UnitPreservation, same(image, t.eqv(m.term(term))), {Witness::term(term)},
                 [&] { return "Phi(eqv_" + term_label(term) + ") = " + arrow_label_or_none(image) + " is not in the cell of eqv"; });
    }
    const auto out = detail::outgoing(s.layer);
    for (std::size_t i = 0; i < s.edge_count(); ++i) {
        const EdgeId e{i};
        if (!detail::well_placed(s.layer, e)) continue;
        for (EdgeId d : out[s.layer.target(e).index()]) {
            const EdgeId lhs = m.phi(s.star(e, d)), rhs = t.star(m.phi(e), m.phi(d));
            c.expect(Law::CompPreservation, same(lhs, rhs), {Witness::edge(e), Witness::edge(d)}, [&] {
                return "Phi(" + arrow_label(e) + " * " + arrow_label(d) + ") is not cell-equal to Phi(" + arrow_label(e) + ") * Phi(" +
                       arrow_label(d) + ")";
            });
        }
        for (EdgeId d : s.layer.cells.members(e)) {
            if (d == e) continue;
            c.expect(Law::CellRespect, same(m.phi(e), m.phi(d)), {Witness::edge(e), Witness::edge(d)},
                     [&] { return arrow_label(e) + " and " + arrow_label(d) + " share a cell but their images do not"; });
        }
    }
    report.normalize();
    return report;
}

bool is_strict(const Typoid& s, const Typoid& t, const TypoidMorphism& m) {
    for (std::size_t x = 0; x < s.term_count(); ++x) {
        const TermId term{x};
        if (m.phi(s.eqv(term)) != t.eqv(m.term(term))) return false;
    }
    return true;
}

ValidationReport check_inverse_law(const Typoid& s, const Typoid& t, const TypoidMorphism& m, const ValidationOptions& options) {
    ValidationReport report;
    Checker c(report, options.max_checks);
    for (std::size_t i = 0; i < s.edge_count(); ++i) {
        const EdgeId e{i};
        const EdgeId lhs = m.phi(s.einv(e)), rhs = t.einv(m.phi(e));
        c.expect(Law::InverseLaw, lhs.valid() && rhs.valid() && t.layer.cells.same(lhs, rhs), {Witness::edge(e)},
                 [&] { return "Phi(einv(" + arrow_label(e) + ")) is not cell-equal to einv(Phi(" + arrow_label(e) + "))"; });
    }
    report.normalize();
    return report;
}

TypoidMorphism compose_morphisms(const TypoidMorphism& f, const TypoidMorphism& g) {
    if (f.target != g.source)
        throw ContractError("cannot compose " + f.name + " : " + f.source + " -> " + f.target + " with " + g.name + " : " + g.source +
                            " -> " + g.target);
    TypoidMorphism h;
    h.name = g.name + "_o_" + f.name;
    h.source = f.source;
    h.target = g.target;
    h.term_map.reserve(f.term_map.size());
    for (TermId x : f.term_map) h.term_map.push_back(g.term(x));
    if (!f.path_map.empty() || !g.path_map.empty()) {
        for (PathId p : f.path_map) h.path_map.push_back(g.ap(p));
    }
    for (EdgeId e : f.edge_map) h.edge_map.push_back(g.phi(e));
    return h;
}

TypoidMorphism identity_morphism(const Typoid& t) {
    TypoidMorphism m;
    m.name = "id_" + t.name;
    m.source = m.target = t.name;
    for (std::size_t x = 0; x < t.term_count(); ++x) m.term_map.emplace_back(x);
    for (std::size_t p = 0; p < t.path_count(); ++p) m.path_map.emplace_back(p);
    for (std::size_t e = 0; e < t.edge_count(); ++e) m.edge_map.emplace_back(e);
    return m;
}

std::string equality_name(const Typoid& t) { return t.name + "_eq"; }

TypoidMorphism identity_from_equality(const Typoid& t) {
    TypoidMorphism m;
    m.name = "idtoeqv_" + t.name;
    m.source = equality_name(t);
    m.target = t.name;
    for (std::size_t x = 0; x < t.term_count(); ++x) m.term_map.emplace_back(x);
    for (std::size_t p = 0; p < t.path_count(); ++p) m.path_map.emplace_back(p);
    // edges of the equality typoid are the base paths, with the same ids
    m.edge_map = t.idtoeqv;
    return m;
}

std::vector<std::vector<PathId>> enumerate_ap_functors(const FiniteGroupoid& s, const FiniteGroupoid& t,
                                                       std::span<const TermId> term_map, std::size_t limit) {
    std::vector<std::vector<PathId>> found;
    if (term_map.size() != s.term_count) return found;
    for (TermId y : term_map)
        if (y.index() >= t.term_count) return found;

    const HomIndex<PathId> target_homs(t);
    const std::size_t n = s.arrow_count();
    std::vector<std::vector<PathId>> candidates(n);
    std::vector<bool> is_refl(n, false);
    for (std::size_t x = 0; x < s.term_count; ++x)
        if (s.contains(s.unit_of(TermId{x}))) is_refl[s.unit_of(TermId{x}).index()] = true;
    for (std::size_t i = 0; i < n; ++i) {
        const TermId fx = term_map[s.ends[i].source.index()], fy = term_map[s.ends[i].target.index()];
        if (is_refl[i]) {
            candidates[i] = {t.unit_of(fx)};
        } else {
            const auto hom = target_homs(fx, fy);
            candidates[i].assign(hom.begin(), hom.end());
        }
    }

    std::vector<PathId> image(n);
    // pairs (a, b) whose composite c has max(a, b, c) == i, checked once i is assigned
    std::vector<std::vector<std::pair<PathId, PathId>>> due(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const PathId pa{a}, pb{b};
            if (!s.composable(pa, pb)) continue;
            const PathId c = s.compose(pa, pb);
            if (!s.contains(c)) continue;
            due[std::max({a, b, c.index()})].emplace_back(pa, pb);
        }

    auto consistent = [&](std::size_t i) {
        for (auto [a, b] : due[i])
            if (image[s.compose(a, b).index()] != t.compose(image[a.index()], image[b.index()])) return false;
        return true;
    };

    auto search = [&](auto&& self, std::size_t i) -> void {
        if (found.size() >= limit) return;
        if (i == n) {
            found.push_back(image);
            return;
        }
        for (PathId q : candidates[i]) {
            image[i] = q;
            if (consistent(i)) self(self, i + 1);
            if (found.size() >= limit) return;
        }
    };
    search(search, 0);
    return found;
}

std::optional<std::vector<PathId>> find_ap_functor(const FiniteGroupoid& s, const FiniteGroupoid& t, std::span<const TermId> term_map) {
    auto all = enumerate_ap_functors(s, t, term_map, 1);
    if (all.empty()) return std::nullopt;
    return std::move(all.front());
}

} // namespace typoid
