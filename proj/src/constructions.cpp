#include "typoid/constructions.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "check_context.hpp"
#include "typoid/error.hpp"

namespace typoid {

FiniteGroupoid discrete_groupoid(std::size_t terms) {
    FiniteGroupoid g;
    g.term_count = terms;
    for (std::size_t x = 0; x < terms; ++x) g.add_arrow(TermId{x}, TermId{x});
    g.allocate();
    for (std::size_t x = 0; x < terms; ++x) {
        const PathId r{x};
        g.unit[x] = r;
        g.set_compose(r, r, r);
        g.set_inverse(r, r);
    }
    return g;
}

FiniteGroupoid codiscrete_groupoid(std::size_t terms) { return connected_cyclic_groupoid(terms, 1); }

FiniteGroupoid cyclic_groupoid(std::size_t order) { return connected_cyclic_groupoid(1, order); }

FiniteGroupoid connected_cyclic_groupoid(std::size_t terms, std::size_t order) {
    // path (x, y, k) has id (x * terms + y) * order + k
    FiniteGroupoid g;
    g.term_count = terms;
    auto id = [&](std::size_t x, std::size_t y, std::size_t k) { return PathId{(x * terms + y) * order + k}; };
    for (std::size_t x = 0; x < terms; ++x)
        for (std::size_t y = 0; y < terms; ++y)
            for (std::size_t k = 0; k < order; ++k) g.add_arrow(TermId{x}, TermId{y});
    g.allocate();
    for (std::size_t x = 0; x < terms; ++x) g.unit[x] = id(x, x, 0);
    for (std::size_t x = 0; x < terms; ++x)
        for (std::size_t y = 0; y < terms; ++y)
            for (std::size_t k = 0; k < order; ++k) {
                g.set_inverse(id(x, y, k), id(y, x, (order - k) % order));
                for (std::size_t z = 0; z < terms; ++z)
                    for (std::size_t l = 0; l < order; ++l) g.set_compose(id(x, y, k), id(y, z, l), id(x, z, (k + l) % order));
            }
    return g;
}

namespace {

template <class To, class From>
ArrowTables<To> retag(const ArrowTables<From>& in) {
    ArrowTables<To> out;
    out.term_count = in.term_count;
    out.ends = in.ends;
    auto conv = [](From a) { return a.valid() ? To{a.value} : To{}; };
    std::transform(in.unit.begin(), in.unit.end(), std::back_inserter(out.unit), conv);
    std::transform(in.composite.begin(), in.composite.end(), std::back_inserter(out.composite), conv);
    std::transform(in.inverse.begin(), in.inverse.end(), std::back_inserter(out.inverse), conv);
    return out;
}

/// Componentwise product of two arrow tables, arrows laid out row-major.
template <class ArrowId>
ArrowTables<ArrowId> product_tables(const ArrowTables<ArrowId>& a, const ArrowTables<ArrowId>& b) {
    ArrowTables<ArrowId> out;
    out.term_count = a.term_count * b.term_count;
    const std::size_t nb = b.arrow_count();
    auto term = [&](TermId x, TermId y) { return TermId{x.index() * b.term_count + y.index()}; };
    auto pair = [&](ArrowId p, ArrowId q) { return p.valid() && q.valid() ? ArrowId{p.index() * nb + q.index()} : ArrowId{}; };
    for (std::size_t p = 0; p < a.arrow_count(); ++p)
        for (std::size_t q = 0; q < nb; ++q)
            out.ends.push_back({term(a.ends[p].source, b.ends[q].source), term(a.ends[p].target, b.ends[q].target)});
    out.allocate();
    for (std::size_t x = 0; x < a.term_count; ++x)
        for (std::size_t y = 0; y < b.term_count; ++y)
            out.unit[term(TermId{x}, TermId{y}).index()] = pair(a.unit_of(TermId{x}), b.unit_of(TermId{y}));
    for (std::size_t p = 0; p < a.arrow_count(); ++p)
        for (std::size_t q = 0; q < nb; ++q) {
            const ArrowId pq = pair(ArrowId{p}, ArrowId{q});
            out.inverse[pq.index()] = pair(a.invert(ArrowId{p}), b.invert(ArrowId{q}));
            for (std::size_t r = 0; r < a.arrow_count(); ++r) {
                if (!a.composable(ArrowId{p}, ArrowId{r})) continue;
                for (std::size_t s = 0; s < nb; ++s) {
                    if (!b.composable(ArrowId{q}, ArrowId{s})) continue;
                    out.set_compose(pq, pair(ArrowId{r}, ArrowId{s}),
                                    pair(a.compose(ArrowId{p}, ArrowId{r}), b.compose(ArrowId{q}, ArrowId{s})));
                }
            }
        }
    return out;
}

/// Base groupoid whose paths are the cell classes of a layer, ordered by
/// representative, with idtoeqv sending a class to its eqv edge when it has
/// one and to its representative otherwise.
std::pair<FiniteGroupoid, std::vector<EdgeId>> quotient_base(const EquivalenceLayer& L) {
    FiniteGroupoid g;
    g.term_count = L.term_count;
    std::vector<PathId> class_path(L.arrow_count());
    std::vector<EdgeId> to_edge;
    for (std::size_t i = 0; i < L.arrow_count(); ++i) {
        const EdgeId e{i};
        if (L.cells.representative(e) != e) continue;
        class_path[i] = g.add_arrow(L.source(e), L.target(e));
        to_edge.push_back(e);
    }
    auto path_of = [&](EdgeId e) { return e.valid() ? class_path[L.cells.representative(e).index()] : PathId{}; };
    g.allocate();
    for (std::size_t x = 0; x < L.term_count; ++x) {
        const EdgeId ex = L.eqv(TermId{x});
        g.unit[x] = path_of(ex);
        to_edge[g.unit[x].index()] = ex;
    }
    for (std::size_t p = 0; p < g.arrow_count(); ++p) {
        const EdgeId rp = L.cells.representative(to_edge[p]);
        g.inverse[p] = path_of(L.einv(rp));
        for (std::size_t q = 0; q < g.arrow_count(); ++q) {
            if (!g.composable(PathId{p}, PathId{q})) continue;
            const EdgeId rq = L.cells.representative(to_edge[q]);
            g.set_compose(PathId{p}, PathId{q}, path_of(L.star(rp, rq)));
        }
    }
    return {std::move(g), std::move(to_edge)};
}

std::size_t factorial(std::size_t n) {
    std::size_t f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= i;
    return f;
}

/// Lexicographic rank of a permutation of 0..n-1.
std::size_t permutation_rank(std::span<const std::size_t> perm) {
    std::size_t rank = 0;
    const std::size_t n = perm.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t smaller = 0;
        for (std::size_t j = i + 1; j < n; ++j) smaller += perm[j] < perm[i];
        rank += smaller * factorial(n - 1 - i);
    }
    return rank;
}

std::vector<std::size_t> permutation_unrank(std::size_t n, std::size_t rank) {
    std::vector<std::size_t> pool(n), perm;
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t f = factorial(n - 1 - i);
        perm.push_back(pool[rank / f]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(rank / f));
        rank %= f;
    }
    return perm;
}

} // namespace

Typoid equality_typoid(const FiniteGroupoid& g, std::string name) {
    Typoid t;
    t.name = std::move(name);
    t.base = g;
    static_cast<ArrowTables<EdgeId>&>(t.layer) = retag<EdgeId>(g);
    t.layer.cells = CellPartition::discrete(g.arrow_count());
    for (std::size_t p = 0; p < g.arrow_count(); ++p) t.idtoeqv.emplace_back(p);
    return t;
}

std::string product_name(const Typoid& a, const Typoid& b) { return a.name + "_x_" + b.name; }

Product product_typoid(const Typoid& a, const Typoid& b) {
    Product out;
    auto& prov = out.provenance;
    prov.first = a.name;
    prov.second = b.name;
    prov.first_terms = a.term_count();
    prov.second_terms = b.term_count();
    prov.first_paths = a.path_count();
    prov.second_paths = b.path_count();
    prov.first_edges = a.edge_count();
    prov.second_edges = b.edge_count();

    auto& t = out.typoid;
    t.name = product_name(a, b);
    t.base = product_tables(a.base, b.base);
    static_cast<ArrowTables<EdgeId>&>(t.layer) = product_tables<EdgeId>(a.layer, b.layer);
    // the smallest pair in a product class is the pair of representatives
    std::vector<EdgeId> reps;
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        const auto [e1, e2] = prov.unpair_edge(EdgeId{e});
        reps.push_back(prov.pair_edge(a.layer.cells.representative(e1), b.layer.cells.representative(e2)));
    }
    t.layer.cells = CellPartition(std::move(reps));
    for (std::size_t p = 0; p < t.path_count(); ++p) {
        const auto [p1, p2] = prov.unpair_path(PathId{p});
        t.idtoeqv.push_back(prov.pair_edge(a.to_edge(p1), b.to_edge(p2)));
    }
    return out;
}

std::pair<TypoidMorphism, TypoidMorphism> projections(const Typoid& product, const ProductProvenance& prov) {
    if (product.term_count() != prov.first_terms * prov.second_terms || product.path_count() != prov.first_paths * prov.second_paths ||
        product.edge_count() != prov.first_edges * prov.second_edges)
        throw ContractError("projections: provenance does not describe " + product.name);
    TypoidMorphism pr1, pr2;
    pr1.name = "pr1_" + product.name;
    pr2.name = "pr2_" + product.name;
    pr1.source = pr2.source = product.name;
    pr1.target = prov.first;
    pr2.target = prov.second;
    for (std::size_t z = 0; z < product.term_count(); ++z) {
        const auto [x, y] = prov.unpair_term(TermId{z});
        pr1.term_map.push_back(x);
        pr2.term_map.push_back(y);
    }
    for (std::size_t p = 0; p < product.path_count(); ++p) {
        const auto [p1, p2] = prov.unpair_path(PathId{p});
        pr1.path_map.push_back(p1);
        pr2.path_map.push_back(p2);
    }
    for (std::size_t e = 0; e < product.edge_count(); ++e) {
        const auto [e1, e2] = prov.unpair_edge(EdgeId{e});
        pr1.edge_map.push_back(e1);
        pr2.edge_map.push_back(e2);
    }
    return {std::move(pr1), std::move(pr2)};
}

TypoidMorphism pairing(const TypoidMorphism& f, const TypoidMorphism& g, const Typoid& product, const ProductProvenance& prov) {
    if (f.source != g.source || f.target != prov.first || g.target != prov.second)
        throw ContractError("pairing: " + f.name + " and " + g.name + " do not land in the factors of " + product.name);
    TypoidMorphism h;
    h.name = "pair_" + f.name + "_" + g.name;
    h.source = f.source;
    h.target = product.name;
    for (std::size_t x = 0; x < f.term_map.size(); ++x) h.term_map.push_back(prov.pair_term(f.term_map[x], g.term_map[x]));
    if (f.path_map.size() == g.path_map.size())
        for (std::size_t p = 0; p < f.path_map.size(); ++p) h.path_map.push_back(prov.pair_path(f.path_map[p], g.path_map[p]));
    for (std::size_t e = 0; e < f.edge_map.size(); ++e) h.edge_map.push_back(prov.pair_edge(f.edge_map[e], g.edge_map[e]));
    return h;
}

Typoid truncate(const Typoid& t) {
    Typoid out;
    out.name = t.name + "_t";
    out.base = t.base;
    const std::size_t n = t.term_count();
    auto& L = out.layer;
    L.term_count = n;
    auto edge = [&](std::size_t x, std::size_t y) { return EdgeId{x * n + y}; };
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) L.add_arrow(TermId{x}, TermId{y});
    L.allocate();
    for (std::size_t x = 0; x < n; ++x) {
        L.unit[x] = edge(x, x);
        for (std::size_t y = 0; y < n; ++y) {
            L.set_inverse(edge(x, y), edge(y, x));
            for (std::size_t z = 0; z < n; ++z) L.set_compose(edge(x, y), edge(y, z), edge(x, z));
        }
    }
    L.cells = CellPartition::discrete(n * n);
    for (const auto& ends : t.base.ends) {
        const bool in_range = ends.source.index() < n && ends.target.index() < n;
        out.idtoeqv.push_back(in_range ? edge(ends.source.index(), ends.target.index()) : EdgeId{});
    }
    return out;
}

TypoidMorphism morphism_into_truncation(const Typoid& source, const Typoid& truncated, std::span<const TermId> term_map,
                                        std::span<const PathId> path_map) {
    if (term_map.size() != source.term_count()) throw InputError("term map does not cover " + source.name);
    for (TermId y : term_map)
        if (y.index() >= truncated.term_count()) throw InputError("term map leaves " + truncated.name);
    TypoidMorphism m;
    m.name = source.name + "_to_" + truncated.name;
    m.source = source.name;
    m.target = truncated.name;
    m.term_map.assign(term_map.begin(), term_map.end());
    if (!path_map.empty()) {
        m.path_map.assign(path_map.begin(), path_map.end());
    } else if (auto ap = find_ap_functor(source.base, truncated.base, term_map)) {
        m.path_map = std::move(*ap);
    } else {
        const HomIndex<PathId> homs(truncated.base);
        for (std::size_t p = 0; p < source.path_count(); ++p) {
            const auto& e = source.base.ends[p];
            if (homs(term_map[e.source.index()], term_map[e.target.index()]).empty())
                throw InputError("path " + detail::arrow_label(PathId{p}) + " of " + source.name + " has no image: " + truncated.name +
                                 " has no path between the images of its endpoints");
        }
        throw InputError("no strict functor on base paths extends the term map into " + truncated.name);
    }
    for (const auto& e : source.layer.ends)
        m.edge_map.push_back(truncation_edge(truncated, m.term(e.source), m.term(e.target)));
    return m;
}

Typoid univalent_completion(const Typoid& t) {
    Typoid out;
    out.name = t.name + "_c";
    out.layer = t.layer;
    auto [base, to_edge] = quotient_base(t.layer);
    out.base = std::move(base);
    out.idtoeqv = std::move(to_edge);
    return out;
}

Typoid universe_typoid(std::span<const std::size_t> cards, std::string name, std::size_t max_edges) {
    const std::size_t n = cards.size();
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (cards[i] != cards[j]) continue;
            if (cards[i] > 12) throw ResourceLimit("max-edges", "universe: a set of size " + std::to_string(cards[i]) + " has too many bijections");
            total += factorial(cards[i]);
            if (total > max_edges)
                throw ResourceLimit("max-edges", "universe: more than " + std::to_string(max_edges) + " bijections");
        }

    FiniteGroupoid g;
    g.term_count = n;
    std::vector<std::size_t> hom_offset(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            hom_offset[i * n + j] = g.arrow_count();
            if (cards[i] != cards[j]) continue;
            for (std::size_t r = 0; r < factorial(cards[i]); ++r) g.add_arrow(TermId{i}, TermId{j});
        }
    g.allocate();
    auto id = [&](std::size_t i, std::size_t j, std::span<const std::size_t> perm) {
        return PathId{hom_offset[i * n + j] + permutation_rank(perm)};
    };
    for (std::size_t i = 0; i < n; ++i) g.unit[i] = PathId{hom_offset[i * n + i]};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (cards[i] != cards[j]) continue;
            const std::size_t size = cards[i];
            for (std::size_t r = 0; r < factorial(size); ++r) {
                const auto f = permutation_unrank(size, r);
                std::vector<std::size_t> finv(size);
                for (std::size_t a = 0; a < size; ++a) finv[f[a]] = a;
                const PathId fid = id(i, j, f);
                g.set_inverse(fid, id(j, i, finv));
                for (std::size_t k = 0; k < n; ++k) {
                    if (cards[k] != size) continue;
                    for (std::size_t s = 0; s < factorial(size); ++s) {
                        const auto h = permutation_unrank(size, s);
                        std::vector<std::size_t> hf(size);
                        for (std::size_t a = 0; a < size; ++a) hf[a] = h[f[a]];
                        g.set_compose(fid, id(j, k, h), id(i, k, hf));
                    }
                }
            }
        }
    return equality_typoid(g, std::move(name));
}

std::vector<std::size_t> universe_bijection(std::span<const std::size_t> cards, const Typoid& universe, EdgeId e) {
    const auto& ends = universe.layer.ends.at(e.index());
    const HomIndex<EdgeId> homs(universe.layer);
    const auto hom = homs(ends.source, ends.target);
    const auto pos = static_cast<std::size_t>(std::find(hom.begin(), hom.end(), e) - hom.begin());
    return permutation_unrank(cards[ends.source.index()], pos);
}

// --- exponential ----------------------------------------------------------

std::vector<TypoidMorphism> enumerate_typoid_functions(const Typoid& A, const Typoid& B, std::size_t max_terms) {
    std::vector<TypoidMorphism> found;
    const std::size_t na = A.term_count(), nb = B.term_count();
    if (na > 0 && nb == 0) return found;
    const HomIndex<EdgeId> b_homs(B.layer);
    const auto& BL = B.layer;
    const std::size_t ne = A.edge_count();

    // composable pairs (e, d) of A checked once max(e, d, e * d) is assigned
    std::vector<std::vector<std::pair<EdgeId, EdgeId>>> due(ne);
    for (std::size_t e = 0; e < ne; ++e)
        for (std::size_t d = 0; d < ne; ++d) {
            if (!A.layer.composable(EdgeId{e}, EdgeId{d})) continue;
            const EdgeId ed = A.star(EdgeId{e}, EdgeId{d});
            due[std::max({e, d, ed.index()})].emplace_back(EdgeId{e}, EdgeId{d});
        }
    std::vector<std::optional<TermId>> unit_of_edge(ne);
    for (std::size_t x = 0; x < na; ++x) unit_of_edge[A.eqv(TermId{x}).index()] = TermId{x};

    std::vector<TermId> f(na, TermId{0u});
    for (;;) {
        for (auto& ap : enumerate_ap_functors(A.base, B.base, f)) {
            std::vector<EdgeId> phi(ne);
            auto consistent = [&](std::size_t i) {
                const EdgeId e{i};
                if (unit_of_edge[i] && !BL.cells.same(phi[i], B.eqv(f[unit_of_edge[i]->index()]))) return false;
                for (auto [a, b] : due[i])
                    if (!BL.cells.same(phi[A.star(a, b).index()], BL.star(phi[a.index()], phi[b.index()]))) return false;
                for (std::size_t j = 0; j < i; ++j)
                    if (A.layer.cells.same(EdgeId{j}, e) && !BL.cells.same(phi[j], phi[i])) return false;
                return true;
            };
            auto search = [&](auto&& self, std::size_t i) -> void {
                if (i == ne) {
                    if (found.size() >= max_terms)
                        throw ResourceLimit("max-terms", "exponential has more than " + std::to_string(max_terms) + " canonical terms");
                    TypoidMorphism m;
                    m.name = "fn" + std::to_string(found.size());
                    m.source = A.name;
                    m.target = B.name;
                    m.term_map = f;
                    m.path_map = ap;
                    m.edge_map = phi;
                    found.push_back(std::move(m));
                    return;
                }
                const auto& ends = A.layer.ends[i];
                for (EdgeId d : b_homs(f[ends.source.index()], f[ends.target.index()])) {
                    phi[i] = d;
                    if (consistent(i)) self(self, i + 1);
                }
            };
            search(search, 0);
        }
        // next term map, last term varying fastest
        std::size_t k = na;
        while (k > 0 && f[k - 1].index() + 1 == nb) f[--k] = TermId{0u};
        if (k == 0) break;
        f[k - 1] = TermId{f[k - 1].index() + 1};
    }
    return found;
}

std::string exponential_name(const Typoid& source, const Typoid& target) { return target.name + "_pow_" + source.name; }

Exponential exponential_typoid(const Typoid& A, const Typoid& B, const ExponentialLimits& limits) {
    Exponential out;
    out.terms = enumerate_typoid_functions(A, B, limits.max_terms);
    const auto& terms = out.terms;
    const std::size_t na = A.term_count();
    const HomIndex<EdgeId> b_homs(B.layer);
    const auto& BL = B.layer;

    auto& L = out.typoid.layer;
    L.term_count = terms.size();
    std::map<std::vector<std::uint32_t>, EdgeId> index;
    auto key = [](std::size_t i, std::size_t j, std::span<const EdgeId> comps) {
        std::vector<std::uint32_t> k{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
        for (EdgeId c : comps) k.push_back(c.value);
        return k;
    };

    for (std::size_t i = 0; i < terms.size(); ++i)
        for (std::size_t j = 0; j < terms.size(); ++j) {
            const auto& phi = terms[i];
            const auto& theta = terms[j];
            std::vector<EdgeId> comp(na);
            auto natural_upto = [&](std::size_t x) {
                // every source edge between terms already assigned
                for (std::size_t e = 0; e < A.edge_count(); ++e) {
                    const auto& ends = A.layer.ends[e];
                    const std::size_t s = ends.source.index(), t = ends.target.index();
                    if (std::max(s, t) != x) continue;
                    const EdgeId lhs = BL.star(phi.phi(EdgeId{e}), comp[t]);
                    const EdgeId rhs = BL.star(comp[s], theta.phi(EdgeId{e}));
                    if (!BL.cells.same(lhs, rhs)) return false;
                }
                return true;
            };
            auto search = [&](auto&& self, std::size_t x) -> void {
                if (x == na) {
                    if (out.edges.size() >= limits.max_edges)
                        throw ResourceLimit("max-edges", "exponential has more than " + std::to_string(limits.max_edges) + " edges");
                    index.emplace(key(i, j, comp), L.add_arrow(TermId{i}, TermId{j}));
                    out.edges.push_back({i, j, comp});
                    return;
                }
                for (EdgeId d : b_homs(phi.term(TermId{x}), theta.term(TermId{x}))) {
                    comp[x] = d;
                    if (natural_upto(x)) self(self, x + 1);
                }
            };
            search(search, 0);
        }

    auto lookup = [&](std::size_t i, std::size_t j, std::span<const EdgeId> comps) {
        const auto it = index.find(key(i, j, comps));
        if (it == index.end()) throw Error("exponential: pointwise composite is not a natural family; inputs are not typoids");
        return it->second;
    };
    L.allocate();
    std::vector<EdgeId> comps(na);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t x = 0; x < na; ++x) comps[x] = B.eqv(terms[i].term(TermId{x}));
        L.unit[i] = lookup(i, i, comps);
    }
    std::map<std::vector<std::uint32_t>, EdgeId> class_rep;
    std::vector<EdgeId> reps;
    for (std::size_t e = 0; e < out.edges.size(); ++e) {
        const auto& E = out.edges[e];
        for (std::size_t x = 0; x < na; ++x) comps[x] = B.einv(E.components[x]);
        L.inverse[e] = lookup(E.to, E.from, comps);
        for (std::size_t x = 0; x < na; ++x) comps[x] = BL.cells.representative(E.components[x]);
        reps.push_back(class_rep.emplace(key(E.from, E.to, comps), EdgeId{e}).first->second);
        for (std::size_t d = 0; d < out.edges.size(); ++d) {
            const auto& D = out.edges[d];
            if (D.from != E.to) continue;
            for (std::size_t x = 0; x < na; ++x) comps[x] = B.star(E.components[x], D.components[x]);
            L.set_compose(EdgeId{e}, EdgeId{d}, lookup(E.from, D.to, comps));
        }
    }
    L.cells = CellPartition(std::move(reps));

    out.typoid.name = exponential_name(A, B);
    auto [base, to_edge] = quotient_base(L);
    out.typoid.base = std::move(base);
    out.typoid.idtoeqv = std::move(to_edge);
    return out;
}

// --- stock typoids ---------------------------------------------------------

namespace stock {

Typoid unit() { return equality_typoid(discrete_groupoid(1), "unit"); }
Typoid bool_disc() { return equality_typoid(discrete_groupoid(2), "bool_disc"); }
Typoid prop2() { return equality_typoid(codiscrete_groupoid(2), "prop2"); }
Typoid eq_z2() { return equality_typoid(cyclic_groupoid(2), "eq_z2"); }

namespace {

/// One term, refl only, edges {eqv, e} with e * e = eqv.
Typoid one_term_two_edges(std::string name, bool shared_cell) {
    Typoid t;
    t.name = std::move(name);
    t.base = discrete_groupoid(1);
    auto& L = t.layer;
    L.term_count = 1;
    const EdgeId eqv = L.add_arrow(TermId{0u}, TermId{0u});
    const EdgeId e = L.add_arrow(TermId{0u}, TermId{0u});
    L.allocate();
    L.unit[0] = eqv;
    L.set_compose(eqv, eqv, eqv);
    L.set_compose(eqv, e, e);
    L.set_compose(e, eqv, e);
    L.set_compose(e, e, eqv);
    L.set_inverse(eqv, eqv);
    L.set_inverse(e, e);
    L.cells = shared_cell ? CellPartition({eqv, eqv}) : CellPartition::discrete(2);
    t.idtoeqv = {eqv};
    return t;
}

} // namespace

Typoid twoedge() { return one_term_two_edges("twoedge", false); }
Typoid eqv_rich() { return one_term_two_edges("eqv_rich", true); }

std::vector<Typoid> univalent_basics() {
    const std::size_t two[] = {2};
    const std::size_t one_one[] = {1, 1};
    return {unit(), bool_disc(), prop2(), eq_z2(), eqv_rich(), universe_typoid(two, "u2"), universe_typoid(one_one, "u11")};
}

std::vector<Typoid> corpus() {
    auto basics = univalent_basics();
    basics.insert(basics.begin() + 3, twoedge());
    std::vector<Typoid> all = basics;
    for (const auto& t : basics) all.push_back(truncate(t));
    for (const auto& a : basics)
        for (const auto& b : basics) all.push_back(product_typoid(a, b).typoid);
    return all;
}

} // namespace stock

} // namespace typoid
