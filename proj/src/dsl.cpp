#include "typoid/dsl.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "typoid/error.hpp"

namespace typoid::dsl {

std::string Diagnostic::format() const {
    std::ostringstream out;
    out << span.line << ':' << span.column << ": " << (severity == Severity::Error ? "error" : "warning") << '[' << code
        << "]: " << message;
    return out.str();
}

const std::string& Declaration::name() const {
    if (const auto* t = std::get_if<NamedTypoid>(&value)) return t->typoid.name;
    return std::get<TypoidMorphism>(value).name;
}

const NamedTypoid* Document::find_typoid(std::string_view name) const {
    for (const auto& d : declarations)
        if (const auto* t = std::get_if<NamedTypoid>(&d.value); t && t->typoid.name == name) return t;
    return nullptr;
}

const TypoidMorphism* Document::find_morphism(std::string_view name) const {
    for (const auto& d : declarations)
        if (const auto* m = std::get_if<TypoidMorphism>(&d.value); m && m->name == name) return m;
    return nullptr;
}

std::vector<const NamedTypoid*> Document::typoids() const {
    std::vector<const NamedTypoid*> out;
    for (const auto& d : declarations)
        if (const auto* t = std::get_if<NamedTypoid>(&d.value)) out.push_back(t);
    return out;
}

std::vector<const TypoidMorphism*> Document::morphisms() const {
    std::vector<const TypoidMorphism*> out;
    for (const auto& d : declarations)
        if (const auto* m = std::get_if<TypoidMorphism>(&d.value)) out.push_back(m);
    return out;
}

namespace {

// --- lexing ----------------------------------------------------------------

struct Token {
    enum class Kind { Ident, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    Span span;

    bool is(std::string_view punct) const { return kind == Kind::Punct && text == punct; }
    bool is_word(std::string_view word) const { return kind == Kind::Ident && text == word; }
    std::string describe() const {
        if (kind == Kind::End) return "end of input";
        return "'" + text + "'";
    }
};

class Diagnostics {
public:
    void error(Span span, std::string code, std::string message) {
        list_.push_back({Diagnostic::Severity::Error, span, std::move(code), std::move(message)});
    }
    void warning(Span span, std::string code, std::string message) {
        list_.push_back({Diagnostic::Severity::Warning, span, std::move(code), std::move(message)});
    }
    bool has_errors() const {
        return std::any_of(list_.begin(), list_.end(), [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::Error; });
    }
    std::size_t error_count() const {
        return static_cast<std::size_t>(
            std::count_if(list_.begin(), list_.end(), [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::Error; }));
    }
    std::vector<Diagnostic> take() {
        std::stable_sort(list_.begin(), list_.end(), [](const Diagnostic& a, const Diagnostic& b) { return a.span < b.span; });
        return std::move(list_);
    }

private:
    std::vector<Diagnostic> list_;
};

bool ident_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

std::vector<Token> lex(std::string_view text, Diagnostics& diags) {
    static constexpr std::string_view puncts[] = {"|->", "->", "==", "=>", "{", "}", ";", ":", "~", ".", "=", "*"};
    std::vector<Token> tokens;
    std::uint32_t line = 1, column = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        i += n;
        column += static_cast<std::uint32_t>(n);
    };
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n') {
            ++i;
            ++line;
            column = 1;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        const Span at{line, column, 0};
        if (ident_start(c)) {
            std::size_t n = 1;
            while (i + n < text.size() && ident_char(text[i + n])) ++n;
            tokens.push_back({Token::Kind::Ident, std::string(text.substr(i, n)), {line, column, static_cast<std::uint32_t>(n)}});
            advance(n);
            continue;
        }
        bool matched = false;
        for (auto p : puncts) {
            if (text.substr(i, p.size()) == p) {
                tokens.push_back({Token::Kind::Punct, std::string(p), {line, column, static_cast<std::uint32_t>(p.size())}});
                advance(p.size());
                matched = true;
                break;
            }
        }
        if (matched) continue;
        const auto byte = static_cast<unsigned char>(c);
        std::size_t n = 1;
        if (byte >= 0xF0) n = 4;
        else if (byte >= 0xE0) n = 3;
        else if (byte >= 0xC0) n = 2;
        n = std::min(n, text.size() - i);
        diags.error({at.line, at.column, static_cast<std::uint32_t>(n)}, "E001",
                    byte >= 0x80 ? "non-ASCII character" : "unexpected character '" + std::string(1, c) + "'");
        advance(n);
    }
    tokens.push_back({Token::Kind::End, "", {line, column, 0}});
    return tokens;
}

// --- parsing ---------------------------------------------------------------

struct RawStatement {
    std::string keyword;
    Span span;
    std::vector<Token> args;
};

struct RawDeclaration {
    bool is_typoid = true;
    Token name;
    Token source;
    Token target;
    std::vector<RawStatement> statements;
};

/// Statement shapes; "I" stands for an identifier.
const std::map<std::string, std::vector<std::string>, std::less<>>& typoid_patterns() {
    static const std::map<std::string, std::vector<std::string>, std::less<>> p{
        {"path", {"I", ":", "I", "->", "I"}}, {"comp", {"I", ".", "I", "=", "I"}}, {"pinv", {"I", "=", "I"}},
        {"edge", {"I", ":", "I", "~", "I"}},  {"eqv", {"I", "=", "I"}},           {"star", {"I", "*", "I", "=", "I"}},
        {"einv", {"I", "=", "I"}},            {"cell", {"I", "==", "I"}},         {"idtoeqv", {"I", "=>", "I"}},
        {"strictunits", {}},
    };
    return p;
}

const std::map<std::string, std::vector<std::string>, std::less<>>& morphism_patterns() {
    static const std::map<std::string, std::vector<std::string>, std::less<>> p{
        {"term", {"I", "|->", "I"}}, {"path", {"I", "|->", "I"}}, {"edge", {"I", "|->", "I"}}};
    return p;
}

class Parser {
public:
    Parser(std::vector<Token> tokens, Diagnostics& diags) : tokens_(std::move(tokens)), diags_(diags) {}

    std::vector<RawDeclaration> document() {
        std::vector<RawDeclaration> out;
        while (!at_end()) {
            if (peek().is_word("typoid") || peek().is_word("morphism")) {
                if (auto d = declaration()) out.push_back(std::move(*d));
            } else {
                diags_.error(peek().span, "E002", "expected 'typoid' or 'morphism', found " + peek().describe());
                skip_to_declaration();
            }
        }
        return out;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    bool at_end() const { return peek().kind == Token::Kind::End; }
    Token next() {
        Token t = tokens_[pos_];
        if (t.kind != Token::Kind::End) ++pos_;
        return t;
    }

    void skip_to_declaration() {
        next();
        while (!at_end() && !peek().is_word("typoid") && !peek().is_word("morphism")) next();
    }
    /// Skips past the next ';', stopping before a '}'.
    void skip_statement() {
        while (!at_end() && !peek().is("}")) {
            if (next().is(";")) return;
        }
    }

    bool expect_punct(std::string_view p) {
        if (peek().is(p)) {
            next();
            return true;
        }
        diags_.error(peek().span, "E002", "expected '" + std::string(p) + "', found " + peek().describe());
        return false;
    }
    std::optional<Token> expect_ident(std::string_view what) {
        if (peek().kind == Token::Kind::Ident) return next();
        diags_.error(peek().span, "E002", "expected " + std::string(what) + ", found " + peek().describe());
        return std::nullopt;
    }

    std::optional<RawDeclaration> declaration() {
        RawDeclaration d;
        d.is_typoid = next().text == "typoid";
        auto name = expect_ident(d.is_typoid ? "a typoid name" : "a morphism name");
        bool ok = name.has_value();
        if (ok) d.name = *name;
        if (ok && !d.is_typoid) {
            std::optional<Token> src, dst;
            ok = expect_punct(":") && (src = expect_ident("a source typoid")) && expect_punct("->") && (dst = expect_ident("a target typoid"));
            if (ok) {
                d.source = *src;
                d.target = *dst;
            }
        }
        ok = ok && expect_punct("{");
        if (!ok) {
            while (!at_end() && !peek().is_word("typoid") && !peek().is_word("morphism")) next();
            return std::nullopt;
        }
        const auto& patterns = d.is_typoid ? typoid_patterns() : morphism_patterns();
        while (!at_end() && !peek().is("}")) {
            if (auto s = statement(d.is_typoid, patterns)) d.statements.push_back(std::move(*s));
        }
        if (!expect_punct("}")) return std::nullopt;
        return d;
    }

    std::optional<RawStatement> statement(bool in_typoid, const std::map<std::string, std::vector<std::string>, std::less<>>& patterns) {
        const Token head = peek();
        if (head.kind != Token::Kind::Ident) {
            diags_.error(head.span, "E002", "expected a statement, found " + head.describe());
            skip_statement();
            return std::nullopt;
        }
        next();
        RawStatement s{head.text, head.span, {}};
        if (in_typoid && head.text == "terms") {
            while (peek().kind == Token::Kind::Ident) s.args.push_back(next());
            if (!expect_punct(";")) {
                skip_statement();
                return std::nullopt;
            }
            return s;
        }
        const auto it = patterns.find(head.text);
        if (it == patterns.end()) {
            diags_.error(head.span, "E002", "unknown statement '" + head.text + "'");
            skip_statement();
            return std::nullopt;
        }
        for (const auto& piece : it->second) {
            if (piece == "I") {
                auto id = expect_ident("a name");
                if (!id) {
                    skip_statement();
                    return std::nullopt;
                }
                s.args.push_back(*id);
            } else if (!expect_punct(piece)) {
                skip_statement();
                return std::nullopt;
            }
        }
        if (!expect_punct(";")) {
            skip_statement();
            return std::nullopt;
        }
        return s;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    Diagnostics& diags_;
};

// --- elaboration -----------------------------------------------------------

using NameIndex = std::unordered_map<std::string, std::uint32_t>;

NameIndex index_names(const std::vector<std::string>& names) {
    NameIndex out;
    for (std::size_t i = 0; i < names.size(); ++i) out.emplace(names[i], static_cast<std::uint32_t>(i));
    return out;
}

/// A table slot filled by an explicit statement or an implicit rule.
template <class Id>
struct Slots {
    std::vector<Id>& table;
    std::vector<std::optional<Span>> explicit_at;

    explicit Slots(std::vector<Id>& t) : table(t), explicit_at(t.size()) {}

    void set_explicit(std::size_t slot, Id value, Span span, const std::string& what, Diagnostics& diags) {
        if (explicit_at[slot]) {
            if (table[slot] != value)
                diags.error(span, "E006", what + " conflicts with the entry at line " + std::to_string(explicit_at[slot]->line));
            else
                diags.warning(span, "W001", what + " repeats the entry at line " + std::to_string(explicit_at[slot]->line));
            return;
        }
        table[slot] = value;
        explicit_at[slot] = span;
    }
    void fill(std::size_t slot, Id value) {
        if (!table[slot].valid()) table[slot] = value;
    }
};

class TypoidElaborator {
public:
    TypoidElaborator(const RawDeclaration& raw, Diagnostics& diags) : raw_(raw), diags_(diags) {}

    std::optional<NamedTypoid> run() {
        const std::size_t errors_before = diags_.error_count();
        out_.typoid.name = raw_.name.text;
        if (!terms()) return std::nullopt;
        paths();
        edges();
        if (diags_.error_count() != errors_before) return std::nullopt;
        tables();
        if (diags_.error_count() != errors_before) return std::nullopt;
        return std::move(out_);
    }

private:
    auto statements(std::string_view keyword) const {
        std::vector<const RawStatement*> out;
        for (const auto& s : raw_.statements)
            if (s.keyword == keyword) out.push_back(&s);
        return out;
    }

    std::optional<TermId> term(const Token& t) {
        const auto it = term_index_.find(t.text);
        if (it == term_index_.end()) {
            diags_.error(t.span, "E004", "unknown term '" + t.text + "' in typoid " + raw_.name.text);
            return std::nullopt;
        }
        return TermId{it->second};
    }
    std::optional<PathId> path(const Token& t) {
        const auto it = path_index_.find(t.text);
        if (it == path_index_.end()) {
            diags_.error(t.span, "E004", "unknown path '" + t.text + "' in typoid " + raw_.name.text);
            return std::nullopt;
        }
        return PathId{it->second};
    }
    std::optional<EdgeId> edge(const Token& t) {
        const auto it = edge_index_.find(t.text);
        if (it == edge_index_.end()) {
            diags_.error(t.span, "E004", "unknown edge '" + t.text + "' in typoid " + raw_.name.text);
            return std::nullopt;
        }
        return EdgeId{it->second};
    }

    bool declare(NameIndex& index, std::vector<std::string>& names, const std::string& name, Span span, std::string_view kind) {
        if (!index.emplace(name, static_cast<std::uint32_t>(names.size())).second) {
            diags_.error(span, "E003", std::string(kind) + " '" + name + "' is declared twice in typoid " + raw_.name.text);
            return false;
        }
        names.push_back(name);
        return true;
    }

    bool terms() {
        const auto stmts = statements("terms");
        if (stmts.empty()) {
            diags_.error(raw_.name.span, "E008", "typoid " + raw_.name.text + " has no terms section");
            return false;
        }
        for (const auto* s : stmts)
            for (const auto& t : s->args) declare(term_index_, out_.terms, t.text, t.span, "term");
        out_.typoid.base.term_count = out_.terms.size();
        out_.typoid.layer.term_count = out_.terms.size();
        return true;
    }

    void paths() {
        auto& g = out_.typoid.base;
        for (std::size_t x = 0; x < out_.terms.size(); ++x) {
            declare(path_index_, out_.paths, "refl_" + out_.terms[x], raw_.name.span, "path");
            g.add_arrow(TermId{x}, TermId{x});
        }
        for (const auto* s : statements("path")) {
            const auto a = term(s->args[1]);
            const auto b = term(s->args[2]);
            if (!a || !b) continue;
            if (declare(path_index_, out_.paths, s->args[0].text, s->args[0].span, "path")) g.add_arrow(*a, *b);
        }
        g.allocate();
        for (std::size_t x = 0; x < out_.terms.size(); ++x) g.unit[x] = PathId{x};
    }

    void edges() {
        auto& L = out_.typoid.layer;
        std::vector<const RawStatement*> override_of(out_.terms.size(), nullptr);
        for (const auto* s : statements("eqv")) {
            const auto x = term(s->args[0]);
            if (!x) continue;
            auto& slot = override_of[x->index()];
            if (slot && slot->args[1].text != s->args[1].text)
                diags_.error(s->args[1].span, "E006", "eqv of " + s->args[0].text + " conflicts with the entry at line " +
                                                          std::to_string(slot->span.line));
            if (!slot) slot = s;
        }
        for (std::size_t x = 0; x < out_.terms.size(); ++x) {
            if (override_of[x]) continue;
            implicit_eqv_.push_back(TermId{x});
            declare(edge_index_, out_.edges, "eqv_" + out_.terms[x], raw_.name.span, "edge");
            L.add_arrow(TermId{x}, TermId{x});
        }
        for (const auto* s : statements("edge")) {
            const auto a = term(s->args[1]);
            const auto b = term(s->args[2]);
            if (!a || !b) continue;
            if (declare(edge_index_, out_.edges, s->args[0].text, s->args[0].span, "edge")) L.add_arrow(*a, *b);
        }
        L.allocate();
        for (std::size_t x = 0, implicit = 0; x < out_.terms.size(); ++x) {
            if (!override_of[x]) {
                L.unit[x] = EdgeId{implicit++};
                continue;
            }
            const auto& tok = override_of[x]->args[1];
            const auto e = edge(tok);
            if (!e) continue;
            if (L.source(*e) != TermId{x} || L.target(*e) != TermId{x}) {
                diags_.error(tok.span, "E005", "eqv of " + out_.terms[x] + " must be an edge " + out_.terms[x] + " ~ " + out_.terms[x]);
                continue;
            }
            L.unit[x] = *e;
        }
    }

    std::string pname(PathId p) const { return out_.paths[p.index()]; }
    std::string ename(EdgeId e) const { return out_.edges[e.index()]; }
    std::string tname(TermId x) const { return out_.terms[x.index()]; }

    void tables() {
        auto& g = out_.typoid.base;
        auto& L = out_.typoid.layer;
        Slots<PathId> comp(g.composite), pinv(g.inverse);
        Slots<EdgeId> star(L.composite), einv(L.inverse);
        out_.typoid.idtoeqv.assign(g.arrow_count(), EdgeId{});
        Slots<EdgeId> to_edge(out_.typoid.idtoeqv);

        auto check_compose = [&](const auto& tables, auto a, auto b, auto c, const RawStatement& s, auto name) {
            if (tables.target(a) != tables.source(b)) {
                diags_.error(s.args[1].span, "E005", "source of " + name(b) + " is " + tname(tables.source(b)) + " but target of " + name(a) +
                                                         " is " + tname(tables.target(a)));
                return false;
            }
            if (tables.source(c) != tables.source(a) || tables.target(c) != tables.target(b)) {
                diags_.error(s.args[2].span, "E005", name(c) + " does not run from " + tname(tables.source(a)) + " to " + tname(tables.target(b)));
                return false;
            }
            return true;
        };
        auto check_inverse = [&](const auto& tables, auto a, auto b, const RawStatement& s, auto name) {
            if (tables.source(b) != tables.target(a) || tables.target(b) != tables.source(a)) {
                diags_.error(s.args[1].span, "E005", name(b) + " does not run from " + tname(tables.target(a)) + " to " + tname(tables.source(a)));
                return false;
            }
            return true;
        };
        auto path_name = [&](PathId p) { return pname(p); };
        auto edge_name = [&](EdgeId e) { return ename(e); };

        for (const auto* s : statements("comp")) {
            const auto p = path(s->args[0]), q = path(s->args[1]), r = path(s->args[2]);
            if (!p || !q || !r || !check_compose(g, *p, *q, *r, *s, path_name)) continue;
            comp.set_explicit(p->index() * g.arrow_count() + q->index(), *r, s->span, "comp " + pname(*p) + " . " + pname(*q), diags_);
        }
        for (const auto* s : statements("pinv")) {
            const auto p = path(s->args[0]), q = path(s->args[1]);
            if (!p || !q || !check_inverse(g, *p, *q, *s, path_name)) continue;
            pinv.set_explicit(p->index(), *q, s->span, "pinv " + pname(*p), diags_);
        }
        for (const auto* s : statements("star")) {
            const auto e = edge(s->args[0]), d = edge(s->args[1]), c = edge(s->args[2]);
            if (!e || !d || !c || !check_compose(L, *e, *d, *c, *s, edge_name)) continue;
            star.set_explicit(e->index() * L.arrow_count() + d->index(), *c, s->span, "star " + ename(*e) + " * " + ename(*d), diags_);
        }
        for (const auto* s : statements("einv")) {
            const auto e = edge(s->args[0]), d = edge(s->args[1]);
            if (!e || !d || !check_inverse(L, *e, *d, *s, edge_name)) continue;
            einv.set_explicit(e->index(), *d, s->span, "einv " + ename(*e), diags_);
        }
        std::vector<std::pair<EdgeId, EdgeId>> cell_pairs;
        for (const auto* s : statements("cell")) {
            const auto e = edge(s->args[0]), d = edge(s->args[1]);
            if (!e || !d) continue;
            if (L.ends[e->index()] != L.ends[d->index()]) {
                diags_.error(s->args[1].span, "E005", "cell " + ename(*e) + " == " + ename(*d) + " joins edges of different hom-sets");
                continue;
            }
            cell_pairs.emplace_back(*e, *d);
        }
        for (const auto* s : statements("idtoeqv")) {
            const auto p = path(s->args[0]);
            const auto e = edge(s->args[1]);
            if (!p || !e) continue;
            if (g.ends[p->index()] != L.ends[e->index()]) {
                diags_.error(s->args[1].span, "E005", "idtoeqv of " + pname(*p) + " must run from " + tname(g.source(*p)) + " to " +
                                                          tname(g.target(*p)));
                continue;
            }
            to_edge.set_explicit(p->index(), *e, s->span, "idtoeqv " + pname(*p), diags_);
        }
        const bool strict_units = !statements("strictunits").empty();

        // implicit entries fill the gaps left by explicit ones
        const std::size_t np = g.arrow_count(), ne = L.arrow_count();
        for (std::size_t i = 0; i < np; ++i) {
            const PathId p{i};
            comp.fill(g.unit_of(g.source(p)).index() * np + i, p);
            comp.fill(i * np + g.unit_of(g.target(p)).index(), p);
        }
        for (std::size_t x = 0; x < out_.terms.size(); ++x) {
            const PathId r = g.unit[x];
            pinv.fill(r.index(), r);
            to_edge.fill(r.index(), L.unit[x]);
        }
        for (TermId x : implicit_eqv_) {
            const EdgeId u = L.unit_of(x);
            star.fill(u.index() * ne + u.index(), u);
            einv.fill(u.index(), u);
        }
        if (strict_units) {
            for (std::size_t i = 0; i < ne; ++i) {
                const EdgeId e{i};
                star.fill(L.unit_of(L.source(e)).index() * ne + i, e);
                star.fill(i * ne + L.unit_of(L.target(e)).index(), e);
            }
            for (EdgeId u : L.unit) einv.fill(u.index(), u);
        }

        const Span at = raw_.name.span;
        const std::string where = " in typoid " + raw_.name.text;
        for (std::size_t i = 0; i < np; ++i) {
            for (std::size_t j = 0; j < np; ++j)
                if (g.composable(PathId{i}, PathId{j}) && !g.composite[i * np + j].valid())
                    diags_.error(at, "E007", "missing entry comp " + out_.paths[i] + " . " + out_.paths[j] + where);
            if (!g.inverse[i].valid()) diags_.error(at, "E007", "missing entry pinv " + out_.paths[i] + where);
        }
        for (std::size_t i = 0; i < ne; ++i) {
            for (std::size_t j = 0; j < ne; ++j)
                if (L.composable(EdgeId{i}, EdgeId{j}) && !L.composite[i * ne + j].valid())
                    diags_.error(at, "E007", "missing entry star " + out_.edges[i] + " * " + out_.edges[j] + where);
            if (!L.inverse[i].valid()) diags_.error(at, "E007", "missing entry einv " + out_.edges[i] + where);
        }
        for (std::size_t i = 0; i < np; ++i)
            if (!out_.typoid.idtoeqv[i].valid()) diags_.error(at, "E007", "missing entry idtoeqv " + out_.paths[i] + where);

        L.cells = CellPartition::from_pairs(ne, cell_pairs);
    }

    const RawDeclaration& raw_;
    Diagnostics& diags_;
    NamedTypoid out_;
    NameIndex term_index_, path_index_, edge_index_;
    std::vector<TermId> implicit_eqv_;
};

std::optional<TypoidMorphism> elaborate_morphism(const RawDeclaration& raw, const Document& doc, const std::set<std::string>& failed,
                                                 Diagnostics& diags) {
    const auto* src = doc.find_typoid(raw.source.text);
    const auto* dst = doc.find_typoid(raw.target.text);
    auto resolved = [&](const NamedTypoid* found, const Token& tok) {
        if (!found && !failed.count(tok.text)) diags.error(tok.span, "E004", "unknown typoid '" + tok.text + "'");
        return found != nullptr;
    };
    const bool src_ok = resolved(src, raw.source);
    const bool dst_ok = resolved(dst, raw.target);
    if (!src_ok || !dst_ok) return std::nullopt;
    const std::size_t errors_before = diags.error_count();
    const auto& S = src->typoid;
    const auto& D = dst->typoid;
    const auto s_terms = index_names(src->terms), d_terms = index_names(dst->terms);
    const auto s_paths = index_names(src->paths), d_paths = index_names(dst->paths);
    const auto s_edges = index_names(src->edges), d_edges = index_names(dst->edges);

    TypoidMorphism m;
    m.name = raw.name.text;
    m.source = S.name;
    m.target = D.name;
    m.term_map.assign(S.term_count(), TermId{});
    std::vector<PathId> path_map(S.path_count());
    m.edge_map.assign(S.edge_count(), EdgeId{});
    Slots<TermId> terms(m.term_map);
    Slots<PathId> paths(path_map);
    Slots<EdgeId> edges(m.edge_map);

    auto lookup = [&](const NameIndex& index, const Token& t, std::string_view kind, const std::string& owner) -> std::optional<std::uint32_t> {
        const auto it = index.find(t.text);
        if (it == index.end()) {
            diags.error(t.span, "E004", "unknown " + std::string(kind) + " '" + t.text + "' in typoid " + owner);
            return std::nullopt;
        }
        return it->second;
    };

    for (const auto& s : raw.statements) {
        if (s.keyword != "term") continue;
        const auto a = lookup(s_terms, s.args[0], "term", S.name);
        const auto b = lookup(d_terms, s.args[1], "term", D.name);
        if (a && b) terms.set_explicit(*a, TermId{*b}, s.span, "term " + s.args[0].text, diags);
    }
    for (std::size_t x = 0; x < S.term_count(); ++x)
        if (!m.term_map[x].valid())
            diags.error(raw.name.span, "E009", "term " + src->terms[x] + " of " + S.name + " is not mapped by " + m.name);
    if (diags.error_count() != errors_before) return std::nullopt;

    bool any_path_entry = false;
    for (const auto& s : raw.statements) {
        if (s.keyword == "path") {
            any_path_entry = true;
            const auto p = lookup(s_paths, s.args[0], "path", S.name);
            const auto q = lookup(d_paths, s.args[1], "path", D.name);
            if (!p || !q) continue;
            const auto& pe = S.base.ends[*p];
            if (D.base.ends[*q] != Endpoints{m.term(pe.source), m.term(pe.target)}) {
                diags.error(s.args[1].span, "E005", "path " + s.args[1].text + " does not connect the images of the endpoints of " + s.args[0].text);
                continue;
            }
            paths.set_explicit(*p, PathId{*q}, s.span, "path " + s.args[0].text, diags);
        } else if (s.keyword == "edge") {
            const auto e = lookup(s_edges, s.args[0], "edge", S.name);
            const auto d = lookup(d_edges, s.args[1], "edge", D.name);
            if (!e || !d) continue;
            const auto& ee = S.layer.ends[*e];
            if (D.layer.ends[*d] != Endpoints{m.term(ee.source), m.term(ee.target)}) {
                diags.error(s.args[1].span, "E005", "edge " + s.args[1].text + " does not connect the images of the endpoints of " + s.args[0].text);
                continue;
            }
            edges.set_explicit(*e, EdgeId{*d}, s.span, "edge " + s.args[0].text, diags);
        }
    }
    for (std::size_t x = 0; x < S.term_count(); ++x) {
        paths.fill(S.refl(TermId{x}).index(), D.refl(m.term_map[x]));
        edges.fill(S.eqv(TermId{x}).index(), D.eqv(m.term_map[x]));
    }
    const bool all_paths = std::all_of(path_map.begin(), path_map.end(), [](PathId p) { return p.valid(); });
    if (any_path_entry || all_paths) {
        for (std::size_t p = 0; p < S.path_count(); ++p)
            if (!path_map[p].valid())
                diags.error(raw.name.span, "E009", "path " + src->paths[p] + " of " + S.name + " is not mapped by " + m.name);
        m.path_map = std::move(path_map);
    }
    for (std::size_t e = 0; e < S.edge_count(); ++e)
        if (!m.edge_map[e].valid()) diags.error(raw.name.span, "E009", "edge " + src->edges[e] + " of " + S.name + " is not mapped by " + m.name);
    if (diags.error_count() != errors_before) return std::nullopt;
    return m;
}

} // namespace

ParseResult parse(std::string_view text) {
    Diagnostics diags;
    auto tokens = lex(text, diags);
    Parser parser(std::move(tokens), diags);
    const auto raw = parser.document();

    Document doc;
    std::set<std::string> seen, failed;
    for (const auto& d : raw) {
        if (!seen.insert(d.name.text).second) {
            diags.error(d.name.span, "E003", "declaration '" + d.name.text + "' is declared twice");
            continue;
        }
        if (!d.is_typoid) continue;
        if (auto t = TypoidElaborator(d, diags).run())
            doc.declarations.push_back({std::move(*t), d.name.span});
        else
            failed.insert(d.name.text);
    }
    // morphisms may refer to typoids declared anywhere in the file; keep source order
    Document ordered;
    std::set<std::string> placed;
    for (const auto& d : raw) {
        if (placed.count(d.name.text)) continue;
        if (d.is_typoid) {
            if (const auto* t = doc.find_typoid(d.name.text)) {
                ordered.declarations.push_back({*t, d.name.span});
                placed.insert(d.name.text);
            }
        } else if (auto m = elaborate_morphism(d, doc, failed, diags)) {
            ordered.declarations.push_back({std::move(*m), d.name.span});
            placed.insert(d.name.text);
        }
    }

    ParseResult result;
    if (!diags.has_errors()) result.document = std::move(ordered);
    result.diagnostics = diags.take();
    return result;
}

// --- serialization -----------------------------------------------------------

namespace {

bool strict_units_hold(const Typoid& t) {
    const auto& L = t.layer;
    for (std::size_t i = 0; i < L.arrow_count(); ++i) {
        const EdgeId e{i};
        if (L.star(L.unit_of(L.source(e)), e) != e || L.star(e, L.unit_of(L.target(e))) != e) return false;
    }
    for (EdgeId u : L.unit)
        if (L.einv(u) != u) return false;
    return true;
}

void write_typoid(std::ostream& out, const NamedTypoid& nt) {
    const auto& t = nt.typoid;
    const auto& g = t.base;
    const auto& L = t.layer;
    const std::size_t n = t.term_count();
    auto path_is_unit = [&](PathId p) { return g.unit_of(g.source(p)) == p; };
    auto edge_is_unit = [&](EdgeId e) { return L.unit_of(L.source(e)) == e; };
    auto implicit_eqv = [&](EdgeId e) { return edge_is_unit(e) && nt.edges[e.index()] == "eqv_" + nt.terms[L.source(e).index()]; };
    const bool strict = strict_units_hold(t);
    auto P = [&](PathId p) -> const std::string& { return nt.paths[p.index()]; };
    auto E = [&](EdgeId e) -> const std::string& { return nt.edges[e.index()]; };
    auto T = [&](TermId x) -> const std::string& { return nt.terms[x.index()]; };

    out << "typoid " << t.name << " {\n";
    out << "  terms";
    for (const auto& name : nt.terms) out << ' ' << name;
    out << " ;\n";
    for (std::size_t i = 0; i < g.arrow_count(); ++i) {
        const PathId p{i};
        if (!path_is_unit(p)) out << "  path " << P(p) << " : " << T(g.source(p)) << " -> " << T(g.target(p)) << " ;\n";
    }
    for (std::size_t i = 0; i < g.arrow_count(); ++i)
        for (std::size_t j = 0; j < g.arrow_count(); ++j) {
            const PathId p{i}, q{j};
            if (!g.composable(p, q)) continue;
            const PathId r = g.compose(p, q);
            if (!r.valid()) continue;
            const bool implied = (path_is_unit(p) && r == q) || (path_is_unit(q) && r == p);
            if (!implied) out << "  comp " << P(p) << " . " << P(q) << " = " << P(r) << " ;\n";
        }
    for (std::size_t i = 0; i < g.arrow_count(); ++i) {
        const PathId p{i}, q = g.invert(p);
        if (q.valid() && !(path_is_unit(p) && q == p)) out << "  pinv " << P(p) << " = " << P(q) << " ;\n";
    }
    for (std::size_t i = 0; i < L.arrow_count(); ++i) {
        const EdgeId e{i};
        if (!implicit_eqv(e)) out << "  edge " << E(e) << " : " << T(L.source(e)) << " ~ " << T(L.target(e)) << " ;\n";
    }
    for (std::size_t x = 0; x < n; ++x) {
        const EdgeId u = L.unit_of(TermId{x});
        if (u.valid() && !implicit_eqv(u)) out << "  eqv " << nt.terms[x] << " = " << E(u) << " ;\n";
    }
    if (strict) out << "  strictunits ;\n";
    for (std::size_t i = 0; i < L.arrow_count(); ++i)
        for (std::size_t j = 0; j < L.arrow_count(); ++j) {
            const EdgeId e{i}, d{j};
            if (!L.composable(e, d)) continue;
            const EdgeId c = L.star(e, d);
            if (!c.valid()) continue;
            bool implied = implicit_eqv(e) && e == d && c == e;
            if (strict) implied = implied || (edge_is_unit(e) && c == d) || (edge_is_unit(d) && c == e);
            if (!implied) out << "  star " << E(e) << " * " << E(d) << " = " << E(c) << " ;\n";
        }
    for (std::size_t i = 0; i < L.arrow_count(); ++i) {
        const EdgeId e{i}, d = L.einv(e);
        const bool implied = d == e && (implicit_eqv(e) || (strict && edge_is_unit(e)));
        if (d.valid() && !implied) out << "  einv " << E(e) << " = " << E(d) << " ;\n";
    }
    for (std::size_t i = 0; i < L.arrow_count(); ++i) {
        const EdgeId e{i}, rep = L.cells.representative(e);
        if (rep.valid() && rep != e) out << "  cell " << E(rep) << " == " << E(e) << " ;\n";
    }
    for (std::size_t i = 0; i < g.arrow_count(); ++i) {
        const PathId p{i};
        const EdgeId e = t.to_edge(p);
        const bool implied = path_is_unit(p) && e == L.unit_of(g.source(p));
        if (e.valid() && !implied) out << "  idtoeqv " << P(p) << " => " << E(e) << " ;\n";
    }
    out << "}\n";
}

void write_morphism(std::ostream& out, const TypoidMorphism& m, const Document& doc) {
    const auto* src = doc.find_typoid(m.source);
    const auto* dst = doc.find_typoid(m.target);
    if (!src || !dst) throw ContractError("morphism " + m.name + " refers to a typoid outside the document");
    const auto& S = src->typoid;
    const auto& D = dst->typoid;
    out << "morphism " << m.name << " : " << m.source << " -> " << m.target << " {\n";
    for (std::size_t x = 0; x < m.term_map.size(); ++x) out << "  term " << src->terms[x] << " |-> " << dst->terms[m.term_map[x].index()] << " ;\n";
    for (std::size_t i = 0; i < m.path_map.size(); ++i) {
        const PathId p{i}, q = m.path_map[i];
        const bool implied = S.base.unit_of(S.base.source(p)) == p && q == D.refl(m.term(S.base.source(p)));
        if (q.valid() && !implied) out << "  path " << src->paths[i] << " |-> " << dst->paths[q.index()] << " ;\n";
    }
    for (std::size_t i = 0; i < m.edge_map.size(); ++i) {
        const EdgeId e{i}, d = m.edge_map[i];
        const bool implied = S.layer.unit_of(S.layer.source(e)) == e && d == D.eqv(m.term(S.layer.source(e)));
        if (d.valid() && !implied) out << "  edge " << src->edges[i] << " |-> " << dst->edges[d.index()] << " ;\n";
    }
    out << "}\n";
}

} // namespace

std::string serialize(const Document& document) {
    std::ostringstream out;
    bool first = true;
    for (const auto& d : document.declarations) {
        if (!first) out << '\n';
        first = false;
        if (const auto* t = std::get_if<NamedTypoid>(&d.value))
            write_typoid(out, *t);
        else
            write_morphism(out, std::get<TypoidMorphism>(d.value), document);
    }
    return out.str();
}

// --- structural equality ---------------------------------------------------

namespace {

/// Translation of a's ids into b's ids through names; empty when the name
/// sets differ or a name repeats.
std::optional<std::vector<std::uint32_t>> translate(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.size() != b.size()) return std::nullopt;
    const auto index = index_names(b);
    if (index.size() != b.size()) return std::nullopt;
    std::vector<std::uint32_t> out;
    for (const auto& name : a) {
        const auto it = index.find(name);
        if (it == index.end()) return std::nullopt;
        out.push_back(it->second);
    }
    if (std::set<std::uint32_t>(out.begin(), out.end()).size() != out.size()) return std::nullopt;
    return out;
}

template <class Id>
Id through(const std::vector<std::uint32_t>& map, Id id) {
    return id.valid() && id.index() < map.size() ? Id{map[id.index()]} : Id{};
}

template <class Id>
bool tables_match(const ArrowTables<Id>& a, const ArrowTables<Id>& b, const std::vector<std::uint32_t>& terms,
                  const std::vector<std::uint32_t>& arrows) {
    if (a.term_count != b.term_count || a.arrow_count() != b.arrow_count()) return false;
    for (std::size_t i = 0; i < a.arrow_count(); ++i) {
        const Id x{i}, bx = through(arrows, x);
        if (through(terms, a.source(x)) != b.source(bx) || through(terms, a.target(x)) != b.target(bx)) return false;
        if (through(arrows, a.invert(x)) != b.invert(bx)) return false;
        for (std::size_t j = 0; j < a.arrow_count(); ++j) {
            const Id y{j};
            if (through(arrows, a.compose(x, y)) != b.compose(bx, through(arrows, y))) return false;
        }
    }
    for (std::size_t x = 0; x < a.term_count; ++x)
        if (through(arrows, a.unit_of(TermId{x})) != b.unit_of(through(terms, TermId{x}))) return false;
    return true;
}

} // namespace

bool structurally_equal(const NamedTypoid& a, const NamedTypoid& b) {
    if (a.typoid.name != b.typoid.name) return false;
    const auto terms = translate(a.terms, b.terms);
    const auto paths = translate(a.paths, b.paths);
    const auto edges = translate(a.edges, b.edges);
    if (!terms || !paths || !edges) return false;
    const auto& A = a.typoid;
    const auto& B = b.typoid;
    if (!tables_match(A.base, B.base, *terms, *paths) || !tables_match<EdgeId>(A.layer, B.layer, *terms, *edges)) return false;
    if (A.idtoeqv.size() != B.idtoeqv.size()) return false;
    for (std::size_t p = 0; p < A.path_count(); ++p)
        if (through(*edges, A.to_edge(PathId{p})) != B.to_edge(through(*paths, PathId{p}))) return false;
    const auto& ca = A.layer.cells;
    const auto& cb = B.layer.cells;
    if (ca.size() != cb.size()) return false;
    for (std::size_t e = 0; e < A.edge_count(); ++e) {
        const EdgeId ae{e}, be = through(*edges, ae);
        if (!cb.same(through(*edges, ca.representative(ae)), be)) return false;
        if (ca.members(ae).size() != cb.members(be).size()) return false;
    }
    return true;
}

bool structurally_equal(const Document& a, const Document& b) {
    if (a.declarations.size() != b.declarations.size()) return false;
    for (std::size_t i = 0; i < a.declarations.size(); ++i) {
        const auto& da = a.declarations[i];
        const auto& db = b.declarations[i];
        if (da.is_typoid() != db.is_typoid() || da.name() != db.name()) return false;
        if (da.is_typoid()) {
            if (!structurally_equal(std::get<NamedTypoid>(da.value), std::get<NamedTypoid>(db.value))) return false;
            continue;
        }
        const auto& ma = std::get<TypoidMorphism>(da.value);
        const auto& mb = std::get<TypoidMorphism>(db.value);
        if (ma.source != mb.source || ma.target != mb.target) return false;
        const auto *sa = a.find_typoid(ma.source), *ta = a.find_typoid(ma.target);
        const auto *sb = b.find_typoid(mb.source), *tb = b.find_typoid(mb.target);
        if (!sa || !ta || !sb || !tb) return false;
        auto named = [](const std::vector<std::string>& names, auto id) { return id.valid() && id.index() < names.size() ? names[id.index()] : std::string(); };
        auto same_map = [&](const auto& map_a, const auto& map_b, const auto& src_a, const auto& src_b, const auto& dst_a, const auto& dst_b) {
            if (map_a.size() != map_b.size()) return false;
            const auto index = index_names(src_b);
            for (std::size_t k = 0; k < map_a.size(); ++k) {
                const auto it = index.find(src_a[k]);
                if (it == index.end() || named(dst_a, map_a[k]) != named(dst_b, map_b[it->second])) return false;
            }
            return true;
        };
        if (!same_map(ma.term_map, mb.term_map, sa->terms, sb->terms, ta->terms, tb->terms)) return false;
        if (!same_map(ma.path_map, mb.path_map, sa->paths, sb->paths, ta->paths, tb->paths)) return false;
        if (!same_map(ma.edge_map, mb.edge_map, sa->edges, sb->edges, ta->edges, tb->edges)) return false;
    }
    return true;
}

// --- naming ----------------------------------------------------------------

namespace {

bool unique(const std::vector<std::string>& names) { return std::set<std::string>(names.begin(), names.end()).size() == names.size(); }

/// Unit arrows take refl_/eqv_ names, the rest come from the namers.
std::optional<NamedTypoid> assemble(Typoid t, std::vector<std::string> terms, const std::function<std::string(std::size_t)>& path_name,
                                    const std::function<std::string(std::size_t)>& edge_name) {
    NamedTypoid out;
    out.terms = std::move(terms);
    for (std::size_t p = 0; p < t.path_count(); ++p) {
        const PathId id{p};
        const TermId x = t.base.source(id);
        out.paths.push_back(t.base.unit_of(x) == id ? "refl_" + out.terms[x.index()] : path_name(p));
    }
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        const EdgeId id{e};
        const TermId x = t.layer.source(id);
        out.edges.push_back(t.layer.unit_of(x) == id ? "eqv_" + out.terms[x.index()] : edge_name(e));
    }
    if (!unique(out.terms) || !unique(out.paths) || !unique(out.edges)) return std::nullopt;
    out.typoid = std::move(t);
    return out;
}

std::vector<std::string> numbered(std::string_view prefix, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(prefix) + std::to_string(i));
    return out;
}

} // namespace

NamedTypoid with_default_names(Typoid t) {
    auto terms = numbered("x", t.term_count());
    auto named = assemble(std::move(t), std::move(terms), [](std::size_t p) { return "p" + std::to_string(p); },
                          [](std::size_t e) { return "e" + std::to_string(e); });
    return std::move(*named);
}

NamedTypoid product_names(const NamedTypoid& a, const NamedTypoid& b, Typoid product) {
    const std::size_t pb = b.paths.size(), eb = b.edges.size();
    std::vector<std::string> terms;
    for (const auto& x : a.terms)
        for (const auto& y : b.terms) terms.push_back(x + "_" + y);
    if (terms.size() == product.term_count() && pb * a.paths.size() == product.path_count() && eb * a.edges.size() == product.edge_count()) {
        auto named = assemble(
            product, std::move(terms), [&](std::size_t p) { return a.paths[p / pb] + "_" + b.paths[p % pb]; },
            [&](std::size_t e) { return a.edges[e / eb] + "_" + b.edges[e % eb]; });
        if (named) return std::move(*named);
    }
    return with_default_names(std::move(product));
}

NamedTypoid names_from(const NamedTypoid& from, Typoid t, bool keep_paths, bool keep_edges) {
    if (from.terms.size() == t.term_count()) {
        keep_paths = keep_paths && from.paths.size() == t.path_count();
        keep_edges = keep_edges && from.edges.size() == t.edge_count();
        auto named = assemble(
            t, from.terms, [&](std::size_t p) { return keep_paths ? from.paths[p] : "p" + std::to_string(p); },
            [&](std::size_t e) { return keep_edges ? from.edges[e] : "e" + std::to_string(e); });
        if (named) return std::move(*named);
    }
    return with_default_names(std::move(t));
}

} // namespace typoid::dsl
