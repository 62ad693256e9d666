#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "typoid/core.hpp"
#include "typoid/morphisms.hpp"

namespace typoid::dsl {

/// 1-based line and column, length in bytes.
struct Span {
    std::uint32_t line = 1;
    std::uint32_t column = 1;
    std::uint32_t length = 0;

    friend auto operator<=>(const Span&, const Span&) = default;
};

struct Diagnostic {
    enum class Severity { Error, Warning };
    Severity severity = Severity::Error;
    Span span;
    std::string code;
    std::string message;

    /// "line:column: error[E002]: message"
    std::string format() const;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// A typoid together with the source names of its terms, paths and edges.
struct NamedTypoid {
    Typoid typoid;
    std::vector<std::string> terms;
    std::vector<std::string> paths;
    std::vector<std::string> edges;
};

struct Declaration {
    std::variant<NamedTypoid, TypoidMorphism> value;
    Span span;

    const std::string& name() const;
    bool is_typoid() const { return std::holds_alternative<NamedTypoid>(value); }
};

struct Document {
    std::vector<Declaration> declarations;

    const NamedTypoid* find_typoid(std::string_view name) const;
    const TypoidMorphism* find_morphism(std::string_view name) const;
    std::vector<const NamedTypoid*> typoids() const;
    std::vector<const TypoidMorphism*> morphisms() const;
};

struct ParseResult {
    /// Present when no error-severity diagnostic was raised.
    std::optional<Document> document;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return document.has_value(); }
};

ParseResult parse(std::string_view text);

/// Canonical text: declarations in order, entries in id order, implicit
/// entries left out.
std::string serialize(const Document& document);

/// Equality of names and of every table read through the names, so ids may
/// be laid out differently on each side.
bool structurally_equal(const NamedTypoid& a, const NamedTypoid& b);
bool structurally_equal(const Document& a, const Document& b);

/// Terms x0.., unit paths refl_<term>, unit edges eqv_<term>, other paths
/// p<i> and other edges e<i>.
NamedTypoid with_default_names(Typoid t);

/// Names derived from factor names: a term (x, y) is x_y, a path (p, q) is
/// p_q, an edge (e, d) is e_d. Falls back to default names on a clash.
NamedTypoid product_names(const NamedTypoid& a, const NamedTypoid& b, Typoid product);

/// Reuses the term names of `from`, and its path or edge names when asked,
/// for a typoid built from it. Falls back to default names on a clash.
NamedTypoid names_from(const NamedTypoid& from, Typoid t, bool keep_paths, bool keep_edges);

} // namespace typoid::dsl
