#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <json.hpp>
#include <sstream>

#include "typoid/constructions.hpp"
#include "typoid/dsl.hpp"
#include "typoid/univalence.hpp"

using json = nlohmann::ordered_json;
using namespace typoid;

namespace {

constexpr const char* tool_version = "1.0.0";

enum Exit { Success = 0, PropertyFails = 1, BadInput = 2, OverLimit = 3 };

/// A failure that ends the run with exit code 2 and the given diagnostics.
struct InputFailure {
    json violations;
};

struct Run {
    std::string result = "ok";
    json violations = json::array();
    json ua = json::array();
    std::size_t terms = 0, paths = 0, edges = 0;
    std::uint64_t checks = 0;
    json extra = json::object();

    void count(const Typoid& t) {
        terms += t.term_count();
        paths += t.path_count();
        edges += t.edge_count();
    }

    json to_json() const {
        json out;
        out["tool"] = "typoid";
        out["version"] = tool_version;
        out["result"] = result;
        out["violations"] = violations;
        out["ua"] = ua;
        out["stats"] = {{"terms", terms}, {"paths", paths}, {"edges", edges}, {"checks", checks}};
        for (const auto& [k, v] : extra.items()) out[k] = v;
        return out;
    }
};

std::uint64_t max_checks_from_env() {
    if (const char* env = std::getenv("TYPOID_MAX_CHECKS")) {
        char* end = nullptr;
        const auto value = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && value > 0) return value;
    }
    return default_max_checks;
}

json input_error(std::string message) { return json::array({{{"code", "E000"}, {"message", std::move(message)}}}); }

json diagnostic_json(const dsl::Diagnostic& d) {
    return {{"code", d.code},
            {"severity", d.severity == dsl::Diagnostic::Severity::Error ? "error" : "warning"},
            {"line", d.span.line},
            {"column", d.span.column},
            {"length", d.span.length},
            {"message", d.message}};
}

std::string witness_name(const dsl::NamedTypoid& t, const Witness& w) {
    const auto& names = w.kind == Witness::Kind::Term ? t.terms : w.kind == Witness::Kind::Path ? t.paths : t.edges;
    return w.value < names.size() ? names[w.value] : "#" + std::to_string(w.value);
}

/// Replaces the id labels x<n>, p<n>, e<n> of a detail message by source names.
std::string named_detail(const std::string& detail, const dsl::NamedTypoid& t) {
    static const std::regex label(R"(\b([xpe])([0-9]+)\b)");
    std::string out;
    auto last = detail.cbegin();
    for (std::sregex_iterator it(detail.begin(), detail.end(), label), end; it != end; ++it) {
        const auto& m = *it;
        const char kind = m.str(1)[0];
        const Witness w{kind == 'x' ? Witness::Kind::Term : kind == 'p' ? Witness::Kind::Path : Witness::Kind::Edge,
                        static_cast<std::uint32_t>(std::stoul(m.str(2)))};
        out.append(last, m[0].first);
        out += witness_name(t, w);
        last = m[0].second;
    }
    out.append(last, detail.cend());
    return out;
}

json violation_json(const Violation& v, const dsl::NamedTypoid& context, const std::string& subject) {
    json witness = json::array();
    for (const auto& w : v.witness) witness.push_back(witness_name(context, w));
    const std::string detail = subject == context.typoid.name ? named_detail(v.detail, context) : v.detail;
    return {{"code", law_code(v.law)}, {"law", law_name(v.law)}, {"typoid", subject}, {"witness", witness}, {"detail", detail}};
}

void add_report(Run& run, const ValidationReport& report, const dsl::NamedTypoid& context, const std::string& subject) {
    for (const auto& v : report.violations) run.violations.push_back(violation_json(v, context, subject));
    run.checks += report.total_checks();
}

dsl::Document load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputFailure{input_error("cannot read " + path)};
    std::stringstream buffer;
    buffer << in.rdbuf();
    auto parsed = dsl::parse(buffer.str());
    if (!parsed.ok()) {
        json diags = json::array();
        for (const auto& d : parsed.diagnostics) diags.push_back(diagnostic_json(d));
        throw InputFailure{diags};
    }
    return std::move(*parsed.document);
}

const dsl::NamedTypoid& typoid_named(const dsl::Document& doc, const std::string& name) {
    if (const auto* t = doc.find_typoid(name)) return *t;
    throw InputFailure{input_error("no typoid named " + name)};
}

const dsl::NamedTypoid& single_or_named(const dsl::Document& doc, const std::string& name) {
    if (!name.empty()) return typoid_named(doc, name);
    const auto all = doc.typoids();
    if (all.size() != 1) throw InputFailure{input_error("the file holds " + std::to_string(all.size()) + " typoids; pick one with --typoid")};
    return *all.front();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputFailure{input_error("cannot write " + path)};
    out << text;
}

void write_output(const std::string& path, const dsl::Document& doc, const json& provenance) {
    write_text(path, dsl::serialize(doc));
    write_text(path + ".json", provenance.dump(2) + "\n");
}

/// Returns true when the typoid is valid; adds its violations otherwise.
bool require_valid(Run& run, const dsl::NamedTypoid& t, std::uint64_t max_checks) {
    const auto report = validate_typoid(t.typoid, {max_checks});
    add_report(run, report, t, t.typoid.name);
    return report.valid();
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

// --- subcommands -------------------------------------------------------------

int cmd_validate(Run& run, const std::string& file, std::uint64_t max_checks) {
    const auto doc = load(file);
    bool ok = true;
    for (const auto* t : doc.typoids()) {
        run.count(t->typoid);
        auto report = validate_typoid(t->typoid, {max_checks});
        if (report.valid()) report.merge(derived_laws(t->typoid, {max_checks}));
        ok = ok && report.valid();
        add_report(run, report, *t, t->typoid.name);
    }
    for (const auto* m : doc.morphisms()) {
        const auto& s = *doc.find_typoid(m->source);
        const auto& d = *doc.find_typoid(m->target);
        if (!validate_typoid(s.typoid, {max_checks}).valid() || !validate_typoid(d.typoid, {max_checks}).valid()) continue;
        const auto report = validate_morphism(s.typoid, d.typoid, *m, {max_checks, !m->path_map.empty()});
        ok = ok && report.valid();
        add_report(run, report, s, m->name);
    }
    run.result = ok ? "valid" : "invalid";
    return ok ? Success : PropertyFails;
}

int cmd_univalence(Run& run, const std::string& file, const std::string& name, bool emit_ua, std::uint64_t max_checks) {
    const auto doc = load(file);
    const auto& t = single_or_named(doc, name);
    run.count(t.typoid);
    run.extra["typoid"] = t.typoid.name;
    if (!require_valid(run, t, max_checks)) {
        run.result = "invalid";
        return PropertyFails;
    }
    const auto result = check_univalence(t.typoid, {max_checks});
    if (const auto* w = std::get_if<NotUnivalent>(&result)) {
        run.result = "not-univalent";
        run.violations.push_back(violation_json(w->violation(), t, t.typoid.name));
        return PropertyFails;
    }
    const auto& cert = std::get<UnivalenceCertificate>(result);
    run.result = "univalent";
    run.extra["strict"] = cert.strict;
    if (emit_ua)
        for (std::size_t e = 0; e < cert.ua.size(); ++e) run.ua.push_back({{"edge", t.edges[e]}, {"path", t.paths[cert.ua[e].index()]}});
    return Success;
}

int cmd_product(Run& run, const std::string& file, const std::string& a_name, const std::string& b_name, const std::string& out,
                std::uint64_t max_checks) {
    const auto doc = load(file);
    const auto& a = typoid_named(doc, a_name);
    const auto& b = typoid_named(doc, b_name);
    if (!require_valid(run, a, max_checks) || !require_valid(run, b, max_checks)) {
        run.result = "invalid";
        return PropertyFails;
    }
    auto product = product_typoid(a.typoid, b.typoid);
    const auto& prov = product.provenance;
    dsl::Document result;
    result.declarations.push_back({dsl::product_names(a, b, product.typoid), {}});
    run.count(product.typoid);
    write_output(out, result,
                 {{"construction", "product"},
                  {"typoid", product.typoid.name},
                  {"first", prov.first},
                  {"second", prov.second},
                  {"first_counts", {{"terms", prov.first_terms}, {"paths", prov.first_paths}, {"edges", prov.first_edges}}},
                  {"second_counts", {{"terms", prov.second_terms}, {"paths", prov.second_paths}, {"edges", prov.second_edges}}},
                  {"layout", "row-major"}});
    run.extra["typoid"] = product.typoid.name;
    run.extra["output"] = out;
    return Success;
}

int cmd_exp(Run& run, const std::string& file, const std::string& a_name, const std::string& b_name, const std::string& out,
            ExponentialLimits limits, std::uint64_t max_checks) {
    const auto doc = load(file);
    const auto& a = typoid_named(doc, a_name);
    const auto& b = typoid_named(doc, b_name);
    if (!require_valid(run, a, max_checks) || !require_valid(run, b, max_checks)) {
        run.result = "invalid";
        return PropertyFails;
    }
    auto exp = exponential_typoid(a.typoid, b.typoid, limits);
    run.count(exp.typoid);
    json terms = json::array();
    for (const auto& m : exp.terms) {
        json entry = json::object();
        json tm = json::object(), em = json::object();
        for (std::size_t x = 0; x < m.term_map.size(); ++x) tm[a.terms[x]] = b.terms[m.term_map[x].index()];
        for (std::size_t e = 0; e < m.edge_map.size(); ++e) em[a.edges[e]] = b.edges[m.edge_map[e].index()];
        json pm = json::object();
        for (std::size_t p = 0; p < m.path_map.size(); ++p) pm[a.paths[p]] = b.paths[m.path_map[p].index()];
        terms.push_back({{"terms", tm}, {"paths", pm}, {"edges", em}});
    }
    json edges = json::array();
    for (const auto& e : exp.edges) {
        json comps = json::object();
        for (std::size_t x = 0; x < e.components.size(); ++x) comps[a.terms[x]] = b.edges[e.components[x].index()];
        edges.push_back({{"from", e.from}, {"to", e.to}, {"components", comps}});
    }
    dsl::Document result;
    result.declarations.push_back({dsl::with_default_names(exp.typoid), {}});
    write_output(out, result,
                 {{"construction", "exponential"}, {"typoid", exp.typoid.name}, {"source", a.typoid.name}, {"target", b.typoid.name},
                  {"terms", terms}, {"edges", edges}});
    run.extra["typoid"] = exp.typoid.name;
    run.extra["output"] = out;
    return Success;
}

int cmd_unary(Run& run, const std::string& file, const std::string& name, const std::string& out, bool truncation, std::uint64_t max_checks) {
    const auto doc = load(file);
    const auto& a = typoid_named(doc, name);
    if (!require_valid(run, a, max_checks)) {
        run.result = "invalid";
        return PropertyFails;
    }
    Typoid t = truncation ? truncate(a.typoid) : univalent_completion(a.typoid);
    run.count(t);
    const std::string built = t.name;
    dsl::Document result;
    result.declarations.push_back({dsl::names_from(a, std::move(t), truncation, !truncation), {}});
    write_output(out, result, {{"construction", truncation ? "truncation" : "completion"}, {"typoid", built}, {"source", a.typoid.name}});
    run.extra["typoid"] = built;
    run.extra["output"] = out;
    return Success;
}

int cmd_check_fun(Run& run, const std::string& file, const std::string& name, bool no_ap, std::uint64_t max_checks) {
    const auto doc = load(file);
    const auto* m = doc.find_morphism(name);
    if (!m) throw InputFailure{input_error("no morphism named " + name)};
    const auto& s = *doc.find_typoid(m->source);
    const auto& d = *doc.find_typoid(m->target);
    run.count(s.typoid);
    const bool ends_ok = require_valid(run, s, max_checks) & require_valid(run, d, max_checks);
    if (!ends_ok) {
        run.result = "invalid";
        return PropertyFails;
    }
    const auto report = validate_morphism(s.typoid, d.typoid, *m, {max_checks, !no_ap});
    add_report(run, report, s, m->name);
    run.extra["morphism"] = m->name;
    if (report.valid()) {
        run.extra["strict"] = is_strict(s.typoid, d.typoid, *m);
        const auto inverse = check_inverse_law(s.typoid, d.typoid, *m, {max_checks});
        add_report(run, inverse, s, m->name);
        run.result = inverse.valid() ? "valid" : "invalid";
        return inverse.valid() ? Success : PropertyFails;
    }
    run.result = "invalid";
    return PropertyFails;
}

int cmd_induce(Run& run, const std::string& file, const std::string& from, const std::string& to, const std::string& map,
               const std::string& path_map, const std::string& out, std::uint64_t max_checks) {
    const auto doc = load(file);
    const auto& a = typoid_named(doc, from);
    const auto& b = typoid_named(doc, to);
    if (!require_valid(run, a, max_checks) || !require_valid(run, b, max_checks)) {
        run.result = "invalid";
        return PropertyFails;
    }
    auto lookup = [](const std::vector<std::string>& names, const std::string& n, const std::string& owner) {
        const auto it = std::find(names.begin(), names.end(), n);
        if (it == names.end()) throw InputFailure{input_error("unknown name " + n + " in " + owner)};
        return static_cast<std::uint32_t>(it - names.begin());
    };
    std::vector<TermId> terms(a.typoid.term_count());
    for (const auto& pair : split(map, ',')) {
        const auto parts = split(pair, ':');
        if (parts.size() != 2) throw InputFailure{input_error("bad --map entry " + pair)};
        terms[lookup(a.terms, parts[0], from)] = TermId{lookup(b.terms, parts[1], to)};
    }
    for (std::size_t x = 0; x < terms.size(); ++x)
        if (!terms[x].valid()) throw InputFailure{input_error("term " + a.terms[x] + " is not mapped")};
    std::vector<PathId> ap;
    if (path_map.empty()) {
        auto found = find_ap_functor(a.typoid.base, b.typoid.base, terms);
        if (!found) throw InputFailure{input_error("no strict functor on paths extends the term map")};
        ap = std::move(*found);
    } else {
        ap.assign(a.typoid.path_count(), PathId{});
        for (std::size_t x = 0; x < terms.size(); ++x) ap[a.typoid.refl(TermId{x}).index()] = b.typoid.refl(terms[x]);
        for (const auto& pair : split(path_map, ',')) {
            const auto parts = split(pair, ':');
            if (parts.size() != 2) throw InputFailure{input_error("bad --path-map entry " + pair)};
            ap[lookup(a.paths, parts[0], from)] = PathId{lookup(b.paths, parts[1], to)};
        }
        for (std::size_t p = 0; p < ap.size(); ++p)
            if (!ap[p].valid()) throw InputFailure{input_error("path " + a.paths[p] + " is not mapped")};
    }
    run.count(a.typoid);
    const auto result = check_univalence(a.typoid, {max_checks});
    if (const auto* w = std::get_if<NotUnivalent>(&result)) {
        run.result = "not-univalent";
        run.violations.push_back(violation_json(w->violation(), a, a.typoid.name));
        return PropertyFails;
    }
    TypoidMorphism m;
    try {
        m = induce_morphism(a.typoid, b.typoid, terms, ap, std::get<UnivalenceCertificate>(result));
    } catch (const ContractError& e) {
        throw InputFailure{input_error(e.what())};
    }
    json edges = json::object();
    for (std::size_t e = 0; e < m.edge_map.size(); ++e) edges[a.edges[e]] = b.edges[m.edge_map[e].index()];
    run.extra["morphism"] = m.name;
    run.extra["edges"] = edges;
    run.extra["strict"] = is_strict(a.typoid, b.typoid, m);
    if (!out.empty()) {
        dsl::Document result_doc;
        result_doc.declarations.push_back({a, {}});
        if (b.typoid.name != a.typoid.name) result_doc.declarations.push_back({b, {}});
        result_doc.declarations.push_back({m, {}});
        write_text(out, dsl::serialize(result_doc));
        run.extra["output"] = out;
    }
    run.result = "induced";
    return Success;
}

int cmd_gen(Run& run, const std::vector<std::string>& args, const std::string& out) {
    if (args.empty()) throw InputFailure{input_error("gen needs a kind")};
    const std::string& kind = args[0];
    std::vector<std::size_t> numbers;
    for (std::size_t i = 1; i < args.size(); ++i) {
        char* end = nullptr;
        const auto v = std::strtoull(args[i].c_str(), &end, 10);
        if (args[i].empty() || *end != '\0') throw InputFailure{input_error("expected a number, got " + args[i])};
        numbers.push_back(v);
    }
    auto need = [&](std::size_t n) {
        if (numbers.size() != n) throw InputFailure{input_error("gen " + kind + " takes " + std::to_string(n) + " number(s)")};
    };
    Typoid t;
    if (kind == "unit") {
        need(0);
        t = stock::unit();
    } else if (kind == "twoedge") {
        need(0);
        t = stock::twoedge();
    } else if (kind == "eqvrich") {
        need(0);
        t = stock::eqv_rich();
    } else if (kind == "discrete") {
        need(1);
        t = equality_typoid(discrete_groupoid(numbers[0]), "disc" + std::to_string(numbers[0]));
    } else if (kind == "prop") {
        need(1);
        t = equality_typoid(codiscrete_groupoid(numbers[0]), "prop" + std::to_string(numbers[0]));
    } else if (kind == "equality") {
        need(1);
        if (numbers[0] == 0) throw InputFailure{input_error("cyclic order must be positive")};
        t = equality_typoid(cyclic_groupoid(numbers[0]), "eqz" + std::to_string(numbers[0]));
    } else if (kind == "universe") {
        std::string name = "U";
        for (auto c : numbers) name += "_" + std::to_string(c);
        t = universe_typoid(numbers, name);
    } else {
        throw InputFailure{input_error("unknown kind " + kind + " (unit, discrete N, prop N, universe C..., equality N, twoedge, eqvrich)")};
    }
    run.count(t);
    run.extra["typoid"] = t.name;
    run.extra["output"] = out;
    dsl::Document doc;
    doc.declarations.push_back({dsl::with_default_names(std::move(t)), {}});
    write_text(out, dsl::serialize(doc));
    return Success;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite 2-typoid checker"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);
    const std::uint64_t max_checks = max_checks_from_env();

    std::string file, name, a_name, b_name, out, morphism, from, to, map, path_map;
    bool emit_ua = false, no_ap = false;
    ExponentialLimits limits;
    std::vector<std::string> gen_args;

    auto* validate = app.add_subcommand("validate", "Check the typoid and morphism laws of every declaration");
    validate->add_option("FILE", file, "Input .typoid file")->required();

    auto* univalence = app.add_subcommand("univalence", "Decide univalence of one typoid");
    univalence->add_option("FILE", file)->required();
    univalence->add_option("--typoid", name, "Typoid to check (optional when the file holds one)");
    univalence->add_flag("--emit-ua", emit_ua, "List the ua table in the report");

    auto* product = app.add_subcommand("product", "Write the product of two typoids");
    product->add_option("FILE", file)->required();
    product->add_option("A", a_name)->required();
    product->add_option("B", b_name)->required();
    product->add_option("-o", out)->required();

    auto* exp = app.add_subcommand("exp", "Write the exponential B^A");
    exp->add_option("FILE", file)->required();
    exp->add_option("A", a_name, "Source typoid")->required();
    exp->add_option("B", b_name, "Target typoid")->required();
    exp->add_option("-o", out)->required();
    exp->add_option("--max-terms", limits.max_terms)->capture_default_str();
    exp->add_option("--max-edges", limits.max_edges)->capture_default_str();

    auto* trunc = app.add_subcommand("truncate", "Write the truncation of a typoid");
    trunc->add_option("FILE", file)->required();
    trunc->add_option("A", a_name)->required();
    trunc->add_option("-o", out)->required();

    auto* complete = app.add_subcommand("complete", "Write the univalent completion of a typoid");
    complete->add_option("FILE", file)->required();
    complete->add_option("A", a_name)->required();
    complete->add_option("-o", out)->required();

    auto* check_fun = app.add_subcommand("check-fun", "Check one morphism");
    check_fun->add_option("FILE", file)->required();
    check_fun->add_option("--morphism", morphism)->required();
    check_fun->add_flag("--no-ap", no_ap, "Ignore the action on base paths");

    auto* induce = app.add_subcommand("induce", "Build the morphism induced by a term map out of a univalent typoid");
    induce->add_option("FILE", file)->required();
    induce->add_option("--from", from)->required();
    induce->add_option("--to", to)->required();
    induce->add_option("--map", map, "a:b,... term map")->required();
    induce->add_option("--path-map", path_map, "p:q,... action on non-refl paths (searched when absent)");
    induce->add_option("-o", out, "Write source, target and the morphism here");

    auto* gen = app.add_subcommand("gen", "Write a stock typoid");
    gen->add_option("ARGS", gen_args, "KIND [NUMBERS...]")->required();
    gen->add_option("-o", out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return BadInput;
    }

    Run run;
    int code = Success;
    try {
        if (*validate) code = cmd_validate(run, file, max_checks);
        else if (*univalence) code = cmd_univalence(run, file, name, emit_ua, max_checks);
        else if (*product) code = cmd_product(run, file, a_name, b_name, out, max_checks);
        else if (*exp) code = cmd_exp(run, file, a_name, b_name, out, limits, max_checks);
        else if (*trunc) code = cmd_unary(run, file, a_name, out, true, max_checks);
        else if (*complete) code = cmd_unary(run, file, a_name, out, false, max_checks);
        else if (*check_fun) code = cmd_check_fun(run, file, morphism, no_ap, max_checks);
        else if (*induce) code = cmd_induce(run, file, from, to, map, path_map, out, max_checks);
        else if (*gen) code = cmd_gen(run, gen_args, out);
    } catch (const InputFailure& f) {
        run.result = "input-error";
        run.violations = f.violations;
        code = BadInput;
    } catch (const ResourceLimit& e) {
        run.result = "resource-limit";
        run.extra["bound"] = e.bound();
        run.violations = json::array({{{"code", "R001"}, {"bound", e.bound()}, {"message", e.what()}}});
        code = OverLimit;
    } catch (const Error& e) {
        run.result = "input-error";
        run.violations = input_error(e.what());
        code = BadInput;
    }
    std::cout << run.to_json().dump() << '\n';
    return code;
}
