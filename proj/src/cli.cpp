#include "piq/cli.hpp"

#include <algorithm>
#include <optional>

#include <CLI11.hpp>

#include "piq/classifier.hpp"
#include "piq/identity.hpp"
#include "piq/qvdoc.hpp"
#include "piq/swan.hpp"
#include "report.hpp"

namespace piq::cli {

namespace {

using report::ordered_json;

/// An error that maps to a specific exit code and JSON error kind.
struct Failure {
    ExitCode code;
    std::string kind;
    std::string message;
    std::optional<SourceSpan> where;
};

struct Globals {
    std::string format = "text";
    std::string field = "q";
    int threads = 0;
    bool timing = false;
};

Field parse_field(const std::string& text)
{
    if (text == "q" || text == "Q")
        return Field::rationals();
    if (text.starts_with("fp:")) {
        try {
            std::size_t used = 0;
            auto p = std::stoull(text.substr(3), &used);
            if (used == text.size() - 3)
                return Field::prime(p);
        } catch (const std::invalid_argument&) {
        } catch (const std::out_of_range&) {
        }
    }
    throw Failure{usage_error, "usage", "--field must be 'q' or 'fp:<prime>' below 2^31, got '" + text + "'", {}};
}

QuiverDoc read_doc(const std::string& file)
{
    try {
        return load_quiver(file);
    } catch (const ParseError& e) {
        throw Failure{parse_error, "parse", file + ":" + e.what(), e.where()};
    } catch (const std::runtime_error& e) {
        throw Failure{parse_error, "io", e.what(), {}};
    }
}

AlgebraHandle algebra_of(const QuiverDoc& doc, std::size_t truncation, const Field& field)
{
    try {
        return make_algebra(doc, std::max<std::size_t>(truncation, 1), field);
    } catch (const std::invalid_argument& e) {
        throw Failure{rejected_input, "rejected", e.what(), {}};
    }
}

NcPoly parse_identity(const std::string& identity)
{
    auto number = [&](std::size_t skip) {
        try {
            std::size_t used = 0;
            int n = std::stoi(identity.substr(skip), &used);
            if (used == identity.size() - skip)
                return n;
        } catch (const std::logic_error&) {
        }
        throw Failure{parse_error, "parse", "malformed identity '" + identity + "'", {}};
    };
    try {
        if (identity.starts_with("st:"))
            return standard_poly(number(3));
        if (identity.starts_with("u:"))
            return u_poly(number(2));
        if (identity.starts_with("expr:"))
            return parse_ncpoly(identity.substr(5));
    } catch (const std::invalid_argument& e) {
        throw Failure{parse_error, "parse", e.what(), {}};
    }
    throw Failure{parse_error, "parse", "identity must be st:<n>, u:<n> or expr:<polynomial>, got '" + identity + "'", {}};
}

int verdict_code(const Verdict& v)
{
    if (std::holds_alternative<verdict::VerifiedUpTo>(v))
        return ok;
    if (std::holds_alternative<verdict::Counterexample>(v))
        return counterexample;
    return inconclusive;
}

ordered_json envelope(const std::string& command, const std::string& input, const Field& field)
{
    ordered_json out;
    out["schema"] = report::schema_version;
    out["command"] = command;
    if (!input.empty())
        out["input"] = input;
    out["field"] = field.name();
    return out;
}

void merge(ordered_json& into, const ordered_json& from)
{
    for (const auto& [k, v] : from.items())
        into[k] = v;
}

void emit(const Globals& g, const ordered_json& report, std::ostream& out)
{
    if (g.format == "json")
        out << report.dump(2) << "\n";
    else
        out << report::to_text(report);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Globals g;
    CLI::App app{"Polynomial identities of quiver path algebras", "piq"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--field", g.field, "Coefficient field: q or fp:<p>");
    app.add_option("--threads", g.threads, "Worker threads (0: all)")->check(CLI::NonNegativeNumber);
    app.add_flag("--timing", g.timing, "Include elapsed time in reports");

    std::string file;
    auto* classify = app.add_subcommand("classify", "Decide whether the path algebra is PI");
    bool bruteforce = false;
    classify->add_option("file", file, "Quiver file")->required();
    classify->add_flag("--bruteforce", bruteforce, "Decide by enumerating all simple cycles");

    auto* tideal = app.add_subcommand("tideal", "Generator of the T-ideal of an acyclic quiver");
    tideal->add_option("file", file, "Quiver file")->required();

    std::string identity;
    std::size_t max_len = 0;
    std::size_t truncation = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::size_t min_len = 0;
    bool naive = false;
    auto* verify = app.add_subcommand("verify", "Check a polynomial identity on basis tuples");
    verify->add_option("file", file, "Quiver file")->required();
    verify->add_option("--identity", identity, "st:<n>, u:<n> or expr:\"...\"")->required();
    verify->add_option("--max-len", max_len, "Longest basis path used")->required();
    auto* samples_opt = verify->add_option("--samples", samples, "Random trials instead of exhaustive tuples");
    verify->add_option("--seed", seed, "Seed of the random trials");
    verify->add_option("--min-len", min_len, "Shortest basis path drawn in random trials");
    auto* verify_trunc = verify->add_option("--truncation", truncation, "Truncation length L");
    verify->add_flag("--naive", naive, "Scan every tuple serially (reference mode)");

    std::size_t degree = 0;
    std::string contains;
    auto* identities = app.add_subcommand("identities", "Multilinear identities of a given degree");
    identities->add_option("file", file, "Quiver file")->required();
    identities->add_option("--degree", degree, "Degree d <= 6")->required();
    identities->add_option("--max-len", max_len, "Longest basis path used")->required();
    auto* ident_trunc = identities->add_option("--truncation", truncation, "Truncation length L");
    auto* contains_opt = identities->add_option("--contains", contains, "Report membership of this polynomial");

    std::string tuple_text, from, to;
    auto* swan_cmd = app.add_subcommand("swan", "Swan quiver and unicursal paths of a tuple");
    swan_cmd->add_option("file", file, "Quiver file")->required();
    swan_cmd->add_option("--tuple", tuple_text, "Comma-separated basis paths, e.g. a1*a2,e(1)")->required();
    auto* from_opt = swan_cmd->add_option("--from", from, "Start vertex");
    auto* to_opt = swan_cmd->add_option("--to", to, "End vertex");

    auto* locgraded = app.add_subcommand("locgraded", "Locally A-graded test on the standard basis");
    locgraded->add_option("file", file, "Quiver file")->required();
    locgraded->add_option("--max-len", max_len, "Highest degree checked")->required();

    std::size_t n = 0, m = 0, factor_degree = 0;
    bool no_relation = false;
    std::uint64_t glued_samples = 1000;
    std::size_t glued_len = 4;
    auto* glued = app.add_subcommand("glued", "Sample the product identity on two glued cycles");
    glued->add_option("--n", n, "Length of the first cycle")->required()->check(CLI::PositiveNumber);
    glued->add_option("--m", m, "Length of the second cycle")->required()->check(CLI::PositiveNumber);
    glued->add_flag("--no-relation", no_relation, "Drop the relation alpha*beta = 0");
    glued->add_option("--samples", glued_samples, "Number of sampled tuples");
    glued->add_option("--max-len", glued_len, "Longest basis path used");
    glued->add_option("--seed", seed, "Seed of the sampler");
    glued->add_option("--factor-degree", factor_degree, "Degree of each standard factor (0: 2 max(n, m))");

    auto fail = [&](const Failure& f) {
        if (g.format == "json") {
            ordered_json e{{"kind", f.kind}, {"message", f.message}};
            if (f.where)
                e["location"] = {{"line", f.where->line}, {"column", f.where->column}};
            out << ordered_json{{"schema", report::schema_version}, {"error", e}}.dump(2) << "\n";
        } else {
            err << "error: " << f.message << "\n";
        }
        return static_cast<int>(f.code);
    };

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return ok;
        }
        return fail({usage_error, "usage", e.what(), {}});
    }

    try {
        const Field field = parse_field(g.field);
        auto* sub = app.get_subcommands().front();
        const std::string command = sub->get_name();
        int code = ok;
        ordered_json result;

        if (sub == classify) {
            QuiverDoc doc = read_doc(file);
            result = envelope(command, doc.name, field);
            if (!doc.relations.empty())
                result["relations_ignored"] = doc.relations.size();
            auto verdict = bruteforce ? classify_pi_bruteforce(doc.quiver, g.threads) : classify_pi(doc.quiver);
            merge(result, report::pi_verdict(doc.quiver, verdict));
            code = is_pi(verdict) ? ok : counterexample;
        } else if (sub == tideal) {
            QuiverDoc doc = read_doc(file);
            if (!is_acyclic(doc.quiver))
                throw Failure{rejected_input, "rejected",
                              "the quiver has an oriented cycle; the T-ideal generator needs an acyclic quiver", {}};
            result = envelope(command, doc.name, field);
            const std::size_t longest = longest_path_length(doc.quiver);
            const NcPoly u = tideal_generator_acyclic(doc.quiver);
            result["generator"] = "u(" + std::to_string(longest + 1) + ")";
            result["m"] = longest + 1;
            result["longest_path"] = longest;
            result["expanded"] = to_string(u);
            if (!doc.relations.empty())
                result["relations_ignored"] = doc.relations.size();
            if (longest >= 1) {
                AlgebraHandle path_algebra(doc.quiver, {}, longest, field);
                auto witness = nonvanishing_witness_u(doc.quiver, longest);
                std::vector<Element> args;
                ordered_json tuple = ordered_json::array();
                for (const auto& p : witness) {
                    args.push_back(path_algebra.basis_element(p));
                    tuple.push_back(path_algebra.to_string(p));
                }
                Element value = evaluate(u_poly(static_cast<int>(longest)), path_algebra, args);
                result["sharpness"] = {{"polynomial", "u(" + std::to_string(longest) + ")"},
                                       {"tuple", tuple},
                                       {"value", report::element(path_algebra, value)}};
            }
        } else if (sub == verify) {
            QuiverDoc doc = read_doc(file);
            const NcPoly f = parse_identity(identity);
            const bool randomized = samples_opt->count() > 0;
            if (!randomized && !is_multilinear(f))
                throw Failure{rejected_input, "rejected",
                              "polynomial is not multilinear; pass --samples for randomized checking", {}};
            std::size_t L = verify_trunc->count() ? truncation : std::max<std::size_t>(f.degree(), 1) * max_len;
            AlgebraHandle algebra = algebra_of(doc, L, field);
            result = envelope(command, doc.name, field);
            result["identity"] = identity;
            result["degree"] = f.degree();
            result["truncation"] = algebra.truncation();
            VerificationReport r;
            try {
                if (randomized) {
                    result["mode"] = "randomized";
                    result["seed"] = seed;
                    r = verify_identity_randomized(algebra, f, samples, max_len, seed, {g.threads, min_len});
                } else {
                    result["mode"] = naive ? "naive-scan" : "endpoint-chains";
                    r = verify_multilinear_identity(
                        algebra, f, max_len,
                        {g.threads, naive ? TupleStrategy::naive_scan : TupleStrategy::endpoint_chains});
                }
            } catch (const std::invalid_argument& e) {
                throw Failure{rejected_input, "rejected", e.what(), {}};
            }
            merge(result, report::verification(algebra, r, g.timing));
            code = verdict_code(r.verdict);
        } else if (sub == identities) {
            QuiverDoc doc = read_doc(file);
            std::size_t L = ident_trunc->count() ? truncation : std::max<std::size_t>(degree, 1) * max_len;
            AlgebraHandle algebra = algebra_of(doc, L, field);
            std::optional<NcPoly> probe;
            if (contains_opt->count())
                probe = parse_identity(contains.find(':') == std::string::npos ? "expr:" + contains : contains);
            IdentitySpace space;
            try {
                space = find_multilinear_identities(algebra, degree, max_len, g.threads);
            } catch (const std::invalid_argument& e) {
                throw Failure{rejected_input, "rejected", e.what(), {}};
            }
            result = envelope(command, doc.name, field);
            result["max_len"] = max_len;
            merge(result, report::identity_space(space));
            if (probe)
                result["contains"] = {{"polynomial", contains}, {"member", space.contains(*probe)}};
        } else if (sub == swan_cmd) {
            QuiverDoc doc = read_doc(file);
            std::vector<Path> tuple;
            std::size_t total = 0;
            std::size_t begin = 0;
            while (true) {
                std::size_t comma = tuple_text.find(',', begin);
                auto piece = tuple_text.substr(begin, comma == std::string::npos ? std::string::npos : comma - begin);
                try {
                    tuple.push_back(parse_path(doc.quiver, piece));
                } catch (const std::invalid_argument& e) {
                    throw Failure{parse_error, "parse", "in --tuple: " + std::string(e.what()), {}};
                }
                total += tuple.back().length();
                if (comma == std::string::npos)
                    break;
                begin = comma + 1;
            }
            if (tuple.size() > 64)
                throw Failure{rejected_input, "rejected", "tuples are limited to 64 entries", {}};
            AlgebraHandle algebra = algebra_of(doc, total, field);
            SwanQuiver s;
            try {
                s = build_swan(algebra, tuple);
            } catch (const std::invalid_argument& e) {
                throw Failure{rejected_input, "rejected", e.what(), {}};
            }
            auto vertex = [&](const std::string& name) {
                auto v = doc.quiver.find_vertex(name);
                if (!v)
                    throw Failure{usage_error, "usage", "unknown vertex '" + name + "'", {}};
                return *v;
            };
            std::vector<std::pair<Vertex, Vertex>> pairs;
            if (from_opt->count() || to_opt->count()) {
                if (!from_opt->count() || !to_opt->count())
                    throw Failure{usage_error, "usage", "--from and --to go together", {}};
                pairs.emplace_back(vertex(from), vertex(to));
            } else {
                for (Vertex i : s.vertices)
                    for (Vertex j : s.vertices)
                        pairs.emplace_back(i, j);
            }
            result = envelope(command, doc.name, field);
            merge(result, report::swan(algebra, s, pairs));
            std::vector<Path> sorted = tuple;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                result["standard_value"] = report::element(algebra, Element{});
            else
                result["standard_value"] = report::element(algebra, eval_standard_via_swan(algebra, tuple));
        } else if (sub == locgraded) {
            QuiverDoc doc = read_doc(file);
            AlgebraHandle algebra = algebra_of(doc, max_len, field);
            auto verdict = is_locally_a_graded(algebra, max_len);
            result = envelope(command, doc.name, field);
            result["max_len"] = max_len;
            merge(result, report::loc_graded(algebra, verdict));
            bool yes = std::holds_alternative<loc_graded::ExactYes>(verdict) ||
                       std::holds_alternative<loc_graded::YesUpTo>(verdict);
            code = yes ? ok : counterexample;
        } else if (sub == glued) {
            const std::size_t d = factor_degree ? factor_degree : 2 * std::max(n, m);
            VerificationReport r;
            try {
                r = verify_glued_cycle_identity(n, m, glued_samples, glued_len, seed,
                                                {!no_relation, factor_degree, g.threads, field});
            } catch (const std::invalid_argument& e) {
                throw Failure{rejected_input, "rejected", e.what(), {}};
            }
            AlgebraHandle algebra = build_glued_cycles(n, m, !no_relation, 2 * d * glued_len, field);
            result = envelope(command, "", field);
            result["n"] = n;
            result["m"] = m;
            result["with_relation"] = !no_relation;
            result["identity"] = "St(" + std::to_string(d) + ")*St(" + std::to_string(d) + ")";
            result["max_len"] = glued_len;
            result["samples"] = glued_samples;
            result["seed"] = seed;
            merge(result, report::verification(algebra, r, g.timing));
            code = verdict_code(r.verdict);
        }
        emit(g, result, out);
        return code;
    } catch (const Failure& f) {
        return fail(f);
    } catch (const TruncationError& e) {
        return fail({rejected_input, "truncation", e.what(), {}});
    }
}

}  // namespace piq::cli
