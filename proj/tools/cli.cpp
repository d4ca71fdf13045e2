#include "cli.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "zariski/errors.hpp"
#include "zariski/io.hpp"
#include "zariski/oracle.hpp"
#include "zariski/topology.hpp"

namespace zariski::cli {

namespace {

using nlohmann::json;

struct Options {
    std::string input;
    std::string output;
    std::string format = "text";
    std::string indices;
    std::size_t size = 0;
    unsigned precision = 256;
    double tolerance = 1e-6;
    std::uint64_t limit = kDefaultClassifyLimit;
    bool oracle = false;
    int embedding = 1;
    std::size_t seeds = 4000;
    std::uint64_t rng_seed = oracle::SearchOptions{}.rng_seed;
    std::size_t expect = 0;
    std::string dataset_out;
};

// Everything a command needs once the dataset is loaded.
struct Context {
    const Options& options;
    io::Dataset dataset;
    std::vector<std::size_t> selection;  // dataset positions
    io::Report report;

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (auto n : selection) out.push_back(dataset.lines[n].line.name);
        return out;
    }
    std::vector<BitangentLine> lines() const {
        std::vector<BitangentLine> out;
        for (auto n : selection) out.push_back(dataset.lines[n].line);
        return out;
    }
    SqrtOptions sqrt_options() const { return {options.precision, 64}; }
    /// Stored section where the dataset fixes one, derived otherwise.
    std::vector<BitangentSection> sections() const {
        std::vector<BitangentSection> out;
        for (auto n : selection) {
            const auto& entry = dataset.lines[n];
            out.push_back(entry.section ? *entry.section
                                        : derive_section(dataset.curve, entry.line, sqrt_options()));
        }
        return out;
    }
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) throw SchemaError("empty entry in --indices '" + text + "'");
        out.push_back(item.substr(first, last - first + 1));
    }
    return out;
}

json matrix_json(const SignMatrix& g) {
    json rows = json::array();
    for (std::size_t r = 0; r < g.size(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < g.size(); ++c) row.push_back(g.at(r, c));
        rows.push_back(row);
    }
    return rows;
}

json sanity_json(const SanityReport& sanity, const std::vector<std::string>& names) {
    auto label = [&](auto const& group) {
        json out = json::array();
        for (const auto& item : group) {
            json tuple = json::array();
            for (auto n : item) tuple.push_back(names[n]);
            out.push_back(tuple);
        }
        return out;
    };
    json hyperflex = json::array();
    for (auto n : sanity.hyperflex_lines) hyperflex.push_back(names[n]);
    return {{"identical_pairs", label(sanity.identical_pairs)},
            {"concurrent_triples", label(sanity.concurrent_triples)},
            {"pairs_meeting_on_curve", label(sanity.pairs_meeting_on_curve)},
            {"parallel_pairs", label(sanity.parallel_pairs)},
            {"hyperflex_lines", hyperflex},
            {"clean", sanity.clean()}};
}

// Refuses selections whose pairwise data is undefined; notes concurrency.
void require_generic(Context& ctx) {
    const auto names = ctx.names();
    const auto sanity = curve_sanity(ctx.dataset.curve, ctx.lines());
    if (!sanity.identical_pairs.empty()) {
        const auto& p = sanity.identical_pairs.front();
        throw std::invalid_argument("lines " + names[p[0]] + " and " + names[p[1]] + " are identical");
    }
    if (!sanity.pairs_meeting_on_curve.empty()) {
        const auto& p = sanity.pairs_meeting_on_curve.front();
        throw OnBranchLocus("lines " + names[p[0]] + " and " + names[p[1]] + " meet on the curve");
    }
    for (const auto& t : sanity.concurrent_triples)
        ctx.report.diagnostics.push_back("warning: lines " + names[t[0]] + ", " + names[t[1]] + ", " + names[t[2]] +
                                         " are concurrent");
}

// ---------------------------------------------------------------------------
// Commands. Each fills ctx.report.results and returns its text rendering.

std::string cmd_verify(Context& ctx) {
    const auto& curve = ctx.dataset.curve;
    json lines = json::array();
    std::ostringstream text;
    bool ok = true;
    for (auto n : ctx.selection) {
        const auto& entry = ctx.dataset.lines[n];
        const bool bitangent = verify_bitangent(curve, entry.line);
        std::string section = "absent";
        if (entry.section) section = verify_section(curve, *entry.section) ? "verified" : "mismatch";
        ok = ok && bitangent && section != "mismatch";
        lines.push_back({{"name", entry.line.name}, {"bitangent", bitangent}, {"section", section}});
        text << entry.line.name << ": " << (bitangent ? "bitangent" : "NOT a bitangent") << ", section " << section
             << "\n";
    }
    const auto sanity = curve_sanity(curve, ctx.lines());
    const auto smooth = oracle::smoothness_spot_check(curve, ctx.options.embedding);
    ctx.report.results = {{"lines", lines},
                          {"sanity", sanity_json(sanity, ctx.names())},
                          {"smoothness", {{"critical_points", smooth.critical_points},
                                          {"min_gradient", smooth.min_gradient},
                                          {"suspicious", smooth.suspicious}}},
                          {"all_verified", ok}};
    if (smooth.suspicious) ctx.report.diagnostics.push_back("warning: numeric spot check suggests a singular point");
    text << "concurrent triples: " << sanity.concurrent_triples.size()
         << ", pairs meeting on the curve: " << sanity.pairs_meeting_on_curve.size()
         << ", identical pairs: " << sanity.identical_pairs.size() << "\n";
    if (!ok) throw DomainError("verification failed\n" + text.str());
    return text.str();
}

std::string cmd_derive_sections(Context& ctx) {
    const auto& curve = ctx.dataset.curve;
    json sections = json::array();
    std::ostringstream text;
    io::Dataset augmented = ctx.dataset;
    for (auto n : ctx.selection) {
        const auto& entry = ctx.dataset.lines[n];
        const BitangentSection derived = derive_section(curve, entry.line, ctx.sqrt_options());
        if (!verify_section(curve, derived)) throw std::logic_error("derived section failed verification");
        std::string relation = "absent";
        if (entry.section) {
            if (derived.y() == entry.section->y())
                relation = "equal";
            else if (derived.y() == -entry.section->y())
                relation = "negated";
            else
                relation = "different";
        } else {
            augmented.lines[n].section = derived;
        }
        sections.push_back({{"name", entry.line.name},
                            {"c", io::element_to_json(derived.c)},
                            {"d", io::element_to_json(derived.d)},
                            {"e", io::element_to_json(derived.e)},
                            {"stored", relation}});
        text << entry.line.name << ": y = (" << derived.c << ") t^2 + (" << derived.d << ") t + (" << derived.e
             << ")  [stored: " << relation << "]\n";
        if (relation == "different")
            ctx.report.diagnostics.push_back("stored section of " + entry.line.name + " differs from the derived one");
    }
    ctx.report.results = {{"sections", sections}};
    if (!ctx.options.dataset_out.empty()) io::write_dataset_file(ctx.options.dataset_out, augmented);
    return text.str();
}

std::string cmd_gram(Context& ctx) {
    require_generic(ctx);
    std::vector<std::size_t> labels;
    for (auto n : ctx.selection) labels.push_back(n + 1);
    const SignMatrix g = gram_matrix(ctx.sections(), labels);
    ctx.report.results = {{"lines", ctx.names()}, {"matrix", matrix_json(g)}, {"minus_count", g.minus_count()}};
    return g.to_string() + "\n";
}

std::string cmd_connected(Context& ctx) {
    require_generic(ctx);
    const auto sections = ctx.sections();
    const std::size_t lift = connected_number_liftgraph(sections);
    json methods = {{"liftgraph", lift}};
    std::ostringstream text;
    text << "connected number: " << lift << "\n";
    if (sections.size() == 3) {
        const SignMatrix g = gram_matrix(sections);
        const int parity = connected_number_triple(g);
        const int det = connected_number_det(g);
        methods["parity"] = parity;
        methods["determinant"] = det;
        text << "parity rule: " << parity << ", determinant rule: " << det << "\n";
        if (parity != static_cast<int>(lift) || det != static_cast<int>(lift))
            throw Inconsistent("connected number methods disagree");
    }
    ctx.report.results = {{"lines", ctx.names()}, {"connected_number", lift}, {"methods", methods}};
    if (ctx.options.oracle) {
        oracle::MatchOptions mo;
        mo.embedding = ctx.options.embedding;
        mo.match_tolerance = ctx.options.tolerance;
        const std::size_t numeric = oracle::connected_number_numeric(ctx.dataset.curve, ctx.lines(), mo);
        ctx.report.oracle = json{{"connected_number", numeric}, {"embedding", ctx.options.embedding}};
        text << "numeric oracle: " << numeric << "\n";
        if (numeric != lift)
            throw Inconsistent("numeric oracle gives " + std::to_string(numeric) + ", exact computation gives " +
                               std::to_string(lift));
    }
    return text.str();
}

std::string cmd_invariants(Context& ctx) {
    require_generic(ctx);
    const InvariantPair pair = subarrangement_invariant(ctx.sections());
    ctx.report.results = {{"lines", ctx.names()}, {"invariant", {pair.count1, pair.count2}}};
    return pair.to_string() + "\n";
}

std::string cmd_parity(Context& ctx) {
    require_generic(ctx);
    const ParityReport p = parity_identity_check(ctx.sections());
    ctx.report.results = {{"lines", ctx.names()},
                          {"m_I", p.minus_count},
                          {"n", p.n},
                          {"count2", p.count2},
                          {"M", p.big_m}};
    std::ostringstream text;
    text << "m_I = " << p.minus_count << ", n = " << p.n << ", #c^-1(2) = " << p.count2 << ", M = " << p.big_m
         << "\n"
         << p.minus_count << "*(" << p.n << "-2) = 2*" << p.big_m << " + " << p.count2 << "\n";
    return text.str();
}

std::string cmd_classify(Context& ctx) {
    if (ctx.options.size < 3) throw std::invalid_argument("classify needs --size n with n >= 3");
    const std::uint64_t total = binomial(ctx.selection.size(), ctx.options.size);
    if (total > ctx.options.limit)
        throw LimitExceeded(std::to_string(total) + " subsets exceed --limit " + std::to_string(ctx.options.limit));
    const auto names = ctx.names();
    const auto sections = ctx.sections();
    const ClassifyResult result =
        classify_subsets(PairTable::build(ctx.dataset.curve, sections), ctx.options.size, ctx.options.limit);
    auto named = [&](const std::vector<std::size_t>& subset) {
        json out = json::array();
        for (auto n : subset) out.push_back(names[n]);
        return out;
    };
    json classes = json::array();
    std::ostringstream text;
    text << "subsets of size " << result.subset_size << ": " << result.examined << " examined, "
         << result.excluded.size() << " excluded, " << result.classes.size() << " distinct invariants\n";
    for (const auto& [pair, subsets] : result.classes) {
        json list = json::array();
        for (const auto& s : subsets) list.push_back(named(s));
        classes.push_back({{"invariant", {pair.count1, pair.count2}}, {"count", subsets.size()}, {"subsets", list}});
        text << pair.to_string() << ": " << subsets.size() << " subsets, e.g. {";
        const auto& first = subsets.front();
        for (std::size_t k = 0; k < first.size(); ++k) text << (k ? "," : "") << names[first[k]];
        text << "}\n";
    }
    json excluded = json::array();
    for (const auto& e : result.excluded) excluded.push_back({{"subset", named(e.subset)}, {"reason", e.reason}});
    ctx.report.results = {{"size", result.subset_size},
                          {"examined", result.examined},
                          {"distinct_invariants", result.classes.size()},
                          {"classes", classes},
                          {"excluded", excluded}};
    return text.str();
}

std::string cmd_find_bitangents(Context& ctx) {
    oracle::SearchOptions so;
    so.embedding = ctx.options.embedding;
    so.seeds = ctx.options.seeds;
    so.rng_seed = ctx.options.rng_seed;
    so.expected = ctx.options.expect;
    const auto found = oracle::find_bitangents_numeric(ctx.dataset.curve, so);
    std::vector<oracle::NumericLine> known;
    for (const auto& entry : ctx.dataset.lines) known.push_back(oracle::embed_line(entry.line, so.embedding));
    json lines = json::array();
    std::ostringstream text;
    std::size_t matched = 0;
    for (const auto& line : found) {
        json match = nullptr;
        for (std::size_t n = 0; n < known.size(); ++n)
            if (std::abs(known[n].a - line.a) < 1e-8 && std::abs(known[n].b - line.b) < 1e-8) {
                match = ctx.dataset.lines[n].line.name;
                ++matched;
                break;
            }
        lines.push_back({{"a", {line.a.real(), line.a.imag()}},
                         {"b", {line.b.real(), line.b.imag()}},
                         {"residual", line.residual},
                         {"dataset_line", match}});
    }
    ctx.report.results = {{"embedding", so.embedding},
                          {"seeds", so.seeds},
                          {"rng_seed", so.rng_seed},
                          {"found", found.size()},
                          {"matched_dataset_lines", matched},
                          {"lines", lines}};
    text << "found " << found.size() << " bitangents from " << so.seeds << " seeds; " << matched
         << " match dataset lines within 1e-8\n";
    return text.str();
}

std::string cmd_oracle_connected(Context& ctx) {
    oracle::MatchOptions mo;
    mo.embedding = ctx.options.embedding;
    mo.match_tolerance = ctx.options.tolerance;
    const auto assignment = oracle::assign_sheets(ctx.dataset.curve, ctx.lines(), mo);
    const std::size_t c = assignment.components();
    const auto names = ctx.names();
    json matches = json::array();
    for (const auto& m : assignment.matches)
        matches.push_back({{"pair", {names[m.i], names[m.j]}},
                           {"at_infinity", m.at_infinity},
                           {"kind", m.kind == MeetKind::SamePoint ? "same" : "opposite"}});
    ctx.report.results = {{"lines", names}, {"connected_number", c}, {"matches", matches}};
    return "numeric connected number: " + std::to_string(c) + "\n";
}

void emit(const Options& options, const std::string& content, std::ostream& out) {
    if (options.output.empty()) {
        out << content;
        return;
    }
    std::ofstream file(options.output, std::ios::binary);
    if (!file) throw SchemaError("cannot write '" + options.output + "'");
    file << content;
}

std::string render(const Options& options, const io::Report& report, const std::string& text) {
    if (options.format == "structured") return io::save_report(report);
    std::string body = text;
    for (const auto& d : report.diagnostics) body += d.get<std::string>() + "\n";
    return body;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options options;
    CLI::App app{"Exact height pairings, connected numbers and Zariski invariants for quartic bitangents", "zariski"};
    app.require_subcommand(1);

    using Command = std::string (*)(Context&);
    const std::vector<std::tuple<std::string, std::string, Command>> commands{
        {"verify", "check bitangency, stored sections and arrangement combinatorics", cmd_verify},
        {"derive-sections", "derive y = c t^2 + d t + e for each selected line", cmd_derive_sections},
        {"gram", "sign matrix G_I = 2 x height-pairing Gram matrix", cmd_gram},
        {"connected", "connected number of the selected arrangement", cmd_connected},
        {"invariants", "(#c^-1(1), #c^-1(2)) over all triples", cmd_invariants},
        {"parity", "check m_I (n-2) = 2M + #c^-1(2)", cmd_parity},
        {"classify", "group all n-subsets by invariant pair", cmd_classify},
        {"find-bitangents", "numeric bitangent search by damped Newton", cmd_find_bitangents},
        {"oracle-connected", "connected number from numeric sheet matching", cmd_oracle_connected},
    };

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", options.input, "dataset file (default: built-in Klein dataset)")
            ->check(CLI::ExistingFile);
        sub->add_option("--output", options.output, "write the report here instead of stdout");
        sub->add_option("--format", options.format, "report format")
            ->check(CLI::IsMember({"text", "structured"}));
        sub->add_option("--indices", options.indices, "comma-separated line names or 1-based positions");
        sub->add_option("--precision", options.precision, "bits for square-root reconstruction")
            ->check(CLI::Range(64U, 1U << 16));
        sub->add_option("--tolerance", options.tolerance, "numeric match tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--embedding", options.embedding, "complex embedding zeta -> exp(2 pi i k / n)");
    };

    CLI::App* klein = app.add_subcommand("klein", "write the built-in Klein dataset");
    klein->add_option("--output", options.output, "dataset file (default: stdout)");
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, help, fn] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_common(sub);
        subs[name] = sub;
    }
    subs["classify"]->add_option("--size", options.size, "subset size n")->required();
    subs["classify"]->add_option("--limit", options.limit, "maximum number of subsets to enumerate");
    subs["connected"]->add_flag("--oracle", options.oracle, "cross-check with the numeric oracle");
    subs["find-bitangents"]->add_option("--seeds", options.seeds, "number of Newton seeds")
        ->check(CLI::Range(std::size_t{1}, std::size_t{10'000'000}));
    subs["find-bitangents"]->add_option("--rng-seed", options.rng_seed, "seed of the seed generator");
    subs["find-bitangents"]->add_option("--expect", options.expect, "fail unless this many lines are found");
    subs["derive-sections"]->add_option("--dataset-out", options.dataset_out,
                                        "write the dataset with derived sections filled in");

    std::vector<std::string> argv_storage{"zariski"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (klein->parsed()) {
        try {
            const std::string text = io::save_dataset(io::builtin_klein());
            emit(options, text, out);
            return kExitOk;
        } catch (const Error& e) {
            err << "error: " << e.what() << "\n";
            return kExitUsage;
        }
    }

    std::string name;
    Command command = nullptr;
    for (const auto& [n, help, fn] : commands)
        if (subs[n]->parsed()) {
            name = n;
            command = fn;
        }

    io::Report report;
    report.command = args;
    auto fail = [&](const std::string& status, const std::string& message, int code) {
        report.status = status;
        report.diagnostics.push_back("error: " + message);
        err << "error: " << message << "\n";
        try {
            if (options.format == "structured") emit(options, io::save_report(report), out);
        } catch (const Error& e) {
            err << "error: " << e.what() << "\n";
        }
        return code;
    };

    try {
        io::Dataset dataset = options.input.empty() ? io::builtin_klein() : io::read_dataset_file(options.input);
        report.input = options.input.empty() ? "builtin:klein" : options.input;
        report.input_digest = io::dataset_digest(dataset);
        Context ctx{options, std::move(dataset), {}, std::move(report)};
        if (options.indices.empty()) {
            for (std::size_t n = 0; n < ctx.dataset.lines.size(); ++n) ctx.selection.push_back(n);
        } else {
            for (const auto& ref : split_list(options.indices)) ctx.selection.push_back(ctx.dataset.resolve(ref));
        }
        const std::string text = command(ctx);
        report = std::move(ctx.report);
        emit(options, render(options, report, text), out);
        return kExitOk;
    } catch (const SchemaError& e) {
        return fail("usage-error", e.what(), kExitUsage);
    } catch (const std::invalid_argument& e) {
        return fail("usage-error", e.what(), kExitUsage);
    } catch (const Error& e) {
        return fail("domain-error", e.what(), kExitDomain);
    } catch (const std::exception& e) {
        return fail("domain-error", std::string(name) + ": " + e.what(), kExitDomain);
    }
}

}  // namespace zariski::cli
