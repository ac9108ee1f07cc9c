#include "cli.hpp"

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>

#include <CLI11.hpp>

#include "unitfrac/construction.hpp"
#include "unitfrac/diagnostics.hpp"
#include "unitfrac/errors.hpp"
#include "unitfrac/families.hpp"
#include "unitfrac/greedy.hpp"
#include "unitfrac/io.hpp"
#include "unitfrac/uniqueness.hpp"

namespace unitfrac::cli {

namespace {

using io::Json;

// Flag combinations CLI11 cannot express on its own.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A certificate or check that failed; the report is still written.
struct CheckFailed {
    std::string message;
};

struct Common {
    std::string format;
    std::string output;
    std::uint64_t seed = 0;
};

std::size_t term_cap() {
    const char* env = std::getenv("UNITFRAC_MAX_TERMS");
    if (env == nullptr || *env == '\0') return kDefaultTermCap;
    std::size_t value = 0;
    const char* end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec != std::errc() || ptr != end || value == 0) {
        throw UsageError("UNITFRAC_MAX_TERMS must be a positive integer, got '" + std::string(env) + "'");
    }
    return value;
}

void check_terms(std::size_t terms) {
    if (terms == 0) throw UsageError("--terms must be positive");
    if (terms > term_cap()) {
        throw UsageError("--terms " + std::to_string(terms) + " exceeds the term cap of " +
                         std::to_string(term_cap()) + " (set UNITFRAC_MAX_TERMS to raise it)");
    }
}

class Table {
public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    void write(std::ostream& out, const std::string& format) const {
        if (format == "csv") {
            write_csv_line(out, header_);
            for (const auto& r : rows_) write_csv_line(out, r);
        } else if (format == "json") {
            Json arr = Json::array();
            for (const auto& r : rows_) {
                Json item;
                for (std::size_t i = 0; i < header_.size(); ++i) item[header_[i]] = r[i];
                arr.push_back(std::move(item));
            }
            out << arr.dump(2) << '\n';
        } else {
            std::vector<std::size_t> width(header_.size());
            for (std::size_t i = 0; i < header_.size(); ++i) width[i] = header_[i].size();
            for (const auto& r : rows_) {
                for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
            }
            write_aligned(out, header_, width);
            for (const auto& r : rows_) write_aligned(out, r, width);
        }
    }

private:
    static void write_csv_line(std::ostream& out, const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
        out << '\n';
    }
    static void write_aligned(std::ostream& out, const std::vector<std::string>& cells,
                              const std::vector<std::size_t>& width) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << "  ";
            out << cells[i];
            if (i + 1 < cells.size()) out << std::string(width[i] - cells[i].size(), ' ');
        }
        out << '\n';
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

const char* yes_no(bool v) { return v ? "pass" : "FAIL"; }

std::vector<Rational> parse_grid(const std::string& text) {
    std::vector<Rational> grid;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        auto item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        grid.push_back(Rational::parse(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return grid;
}

// ---- expand ------------------------------------------------------------------

struct ExpandOpts {
    std::string theta;
    std::string algo = "greedy";
    std::string t = "1";
    std::string lambda; // all, or set: (nothing capped) when replaying a list
    std::string select = "ceil-t-a";
    std::string b_file;
    std::size_t terms = 0;
    bool last_greedy = false;
};

void cmd_expand(const ExpandOpts& o, const Common& c, std::ostream& out) {
    const Rational theta = Rational::parse(o.theta);
    WgaaPolicy policy;
    std::vector<Integer> b_list;
    if (!o.b_file.empty()) b_list = io::read_sequence_file(o.b_file);

    if (o.algo == "greedy") {
        if (!o.b_file.empty()) throw UsageError("--b-file needs --algo wgaa");
        policy = WgaaPolicy::greedy();
    } else if (o.algo == "gt") {
        if (!o.b_file.empty()) throw UsageError("--b-file needs --algo wgaa");
        policy = WgaaPolicy::ceil_t(Rational::parse(o.t), o.last_greedy);
    } else {
        policy.t = Rational::parse(o.t);
        policy.lambda = IndexSet::parse(!o.lambda.empty() ? o.lambda : b_list.empty() ? "all" : "set:");
        policy.selection = b_list.empty() ? parse_bselection(o.select) : BSelection::Explicit;
        policy.last_greedy = o.last_greedy;
        if (policy.selection == BSelection::Explicit) {
            if (b_list.empty()) throw UsageError("--select explicit needs --b-file");
            policy.explicit_b = b_list;
        }
    }
    std::size_t terms = o.terms;
    if (terms == 0) {
        if (b_list.empty()) throw UsageError("--terms is required");
        terms = b_list.size();
    }
    check_terms(terms);
    auto run = wgaa_expand(theta, policy, terms, term_cap());

    if (c.format == "json") {
        out << io::run_to_json(run).dump(2) << '\n';
        return;
    }
    Table table({"n", "a_n", "b_n", "residual"});
    for (std::size_t i = 0; i < run.size(); ++i) {
        table.add({std::to_string(i + 1), to_string(run.a[i]), to_string(run.b[i]), run.residuals[i].to_string()});
    }
    table.write(out, c.format);
}

// ---- verify ------------------------------------------------------------------

struct VerifyOpts {
    std::string b_file;
    std::string a_file;
    std::string theta;
    std::string family;
    std::size_t terms = 0;
};

// Recover the shadow of an explicit list and check b_n >= a_n and the
// admissible interval of each consecutive shadow pair.
void verify_recovery(const VerifyOpts& o, const Common& c, std::ostream& out) {
    if (o.b_file.empty()) throw UsageError("--theta needs --b-file");
    if (!o.family.empty()) throw UsageError("--theta and --family are exclusive");
    const auto b = io::read_sequence_file(o.b_file);
    std::optional<std::vector<Integer>> expected;
    if (!o.a_file.empty()) expected = io::read_sequence_file(o.a_file);
    const auto rec = recover_shadow(b, Rational::parse(o.theta));

    std::vector<std::string> header{"n", "b_n", "a_n"};
    if (expected) header.push_back("expected_a_n");
    for (const char* h : {"b_ge_a", "admissible", "pass"}) header.push_back(h);
    Table table(std::move(header));

    std::optional<std::size_t> first_fail;
    for (std::size_t i = 0; i < rec.a.size(); ++i) {
        const bool ge = b[i] >= rec.a[i];
        std::string adm = "-";
        bool adm_ok = true;
        if (ge && i + 1 < rec.a.size()) {
            adm_ok = admissible_interval(rec.a[i], rec.a[i + 1]).contains(Rational(b[i]));
            adm = yes_no(adm_ok);
        }
        bool ok = ge && adm_ok;
        std::vector<std::string> row{std::to_string(i + 1), to_string(b[i]), to_string(rec.a[i])};
        if (expected) {
            bool match = i < expected->size() && (*expected)[i] == rec.a[i];
            row.push_back(i < expected->size() ? to_string((*expected)[i]) : "-");
            ok = ok && match;
        }
        row.push_back(yes_no(ge));
        row.push_back(adm);
        row.push_back(yes_no(ok));
        table.add(std::move(row));
        if (!ok && !first_fail) first_fail = i + 1;
    }
    if (expected && expected->size() > rec.a.size() && !first_fail) first_fail = rec.a.size() + 1;
    table.write(out, c.format);
    if (first_fail) throw CheckFailed{"verification failed at n = " + std::to_string(*first_fail)};
}

// Strict jump-interval check of b_n against consecutive a values.
void verify_jumps(const VerifyOpts& o, const Common& c, std::ostream& out) {
    std::vector<Integer> a, b;
    std::size_t first = 1;
    if (!o.family.empty()) {
        auto fam = parse_family(o.family);
        first = first_checked_index(fam);
        if (!o.b_file.empty()) {
            b = io::read_sequence_file(o.b_file);
        } else {
            std::size_t terms = o.terms ? o.terms : 20;
            check_terms(terms);
            b = family_b_prefix(fam, terms);
        }
        a = family_a_prefix(fam, b.size() + 1);
    } else {
        if (o.a_file.empty() || o.b_file.empty()) {
            throw UsageError("verify needs --theta with --b-file, --family, or both --a-file and --b-file");
        }
        a = io::read_sequence_file(o.a_file);
        b = io::read_sequence_file(o.b_file);
        if (a.size() < 2) throw UsageError("--a-file needs at least two values");
        if (b.size() + 1 > a.size()) b.resize(a.size() - 1);
    }
    std::size_t last = b.size();
    if (o.terms) last = std::min(last, o.terms);

    // the interval cell holds a comma, so csv leaves it out
    const bool show_interval = c.format != "csv";
    std::vector<std::string> header{"n", "a_n", "a_next", "b_n"};
    if (show_interval) header.push_back("jump_interval");
    header.push_back("pass");
    Table table(std::move(header));
    std::optional<std::size_t> first_fail;
    for (std::size_t n = first; n <= last; ++n) {
        const Integer& an = a[n - 1];
        const Integer& an1 = a[n];
        bool ok = false;
        std::string iv = "-";
        if (an >= 2 && an1 > an) {
            auto interval = jump_interval(an, an1);
            iv = interval.to_string();
            ok = interval.contains(Rational(b[n - 1]));
        }
        std::vector<std::string> row{std::to_string(n), to_string(an), to_string(an1), to_string(b[n - 1])};
        if (show_interval) row.push_back(iv);
        row.push_back(yes_no(ok));
        table.add(std::move(row));
        if (!ok && !first_fail) first_fail = n;
    }
    table.write(out, c.format);
    if (first_fail) throw CheckFailed{"verification failed at n = " + std::to_string(*first_fail)};
}

void cmd_verify(const VerifyOpts& o, const Common& c, std::ostream& out) {
    if (!o.theta.empty()) {
        verify_recovery(o, c, out);
    } else {
        verify_jumps(o, c, out);
    }
}

// ---- construct ---------------------------------------------------------------

struct ConstructOpts {
    std::string a_file;
    std::string family;
    bool repeat_last_delta = false;
    std::size_t depth = 25;
};

void cmd_construct(const ConstructOpts& o, const Common&, std::ostream& out) {
    if (o.a_file.empty() == o.family.empty()) throw UsageError("construct needs exactly one of --a-file or --family");
    std::optional<TargetSequence> seq;
    if (!o.a_file.empty()) {
        if (!o.repeat_last_delta) {
            throw UsageError("a finite --a-file needs --repeat-last-delta to continue the sequence");
        }
        seq = TargetSequence::repeat_last_delta(io::read_sequence_file(o.a_file));
    } else {
        auto fam = parse_family(o.family);
        if (std::holds_alternative<Fibonacci>(fam)) {
            throw UsageError("the Fibonacci shadow starts at a_1 = 1, which is not a valid target");
        }
        seq = as_target(fam);
    }
    std::optional<ConstructionResult> built;
    try {
        built = construct(*seq, o.depth);
    } catch (const DepthExhausted& e) {
        throw CheckFailed{e.what()};
    }
    const ConstructionResult& result = *built;
    Json doc;
    doc["target"] = seq->label();
    const Json body = io::construction_to_json(result);
    for (const auto& [k, v] : body.items()) doc[k] = v;
    out << doc.dump(2) << '\n';
    if (!result.all_certified()) {
        auto bad = result.first_uncertified();
        throw CheckFailed{bad ? "tail certificate fails at n = " + std::to_string(*bad)
                              : std::string("theta bound certificate fails")};
    }
}

// ---- unique ------------------------------------------------------------------

struct UniqueOpts {
    std::size_t range = 0;
    std::string mode = "e8";
    std::string a_file;
    std::size_t sample = 0;
};

void cmd_unique(const UniqueOpts& o, const Common& c, std::ostream& out) {
    if ((o.range == 0) == o.a_file.empty()) throw UsageError("unique needs exactly one of --range or --a-file");
    const bool strict = o.mode == "e8";
    std::vector<std::pair<Integer, Integer>> pairs;
    if (o.range) {
        if (o.range < 3) throw UsageError("--range must be at least 3");
        for (std::size_t a = 2; a < o.range; ++a) {
            for (std::size_t a2 = a + 1; a2 <= o.range; ++a2) {
                pairs.emplace_back(Integer(static_cast<unsigned long>(a)), Integer(static_cast<unsigned long>(a2)));
            }
        }
        if (o.sample) {
            // partial Fisher-Yates on the raw engine output, stable across standard libraries
            std::mt19937_64 rng(c.seed);
            std::size_t k = std::min(o.sample, pairs.size());
            for (std::size_t i = 0; i < k; ++i) {
                std::size_t j = i + static_cast<std::size_t>(rng() % (pairs.size() - i));
                std::swap(pairs[i], pairs[j]);
            }
            pairs.resize(k);
        }
    } else {
        if (o.sample) throw UsageError("--sample applies to --range sweeps");
        auto a = io::read_sequence_file(o.a_file);
        for (std::size_t i = 0; i + 1 < a.size(); ++i) pairs.emplace_back(a[i], a[i + 1]);
        if (pairs.empty()) throw UsageError("--a-file needs at least two values");
    }

    io::write_verdict_csv_header(out);
    std::optional<std::string> disagreement;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [a, a2] = pairs[i];
        auto v = strict ? strict_pair_verdict(a, a2, i + 1) : relaxed_pair_verdict(a, a2, i + 1);
        io::write_verdict_csv_row(out, v);
        if (!v.agrees() && !disagreement) {
            disagreement = "formula and integer count disagree at (" + to_string(a) + ", " + to_string(a2) + ")";
        }
    }
    if (disagreement) throw CheckFailed{*disagreement};
}

// ---- family ------------------------------------------------------------------

struct FamilyOpts {
    std::string spec;
    std::size_t terms = 20;
    bool theta_enclosure = false;
    bool verify = false;
};

void cmd_family(const FamilyOpts& o, const Common&, std::ostream& out) {
    auto fam = parse_family(o.spec);
    check_terms(o.terms);
    Table table({"n", "a_n", "b_n"});
    for (std::size_t n = 1; n <= o.terms; ++n) {
        table.add({std::to_string(n), to_string(family_a(fam, n)), to_string(family_b(fam, n))});
    }
    table.write(out, "csv");

    Json footer;
    footer["family"] = to_string(fam);
    footer["terms"] = o.terms;
    if (o.theta_enclosure) footer["theta_enclosure"] = io::to_json(family_theta_enclosure(fam, o.terms));
    std::optional<std::size_t> failure;
    if (o.verify) {
        auto check = verify_strict_jump(fam, o.terms);
        Json v;
        v["first_index"] = first_checked_index(fam);
        v["holds"] = check.holds;
        v["first_failure"] = check.first_failure ? Json(*check.first_failure) : Json(nullptr);
        footer["jump_check"] = v;
        failure = check.first_failure;
    }
    out << "# " << footer.dump() << '\n';
    if (failure) throw CheckFailed{"jump interval check fails at n = " + std::to_string(*failure)};
}

// ---- classify ----------------------------------------------------------------

struct ClassifyOpts {
    std::string a_file;
    std::string b_file;
    std::string family;
    std::size_t terms = 50;
    std::string t_grid;
};

void cmd_classify(const ClassifyOpts& o, const Common&, std::ostream& out) {
    std::vector<Integer> a, b;
    std::optional<RatioLimit> limit;
    std::string source;
    if (!o.family.empty()) {
        if (!o.a_file.empty() || !o.b_file.empty()) throw UsageError("--family excludes --a-file/--b-file");
        auto fam = parse_family(o.family);
        check_terms(o.terms);
        const std::size_t first = first_checked_index(fam);
        for (std::size_t n = first; n < first + o.terms; ++n) {
            a.push_back(family_a(fam, n));
            b.push_back(family_b(fam, n));
        }
        limit = declared_ratio_limit(fam);
        source = to_string(fam);
    } else {
        if (o.a_file.empty() || o.b_file.empty()) throw UsageError("classify needs --family or both --a-file and --b-file");
        a = io::read_sequence_file(o.a_file);
        b = io::read_sequence_file(o.b_file);
        source = "files";
    }
    auto grid = o.t_grid.empty() ? default_t_grid() : parse_grid(o.t_grid);
    auto report = classify(a, b, grid, limit);
    Json doc;
    doc["source"] = source;
    const Json body = io::classification_to_json(report);
    for (const auto& [k, v] : body.items()) doc[k] = v;
    out << doc.dump(2) << '\n';
}

void add_common(CLI::App* sub, Common& c, std::vector<std::string> formats) {
    c.format = formats.front();
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember(formats));
    sub->add_option("--output,-o", c.output, "Write the report to this file instead of stdout");
    sub->add_option("--seed", c.seed, "Seed for randomized sweep ordering");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact greedy and weak greedy unit-fraction tools", "unitfrac"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every command");

    ExpandOpts expand_o;
    Common expand_c;
    auto* expand = app.add_subcommand("expand", "Greedy or weak greedy expansion of theta");
    expand->add_option("--theta", expand_o.theta, "theta as P/Q")->required();
    expand->add_option("--algo", expand_o.algo, "greedy | gt (b = ceil(t a)) | wgaa")
        ->check(CLI::IsMember({"greedy", "gt", "wgaa"}));
    expand->add_option("--t", expand_o.t, "Cap factor t >= 1 as P/Q");
    expand->add_option("--lambda", expand_o.lambda, "Capped indices: all | set:1,2 | not:3 | periodic:P:r,...");
    expand->add_option("--select", expand_o.select, "wgaa choice: greedy | ceil-t-a | min-admissible | explicit");
    expand->add_option("--b-file", expand_o.b_file, "Explicit denominators to replay (wgaa)");
    expand->add_option("--terms", expand_o.terms, "Number of terms");
    expand->add_flag("--last-greedy", expand_o.last_greedy, "Choose the final term greedily");
    add_common(expand, expand_c, {"json", "csv", "table"});

    VerifyOpts verify_o;
    Common verify_c;
    auto* verify = app.add_subcommand("verify", "Check denominators against a theta or a shadow sequence");
    verify->add_option("--b-file", verify_o.b_file, "Denominators b_n, one per line");
    verify->add_option("--a-file", verify_o.a_file, "Shadow values a_n, one per line");
    verify->add_option("--theta", verify_o.theta, "theta as P/Q: recover the shadow and check it");
    verify->add_option("--family", verify_o.family, "Family spec supplying a_n (and b_n without --b-file)");
    verify->add_option("--terms", verify_o.terms, "Number of indices to check");
    add_common(verify, verify_c, {"table", "csv", "json"});

    ConstructOpts construct_o;
    Common construct_c;
    auto* construct_cmd = app.add_subcommand("construct", "Build theta and b_n from a target shadow sequence");
    construct_cmd->add_option("--a-file", construct_o.a_file, "Target prefix a_1, a_2, ...");
    construct_cmd->add_flag("--repeat-last-delta", construct_o.repeat_last_delta,
                            "Continue the prefix by repeating its last difference");
    construct_cmd->add_option("--family", construct_o.family, "Family spec as the target");
    construct_cmd->add_option("--depth", construct_o.depth, "Number of jumps to construct")
        ->check(CLI::Range(2, 100000));
    add_common(construct_cmd, construct_c, {"json"});

    UniqueOpts unique_o;
    Common unique_c;
    auto* unique = app.add_subcommand("unique", "Uniqueness verdicts for consecutive shadow pairs");
    unique->add_option("--range", unique_o.range, "Sweep all pairs 2 <= a < a' <= R");
    unique->add_option("--mode", unique_o.mode, "e8 (open admissible interval) | e18 (closed jump interval)")
        ->check(CLI::IsMember({"e8", "e18"}));
    unique->add_option("--a-file", unique_o.a_file, "Check consecutive pairs of this sequence");
    unique->add_option("--sample", unique_o.sample, "Check K pairs drawn from the range with --seed");
    add_common(unique, unique_c, {"csv"});

    FamilyOpts family_o;
    Common family_c;
    auto* family = app.add_subcommand("family", "Closed-form shadow/denominator families");
    family->add_option("--spec", family_o.spec, "geometric:a=2,r=3 | arithmetic:a=3,d=2 | fibonacci")->required();
    family->add_option("--terms", family_o.terms, "Number of terms");
    family->add_flag("--theta-enclosure", family_o.theta_enclosure, "Append a certified enclosure of theta");
    family->add_flag("--verify", family_o.verify, "Check every b_n inside its jump interval");
    add_common(family, family_c, {"csv"});

    ClassifyOpts classify_o;
    Common classify_c;
    auto* classify_cmd = app.add_subcommand("classify", "Evidence on whether a pair is weak-greedy producible");
    classify_cmd->add_option("--a-file", classify_o.a_file, "Shadow values a_n");
    classify_cmd->add_option("--b-file", classify_o.b_file, "Denominators b_n");
    classify_cmd->add_option("--family", classify_o.family, "Family spec (declares the exact ratio limit)");
    classify_cmd->add_option("--terms", classify_o.terms, "Prefix length for --family");
    classify_cmd->add_option("--t-grid", classify_o.t_grid, "Comma-separated t values as P/Q");
    add_common(classify_cmd, classify_c, {"json"});

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    auto dispatch = [&](std::ostream& sink) {
        if (expand->parsed()) return cmd_expand(expand_o, expand_c, sink);
        if (verify->parsed()) return cmd_verify(verify_o, verify_c, sink);
        if (construct_cmd->parsed()) return cmd_construct(construct_o, construct_c, sink);
        if (unique->parsed()) return cmd_unique(unique_o, unique_c, sink);
        if (family->parsed()) return cmd_family(family_o, family_c, sink);
        return cmd_classify(classify_o, classify_c, sink);
    };
    const Common* common = expand->parsed()          ? &expand_c
                           : verify->parsed()        ? &verify_c
                           : construct_cmd->parsed() ? &construct_c
                           : unique->parsed()        ? &unique_c
                           : family->parsed()        ? &family_c
                                                     : &classify_c;

    try {
        std::ofstream file;
        if (!common->output.empty()) {
            file.open(common->output, std::ios::binary);
            if (!file) throw UsageError("cannot write '" + common->output + "'");
        }
        dispatch(common->output.empty() ? out : file);
    } catch (const CheckFailed& f) {
        err << f.message << '\n';
        return kExitCheckFailed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitOk;
}

} // namespace unitfrac::cli
