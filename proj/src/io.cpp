#include "unitfrac/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "unitfrac/errors.hpp"

namespace unitfrac::io {

namespace {

std::vector<Integer> integers_from_json(const Json& arr, const char* key) {
    if (!arr.is_array()) throw ParseError(std::string("'") + key + "' must be an array");
    std::vector<Integer> out;
    out.reserve(arr.size());
    for (const auto& v : arr) {
        if (!v.is_string()) throw ParseError(std::string("'") + key + "' entries must be decimal strings");
        out.push_back(parse_integer(v.get<std::string>()));
    }
    return out;
}

const Json& field(const Json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return doc.at(key);
}

std::string string_field(const Json& doc, const char* key) {
    const Json& v = field(doc, key);
    if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

} // namespace

std::vector<Integer> read_sequence(std::istream& in) {
    std::vector<Integer> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        try {
            out.push_back(parse_integer(line));
        } catch (const ParseError&) {
            throw ParseError("line " + std::to_string(line_no) + ": expected a decimal integer, got '" + line + "'");
        }
    }
    if (out.empty()) throw ParseError("sequence input is empty");
    return out;
}

std::vector<Integer> read_sequence_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open sequence file '" + path.string() + "'");
    return read_sequence(in);
}

void write_sequence(std::ostream& out, std::span<const Integer> values) {
    for (const auto& v : values) out << to_string(v) << '\n';
}

Json to_json(std::span<const Integer> values) {
    Json arr = Json::array();
    for (const auto& v : values) arr.push_back(to_string(v));
    return arr;
}

Json to_json(std::span<const Rational> values) {
    Json arr = Json::array();
    for (const auto& v : values) arr.push_back(v.to_string());
    return arr;
}

Json to_json(const RationalInterval& iv) {
    Json out;
    out["lo"] = iv.lo().to_string();
    out["hi"] = iv.bounded() ? Json(iv.hi().to_string()) : Json("inf");
    out["lo_open"] = iv.lo_open();
    out["hi_open"] = iv.hi_open();
    if (iv.bounded()) {
        out["width"] = iv.width().to_string();
        // display only
        out["approx"] = iv.midpoint().to_decimal(12);
    }
    return out;
}

Json run_to_json(const WeakGreedyRun& run) {
    Json out;
    out["theta"] = run.theta.to_string();
    out["t"] = run.policy.t.to_string();
    out["lambda"] = run.policy.lambda.to_string();
    out["selection"] = to_string(run.policy.selection);
    out["last_greedy"] = run.policy.last_greedy;
    out["a"] = to_json(run.a);
    out["b"] = to_json(run.b);
    out["residuals"] = to_json(run.residuals);
    return out;
}

WeakGreedyRun run_from_json(const Json& doc) {
    WeakGreedyRun run;
    run.theta = Rational::parse(string_field(doc, "theta"));
    run.policy.t = Rational::parse(string_field(doc, "t"));
    run.policy.lambda = IndexSet::parse(string_field(doc, "lambda"));
    run.policy.selection = doc.contains("selection") ? parse_bselection(string_field(doc, "selection"))
                                                     : BSelection::Explicit;
    if (doc.contains("last_greedy")) run.policy.last_greedy = field(doc, "last_greedy").get<bool>();
    run.a = integers_from_json(field(doc, "a"), "a");
    run.b = integers_from_json(field(doc, "b"), "b");
    const Json& res = field(doc, "residuals");
    if (!res.is_array()) throw ParseError("'residuals' must be an array");
    for (const auto& v : res) {
        if (!v.is_string()) throw ParseError("'residuals' entries must be \"P/Q\" strings");
        run.residuals.push_back(Rational::parse(v.get<std::string>()));
    }
    if (run.policy.selection == BSelection::Explicit) run.policy.explicit_b = run.b;
    if (auto bad = find_run_violation(run)) throw ParseError("run document is inconsistent: " + *bad);
    return run;
}

Json construction_to_json(const ConstructionResult& result) {
    Json out;
    out["verification_depth"] = result.verification_depth;
    Json jumps = Json::array();
    for (auto n : result.jump_indices()) jumps.push_back(n);
    out["jump_indices"] = jumps;
    out["a_prefix"] = to_json(result.a_prefix);
    out["b_prefix"] = to_json(result.b_prefix);
    out["theta_j_choices"] = to_json(result.headrooms);
    out["filler_values"] = to_json(result.filler_values());
    out["theta_enclosure"] = to_json(result.theta_enclosure);
    out["step3_certified"] = result.step3_certified;
    bool step4 = !result.first_uncertified().has_value();
    out["step4_certified"] = step4;
    if (!step4) out["step4_first_failure"] = *result.first_uncertified();
    return out;
}

Json classification_to_json(const ClassificationReport& report) {
    Json out;
    out["prefix_length"] = report.prefix_length;
    out["a_ratios"] = to_json(report.a_ratios);
    out["b_over_a"] = to_json(report.b_over_a);
    Json grid = Json::array();
    for (const auto& w : report.witnesses) {
        Json item;
        item["t"] = w.t.to_string();
        item["count"] = w.total;
        item["late_count"] = w.late;
        grid.push_back(item);
    }
    out["min_t_witness"] = grid;
    out["late_ratio_max"] = report.late_ratio_max.to_string();
    out["late_ratio_threshold"] = report.late_ratio_threshold.to_string();
    out["verdict"] = to_string(report.verdict);
    out["exact"] = report.exact;
    if (report.declared_limit) {
        Json lim;
        lim["description"] = report.declared_limit->description;
        if (report.declared_limit->exact) lim["value"] = report.declared_limit->exact->to_string();
        lim["exceeds_one"] = report.declared_limit->exceeds_one;
        out["closed_form_limit"] = lim;
    } else {
        out["closed_form_limit"] = nullptr;
    }
    return out;
}

Json ratio_bounds_to_json(const RatioBoundsReport& report) {
    Json out;
    out["t"] = report.t.to_string();
    out["limit"] = report.limit.to_string();
    Json steps = Json::array();
    for (const auto& s : report.steps) {
        Json item;
        item["n"] = s.n;
        item["ratio"] = s.ratio.to_string();
        item["lower"] = s.lower.to_string();
        item["upper"] = s.upper.to_string();
        item["lower_holds"] = s.lower_holds;
        item["upper_holds"] = s.upper_holds;
        steps.push_back(item);
    }
    out["steps"] = steps;
    out["final_ratio"] = report.final_ratio.to_string();
    out["final_distance"] = report.final_distance.to_string();
    out["all_hold"] = report.all_hold();
    return out;
}

void write_verdict_csv_header(std::ostream& out) {
    out << "n,a_n,a_next,case_tag,formula_unique,oracle_count,k_n,agree\n";
}

void write_verdict_csv_row(std::ostream& out, const UniquenessVerdict& v) {
    out << v.index << ',' << to_string(v.a_n) << ',' << to_string(v.a_next) << ',' << to_string(v.tag) << ','
        << (v.formula_unique ? "true" : "false") << ',' << v.oracle_count.to_string() << ','
        << (v.k_n ? to_string(*v.k_n) : std::string()) << ',' << (v.agrees() ? "true" : "false") << '\n';
}

} // namespace unitfrac::io
