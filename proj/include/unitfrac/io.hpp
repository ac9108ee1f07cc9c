#pragma once

// Wire formats: rationals as "P/Q" strings, integers as decimal strings,
// sequence files as one decimal integer per LF-terminated line.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include <json.hpp>

#include "unitfrac/construction.hpp"
#include "unitfrac/diagnostics.hpp"
#include "unitfrac/greedy.hpp"
#include "unitfrac/interval.hpp"
#include "unitfrac/uniqueness.hpp"

namespace unitfrac::io {

using Json = nlohmann::ordered_json;

// Throws ParseError on an empty input or any line that is not a decimal integer.
std::vector<Integer> read_sequence(std::istream& in);
std::vector<Integer> read_sequence_file(const std::filesystem::path& path);
void write_sequence(std::ostream& out, std::span<const Integer> values);

Json to_json(std::span<const Integer> values);
Json to_json(std::span<const Rational> values);
Json to_json(const RationalInterval& iv);

// {"theta", "t", "lambda", "selection", "last_greedy", "a", "b", "residuals"}
Json run_to_json(const WeakGreedyRun& run);
// Rebuilds the run and re-checks its invariants; throws ParseError on mismatch.
WeakGreedyRun run_from_json(const Json& doc);

Json construction_to_json(const ConstructionResult& result);
Json classification_to_json(const ClassificationReport& report);
Json ratio_bounds_to_json(const RatioBoundsReport& report);

// n,a_n,a_next,case_tag,formula_unique,oracle_count,k_n,agree
void write_verdict_csv_header(std::ostream& out);
void write_verdict_csv_row(std::ostream& out, const UniquenessVerdict& v);

} // namespace unitfrac::io
