// report.hpp - file formats and table/trace rendering behind the CLI
//
// Plan files are JSON with materialized schedules and round-trip
// byte-identically (parse then emit reproduces the exact bytes). Traces
// serialize to CSV, one row per active cell per cycle. Table renderers
// reproduce the published rate/speedup tables at their printed precision.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "morphfir/engine.hpp"
#include "morphfir/mappings.hpp"
#include "morphfir/perf.hpp"

namespace morphfir {

// A plan read from a file only knows its schedules up to the materialized
// horizon; running past it raises HorizonExceeded.
struct LoadedPlan {
    MappingPlan plan;
    int horizon = 0;
};

// Canonical JSON text for a plan with schedules materialized to `horizon`.
std::string emit_plan(const MappingPlan& plan, int horizon);

// Parses and validates. Throws PlanFormatError on malformed input and
// LegalityError (with the violation list in the message) when the stored
// assignment fails validate_assignment.
LoadedPlan parse_plan(const std::string& text);

// CSV with header cycle,row,col,bus_index,numeric,symbolic sorted by
// (cycle,row,col). Cycle-0 rows have an empty bus_index; the symbolic
// column is empty when the trace is numeric-only.
std::string trace_csv(const Trace& trace);

// Extracted outputs as JSON sorted by output index. Outputs whose full tap
// window lies beyond the input are dropped; outputs overlapping the
// zero-padded tail carry "tail": true.
std::string outputs_json(const std::vector<ExtractedOutput>& outputs,
                         int input_len, int order);

struct VerifyMismatch {
    ExtractedOutput got{};
    std::int64_t expected = 0;
};

struct VerifyResult {
    int checked = 0;
    std::optional<VerifyMismatch> mismatch; // first one, in (cycle,row) order
};

// Checks every extracted output against fir_reference; with trim_tail,
// outputs past the end of the input are skipped instead of checked.
VerifyResult verify_outputs(const std::vector<ExtractedOutput>& outputs,
                            std::span<const std::int64_t> x,
                            std::span<const std::int64_t> w,
                            bool trim_tail);

// "n/d", or just "n" when the denominator is 1.
std::string format_rational(const Rational& r);

// Fixed-point with the given decimals, truncated toward zero (the
// published speedup-of-IM table truncates rather than rounds).
std::string format_truncated(const Rational& r, int decimals);

struct TableOptions {
    bool csv = false;     // CSV instead of aligned text
    bool measure = false; // append simulator-measured rates (tables 1 and 4)
    double clock_mhz = 100.0;
};

// Published tables 1..7. Unknown numbers throw Error.
std::string render_table(int table, const TableOptions& opts = {});

// order,speedup pairs of the no-write-back OM speedup N^2/(2N-1).
std::string fig6_csv(const std::vector<int>& orders);

struct SweepOptions {
    bool measure = false;
    double clock_mhz = 100.0;
};

// One RateReport row per (kind, order).
std::string sweep_csv(const std::vector<MappingKind>& kinds,
                      const std::vector<int>& orders,
                      const SweepOptions& opts = {});

// Simulates the mapping over a window aligned to its burst structure and
// returns the steady extraction rate (equals the no-write-back analytic
// rate when the schedule is correct).
Rational measure_rate(MappingKind kind, int order);

// Write via a temp file in the same directory, then rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

} // namespace morphfir
