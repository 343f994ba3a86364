// perf.hpp - closed-form throughput, speedup and comparison constants
//
// All rates are exact rationals (samples per cycle); decimal rendering
// happens only at the reporting boundary. A mapping's cost model is the
// triple (samples per burst, compute cycles, write-back cycles); write-back
// is strictly serial with compute.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "morphfir/errors.hpp"

namespace morphfir {

enum class MappingKind; // mappings.hpp

using Rational = boost::rational<std::int64_t>;

struct ThroughputModel {
    std::int64_t samples_per_burst = 1;
    std::int64_t compute_cycles = 1;
    std::int64_t writeback_cycles = 0;

    auto operator<=>(const ThroughputModel&) const = default;
};

// Basic -> (N, N, 1); Optimized -> (N^2, 2N-1, N); Improved -> (2, 1, 1).
ThroughputModel model_for(MappingKind kind, int order);

Rational rate(const ThroughputModel& m, bool include_writeback);
Rational rate(MappingKind kind, int order, bool include_writeback);

// Rate ratio against the basic mapping under the same write-back setting.
// Closed forms: OM no-wb N^2/(2N-1), OM wb N(N+1)/(3N-1); IM no-wb 2,
// IM wb (N+1)/N. Throws UndefinedForBasic for the basic mapping itself.
Rational speedup(MappingKind kind, int order, bool include_writeback);

double rate_mhz(MappingKind kind, int order, double clock_mhz, bool include_writeback);

struct RateReport {
    MappingKind kind;
    int order = 1;
    Rational rate_no_wb;
    Rational rate_wb;
    double mhz_wb = 0.0;
    Rational speedup_vs_basic_wb; // 1 for the basic mapping itself
};

RateReport rate_report(MappingKind kind, int order, double clock_mhz);

// Observed steady throughput: events extracted in cycles (warmup, horizon]
// divided by the window length, as an exact rational.
// Throws EmptyWindow when horizon <= warmup.
template <class EventRange>
Rational measured_throughput(const EventRange& events, int warmup, int horizon) {
    if (horizon <= warmup)
        throw EmptyWindow("measured_throughput: empty window (horizon <= warmup)");
    std::int64_t count = 0;
    for (const auto& e : events)
        if (e.cycle > warmup && e.cycle <= horizon)
            ++count;
    return Rational(count, horizon - warmup);
}

// One row of the published FPGA-vs-improved-mapping comparison.
struct FpgaDatum {
    int filter_taps = 0;
    std::string device;
    double fpga_rate_mhz_lo = 0.0; // lo == hi when a single figure
    double fpga_rate_mhz_hi = 0.0;
    double device_clock_mhz = 0.0;
    double morphosys_rate_mhz = 100.0;
    double morphosys_speedup = 0.0; // improved mapping over the FPGA

    // Rows the improved mapping would need for this tap count.
    int implied_min_rows() const { return filter_taps + 1; }
};

std::vector<FpgaDatum> fpga_comparison();

} // namespace morphfir
