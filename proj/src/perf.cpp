// perf.cpp - analytic throughput model and comparison constants
#include "morphfir/perf.hpp"

#include <cassert>

#include "morphfir/mappings.hpp"

namespace morphfir {

ThroughputModel model_for(MappingKind kind, int order) {
    assert(order >= 1);
    const std::int64_t n = order;
    switch (kind) {
    case MappingKind::Basic: return {n, n, 1};
    case MappingKind::Optimized: return {n * n, 2 * n - 1, n};
    case MappingKind::Improved: return {2, 1, 1};
    }
    throw Error("unknown mapping kind");
}

Rational rate(const ThroughputModel& m, bool include_writeback) {
    const std::int64_t cycles =
        include_writeback ? m.compute_cycles + m.writeback_cycles : m.compute_cycles;
    return Rational(m.samples_per_burst, cycles);
}

Rational rate(MappingKind kind, int order, bool include_writeback) {
    return rate(model_for(kind, order), include_writeback);
}

Rational speedup(MappingKind kind, int order, bool include_writeback) {
    if (kind == MappingKind::Basic)
        throw UndefinedForBasic("speedup is measured against the basic mapping");
    return rate(kind, order, include_writeback) /
           rate(MappingKind::Basic, order, include_writeback);
}

double rate_mhz(MappingKind kind, int order, double clock_mhz, bool include_writeback) {
    const Rational r = rate(kind, order, include_writeback);
    return boost::rational_cast<double>(r) * clock_mhz;
}

RateReport rate_report(MappingKind kind, int order, double clock_mhz) {
    RateReport rep;
    rep.kind = kind;
    rep.order = order;
    rep.rate_no_wb = rate(kind, order, false);
    rep.rate_wb = rate(kind, order, true);
    rep.mhz_wb = boost::rational_cast<double>(rep.rate_wb) * clock_mhz;
    rep.speedup_vs_basic_wb =
        kind == MappingKind::Basic ? Rational(1) : speedup(kind, order, true);
    return rep;
}

std::vector<FpgaDatum> fpga_comparison() {
    // Published comparison rows; FPGA device clocks are 85 MHz (XC3195)
    // and 80 MHz (XC4020).
    return {
        {11, "XC3195", 30.0, 30.0, 85.0, 100.0, 3.3},
        {11, "XC3195", 33.3, 33.3, 85.0, 100.0, 3.0},
        {19, "XC4020", 15.0, 20.0, 80.0, 100.0, 5.0},
    };
}

} // namespace morphfir
