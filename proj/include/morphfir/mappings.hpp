// mappings.hpp - executable FIR mapping plans for the RC array
//
// Three generators, all column-broadcast and all sharing the figure
// orientation: column 0 holds the highest tap w_{N-1}, column N-1 the
// newest tap w_0, so the last column accumulates complete outputs.
//
//   basic     - B chains West; one burst of N outputs every N cycles.
//   optimized - same context words, input stream rearranged with stride N
//               in blocks of 2N-1 cycles; N^2 outputs per block.
//   improved  - B chains SouthWest (diagonal link required); sequential
//               input, two outputs per cycle from rows 0 and 1.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "morphfir/array.hpp"
#include "morphfir/engine.hpp"
#include "morphfir/perf.hpp"

namespace morphfir {

enum class MappingKind { Basic, Optimized, Improved };

const char* to_string(MappingKind kind);
// Inverse of to_string; nullopt on unknown text.
std::optional<MappingKind> mapping_kind_from(const std::string& text);

// Tap coefficients w_0..w_{N-1}; N is the filter order.
struct TapVector {
    std::vector<std::int64_t> weights;

    int order() const { return static_cast<int>(weights.size()); }
};

// Scheduled fact: y[output_index] is complete in `coord` at `cycle`.
struct ExtractionEvent {
    int cycle = 1;
    CellCoord coord{};
    int output_index = 0;
};

// A complete executable mapping. Schedules are pure functions of the
// cycle so any horizon can be materialized; plans are immutable values.
struct MappingPlan {
    MappingKind kind = MappingKind::Basic;
    TapVector taps;
    ArrayConfig config;
    Region region;
    ContextAssignment assignment; // always ColumnBroadcast
    std::function<BusFrame(int)> bus_frame; // cycle >= 1
    // All events with cycle <= horizon, in (cycle, row) order.
    std::function<std::vector<ExtractionEvent>(int)> extraction;
    ThroughputModel writeback;
};

// Requires config.rows >= N and cols >= N (top-left NxN subregion).
MappingPlan plan_basic(const TapVector& taps, const ArrayConfig& cfg);

// Same context words as plan_basic; requires the same region.
MappingPlan plan_optimized(const TapVector& taps, const ArrayConfig& cfg);

// Requires diagonal_enabled and config.rows >= N+1, cols >= N; the active
// region is (N+1) rows x N columns.
MappingPlan plan_improved(const TapVector& taps, const ArrayConfig& cfg);

MappingPlan make_plan(MappingKind kind, const TapVector& taps, const ArrayConfig& cfg);

// The optimized mapping's input stream, row-major per cycle, truncated to
// the first `length` entries. For order 3: 0,3,6,1,4,7,2,5,8,...
// Display helper; the executable truth is the bus schedule.
std::vector<int> om_input_order(int length, int order);

} // namespace morphfir
