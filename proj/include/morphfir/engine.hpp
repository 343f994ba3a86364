// engine.hpp - synchronous cycle-level execution of a configured RC region
//
// Produces numeric and (optionally) symbolic traces. A symbolic cell value
// is the multiset of (sample_index, weight_index) products accumulated in
// the cell, the machine-readable analog of spreadsheet cell formulas like
// "x2w0+x1w1+x0w2". Arithmetic is exact signed 64-bit with overflow
// detection; sample indices outside the input read as zero.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "morphfir/array.hpp"

namespace morphfir {

struct MappingPlan; // mappings.hpp

struct Term {
    int sample_index = 0;
    int weight_index = 0;
    auto operator<=>(const Term&) const = default;
};

// Multiset of product terms in canonical (weight_index, sample_index) order.
struct SymbolicValue {
    std::vector<Term> terms;

    void insert(Term t);
    void merge(const SymbolicValue& other);
    // Sum of x[sample]*w[weight] with x zero-padded outside [0, len).
    std::int64_t evaluate(std::span<const std::int64_t> x,
                          std::span<const std::int64_t> w) const;

    bool operator==(const SymbolicValue&) const = default;
};

// Canonical figure notation: terms ascending by weight index, negative
// sample indices rendered without parentheses ("x-2w2"); empty set -> "0".
std::string render_symbolic(const SymbolicValue& v);

struct CellValue {
    std::int64_t numeric = 0;
    std::optional<SymbolicValue> symbolic;
};

struct ArrayState {
    int cycle = 0;
    Region region;
    std::vector<CellValue> cells; // row-major over region

    const CellValue& at(int row, int col) const { return cells[row * region.cols + col]; }
    CellValue& at(int row, int col) { return cells[row * region.cols + col]; }
};

// All-zero cycle-0 state; with_symbolic seeds every cell with an empty
// term multiset so the whole trace carries formulas.
ArrayState initial_state(Region region, bool with_symbolic);

// Per-row sample index fed on the operand bus this cycle. Indices may be
// negative or beyond the input; both read as zero-valued samples.
using BusFrame = std::vector<int>;

struct Trace {
    std::vector<ArrayState> states; // cycles 0..T
    std::vector<BusFrame> frames;   // frames[t-1] was applied at cycle t
};

// One synchronous update: every cell reads its bus sample and its port-B
// producer's *old* value, then all cells latch together.
// Requires a ColumnBroadcast assignment that passed validate_assignment.
ArrayState step(const ArrayState& state,
                const ContextAssignment& assign,
                const BusFrame& frame,
                std::span<const std::int64_t> x,
                std::span<const std::int64_t> w);

// A completed output observed in a cell: y[output_index] was available in
// `coord` at `cycle`.
struct ExtractedOutput {
    int cycle = 0;
    CellCoord coord{};
    int output_index = 0;
    std::int64_t value = 0;
};

struct RunResult {
    Trace trace;
    std::vector<ExtractedOutput> outputs; // (cycle, row) order
};

// Drives step over the plan's bus schedule for cycles 1..n_cycles and
// records the plan's extraction events with their observed values. Events
// beyond the interesting y-range are still emitted; callers trim.
RunResult run(const MappingPlan& plan,
              std::span<const std::int64_t> x,
              int n_cycles,
              bool symbolic = false);

} // namespace morphfir
