// engine.cpp - synchronous cycle-level execution with exact arithmetic
#include "morphfir/engine.hpp"

#include <algorithm>
#include <cassert>

#include "morphfir/errors.hpp"
#include "morphfir/mappings.hpp"

namespace morphfir {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b, int cycle, CellCoord at) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r))
        throw ArithmeticOverflow("multiply overflow at cycle " + std::to_string(cycle) +
                                 " cell (" + std::to_string(at.row) + "," +
                                 std::to_string(at.col) + ")");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b, int cycle, CellCoord at) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r))
        throw ArithmeticOverflow("add overflow at cycle " + std::to_string(cycle) + " cell (" +
                                 std::to_string(at.row) + "," + std::to_string(at.col) + ")");
    return r;
}

std::int64_t sample_at(std::span<const std::int64_t> x, int index) {
    if (index < 0 || index >= static_cast<int>(x.size()))
        return 0;
    return x[static_cast<std::size_t>(index)];
}

} // namespace

void SymbolicValue::insert(Term t) {
    auto it = std::lower_bound(terms.begin(), terms.end(), t, [](const Term& a, const Term& b) {
        return std::tie(a.weight_index, a.sample_index) < std::tie(b.weight_index, b.sample_index);
    });
    terms.insert(it, t);
}

void SymbolicValue::merge(const SymbolicValue& other) {
    for (const Term& t : other.terms)
        insert(t);
}

std::int64_t SymbolicValue::evaluate(std::span<const std::int64_t> x,
                                     std::span<const std::int64_t> w) const {
    std::int64_t acc = 0;
    for (const Term& t : terms) {
        assert(t.weight_index >= 0 && t.weight_index < static_cast<int>(w.size()));
        acc = checked_add(acc,
                          checked_mul(sample_at(x, t.sample_index),
                                      w[static_cast<std::size_t>(t.weight_index)], 0, {}),
                          0, {});
    }
    return acc;
}

std::string render_symbolic(const SymbolicValue& v) {
    if (v.terms.empty())
        return "0";
    std::string out;
    for (const Term& t : v.terms) {
        if (!out.empty())
            out += '+';
        out += 'x';
        out += std::to_string(t.sample_index);
        out += 'w';
        out += std::to_string(t.weight_index);
    }
    return out;
}

ArrayState initial_state(Region region, bool with_symbolic) {
    ArrayState s;
    s.cycle = 0;
    s.region = region;
    s.cells.resize(static_cast<std::size_t>(region.cell_count()));
    if (with_symbolic)
        for (CellValue& c : s.cells)
            c.symbolic = SymbolicValue{};
    return s;
}

ArrayState step(const ArrayState& state,
                const ContextAssignment& assign,
                const BusFrame& frame,
                std::span<const std::int64_t> x,
                std::span<const std::int64_t> w) {
    const Region region = state.region;
    assert(assign.mode == BroadcastMode::ColumnBroadcast);
    assert(static_cast<int>(assign.words.size()) == region.cols);
    assert(static_cast<int>(frame.size()) == region.rows);

    ArrayState next = state;
    next.cycle = state.cycle + 1;

    for (int r = 0; r < region.rows; ++r) {
        for (int c = 0; c < region.cols; ++c) {
            const ContextWord& word = assign.words[static_cast<std::size_t>(c)];
            assert(word.weight_index >= 0 && word.weight_index < static_cast<int>(w.size()));
            const CellCoord here{r, c};
            const int bus_index = frame[static_cast<std::size_t>(r)];

            // Port-B producer's value from the *old* state; reads outside
            // the active region (or off the array) are zero, like the
            // figure's last-row diagonal reads.
            const CellValue* b_src = nullptr;
            switch (word.src_b.kind) {
            case PortSource::Kind::Zero:
                break;
            case PortSource::Kind::West:
                if (region.contains({r, c - 1}))
                    b_src = &state.at(r, c - 1);
                break;
            case PortSource::Kind::SouthWest:
                if (region.contains({r + 1, c - 1}))
                    b_src = &state.at(r + 1, c - 1);
                break;
            case PortSource::Kind::OperandBus:
                break; // handled below; has no symbolic form
            default:
                assert(false && "validate_assignment admits only executable sources");
            }

            std::int64_t b_value = b_src ? b_src->numeric : 0;
            if (word.src_b.kind == PortSource::Kind::OperandBus)
                b_value = sample_at(x, bus_index);

            const std::int64_t product =
                checked_mul(sample_at(x, bus_index),
                            w[static_cast<std::size_t>(word.weight_index)], next.cycle, here);
            CellValue& cell = next.at(r, c);
            cell.numeric = checked_add(product, b_value, next.cycle, here);

            if (cell.symbolic) {
                if (word.src_b.kind == PortSource::Kind::OperandBus)
                    throw Error("symbolic trace does not support a bus-fed port B");
                SymbolicValue sym;
                sym.insert({bus_index, word.weight_index});
                if (b_src && b_src->symbolic)
                    sym.merge(*b_src->symbolic);
                cell.symbolic = std::move(sym);
            }
        }
    }
    return next;
}

RunResult run(const MappingPlan& plan,
              std::span<const std::int64_t> x,
              int n_cycles,
              bool symbolic) {
    RunResult result;
    ArrayState state = initial_state(plan.region, symbolic);
    result.trace.states.push_back(state);

    std::vector<ExtractionEvent> events = plan.extraction(n_cycles);
    std::size_t next_event = 0;

    for (int t = 1; t <= n_cycles; ++t) {
        BusFrame frame = plan.bus_frame(t);
        state = step(state, plan.assignment, frame, x, plan.taps.weights);
        result.trace.frames.push_back(std::move(frame));
        result.trace.states.push_back(state);

        for (; next_event < events.size() && events[next_event].cycle == t; ++next_event) {
            const ExtractionEvent& e = events[next_event];
            result.outputs.push_back(
                {e.cycle, e.coord, e.output_index, state.at(e.coord.row, e.coord.col).numeric});
        }
    }
    return result;
}

} // namespace morphfir
