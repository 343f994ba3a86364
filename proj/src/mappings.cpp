// mappings.cpp - plan generators for the three FIR mappings
#include "morphfir/mappings.hpp"

#include <cassert>
#include <string>

#include "morphfir/errors.hpp"

namespace morphfir {

const char* to_string(MappingKind kind) {
    switch (kind) {
    case MappingKind::Basic: return "basic";
    case MappingKind::Optimized: return "optimized";
    case MappingKind::Improved: return "improved";
    }
    return "?";
}

std::optional<MappingKind> mapping_kind_from(const std::string& text) {
    if (text == "basic") return MappingKind::Basic;
    if (text == "optimized") return MappingKind::Optimized;
    if (text == "improved") return MappingKind::Improved;
    return std::nullopt;
}

namespace {

// Column 0 holds the highest tap w_{N-1}, column j holds w_{N-1-j}; the
// last column accumulates the full output. chain is West for basic and
// optimized, SouthWest for improved.
ContextAssignment column_words(int order, PortSource chain) {
    ContextAssignment assign;
    assign.mode = BroadcastMode::ColumnBroadcast;
    assign.words.push_back({CellOp::Mul, order - 1, PortSource::zero()});
    for (int c = 1; c < order; ++c)
        assign.words.push_back({CellOp::MulAdd, order - 1 - c, chain});
    return assign;
}

void check_region(const MappingPlan& plan) {
    [[maybe_unused]] const auto violations =
        validate_assignment(plan.assignment, plan.region, plan.config);
    assert(violations.empty());
}

} // namespace

MappingPlan plan_basic(const TapVector& taps, const ArrayConfig& cfg) {
    const int n = taps.order();
    if (n < 1)
        throw RegionTooSmall("basic mapping needs at least 1 tap");
    if (cfg.rows < n || cfg.cols < n)
        throw RegionTooSmall("basic mapping of " + std::to_string(n) + " taps needs a " +
                             std::to_string(n) + "x" + std::to_string(n) + " region; array is " +
                             std::to_string(cfg.rows) + "x" + std::to_string(cfg.cols));

    MappingPlan plan;
    plan.kind = MappingKind::Basic;
    plan.taps = taps;
    plan.config = cfg;
    plan.region = {n, n};
    plan.assignment = column_words(n, PortSource::west());
    plan.bus_frame = [n](int t) {
        BusFrame f(static_cast<std::size_t>(n));
        for (int r = 0; r < n; ++r)
            f[static_cast<std::size_t>(r)] = t - n + r;
        return f;
    };
    // One burst of N finished outputs in the last column every N cycles.
    plan.extraction = [n](int horizon) {
        std::vector<ExtractionEvent> events;
        for (int t = n; t <= horizon; t += n)
            for (int r = 0; r < n; ++r)
                events.push_back({t, {r, n - 1}, t - n + r});
        return events;
    };
    plan.writeback = model_for(MappingKind::Basic, n);
    check_region(plan);
    return plan;
}

MappingPlan plan_optimized(const TapVector& taps, const ArrayConfig& cfg) {
    const int n = taps.order();
    if (n < 1)
        throw RegionTooSmall("optimized mapping needs at least 1 tap");
    if (cfg.rows < n || cfg.cols < n)
        throw RegionTooSmall("optimized mapping of " + std::to_string(n) + " taps needs a " +
                             std::to_string(n) + "x" + std::to_string(n) + " region; array is " +
                             std::to_string(cfg.rows) + "x" + std::to_string(cfg.cols));

    const int block = 2 * n - 1;

    MappingPlan plan;
    plan.kind = MappingKind::Optimized;
    plan.taps = taps;
    plan.config = cfg;
    plan.region = {n, n};
    plan.assignment = column_words(n, PortSource::west()); // same words as basic
    // Stream rearranged with stride N: block b, in-block cycle c feeds row r
    // the sample b*N^2 + (c-1) + r*N.
    plan.bus_frame = [n, block](int t) {
        const int b = (t - 1) / block;
        const int c = (t - 1) % block + 1;
        BusFrame f(static_cast<std::size_t>(n));
        for (int r = 0; r < n; ++r)
            f[static_cast<std::size_t>(r)] = b * n * n + (c - 1) + r * n;
        return f;
    };
    plan.extraction = [n, block](int horizon) {
        std::vector<ExtractionEvent> events;
        for (int t = 1; t <= horizon; ++t) {
            const int b = (t - 1) / block;
            const int c = (t - 1) % block + 1;
            if (b == 0 && c <= n - 1) {
                // Fill outputs: valid only in block 0 where the missing
                // older taps fall in the zero pre-history.
                events.push_back({t, {0, n - 1}, c - 1});
            } else if (c >= n) {
                for (int r = 0; r < n; ++r)
                    events.push_back({t, {r, n - 1}, b * n * n + (c - 1) + r * n});
            }
        }
        return events;
    };
    plan.writeback = model_for(MappingKind::Optimized, n);
    check_region(plan);
    return plan;
}

MappingPlan plan_improved(const TapVector& taps, const ArrayConfig& cfg) {
    const int n = taps.order();
    if (n < 1)
        throw RegionTooSmall("improved mapping needs at least 1 tap");
    if (!cfg.diagonal_enabled)
        throw DiagonalRequired("improved mapping needs the diagonal (southwest) link; "
                               "enable it on the array config");
    if (cfg.rows < n + 1 || cfg.cols < n)
        throw RegionTooSmall(
            "improved mapping of " + std::to_string(n) + " taps needs " + std::to_string(n + 1) +
            " rows and " + std::to_string(n) + " columns; array is " + std::to_string(cfg.rows) +
            "x" + std::to_string(cfg.cols) + " (at most " + std::to_string(cfg.rows - 1) +
            " taps on " + std::to_string(cfg.rows) + " rows)");

    MappingPlan plan;
    plan.kind = MappingKind::Improved;
    plan.taps = taps;
    plan.config = cfg;
    plan.region = {n + 1, n};
    plan.assignment = column_words(n, PortSource::south_west());
    // Sequential input, two new samples per cycle: row r gets
    // 2(t-1) + r - (N-1).
    plan.bus_frame = [n, rows = n + 1](int t) {
        BusFrame f(static_cast<std::size_t>(rows));
        for (int r = 0; r < rows; ++r)
            f[static_cast<std::size_t>(r)] = 2 * (t - 1) + r - (n - 1);
        return f;
    };
    // Rows 0 and 1 of the last column hold y_{2t+r-N-1}; the diagonal
    // chain of row r reaches row r+N-1, hence the N+1-row region.
    plan.extraction = [n](int horizon) {
        std::vector<ExtractionEvent> events;
        for (int t = 1; t <= horizon; ++t)
            for (int r = 0; r < 2; ++r) {
                const int k = 2 * t + r - n - 1;
                if (k >= 0)
                    events.push_back({t, {r, n - 1}, k});
            }
        return events;
    };
    plan.writeback = model_for(MappingKind::Improved, n);
    check_region(plan);
    return plan;
}

MappingPlan make_plan(MappingKind kind, const TapVector& taps, const ArrayConfig& cfg) {
    switch (kind) {
    case MappingKind::Basic: return plan_basic(taps, cfg);
    case MappingKind::Optimized: return plan_optimized(taps, cfg);
    case MappingKind::Improved: return plan_improved(taps, cfg);
    }
    throw Error("unknown mapping kind");
}

std::vector<int> om_input_order(int length, int order) {
    assert(order >= 1);
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(length > 0 ? length : 0));
    const int block = 2 * order - 1;
    for (int t = 1; static_cast<int>(out.size()) < length; ++t) {
        const int b = (t - 1) / block;
        const int c = (t - 1) % block + 1;
        for (int r = 0; r < order && static_cast<int>(out.size()) < length; ++r)
            out.push_back(b * order * order + (c - 1) + r * order);
    }
    return out;
}

} // namespace morphfir
