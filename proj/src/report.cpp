#include "morphfir/report.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>

#include "json.hpp"

#include "morphfir/reference.hpp"

namespace morphfir {

using json = nlohmann::ordered_json;

namespace {

const char* op_name(CellOp op) { return op == CellOp::Mul ? "mul" : "muladd"; }

std::string fmt_fixed(double v, int dp) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", dp, v);
    return buf;
}

// %g keeps "30" and "33.3" as printed in the comparison data.
std::string fmt_compact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::int64_t pow10_i(int dp) {
    std::int64_t s = 1;
    while (dp-- > 0) s *= 10;
    return s;
}

// q is the magnitude already scaled by 10^dp.
std::string assemble_decimal(std::int64_t q, int dp, bool negative) {
    std::string s;
    if (negative && q != 0) s += '-';
    if (dp == 0) {
        s += std::to_string(q);
        return s;
    }
    const std::int64_t scale = pow10_i(dp);
    s += std::to_string(q / scale);
    std::string frac = std::to_string(q % scale);
    s += '.';
    s += std::string(static_cast<size_t>(dp) - frac.size(), '0');
    s += frac;
    return s;
}

// Exact half-away-from-zero rounding, no doubles involved.
std::string format_rounded(const Rational& r, int dp) {
    const bool neg = r < Rational(0);
    const std::int64_t num = std::llabs(r.numerator());
    const std::int64_t den = r.denominator();
    const std::int64_t q = (num * pow10_i(dp) * 2 + den) / (2 * den);
    return assemble_decimal(q, dp, neg);
}

std::string join_cells(const std::vector<std::string>& cells, char sep) {
    std::string line;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) line += sep;
        line += cells[i];
    }
    return line;
}

// Caption and notes appear only in the aligned text form; CSV is data-only.
std::string compose_table(const std::string& caption,
                          const std::vector<std::vector<std::string>>& rows,
                          const std::vector<std::string>& notes,
                          bool csv) {
    std::ostringstream out;
    if (csv) {
        for (const auto& r : rows) out << join_cells(r, ',') << '\n';
        return out.str();
    }
    std::vector<size_t> width;
    for (const auto& r : rows) {
        if (width.size() < r.size()) width.resize(r.size(), 0);
        for (size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    out << caption << '\n';
    for (const auto& r : rows) {
        std::string line;
        for (size_t i = 0; i < r.size(); ++i) {
            line += r[i];
            if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out << line << '\n';
    }
    for (const auto& n : notes) out << n << '\n';
    return out.str();
}

std::string tap_label(int n) { return std::to_string(n) + "-tap"; }

constexpr int kTableOrders[] = {8, 16, 32, 64};

std::string table_rates(MappingKind other, const TableOptions& o) {
    const bool om = other == MappingKind::Optimized;
    const char* name = om ? "optimized" : "improved";
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head = {"filter", "bm_samples", "bm_cycles", "bm_rate_mhz"};
    const std::string p = om ? "om_" : "im_";
    head.push_back(p + "samples");
    head.push_back(p + "cycles");
    head.push_back(p + "rate_mhz");
    if (o.measure) {
        head.push_back("bm_measured_rate");
        head.push_back(p + "measured_rate");
    }
    rows.push_back(head);
    for (int n : kTableOrders) {
        const auto bm = model_for(MappingKind::Basic, n);
        const auto ot = model_for(other, n);
        std::vector<std::string> r = {
            tap_label(n),
            std::to_string(bm.samples_per_burst),
            std::to_string(bm.compute_cycles + bm.writeback_cycles),
            fmt_fixed(rate_mhz(MappingKind::Basic, n, o.clock_mhz, true), 2),
            std::to_string(ot.samples_per_burst),
            std::to_string(ot.compute_cycles + ot.writeback_cycles),
            fmt_fixed(rate_mhz(other, n, o.clock_mhz, true), om ? 1 : 0),
        };
        if (o.measure) {
            r.push_back(format_rational(measure_rate(MappingKind::Basic, n)));
            r.push_back(format_rational(measure_rate(other, n)));
        }
        rows.push_back(std::move(r));
    }
    std::string caption = std::string("Table ") + (om ? "1" : "4") + ": basic and " + name +
                          " mapping throughput (write-back included, " + fmt_compact(o.clock_mhz) +
                          " MHz clock)";
    std::vector<std::string> notes;
    if (o.measure)
        notes.push_back("Measured columns are simulated steady rates in samples/cycle, write-back excluded.");
    return compose_table(caption, rows, notes, o.csv);
}

std::string table_formulas(MappingKind other, bool csv) {
    const bool om = other == MappingKind::Optimized;
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"setting", "basic_rate", om ? "optimized_rate" : "improved_rate", "speedup"});
    if (om) {
        rows.push_back({"no_writeback", "1", "N^2/(2N-1)", "N^2/(2N-1)"});
        rows.push_back({"with_writeback", "N/(N+1)", "N^2/(3N-1)", "N(N+1)/(3N-1)"});
    } else {
        rows.push_back({"no_writeback", "1", "2", "2"});
        rows.push_back({"with_writeback", "N/(N+1)", "1", "(N+1)/N"});
    }
    std::string caption = std::string("Table ") + (om ? "2" : "5") +
                          ": closed-form rates in samples/cycle for an N-tap filter, " +
                          (om ? "optimized" : "improved") + " vs basic";
    return compose_table(caption, rows, {}, csv);
}

std::string table_speedups(MappingKind other, const TableOptions& o) {
    const bool om = other == MappingKind::Optimized;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head = {"filter", "speedup"};
    if (!om) head.push_back("note");
    rows.push_back(head);
    for (int n : kTableOrders) {
        const Rational s = speedup(other, n, true);
        if (om) {
            rows.push_back({tap_label(n), format_rounded(s, 2)});
        } else {
            std::string note;
            if (n == 8)
                note = "published value 1.24 disagrees with the (N+1)/N model, which gives 1.125";
            rows.push_back({tap_label(n), format_truncated(s, 3), note});
        }
    }
    std::string caption = std::string("Table ") + (om ? "3" : "6") + ": speedup of the " +
                          (om ? "optimized" : "improved") +
                          " mapping over the basic mapping (write-back included)";
    return compose_table(caption, rows, {}, o.csv);
}

std::string table_fpga(const TableOptions& o) {
    const auto data = fpga_comparison();
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"filter", "device", "device_clock_mhz", "fpga_rate_mhz", "im_rate_mhz",
                    "speedup", "rows_needed"});
    for (const auto& d : data) {
        std::string fpga = fmt_compact(d.fpga_rate_mhz_lo);
        if (d.fpga_rate_mhz_hi != d.fpga_rate_mhz_lo)
            fpga += "-" + fmt_compact(d.fpga_rate_mhz_hi);
        rows.push_back({tap_label(d.filter_taps), d.device, fmt_compact(d.device_clock_mhz),
                        fpga, fmt_compact(d.morphosys_rate_mhz), fmt_compact(d.morphosys_speedup),
                        std::to_string(d.implied_min_rows())});
    }
    std::vector<std::string> notes;
    {
        std::ostringstream n1;
        n1 << "Device clocks:";
        std::string prev;
        for (const auto& d : data) {
            if (d.device == prev) continue;
            if (!prev.empty()) n1 << ',';
            n1 << ' ' << d.device << " at " << fmt_compact(d.device_clock_mhz) << " MHz";
            prev = d.device;
        }
        n1 << "; the RC array at " << fmt_compact(data.front().morphosys_rate_mhz) << " MHz.";
        notes.push_back(n1.str());
    }
    {
        std::ostringstream n2;
        n2 << "Improved-mapping rows needed:";
        int prev = -1;
        for (const auto& d : data) {
            if (d.filter_taps == prev) continue;
            if (prev != -1) n2 << ',';
            n2 << ' ' << d.filter_taps << "-tap -> " << d.implied_min_rows();
            prev = d.filter_taps;
        }
        n2 << "; an 8x8 array supports at most 7 taps.";
        notes.push_back(n2.str());
    }
    return compose_table("Table 7: published FPGA FIR rates vs the improved mapping",
                         rows, notes, o.csv);
}

} // namespace

std::string emit_plan(const MappingPlan& plan, int horizon) {
    if (horizon < 0) throw Error("emit_plan: negative horizon");
    json j;
    j["kind"] = to_string(plan.kind);
    j["taps"] = plan.taps.weights;
    json arr;
    arr["rows"] = plan.config.rows;
    arr["cols"] = plan.config.cols;
    arr["quadrant"] = plan.config.quadrant_size;
    arr["diagonal"] = plan.config.diagonal_enabled;
    arr["clock_mhz"] = plan.config.clock_mhz;
    j["array"] = arr;
    json words = json::array();
    for (const auto& w : plan.assignment.words) {
        json jw;
        jw["op"] = op_name(w.op);
        jw["weight_index"] = w.weight_index;
        jw["src_b"] = to_string(w.src_b);
        words.push_back(jw);
    }
    j["assignment"] = words;
    j["horizon"] = horizon;
    json frames = json::array();
    for (int t = 1; t <= horizon; ++t) frames.push_back(plan.bus_frame(t));
    j["bus_frames"] = frames;
    json events = json::array();
    for (const auto& e : plan.extraction(horizon)) {
        json je;
        je["cycle"] = e.cycle;
        je["row"] = e.coord.row;
        je["col"] = e.coord.col;
        je["output_index"] = e.output_index;
        events.push_back(je);
    }
    j["extraction"] = events;
    return j.dump(2) + "\n";
}

LoadedPlan parse_plan(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw PlanFormatError(std::string("plan is not valid JSON: ") + e.what());
    }

    MappingKind kind{};
    TapVector taps;
    ArrayConfig cfg;
    int horizon = 0;
    ContextAssignment assign;
    std::vector<BusFrame> frames;
    std::vector<ExtractionEvent> events;
    try {
        const auto kind_str = j.at("kind").get<std::string>();
        const auto kind_opt = mapping_kind_from(kind_str);
        if (!kind_opt) throw PlanFormatError("unknown mapping kind: " + kind_str);
        kind = *kind_opt;

        for (const auto& t : j.at("taps")) {
            if (!t.is_number_integer()) throw PlanFormatError("taps must be integers");
            taps.weights.push_back(t.get<std::int64_t>());
        }
        if (taps.weights.empty()) throw PlanFormatError("taps must be non-empty");

        const auto& ja = j.at("array");
        cfg.rows = ja.at("rows").get<int>();
        cfg.cols = ja.at("cols").get<int>();
        cfg.quadrant_size = ja.at("quadrant").get<int>();
        cfg.diagonal_enabled = ja.at("diagonal").get<bool>();
        cfg.clock_mhz = ja.at("clock_mhz").get<double>();
        if (cfg.rows < 1 || cfg.cols < 1) throw PlanFormatError("array dimensions must be positive");
        if (cfg.quadrant_size < 1) throw PlanFormatError("quadrant size must be positive");
        if (!(cfg.clock_mhz > 0.0)) throw PlanFormatError("clock_mhz must be positive");

        horizon = j.at("horizon").get<int>();
        if (horizon < 0) throw PlanFormatError("horizon must be >= 0");

        const int order = taps.order();
        for (const auto& jw : j.at("assignment")) {
            ContextWord w;
            const auto op = jw.at("op").get<std::string>();
            if (op == "mul")
                w.op = CellOp::Mul;
            else if (op == "muladd")
                w.op = CellOp::MulAdd;
            else
                throw PlanFormatError("unknown op: " + op);
            w.weight_index = jw.at("weight_index").get<int>();
            if (w.weight_index < 0 || w.weight_index >= order)
                throw PlanFormatError("weight_index " + std::to_string(w.weight_index) +
                                      " out of range for " + std::to_string(order) + " taps");
            const auto src = jw.at("src_b").get<std::string>();
            const auto src_opt = port_source_from(src);
            if (!src_opt) throw PlanFormatError("unknown src_b: " + src);
            w.src_b = *src_opt;
            assign.words.push_back(w);
        }

        const Region region = kind == MappingKind::Improved ? Region{order + 1, order}
                                                            : Region{order, order};

        const auto& jf = j.at("bus_frames");
        if (static_cast<int>(jf.size()) != horizon)
            throw PlanFormatError("bus_frames must hold exactly one frame per cycle up to the horizon");
        for (const auto& frame : jf) {
            BusFrame f;
            for (const auto& s : frame) {
                if (!s.is_number_integer()) throw PlanFormatError("bus indices must be integers");
                f.push_back(s.get<int>());
            }
            if (static_cast<int>(f.size()) != region.rows)
                throw PlanFormatError("each bus frame must list one sample index per region row");
            frames.push_back(std::move(f));
        }

        for (const auto& je : j.at("extraction")) {
            ExtractionEvent e;
            e.cycle = je.at("cycle").get<int>();
            e.coord = {je.at("row").get<int>(), je.at("col").get<int>()};
            e.output_index = je.at("output_index").get<int>();
            if (e.cycle < 1 || e.cycle > horizon)
                throw PlanFormatError("extraction cycle outside [1, horizon]");
            if (!region.contains(e.coord))
                throw PlanFormatError("extraction coordinate outside the active region");
            if (e.output_index < 0) throw PlanFormatError("output_index must be >= 0");
            events.push_back(e);
        }
        std::stable_sort(events.begin(), events.end(), [](const auto& a, const auto& b) {
            return std::tie(a.cycle, a.coord.row, a.coord.col) <
                   std::tie(b.cycle, b.coord.row, b.coord.col);
        });
    } catch (const json::exception& e) {
        throw PlanFormatError(std::string("plan field error: ") + e.what());
    }

    const Region region = kind == MappingKind::Improved
                              ? Region{taps.order() + 1, taps.order()}
                              : Region{taps.order(), taps.order()};
    if (const auto violations = validate_assignment(assign, region, cfg); !violations.empty()) {
        std::string msg = "plan fails legality validation:";
        for (const auto& v : violations)
            msg += " [" + std::to_string(v.at.row) + "," + std::to_string(v.at.col) + "] " +
                   v.reason + ";";
        throw LegalityError(msg);
    }

    MappingPlan plan;
    plan.kind = kind;
    plan.taps = std::move(taps);
    plan.config = cfg;
    plan.region = region;
    plan.assignment = std::move(assign);
    plan.writeback = model_for(kind, plan.taps.order());
    auto shared_frames = std::make_shared<std::vector<BusFrame>>(std::move(frames));
    plan.bus_frame = [shared_frames, horizon](int t) -> BusFrame {
        if (t < 1 || t > horizon)
            throw HorizonExceeded("plan schedule is materialized to cycle " +
                                  std::to_string(horizon) + "; cycle " + std::to_string(t) +
                                  " requested");
        return (*shared_frames)[static_cast<size_t>(t) - 1];
    };
    auto shared_events = std::make_shared<std::vector<ExtractionEvent>>(std::move(events));
    plan.extraction = [shared_events, horizon](int h) -> std::vector<ExtractionEvent> {
        if (h > horizon)
            throw HorizonExceeded("plan schedule is materialized to cycle " +
                                  std::to_string(horizon) + "; cycle " + std::to_string(h) +
                                  " requested");
        std::vector<ExtractionEvent> out;
        for (const auto& e : *shared_events)
            if (e.cycle <= h) out.push_back(e);
        return out;
    };
    return {std::move(plan), horizon};
}

std::string trace_csv(const Trace& trace) {
    std::ostringstream out;
    out << "cycle,row,col,bus_index,numeric,symbolic\n";
    for (const auto& state : trace.states) {
        const bool has_frame = state.cycle >= 1 &&
                               static_cast<size_t>(state.cycle) <= trace.frames.size();
        for (int r = 0; r < state.region.rows; ++r) {
            for (int c = 0; c < state.region.cols; ++c) {
                out << state.cycle << ',' << r << ',' << c << ',';
                if (has_frame) out << trace.frames[static_cast<size_t>(state.cycle) - 1][r];
                const auto& cell = state.at(r, c);
                out << ',' << cell.numeric << ',';
                if (cell.symbolic) out << render_symbolic(*cell.symbolic);
                out << '\n';
            }
        }
    }
    return out.str();
}

std::string outputs_json(const std::vector<ExtractedOutput>& outputs,
                         int input_len, int order) {
    auto sorted = outputs;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) { return a.output_index < b.output_index; });
    json arr = json::array();
    for (const auto& o : sorted) {
        if (o.output_index >= input_len + order - 1) continue; // window fully past the input
        json jo;
        jo["index"] = o.output_index;
        jo["value"] = o.value;
        if (o.output_index >= input_len) jo["tail"] = true;
        arr.push_back(jo);
    }
    json j;
    j["count"] = arr.size();
    j["outputs"] = arr;
    return j.dump(2) + "\n";
}

VerifyResult verify_outputs(const std::vector<ExtractedOutput>& outputs,
                            std::span<const std::int64_t> x,
                            std::span<const std::int64_t> w,
                            bool trim_tail) {
    const int len = static_cast<int>(x.size());
    int max_index = -1;
    for (const auto& o : outputs) {
        if (trim_tail && o.output_index >= len) continue;
        max_index = std::max(max_index, o.output_index);
    }
    const auto expected = fir_reference(x, w, max_index + 1);
    VerifyResult result;
    for (const auto& o : outputs) {
        if (trim_tail && o.output_index >= len) continue;
        ++result.checked;
        if (o.value != expected[static_cast<size_t>(o.output_index)]) {
            result.mismatch = VerifyMismatch{o, expected[static_cast<size_t>(o.output_index)]};
            break;
        }
    }
    return result;
}

std::string format_rational(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string format_truncated(const Rational& r, int decimals) {
    const bool neg = r < Rational(0);
    const std::int64_t num = std::llabs(r.numerator());
    const std::int64_t den = r.denominator();
    const std::int64_t q = num * pow10_i(decimals) / den;
    return assemble_decimal(q, decimals, neg);
}

std::string render_table(int table, const TableOptions& opts) {
    switch (table) {
    case 1: return table_rates(MappingKind::Optimized, opts);
    case 2: return table_formulas(MappingKind::Optimized, opts.csv);
    case 3: return table_speedups(MappingKind::Optimized, opts);
    case 4: return table_rates(MappingKind::Improved, opts);
    case 5: return table_formulas(MappingKind::Improved, opts.csv);
    case 6: return table_speedups(MappingKind::Improved, opts);
    case 7: return table_fpga(opts);
    default: throw Error("no such table: " + std::to_string(table));
    }
}

std::string fig6_csv(const std::vector<int>& orders) {
    std::ostringstream out;
    out << "order,speedup\n";
    for (int n : orders)
        out << n << ',' << format_rounded(speedup(MappingKind::Optimized, n, false), 4) << '\n';
    return out.str();
}

std::string sweep_csv(const std::vector<MappingKind>& kinds,
                      const std::vector<int>& orders,
                      const SweepOptions& opts) {
    std::ostringstream out;
    out << "kind,taps,samples_per_burst,compute_cycles,writeback_cycles,"
           "rate_no_wb,rate_wb,mhz_wb,speedup_vs_basic_wb";
    if (opts.measure) out << ",measured_rate";
    out << '\n';
    for (MappingKind kind : kinds) {
        for (int n : orders) {
            const auto rep = rate_report(kind, n, opts.clock_mhz);
            const auto model = model_for(kind, n);
            out << to_string(kind) << ',' << n << ',' << model.samples_per_burst << ','
                << model.compute_cycles << ',' << model.writeback_cycles << ','
                << format_rational(rep.rate_no_wb) << ',' << format_rational(rep.rate_wb) << ','
                << fmt_fixed(rep.mhz_wb, 2) << ',' << format_rational(rep.speedup_vs_basic_wb);
            if (opts.measure) out << ',' << format_rational(measure_rate(kind, n));
            out << '\n';
        }
    }
    return out.str();
}

Rational measure_rate(MappingKind kind, int order) {
    ArrayConfig cfg;
    cfg.rows = kind == MappingKind::Improved ? order + 1 : order;
    cfg.cols = order;
    cfg.diagonal_enabled = kind == MappingKind::Improved;
    const auto plan = make_plan(kind, TapVector{std::vector<std::int64_t>(
                                    static_cast<size_t>(order), 1)}, cfg);
    int warmup = 0;
    int horizon = 0;
    switch (kind) {
    case MappingKind::Basic:
        warmup = order;
        horizon = 4 * order;
        break;
    case MappingKind::Optimized:
        warmup = 2 * order - 1;
        horizon = 4 * (2 * order - 1);
        break;
    case MappingKind::Improved:
        warmup = order / 2;
        horizon = warmup + 12;
        break;
    }
    const auto result = run(plan, {}, horizon);
    return measured_throughput(result.outputs, warmup, horizon);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) throw Error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string() + " for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace morphfir
