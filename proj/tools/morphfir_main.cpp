// morphfir - plan, simulate, verify and report on FIR mappings for a
// MorphoSys-style RC array.
//
// Exit codes: 0 ok, 1 runtime/IO error, 2 legality failure, 3 verification
// mismatch.
#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "morphfir/engine.hpp"
#include "morphfir/errors.hpp"
#include "morphfir/mappings.hpp"
#include "morphfir/perf.hpp"
#include "morphfir/report.hpp"

namespace {

using namespace morphfir;

std::vector<std::int64_t> read_input_vector(const std::string& path) {
    const auto text = read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw PlanFormatError("input file " + path + " is not valid JSON: " + e.what());
    }
    if (!j.is_array()) throw PlanFormatError("input file " + path + " must be a JSON array of integers");
    std::vector<std::int64_t> x;
    for (const auto& v : j) {
        if (!v.is_number_integer())
            throw PlanFormatError("input file " + path + " must contain only integers");
        x.push_back(v.get<std::int64_t>());
    }
    return x;
}

std::vector<std::int64_t> random_input(int length, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(-100, 100);
    std::vector<std::int64_t> x(static_cast<std::size_t>(length));
    for (auto& v : x) v = dist(rng);
    return x;
}

// Empty path means stdout.
void emit_text(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    write_file_atomic(path, content);
    std::cerr << "wrote " << path << '\n';
}

std::pair<int, int> parse_array_spec(const std::string& spec) {
    const auto x = spec.find('x');
    if (x == std::string::npos || x == 0 || x + 1 >= spec.size())
        throw Error("--array expects ROWSxCOLS, e.g. 8x8; got '" + spec + "'");
    try {
        size_t ur = 0, uc = 0;
        const int rows = std::stoi(spec.substr(0, x), &ur);
        const int cols = std::stoi(spec.substr(x + 1), &uc);
        if (ur != x || uc != spec.size() - x - 1 || rows < 1 || cols < 1)
            throw Error("");
        return {rows, cols};
    } catch (const std::exception&) {
        throw Error("--array expects ROWSxCOLS with positive sizes; got '" + spec + "'");
    }
}

struct PlanArgs {
    std::string mapping;
    int taps = 0;
    std::string weights_path;
    std::string array_spec;
    int quadrant = 4;
    bool diagonal = false;
    double clock = 100.0;
    int horizon = 0;
    std::string out;
};

int run_plan(const PlanArgs& a) {
    const auto kind = mapping_kind_from(a.mapping);
    if (!kind) throw Error("unknown mapping '" + a.mapping + "'");
    TapVector taps;
    if (!a.weights_path.empty()) {
        taps.weights = read_input_vector(a.weights_path);
        if (taps.weights.empty()) throw Error("weights file holds no taps");
    } else if (a.taps >= 1) {
        for (int i = 1; i <= a.taps; ++i) taps.weights.push_back(i);
    } else {
        throw Error("give either --taps N or --weights FILE");
    }
    const auto [rows, cols] = parse_array_spec(a.array_spec);
    ArrayConfig cfg{rows, cols, a.quadrant, a.diagonal, a.clock};
    const auto plan = make_plan(*kind, taps, cfg);
    emit_text(a.out, emit_plan(plan, a.horizon));
    return 0;
}

struct SimulateArgs {
    std::string plan_path;
    std::string input_path;
    int cycles = 0;
    bool symbolic = false;
    std::string trace_path;
    std::string outputs_path;
};

int run_simulate(const SimulateArgs& a) {
    const auto loaded = parse_plan(read_file(a.plan_path));
    const auto x = read_input_vector(a.input_path);
    const auto result = run(loaded.plan, x, a.cycles, a.symbolic);
    if (!a.trace_path.empty()) emit_text(a.trace_path, trace_csv(result.trace));
    emit_text(a.outputs_path,
              outputs_json(result.outputs, static_cast<int>(x.size()), loaded.plan.taps.order()));
    return 0;
}

struct VerifyArgs {
    std::string plan_path;
    std::string input_path;
    int random_len = 0;
    std::uint32_t seed = 12345;
    int cycles = 0;
    bool trim_tail = false;
};

int run_verify(const VerifyArgs& a) {
    const auto loaded = parse_plan(read_file(a.plan_path));
    std::vector<std::int64_t> x;
    if (!a.input_path.empty())
        x = read_input_vector(a.input_path);
    else if (a.random_len > 0)
        x = random_input(a.random_len, a.seed);
    else
        throw Error("give either --input FILE or --random LEN");
    const auto result = run(loaded.plan, x, a.cycles, false);
    const auto check = verify_outputs(result.outputs, x, loaded.plan.taps.weights, a.trim_tail);
    if (check.mismatch) {
        const auto& m = *check.mismatch;
        std::cout << "mismatch at cycle " << m.got.cycle << " cell (" << m.got.coord.row << ","
                  << m.got.coord.col << ") output index " << m.got.output_index << ": expected "
                  << m.expected << ", got " << m.got.value << '\n';
        return 3;
    }
    std::cout << "verified " << check.checked << " outputs against the direct-form reference\n";
    return 0;
}

struct PerfArgs {
    int table = 0;
    bool fig6 = false;
    std::vector<int> orders{8, 16, 32, 64};
    double clock = 100.0;
    bool measure = false;
    bool csv = false;
    std::string out;
};

int run_perf(const PerfArgs& a) {
    if (a.fig6) {
        emit_text(a.out, fig6_csv(a.orders));
        return 0;
    }
    if (a.table == 0) throw Error("give either --table N or --fig6");
    emit_text(a.out, render_table(a.table, {a.csv, a.measure, a.clock}));
    return 0;
}

struct SweepArgs {
    std::vector<int> orders;
    std::vector<std::string> kinds;
    bool measure = false;
    double clock = 100.0;
    std::string out;
};

int run_sweep(const SweepArgs& a) {
    std::vector<MappingKind> kinds;
    for (const auto& k : a.kinds) {
        const auto kind = mapping_kind_from(k);
        if (!kind) throw Error("unknown mapping kind '" + k + "'");
        kinds.push_back(*kind);
    }
    for (int n : a.orders)
        if (n < 1) throw Error("orders must be >= 1");
    emit_text(a.out, sweep_csv(kinds, a.orders, {a.measure, a.clock}));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"FIR mappings on a MorphoSys-style reconfigurable cell array"};
    app.require_subcommand(1);

    PlanArgs pa;
    auto* plan_cmd = app.add_subcommand("plan", "generate a materialized mapping plan file");
    plan_cmd->add_option("--mapping", pa.mapping, "basic | optimized | improved")
        ->required()
        ->check(CLI::IsMember({"basic", "optimized", "improved"}));
    auto* taps_opt = plan_cmd->add_option("--taps", pa.taps, "filter order N (weights default to 1..N)");
    plan_cmd->add_option("--weights", pa.weights_path, "JSON array of integer taps w0..w{N-1}")
        ->excludes(taps_opt);
    plan_cmd->add_option("--array", pa.array_spec, "array size ROWSxCOLS")->required();
    plan_cmd->add_option("--quadrant", pa.quadrant, "quadrant side length")->check(CLI::PositiveNumber);
    plan_cmd->add_flag("--diagonal", pa.diagonal, "enable the southwest diagonal link");
    plan_cmd->add_option("--clock", pa.clock, "array clock in MHz")->check(CLI::PositiveNumber);
    plan_cmd->add_option("--horizon", pa.horizon, "cycles to materialize schedules for")
        ->required()
        ->check(CLI::NonNegativeNumber);
    plan_cmd->add_option("-o,--output", pa.out, "plan file to write")->required();

    SimulateArgs sa;
    auto* sim_cmd = app.add_subcommand("simulate", "run a plan and emit trace/outputs");
    sim_cmd->add_option("--plan", sa.plan_path, "plan file")->required();
    sim_cmd->add_option("--input", sa.input_path, "JSON array of input samples")->required();
    sim_cmd->add_option("--cycles", sa.cycles, "cycles to run")->required()->check(CLI::NonNegativeNumber);
    sim_cmd->add_flag("--symbolic", sa.symbolic, "carry symbolic cell formulas in the trace");
    sim_cmd->add_option("--trace", sa.trace_path, "CSV trace file to write");
    sim_cmd->add_option("--outputs", sa.outputs_path, "outputs JSON file (stdout if omitted)");

    VerifyArgs va;
    auto* ver_cmd = app.add_subcommand("verify", "check extracted outputs against the FIR reference");
    ver_cmd->add_option("--plan", va.plan_path, "plan file")->required();
    auto* input_opt = ver_cmd->add_option("--input", va.input_path, "JSON array of input samples");
    ver_cmd->add_option("--random", va.random_len, "generate a random input of this length")
        ->excludes(input_opt);
    ver_cmd->add_option("--seed", va.seed, "seed for --random");
    ver_cmd->add_option("--cycles", va.cycles, "cycles to run")->required()->check(CLI::NonNegativeNumber);
    ver_cmd->add_flag("--trim-tail", va.trim_tail, "skip outputs whose index reaches past the input");

    PerfArgs fa;
    auto* perf_cmd = app.add_subcommand("perf", "render published rate/speedup tables");
    auto* table_opt = perf_cmd->add_option("--table", fa.table, "table number 1..7")
                          ->check(CLI::Range(1, 7));
    perf_cmd->add_flag("--fig6", fa.fig6, "emit the no-write-back OM speedup curve as CSV")
        ->excludes(table_opt);
    perf_cmd->add_option("--orders", fa.orders, "filter orders for --fig6")->delimiter(',');
    perf_cmd->add_option("--clock", fa.clock, "array clock in MHz")->check(CLI::PositiveNumber);
    perf_cmd->add_flag("--measure", fa.measure, "append simulator-measured rates");
    perf_cmd->add_flag("--csv", fa.csv, "CSV instead of aligned text");
    perf_cmd->add_option("-o,--output", fa.out, "file to write (stdout if omitted)");

    SweepArgs wa;
    auto* sweep_cmd = app.add_subcommand("sweep", "rate reports over kinds x orders as CSV");
    sweep_cmd->add_option("--orders", wa.orders, "comma-separated filter orders")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--kinds", wa.kinds, "comma-separated mapping kinds")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_flag("--measure", wa.measure, "append simulator-measured rates");
    sweep_cmd->add_option("--clock", wa.clock, "array clock in MHz")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("-o,--output", wa.out, "file to write (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (plan_cmd->parsed()) return run_plan(pa);
        if (sim_cmd->parsed()) return run_simulate(sa);
        if (ver_cmd->parsed()) return run_verify(va);
        if (perf_cmd->parsed()) return run_perf(fa);
        if (sweep_cmd->parsed()) return run_sweep(wa);
    } catch (const LegalityError& e) {
        std::cerr << "legality error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
