#include "doctest.h"

#include <cstdint>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "morphfir/engine.hpp"
#include "morphfir/errors.hpp"
#include "morphfir/mappings.hpp"
#include "morphfir/report.hpp"

using namespace morphfir;
using V = std::vector<std::int64_t>;

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    for (std::string cell; std::getline(in, cell, ',');) out.push_back(cell);
    return out;
}

ArrayConfig config_for(MappingKind kind, int n) {
    if (kind == MappingKind::Improved) return {n + 1, n, 4, true, 100.0};
    return {n, n, 4, false, 100.0};
}

} // namespace

TEST_CASE("rational formatting") {
    CHECK(format_rational(Rational(9, 5)) == "9/5");
    CHECK(format_rational(Rational(4, 2)) == "2");
    CHECK(format_rational(Rational(0)) == "0");
    CHECK(format_rational(Rational(-3, 6)) == "-1/2");
}

TEST_CASE("truncated fixed-point formatting") {
    CHECK(format_truncated(Rational(9, 8), 3) == "1.125");
    CHECK(format_truncated(Rational(17, 16), 3) == "1.062"); // 1.0625 truncates
    CHECK(format_truncated(Rational(33, 32), 3) == "1.031");
    CHECK(format_truncated(Rational(65, 64), 3) == "1.015");
    CHECK(format_truncated(Rational(2), 0) == "2");
    CHECK(format_truncated(Rational(-17, 16), 3) == "-1.062");
    CHECK(format_truncated(Rational(-1, 300), 2) == "0.00");
}

TEST_CASE("plan files round-trip byte-identically") {
    for (MappingKind kind :
         {MappingKind::Basic, MappingKind::Optimized, MappingKind::Improved}) {
        CAPTURE(to_string(kind));
        const auto plan = make_plan(kind, TapVector{{3, -1, 4}}, config_for(kind, 3));
        const std::string text = emit_plan(plan, 15);
        const auto loaded = parse_plan(text);
        CHECK(loaded.horizon == 15);
        CHECK(emit_plan(loaded.plan, 15) == text);

        // The loaded plan behaves exactly like the generated one.
        const V x{5, 1, -2, 8, 0, 3, 3, -9, 4, 2, 7, 1};
        const auto a = run(plan, x, 15);
        const auto b = run(loaded.plan, x, 15);
        REQUIRE(a.outputs.size() == b.outputs.size());
        for (size_t i = 0; i < a.outputs.size(); ++i) {
            CHECK(a.outputs[i].output_index == b.outputs[i].output_index);
            CHECK(a.outputs[i].value == b.outputs[i].value);
        }
    }
}

TEST_CASE("loaded schedules stop at the materialized horizon") {
    const auto plan = make_plan(MappingKind::Basic, TapVector{{1, 2}},
                                config_for(MappingKind::Basic, 2));
    const auto loaded = parse_plan(emit_plan(plan, 6));
    CHECK(loaded.plan.bus_frame(6) == plan.bus_frame(6));
    CHECK_THROWS_AS(loaded.plan.bus_frame(7), HorizonExceeded);
    CHECK_THROWS_AS(loaded.plan.extraction(7), HorizonExceeded);
    CHECK_THROWS_AS(run(loaded.plan, V{1, 2, 3}, 8), HorizonExceeded);
}

TEST_CASE("parse_plan rejects malformed documents") {
    CHECK_THROWS_AS(parse_plan("not json"), PlanFormatError);
    CHECK_THROWS_AS(parse_plan("{}"), PlanFormatError);
    CHECK_THROWS_AS(parse_plan(R"({"kind":"sideways"})"), PlanFormatError);

    const auto plan = make_plan(MappingKind::Basic, TapVector{{1, 2}},
                                config_for(MappingKind::Basic, 2));
    const std::string text = emit_plan(plan, 4);
    auto j = nlohmann::ordered_json::parse(text);

    SUBCASE("weight index beyond the taps") {
        j["assignment"][0]["weight_index"] = 2;
        CHECK_THROWS_AS(parse_plan(j.dump()), PlanFormatError);
    }
    SUBCASE("bus frame per cycle") {
        j["bus_frames"].erase(3);
        CHECK_THROWS_AS(parse_plan(j.dump()), PlanFormatError);
    }
    SUBCASE("bus frame per region row") {
        j["bus_frames"][0].erase(1);
        CHECK_THROWS_AS(parse_plan(j.dump()), PlanFormatError);
    }
    SUBCASE("extraction outside the region") {
        j["extraction"][0]["row"] = 9;
        CHECK_THROWS_AS(parse_plan(j.dump()), PlanFormatError);
    }
    SUBCASE("extraction past the horizon") {
        j["extraction"][0]["cycle"] = 99;
        CHECK_THROWS_AS(parse_plan(j.dump()), PlanFormatError);
    }
    SUBCASE("non-integer taps") {
        j["taps"][0] = 1.5;
        CHECK_THROWS_AS(parse_plan(j.dump()), PlanFormatError);
    }
}

TEST_CASE("parse_plan enforces legality on load") {
    const auto plan = make_plan(MappingKind::Improved, TapVector{{1, 2, 3}},
                                config_for(MappingKind::Improved, 3));
    auto j = nlohmann::ordered_json::parse(emit_plan(plan, 5));

    SUBCASE("southwest source without the diagonal flag") {
        j["array"]["diagonal"] = false;
        CHECK_THROWS_AS(parse_plan(j.dump()), LegalityError);
    }
    SUBCASE("region taller than the stored array") {
        j["array"]["rows"] = 3; // improved order 3 needs 4 rows
        CHECK_THROWS_AS(parse_plan(j.dump()), LegalityError);
    }
    SUBCASE("op/source invariant") {
        j["assignment"][0]["op"] = "muladd"; // muladd with src_b zero
        CHECK_THROWS_AS(parse_plan(j.dump()), LegalityError);
    }
}

TEST_CASE("trace CSV layout") {
    const auto plan = make_plan(MappingKind::Basic, TapVector{{1, 2}},
                                config_for(MappingKind::Basic, 2));
    const V x{4, 7, 9};

    const auto numeric = run(plan, x, 3);
    const auto lines = split_lines(trace_csv(numeric.trace));
    REQUIRE(lines.size() == 1 + 4 * 4); // header + 4 states x 4 cells
    CHECK(lines[0] == "cycle,row,col,bus_index,numeric,symbolic");
    CHECK(lines[1] == "0,0,0,,0,");    // cycle 0 has no bus frame
    CHECK(lines[5] == "1,0,0,-1,0,"); // bus carries x_{-1}; symbolic off
    // Append a sentinel so a trailing empty field still counts.
    for (const auto& l : lines) CHECK(split_csv(l + "x").size() == 6);

    const auto symbolic = run(plan, x, 3, true);
    const auto sym_lines = split_lines(trace_csv(symbolic.trace));
    CHECK(sym_lines[1] == "0,0,0,,0,0"); // empty multiset renders as 0
    CHECK(sym_lines[6] == "1,0,1,-1,0,x-1w0");
}

TEST_CASE("outputs JSON drops and flags the tail") {
    const std::vector<ExtractedOutput> outputs = {
        {9, {2, 2}, 8, 0},  // fully past x: dropped
        {3, {0, 2}, 0, 42}, // in range
        {9, {0, 2}, 6, 7},  // overlaps the zero padding: tail
    };
    const auto j = nlohmann::json::parse(outputs_json(outputs, 5, 3));
    REQUIRE(j["count"].get<int>() == 2);
    REQUIRE(j["outputs"].size() == 2);
    CHECK(j["outputs"][0]["index"] == 0);
    CHECK(j["outputs"][0]["value"] == 42);
    CHECK(!j["outputs"][0].contains("tail"));
    CHECK(j["outputs"][1]["index"] == 6);
    CHECK(j["outputs"][1]["tail"] == true);
}

TEST_CASE("verify_outputs against the oracle") {
    const auto plan = make_plan(MappingKind::Optimized, TapVector{{2, 1, -1}},
                                config_for(MappingKind::Optimized, 3));
    const V x{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    auto res = run(plan, x, 15);

    auto ok = verify_outputs(res.outputs, x, plan.taps.weights, false);
    CHECK(ok.checked == static_cast<int>(res.outputs.size()));
    CHECK(!ok.mismatch.has_value());

    // Corrupt one output; the first mismatch in extraction order is reported.
    auto bad = res.outputs;
    bad[4].value += 13;
    auto fail = verify_outputs(bad, x, plan.taps.weights, false);
    REQUIRE(fail.mismatch.has_value());
    CHECK(fail.mismatch->got.output_index == bad[4].output_index);
    CHECK(fail.mismatch->expected == bad[4].value - 13);
    CHECK(fail.checked == 5);

    // Trimming skips tail outputs (index >= len).
    auto trimmed = verify_outputs(res.outputs, x, plan.taps.weights, true);
    for (const auto& o : res.outputs)
        if (o.output_index >= static_cast<int>(x.size())) {
            CHECK(trimmed.checked < ok.checked);
            break;
        }
}

TEST_CASE("tables carry the published figures") {
    const auto t1 = render_table(1);
    CHECK(t1.find("88.89") != std::string::npos);
    CHECK(t1.find("278.3") != std::string::npos);
    CHECK(t1.find("544.7") != std::string::npos);
    CHECK(t1.find("2144.5") != std::string::npos);
    const auto t3 = render_table(3);
    CHECK(t3.find("11.12") != std::string::npos);
    const auto t6 = render_table(6);
    CHECK(t6.find("1.125") != std::string::npos);
    CHECK(t6.find("published value 1.24") != std::string::npos);
    CHECK(t6.find("1.062") != std::string::npos);
    const auto t7 = render_table(7);
    CHECK(t7.find("XC3195") != std::string::npos);
    CHECK(t7.find("15-20") != std::string::npos);
    CHECK(t7.find("3.3") != std::string::npos);
    CHECK_THROWS_AS(render_table(0), Error);
    CHECK_THROWS_AS(render_table(8), Error);
}

TEST_CASE("table output matches the checked-in goldens byte for byte") {
    for (int t = 1; t <= 7; ++t) {
        CAPTURE(t);
        const auto golden = read_file(std::string(GOLDEN_DIR) + "/table" + std::to_string(t) + ".txt");
        CHECK(render_table(t) == golden);
    }
    CHECK(fig6_csv({8, 16, 32, 64}) == read_file(std::string(GOLDEN_DIR) + "/fig6.csv"));
}

TEST_CASE("fig6 CSV values") {
    CHECK(fig6_csv({8, 16, 32, 64}) ==
          "order,speedup\n8,4.2667\n16,8.2581\n32,16.2540\n64,32.2520\n");
}

TEST_CASE("sweep CSV shape and measured agreement") {
    const std::vector<MappingKind> kinds{MappingKind::Basic, MappingKind::Optimized,
                                         MappingKind::Improved};
    const std::vector<int> orders{2, 3, 4, 8};
    const auto lines = split_lines(sweep_csv(kinds, orders, {true, 100.0}));
    REQUIRE(lines.size() == 1 + kinds.size() * orders.size());
    const auto head = split_csv(lines[0]);
    REQUIRE(head.size() == 10);
    CHECK(head[0] == "kind");
    CHECK(head[9] == "measured_rate");
    for (size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split_csv(lines[i]);
        REQUIRE(cells.size() == 10);
        // The simulator's measured steady rate equals the analytic no-wb rate.
        CHECK(cells[9] == cells[5]);
        if (cells[0] == "improved") CHECK(cells[7] == "100.00");
    }
}

TEST_CASE("measure_rate reproduces the analytic steady rates") {
    CHECK(measure_rate(MappingKind::Basic, 3) == Rational(1));
    CHECK(measure_rate(MappingKind::Optimized, 3) == Rational(9, 5));
    CHECK(measure_rate(MappingKind::Improved, 3) == Rational(2));
    CHECK(measure_rate(MappingKind::Optimized, 2) == Rational(4, 3));
}

TEST_CASE("atomic write then read round-trips") {
    const auto dir = std::filesystem::temp_directory_path() / "morphfir_test_io";
    std::filesystem::create_directories(dir);
    const auto path = dir / "roundtrip.txt";
    const std::string content = "line1\nline2\n";
    write_file_atomic(path, content);
    CHECK(read_file(path) == content);
    write_file_atomic(path, "replaced");
    CHECK(read_file(path) == "replaced");
    CHECK(!std::filesystem::exists(path.string() + ".tmp"));
    std::filesystem::remove_all(dir);
    CHECK_THROWS_AS(read_file(dir / "missing.txt"), Error);
}
