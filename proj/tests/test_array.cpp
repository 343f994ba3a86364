#include "doctest.h"

#include <algorithm>

#include "morphfir/array.hpp"

using namespace morphfir;
using RK = Resolved::Kind;

namespace {
const ArrayConfig m1{};                          // 8x8, quadrant 4, no diagonal
const ArrayConfig m1_diag{8, 8, 4, true, 100.0}; // same with the southwest link
} // namespace

TEST_CASE("mesh neighbours resolve relative to the consumer") {
    auto r = resolve_source({2, 3}, PortSource::west(), m1);
    CHECK(r.kind == RK::Cell);
    CHECK(r.cell == CellCoord{2, 2});
    CHECK(resolve_source({2, 3}, PortSource::north(), m1).cell == CellCoord{1, 3});
    CHECK(resolve_source({2, 3}, PortSource::south(), m1).cell == CellCoord{3, 3});
    CHECK(resolve_source({2, 3}, PortSource::east(), m1).cell == CellCoord{2, 4});
    CHECK(resolve_source({4, 0}, PortSource::west(), m1).kind == RK::OffArray);
    CHECK(resolve_source({0, 5}, PortSource::north(), m1).kind == RK::OffArray);
    CHECK(resolve_source({7, 7}, PortSource::south(), m1).kind == RK::OffArray);
}

TEST_CASE("southwest link needs the diagonal flag") {
    CHECK(resolve_source({1, 2}, PortSource::south_west(), m1).kind == RK::Illegal);
    auto r = resolve_source({1, 2}, PortSource::south_west(), m1_diag);
    CHECK(r.kind == RK::Cell);
    CHECK(r.cell == CellCoord{2, 1});
    // Bottom row and leftmost column fall off the array, not into illegality.
    CHECK(resolve_source({7, 3}, PortSource::south_west(), m1_diag).kind == RK::OffArray);
    CHECK(resolve_source({3, 0}, PortSource::south_west(), m1_diag).kind == RK::OffArray);
}

TEST_CASE("intra-quadrant peers stay inside the quadrant and exclude self") {
    auto r = resolve_source({0, 0}, PortSource::intra_quad_row(2), m1);
    CHECK(r.kind == RK::Cell);
    CHECK(r.cell == CellCoord{0, 2});
    CHECK(resolve_source({0, 0}, PortSource::intra_quad_row(0), m1).kind == RK::Illegal);
    CHECK(resolve_source({0, 0}, PortSource::intra_quad_row(5), m1).kind == RK::Illegal);
    CHECK(resolve_source({5, 6}, PortSource::intra_quad_col(7), m1).cell == CellCoord{7, 6});
    // 6x6 with quadrant 4 does not tile; level-2 sources are unavailable.
    const ArrayConfig odd{6, 6, 4, false, 100.0};
    CHECK(resolve_source({0, 0}, PortSource::intra_quad_row(2), odd).kind == RK::Illegal);
}

TEST_CASE("express lanes reach the same offset in the adjacent quadrant") {
    auto r = resolve_source({1, 2}, PortSource::express_row(), m1);
    CHECK(r.kind == RK::Cell);
    CHECK(r.cell == CellCoord{1, 6});
    CHECK(resolve_source({1, 6}, PortSource::express_row(), m1).cell == CellCoord{1, 2});
    CHECK(resolve_source({1, 2}, PortSource::express_col(), m1).cell == CellCoord{5, 2});
    CHECK(resolve_source({6, 3}, PortSource::express_col(), m1).cell == CellCoord{2, 3});
    // A single-quadrant array has no adjacent quadrant to reach.
    const ArrayConfig single{4, 4, 4, false, 100.0};
    CHECK(resolve_source({1, 2}, PortSource::express_row(), single).kind == RK::Illegal);
}

TEST_CASE("reachable_sources at a corner") {
    const auto srcs = reachable_sources({0, 0}, m1);
    // bus, zero, south, east, 3 row peers, 3 col peers, both express lanes.
    CHECK(srcs.size() == 12);
    auto has = [&](PortSource s) { return std::find(srcs.begin(), srcs.end(), s) != srcs.end(); };
    CHECK(has(PortSource::bus()));
    CHECK(has(PortSource::zero()));
    CHECK(has(PortSource::south()));
    CHECK(has(PortSource::east()));
    CHECK(!has(PortSource::north()));
    CHECK(!has(PortSource::west()));
    CHECK(!has(PortSource::south_west()));
    CHECK(has(PortSource::intra_quad_row(3)));
    CHECK(has(PortSource::intra_quad_col(1)));
    CHECK(has(PortSource::express_row()));
    CHECK(has(PortSource::express_col()));
    CHECK(std::is_sorted(srcs.begin(), srcs.end()));

    // With the diagonal enabled, (0,0) still has no in-grid southwest
    // neighbour but (0,1) does.
    CHECK(reachable_sources({0, 0}, m1_diag).size() == 12);
    const auto srcs01 = reachable_sources({0, 1}, m1_diag);
    CHECK(std::find(srcs01.begin(), srcs01.end(), PortSource::south_west()) != srcs01.end());
}

TEST_CASE("port source names round-trip") {
    for (PortSource s : reachable_sources({2, 5}, m1_diag)) {
        const auto back = port_source_from(to_string(s));
        REQUIRE(back.has_value());
        CHECK(*back == s);
    }
    CHECK(!port_source_from("northwest").has_value());
    CHECK(!port_source_from("iqrow:").has_value());
    CHECK(!port_source_from("iqrow:x").has_value());
    CHECK(!port_source_from("iqrow:-2").has_value());
}

TEST_CASE("only bus, zero, west and southwest are executable") {
    CHECK(executable_source(PortSource::bus()));
    CHECK(executable_source(PortSource::zero()));
    CHECK(executable_source(PortSource::west()));
    CHECK(executable_source(PortSource::south_west()));
    CHECK(!executable_source(PortSource::north()));
    CHECK(!executable_source(PortSource::intra_quad_row(1)));
    CHECK(!executable_source(PortSource::express_row()));
}

namespace {
ContextAssignment fir_words3() {
    ContextAssignment a;
    a.words = {{CellOp::Mul, 2, PortSource::zero()},
               {CellOp::MulAdd, 1, PortSource::west()},
               {CellOp::MulAdd, 0, PortSource::west()}};
    return a;
}
} // namespace

TEST_CASE("validate_assignment accepts the column-broadcast FIR words") {
    CHECK(validate_assignment(fir_words3(), {3, 3}, m1).empty());
}

TEST_CASE("validate_assignment flags structural problems") {
    auto a = fir_words3();

    SUBCASE("region larger than the array") {
        const auto v = validate_assignment(a, {9, 3}, m1);
        REQUIRE(v.size() == 1);
        CHECK(v[0].reason.find("region") != std::string::npos);
    }
    SUBCASE("row broadcast is modeled but not executable") {
        a.mode = BroadcastMode::RowBroadcast;
        const auto v = validate_assignment(a, {3, 3}, m1);
        REQUIRE(!v.empty());
        CHECK(v[0].reason.find("NotExecutable") != std::string::npos);
    }
    SUBCASE("word count must match the broadcast dimension") {
        const auto v = validate_assignment(a, {3, 4}, m1);
        REQUIRE(v.size() == 1);
        CHECK(v[0].reason.find("word count") != std::string::npos);
    }
    SUBCASE("Mul must read zero on port B") {
        a.words[0] = {CellOp::Mul, 2, PortSource::west()};
        const auto v = validate_assignment(a, {3, 3}, m1);
        REQUIRE(!v.empty());
        CHECK(v[0].reason.find("Mul requires") != std::string::npos);
    }
    SUBCASE("MulAdd with a zero source is a degenerate Mul") {
        a.words[1] = {CellOp::MulAdd, 1, PortSource::zero()};
        CHECK(!validate_assignment(a, {3, 3}, m1).empty());
    }
    SUBCASE("negative weight index") {
        a.words[2].weight_index = -1;
        CHECK(!validate_assignment(a, {3, 3}, m1).empty());
    }
    SUBCASE("connectivity-only sources are rejected for execution") {
        a.words[1].src_b = PortSource::intra_quad_row(0);
        const auto v = validate_assignment(a, {3, 3}, m1);
        REQUIRE(!v.empty());
        CHECK(v[0].reason.find("connectivity-only") != std::string::npos);
    }
    SUBCASE("southwest without the diagonal flag is illegal per cell") {
        a.words[1].src_b = PortSource::south_west();
        const auto v = validate_assignment(a, {3, 3}, m1);
        CHECK(v.size() == 3); // one per row of the offending column
        CHECK(v[0].reason.find("IllegalSource") != std::string::npos);
        CHECK(validate_assignment(a, {3, 3}, m1_diag).empty());
    }
}
