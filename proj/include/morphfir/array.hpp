// array.hpp - RC array geometry, interconnect reachability and context words
//
// Models a MorphoSys-style reconfigurable cell (RC) array at the
// connectivity + execution-semantics level: a rows x cols mesh divided into
// quadrants, three interconnect levels (mesh neighbours, intra-quadrant row/
// column peers, express lanes) and an optional SouthWest diagonal link.
// Cells are configured through broadcast context words (one word per column
// or per row of the active region).
#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace morphfir {

struct CellCoord {
    int row = 0;
    int col = 0;
    auto operator<=>(const CellCoord&) const = default;
};

struct ArrayConfig {
    int rows = 8;
    int cols = 8;
    int quadrant_size = 4;       // cells per quadrant side
    bool diagonal_enabled = false;
    double clock_mhz = 100.0;

    bool in_grid(CellCoord c) const {
        return c.row >= 0 && c.row < rows && c.col >= 0 && c.col < cols;
    }
    // Intra-quadrant and express levels exist only when the quadrant size
    // tiles the grid exactly.
    bool quadrants_available() const {
        return quadrant_size > 0 && rows % quadrant_size == 0 && cols % quadrant_size == 0;
    }
};

// Where port B of a cell reads from. Port A always reads the operand bus.
// Directions name the producing cell relative to the consumer: West of
// (r,c) is (r,c-1), SouthWest is (r+1,c-1). IntraQuadRow(i) is the cell of
// the same row at absolute column i inside the consumer's quadrant;
// IntraQuadCol(i) the cell of the same column at absolute row i. Express
// sources name the same-offset cell in the adjacent quadrant along the row
// (ExpressRow) or column (ExpressCol) axis.
struct PortSource {
    enum class Kind {
        OperandBus,
        Zero,
        North,
        South,
        East,
        West,
        SouthWest,
        IntraQuadRow,
        IntraQuadCol,
        ExpressRow,
        ExpressCol,
    };

    Kind kind = Kind::OperandBus;
    int index = -1; // peer column (IntraQuadRow) or row (IntraQuadCol)

    auto operator<=>(const PortSource&) const = default;

    static PortSource bus() { return {Kind::OperandBus, -1}; }
    static PortSource zero() { return {Kind::Zero, -1}; }
    static PortSource north() { return {Kind::North, -1}; }
    static PortSource south() { return {Kind::South, -1}; }
    static PortSource east() { return {Kind::East, -1}; }
    static PortSource west() { return {Kind::West, -1}; }
    static PortSource south_west() { return {Kind::SouthWest, -1}; }
    static PortSource intra_quad_row(int col) { return {Kind::IntraQuadRow, col}; }
    static PortSource intra_quad_col(int row) { return {Kind::IntraQuadCol, row}; }
    static PortSource express_row() { return {Kind::ExpressRow, -1}; }
    static PortSource express_col() { return {Kind::ExpressCol, -1}; }
};

std::string to_string(PortSource src);
// Inverse of to_string; nullopt on unknown text.
std::optional<PortSource> port_source_from(const std::string& text);

// Result of resolving a port source at a concrete cell.
struct Resolved {
    enum class Kind {
        Cell,     // produced by another cell
        OffArray, // neighbour outside the grid; reads as zero
        Bus,      // operand data bus tap
        Zero,     // constant zero
        Illegal,  // source not legal under this config
    };

    Kind kind = Kind::Zero;
    CellCoord cell{}; // meaningful only when kind == Cell
};

Resolved resolve_source(CellCoord at, PortSource src, const ArrayConfig& cfg);

// Every legal PortSource for the cell, deterministically ordered.
std::vector<PortSource> reachable_sources(CellCoord at, const ArrayConfig& cfg);

// One cell operation: Out(t+1) = A*w + B, with A always the operand bus
// sample, w the tap weight selected by weight_index, and B per src_b.
// Mul is the degenerate form with B = 0.
enum class CellOp { Mul, MulAdd };

struct ContextWord {
    CellOp op = CellOp::Mul;
    int weight_index = 0;
    PortSource src_b = PortSource::zero();

    auto operator<=>(const ContextWord&) const = default;
};

enum class BroadcastMode { ColumnBroadcast, RowBroadcast };

// One context word per column (ColumnBroadcast) or per row (RowBroadcast)
// of the active region.
struct ContextAssignment {
    BroadcastMode mode = BroadcastMode::ColumnBroadcast;
    std::vector<ContextWord> words;

    auto operator<=>(const ContextAssignment&) const = default;
};

// Active rectangle of the array, anchored at cell (0,0).
struct Region {
    int rows = 0;
    int cols = 0;

    auto operator<=>(const Region&) const = default;
    int cell_count() const { return rows * cols; }
    bool contains(CellCoord c) const {
        return c.row >= 0 && c.row < rows && c.col >= 0 && c.col < cols;
    }
};

struct Violation {
    CellCoord at{};
    std::string reason;
};

// The simulation engine drives data only through these port-B sources; the
// remaining levels are connectivity answers, not executable datapaths.
bool executable_source(PortSource src);

// Empty result means the assignment is legal and executable over the
// region. Never throws; every problem becomes a Violation entry.
std::vector<Violation> validate_assignment(const ContextAssignment& assign,
                                           Region region,
                                           const ArrayConfig& cfg);

} // namespace morphfir
