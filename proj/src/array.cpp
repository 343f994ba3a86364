// array.cpp - interconnect resolution and assignment legality
#include "morphfir/array.hpp"

#include <algorithm>

namespace morphfir {

std::string to_string(PortSource src) {
    using K = PortSource::Kind;
    switch (src.kind) {
    case K::OperandBus: return "bus";
    case K::Zero: return "zero";
    case K::North: return "north";
    case K::South: return "south";
    case K::East: return "east";
    case K::West: return "west";
    case K::SouthWest: return "southwest";
    case K::IntraQuadRow: return "iqrow:" + std::to_string(src.index);
    case K::IntraQuadCol: return "iqcol:" + std::to_string(src.index);
    case K::ExpressRow: return "expressrow";
    case K::ExpressCol: return "expresscol";
    }
    return "?";
}

std::optional<PortSource> port_source_from(const std::string& text) {
    using K = PortSource::Kind;
    if (text == "bus") return PortSource::bus();
    if (text == "zero") return PortSource::zero();
    if (text == "north") return PortSource{K::North, -1};
    if (text == "south") return PortSource{K::South, -1};
    if (text == "east") return PortSource{K::East, -1};
    if (text == "west") return PortSource::west();
    if (text == "southwest") return PortSource::south_west();
    if (text == "expressrow") return PortSource::express_row();
    if (text == "expresscol") return PortSource::express_col();
    for (auto [prefix, kind] : {std::pair{"iqrow:", K::IntraQuadRow}, {"iqcol:", K::IntraQuadCol}}) {
        if (text.rfind(prefix, 0) == 0) {
            try {
                size_t used = 0;
                int idx = std::stoi(text.substr(6), &used);
                if (used == text.size() - 6 && idx >= 0) return PortSource{kind, idx};
            } catch (const std::exception&) {
            }
            return std::nullopt;
        }
    }
    return std::nullopt;
}

namespace {

struct QuadPos {
    int quad_row = 0; // quadrant indices
    int quad_col = 0;
    int row0 = 0; // top-left cell of the quadrant
    int col0 = 0;
};

QuadPos quadrant_of(CellCoord c, const ArrayConfig& cfg) {
    const int q = cfg.quadrant_size;
    QuadPos p;
    p.quad_row = c.row / q;
    p.quad_col = c.col / q;
    p.row0 = p.quad_row * q;
    p.col0 = p.quad_col * q;
    return p;
}

Resolved cell_or_off(CellCoord c, const ArrayConfig& cfg) {
    if (cfg.in_grid(c))
        return {Resolved::Kind::Cell, c};
    return {Resolved::Kind::OffArray, {}};
}

} // namespace

Resolved resolve_source(CellCoord at, PortSource src, const ArrayConfig& cfg) {
    using K = PortSource::Kind;
    const Resolved illegal{Resolved::Kind::Illegal, {}};
    switch (src.kind) {
    case K::OperandBus:
        return {Resolved::Kind::Bus, {}};
    case K::Zero:
        return {Resolved::Kind::Zero, {}};
    case K::North:
        return cell_or_off({at.row - 1, at.col}, cfg);
    case K::South:
        return cell_or_off({at.row + 1, at.col}, cfg);
    case K::East:
        return cell_or_off({at.row, at.col + 1}, cfg);
    case K::West:
        return cell_or_off({at.row, at.col - 1}, cfg);
    case K::SouthWest:
        if (!cfg.diagonal_enabled)
            return illegal;
        return cell_or_off({at.row + 1, at.col - 1}, cfg);
    case K::IntraQuadRow: {
        if (!cfg.quadrants_available())
            return illegal;
        const QuadPos p = quadrant_of(at, cfg);
        if (src.index < p.col0 || src.index >= p.col0 + cfg.quadrant_size || src.index == at.col)
            return illegal;
        return {Resolved::Kind::Cell, {at.row, src.index}};
    }
    case K::IntraQuadCol: {
        if (!cfg.quadrants_available())
            return illegal;
        const QuadPos p = quadrant_of(at, cfg);
        if (src.index < p.row0 || src.index >= p.row0 + cfg.quadrant_size || src.index == at.row)
            return illegal;
        return {Resolved::Kind::Cell, {src.index, at.col}};
    }
    case K::ExpressRow: {
        if (!cfg.quadrants_available())
            return illegal;
        const int quads = cfg.cols / cfg.quadrant_size;
        if (quads < 2)
            return illegal;
        // Canonical representative of the one-of-four express choices:
        // the same-offset cell in the next quadrant along the row.
        const QuadPos p = quadrant_of(at, cfg);
        const int peer_quad = (p.quad_col + 1) % quads;
        return {Resolved::Kind::Cell, {at.row, peer_quad * cfg.quadrant_size + (at.col - p.col0)}};
    }
    case K::ExpressCol: {
        if (!cfg.quadrants_available())
            return illegal;
        const int quads = cfg.rows / cfg.quadrant_size;
        if (quads < 2)
            return illegal;
        const QuadPos p = quadrant_of(at, cfg);
        const int peer_quad = (p.quad_row + 1) % quads;
        return {Resolved::Kind::Cell, {peer_quad * cfg.quadrant_size + (at.row - p.row0), at.col}};
    }
    }
    return illegal;
}

std::vector<PortSource> reachable_sources(CellCoord at, const ArrayConfig& cfg) {
    std::vector<PortSource> out;
    out.push_back(PortSource::bus());
    out.push_back(PortSource::zero());

    const auto mesh = {PortSource::north(), PortSource::south(), PortSource::east(),
                       PortSource::west()};
    for (PortSource s : mesh)
        if (resolve_source(at, s, cfg).kind == Resolved::Kind::Cell)
            out.push_back(s);

    if (cfg.diagonal_enabled &&
        resolve_source(at, PortSource::south_west(), cfg).kind == Resolved::Kind::Cell)
        out.push_back(PortSource::south_west());

    if (cfg.quadrants_available()) {
        const QuadPos p = quadrant_of(at, cfg);
        for (int c = p.col0; c < p.col0 + cfg.quadrant_size; ++c)
            if (c != at.col)
                out.push_back(PortSource::intra_quad_row(c));
        for (int r = p.row0; r < p.row0 + cfg.quadrant_size; ++r)
            if (r != at.row)
                out.push_back(PortSource::intra_quad_col(r));
        if (cfg.cols / cfg.quadrant_size >= 2)
            out.push_back(PortSource::express_row());
        if (cfg.rows / cfg.quadrant_size >= 2)
            out.push_back(PortSource::express_col());
    }

    std::sort(out.begin(), out.end());
    return out;
}

bool executable_source(PortSource src) {
    using K = PortSource::Kind;
    return src.kind == K::OperandBus || src.kind == K::Zero || src.kind == K::West ||
           src.kind == K::SouthWest;
}

std::vector<Violation> validate_assignment(const ContextAssignment& assign,
                                           Region region,
                                           const ArrayConfig& cfg) {
    std::vector<Violation> out;
    if (region.rows < 1 || region.cols < 1 || region.rows > cfg.rows || region.cols > cfg.cols) {
        out.push_back({{0, 0}, "region does not fit the array"});
        return out;
    }

    if (assign.mode == BroadcastMode::RowBroadcast)
        out.push_back({{0, 0}, "NotExecutable: row broadcast is modeled but not executable"});

    const int dim = assign.mode == BroadcastMode::ColumnBroadcast ? region.cols : region.rows;
    if (static_cast<int>(assign.words.size()) != dim) {
        out.push_back({{0, 0},
                       "word count " + std::to_string(assign.words.size()) +
                           " does not match broadcast dimension " + std::to_string(dim)});
        return out;
    }

    for (int r = 0; r < region.rows; ++r) {
        for (int c = 0; c < region.cols; ++c) {
            const CellCoord here{r, c};
            const ContextWord& w =
                assign.words[assign.mode == BroadcastMode::ColumnBroadcast ? c : r];
            if (w.weight_index < 0)
                out.push_back({here, "negative weight index"});
            if (w.op == CellOp::Mul && w.src_b.kind != PortSource::Kind::Zero)
                out.push_back({here, "Mul requires src_b = zero"});
            if (w.op == CellOp::MulAdd && w.src_b.kind == PortSource::Kind::Zero)
                out.push_back({here, "MulAdd requires src_b != zero"});
            if (!executable_source(w.src_b)) {
                out.push_back({here, "NotExecutable: source " + to_string(w.src_b) +
                                         " is connectivity-only"});
                continue;
            }
            if (resolve_source(here, w.src_b, cfg).kind == Resolved::Kind::Illegal)
                out.push_back({here, "IllegalSource: " + to_string(w.src_b) +
                                         " not available under this config"});
        }
    }
    return out;
}

} // namespace morphfir
