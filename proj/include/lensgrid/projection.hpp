#pragma once
// Link projection reconstruction: oriented arcs, crossings, edge partition.
//
// Conventions: horizontal arcs run from an O to the X/XX in its row (drawn
// without wrapping between the fundamental-domain representatives); vertical
// arcs emanate from an X/XX and run upward (wrap-aware) to an O in the same
// lens column.  Horizontal arcs pass under vertical ones.  A crossing is
// positive iff its horizontal under-arc points left.

#include <vector>

#include "lensgrid/diagram.hpp"

namespace lensgrid {

struct HArc {
    int row;
    Cell o, x;                   // endpoints (x may carry an XX)
    int dir;                     // +1 if the arc points right (O left of X)
    std::vector<Cell> interior;  // strictly between the endpoints
};

struct VArc {
    int col;  // lens column
    Cell x, o;
    std::vector<Cell> interior;  // cells passed walking up from x (excluding o)
};

struct Crossing {
    Cell cell;
    int sign;  // +1 / -1
    bool operator==(const Crossing& c) const { return cell == c.cell && sign == c.sign; }
    auto operator<=>(const Crossing& c) const = default;
};

std::vector<HArc> harcs(const GridDiagram& d);
std::vector<VArc> varcs(const GridDiagram& d);
std::vector<Crossing> crossings(const GridDiagram& d);

// Thin-edge / component partition of the projection.
struct EdgePartition {
    int n = 0;  // #XX (thick edges)
    int k = 0;  // #X
    int m = 0;  // regular S1 components
    // Distinguished O cells: lexicographically smallest O on each thin edge or
    // regular component; they receive the low indices O_1..O_{2n+m} in the
    // canonical numbering below.
    std::vector<Cell> distinguished;
    // Canonical numbering: o_order[i] is the cell of O_{i+1}.
    std::vector<Cell> o_order;
};
EdgePartition edge_partition(const GridDiagram& d);

}  // namespace lensgrid
