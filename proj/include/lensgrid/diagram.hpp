#pragma once
// Grid diagrams for (possibly singular) links in lens spaces L(p,q).
//
// All geometry lives on the quotient of the pN x pN square toroidal grid by
// the deck map T(a,b) = ((a+qN) mod pN, (b+N) mod pN).  Files store the
// fundamental-domain representative: a in [0,pN), b in [0,N).

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "lensgrid/common.hpp"

namespace lensgrid {

enum class Mark : unsigned char { O, X, XX };

const char* mark_name(Mark m);

using Cell = std::pair<int, int>;  // (a, b)

struct GridDiagram {
    int p = 1;
    int q = 0;
    int N = 0;
    std::map<Cell, Mark> marks;  // ordered lexicographically on (a,b)

    int pN() const { return p * N; }

    // Horizontal offset picked up when b wraps past N in the lift.  The deck
    // orientation (a-qN rather than a+qN per wrap downward) is pinned by the
    // grading-vs-rectangle consistency tests.
    int shift() const { return mod(-static_cast<long long>(q) * N, pN()); }

    bool operator==(const GridDiagram& o) const {
        return p == o.p && q == o.q && N == o.N && marks == o.marks;
    }

    // Throws LensError (E_PARAMS / E_COORDS / E_ROW / E_COL) on violation.
    void validate() const;
    bool is_valid() const;

    // Counts: n = #XX, k = #X (so #O = 2n + k on valid diagrams).
    int n_xx() const;
    int n_x() const;

    // Neighbour cells in the fundamental-domain picture (wrap-aware).
    Cell up_cell(Cell c) const;
    Cell down_cell(Cell c) const;
    Cell left_cell(Cell c) const;
    Cell right_cell(Cell c) const;

    // All p deck translates of a fundamental-domain cell, on the pN x pN lift.
    std::vector<Cell> lift_orbit(Cell c) const;

    std::string serialize() const;  // lensgrid v1 text
};

// Parse `lensgrid v1` text.  Throws LensError on any violation.
GridDiagram parse_diagram(const std::string& text);
GridDiagram load_diagram(const std::string& path);

// The lift as a plain size-pN S3 grid (asserts the lifted validity contract).
struct LiftedGrid {
    int size = 0;                // pN
    std::map<Cell, Mark> marks;  // T-orbit of the fundamental marks
};
LiftedGrid lift(const GridDiagram& d);

// Deterministic renders.
std::string render_ascii(const GridDiagram& d);
std::string render_svg(const GridDiagram& d);

// All valid diagrams with the given XX count.  Guarded by pN*N <= cell_cap
// (E_TOOBIG); the default cap can be overridden via LENSGRID_CAP.
std::vector<GridDiagram> enumerate_diagrams(int p, int q, int N, int n_xx,
                                            long long cell_cap = 24);

}  // namespace lensgrid
