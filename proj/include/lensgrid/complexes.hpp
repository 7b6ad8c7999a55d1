#pragma once
// Generators, lens rectangles, gradings and Spin^c classes.
//
// A generator is one lift point per lens row: x[b] in [0,pN) with {x[b] mod N}
// a permutation of [0,N).  Rectangles are stored by a lift representative
// (a1,b1,w,h), lower-left lattice corner at x's point on row b1, with
// 1 <= h < pN and h not a multiple of N.

#include <map>
#include <vector>

#include "lensgrid/diagram.hpp"

namespace lensgrid {

using Gen = std::vector<int>;

struct Rect {
    int a1, b1, w, h;
    bool operator==(const Rect&) const = default;
    auto operator<=>(const Rect&) const = default;
};

struct RectCand {
    Gen y;
    Rect r;
};

// Deterministic generator order: permutations lexicographic, winding digit
// vectors in odometer order (last row fastest).  Throws E_TOOBIG when
// N! * p^N exceeds `cap` (default 10^6, overridable via LENSGRID_CAP).
std::vector<Gen> enumerate_generators(const GridDiagram& d, long long cap = 1000000);

// x-tilde(b') for b' in [0, pN): the lift column positions of x.
std::vector<int> liftcols(const GridDiagram& d, const Gen& x);

// All rectangle candidates out of x (before emptiness/embeddedness filters).
std::vector<RectCand> rect_candidates(const GridDiagram& d, const Gen& x);

// The p lift copies of every point of x.
std::vector<Cell> lift_points(const GridDiagram& d, const Gen& x);

bool inside_open(const GridDiagram& d, Cell P, const Rect& r);
bool is_empty(const GridDiagram& d, const Gen& x, const Gen& y, const Rect& r);
bool embedded(const GridDiagram& d, const Rect& r);

// Multiplicity of the (downstairs) mark at `cell` inside r: the number of the
// p lift copies of the cell's center that land in the representative.
int mark_mult(const GridDiagram& d, const Rect& r, Cell cell);

struct RectMarks {
    int nO = 0, nX = 0, nXX = 0;
};
RectMarks rect_marks(const GridDiagram& d, const Rect& r);

// Both rectangles between x and y (set size 0 or 2, asserted by tests).
std::vector<Rect> rect_between(const GridDiagram& d, const Gen& x, const Gen& y);

// Lens-space correction term d(p,q,i); E_ARGS on gcd violation.
Rat d_invariant(int p, int q, int i);

struct GradingData {
    std::vector<Rat> MO, MX, A;  // indexed like the generator list
    std::vector<int> MZ;         // integral Maslov lift (0 at the lex-least
                                 // generator of each Spin^c class)
    std::vector<int> spinc;      // class id per generator, ids in [0,p)
    int n_classes = 0;
};

// Generator table with O(1) lookup.
struct GenTable {
    std::vector<Gen> gens;
    std::map<Gen, int> index;
    explicit GenTable(const GridDiagram& d, long long cap = 1000000);
    int at(const Gen& g) const { return index.at(g); }
};

// Absolute gradings: M = J(...)/p + d(p,q,(q-1) mod p) + 1/p, A from the
// M_O/M_X difference; Spin^c classes by union-find over rectangle candidates.
GradingData grade(const GridDiagram& d, const GenTable& gt);

// Sorted O cells; exponent vectors everywhere are indexed by this list.
std::vector<Cell> olist(const GridDiagram& d);

}  // namespace lensgrid
