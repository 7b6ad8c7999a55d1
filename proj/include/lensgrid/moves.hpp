#pragma once
// Grid moves: cyclic permutation, commutation, stabilization/destabilization
// (O/X by compass variant, XX by canonical fill index), a seeded fuzzer, and
// the CLI move-script parser.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lensgrid/diagram.hpp"

namespace lensgrid {

enum class Axis { Row, Col };

// Columns: a -> a+shift.  Rows: b -> b+shift; a row wrapping off the top
// re-enters at the bottom with a -> a-qN (and a -> a+qN wrapping downward),
// matching the lift's deck translation.
GridDiagram cyclic_permute(const GridDiagram& d, Axis axis, int shift);

// Swap adjacent lens rows b,b+1 / lens columns j,j+1.  Legal only when both
// lines carry exactly two marks whose spans on the shared circle neither
// interleave nor share endpoints.  Throws E_NOT_COMMUTABLE.
GridDiagram commute(const GridDiagram& d, Axis axis, int index);
bool commutable(const GridDiagram& d, Axis axis, int index);

// All valid local fills for splitting `cell`'s row and column (block cells
// plus the forced partner placements), in deterministic DFS order.
std::vector<std::map<Cell, Mark>> stab_fills(const GridDiagram& d, Cell cell);

// O/X stabilization variants; XX variants are "v<k>", k indexing the
// lexicographically sorted valid fills (16 on generic diagrams).
GridDiagram stabilize(const GridDiagram& d, Cell cell, const std::string& variant);

// Inverse: merge lens columns j,j+1 and rows b,b+1 when the block matches a
// stabilization image (verified by re-stabilizing).  Throws E_NOT_DESTAB.
std::pair<GridDiagram, std::string> destabilize(const GridDiagram& d, int j, int b);

struct MoveRec {
    std::string desc;
    GridDiagram result;
};

// Deterministic random move sequence (commutation, cyclic permutation, O/X
// (de)stabilization only; sizes kept <= max_n).
std::vector<MoveRec> fuzz_sequence(const GridDiagram& d, uint64_t seed, int steps,
                                   int max_n = 4);

// Script grammar: commands separated by ';'.
//   C row|col <index>            commutation
//   S <KIND>@(<a>,<b>) <variant> stabilization (variant NW/NE/SW/SE or v<k>)
//   D <row> <col>                destabilization
//   P row|col <shift>            cyclic permutation
std::vector<MoveRec> apply_script(const GridDiagram& d, const std::string& script);

}  // namespace lensgrid
