#pragma once
// Sign assignments: the three axioms as an F2 linear system, solver,
// verification, true/false conversion and gauge equivalence.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "lensgrid/complexes.hpp"
#include "lensgrid/linalg.hpp"

namespace lensgrid {

// One rectangle instance (the sign domain is indexed by source generator,
// target generator and geometry together).
struct RectInfo {
    int id = 0;
    int x = 0, y = 0;          // generator indices
    Rect r;
    std::vector<uint8_t> dom;  // per-cell multiplicity, cells in (a,b) lex order
    bool empty = false;
};

struct SignKey {
    int x, y;
    Rect r;
    auto operator<=>(const SignKey&) const = default;
};
using SignAssignment = std::map<SignKey, int>;  // values +-1

std::vector<RectInfo> all_rects(const GridDiagram& d, const GenTable& gt);

// One F2 equation: sum of sigma over vars = rhs.
struct SignEq {
    std::vector<int> vars;
    int rhs;
};

// Axiom system for the given flavor ('true' or 'false'); also reports the
// numbers of thin vertical/horizontal annulus equations found.
struct SignSystem {
    std::vector<SignEq> eqs;
    int n_thin_v = 0, n_thin_h = 0;
};
SignSystem sign_system(const GridDiagram& d, const std::vector<RectInfo>& rects, bool flavor_true);

// Gaussian elimination over F2; returns one solution (sigma bits) or nullopt.
// `fix` optionally pins one variable to a value (used to produce a second,
// distinct solution when the system is underdetermined).
std::optional<std::vector<uint8_t>> f2_solve(size_t nv, const std::vector<SignEq>& eqs,
                                             std::optional<std::pair<int, int>> fix = {});

// Solve and package as a SignAssignment; throws E_INFEASIBLE on failure.
SignAssignment solve_signs(const GridDiagram& d, const GenTable& gt, bool flavor_true = true);

// A second solution differing from `first`, if the system is underdetermined.
std::optional<std::vector<uint8_t>> second_solution(size_t nv, const std::vector<SignEq>& eqs,
                                                    const std::vector<uint8_t>& first);

// Number of violated axiom equations.
int verify_axioms(const std::vector<SignEq>& eqs, const std::vector<uint8_t>& sol);

// True -> false conversion: multiply by (-1)^(n_X + n_XX) of the rectangle.
SignAssignment to_false(const GridDiagram& d, const GenTable& gt, const SignAssignment& s_true);

// Gauge equivalence: find f : generators -> +-1 with S2 = S1 * f(x) * f(y),
// by parity propagation over the rectangle graph.  nullopt if inconsistent.
std::optional<std::vector<int>> gauge_equivalence(const GenTable& gt,
                                                  const std::vector<RectInfo>& rects,
                                                  const std::vector<uint8_t>& sol1,
                                                  const std::vector<uint8_t>& sol2);

// Convenience: assignment from a raw solution vector.
SignAssignment pack_signs(const GenTable& gt, const std::vector<RectInfo>& rects,
                          const std::vector<uint8_t>& sol);

}  // namespace lensgrid
