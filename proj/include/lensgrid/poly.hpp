#pragma once
// Sparse maps with monomial U-coefficients between free modules, and the
// windowed "slot complex" engine used for minus homology, mapping cones and
// the resolution cube.
//
// A node is an abstract basis element (an int id assigned by the builder);
// terms carry a target node, an exponent delta over the diagram's O set, and
// an integer coefficient.

#include <map>
#include <set>
#include <vector>

#include "lensgrid/common.hpp"
#include "lensgrid/linalg.hpp"

namespace lensgrid {

using Exp = std::vector<int>;

struct Term {
    int g;
    Exp e;
    long long c;
};

using PolyMap = std::map<int, std::vector<Term>>;

PolyMap pm_compose(const PolyMap& f, const PolyMap& g, bool f2 = true);
PolyMap pm_add(const std::vector<const PolyMap*>& fs);
PolyMap pm_scale(const PolyMap& f, long long s);
bool pm_equal(const PolyMap& f, const PolyMap& g, bool f2 = true);
bool pm_is_zero(const PolyMap& f, bool f2 = true);
PolyMap pm_restrict(const PolyMap& f, const std::set<int>& src, const std::set<int>& tgt);

// Bigraded complex over R = Z[U_1..U_nO] given by nodes with (M, A) and a
// differential; graded pieces are spanned by U^v * node monomials.
struct SlotComplex {
    int nO = 0;
    std::vector<std::pair<Rat, Rat>> bigr;  // per node
    PolyMap diff;

    using BasisElt = std::pair<int, Exp>;  // (node, exponent vector)
    std::vector<BasisElt> basis_at(const Rat& m, const Rat& a) const;
};

// All (M - 2t, A - t) for node bigradings and 0 <= t <= tmax.
std::set<std::pair<Rat, Rat>> window_of(const SlotComplex& C, int tmax);

// Matrix of f on monomial bases, one column (over basisT) per basisS element.
std::vector<BitVec> map_matrix_cols(const PolyMap& f,
                                    const std::vector<SlotComplex::BasisElt>& basisS,
                                    const std::vector<SlotComplex::BasisElt>& basisT);
std::vector<std::vector<long long>> map_matrix_z(
    const PolyMap& f, const std::vector<SlotComplex::BasisElt>& basisS,
    const std::vector<SlotComplex::BasisElt>& basisT);  // rows = basisT

struct HomologyData {
    std::vector<SlotComplex::BasisElt> basis;  // at (m, a)
    std::vector<BitVec> cycles;                // kernel basis, coords over basis
    std::vector<BitVec> boundaries;            // image vectors, coords over basis
    int dim = 0;                               // F2 homology dimension
};
HomologyData homology_data(const SlotComplex& C, const Rat& m, const Rat& a);

struct ZHomology {
    int rank = 0;
    std::vector<long long> torsion;  // invariant factors > 1
};
ZHomology homology_z_at(const SlotComplex& C, const Rat& m, const Rat& a);

// Rank of the map induced by f on F2 homology, H_{m,a}(CS) -> H_{m+dm,a+da}(CT).
int induced_rank(const PolyMap& f, const SlotComplex& CS, const SlotComplex& CT,
                 const Rat& m, const Rat& a, const Rat& dm, const Rat& da);

// Exactness of H(CA) --fin--> H_{m,a}(CB) --fout--> H(CC) over F2: composite
// vanishes on homology and rank fin + rank fout = dim H(CB).
struct ExactnessInfo {
    bool ok = false;
    int rank_in = 0, rank_out = 0, dim_mid = 0;
    bool composite_zero = true;
};
ExactnessInfo exactness_at(const PolyMap& fin, const SlotComplex& CA, const SlotComplex& CB,
                           const PolyMap& fout, const SlotComplex& CC, const Rat& m,
                           const Rat& a, std::pair<Rat, Rat> din, std::pair<Rat, Rat> dout);

}  // namespace lensgrid
