#pragma once
// Exact linear algebra: bit-packed GF(2) elimination and integer Smith
// normal form.

#include <cstdint>
#include <vector>

#include "lensgrid/common.hpp"

namespace lensgrid {

// Dynamic bit vector (little-endian words).
struct BitVec {
    std::vector<uint64_t> w;

    BitVec() = default;
    explicit BitVec(size_t nbits) : w((nbits + 63) / 64, 0) {}

    bool get(size_t i) const { return (w[i / 64] >> (i % 64)) & 1; }
    void set(size_t i) { w[i / 64] |= uint64_t(1) << (i % 64); }
    void flip(size_t i) { w[i / 64] ^= uint64_t(1) << (i % 64); }
    void xor_in(const BitVec& o) {
        for (size_t i = 0; i < o.w.size(); i++) w[i] ^= o.w[i];
    }
    bool any() const {
        for (uint64_t x : w)
            if (x) return true;
        return false;
    }
    // Index of the lowest set bit, or -1.
    long lowest() const;
    // Index of the highest set bit, or -1.
    long highest() const;
    bool operator==(const BitVec& o) const = default;
};

// Rank of a set of rows (pivot on the lowest set bit).
int f2_rank(std::vector<BitVec> rows);

// Nullspace basis of the matrix whose rows are given (ncols variables;
// pivot on the highest set bit, mirroring the reference implementation).
std::vector<BitVec> f2_nullspace(const std::vector<BitVec>& rows, size_t ncols);

// Is v in the row span of rows?  (rows may be pre-reduced or not.)
bool f2_in_span(const std::vector<BitVec>& rows, const BitVec& v);

// Incremental GF(2) eliminator for rank queries and span membership.
class F2Eliminator {
public:
    // Returns true if the row increased the rank (was independent).
    bool add(BitVec row);
    int rank() const { return static_cast<int>(pivots_.size()); }
    // Reduce v against the current pivot rows; result nonzero iff independent.
    BitVec reduce(BitVec v) const;

private:
    std::vector<std::pair<long, BitVec>> pivots_;  // (pivot bit, row)
};

// Smith normal form of an integer matrix.  Returns the diagonal invariant
// factors d1 | d2 | ... (non-negative, zeros dropped).
std::vector<long long> smith_normal_form(std::vector<std::vector<long long>> m);

// Rank over Q of an integer matrix (via fraction-free elimination).
int z_rank(std::vector<std::vector<long long>> m);

}  // namespace lensgrid
