#include "lensgrid/linalg.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>

namespace lensgrid {

long BitVec::lowest() const {
    for (size_t i = 0; i < w.size(); i++)
        if (w[i]) return static_cast<long>(i * 64 + std::countr_zero(w[i]));
    return -1;
}

long BitVec::highest() const {
    for (size_t i = w.size(); i-- > 0;)
        if (w[i]) return static_cast<long>(i * 64 + 63 - std::countl_zero(w[i]));
    return -1;
}

bool F2Eliminator::add(BitVec row) {
    row = reduce(std::move(row));
    long lead = row.lowest();
    if (lead < 0) return false;
    pivots_.push_back({lead, std::move(row)});
    std::sort(pivots_.begin(), pivots_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return true;
}

BitVec F2Eliminator::reduce(BitVec v) const {
    bool changed = true;
    while (changed) {
        changed = false;
        long lead = v.lowest();
        if (lead < 0) break;
        for (const auto& [pc, pr] : pivots_) {
            if (pc < lead) continue;
            if (pc > lead) break;
            v.xor_in(pr);
            changed = true;
            break;
        }
    }
    return v;
}

int f2_rank(std::vector<BitVec> rows) {
    // Pivot on the lowest set bit; keyed pivot table.
    std::vector<std::pair<long, BitVec>> piv;  // sorted by pivot bit
    int rank = 0;
    for (auto& r : rows) {
        BitVec cur = std::move(r);
        while (true) {
            long lead = cur.lowest();
            if (lead < 0) break;
            auto it = std::lower_bound(piv.begin(), piv.end(), lead,
                                       [](const auto& p, long v) { return p.first < v; });
            if (it != piv.end() && it->first == lead) {
                cur.xor_in(it->second);
            } else {
                piv.insert(it, {lead, std::move(cur)});
                rank++;
                break;
            }
        }
    }
    return rank;
}

std::vector<BitVec> f2_nullspace(const std::vector<BitVec>& rows, size_t ncols) {
    // Row-reduce with pivot on the highest set bit, keeping rows fully reduced.
    std::vector<std::pair<long, BitVec>> rref;
    for (const auto& r0 : rows) {
        BitVec cur = r0;
        if (cur.w.size() < (ncols + 63) / 64) cur.w.resize((ncols + 63) / 64, 0);
        for (const auto& [pc, pr] : rref)
            if (cur.get(static_cast<size_t>(pc))) cur.xor_in(pr);
        long pc = cur.highest();
        if (pc < 0) continue;
        for (auto& [c, rr] : rref)
            if (rr.get(static_cast<size_t>(pc))) rr.xor_in(cur);
        rref.push_back({pc, std::move(cur)});
    }
    std::vector<bool> is_pivot(ncols, false);
    for (const auto& [pc, pr] : rref) is_pivot[static_cast<size_t>(pc)] = true;
    std::vector<BitVec> basis;
    for (size_t fc = 0; fc < ncols; fc++) {
        if (is_pivot[fc]) continue;
        BitVec v(ncols);
        v.set(fc);
        for (const auto& [pc, pr] : rref)
            if (pr.get(fc)) v.set(static_cast<size_t>(pc));
        basis.push_back(std::move(v));
    }
    return basis;
}

bool f2_in_span(const std::vector<BitVec>& rows, const BitVec& v) {
    F2Eliminator el;
    for (const auto& r : rows) el.add(r);
    return !el.reduce(v).any();
}

namespace {

void check_mag(long long v) {
    if (std::llabs(v) > (1LL << 60))
        throw MathInvariantError("integer overflow risk in exact elimination");
}

}  // namespace

std::vector<long long> smith_normal_form(std::vector<std::vector<long long>> m) {
    size_t R = m.size(), C = R ? m[0].size() : 0;
    std::vector<long long> factors;
    size_t t = 0;
    while (t < R && t < C) {
        // Find a pivot of minimal absolute value in the submatrix.
        size_t pi = t, pj = t;
        long long best = 0;
        for (size_t i = t; i < R; i++)
            for (size_t j = t; j < C; j++)
                if (m[i][j] != 0 && (best == 0 || std::llabs(m[i][j]) < std::llabs(best))) {
                    best = m[i][j];
                    pi = i;
                    pj = j;
                }
        if (best == 0) break;
        std::swap(m[t], m[pi]);
        for (size_t i = 0; i < R; i++) std::swap(m[i][t], m[i][pj]);
        bool clean = true;
        for (size_t i = t + 1; i < R; i++) {
            if (m[i][t] % m[t][t] != 0) continue;
            long long f = m[i][t] / m[t][t];
            for (size_t j = t; j < C; j++) {
                m[i][j] -= f * m[t][j];
                check_mag(m[i][j]);
            }
        }
        for (size_t i = t + 1; i < R; i++)
            if (m[i][t] != 0) clean = false;
        for (size_t j = t + 1; j < C; j++) {
            if (clean && m[t][j] % m[t][t] == 0) {
                long long f = m[t][j] / m[t][t];
                for (size_t i = t; i < R; i++) {
                    m[i][j] -= f * m[i][t];
                    check_mag(m[i][j]);
                }
            }
        }
        for (size_t j = t + 1; j < C; j++)
            if (m[t][j] != 0) clean = false;
        if (!clean) continue;  // re-pick a smaller pivot
        // Divisibility fix-up: fold any non-divisible entry into row t.
        bool redo = false;
        for (size_t i = t + 1; i < R && !redo; i++)
            for (size_t j = t + 1; j < C && !redo; j++)
                if (m[i][j] % m[t][t] != 0) {
                    for (size_t jj = t; jj < C; jj++) {
                        m[t][jj] += m[i][jj];
                        check_mag(m[t][jj]);
                    }
                    redo = true;
                }
        if (redo) continue;
        factors.push_back(std::llabs(m[t][t]));
        t++;
    }
    // Normalize to a divisibility chain d1 | d2 | ...
    for (size_t i = 0; i < factors.size(); i++)
        for (size_t j = i + 1; j < factors.size(); j++) {
            long long g = std::gcd(factors[i], factors[j]);
            long long l = factors[i] / g * factors[j];
            factors[i] = g;
            factors[j] = l;
        }
    return factors;
}

int z_rank(std::vector<std::vector<long long>> m) {
    // Rank over Q equals the number of SNF factors; reuse the same routine on
    // small matrices, but prefer cheap fraction-free elimination when entries
    // stay small.
    return static_cast<int>(smith_normal_form(std::move(m)).size());
}

}  // namespace lensgrid
