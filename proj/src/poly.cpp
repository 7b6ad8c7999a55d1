#include "lensgrid/poly.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace lensgrid {

static std::vector<Term> collapse(std::map<std::pair<int, Exp>, long long>& acc, bool f2) {
    std::vector<Term> out;
    for (auto& [key, c] : acc) {
        long long cc = f2 ? ((c % 2 + 2) % 2) : c;
        if (cc != 0) out.push_back(Term{key.first, key.second, cc});
    }
    return out;
}

PolyMap pm_compose(const PolyMap& f, const PolyMap& g, bool f2) {
    // (f after g): apply g first, then f.
    PolyMap out;
    for (auto& [x, gts] : g) {
        std::map<std::pair<int, Exp>, long long> acc;
        for (auto& t1 : gts) {
            auto it = f.find(t1.g);
            if (it == f.end()) continue;
            for (auto& t2 : it->second) {
                Exp e(t1.e);
                if (e.size() < t2.e.size()) e.resize(t2.e.size(), 0);
                for (size_t i = 0; i < t2.e.size(); i++) e[i] += t2.e[i];
                acc[{t2.g, e}] += t1.c * t2.c;
            }
        }
        auto terms = collapse(acc, f2);
        if (!terms.empty()) out[x] = std::move(terms);
    }
    return out;
}

PolyMap pm_add(const std::vector<const PolyMap*>& fs) {
    PolyMap out;
    std::map<int, std::map<std::pair<int, Exp>, long long>> acc;
    for (auto* f : fs)
        for (auto& [x, ts] : *f)
            for (auto& t : ts) acc[x][{t.g, t.e}] += t.c;
    for (auto& [x, m] : acc) {
        std::vector<Term> terms;
        for (auto& [key, c] : m)
            if (c != 0) terms.push_back(Term{key.first, key.second, c});
        if (!terms.empty()) out[x] = std::move(terms);
    }
    return out;
}

PolyMap pm_scale(const PolyMap& f, long long s) {
    PolyMap out;
    if (s == 0) return out;
    for (auto& [x, ts] : f) {
        auto& o = out[x];
        for (auto& t : ts) o.push_back(Term{t.g, t.e, t.c * s});
    }
    return out;
}

static std::map<std::pair<int, Exp>, long long> row_of(const PolyMap& f, int x, bool f2) {
    std::map<std::pair<int, Exp>, long long> acc;
    auto it = f.find(x);
    if (it != f.end())
        for (auto& t : it->second) acc[{t.g, t.e}] += t.c;
    for (auto it2 = acc.begin(); it2 != acc.end();) {
        long long c = f2 ? ((it2->second % 2 + 2) % 2) : it2->second;
        if (c == 0)
            it2 = acc.erase(it2);
        else {
            it2->second = c;
            ++it2;
        }
    }
    return acc;
}

bool pm_equal(const PolyMap& f, const PolyMap& g, bool f2) {
    std::set<int> xs;
    for (auto& [x, _] : f) xs.insert(x);
    for (auto& [x, _] : g) xs.insert(x);
    for (int x : xs)
        if (row_of(f, x, f2) != row_of(g, x, f2)) return false;
    return true;
}

bool pm_is_zero(const PolyMap& f, bool f2) { return pm_equal(f, PolyMap{}, f2); }

PolyMap pm_restrict(const PolyMap& f, const std::set<int>& src, const std::set<int>& tgt) {
    PolyMap out;
    for (auto& [x, ts] : f) {
        if (!src.count(x)) continue;
        std::vector<Term> keep;
        for (auto& t : ts)
            if (tgt.count(t.g)) keep.push_back(t);
        if (!keep.empty()) out[x] = std::move(keep);
    }
    return out;
}

// All compositions of t into n nonnegative parts, lexicographically by prefix.
static void comps(int t, int n, Exp& cur, std::vector<Exp>& out) {
    if (n == 1) {
        cur.push_back(t);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int i = 0; i <= t; i++) {
        cur.push_back(i);
        comps(t - i, n - 1, cur, out);
        cur.pop_back();
    }
}

std::vector<SlotComplex::BasisElt> SlotComplex::basis_at(const Rat& m, const Rat& a) const {
    std::vector<BasisElt> out;
    for (int g = 0; g < (int)bigr.size(); g++) {
        Rat t2 = bigr[g].first - m;   // 2t
        Rat t1 = bigr[g].second - a;  // t
        if (t2 != 2 * t1) continue;
        if (t1.denominator() != 1 || t1.numerator() < 0) continue;
        int t = (int)t1.numerator();
        if (nO == 0) {
            if (t == 0) out.push_back({g, Exp{}});
            continue;
        }
        std::vector<Exp> es;
        Exp cur;
        comps(t, nO, cur, es);
        for (auto& e : es) out.push_back({g, e});
    }
    return out;
}

std::set<std::pair<Rat, Rat>> window_of(const SlotComplex& C, int tmax) {
    std::set<std::pair<Rat, Rat>> out;
    for (auto& [m, a] : C.bigr)
        for (int t = 0; t <= tmax; t++) out.insert({m - 2 * t, a - t});
    return out;
}

std::vector<BitVec> map_matrix_cols(const PolyMap& f,
                                    const std::vector<SlotComplex::BasisElt>& basisS,
                                    const std::vector<SlotComplex::BasisElt>& basisT) {
    std::map<SlotComplex::BasisElt, int> tidx;
    for (int i = 0; i < (int)basisT.size(); i++) tidx[basisT[i]] = i;
    std::vector<BitVec> cols;
    cols.reserve(basisS.size());
    for (auto& [g, e] : basisS) {
        BitVec col(basisT.size());
        auto it = f.find(g);
        if (it != f.end()) {
            for (auto& t : it->second) {
                if ((t.c % 2 + 2) % 2 == 0) continue;
                Exp e2(e);
                if (e2.size() < t.e.size()) e2.resize(t.e.size(), 0);
                for (size_t i = 0; i < t.e.size(); i++) e2[i] += t.e[i];
                auto jt = tidx.find({t.g, e2});
                if (jt != tidx.end()) col.flip(jt->second);
            }
        }
        cols.push_back(std::move(col));
    }
    return cols;
}

std::vector<std::vector<long long>> map_matrix_z(
    const PolyMap& f, const std::vector<SlotComplex::BasisElt>& basisS,
    const std::vector<SlotComplex::BasisElt>& basisT) {
    std::map<SlotComplex::BasisElt, int> tidx;
    for (int i = 0; i < (int)basisT.size(); i++) tidx[basisT[i]] = i;
    std::vector<std::vector<long long>> cols;
    cols.reserve(basisS.size());
    for (auto& [g, e] : basisS) {
        std::vector<long long> col(basisT.size(), 0);
        auto it = f.find(g);
        if (it != f.end()) {
            for (auto& t : it->second) {
                Exp e2(e);
                if (e2.size() < t.e.size()) e2.resize(t.e.size(), 0);
                for (size_t i = 0; i < t.e.size(); i++) e2[i] += t.e[i];
                auto jt = tidx.find({t.g, e2});
                if (jt != tidx.end()) col[jt->second] += t.c;
            }
        }
        cols.push_back(std::move(col));
    }
    return cols;
}

HomologyData homology_data(const SlotComplex& C, const Rat& m, const Rat& a) {
    HomologyData hd;
    hd.basis = C.basis_at(m, a);
    auto B0 = C.basis_at(m - 1, a);
    auto B2 = C.basis_at(m + 1, a);
    auto d1 = map_matrix_cols(C.diff, hd.basis, B0);
    // Kernel of d1: rows of the transpose span constraints over basis coords.
    std::vector<BitVec> rows;
    for (int i = 0; i < (int)B0.size(); i++) {
        BitVec row(hd.basis.size());
        for (int j = 0; j < (int)hd.basis.size(); j++)
            if (d1[j].get(i)) row.set(j);
        rows.push_back(std::move(row));
    }
    hd.cycles = f2_nullspace(rows, (int)hd.basis.size());
    auto d2 = map_matrix_cols(C.diff, B2, hd.basis);
    for (auto& col : d2)
        if (col.any()) hd.boundaries.push_back(col);
    int rb = f2_rank(hd.boundaries);
    hd.dim = (int)hd.cycles.size() - rb;
    return hd;
}

ZHomology homology_z_at(const SlotComplex& C, const Rat& m, const Rat& a) {
    auto B1 = C.basis_at(m, a);
    auto B0 = C.basis_at(m - 1, a);
    auto B2 = C.basis_at(m + 1, a);
    auto d1 = map_matrix_z(C.diff, B1, B0);
    auto d2 = map_matrix_z(C.diff, B2, B1);
    // Row-major matrices for SNF: d1 as |B0| x |B1|, d2 as |B1| x |B2|.
    std::vector<std::vector<long long>> M1(B0.size(), std::vector<long long>(B1.size(), 0));
    for (size_t j = 0; j < B1.size(); j++)
        for (size_t i = 0; i < B0.size(); i++) M1[i][j] = d1[j][i];
    std::vector<std::vector<long long>> M2(B1.size(), std::vector<long long>(B2.size(), 0));
    for (size_t j = 0; j < B2.size(); j++)
        for (size_t i = 0; i < B1.size(); i++) M2[i][j] = d2[j][i];
    int r1 = z_rank(M1);
    auto fac = smith_normal_form(M2);
    int r2 = (int)fac.size();
    ZHomology out;
    out.rank = (int)B1.size() - r1 - r2;
    for (long long f : fac)
        if (f > 1 || f < -1) out.torsion.push_back(f < 0 ? -f : f);
    return out;
}

int induced_rank(const PolyMap& f, const SlotComplex& CS, const SlotComplex& CT,
                 const Rat& m, const Rat& a, const Rat& dm, const Rat& da) {
    auto hs = homology_data(CS, m, a);
    auto ht = homology_data(CT, m + dm, a + da);
    auto fm = map_matrix_cols(f, hs.basis, ht.basis);
    // Images of cycle basis vectors, reduced modulo target boundaries.
    std::vector<BitVec> span(ht.boundaries);
    int rb = f2_rank(span);
    std::vector<BitVec> all(span);
    int count = 0;
    for (auto& cyc : hs.cycles) {
        BitVec img(ht.basis.size());
        for (int j = 0; j < (int)hs.basis.size(); j++)
            if (cyc.get(j)) img.xor_in(fm[j]);
        all.push_back(std::move(img));
    }
    count = f2_rank(all) - rb;
    return count;
}

ExactnessInfo exactness_at(const PolyMap& fin, const SlotComplex& CA, const SlotComplex& CB,
                           const PolyMap& fout, const SlotComplex& CC, const Rat& m,
                           const Rat& a, std::pair<Rat, Rat> din, std::pair<Rat, Rat> dout) {
    ExactnessInfo info;
    info.dim_mid = homology_data(CB, m, a).dim;
    info.rank_in = induced_rank(fin, CA, CB, m - din.first, a - din.second, din.first, din.second);
    info.rank_out = induced_rank(fout, CB, CC, m, a, dout.first, dout.second);
    // Composite on homology: push source cycles through both maps, check each
    // image is a boundary in CC.
    auto hs = homology_data(CA, m - din.first, a - din.second);
    auto hc = homology_data(CC, m + dout.first, a + dout.second);
    auto comp = pm_compose(fout, fin, true);
    auto cm = map_matrix_cols(comp, hs.basis, hc.basis);
    for (auto& cyc : hs.cycles) {
        BitVec img(hc.basis.size());
        for (int j = 0; j < (int)hs.basis.size(); j++)
            if (cyc.get(j)) img.xor_in(cm[j]);
        if (img.any() && !f2_in_span(hc.boundaries, img)) {
            info.composite_zero = false;
            break;
        }
    }
    info.ok = info.composite_zero && (info.rank_in + info.rank_out == info.dim_mid);
    return info;
}

}  // namespace lensgrid
