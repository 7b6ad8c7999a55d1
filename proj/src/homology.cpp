#include "lensgrid/homology.hpp"

#include <algorithm>

namespace lensgrid {

PolyMap dminus_poly(const GridDiagram& d, const GenTable& gt, const SignAssignment* signs) {
    PolyMap out;
    auto Ol = olist(d);
    for (int xi = 0; xi < (int)gt.gens.size(); xi++) {
        std::vector<Term> terms;
        for (auto& rc : rect_candidates(d, gt.gens[xi])) {
            if (!is_empty(d, gt.gens[xi], rc.y, rc.r)) continue;
            auto rm = rect_marks(d, rc.r);
            if (rm.nX || rm.nXX) continue;
            Exp e(Ol.size());
            for (size_t i = 0; i < Ol.size(); i++) e[i] = mark_mult(d, rc.r, Ol[i]);
            int yi = gt.at(rc.y);
            long long c = signs ? signs->at({xi, yi, rc.r}) : 1;
            terms.push_back(Term{yi, std::move(e), c});
        }
        if (!terms.empty()) out[xi] = std::move(terms);
    }
    return out;
}

PolyMap rect_map(const GridDiagram& d, const GenTable& gt, const std::vector<int>& src,
                 const std::set<int>& tgt, const std::function<bool(const Rect&)>& cond,
                 const SignAssignment* signs) {
    PolyMap out;
    auto Ol = olist(d);
    for (int xi : src) {
        std::vector<Term> terms;
        for (auto& rc : rect_candidates(d, gt.gens[xi])) {
            int yi = gt.at(rc.y);
            if (!tgt.count(yi)) continue;
            if (!is_empty(d, gt.gens[xi], rc.y, rc.r)) continue;
            if (!cond(rc.r)) continue;
            Exp e(Ol.size());
            for (size_t i = 0; i < Ol.size(); i++) e[i] = mark_mult(d, rc.r, Ol[i]);
            long long c = signs ? signs->at({xi, yi, rc.r}) : 1;
            terms.push_back(Term{yi, std::move(e), c});
        }
        if (!terms.empty()) out[xi] = std::move(terms);
    }
    return out;
}

std::vector<BiTable> tilde_bigraded(const GridDiagram& d, const GenTable& gt,
                                    const GradingData& gr) {
    // Unmarked empty rectangles, mod 2.
    std::vector<std::vector<int>> tgts(gt.gens.size());
    for (int xi = 0; xi < (int)gt.gens.size(); xi++) {
        std::map<int, int> cnt;
        for (auto& rc : rect_candidates(d, gt.gens[xi])) {
            if (!is_empty(d, gt.gens[xi], rc.y, rc.r)) continue;
            auto rm = rect_marks(d, rc.r);
            if (rm.nO == 0 && rm.nX == 0 && rm.nXX == 0) cnt[gt.at(rc.y)]++;
        }
        for (auto& [y, c] : cnt)
            if (c % 2) tgts[xi].push_back(y);
    }
    std::vector<BiTable> out(gr.n_classes);
    for (int cls = 0; cls < gr.n_classes; cls++) {
        std::map<std::pair<Rat, Rat>, std::vector<int>> byMA;
        for (int i = 0; i < (int)gt.gens.size(); i++)
            if (gr.spinc[i] == cls) byMA[{gr.MO[i], gr.A[i]}].push_back(i);
        for (auto& [ma, basis] : byMA) {
            auto [M, A] = ma;
            auto it_src = byMA.find({M + 1, A});
            auto it_tgt = byMA.find({M - 1, A});
            std::map<int, int> bi, ti;
            for (int i = 0; i < (int)basis.size(); i++) bi[basis[i]] = i;
            std::vector<BitVec> rows_out, rows_in;
            if (it_tgt != byMA.end()) {
                for (int i = 0; i < (int)it_tgt->second.size(); i++) ti[it_tgt->second[i]] = i;
                for (int x : basis) {
                    BitVec v(it_tgt->second.size());
                    for (int y : tgts[x]) {
                        auto jt = ti.find(y);
                        if (jt != ti.end()) v.flip(jt->second);
                    }
                    rows_out.push_back(std::move(v));
                }
            }
            if (it_src != byMA.end()) {
                for (int x : it_src->second) {
                    BitVec v(basis.size());
                    for (int y : tgts[x]) {
                        auto jt = bi.find(y);
                        if (jt != bi.end()) v.flip(jt->second);
                    }
                    rows_in.push_back(std::move(v));
                }
            }
            int h = (int)basis.size() - f2_rank(rows_out) - f2_rank(rows_in);
            if (h) out[cls][ma] = h;
        }
    }
    return out;
}

std::optional<BiTable> deconv(const BiTable& h, int t) {
    BiTable cur(h);
    for (int step = 0; step < t; step++) {
        BiTable quo;
        auto nonzero = [&]() -> std::optional<std::pair<Rat, Rat>> {
            std::optional<std::pair<Rat, Rat>> best;
            for (auto& [k, v] : cur)
                if (v) best = k;  // map order is ascending: keep last = max
            return best;
        };
        for (;;) {
            auto key = nonzero();
            if (!key) break;
            int v = cur[*key];
            if (v < 0) return std::nullopt;
            quo[*key] += v;
            cur[*key] -= v;
            cur[{key->first - 1, key->second - 1}] -= v;
        }
        for (auto& [k, v] : quo)
            if (v < 0) return std::nullopt;
        // drop zeros
        for (auto it = quo.begin(); it != quo.end();)
            it = it->second == 0 ? quo.erase(it) : std::next(it);
        cur = std::move(quo);
    }
    for (auto it = cur.begin(); it != cur.end();)
        it = it->second == 0 ? cur.erase(it) : std::next(it);
    return cur;
}

BiTable conv_w(const BiTable& h, int n) {
    BiTable t(h);
    for (int i = 0; i < n; i++) {
        BiTable t2;
        for (auto& [k, v] : t) {
            t2[k] += v;
            t2[{k.first - 1, k.second - 1}] += v;
        }
        for (auto it = t2.begin(); it != t2.end();)
            it = it->second == 0 ? t2.erase(it) : std::next(it);
        t = std::move(t2);
    }
    return t;
}

std::vector<BiTable> hat_bigraded(const GridDiagram& d, const GenTable& gt,
                                  const GradingData& gr) {
    auto ep = edge_partition(d);
    int t = ep.k - ep.m;
    auto tables = tilde_bigraded(d, gt, gr);
    std::vector<BiTable> out;
    for (auto& h : tables) {
        auto q = deconv(h, t);
        if (!q)
            throw MathInvariantError("tilde table not divisible by (1+u)^" + std::to_string(t));
        out.push_back(std::move(*q));
    }
    return out;
}

std::multiset<BiTable> hat_multiset(const GridDiagram& d) {
    GenTable gt(d);
    auto gr = grade(d, gt);
    auto tabs = hat_bigraded(d, gt, gr);
    return {tabs.begin(), tabs.end()};
}

bool compare_invariance(const GridDiagram& d1, const GridDiagram& d2) {
    return hat_multiset(d1) == hat_multiset(d2);
}

SlotComplex minus_complex(const GridDiagram& d, const GenTable& gt, const GradingData& gr,
                          const SignAssignment* signs) {
    SlotComplex C;
    C.nO = (int)olist(d).size();
    C.bigr.resize(gt.gens.size());
    for (size_t i = 0; i < gt.gens.size(); i++) C.bigr[i] = {gr.MO[i], gr.A[i]};
    C.diff = dminus_poly(d, gt, signs);
    return C;
}

SlotComplex hat_complex(const GridDiagram& d, const GenTable& gt, const GradingData& gr,
                        const SignAssignment* signs) {
    auto Ol = olist(d);
    auto ep = edge_partition(d);
    // Indices (into olist) of the distinguished O's; the rest stay free.
    std::set<int> blocked;
    for (auto& c : ep.distinguished)
        blocked.insert((int)(std::lower_bound(Ol.begin(), Ol.end(), c) - Ol.begin()));
    std::vector<int> free_idx;
    for (int i = 0; i < (int)Ol.size(); i++)
        if (!blocked.count(i)) free_idx.push_back(i);
    SlotComplex C;
    C.nO = (int)free_idx.size();
    C.bigr.resize(gt.gens.size());
    for (size_t i = 0; i < gt.gens.size(); i++) C.bigr[i] = {gr.MO[i], gr.A[i]};
    auto full = dminus_poly(d, gt, signs);
    for (auto& [x, terms] : full) {
        std::vector<Term> keep;
        for (auto& t : terms) {
            bool hit = false;
            for (int b : blocked)
                if (t.e[(size_t)b]) {
                    hit = true;
                    break;
                }
            if (hit) continue;
            Exp e(free_idx.size());
            for (size_t i = 0; i < free_idx.size(); i++) e[i] = t.e[(size_t)free_idx[i]];
            keep.push_back(Term{t.g, std::move(e), t.c});
        }
        if (!keep.empty()) C.diff[x] = std::move(keep);
    }
    return C;
}

SlotComplex tilde_complex(const GridDiagram& d, const GenTable& gt, const GradingData& gr,
                          const SignAssignment* signs) {
    SlotComplex C;
    C.nO = 0;
    C.bigr.resize(gt.gens.size());
    for (size_t i = 0; i < gt.gens.size(); i++) C.bigr[i] = {gr.MO[i], gr.A[i]};
    auto full = dminus_poly(d, gt, signs);
    for (auto& [x, terms] : full) {
        std::vector<Term> keep;
        for (auto& t : terms) {
            bool marked = false;
            for (int v : t.e)
                if (v) {
                    marked = true;
                    break;
                }
            if (!marked) keep.push_back(Term{t.g, Exp{}, t.c});
        }
        if (!keep.empty()) C.diff[x] = std::move(keep);
    }
    return C;
}

std::set<std::pair<Rat, Rat>> default_window(const SlotComplex& C, int tmax) {
    return window_of(C, tmax);
}

std::vector<HomEntry> homology_table(const GridDiagram& d, const GenTable& gt,
                                     const GradingData& gr, const SlotComplex& C,
                                     const std::set<std::pair<Rat, Rat>>& window, bool over_z) {
    // Split the complex by Spin^c class (differentials never cross classes).
    std::vector<HomEntry> out;
    for (int cls = 0; cls < gr.n_classes; cls++) {
        SlotComplex sub;
        sub.nO = C.nO;
        // Non-member nodes get a sentinel bigrading no window bidegree can
        // reach (the Alexander denominator never occurs in real gradings).
        sub.bigr.resize(C.bigr.size(), {Rat(0), Rat(1, 999983)});
        std::set<int> members;
        for (size_t i = 0; i < gt.gens.size(); i++)
            if (gr.spinc[i] == cls) {
                members.insert((int)i);
                sub.bigr[i] = C.bigr[i];
            }
        sub.diff = pm_restrict(C.diff, members, members);
        // Mz anchor for reporting: Mz of a piece = Mz(node) - 2t, uniform
        // within a bidegree; recover it from any member node.
        for (auto& [m, a] : window) {
            auto basis = sub.basis_at(m, a);
            if (basis.empty()) continue;
            int node = basis[0].first;
            int tshift = 0;
            for (int v : basis[0].second) tshift += v;
            int mz = gr.MZ[(size_t)node] - 2 * tshift;
            HomEntry e;
            e.M = m;
            e.A = a;
            e.Mz = mz;
            e.spinc = cls;
            if (over_z) {
                auto zh = homology_z_at(sub, m, a);
                e.rank = zh.rank;
                e.torsion = zh.torsion;
            } else {
                e.rank = homology_data(sub, m, a).dim;
            }
            if (e.rank || !e.torsion.empty()) out.push_back(std::move(e));
        }
    }
    return out;
}

HomotopyReport chain_homotopy_check(const GridDiagram& d, const GenTable& gt,
                                    const SignAssignment* signs) {
    HomotopyReport rep;
    auto Ol = olist(d);
    auto dg = dminus_poly(d, gt, nullptr);
    PolyMap dgz = signs ? dminus_poly(d, gt, signs) : PolyMap{};
    std::vector<int> all(gt.gens.size());
    for (size_t i = 0; i < all.size(); i++) all[i] = (int)i;
    std::set<int> allset(all.begin(), all.end());
    auto oidx = [&](Cell c) {
        return (int)(std::lower_bound(Ol.begin(), Ol.end(), c) - Ol.begin());
    };
    auto umap = [&](const std::vector<std::pair<int, long long>>& us) {
        // x -> sum_i c_i U^{e_i} x
        PolyMap out;
        for (int x : all) {
            std::vector<Term> t;
            for (auto& [i, c] : us) {
                Exp e(Ol.size());
                e[(size_t)i] = 1;
                t.push_back(Term{x, std::move(e), c});
            }
            out[x] = std::move(t);
        }
        return out;
    };
    // Regular X's: H counts empty rectangles meeting the marks exactly in X_l.
    for (auto& [xcell, kind] : d.marks) {
        if (kind != Mark::X) continue;
        Cell rowO, colO;
        for (auto& [c, k] : d.marks) {
            if (k != Mark::O) continue;
            if (c.second == xcell.second) rowO = c;
            if (c.first % d.N == xcell.first % d.N) colO = c;
        }
        auto cond = [&](const Rect& r) {
            for (auto& [c, k] : d.marks) {
                if (k == Mark::O) continue;
                int m = mark_mult(d, r, c);
                if (c == xcell ? m != 1 : m != 0) return false;
            }
            return true;
        };
        auto H = rect_map(d, gt, all, allset, cond, nullptr);
        auto dH = pm_compose(dg, H);
        auto Hd = pm_compose(H, dg);
        auto lhs = pm_add({&dH, &Hd});
        auto rhs = umap({{oidx(rowO), 1}, {oidx(colO), 1}});
        if (!pm_equal(lhs, rhs, true)) {
            rep.ok = false;
            rep.x_signs.push_back(0);
            continue;
        }
        int sign_rec = 1;
        if (signs) {
            auto Hs = rect_map(d, gt, all, allset, cond, signs);
            auto dHs = pm_compose(dgz, Hs, false);
            auto Hds = pm_compose(Hs, dgz, false);
            auto lz = pm_add({&dHs, &Hds});
            bool plus = pm_equal(lz, umap({{oidx(rowO), 1}, {oidx(colO), -1}}), false);
            bool minus = pm_equal(lz, umap({{oidx(rowO), -1}, {oidx(colO), 1}}), false);
            if (plus)
                sign_rec = 1;
            else if (minus)
                sign_rec = -1;
            else {
                rep.ok = false;
                sign_rec = 0;
            }
        }
        rep.x_signs.push_back(sign_rec);
    }
    // XX variant: dH + Hd = U_i U_j + U_s U_l over F2 (row pair / column pair).
    for (auto& [xxcell, kind] : d.marks) {
        if (kind != Mark::XX) continue;
        Exp erow(Ol.size()), ecol(Ol.size());
        for (auto& [c, k] : d.marks) {
            if (k != Mark::O) continue;
            if (c.second == xxcell.second) erow[(size_t)oidx(c)] += 1;
            if (c.first % d.N == xxcell.first % d.N) ecol[(size_t)oidx(c)] += 1;
        }
        auto cond = [&](const Rect& r) {
            for (auto& [c, k] : d.marks) {
                if (k == Mark::O) continue;
                int m = mark_mult(d, r, c);
                if (c == xxcell ? m != 1 : m != 0) return false;
            }
            return true;
        };
        auto H = rect_map(d, gt, all, allset, cond, nullptr);
        auto dH = pm_compose(dg, H);
        auto Hd = pm_compose(H, dg);
        auto lhs = pm_add({&dH, &Hd});
        PolyMap rhs;
        for (int x : all) rhs[x] = {Term{x, erow, 1}, Term{x, ecol, 1}};
        if (!pm_equal(lhs, rhs, true)) {
            rep.ok = false;
            rep.xx_ok = false;
        }
    }
    return rep;
}

}  // namespace lensgrid
