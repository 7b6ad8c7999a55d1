#include "lensgrid/signs.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace lensgrid {

std::vector<RectInfo> all_rects(const GridDiagram& d, const GenTable& gt) {
    std::vector<RectInfo> out;
    const int pN = d.pN(), N = d.N;
    for (int xi = 0; xi < (int)gt.gens.size(); xi++) {
        for (auto& rc : rect_candidates(d, gt.gens[xi])) {
            RectInfo ri;
            ri.x = xi;
            ri.y = gt.at(rc.y);
            ri.r = rc.r;
            ri.dom.resize((size_t)pN * N);
            for (int a = 0; a < pN; a++)
                for (int b = 0; b < N; b++)
                    ri.dom[(size_t)a * N + b] = (uint8_t)mark_mult(d, rc.r, {a, b});
            ri.empty = is_empty(d, gt.gens[xi], rc.y, rc.r);
            out.push_back(std::move(ri));
        }
    }
    for (int i = 0; i < (int)out.size(); i++) out[i].id = i;
    return out;
}

SignSystem sign_system(const GridDiagram& d, const std::vector<RectInfo>& rects,
                       bool flavor_true) {
    SignSystem sys;
    const int pN = d.pN(), N = d.N;
    std::vector<std::vector<int>> byx(0);
    {
        int ng = 0;
        for (auto& r : rects) ng = std::max(ng, std::max(r.x, r.y) + 1);
        byx.resize(ng);
        for (auto& r : rects) byx[r.x].push_back(r.id);
    }
    // Composite domains keyed by (x, z, summed multiplicity vector).
    std::map<std::tuple<int, int, std::vector<uint8_t>>, std::vector<std::pair<int, int>>> comp;
    for (auto& r1 : rects) {
        for (int id2 : byx[r1.y]) {
            auto& r2 = rects[id2];
            std::vector<uint8_t> dom(r1.dom);
            for (size_t i = 0; i < dom.size(); i++) dom[i] += r2.dom[i];
            comp[{r1.x, r2.y, std::move(dom)}].push_back({r1.id, r2.id});
        }
    }
    for (auto& [key, lst] : comp) {
        auto& [x, z, dom] = key;
        if (x == z) {
            // Annulus: thin vertical = pN cells of multiplicity 1 in one lens
            // column; thin horizontal analogous with one row.
            std::vector<size_t> nz;
            bool all1 = true;
            for (size_t i = 0; i < dom.size(); i++)
                if (dom[i]) {
                    nz.push_back(i);
                    if (dom[i] != 1) all1 = false;
                }
            if (!all1 || (int)nz.size() != pN) continue;
            std::set<int> colset, rowset;
            for (size_t i : nz) {
                colset.insert((int)(i / N) % N);
                rowset.insert((int)(i % N));
            }
            if (colset.size() == 1) {
                for (auto& [i1, i2] : lst) {
                    sys.eqs.push_back({{i1, i2}, flavor_true ? 1 : 0});
                    sys.n_thin_v++;
                }
            } else if (rowset.size() == 1) {
                for (auto& [i1, i2] : lst) {
                    sys.eqs.push_back({{i1, i2}, flavor_true ? 0 : 1});
                    sys.n_thin_h++;
                }
            }
        } else {
            for (size_t i = 0; i < lst.size(); i++)
                for (size_t j = i + 1; j < lst.size(); j++) {
                    if (rects[lst[i].first].y == rects[lst[j].first].y) continue;
                    sys.eqs.push_back(
                        {{lst[i].first, lst[i].second, lst[j].first, lst[j].second}, 1});
                }
        }
    }
    return sys;
}

std::optional<std::vector<uint8_t>> f2_solve(size_t nv, const std::vector<SignEq>& eqs,
                                             std::optional<std::pair<int, int>> fix) {
    // Incremental elimination with pivot = lowest set bit, then full back
    // substitution.  Rows carry an rhs bit.
    std::map<long, std::pair<BitVec, int>> piv;  // pivot bit -> (row, rhs)
    auto add_eq = [&](const std::vector<int>& vars, int rhs) -> bool {
        BitVec m(nv);
        for (int v : vars) m.flip((size_t)v);
        int r = rhs & 1;
        for (;;) {
            long lead = m.lowest();
            if (lead < 0) return r == 0;
            auto it = piv.find(lead);
            if (it == piv.end()) {
                piv.emplace(lead, std::make_pair(std::move(m), r));
                return true;
            }
            m.xor_in(it->second.first);
            r ^= it->second.second;
        }
    };
    for (auto& e : eqs)
        if (!add_eq(e.vars, e.rhs)) return std::nullopt;
    if (fix && !add_eq({fix->first}, fix->second)) return std::nullopt;
    // Back substitution in descending pivot order (every non-pivot variable of
    // a row sits above its pivot bit, so it is already resolved or free = 0).
    std::vector<uint8_t> sol(nv, 0);
    for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
        long lead = it->first;
        auto& [row, rhs] = it->second;
        int s = rhs;
        for (size_t w = 0; w < row.w.size(); w++) {
            uint64_t word = row.w[w];
            while (word) {
                long b = (long)(w * 64 + (size_t)__builtin_ctzll(word));
                word &= word - 1;
                if (b != lead) s ^= sol[(size_t)b];
            }
        }
        sol[(size_t)lead] = (uint8_t)s;
    }
    return sol;
}

SignAssignment solve_signs(const GridDiagram& d, const GenTable& gt, bool flavor_true) {
    auto rects = all_rects(d, gt);
    auto sys = sign_system(d, rects, flavor_true);
    auto sol = f2_solve(rects.size(), sys.eqs);
    if (!sol) throw LensError(Err::E_INFEASIBLE, "sign system has no solution");
    return pack_signs(gt, rects, *sol);
}

std::optional<std::vector<uint8_t>> second_solution(size_t nv, const std::vector<SignEq>& eqs,
                                                    const std::vector<uint8_t>& first) {
    for (size_t v = 0; v < nv; v++) {
        auto s = f2_solve(nv, eqs, std::make_pair((int)v, 1 - (int)first[v]));
        if (s && *s != first) return s;
    }
    return std::nullopt;
}

int verify_axioms(const std::vector<SignEq>& eqs, const std::vector<uint8_t>& sol) {
    int bad = 0;
    for (auto& e : eqs) {
        int s = 0;
        for (int v : e.vars) s ^= sol[(size_t)v];
        if (s != e.rhs) bad++;
    }
    return bad;
}

SignAssignment pack_signs(const GenTable& gt, const std::vector<RectInfo>& rects,
                          const std::vector<uint8_t>& sol) {
    SignAssignment S;
    for (auto& r : rects) S[{r.x, r.y, r.r}] = sol[(size_t)r.id] ? -1 : 1;
    return S;
}

SignAssignment to_false(const GridDiagram& d, const GenTable& gt, const SignAssignment& s_true) {
    SignAssignment out;
    for (auto& [key, sgn] : s_true) {
        int nxx = 0;
        for (auto& [cell, k] : d.marks)
            if (k != Mark::O) nxx += mark_mult(d, key.r, cell);
        out[key] = (nxx % 2) ? -sgn : sgn;
    }
    return out;
}

std::optional<std::vector<int>> gauge_equivalence(const GenTable& gt,
                                                  const std::vector<RectInfo>& rects,
                                                  const std::vector<uint8_t>& sol1,
                                                  const std::vector<uint8_t>& sol2) {
    // S2(r) = S1(r) f(x) f(y); propagate the parity of f over the graph whose
    // edges are rectangle instances.
    size_t ng = gt.gens.size();
    std::vector<int> par(ng, 0);  // 0 unknown, +1 / -1 assigned
    std::vector<std::vector<std::pair<int, int>>> adj(ng);  // (other, relative sign)
    for (auto& r : rects) {
        int rel = (sol1[(size_t)r.id] == sol2[(size_t)r.id]) ? 1 : -1;
        adj[r.x].push_back({r.y, rel});
        adj[r.y].push_back({r.x, rel});
    }
    for (size_t s = 0; s < ng; s++) {
        if (par[s]) continue;
        par[s] = 1;
        std::vector<size_t> stack{s};
        while (!stack.empty()) {
            size_t u = stack.back();
            stack.pop_back();
            for (auto& [v, rel] : adj[u]) {
                int want = par[u] * rel;
                if (!par[v]) {
                    par[v] = want;
                    stack.push_back((size_t)v);
                } else if (par[v] != want) {
                    return std::nullopt;
                }
            }
        }
    }
    return par;
}

}  // namespace lensgrid
