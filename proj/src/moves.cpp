#include "lensgrid/moves.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <sstream>

namespace lensgrid {
namespace {

GridDiagram remade(const GridDiagram& d, int N, std::map<Cell, Mark> marks) {
    GridDiagram out;
    out.p = d.p;
    out.q = d.q;
    out.N = N;
    out.marks = std::move(marks);
    return out;
}

GridDiagram col_step(const GridDiagram& d, int da) {
    std::map<Cell, Mark> m;
    for (auto& [c, k] : d.marks) m[{mod(c.first + da, d.pN()), c.second}] = k;
    return remade(d, d.N, std::move(m));
}

// b -> b-1; row 0 re-enters at the top with a -> a+qN.
GridDiagram row_step_down(const GridDiagram& d) {
    int tw = mod(static_cast<long long>(d.q) * d.N, d.pN());
    std::map<Cell, Mark> m;
    for (auto& [c, k] : d.marks) {
        if (c.second > 0)
            m[{c.first, c.second - 1}] = k;
        else
            m[{mod(c.first + tw, d.pN()), d.N - 1}] = k;
    }
    return remade(d, d.N, std::move(m));
}

GridDiagram row_step_up(const GridDiagram& d) {
    int tw = mod(static_cast<long long>(d.q) * d.N, d.pN());
    std::map<Cell, Mark> m;
    for (auto& [c, k] : d.marks) {
        if (c.second < d.N - 1)
            m[{c.first, c.second + 1}] = k;
        else
            m[{mod(c.first - tw, d.pN()), 0}] = k;
    }
    return remade(d, d.N, std::move(m));
}

// Position along the column circle of lens column a%N, in [0, pN).
int col_circle_param(const GridDiagram& d, int a, int b) {
    if (d.p == 1) return b;
    int w = a / d.N;
    int qinv = 0;
    for (int t = 1; t < d.p; ++t)
        if (mod(static_cast<long long>(d.q) * t, d.p) == 1) {
            qinv = t;
            break;
        }
    int k = mod(static_cast<long long>(w) * qinv, d.p);
    return b + d.N * k;
}

bool interleave(std::pair<int, int> s1, std::pair<int, int> s2) {
    int a = std::min(s1.first, s1.second), b = std::max(s1.first, s1.second);
    auto inside = [&](int t) { return a < t && t < b; };
    return inside(s2.first) != inside(s2.second);
}

std::optional<std::pair<std::pair<int, int>, std::pair<int, int>>> line_spans(
    const GridDiagram& d, Axis axis, int i) {
    std::vector<int> s1, s2;
    for (auto& [c, k] : d.marks) {
        (void)k;
        int key = axis == Axis::Row ? c.second : mod(c.first, d.N);
        int pos = axis == Axis::Row ? c.first : col_circle_param(d, c.first, c.second);
        if (key == i) s1.push_back(pos);
        if (key == i + 1) s2.push_back(pos);
    }
    if (s1.size() != 2 || s2.size() != 2) return std::nullopt;
    return std::make_pair(std::make_pair(s1[0], s1[1]), std::make_pair(s2[0], s2[1]));
}

bool spans_ok(std::pair<int, int> s1, std::pair<int, int> s2) {
    std::set<int> both{s1.first, s1.second, s2.first, s2.second};
    if (both.size() != 4) return false;  // shared endpoint
    return !interleave(s1, s2);
}

Mark mark_of(char c0, char c1) {
    if (c0 == 'O') return Mark::O;
    return c1 == 'X' ? Mark::XX : Mark::X;
}

// Deterministic search for valid completions after splitting cell's row and
// column: marks may land only in the 2x2 block or on a partner's two image
// cells, with row/column multisets kept to legal patterns throughout.
std::vector<std::map<Cell, Mark>> fills_impl(const GridDiagram& d, Cell cell) {
    auto it = d.marks.find(cell);
    if (it == d.marks.end()) throw LensError(Err::E_NO_MARK, "no mark at stabilization cell");
    Mark kind = it->second;
    int a0 = cell.first, b0 = cell.second;
    int j0 = mod(a0, d.N), w0 = a0 / d.N;
    int N2 = d.N + 1, pN2 = d.p * N2;
    auto remapj = [&](int j) { return j + (j > j0 ? 1 : 0); };

    std::set<Cell> erased;
    std::vector<Cell> partners;
    for (auto& [c, k] : d.marks) {
        (void)k;
        if (c == cell || c.second == b0 || mod(c.first, d.N) == j0) {
            erased.insert(c);
            if (c != cell) partners.push_back(c);
        }
    }
    std::map<Cell, Mark> base;
    for (auto& [c, k] : d.marks) {
        if (erased.count(c)) continue;
        int j = mod(c.first, d.N), w = c.first / d.N;
        base[{remapj(j) + N2 * w, c.second + (c.second > b0 ? 1 : 0)}] = k;
    }
    int a0n = j0 + N2 * w0;
    std::set<Cell> allowed;
    for (int da : {0, 1})
        for (int db : {0, 1}) allowed.insert({mod(a0n + da, pN2), b0 + db});
    for (auto [a, b] : partners) {
        bool same_row = (b == b0), same_col = (mod(a, d.N) == j0);
        if (same_row && !same_col) {
            int na = remapj(mod(a, d.N)) + N2 * (a / d.N);
            allowed.insert({na, b0});
            allowed.insert({na, b0 + 1});
        } else if (same_col && !same_row) {
            int nb = b + (b > b0 ? 1 : 0);
            allowed.insert({j0 + N2 * (a / d.N), nb});
            allowed.insert({j0 + 1 + N2 * (a / d.N), nb});
        } else {
            int na = j0 + N2 * (a / d.N);
            int nb = b + (b > b0 ? 1 : 0);
            for (int da : {0, 1})
                for (int db : {0, 1})
                    allowed.insert({mod(na + da, pN2), same_row ? b0 + db : nb});
        }
    }
    std::vector<Cell> cells(allowed.begin(), allowed.end());

    int maxfill = kind == Mark::XX ? 8 : 5;
    auto line_ok = [](std::vector<Mark> ms) {
        std::sort(ms.begin(), ms.end());
        static const std::vector<std::vector<Mark>> legal = {
            {Mark::O},
            {Mark::X},
            {Mark::O, Mark::X},
            {Mark::O, Mark::O},
            {Mark::O, Mark::XX},
            {Mark::O, Mark::O, Mark::XX},
            {Mark::XX},
        };
        return std::find(legal.begin(), legal.end(), ms) != legal.end();
    };
    auto ok_partial = [&](const std::map<Cell, Mark>& ms) {
        std::set<int> rows, cols;
        for (auto& [c, k] : ms) {
            (void)k;
            rows.insert(c.second);
            cols.insert(mod(c.first, N2));
        }
        for (int b : rows) {
            std::vector<Mark> rm;
            for (auto& [c, k] : ms)
                if (c.second == b) rm.push_back(k);
            if (!line_ok(rm)) return false;
        }
        for (int j : cols) {
            std::vector<Mark> cm;
            for (auto& [c, k] : ms)
                if (mod(c.first, N2) == j) cm.push_back(k);
            if (!line_ok(cm)) return false;
        }
        return true;
    };

    std::vector<std::map<Cell, Mark>> sols;
    std::map<Cell, Mark> work = base;
    auto dfs = [&](auto&& self, size_t i, int nfill) -> void {
        if (nfill > maxfill) return;
        if (i == cells.size()) {
            GridDiagram dd = remade(d, N2, work);
            if (dd.is_valid()) sols.push_back(work);
            return;
        }
        Cell c = cells[i];
        self(self, i + 1, nfill);  // leave empty
        if (work.count(c)) return;
        for (Mark k : {Mark::O, Mark::X, Mark::XX}) {
            work[c] = k;
            if (ok_partial(work)) self(self, i + 1, nfill + 1);
            work.erase(c);
        }
    };
    dfs(dfs, 0, 0);
    return sols;
}

using BlockPat = std::vector<std::pair<Cell, Mark>>;

BlockPat block_pattern(const GridDiagram& d, Cell cell, const std::map<Cell, Mark>& m) {
    int j0 = mod(cell.first, d.N), N2 = d.N + 1, pN2 = d.p * N2;
    int a0n = j0 + N2 * (cell.first / d.N);
    BlockPat bl;
    for (int da : {0, 1})
        for (int db : {0, 1}) {
            auto it = m.find({mod(a0n + da, pN2), cell.second + db});
            if (it != m.end()) bl.push_back({{da, db}, it->second});
        }
    return bl;
}

std::optional<GridDiagram> stabilize_ox(const GridDiagram& d, Cell cell, int da, int db) {
    Mark kind = d.marks.at(cell);
    Mark other = kind == Mark::O ? Mark::X : Mark::O;
    auto sols = fills_impl(d, cell);
    BlockPat want;
    for (int c0 : {0, 1})
        for (int c1 : {0, 1}) {
            Cell pos{c0, c1};
            if (pos == Cell{da, db})
                want.push_back({pos, other});
            else if (pos != Cell{1 - da, 1 - db})
                want.push_back({pos, kind});
        }
    std::sort(want.begin(), want.end());
    std::vector<std::map<Cell, Mark>> match;
    for (auto& m : sols)
        if (block_pattern(d, cell, m) == want) match.push_back(m);
    if (match.empty()) return std::nullopt;
    std::sort(match.begin(), match.end());
    return remade(d, d.N + 1, match[0]);
}

const std::vector<std::pair<std::string, Cell>>& compass() {
    static const std::vector<std::pair<std::string, Cell>> v = {
        {"SW", {0, 0}}, {"SE", {1, 0}}, {"NW", {0, 1}}, {"NE", {1, 1}}};
    return v;
}

}  // namespace

GridDiagram cyclic_permute(const GridDiagram& d, Axis axis, int shift) {
    GridDiagram out = d;
    if (axis == Axis::Col) return col_step(d, mod(shift, d.pN()));
    int s = mod(shift, d.N);
    for (int i = 0; i < s; ++i) out = row_step_up(out);
    return out;
}

bool commutable(const GridDiagram& d, Axis axis, int index) {
    if (index < 0 || index >= d.N - 1) return false;
    auto sp = line_spans(d, axis, index);
    return sp && spans_ok(sp->first, sp->second);
}

GridDiagram commute(const GridDiagram& d, Axis axis, int index) {
    if (!commutable(d, axis, index))
        throw LensError(Err::E_NOT_COMMUTABLE,
                        std::string(axis == Axis::Row ? "rows " : "columns ") +
                            std::to_string(index) + "," + std::to_string(index + 1));
    std::map<Cell, Mark> m;
    for (auto& [c, k] : d.marks) {
        if (axis == Axis::Row) {
            int b = c.second;
            if (b == index) b = index + 1;
            else if (b == index + 1) b = index;
            m[{c.first, b}] = k;
        } else {
            int j = mod(c.first, d.N);
            int a = c.first;
            if (j == index) a = mod(a + 1, d.pN());
            else if (j == index + 1) a = mod(a - 1, d.pN());
            m[{a, c.second}] = k;
        }
    }
    GridDiagram out = remade(d, d.N, std::move(m));
    if (!out.is_valid())
        throw LensError(Err::E_NOT_COMMUTABLE, "result fails validation");
    return out;
}

std::vector<std::map<Cell, Mark>> stab_fills(const GridDiagram& d, Cell cell) {
    return fills_impl(d, cell);
}

GridDiagram stabilize(const GridDiagram& d, Cell cell, const std::string& variant) {
    auto it = d.marks.find(cell);
    if (it == d.marks.end()) throw LensError(Err::E_NO_MARK, "no mark at stabilization cell");
    if (it->second == Mark::XX) {
        if (variant.size() < 2 || variant[0] != 'v')
            throw LensError(Err::E_BAD_VARIANT, "XX stabilizations take variants v0, v1, ...");
        size_t v = std::stoul(variant.substr(1));
        auto sols = fills_impl(d, cell);
        std::sort(sols.begin(), sols.end());
        if (v >= sols.size())
            throw LensError(Err::E_BAD_VARIANT, "only " + std::to_string(sols.size()) +
                                                    " XX variants exist here");
        return remade(d, d.N + 1, sols[v]);
    }
    for (auto& [name, pos] : compass())
        if (name == variant) {
            auto res = stabilize_ox(d, cell, pos.first, pos.second);
            if (!res)
                throw LensError(Err::E_BAD_VARIANT,
                                "no valid " + variant + " stabilization at this cell");
            return *res;
        }
    throw LensError(Err::E_BAD_VARIANT, "unknown variant " + variant);
}

std::pair<GridDiagram, std::string> destabilize(const GridDiagram& d, int j, int b) {
    if (d.N < 2 || j < 0 || j >= d.N - 1 || b < 0 || b >= d.N - 1)
        throw LensError(Err::E_NOT_DESTAB, "block indices out of range");
    int N1 = d.N - 1;
    auto merged = [&](int w0, Mark kind) -> std::optional<GridDiagram> {
        std::map<Cell, Mark> m;
        for (auto& [c, k] : d.marks) {
            int jj = mod(c.first, d.N), ww = c.first / d.N, bb = c.second;
            if ((jj == j || jj == j + 1) && (bb == b || bb == b + 1)) continue;
            int jn = jj - (jj > j ? 1 : 0), bn = bb - (bb > b ? 1 : 0);
            m[{jn + N1 * ww, bn}] = k;
        }
        m[{j + N1 * w0, b}] = kind;
        GridDiagram dd = remade(d, N1, std::move(m));
        if (!dd.is_valid()) return std::nullopt;
        return dd;
    };
    for (auto& [variant, pos] : compass()) {
        auto [da, db] = pos;
        for (int w0 = 0; w0 < d.p; ++w0) {
            int a0n = j + d.N * w0;
            std::map<Cell, Mark> bl;
            for (int dda : {0, 1})
                for (int ddb : {0, 1}) {
                    auto it = d.marks.find({mod(a0n + dda, d.pN()), b + ddb});
                    if (it != d.marks.end()) bl[{dda, ddb}] = it->second;
                }
            if (bl.size() != 3) continue;
            int nx = 0, no = 0;
            bool has_xx = false;
            for (auto& [c, k] : bl) {
                (void)c;
                if (k == Mark::XX) has_xx = true;
                if (k == Mark::X) ++nx;
                if (k == Mark::O) ++no;
            }
            if (has_xx) continue;
            Mark kind;
            if (nx == 2) kind = Mark::X;
            else if (no == 2) kind = Mark::O;
            else continue;
            Mark other = kind == Mark::X ? Mark::O : Mark::X;
            auto at = [&](int x, int y) -> Mark {
                auto it2 = bl.find({x, y});
                return it2 == bl.end() ? Mark::XX /*absent sentinel*/ : it2->second;
            };
            if (!bl.count({da, db}) || at(da, db) != other) continue;
            bool adj = bl.count({1 - da, db}) && at(1 - da, db) == kind &&
                       bl.count({da, 1 - db}) && at(da, 1 - db) == kind;
            bool diag_main = bl.count({0, 0}) && at(0, 0) == kind && bl.count({1, 1}) &&
                             at(1, 1) == kind && (Cell{da, db} == Cell{0, 1} || Cell{da, db} == Cell{1, 0});
            bool diag_anti = bl.count({0, 1}) && at(0, 1) == kind && bl.count({1, 0}) &&
                             at(1, 0) == kind && (Cell{da, db} == Cell{0, 0} || Cell{da, db} == Cell{1, 1});
            if (!adj && !diag_main && !diag_anti) continue;
            auto dd = merged(w0, kind);
            if (!dd) continue;
            try {
                GridDiagram rs = stabilize(*dd, {j + N1 * w0, b}, variant);
                if (rs.marks == d.marks) return {*dd, variant};
            } catch (const LensError&) {
            }
        }
    }
    // Singular block: an XX plus its row/column partners collapses back to the
    // XX mark; verified against every enumerated XX stabilization variant.
    for (int w0 = 0; w0 < d.p; ++w0) {
        int a0n = j + d.N * w0;
        bool has_xx = false;
        int nbl = 0;
        for (int dda : {0, 1})
            for (int ddb : {0, 1}) {
                auto it = d.marks.find({mod(a0n + dda, d.pN()), b + ddb});
                if (it != d.marks.end()) {
                    ++nbl;
                    if (it->second == Mark::XX) has_xx = true;
                }
            }
        if (!has_xx || nbl < 2) continue;
        auto dd = merged(w0, Mark::XX);
        if (!dd) continue;
        Cell cell{j + N1 * w0, b};
        auto sols = fills_impl(*dd, cell);
        std::sort(sols.begin(), sols.end());
        for (size_t v = 0; v < sols.size(); ++v)
            if (sols[v] == d.marks) return {*dd, "v" + std::to_string(v)};
    }
    throw LensError(Err::E_NOT_DESTAB, "no stabilization block at (" + std::to_string(j) +
                                           "," + std::to_string(b) + ")");
}

std::vector<MoveRec> fuzz_sequence(const GridDiagram& d, uint64_t seed, int steps, int max_n) {
    std::mt19937_64 rng(seed);
    GridDiagram cur = d;
    std::vector<MoveRec> out;
    for (int step = 0; step < steps; ++step) {
        std::vector<std::pair<std::string, GridDiagram>> cands;
        for (Axis ax : {Axis::Row, Axis::Col})
            for (int i = 0; i < cur.N - 1; ++i)
                if (commutable(cur, ax, i))
                    cands.push_back({std::string("C ") + (ax == Axis::Row ? "row " : "col ") +
                                         std::to_string(i),
                                     commute(cur, ax, i)});
        for (int s : {-1, 1}) {
            cands.push_back({"P row " + std::to_string(s), cyclic_permute(cur, Axis::Row, s)});
            cands.push_back({"P col " + std::to_string(s), cyclic_permute(cur, Axis::Col, s)});
        }
        if (cur.N < max_n)
            for (auto& [c, k] : cur.marks) {
                if (k == Mark::XX) continue;
                for (auto& [name, pos] : compass()) {
                    (void)pos;
                    try {
                        GridDiagram dd = stabilize(cur, c, name);
                        cands.push_back({"S " + std::string(mark_name(k)) + "@(" +
                                             std::to_string(c.first) + "," +
                                             std::to_string(c.second) + ") " + name,
                                         std::move(dd)});
                    } catch (const LensError&) {
                    }
                }
            }
        for (int b = 0; b < cur.N - 1; ++b)
            for (int jj = 0; jj < cur.N - 1; ++jj) {
                try {
                    auto [dd, variant] = destabilize(cur, jj, b);
                    if (variant[0] == 'v') continue;  // keep fuzz non-singular-block
                    cands.push_back(
                        {"D " + std::to_string(b) + " " + std::to_string(jj), std::move(dd)});
                } catch (const LensError&) {
                }
            }
        if (cands.empty()) break;
        auto& pick = cands[rng() % cands.size()];
        cur = pick.second;
        out.push_back({pick.first, cur});
    }
    return out;
}

std::vector<MoveRec> apply_script(const GridDiagram& d, const std::string& script) {
    std::vector<MoveRec> out;
    GridDiagram cur = d;
    std::stringstream ss(script);
    std::string cmd;
    while (std::getline(ss, cmd, ';')) {
        std::istringstream ts(cmd);
        std::string op;
        if (!(ts >> op)) continue;  // empty segment
        auto parse_axis = [&]() {
            std::string ax;
            if (!(ts >> ax) || (ax != "row" && ax != "col"))
                throw LensError(Err::E_SYNTAX, "expected 'row' or 'col' in: " + cmd);
            return ax == "row" ? Axis::Row : Axis::Col;
        };
        auto parse_int = [&]() {
            int v;
            if (!(ts >> v)) throw LensError(Err::E_SYNTAX, "expected integer in: " + cmd);
            return v;
        };
        if (op == "C") {
            Axis ax = parse_axis();
            int i = parse_int();
            cur = commute(cur, ax, i);
        } else if (op == "P") {
            Axis ax = parse_axis();
            int s = parse_int();
            cur = cyclic_permute(cur, ax, s);
        } else if (op == "S") {
            std::string loc, variant;
            if (!(ts >> loc >> variant)) throw LensError(Err::E_SYNTAX, "S needs KIND@(a,b) VARIANT");
            auto at = loc.find('@');
            if (at == std::string::npos) throw LensError(Err::E_SYNTAX, "S needs KIND@(a,b)");
            std::string kind = loc.substr(0, at);
            if (kind != "O" && kind != "X" && kind != "XX")
                throw LensError(Err::E_SYNTAX, "bad mark kind " + kind);
            int a, b;
            char l, comma, r;
            std::istringstream cs(loc.substr(at + 1));
            if (!(cs >> l >> a >> comma >> b >> r) || l != '(' || comma != ',' || r != ')')
                throw LensError(Err::E_SYNTAX, "bad cell in: " + cmd);
            auto mi = cur.marks.find({a, b});
            Mark want = mark_of(kind[0], kind.size() > 1 ? kind[1] : ' ');
            if (mi == cur.marks.end() || mi->second != want)
                throw LensError(Err::E_NO_MARK,
                                "no " + kind + " at (" + std::to_string(a) + "," +
                                    std::to_string(b) + ")");
            cur = stabilize(cur, {a, b}, variant);
        } else if (op == "D") {
            int b = parse_int();
            int j = parse_int();
            cur = destabilize(cur, j, b).first;
        } else {
            throw LensError(Err::E_SYNTAX, "unknown move op " + op);
        }
        std::string trimmed = cmd;
        auto sb = trimmed.find_first_not_of(" \t\n");
        auto se = trimmed.find_last_not_of(" \t\n");
        trimmed = sb == std::string::npos ? "" : trimmed.substr(sb, se - sb + 1);
        out.push_back({trimmed, cur});
    }
    return out;
}

}  // namespace lensgrid
