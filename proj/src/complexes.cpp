#include "lensgrid/complexes.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>

namespace lensgrid {

std::vector<Gen> enumerate_generators(const GridDiagram& d, long long cap) {
    if (const char* c = std::getenv("LENSGRID_CAP")) cap = std::atoll(c);
    long long count = 1;
    for (int i = 2; i <= d.N; i++) count *= i;
    for (int i = 0; i < d.N; i++) {
        count *= d.p;
        if (count > cap)
            throw LensError(Err::E_TOOBIG, "generator count exceeds cap " + std::to_string(cap));
    }
    std::vector<Gen> out;
    out.reserve(static_cast<size_t>(count));
    std::vector<int> perm(d.N);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<int> winds(d.N, 0);
        while (true) {
            Gen g(d.N);
            for (int b = 0; b < d.N; b++) g[b] = perm[b] + d.N * winds[b];
            out.push_back(std::move(g));
            int i = d.N - 1;
            while (i >= 0 && winds[i] == d.p - 1) winds[i--] = 0;
            if (i < 0) break;
            winds[i]++;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

GenTable::GenTable(const GridDiagram& d, long long cap) {
    gens = enumerate_generators(d, cap);
    for (size_t i = 0; i < gens.size(); i++) index[gens[i]] = static_cast<int>(i);
}

std::vector<int> liftcols(const GridDiagram& d, const Gen& x) {
    int sh = d.shift();
    std::vector<int> lc(d.pN());
    for (int bp = 0; bp < d.pN(); bp++)
        lc[bp] = mod(x[bp % d.N] + (bp / d.N) * sh, d.pN());
    return lc;
}

std::vector<RectCand> rect_candidates(const GridDiagram& d, const Gen& x) {
    auto lc = liftcols(d, x);
    int sh = d.shift();
    std::vector<RectCand> out;
    for (int b1 = 0; b1 < d.N; b1++) {
        for (int h = 1; h < d.pN(); h++) {
            if (h % d.N == 0) continue;
            int b2 = mod(b1 + h, d.pN());
            int a1 = lc[b1], a2 = lc[b2];
            int w = mod(a2 - a1, d.pN());
            int r1 = b1, r2 = b2 % d.N, l2 = b2 / d.N;
            Gen y = x;
            y[r1] = mod(a1 + w, d.pN());
            y[r2] = mod(a1 - l2 * sh, d.pN());
            out.push_back({std::move(y), Rect{a1, b1, w, h}});
        }
    }
    return out;
}

std::vector<Cell> lift_points(const GridDiagram& d, const Gen& x) {
    int sh = d.shift();
    std::vector<Cell> out;
    out.reserve(static_cast<size_t>(d.N) * d.p);
    for (int b = 0; b < d.N; b++)
        for (int l = 0; l < d.p; l++)
            out.push_back({mod(x[b] + l * sh, d.pN()), mod(b + l * d.N, d.pN())});
    return out;
}

bool inside_open(const GridDiagram& d, Cell P, const Rect& r) {
    int da = mod(P.first - r.a1, d.pN());
    int db = mod(P.second - r.b1, d.pN());
    return 0 < da && da < r.w && 0 < db && db < r.h;
}

bool is_empty(const GridDiagram& d, const Gen& x, const Gen& y, const Rect& r) {
    for (Cell P : lift_points(d, x))
        if (inside_open(d, P, r)) return false;
    for (Cell P : lift_points(d, y))
        if (inside_open(d, P, r)) return false;
    return true;
}

bool embedded(const GridDiagram& d, const Rect& r) {
    int sh = d.shift();
    for (int l = 1; l < d.p; l++) {
        int dx = mod(l * sh, d.pN());
        int dy = mod(l * d.N, d.pN());
        auto ov = [&](int off, int sz) { return off < sz || d.pN() - off < sz; };
        if (ov(dx, r.w) && ov(dy, r.h)) return false;
    }
    return true;
}

int mark_mult(const GridDiagram& d, const Rect& r, Cell cell) {
    // Doubled coordinates keep the half-integer centers exact.
    int sh = d.shift(), P2 = 2 * d.pN(), m = 0;
    for (int l = 0; l < d.p; l++) {
        int ca = mod(2 * cell.first + 1 + 2 * l * sh, P2);
        int cb = mod(2 * cell.second + 1 + 2 * l * d.N, P2);
        int da = mod(ca - 2 * r.a1, P2);
        int db = mod(cb - 2 * r.b1, P2);
        if (da < 2 * r.w && db < 2 * r.h) m++;
    }
    return m;
}

RectMarks rect_marks(const GridDiagram& d, const Rect& r) {
    RectMarks rm;
    for (const auto& [c, k] : d.marks) {
        int m = mark_mult(d, r, c);
        if (k == Mark::O) rm.nO += m;
        else if (k == Mark::X) rm.nX += m;
        else rm.nXX += m;
    }
    return rm;
}

std::vector<Rect> rect_between(const GridDiagram& d, const Gen& x, const Gen& y) {
    std::vector<Rect> out;
    for (auto& rc : rect_candidates(d, x))
        if (rc.y == y) out.push_back(rc.r);
    return out;
}

Rat d_invariant(int p, int q, int i) {
    if (p < 1 || (p > 1 && std::gcd(p, std::abs(q)) != 1))
        throw LensError(Err::E_ARGS, "d(p,q,i) needs p >= 1 and gcd(p,q) = 1");
    q = mod(q, p);
    i = mod(i, p);
    if (p == 1) return Rat(0);
    long long num = static_cast<long long>(2 * i + 1 - p - q);
    return Rat(num * num - static_cast<long long>(p) * q, 4LL * p * q) -
           d_invariant(q, mod(p, q), mod(i, q));
}

std::vector<Cell> olist(const GridDiagram& d) {
    std::vector<Cell> out;
    for (const auto& [c, k] : d.marks)
        if (k == Mark::O) out.push_back(c);
    return out;  // marks map is already lex sorted
}

namespace {

// Doubled-coordinate point with a formal sign, for the J-computations.
struct Pt {
    int a, b;
};

// All p lift copies of the given (doubled-coordinate) points.
std::vector<Pt> lift_all(const GridDiagram& d, const std::vector<Pt>& pts) {
    int sh = d.shift(), P2 = 2 * d.pN();
    std::vector<Pt> out;
    out.reserve(pts.size() * d.p);
    for (const auto& P : pts)
        for (int l = 0; l < d.p; l++)
            out.push_back({mod(P.a + 2 * l * sh, P2), mod(P.b + 2 * l * d.N, P2)});
    return out;
}

long long Ifun(const std::vector<Pt>& A, const std::vector<Pt>& B) {
    long long s = 0;
    for (const auto& a : A)
        for (const auto& b : B)
            if (a.a < b.a && a.b < b.b) s++;
    return s;
}

Rat Jfun(const std::vector<Pt>& A, const std::vector<Pt>& B) {
    return Rat(Ifun(A, B) + Ifun(B, A), 2);
}

}  // namespace

GradingData grade(const GridDiagram& d, const GenTable& gt) {
    GradingData gd;
    size_t n = gt.gens.size();
    gd.MO.resize(n);
    gd.MX.resize(n);
    gd.A.resize(n);
    std::vector<Pt> Os, Xall, XXs;
    for (const auto& [c, k] : d.marks) {
        Pt P{2 * c.first + 1, 2 * c.second + 1};
        if (k == Mark::O) Os.push_back(P);
        else {
            Xall.push_back(P);
            if (k == Mark::XX) XXs.push_back(P);
        }
    }
    Rat dd = d_invariant(d.p, d.q, mod(d.q - 1, d.p));
    Rat cst(1, d.p);
    auto WO = lift_all(d, Os);
    auto WX = lift_all(d, Xall);
    auto WXX = lift_all(d, XXs);
    Rat JOO = Jfun(WO, WO) - 2 * Jfun(WO, WXX) + Jfun(WXX, WXX);
    Rat JXX = Jfun(WX, WX);
    for (size_t i = 0; i < n; i++) {
        const Gen& x = gt.gens[i];
        std::vector<Pt> xs;
        for (int b = 0; b < d.N; b++) xs.push_back({2 * x[b], 2 * b});
        auto wx = lift_all(d, xs);
        Rat JOx = JOO - 2 * (Jfun(WO, wx) - Jfun(WXX, wx)) + Jfun(wx, wx);
        Rat JXx = JXX - 2 * Jfun(WX, wx) + Jfun(wx, wx);
        gd.MO[i] = JOx / d.p + dd + cst;
        gd.MX[i] = JXx / d.p + dd + cst;
        gd.A[i] = (gd.MO[i] - gd.MX[i] - (d.N - 1)) / 2;
    }
    // Spin^c classes: union-find over rectangle candidates.
    std::vector<int> par(n);
    std::iota(par.begin(), par.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (par[a] != a) {
            par[a] = par[par[a]];
            a = par[a];
        }
        return a;
    };
    for (size_t i = 0; i < n; i++)
        for (auto& rc : rect_candidates(d, gt.gens[i])) {
            int j = gt.at(rc.y);
            int ra = find(static_cast<int>(i)), rb = find(j);
            if (ra != rb) par[ra] = rb;
        }
    // Deterministic ids: classes numbered by first appearance in generator order.
    std::map<int, int> root_to_id;
    gd.spinc.resize(n);
    for (size_t i = 0; i < n; i++) {
        int r = find(static_cast<int>(i));
        if (!root_to_id.count(r)) {
            int id = static_cast<int>(root_to_id.size());
            root_to_id[r] = id;
        }
    }
    gd.n_classes = static_cast<int>(root_to_id.size());
    for (size_t i = 0; i < n; i++) gd.spinc[i] = root_to_id[find(static_cast<int>(i))];
    // Integral Maslov lift: anchor the lexicographically least generator
    // (as a coordinate tuple) of each class at M_Z = 0.
    gd.MZ.assign(n, 0);
    std::vector<int> anchor(gd.n_classes, -1);
    for (size_t i = 0; i < n; i++) {
        int c = gd.spinc[i];
        if (anchor[c] < 0 || gt.gens[i] < gt.gens[anchor[c]]) anchor[c] = static_cast<int>(i);
    }
    for (size_t i = 0; i < n; i++) {
        Rat t = gd.MO[i] - gd.MO[anchor[gd.spinc[i]]];
        if (t.denominator() != 1)
            throw MathInvariantError("Maslov difference within a Spin^c class not integral");
        gd.MZ[i] = static_cast<int>(t.numerator());
    }
    return gd;
}

}  // namespace lensgrid
