#include "lensgrid/diagram.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

namespace lensgrid {

const char* err_name(Err e) {
    switch (e) {
        case Err::E_SYNTAX: return "E_SYNTAX";
        case Err::E_COORDS: return "E_COORDS";
        case Err::E_DUPCELL: return "E_DUPCELL";
        case Err::E_ROW: return "E_ROW";
        case Err::E_COL: return "E_COL";
        case Err::E_PARAMS: return "E_PARAMS";
        case Err::E_NOT_COMMUTABLE: return "E_NOT_COMMUTABLE";
        case Err::E_NO_MARK: return "E_NO_MARK";
        case Err::E_BAD_VARIANT: return "E_BAD_VARIANT";
        case Err::E_NOT_DESTAB: return "E_NOT_DESTAB";
        case Err::E_TOOBIG: return "E_TOOBIG";
        case Err::E_ARGS: return "E_ARGS";
        case Err::E_NEEDS_SIGNS: return "E_NEEDS_SIGNS";
        case Err::E_INFEASIBLE: return "E_INFEASIBLE";
        case Err::E_DECONV: return "E_DECONV";
        case Err::E_NONTERMINATION: return "E_NONTERMINATION";
        case Err::E_NOT_STANDARD: return "E_NOT_STANDARD";
    }
    return "E_UNKNOWN";
}

const char* mark_name(Mark m) {
    switch (m) {
        case Mark::O: return "O";
        case Mark::X: return "X";
        case Mark::XX: return "XX";
    }
    return "?";
}

namespace {

// Row or column content is legal iff it is {O,X} or {O,O,XX}.
bool pattern_ok(std::vector<Mark> ms) {
    std::sort(ms.begin(), ms.end());
    if (ms == std::vector<Mark>{Mark::O, Mark::X}) return true;
    if (ms == std::vector<Mark>{Mark::O, Mark::O, Mark::XX}) return true;
    return false;
}

}  // namespace

void GridDiagram::validate() const {
    if (p < 1) throw LensError(Err::E_PARAMS, "p must be positive");
    if (!(-p < q && q < p)) throw LensError(Err::E_PARAMS, "require -p < q < p");
    if (p == 1 && q != 0) throw LensError(Err::E_PARAMS, "p = 1 requires q = 0");
    if (p > 1 && std::gcd(p, std::abs(q)) != 1)
        throw LensError(Err::E_PARAMS, "gcd(p,q) must be 1");
    if (N < 1) throw LensError(Err::E_PARAMS, "N must be positive");
    std::vector<std::vector<Mark>> rows(N), cols(N);
    for (const auto& [c, k] : marks) {
        auto [a, b] = c;
        if (a < 0 || a >= pN() || b < 0 || b >= N)
            throw LensError(Err::E_COORDS, "mark at (" + std::to_string(a) + "," +
                                               std::to_string(b) + ") out of range");
        rows[b].push_back(k);
        cols[a % N].push_back(k);
    }
    for (int b = 0; b < N; b++)
        if (!pattern_ok(rows[b]))
            throw LensError(Err::E_ROW, "row " + std::to_string(b) +
                                            " is neither {O,X} nor {O,O,XX}");
    for (int j = 0; j < N; j++)
        if (!pattern_ok(cols[j]))
            throw LensError(Err::E_COL, "lens column " + std::to_string(j) +
                                            " is neither {O,X} nor {O,O,XX}");
}

bool GridDiagram::is_valid() const {
    try {
        validate();
        return true;
    } catch (const LensError&) {
        return false;
    }
}

int GridDiagram::n_xx() const {
    int n = 0;
    for (const auto& [c, k] : marks)
        if (k == Mark::XX) n++;
    return n;
}

int GridDiagram::n_x() const {
    int n = 0;
    for (const auto& [c, k] : marks)
        if (k == Mark::X) n++;
    return n;
}

Cell GridDiagram::up_cell(Cell c) const {
    auto [a, b] = c;
    if (b + 1 == N) return {mod(a - shift(), pN()), 0};
    return {a, b + 1};
}

Cell GridDiagram::down_cell(Cell c) const {
    auto [a, b] = c;
    if (b == 0) return {mod(a + shift(), pN()), N - 1};
    return {a, b - 1};
}

Cell GridDiagram::left_cell(Cell c) const { return {mod(c.first - 1, pN()), c.second}; }
Cell GridDiagram::right_cell(Cell c) const { return {mod(c.first + 1, pN()), c.second}; }

std::vector<Cell> GridDiagram::lift_orbit(Cell c) const {
    std::vector<Cell> out;
    out.reserve(p);
    for (int l = 0; l < p; l++)
        out.push_back({mod(c.first + l * shift(), pN()), mod(c.second + l * N, pN())});
    return out;
}

std::string GridDiagram::serialize() const {
    std::ostringstream os;
    os << "lensgrid v1\n";
    os << "lens " << p << " " << q << "\n";
    os << "size " << N << "\n";
    for (const auto& [c, k] : marks)
        os << mark_name(k) << " " << c.first << " " << c.second << "\n";
    return os.str();
}

GridDiagram parse_diagram(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    GridDiagram d;
    bool saw_header = false, saw_lens = false, saw_size = false;
    int lineno = 0;
    std::map<Cell, Mark> marks;
    while (std::getline(in, line)) {
        lineno++;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        // trim
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        std::istringstream ls(line);
        if (!saw_header) {
            std::string w1, w2, extra;
            ls >> w1 >> w2;
            if (w1 != "lensgrid" || w2 != "v1" || (ls >> extra))
                throw LensError(Err::E_SYNTAX, "line 1 must be `lensgrid v1`");
            saw_header = true;
            continue;
        }
        std::string kw;
        ls >> kw;
        if (kw == "lens") {
            if (saw_lens) throw LensError(Err::E_SYNTAX, "duplicate lens line");
            std::string extra;
            if (!(ls >> d.p >> d.q) || (ls >> extra))
                throw LensError(Err::E_SYNTAX, "lens line: expected `lens <p> <q>`");
            saw_lens = true;
        } else if (kw == "size") {
            if (!saw_lens) throw LensError(Err::E_SYNTAX, "size before lens");
            if (saw_size) throw LensError(Err::E_SYNTAX, "duplicate size line");
            std::string extra;
            if (!(ls >> d.N) || (ls >> extra))
                throw LensError(Err::E_SYNTAX, "size line: expected `size <N>`");
            saw_size = true;
        } else if (kw == "O" || kw == "X" || kw == "XX") {
            if (!saw_size) throw LensError(Err::E_SYNTAX, "mark before size line");
            int a, b2;
            std::string extra;
            if (!(ls >> a >> b2) || (ls >> extra))
                throw LensError(Err::E_SYNTAX, "mark line " + std::to_string(lineno) +
                                                   ": expected `<kind> <a> <b>`");
            Mark k = kw == "O" ? Mark::O : (kw == "X" ? Mark::X : Mark::XX);
            if (d.p < 1 || d.N < 1)
                throw LensError(Err::E_PARAMS, "bad lens/size parameters");
            if (a < 0 || a >= d.p * d.N || b2 < 0 || b2 >= d.N)
                throw LensError(Err::E_COORDS, "mark (" + std::to_string(a) + "," +
                                                   std::to_string(b2) + ") out of range");
            Cell c{a, b2};
            if (marks.count(c))
                throw LensError(Err::E_DUPCELL, "two marks in cell (" + std::to_string(a) +
                                                    "," + std::to_string(b2) + ")");
            marks[c] = k;
        } else {
            throw LensError(Err::E_SYNTAX,
                            "line " + std::to_string(lineno) + ": unknown keyword `" + kw + "`");
        }
    }
    if (!saw_header) throw LensError(Err::E_SYNTAX, "empty file");
    if (!saw_lens || !saw_size) throw LensError(Err::E_SYNTAX, "missing lens/size line");
    d.marks = std::move(marks);
    d.validate();
    return d;
}

GridDiagram load_diagram(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw LensError(Err::E_SYNTAX, "cannot open " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_diagram(buf.str());
}

LiftedGrid lift(const GridDiagram& d) {
    d.validate();
    LiftedGrid L;
    L.size = d.pN();
    for (const auto& [c, k] : d.marks)
        for (Cell t : d.lift_orbit(c)) {
            if (L.marks.count(t))
                throw MathInvariantError("lift orbit collision");
            L.marks[t] = k;
        }
    // Assert the lifted S3 validity contract.
    std::vector<std::vector<Mark>> rows(L.size), cols(L.size);
    for (const auto& [c, k] : L.marks) {
        rows[c.second].push_back(k);
        cols[c.first].push_back(k);
    }
    for (int i = 0; i < L.size; i++)
        if (!pattern_ok(rows[i]) || !pattern_ok(cols[i]))
            throw MathInvariantError("lift is not a valid S3 grid");
    return L;
}

std::string render_ascii(const GridDiagram& d) {
    // Top row printed first (b = N-1 down to 0); cells 3 chars wide.
    std::ostringstream os;
    os << "L(" << d.p << "," << d.q << ") N=" << d.N << "\n";
    for (int b = d.N - 1; b >= 0; b--) {
        os << "+";
        for (int a = 0; a < d.pN(); a++) os << "--+";
        os << "\n|";
        for (int a = 0; a < d.pN(); a++) {
            auto it = d.marks.find({a, b});
            if (it == d.marks.end())
                os << "  |";
            else if (it->second == Mark::XX)
                os << "XX|";
            else
                os << mark_name(it->second) << " |";
        }
        os << " b=" << b << "\n";
    }
    os << "+";
    for (int a = 0; a < d.pN(); a++) os << "--+";
    os << "\n";
    return os.str();
}

std::string render_svg(const GridDiagram& d) {
    const int cs = 24;  // cell size
    int W = d.pN() * cs, H = d.N * cs;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W + 2 << "\" height=\""
       << H + 2 << "\" viewBox=\"-1 -1 " << W + 2 << " " << H + 2 << "\">\n";
    for (int a = 0; a <= d.pN(); a++)
        os << "<line x1=\"" << a * cs << "\" y1=\"0\" x2=\"" << a * cs << "\" y2=\"" << H
           << "\" stroke=\"" << (a % d.N == 0 ? "black" : "gray") << "\"/>\n";
    for (int b = 0; b <= d.N; b++)
        os << "<line x1=\"0\" y1=\"" << b * cs << "\" x2=\"" << W << "\" y2=\"" << b * cs
           << "\" stroke=\"black\"/>\n";
    for (const auto& [c, k] : d.marks) {
        // y axis points down in SVG; b=0 is the bottom row.
        int cx = c.first * cs + cs / 2, cy = (d.N - 1 - c.second) * cs + cs / 2;
        if (k == Mark::O)
            os << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << cs / 3
               << "\" fill=\"none\" stroke=\"black\"/>\n";
        else
            os << "<text x=\"" << cx << "\" y=\"" << cy + 5
               << "\" text-anchor=\"middle\" font-size=\"14\">" << mark_name(k)
               << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::vector<GridDiagram> enumerate_diagrams(int p, int q, int N, int n_xx,
                                            long long cell_cap) {
    if (const char* cap = std::getenv("LENSGRID_CAP")) cell_cap = std::atoll(cap);
    long long cells = static_cast<long long>(p) * N * N;
    if (cells > cell_cap)
        throw LensError(Err::E_TOOBIG, "pN*N = " + std::to_string(cells) +
                                           " exceeds cap " + std::to_string(cell_cap));
    if (p < 1 || !(-p < q && q < p) || (p > 1 && std::gcd(p, std::abs(q)) != 1) ||
        (p == 1 && q != 0))
        throw LensError(Err::E_PARAMS, "bad lens parameters");
    int pN = p * N;
    std::vector<Cell> all;
    for (int a = 0; a < pN; a++)
        for (int b = 0; b < N; b++) all.push_back({a, b});
    std::vector<GridDiagram> out;
    // Choose which rows/cols are singular, then place marks by brute force on
    // cells with row/column capacity pruning (small sizes only).
    int k = N - n_xx;       // regular rows
    int nO = 2 * n_xx + k;  // total O count
    std::vector<std::pair<Cell, Mark>> placed;
    std::vector<int> rowO(N, 0), rowX(N, 0), rowXX(N, 0);
    std::vector<int> colO(N, 0), colX(N, 0), colXX(N, 0);
    GridDiagram d;
    d.p = p;
    d.q = q;
    d.N = N;
    int needXX = n_xx, needX = k, needO = nO;
    // DFS over cells in lexicographic order.
    std::function<void(size_t)> dfs = [&](size_t i) {
        if (i == all.size()) {
            if (needXX == 0 && needX == 0 && needO == 0 && d.is_valid()) out.push_back(d);
            return;
        }
        auto [a, b] = all[i];
        int j = a % N;
        auto try_mark = [&](Mark m, int& need) {
            if (need == 0) return;
            // Row/column capacity pruning; the final is_valid() filters the rest.
            if (m == Mark::O &&
                (rowO[b] >= 2 || colO[j] >= 2 || (rowO[b] == 1 && rowX[b]) ||
                 (colO[j] == 1 && colX[j])))
                return;
            if (m == Mark::X &&
                (rowX[b] || rowXX[b] || colX[j] || colXX[j] || rowO[b] >= 2 || colO[j] >= 2))
                return;
            if (m == Mark::XX && (rowX[b] || rowXX[b] || colX[j] || colXX[j])) return;
            d.marks[{a, b}] = m;
            need--;
            auto bump = [&](std::vector<int>& v, int idx, int s) { v[idx] += s; };
            if (m == Mark::O) { bump(rowO, b, 1); bump(colO, j, 1); }
            if (m == Mark::X) { bump(rowX, b, 1); bump(colX, j, 1); }
            if (m == Mark::XX) { bump(rowXX, b, 1); bump(colXX, j, 1); }
            dfs(i + 1);
            if (m == Mark::O) { bump(rowO, b, -1); bump(colO, j, -1); }
            if (m == Mark::X) { bump(rowX, b, -1); bump(colX, j, -1); }
            if (m == Mark::XX) { bump(rowXX, b, -1); bump(colXX, j, -1); }
            need++;
            d.marks.erase({a, b});
        };
        dfs(i + 1);  // empty cell
        try_mark(Mark::O, needO);
        try_mark(Mark::X, needX);
        try_mark(Mark::XX, needXX);
    };
    dfs(0);
    return out;
}

}  // namespace lensgrid
