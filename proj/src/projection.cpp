#include "lensgrid/projection.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lensgrid {

std::vector<HArc> harcs(const GridDiagram& d) {
    std::map<int, std::vector<std::pair<Cell, Mark>>> rows;
    for (const auto& [c, k] : d.marks) rows[c.second].push_back({c, k});
    std::vector<HArc> arcs;
    for (auto& [b, ms] : rows) {
        std::vector<Cell> Os, Xs;
        for (auto& [c, k] : ms) (k == Mark::O ? Os : Xs).push_back(c);
        Cell x = Xs.at(0);
        for (Cell o : Os) {
            HArc h;
            h.row = b;
            h.o = o;
            h.x = x;
            h.dir = x.first > o.first ? 1 : -1;
            int lo = std::min(o.first, x.first), hi = std::max(o.first, x.first);
            for (int a = lo + 1; a < hi; a++) h.interior.push_back({a, b});
            arcs.push_back(std::move(h));
        }
    }
    return arcs;
}

std::vector<VArc> varcs(const GridDiagram& d) {
    std::map<int, std::vector<std::pair<Cell, Mark>>> cols;
    for (const auto& [c, k] : d.marks) cols[c.first % d.N].push_back({c, k});
    std::vector<VArc> arcs;
    for (auto& [j, ms] : cols) {
        std::vector<Cell> Os, Xs;
        for (auto& [c, k] : ms) (k == Mark::O ? Os : Xs).push_back(c);
        Cell x = Xs.at(0);
        std::set<Cell> remaining(Os.begin(), Os.end());
        Cell cur = x;
        std::vector<Cell> interior;
        int steps = 0;
        while (!remaining.empty()) {
            cur = d.up_cell(cur);
            if (++steps > 2 * d.pN() + 2)
                throw MathInvariantError("vertical arc walk did not terminate");
            if (remaining.count(cur)) {
                VArc v;
                v.col = j;
                v.x = x;
                v.o = cur;
                v.interior = interior;
                arcs.push_back(std::move(v));
                remaining.erase(cur);
                interior.push_back(cur);  // farther arc passes through this O's cell
            } else {
                interior.push_back(cur);
            }
        }
    }
    return arcs;
}

std::vector<Crossing> crossings(const GridDiagram& d) {
    auto hs = harcs(d);
    auto vs = varcs(d);
    std::set<Crossing> out;
    for (const auto& v : vs) {
        std::set<Cell> vint(v.interior.begin(), v.interior.end());
        for (const auto& h : hs)
            for (Cell c : h.interior)
                if (vint.count(c)) out.insert({c, -h.dir});  // positive iff h points left
    }
    return {out.begin(), out.end()};
}

EdgePartition edge_partition(const GridDiagram& d) {
    EdgePartition ep;
    ep.n = d.n_xx();
    ep.k = d.n_x();
    // Successor tables.  row_x[b]: the X/XX cell of row b.  col_o: for each X
    // cell, the O its upward arc ends at; for each XX cell, its two O's.
    std::map<int, Cell> row_x;
    for (const auto& [c, k] : d.marks)
        if (k != Mark::O) row_x[c.second] = c;
    std::map<Cell, std::vector<Cell>> ups;
    for (const auto& v : varcs(d)) ups[v.x].push_back(v.o);
    std::vector<std::set<Cell>> groups;  // O-cell sets, thin edges first
    std::set<Cell> seen_o;
    // Thin edges: start at each upward arc of each XX, walk O -> row X -> up O
    // until the row mark is an XX again.
    for (const auto& [c, k] : d.marks) {
        if (k != Mark::XX) continue;
        for (Cell o0 : ups[c]) {
            std::set<Cell> grp;
            Cell cur = o0;
            int steps = 0;
            while (true) {
                grp.insert(cur);
                seen_o.insert(cur);
                Cell rx = row_x.at(cur.second);
                if (d.marks.at(rx) == Mark::XX) break;
                const auto& next = ups.at(rx);
                cur = next.at(0);
                if (++steps > static_cast<int>(d.marks.size()) + 1)
                    throw MathInvariantError("thin-edge traversal did not terminate");
            }
            groups.push_back(std::move(grp));
        }
    }
    if (static_cast<int>(groups.size()) != 2 * ep.n)
        throw MathInvariantError("thin edge count != 2n");
    // Regular components: cycles through the remaining O's.
    for (const auto& [c, k] : d.marks) {
        if (k != Mark::O || seen_o.count(c)) continue;
        std::set<Cell> grp;
        Cell cur = c;
        int steps = 0;
        while (!grp.count(cur)) {
            grp.insert(cur);
            seen_o.insert(cur);
            Cell rx = row_x.at(cur.second);
            cur = ups.at(rx).at(0);
            if (++steps > static_cast<int>(d.marks.size()) + 1)
                throw MathInvariantError("component traversal did not terminate");
        }
        groups.push_back(std::move(grp));
        ep.m++;
    }
    // Canonical numbering: distinguished O's (lex-least per group, groups
    // ordered by that cell) first, then the remaining O's in lex order.
    std::vector<Cell> dist;
    for (const auto& g : groups) dist.push_back(*g.begin());
    std::sort(dist.begin(), dist.end());
    ep.distinguished = dist;
    std::set<Cell> dset(dist.begin(), dist.end());
    ep.o_order = dist;
    for (const auto& [c, k] : d.marks)
        if (k == Mark::O && !dset.count(c)) ep.o_order.push_back(c);
    return ep;
}

}  // namespace lensgrid
