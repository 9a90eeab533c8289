#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qcluster/qtorus.hpp"

namespace qcluster {

struct InvalidTriangulation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotFlippable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One of the two ends of an edge.
struct EdgeEnd {
    int edge = -1;
    int end = 0; // 0 or 1

    friend auto operator<=>(const EdgeEnd&, const EdgeEnd&) = default;
};

/// Small dense integer matrix.
class IntMat {
public:
    IntMat() = default;
    IntMat(int rows, int cols) : rows_(rows), cols_(cols), v_(std::size_t(rows) * cols, 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::int64_t& at(int i, int j) { return v_[std::size_t(i) * cols_ + j]; }
    std::int64_t at(int i, int j) const { return v_[std::size_t(i) * cols_ + j]; }

    IntMat transpose() const {
        IntMat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend IntMat operator*(const IntMat& a, const IntMat& b) {
        if (a.cols_ != b.rows_) throw std::logic_error("matrix shape");
        IntMat r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                if (a.at(i, k) == 0) continue;
                for (int j = 0; j < b.cols_; ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return r;
    }

    friend bool operator==(const IntMat&, const IntMat&) = default;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<std::int64_t> v_;
};

/// Combinatorial ideal triangulation of an unpunctured marked surface.
///
/// Triangles are stored as edge triples in counter-clockwise cyclic order;
/// at each marked point the incident edge-ends are listed counter-clockwise,
/// starting and ending with boundary edges. Everything else (corner structure,
/// exchange and compatibility matrices, flips) is derived from these lists.
struct Triangulation {
    struct Edge {
        std::string id;
        bool boundary = false;
    };

    std::vector<Edge> edges;
    std::vector<std::array<int, 3>> triangles; // ccw cyclic
    std::vector<std::string> point_ids;
    std::vector<std::vector<EdgeEnd>> end_orders; // per point, ccw

    int edge_count() const { return static_cast<int>(edges.size()); }

    int edge_index(const std::string& id) const {
        for (int i = 0; i < edge_count(); ++i)
            if (edges[i].id == id) return i;
        throw InvalidTriangulation("unknown edge id: " + id);
    }

    bool is_unfrozen(int e) const { return !edges[e].boundary; }

    std::vector<int> unfrozen_edges() const {
        std::vector<int> r;
        for (int i = 0; i < edge_count(); ++i)
            if (is_unfrozen(i)) r.push_back(i);
        return r;
    }
};

namespace surf_detail {

struct Corner {
    int point;
    int pos; // corner between ends[pos] (leave) and ends[pos+1] (arrive)
    EdgeEnd leave;
    EdgeEnd arrive;
};

inline std::vector<Corner> corners(const Triangulation& t) {
    std::vector<Corner> cs;
    for (int p = 0; p < static_cast<int>(t.end_orders.size()); ++p) {
        const auto& ends = t.end_orders[p];
        for (int i = 0; i + 1 < static_cast<int>(ends.size()); ++i)
            cs.push_back({p, i, ends[i], ends[i + 1]});
    }
    return cs;
}

// Walk from a corner: leave along `leave` to its far end, which is the arrive
// end of the next corner of the same triangle.
inline int corner_successor(const Triangulation& t, const std::vector<Corner>& cs, int ci) {
    EdgeEnd far{cs[ci].leave.edge, 1 - cs[ci].leave.end};
    for (int j = 0; j < static_cast<int>(cs.size()); ++j)
        if (cs[j].arrive == far) return j;
    throw InvalidTriangulation("dangling edge end while walking corners (edge " +
                               t.edges[cs[ci].leave.edge].id + ")");
}

inline std::vector<std::array<int, 3>> walk_triangles(const Triangulation& t,
                                                      const std::vector<Corner>& cs) {
    std::vector<std::array<int, 3>> tris;
    std::vector<bool> used(cs.size(), false);
    for (int start = 0; start < static_cast<int>(cs.size()); ++start) {
        if (used[start]) continue;
        std::array<int, 3> cyc{};
        int c = start;
        for (int step = 0; step < 3; ++step) {
            if (used[c]) throw InvalidTriangulation("corner reused; faces are not triangles");
            used[c] = true;
            cyc[step] = c;
            c = corner_successor(t, cs, c);
        }
        if (c != start) throw InvalidTriangulation("face is not a triangle");
        tris.push_back(cyc);
    }
    return tris;
}

} // namespace surf_detail

/// Checks all structural invariants; throws InvalidTriangulation naming the
/// violated one.
inline void validate(const Triangulation& t) {
    const int ne = t.edge_count();
    if (t.end_orders.size() != t.point_ids.size())
        throw InvalidTriangulation("end_orders/point count mismatch");
    for (const auto& tri : t.triangles)
        for (int e : tri)
            if (e < 0 || e >= ne) throw InvalidTriangulation("triangle references a missing edge");

    // Every edge has exactly two ends, each placed exactly once.
    std::map<EdgeEnd, int> seen;
    for (int p = 0; p < static_cast<int>(t.end_orders.size()); ++p) {
        if (t.end_orders[p].empty()) throw InvalidTriangulation("marked point with no ends");
        for (const auto& ee : t.end_orders[p]) {
            if (ee.edge < 0 || ee.edge >= ne || (ee.end != 0 && ee.end != 1))
                throw InvalidTriangulation("bad edge end reference");
            if (++seen[ee] > 1) throw InvalidTriangulation("edge end placed twice");
        }
        // No punctures: the wedge at a boundary marked point starts and ends
        // with boundary edges.
        const auto& ends = t.end_orders[p];
        if (!t.edges[ends.front().edge].boundary || !t.edges[ends.back().edge].boundary)
            throw InvalidTriangulation("end order must start and end with boundary edges (point " +
                                       t.point_ids[p] + ")");
    }
    for (int e = 0; e < ne; ++e)
        for (int k = 0; k < 2; ++k)
            if (!seen.count({e, k}))
                throw InvalidTriangulation("edge end missing from end orders: " + t.edges[e].id);

    // Reconstruct triangles from corners and compare with the given list.
    auto cs = surf_detail::corners(t);
    auto walked = surf_detail::walk_triangles(t, cs);
    if (walked.size() != t.triangles.size())
        throw InvalidTriangulation("triangle count disagrees with corner structure");
    std::multiset<std::array<int, 3>> given, found;
    auto canon = [](std::array<int, 3> a) {
        // canonical rotation of a cyclic triple
        std::array<int, 3> best = a;
        for (int r = 1; r < 3; ++r) {
            std::array<int, 3> rot{a[(r) % 3], a[(r + 1) % 3], a[(r + 2) % 3]};
            best = std::min(best, rot);
        }
        return best;
    };
    for (const auto& tri : t.triangles) given.insert(canon(tri));
    for (const auto& cyc : walked)
        found.insert(canon({cs[cyc[0]].leave.edge, cs[cyc[1]].leave.edge, cs[cyc[2]].leave.edge}));
    if (given != found) throw InvalidTriangulation("triangle list does not match corner structure");

    // Edge/triangle incidence counts.
    std::map<int, int> uses;
    for (const auto& tri : t.triangles)
        for (int e : tri) uses[e]++;
    for (int e = 0; e < ne; ++e) {
        int u = uses.count(e) ? uses[e] : 0;
        if (t.edges[e].boundary && u != 1)
            throw InvalidTriangulation("boundary edge must bound exactly one triangle: " +
                                       t.edges[e].id);
        if (!t.edges[e].boundary && u != 2)
            throw InvalidTriangulation("interior edge must bound exactly two triangle sides: " +
                                       t.edges[e].id);
    }

    // Self-folded triangles are impossible without punctures: reject a
    // triangle whose two sides are the same edge via the same end pattern.
    // (An edge may appear twice only through its two distinct ends; the corner
    // walk above already guarantees ends are distinct, so nothing more here.)

    // Euler characteristic consistency: chi = V - E + F, |arcs| = -3chi + 2|M|.
    int chi = static_cast<int>(t.point_ids.size()) - ne + static_cast<int>(t.triangles.size());
    int marked = static_cast<int>(t.point_ids.size());
    int total = ne, interior = static_cast<int>(t.unfrozen_edges().size());
    if (total != -3 * chi + 2 * marked)
        throw InvalidTriangulation("edge count violates |T| = -3chi + 2|M|");
    if (interior != -3 * chi + marked)
        throw InvalidTriangulation("interior edge count violates |T_uf| = -3chi + |M|");
}

/// Exchange matrix: rows and columns indexed by all edges, frozen rows zero.
/// eps[a][b] counts corners where b immediately follows a counter-clockwise.
inline IntMat exchange_matrix(const Triangulation& t) {
    IntMat eps(t.edge_count(), t.edge_count());
    for (const auto& c : surf_detail::corners(t)) {
        int u = c.leave.edge, v = c.arrive.edge;
        // In the triangle's ccw cyclic edge order the arrive edge is followed
        // by the leave edge.
        if (t.is_unfrozen(v)) eps.at(v, u) += 1;
        if (t.is_unfrozen(u)) eps.at(u, v) -= 1;
    }
    return eps;
}

/// Compatibility matrix: pi[a][b] sums +1 over end pairs at shared marked
/// points where a's end precedes b's end counter-clockwise.
inline IntMat compatibility_matrix(const Triangulation& t) {
    IntMat pi(t.edge_count(), t.edge_count());
    for (const auto& ends : t.end_orders) {
        for (std::size_t i = 0; i < ends.size(); ++i)
            for (std::size_t j = i + 1; j < ends.size(); ++j) {
                pi.at(ends[i].edge, ends[j].edge) += 1;
                pi.at(ends[j].edge, ends[i].edge) -= 1;
            }
    }
    return pi;
}

/// Labels of the quadrilateral around an interior edge, following the
/// conventions pinned by the walled-square fixture: in each adjacent triangle,
/// beta is the edge following kappa counter-clockwise and alpha the edge
/// preceding it.
struct FlipQuad {
    int kappa = -1;
    int alpha1 = -1, alpha2 = -1, beta1 = -1, beta2 = -1;
};

namespace surf_detail {

inline const Corner& corner_with_arrive(const std::vector<Corner>& cs, EdgeEnd e) {
    for (const auto& c : cs)
        if (c.arrive == e) return c;
    throw InvalidTriangulation("no corner arrives at edge end");
}

inline const Corner& corner_with_leave(const std::vector<Corner>& cs, EdgeEnd e) {
    for (const auto& c : cs)
        if (c.leave == e) return c;
    throw InvalidTriangulation("no corner leaves at edge end");
}

} // namespace surf_detail

/// Flips an interior edge in place (same edge id), returning the new
/// triangulation and the quadrilateral labels of the old configuration.
inline std::pair<Triangulation, FlipQuad> flip(const Triangulation& t, int kappa);

inline FlipQuad flip_quad(const Triangulation& t, int kappa) { return flip(t, kappa).second; }

inline std::pair<Triangulation, FlipQuad> flip(const Triangulation& t, int kappa) {
    if (t.edges[kappa].boundary) throw NotFlippable("boundary edge: " + t.edges[kappa].id);
    auto cs = surf_detail::corners(t);
    EdgeEnd head{kappa, 1}, tail{kappa, 0};

    const auto& cA1 = surf_detail::corner_with_arrive(cs, head); // at p1: leave beta1
    int iA1 = int(&cA1 - cs.data());
    int iA2 = surf_detail::corner_successor(t, cs, iA1); // at p2: leave alpha1
    int iA3 = surf_detail::corner_successor(t, cs, iA2); // at p3: leave kappa (tail)
    if (!(cs[iA3].leave == tail))
        throw NotFlippable("self-folded configuration at " + t.edges[kappa].id);

    const auto& cB1 = surf_detail::corner_with_arrive(cs, tail); // at p3: leave beta2
    int iB1 = int(&cB1 - cs.data());
    int iB2 = surf_detail::corner_successor(t, cs, iB1); // at p4: leave alpha2
    int iB3 = surf_detail::corner_successor(t, cs, iB2); // at p1: leave kappa (head)
    if (!(cs[iB3].leave == head))
        throw NotFlippable("self-folded configuration at " + t.edges[kappa].id);

    FlipQuad q;
    q.kappa = kappa;
    q.beta1 = cs[iA1].leave.edge;
    q.alpha1 = cs[iA2].leave.edge;
    q.beta2 = cs[iB1].leave.edge;
    q.alpha2 = cs[iB2].leave.edge;

    int p1 = cs[iA1].point, p2 = cs[iA2].point, p3 = cs[iB1].point, p4 = cs[iB2].point;

    Triangulation out = t;
    // Drop kappa's old ends.
    auto erase_end = [&](int point, EdgeEnd e) {
        auto& v = out.end_orders[point];
        auto it = std::find(v.begin(), v.end(), e);
        if (it == v.end()) throw InvalidTriangulation("lost an edge end during flip");
        v.erase(it);
    };
    erase_end(p1, head);
    erase_end(p3, tail);
    // Insert kappa' (same edge index): end 0 at p2 between alpha1's and
    // beta1's ends, end 1 at p4 between alpha2's and beta2's ends.
    auto insert_between = [&](int point, EdgeEnd before, EdgeEnd after, EdgeEnd neu) {
        auto& v = out.end_orders[point];
        for (std::size_t i = 0; i + 1 < v.size(); ++i)
            if (v[i] == before && v[i + 1] == after) {
                v.insert(v.begin() + i + 1, neu);
                return;
            }
        throw InvalidTriangulation("flip corner vanished");
    };
    insert_between(p2, cs[iA2].leave, cs[iA2].arrive, EdgeEnd{kappa, 0});
    insert_between(p4, cs[iB2].leave, cs[iB2].arrive, EdgeEnd{kappa, 1});

    // Replace the two triangles.
    auto canon = [](std::array<int, 3> a) {
        std::array<int, 3> best = a;
        for (int r = 1; r < 3; ++r)
            best = std::min(best, std::array<int, 3>{a[r % 3], a[(r + 1) % 3], a[(r + 2) % 3]});
        return best;
    };
    std::array<int, 3> oldA = canon({kappa, q.beta1, q.alpha1});
    std::array<int, 3> oldB = canon({kappa, q.beta2, q.alpha2});
    bool removedA = false, removedB = false;
    std::vector<std::array<int, 3>> tris;
    for (const auto& tri : out.triangles) {
        auto c = canon(tri);
        if (!removedA && c == oldA) {
            removedA = true;
            continue;
        }
        if (!removedB && c == oldB) {
            removedB = true;
            continue;
        }
        tris.push_back(tri);
    }
    if (!removedA || !removedB) throw InvalidTriangulation("flip could not locate its triangles");
    tris.push_back({q.beta1, kappa, q.alpha2});  // p1-p2-p4
    tris.push_back({q.alpha1, q.beta2, kappa});  // p2-p3-p4
    out.triangles = std::move(tris);
    validate(out);
    return {std::move(out), q};
}

// ---------------------------------------------------------------------------
// Builders

/// Convex n-gon with vertices labeled ccw and boundary edges d1..dn
/// (di from Vi to Vi+1). The end order at Vi runs from di to d(i-1).
/// `diagonals` lists vertex pairs (1-based) in any order.
inline Triangulation make_polygon(int n, const std::vector<std::pair<int, int>>& diagonals,
                                  const std::vector<std::string>& diagonal_ids) {
    Triangulation t;
    for (int i = 1; i <= n; ++i) t.edges.push_back({"d" + std::to_string(i), true});
    std::map<std::pair<int, int>, int> diag_index;
    for (std::size_t k = 0; k < diagonals.size(); ++k) {
        auto [a, b] = diagonals[k];
        t.edges.push_back({diagonal_ids.at(k), false});
        diag_index[{a, b}] = n + static_cast<int>(k);
        diag_index[{b, a}] = n + static_cast<int>(k);
    }
    for (int i = 1; i <= n; ++i) t.point_ids.push_back("V" + std::to_string(i));

    auto hop = [&](int from, int to) { return (to - from + n) % n; };
    // Ends: edge index + which end. Boundary edge di has end0 at Vi, end1 at
    // Vi+1. A diagonal (a,b) with a<b gets end0 at a, end1 at b.
    t.end_orders.resize(n);
    for (int i = 1; i <= n; ++i) {
        auto& ends = t.end_orders[i - 1];
        ends.push_back({i - 1, 0}); // d_i, end at Vi
        // diagonals from Vi ordered by increasing ccw hop
        std::vector<std::pair<int, int>> outs; // (hop, other vertex)
        for (const auto& [pr, idx] : diag_index) {
            if (pr.first == i) outs.push_back({hop(i, pr.second), pr.second});
        }
        std::sort(outs.begin(), outs.end());
        for (const auto& [h, other] : outs) {
            auto [a, b] = std::minmax(i, other);
            int idx = diag_index.at({a, b});
            ends.push_back({idx, i == a ? 0 : 1});
        }
        int prev = i == 1 ? n : i - 1;
        ends.push_back({prev - 1, 1}); // d_{i-1}, end at Vi
    }
    // Reconstruct triangles from corners.
    auto cs = surf_detail::corners(t);
    for (const auto& cyc : surf_detail::walk_triangles(t, cs))
        t.triangles.push_back({cs[cyc[0]].leave.edge, cs[cyc[1]].leave.edge, cs[cyc[2]].leave.edge});
    validate(t);
    return t;
}

/// Square with one diagonal k; sides named a1 (V1V2), b2 (V2V3), a2 (V3V4),
/// b1 (V4V1) to match the walled-square labels with k oriented V2 -> V4.
inline Triangulation make_square() {
    Triangulation t = make_polygon(4, {{2, 4}}, {"k"});
    // Rename boundary edges to the quadrilateral labels used throughout:
    // flip_quad(k) then yields beta1 = b1, beta2 = b2, alpha1 = a1, alpha2 = a2.
    t.edges[t.edge_index("d1")].id = "a1";
    t.edges[t.edge_index("d2")].id = "b2";
    t.edges[t.edge_index("d3")].id = "a2";
    t.edges[t.edge_index("d4")].id = "b1";
    return t;
}

inline Triangulation make_pentagon() {
    return make_polygon(5, {{1, 3}, {1, 4}}, {"c1", "c2"});
}

/// Hexagon with the inner-triangle triangulation {V2V4, V4V6, V2V6}.
inline Triangulation make_hexagon() {
    return make_polygon(6, {{2, 4}, {4, 6}, {2, 6}}, {"a2", "a3", "a23"});
}

/// The walled-annulus triangulation: two boundary circles with two marked
/// points each, interior arcs 1..4, boundary arcs 5..8.
inline Triangulation make_annulus() {
    Triangulation t;
    for (int i = 1; i <= 8; ++i) t.edges.push_back({std::to_string(i), i >= 5});
    t.point_ids = {"M1", "M2", "M3", "M4"};
    auto e = [&](int id, int end) { return EdgeEnd{id - 1, end}; };
    // Arc ends: 1 = M2M4 (end0 at M2), 2 = M1M2 (end0 at M1), 3 = M2M4 the
    // other way (end0 at M2), 4 = M3M4 (end0 at M3); boundary 5 = M4M1,
    // 6 = M3M2, 7 = M2M3, 8 = M1M4.
    t.end_orders = {
        {e(5, 1), e(2, 0), e(8, 0)},                   // M1
        {e(7, 0), e(3, 0), e(2, 1), e(1, 0), e(6, 1)}, // M2
        {e(6, 0), e(4, 0), e(7, 1)},                   // M3
        {e(8, 1), e(3, 1), e(4, 1), e(1, 1), e(5, 0)}, // M4
    };
    auto cs = surf_detail::corners(t);
    for (const auto& cyc : surf_detail::walk_triangles(t, cs))
        t.triangles.push_back({cs[cyc[0]].leave.edge, cs[cyc[1]].leave.edge, cs[cyc[2]].leave.edge});
    validate(t);
    return t;
}

} // namespace qcluster
