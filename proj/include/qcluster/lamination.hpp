#pragma once

#include <optional>

#include "qcluster/surface.hpp"
#include "qcluster/tropical.hpp"

namespace qcluster {

struct CoordinateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A curve on the surface, stored by its coordinate vectors in a reference
/// triangulation: shear coordinates x over the interior arcs and doubled
/// half-intersection numbers a2 over all arcs. The defining invariant is
/// x_a = sum_b eps_{ab} a_b; construction additionally requires a >= 0
/// (mutation may leave that cone, which is fine).
struct CurveCoords {
    std::vector<std::int64_t> x;  // indexed by edge, zero on frozen edges
    std::vector<std::int64_t> a2; // doubled half-intersection numbers

    friend bool operator==(const CurveCoords&, const CurveCoords&) = default;
};

inline void check_curve(const Triangulation& t, const CurveCoords& c,
                        bool require_nonneg = true) {
    const int n = t.edge_count();
    if (static_cast<int>(c.x.size()) != n || static_cast<int>(c.a2.size()) != n)
        throw CoordinateError("curve coordinate size mismatch");
    if (require_nonneg)
        for (int i = 0; i < n; ++i)
            if (c.a2[i] < 0) throw CoordinateError("negative intersection number");
    IntMat eps = exchange_matrix(t);
    for (int al : t.unfrozen_edges()) {
        std::int64_t s = 0;
        for (int b = 0; b < n; ++b) s += eps.at(al, b) * c.a2[b];
        if (s != 2 * c.x[al]) throw CoordinateError("x != eps·a at edge " + t.edges[al].id);
    }
    for (int i = 0; i < n; ++i)
        if (!t.is_unfrozen(i) && c.x[i] != 0)
            throw CoordinateError("shear coordinate on a frozen edge");
}

inline CurveCoords make_curve(const Triangulation& t, std::vector<std::int64_t> x,
                              std::vector<std::int64_t> a2) {
    CurveCoords c{std::move(x), std::move(a2)};
    check_curve(t, c);
    return c;
}

/// Curve given only by its doubled a-vector; x is derived from x = eps·a.
inline CurveCoords curve_from_a2(const Triangulation& t, std::vector<std::int64_t> a2) {
    IntMat eps = exchange_matrix(t);
    const int n = t.edge_count();
    std::vector<std::int64_t> x(n, 0);
    for (int al : t.unfrozen_edges()) {
        std::int64_t s = 0;
        for (int b = 0; b < n; ++b) s += eps.at(al, b) * a2[b];
        if (s % 2 != 0) throw CoordinateError("a-vector gives a non-integer shear coordinate");
        x[al] = s / 2;
    }
    return make_curve(t, std::move(x), std::move(a2));
}

/// a'_{k'} = -a_k + min{ sum [eps_{kb}]+ a_b, sum [-eps_{kb}]+ a_b }.
inline std::vector<std::int64_t> half_int_mutate(const Triangulation& t, const CurveCoords& c,
                                                 int kappa) {
    if (!t.is_unfrozen(kappa)) throw NotFlippable("boundary edge");
    IntMat eps = exchange_matrix(t);
    std::int64_t plus = 0, minus = 0;
    for (int b = 0; b < t.edge_count(); ++b) {
        std::int64_t e = eps.at(kappa, b);
        if (e > 0) plus += e * c.a2[b];
        if (e < 0) minus += -e * c.a2[b];
    }
    std::vector<std::int64_t> a2 = c.a2;
    a2[kappa] = -c.a2[kappa] + std::min(plus, minus);
    return a2;
}

/// Tropical X-coordinate transformation under the flip at kappa, jointly with
/// the half-intersection update; the invariant x' = eps'·a' is re-checked.
inline CurveCoords shear_mutate(const Triangulation& t, const CurveCoords& c, int kappa) {
    if (!t.is_unfrozen(kappa)) throw NotFlippable("boundary edge");
    IntMat eps = exchange_matrix(t);
    std::vector<std::int64_t> x = c.x;
    std::int64_t xk = c.x[kappa];
    for (int al : t.unfrozen_edges()) {
        if (al == kappa) continue;
        std::int64_t e = eps.at(al, kappa);
        if (e == 0) continue;
        std::int64_t sgn = e > 0 ? 1 : -1;
        x[al] = c.x[al] - e * std::min<std::int64_t>(0, -sgn * xk);
    }
    x[kappa] = -xk;
    CurveCoords out{std::move(x), half_int_mutate(t, c, kappa)};
    Triangulation flipped = flip(t, kappa).first;
    check_curve(flipped, out, /*require_nonneg=*/false);
    return out;
}

/// A tuple of laminations indexed by integer labels; each label's lamination
/// is the union of its curves.
struct MultiLamination {
    struct Entry {
        std::int64_t label;
        CurveCoords curve;
    };
    std::vector<Entry> entries;

    std::vector<std::int64_t> labels() const {
        std::vector<std::int64_t> r;
        for (const auto& e : entries)
            if (std::find(r.begin(), r.end(), e.label) == r.end()) r.push_back(e.label);
        return r;
    }
};

inline void check_multilam(const Triangulation& t, const MultiLamination& L) {
    for (const auto& e : L.entries) check_curve(t, e.curve);
}

inline MultiLamination mutate_multilam(const Triangulation& t, const MultiLamination& L,
                                       int kappa) {
    MultiLamination out;
    for (const auto& e : L.entries) out.entries.push_back({e.label, shear_mutate(t, e.curve, kappa)});
    return out;
}

/// Coefficient tuple p^{±}_{L;alpha} = prod_j u_j^{[± x_alpha(L_j)]+} over the
/// unfrozen arcs. The symbol factory defaults to plain u_j.
template <typename SymbolOf>
std::pair<TropMonomial, TropMonomial> lam_coeffs_at(const Triangulation&,
                                                    const MultiLamination& L, int alpha,
                                                    SymbolOf&& sym) {
    TropMonomial plus, minus;
    for (const auto& e : L.entries) {
        std::int64_t x = e.curve.x[alpha];
        if (x > 0) plus.mul_in(sym(e.label), 2 * x);
        if (x < 0) minus.mul_in(sym(e.label), -2 * x);
    }
    return {plus, minus};
}

struct CoeffPair {
    TropMonomial plus, minus;

    friend bool operator==(const CoeffPair&, const CoeffPair&) = default;
};

/// Per-unfrozen-edge coefficient pairs for a multi-lamination. Input curves
/// are not re-validated here (mutated coordinates may leave the nonnegative
/// cone); construction-time validation lives in check_multilam.
inline std::map<int, CoeffPair> lam_coeffs(const Triangulation& t, const MultiLamination& L) {
    std::map<int, CoeffPair> out;
    for (int al : t.unfrozen_edges()) {
        auto [p, m] = lam_coeffs_at(t, L, al, [](std::int64_t j) { return Symbol::u(j); });
        out[al] = {p, m};
    }
    return out;
}

/// Rescaling monomial prod_j u_j^{-a_alpha(L_j)} of the laminated toric frame.
inline TropMonomial rescale_prefix(const Triangulation&, const MultiLamination& L, int alpha) {
    TropMonomial m;
    for (const auto& e : L.entries) m.mul_in(Symbol::u(e.label), -e.curve.a2[alpha]);
    return m;
}

/// Finds the principal curve data for each unfrozen arc: x(L_{alpha,±}) =
/// ∓e_alpha, with an a-vector solved by brute force over doubled entries in
/// {0,1}, minimal support, smallest vector as tie-break.
inline CurveCoords principal_curve(const Triangulation& t, int alpha, int sign) {
    const int n = t.edge_count();
    std::vector<std::int64_t> want(n, 0);
    want[alpha] = sign > 0 ? -1 : 1;
    IntMat eps = exchange_matrix(t);
    auto unfrozen = t.unfrozen_edges();
    std::optional<std::vector<std::int64_t>> best;
    int best_support = n + 1;
    std::vector<std::int64_t> a2(n, 0);
    if (n > 20) throw CoordinateError("principal curve search limited to small triangulations");
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::fill(a2.begin(), a2.end(), 0);
        int support = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) {
                a2[i] = 1;
                ++support;
            }
        if (support >= best_support) continue;
        bool ok = true;
        for (int al : unfrozen) {
            std::int64_t s = 0;
            for (int b = 0; b < n; ++b) s += eps.at(al, b) * a2[b];
            if (s != 2 * want[al]) {
                ok = false;
                break;
            }
        }
        if (ok) {
            best = a2;
            best_support = support;
        }
    }
    if (!best) throw CoordinateError("no principal a-vector found for " + t.edges[alpha].id);
    return make_curve(t, std::move(want), std::move(*best));
}

/// L^±_T: one curve per unfrozen arc with x(L_{alpha,±}) = ∓e_alpha,
/// labeled by the arc index.
inline MultiLamination principal_lamination(const Triangulation& t, int sign) {
    MultiLamination L;
    for (int al : t.unfrozen_edges()) L.entries.push_back({al, principal_curve(t, al, sign)});
    return L;
}

} // namespace qcluster
