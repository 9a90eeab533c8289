#pragma once

#include "qcluster/lamination.hpp"

namespace qcluster {

struct WallError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Wall systems as labeled families of coordinate-represented curves: each
/// arc wall carries the pair (γ₊, γ₋) of shifted curves, a loop wall one
/// curve used for both. Minus coordinates may be absent (laminations turned
/// into walls only live in the z₋ = 1 quotient).
struct WallSystem {
    enum class Kind { Arc, Loop };

    struct Wall {
        std::int64_t label = 0;
        Kind kind = Kind::Arc;
        CurveCoords plus;
        std::optional<CurveCoords> minus;
        bool crossingless_label = true; // caller-asserted geometric fact
    };

    std::vector<Wall> walls;

    std::vector<std::int64_t> labels() const {
        std::vector<std::int64_t> r;
        for (const auto& w : walls)
            if (std::find(r.begin(), r.end(), w.label) == r.end()) r.push_back(w.label);
        return r;
    }

    bool all_crossingless() const {
        for (const auto& w : walls)
            if (!w.crossingless_label) return false;
        return true;
    }
};

inline void check_walls(const Triangulation& t, const WallSystem& w) {
    if (w.walls.empty()) return;
    for (const auto& wall : w.walls) {
        check_curve(t, wall.plus);
        if (wall.minus) check_curve(t, *wall.minus);
        if (wall.kind == WallSystem::Kind::Loop) {
            if (!wall.minus || !(*wall.minus == wall.plus))
                throw WallError("loop wall must have plus = minus");
        }
    }
}

inline WallSystem mutate_walls(const Triangulation& t, const WallSystem& w, int kappa) {
    WallSystem out = w;
    for (auto& wall : out.walls) {
        wall.plus = shear_mutate(t, wall.plus, kappa);
        if (wall.minus) wall.minus = shear_mutate(t, *wall.minus, kappa);
    }
    return out;
}

/// p^{±}_{W;alpha} = prod over walls of z_{j,+}^{[± x_alpha(γ₊)]+}
/// z_{j,-}^{[± x_alpha(γ₋)]+}. Requires minus coordinates present.
inline std::map<int, CoeffPair> wall_coeffs(const Triangulation& t, const WallSystem& w) {
    for (const auto& wall : w.walls)
        if (!wall.minus)
            throw WallError("wall without minus coordinates; specialize z- = 1 first");
    std::map<int, CoeffPair> out;
    for (int al : t.unfrozen_edges()) {
        TropMonomial plus, minus;
        for (const auto& wall : w.walls) {
            std::int64_t xp = wall.plus.x[al], xm = wall.minus->x[al];
            if (xp > 0) plus.mul_in(Symbol::z_plus(wall.label), 2 * xp);
            if (xp < 0) minus.mul_in(Symbol::z_plus(wall.label), -2 * xp);
            if (xm > 0) plus.mul_in(Symbol::z_minus(wall.label), 2 * xm);
            if (xm < 0) minus.mul_in(Symbol::z_minus(wall.label), -2 * xm);
        }
        out[al] = {plus, minus};
    }
    return out;
}

/// The z₋ = 1 quotient of wall_coeffs: only the plus curves contribute, with
/// z_{j,+} variables. Well-defined even when minus coordinates are absent.
inline std::map<int, CoeffPair> wall_coeffs_zminus1(const Triangulation& t, const WallSystem& w) {
    std::map<int, CoeffPair> out;
    for (int al : t.unfrozen_edges()) {
        TropMonomial plus, minus;
        for (const auto& wall : w.walls) {
            std::int64_t xp = wall.plus.x[al];
            if (xp > 0) plus.mul_in(Symbol::z_plus(wall.label), 2 * xp);
            if (xp < 0) minus.mul_in(Symbol::z_plus(wall.label), -2 * xp);
        }
        out[al] = {plus, minus};
    }
    return out;
}

/// Normalization test: p⁺ ⊕ p⁻ = 1 for every unfrozen index.
inline bool is_normalized(const std::map<int, CoeffPair>& p) {
    for (const auto& [al, pair] : p)
        if (!(trop_add(pair.plus, pair.minus) == TropMonomial::one())) return false;
    return true;
}

/// The multi-lamination L(W) over J × {+,-}: L_{j,+} collects the plus
/// curves with label j, L_{j,-} the minus curves; z_{j,±} ↦ u_{j,±}.
/// Only valid when every label family is crossingless (an input flag).
inline MultiLamination wall_to_multilam(const Triangulation&, const WallSystem& w) {
    for (const auto& wall : w.walls)
        if (!wall.crossingless_label)
            throw WallError("wall label not flagged crossingless; L(W) undefined");
    MultiLamination out;
    for (const auto& wall : w.walls) {
        if (!wall.minus) throw WallError("wall without minus coordinates");
        // labels in J × {+,-} are realized as u_{j,±}; the MultiLamination
        // stores them as composite integer labels 2j / 2j+1 resolved by the
        // caller-side symbol map below.
        out.entries.push_back({2 * wall.label, wall.plus});
        out.entries.push_back({2 * wall.label + 1, *wall.minus});
    }
    return out;
}

/// Symbol dictionary for laminations produced by wall_to_multilam.
inline Symbol upm_symbol(std::int64_t composite_label) {
    std::int64_t j = composite_label / 2;
    return composite_label % 2 == 0 ? Symbol::u_plus(j) : Symbol::u_minus(j);
}

/// W(L): one arc wall per curve, with plus coordinates the curve itself and
/// minus absent (the paper only uses W(L) inside the z₋ = 1 quotient).
inline WallSystem lam_to_wall(const MultiLamination& L) {
    WallSystem w;
    for (const auto& e : L.entries) {
        WallSystem::Wall wall;
        wall.label = e.label;
        wall.kind = WallSystem::Kind::Arc;
        wall.plus = e.curve;
        wall.minus = std::nullopt;
        w.walls.push_back(wall);
    }
    return w;
}

/// Principal wall system: one arc wall parallel to each unfrozen arc, labeled
/// by the arc index; plus/minus coordinates are the principal curves.
inline WallSystem principal_wall(const Triangulation& t) {
    WallSystem w;
    for (int al : t.unfrozen_edges()) {
        WallSystem::Wall wall;
        wall.label = al;
        wall.kind = WallSystem::Kind::Arc;
        wall.plus = principal_curve(t, al, +1);
        wall.minus = principal_curve(t, al, -1);
        w.walls.push_back(wall);
    }
    return w;
}

} // namespace qcluster
