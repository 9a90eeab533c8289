#pragma once

#include <set>

#include "qcluster/cluster.hpp"

namespace qcluster {

/// Multiplicative coefficient map: source symbols to target tropical
/// monomials, q fixed. Extends to Laurent elements and torus elements.
/// Substitution is simultaneous, so source and target symbol sets may
/// overlap (the identity assignment is legal).
struct CoeffHom {
    std::map<Symbol, TropMonomial> assignment;

    LaurentElem apply(const LaurentElem& e) const {
        LaurentElem out;
        for (const auto& [mono, c] : e.terms()) {
            SymMonomial img;
            for (const auto& [s, e2] : mono.entries()) {
                auto it = assignment.find(s);
                if (it == assignment.end()) {
                    img.mul_in(s, e2);
                } else {
                    for (const auto& [ts, te] : it->second.monomial().entries()) {
                        if ((te * e2) % 2 != 0)
                            throw SymbolError("quarter power in coefficient map");
                        img.mul_in(ts, te * e2 / 2);
                    }
                }
            }
            out.add_term(std::move(img), c);
        }
        return out;
    }

    TorusElem apply(const TorusElem& e) const {
        return map_coefficients(e, [&](const LaurentElem& c) { return this->apply(c); });
    }

    TropMonomial apply(const TropMonomial& m) const { return trop_apply(m, assignment); }
};

/// The ring homomorphism psi of the principal specialization: for each
/// unfrozen arc alpha (with principal-wall labels = arc indices),
/// psi(z_{alpha,±}) = prod over walls xi of
/// z_{l(xi),+}^{[∓ x_alpha(gamma_{xi,+})]+} z_{l(xi),-}^{[∓ x_alpha(gamma_{xi,-})]+}.
inline CoeffHom principal_specialization(const Triangulation& t, const WallSystem& w) {
    for (const auto& wall : w.walls)
        if (!wall.minus) throw WallError("wall without minus coordinates");
    CoeffHom hom;
    for (int al : t.unfrozen_edges()) {
        TropMonomial img_plus, img_minus; // images of z_{alpha,+} and z_{alpha,-}
        for (const auto& wall : w.walls) {
            std::int64_t xp = wall.plus.x[al], xm = wall.minus->x[al];
            if (-xp > 0) img_plus.mul_in(Symbol::z_plus(wall.label), -2 * xp);
            if (-xm > 0) img_plus.mul_in(Symbol::z_minus(wall.label), -2 * xm);
            if (xp > 0) img_minus.mul_in(Symbol::z_plus(wall.label), 2 * xp);
            if (xm > 0) img_minus.mul_in(Symbol::z_minus(wall.label), 2 * xm);
        }
        hom.assignment[Symbol::z_plus(al)] = img_plus;
        hom.assignment[Symbol::z_minus(al)] = img_minus;
    }
    return hom;
}

/// Outcome of a quasi-homomorphism check: proportionality of the variable
/// images with the supplied rescaling monomials, and exact preservation of
/// the hat-y elements.
struct QuasiReport {
    bool ok = true;
    std::vector<std::string> failures;
    std::map<int, std::int64_t> q_powers; // doubled exponent l per index

    void fail(std::string msg) {
        ok = false;
        failures.push_back(std::move(msg));
    }
};

namespace quasi_detail {

// lhs == q^{l/2} rhs for some integer l? Returns l (doubled exponent).
inline std::optional<std::int64_t> q_proportional(const TorusElem& lhs, const TorusElem& rhs) {
    if (lhs.is_zero() && rhs.is_zero()) return 0;
    if (lhs.is_zero() || rhs.is_zero() || lhs.size() != rhs.size()) return std::nullopt;
    const auto& lt = *lhs.terms().begin();
    const auto& rt = *rhs.terms().begin();
    if (lt.first != rt.first) return std::nullopt;
    std::int64_t l = lt.second.terms().begin()->first.exponent2(Symbol::q()) -
                     rt.second.terms().begin()->first.exponent2(Symbol::q());
    if (lhs == qt_scale(LaurentElem::q_half(l), rhs)) return l;
    return std::nullopt;
}

} // namespace quasi_detail

/// Verifies the two quasi-homomorphism axioms between seeds sharing the index
/// data and matrices: (i) Psi(A_i) = q^{l/2} M_i Abar_i with the supplied
/// monomials M_i, (ii) Psi(yhat_i) = yhatbar_i exactly.
inline QuasiReport check_quasi(const QuantumSeed& source, const QuantumSeed& target,
                               const CoeffHom& psi,
                               const std::map<int, TropMonomial>& rescale) {
    QuasiReport rep;
    if (source.size() != target.size() || source.unfrozen != target.unfrozen) {
        rep.fail("index sets differ");
        return rep;
    }
    if (!(source.eps == target.eps) || !(source.pi == target.pi)) {
        rep.fail("exchange/compatibility matrices differ");
        return rep;
    }
    for (int i = 0; i < source.size(); ++i) {
        TorusElem lhs = psi.apply(source.frame[i]);
        TropMonomial m = rescale.count(i) ? rescale.at(i) : TropMonomial::one();
        TorusElem rhs = qt_scale(embed_trop(m), target.frame[i]);
        auto l = quasi_detail::q_proportional(lhs, rhs);
        if (!l) {
            rep.fail("variable image at index " + std::to_string(i) +
                     " is not proportional with the supplied monomial");
        } else {
            rep.q_powers[i] = *l;
        }
    }
    // yhat preservation, checked division-free: with v± = [± eps row]+ and
    // r = p+/p-, the identity Psi(yhat) = yhatbar amounts to
    //   psi(r)·Psi(A(v+)) = q^{l/2} rbar·Abar(v+) and Psi(A(v-)) = q^{l/2} Abar(v-)
    // with one common q-power l (A(v±) are genuine torus elements, yhat may
    // not be once frames stop being monomials).
    for (int i : source.unfrozen_indices()) {
        const int n = source.size();
        std::vector<std::int64_t> vplus(n, 0), vminus(n, 0);
        for (int j = 0; j < n; ++j) {
            std::int64_t e = source.eps.at(i, j);
            if (e > 0) vplus[j] = e;
            if (e < 0) vminus[j] = -e;
        }
        const CoeffPair& ps = source.p.at(i);
        const CoeffPair& pt = target.p.at(i);
        TorusElem lhs_num =
            qt_scale(embed_trop(psi.apply(ps.plus / ps.minus)), psi.apply(frame_eval(source, vplus)));
        TorusElem rhs_num = qt_scale(embed_trop(pt.plus / pt.minus), frame_eval(target, vplus));
        TorusElem lhs_den = psi.apply(frame_eval(source, vminus));
        TorusElem rhs_den = frame_eval(target, vminus);
        auto lnum = quasi_detail::q_proportional(lhs_num, rhs_num);
        auto lden = quasi_detail::q_proportional(lhs_den, rhs_den);
        if (!lnum || !lden || *lnum != *lden)
            rep.fail("yhat not preserved at index " + std::to_string(i));
    }
    return rep;
}

namespace quasi_detail {

inline std::set<Symbol> z_minus_symbols(const LaurentElem& e) {
    std::set<Symbol> out;
    for (const auto& [m, c] : e.terms())
        for (const auto& [s, ex] : m.entries())
            if (s.kind == Symbol::Kind::ZMinus) out.insert(s);
    return out;
}

} // namespace quasi_detail

/// z_{j,-} -> 1 throughout a Laurent element.
inline LaurentElem specialize_minus(const LaurentElem& e) {
    std::map<Symbol, LaurentElem> table;
    for (Symbol s : quasi_detail::z_minus_symbols(e)) table[s] = LaurentElem::one();
    return specialize(e, table);
}

inline TorusElem specialize_minus(const TorusElem& e) {
    return map_coefficients(e, [](const LaurentElem& c) { return specialize_minus(c); });
}

inline TropMonomial specialize_minus(const TropMonomial& m) {
    TropMonomial out;
    for (const auto& [s, e2] : m.monomial().entries())
        if (s.kind != Symbol::Kind::ZMinus) out.mul_in(s, e2);
    return out;
}

/// z_{j,-} -> 1 on every coefficient carrier of a seed.
inline QuantumSeed specialize_minus(const QuantumSeed& s) {
    QuantumSeed out = s;
    for (auto& f : out.frame) f = specialize_minus(f);
    for (auto& [i, pair] : out.p) {
        pair.plus = specialize_minus(pair.plus);
        pair.minus = specialize_minus(pair.minus);
    }
    return out;
}

/// Membership of structure constants in the positive cone Z^+_{q,W}.
inline bool positivity_check(const std::vector<LaurentElem>& structure_constants) {
    for (const auto& c : structure_constants)
        if (!c.is_nonnegative()) return false;
    return true;
}

} // namespace qcluster
