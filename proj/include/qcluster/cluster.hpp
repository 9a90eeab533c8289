#pragma once

#include <variant>

#include "qcluster/walls.hpp"

namespace qcluster {

struct SeedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonNormalizedWithoutGeometry : SeedError {
    using SeedError::SeedError;
};

/// Geometric attachment of a seed: the current triangulation together with
/// the coefficient source living on it, kept in step with mutations so that
/// coefficients can be recomputed after flips.
struct SeedGeometry {
    Triangulation triangulation;
    std::variant<std::monostate, WallSystem, MultiLamination> source;
};

/// Quantum seed with coefficients. Frame elements live in one fixed ambient
/// lattice (the initial one), so every cluster variable is carried as a
/// Laurent element of the initial quantum torus.
struct QuantumSeed {
    std::vector<bool> unfrozen; // index set split (I, I_uf)
    IntMat eps;                 // exchange matrix, frozen rows zero
    IntMat pi;                  // compatibility matrix
    LatticeRef lattice;         // initial (M, Pi)
    std::vector<TorusElem> frame;
    std::map<int, CoeffPair> p; // per unfrozen index
    std::optional<SeedGeometry> geometry;

    int size() const { return static_cast<int>(unfrozen.size()); }

    std::vector<int> unfrozen_indices() const {
        std::vector<int> r;
        for (int i = 0; i < size(); ++i)
            if (unfrozen[i]) r.push_back(i);
        return r;
    }

    bool is_normalized() const {
        for (const auto& [i, pair] : p)
            if (!(trop_add(pair.plus, pair.minus) == TropMonomial::one())) return false;
        return true;
    }
};

/// Seed mutation state: the seed plus the flip history; all frame elements
/// are Laurent elements of the initial torus throughout.
struct MutationState {
    QuantumSeed seed;
    std::vector<int> history;
};

// ---------------------------------------------------------------------------
// Construction

enum class CoeffSource { None, Wall, Lamination };

/// Builds the seed attached to a triangulation: eps and pi from the surface,
/// frame the standard basis monomials (rescaled by u-prefixes for lamination
/// coefficients), p from the chosen source.
inline QuantumSeed seed_from_triangulation(const Triangulation& t) {
    QuantumSeed s;
    const int n = t.edge_count();
    s.unfrozen.resize(n);
    for (int i = 0; i < n; ++i) s.unfrozen[i] = t.is_unfrozen(i);
    s.eps = exchange_matrix(t);
    s.pi = compatibility_matrix(t);
    std::vector<std::vector<std::int64_t>> form(n, std::vector<std::int64_t>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) form[i][j] = s.pi.at(i, j);
    s.lattice = make_lattice(n, std::move(form));
    for (int i = 0; i < n; ++i) s.frame.push_back(frame_basis(s.lattice, i));
    for (int i : s.unfrozen_indices()) s.p[i] = CoeffPair{};
    s.geometry = SeedGeometry{t, std::monostate{}};
    return s;
}

inline QuantumSeed seed_from_triangulation(const Triangulation& t, const WallSystem& w) {
    check_walls(t, w);
    QuantumSeed s = seed_from_triangulation(t);
    s.p = wall_coeffs(t, w);
    s.geometry = SeedGeometry{t, w};
    return s;
}

inline QuantumSeed seed_from_triangulation(const Triangulation& t, const MultiLamination& L) {
    check_multilam(t, L);
    QuantumSeed s = seed_from_triangulation(t);
    s.p = lam_coeffs(t, L);
    for (int i = 0; i < s.size(); ++i)
        s.frame[i] = qt_scale(embed_trop(rescale_prefix(t, L, i)), s.frame[i]);
    s.geometry = SeedGeometry{t, L};
    return s;
}

// ---------------------------------------------------------------------------
// Matrix mutation (Eqs. with the E/F matrices; sign-independent)

struct MatrixPair {
    IntMat eps, pi;

    friend bool operator==(const MatrixPair&, const MatrixPair&) = default;
};

inline MatrixPair mutate_matrices(const IntMat& eps, const IntMat& pi,
                                  const std::vector<bool>& unfrozen, int k, int sign) {
    const int n = eps.rows();
    if (!unfrozen.at(k)) throw SeedError("mutation at a frozen index");
    IntMat E(n, n), F(n, n);
    for (int i = 0; i < n; ++i) {
        E.at(i, i) = 1;
        F.at(i, i) = 1;
    }
    E.at(k, k) = -1;
    F.at(k, k) = -1;
    for (int i = 0; i < n; ++i) {
        if (i == k) continue;
        // e_{ik} = [-sign * eps_{ki}]+ ; f_{kj} = [sign * eps_{jk}]+ (frozen rows of eps are zero)
        E.at(i, k) = std::max<std::int64_t>(0, -sign * eps.at(k, i));
        F.at(k, i) = std::max<std::int64_t>(0, sign * eps.at(i, k));
    }
    MatrixPair out;
    out.eps = F.transpose() * eps * E.transpose();
    out.pi = E.transpose() * pi * E;
    return out;
}

// ---------------------------------------------------------------------------
// Frame monomials through the current frame

/// A(v) = q^{1/2 sum_{l<k} v_k v_l pi_{kl}} A_1^{v_1} ... A_N^{v_N}, evaluated
/// with the seed's current frame elements inside the initial torus. Negative
/// powers require the corresponding frame element to be a single term.
inline TorusElem frame_eval(const QuantumSeed& s, const std::vector<std::int64_t>& v) {
    const int n = s.size();
    std::int64_t tw = 0; // doubled q exponent
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < k; ++l) tw += v[k] * v[l] * s.pi.at(k, l);
    TorusElem acc = TorusElem::scalar(s.lattice, LaurentElem::q_half(tw));
    for (int i = 0; i < n; ++i) {
        std::int64_t e = v[i];
        if (e == 0) continue;
        if (e > 0) {
            for (std::int64_t r = 0; r < e; ++r) acc = qt_mul(acc, s.frame[i]);
        } else {
            const TorusElem& A = s.frame[i];
            if (!A.is_single_term())
                throw SeedError("negative power of a non-monomial frame element");
            for (std::int64_t r = 0; r < -e; ++r) acc = divide_exact(acc, A, QuotientSide::Left);
        }
    }
    return acc;
}

/// Right-hand side of the quantum exchange relation at k: the element equal
/// to A_k A'_k, evaluated through the current frame into the initial torus.
inline TorusElem exchange_rhs(const QuantumSeed& s, int k) {
    if (!s.unfrozen.at(k)) throw SeedError("exchange at a frozen index");
    const int n = s.size();
    std::vector<std::int64_t> vplus(n, 0), vminus(n, 0);
    std::int64_t twp = 0, twm = 0;
    for (int j = 0; j < n; ++j) {
        std::int64_t e = s.eps.at(k, j);
        if (e > 0) {
            vplus[j] = e;
            twp += e * s.pi.at(k, j);
        }
        if (e < 0) {
            vminus[j] = -e;
            twm += -e * s.pi.at(k, j);
        }
    }
    const CoeffPair& pk = s.p.at(k);
    TorusElem lhs = qt_scale(embed_trop(pk.plus) * LaurentElem::q_half(twp), frame_eval(s, vplus));
    TorusElem rhs = qt_scale(embed_trop(pk.minus) * LaurentElem::q_half(twm), frame_eval(s, vminus));
    return qt_add(lhs, rhs);
}

/// hat-y variable: (p+/p-) A(sum_b eps_{ab} f_b).
inline TorusElem yhat(const QuantumSeed& s, int alpha) {
    if (!s.unfrozen.at(alpha)) throw SeedError("yhat at a frozen index");
    std::vector<std::int64_t> v(s.size(), 0);
    for (int j = 0; j < s.size(); ++j) v[j] = s.eps.at(alpha, j);
    const CoeffPair& pa = s.p.at(alpha);
    LaurentElem ratio = embed_trop(pa.plus / pa.minus);
    return qt_scale(ratio, frame_eval(s, v));
}

/// Empty iff sum_b eps_{ab} pi_{bg} = d_a delta_{ag} with a positive d per
/// unfrozen index; violations are reported as (alpha, gamma) pairs.
inline std::vector<std::pair<int, int>> check_compatibility(const QuantumSeed& s) {
    std::vector<std::pair<int, int>> bad;
    IntMat prod = s.eps * s.pi;
    for (int a : s.unfrozen_indices()) {
        if (prod.at(a, a) <= 0) bad.push_back({a, a});
        for (int g = 0; g < s.size(); ++g)
            if (g != a && prod.at(a, g) != 0) bad.push_back({a, g});
    }
    return bad;
}

// ---------------------------------------------------------------------------
// Seed mutation

namespace cluster_detail {

inline CoeffPair normalize_ratio(const TropMonomial& ratio) {
    // p'+ = r / (r ⊕ 1), p'- = 1 / (r ⊕ 1)
    TropMonomial denom = trop_add(ratio, TropMonomial::one());
    return {ratio / denom, denom.inverse()};
}

inline std::map<int, CoeffPair> mutate_coeffs_normalized(const QuantumSeed& s, int k) {
    std::map<int, CoeffPair> out;
    const CoeffPair& pk = s.p.at(k);
    for (const auto& [i, pi_pair] : s.p) {
        if (i == k) {
            out[i] = {pk.minus, pk.plus};
            continue;
        }
        TropMonomial ratio = pi_pair.plus / pi_pair.minus;
        std::int64_t e = s.eps.at(i, k);
        for (std::int64_t r = 0; r < e; ++r) ratio = ratio * pk.plus;
        for (std::int64_t r = 0; r < -e; ++r) ratio = ratio / pk.minus;
        out[i] = normalize_ratio(ratio);
    }
    return out;
}

} // namespace cluster_detail

/// One seed mutation: A'_k is the exact quotient of the exchange relation by
/// A_k inside the initial torus (a Laurent-phenomenon assertion at runtime);
/// (eps, pi) mutate by the matrix rule, coefficients are recomputed from the
/// geometry when present, else by tropical normalization.
inline MutationState mutate_seed(const MutationState& st, int k, int sign = +1) {
    const QuantumSeed& s = st.seed;
    if (!s.unfrozen.at(k)) throw SeedError("mutation at a frozen index");

    TorusElem rhs = exchange_rhs(s, k);
    // A_k · A'_k = rhs, so A'_k solves den·c = num.
    TorusElem new_var = divide_exact(rhs, s.frame[k], QuotientSide::Right);

    QuantumSeed out = s;
    out.frame[k] = std::move(new_var);
    MatrixPair mm = mutate_matrices(s.eps, s.pi, s.unfrozen, k, sign);
    out.eps = std::move(mm.eps);
    out.pi = std::move(mm.pi);

    bool have_geometry = false;
    if (s.geometry) {
        const SeedGeometry& g = *s.geometry;
        if (std::holds_alternative<WallSystem>(g.source)) {
            WallSystem w2 = mutate_walls(g.triangulation, std::get<WallSystem>(g.source), k);
            Triangulation t2 = flip(g.triangulation, k).first;
            out.p = wall_coeffs(t2, w2);
            out.geometry = SeedGeometry{std::move(t2), std::move(w2)};
            have_geometry = true;
        } else if (std::holds_alternative<MultiLamination>(g.source)) {
            MultiLamination L2 = mutate_multilam(g.triangulation, std::get<MultiLamination>(g.source), k);
            Triangulation t2 = flip(g.triangulation, k).first;
            out.p = lam_coeffs(t2, L2);
            out.geometry = SeedGeometry{std::move(t2), std::move(L2)};
            have_geometry = true;
        } else {
            // coefficient-free: keep the triangulation in step
            Triangulation t2 = flip(g.triangulation, k).first;
            out.geometry = SeedGeometry{std::move(t2), std::monostate{}};
            have_geometry = true; // all-ones coefficients mutate to all ones
            out.p = cluster_detail::mutate_coeffs_normalized(s, k);
        }
    }
    if (!have_geometry) {
        if (!s.is_normalized())
            throw NonNormalizedWithoutGeometry(
                "coefficient mutation of a non-normalized seed needs a geometric attachment");
        out.p = cluster_detail::mutate_coeffs_normalized(s, k);
    }

    MutationState ns{std::move(out), st.history};
    ns.history.push_back(k);
    return ns;
}

/// Runs the flip sequence and returns the target variable's Laurent
/// expression in the initial quantum torus.
inline TorusElem expand_along(const QuantumSeed& seed, const std::vector<int>& flips, int target) {
    MutationState st{seed, {}};
    for (int k : flips) st = mutate_seed(st, k);
    return st.seed.frame.at(target);
}

} // namespace qcluster
