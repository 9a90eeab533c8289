#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qcluster/walls.hpp"

using namespace qcluster;

namespace {

TropMonomial zp(std::int64_t j, std::int64_t k = 1) { return TropMonomial::symbol(Symbol::z_plus(j), k); }
TropMonomial zm(std::int64_t j, std::int64_t k = 1) { return TropMonomial::symbol(Symbol::z_minus(j), k); }

} // namespace

TEST_CASE("principal wall of the square reproduces the intro coefficients") {
    Triangulation t = make_square();
    int k = t.edge_index("k");
    WallSystem w = principal_wall(t);
    CHECK(w.labels() == std::vector<std::int64_t>{k});
    auto p = wall_coeffs(t, w);
    // kappa kappa' = q z_{k,+} a1 a2 + q^{-1} z_{k,-} b1 b2 pins p+ = z-, p- = z+.
    CHECK(p[k].plus == zm(k));
    CHECK(p[k].minus == zp(k));
    CHECK(is_normalized(p));
}

TEST_CASE("principal wall sizes") {
    CHECK(principal_wall(make_square()).walls.size() == 1);
    CHECK(principal_wall(make_annulus()).walls.size() == 4);
    CHECK(principal_wall(make_hexagon()).walls.size() == 3);
    std::vector<std::int64_t> labels = principal_wall(make_annulus()).labels();
    CHECK(labels.size() == 4);
}

TEST_CASE("empty wall system has unit coefficients") {
    Triangulation t = make_annulus();
    WallSystem w;
    auto p = wall_coeffs(t, w);
    for (const auto& [al, pair] : p) {
        CHECK(pair.plus == TropMonomial::one());
        CHECK(pair.minus == TropMonomial::one());
    }
    CHECK(is_normalized(p));
    CHECK(wall_to_multilam(t, w).entries.empty());
    CHECK(lam_to_wall(MultiLamination{}).walls.empty());
}

TEST_CASE("non-normalized wall system on the square") {
    // Two crossing same-label arcs, one parallel to kappa, one to kappa'.
    Triangulation t = make_square();
    int k = t.edge_index("k");
    WallSystem w;
    WallSystem::Wall g1;
    g1.label = 0;
    g1.plus = principal_curve(t, k, +1);
    g1.minus = principal_curve(t, k, -1);
    g1.crossingless_label = false;
    // the kappa'-parallel wall: its push-offs are the two principal curves in
    // the opposite roles
    WallSystem::Wall g2;
    g2.label = 0;
    g2.plus = principal_curve(t, k, -1);
    g2.minus = principal_curve(t, k, +1);
    g2.crossingless_label = false;
    w.walls = {g1, g2};
    auto p = wall_coeffs(t, w);
    CHECK(p[k].plus == zp(0) * zm(0));
    CHECK(p[k].minus == zp(0) * zm(0));
    CHECK_FALSE(is_normalized(p));
    CHECK_THROWS_AS(wall_to_multilam(t, w), WallError);
}

TEST_CASE("wall coefficient mutation satisfies the exchange-pattern rules") {
    std::mt19937_64 rng(101);
    for (const Triangulation& t : {make_square(), make_pentagon(), make_annulus()}) {
        WallSystem w = principal_wall(t);
        auto uf = t.unfrozen_edges();
        std::uniform_int_distribution<std::size_t> pick(0, uf.size() - 1);
        Triangulation cur = t;
        WallSystem curw = w;
        for (int step = 0; step < 6; ++step) {
            int k = uf[pick(rng)];
            auto p = wall_coeffs(cur, curw);
            WallSystem w2 = mutate_walls(cur, curw, k);
            Triangulation t2 = flip(cur, k).first;
            auto p2 = wall_coeffs(t2, w2);
            CHECK(p2[k].plus == p[k].minus);
            CHECK(p2[k].minus == p[k].plus);
            IntMat eps = exchange_matrix(cur);
            for (int al : uf) {
                if (al == k) continue;
                std::int64_t e = eps.at(al, k);
                TropMonomial lhs = p2[al].plus / p2[al].minus;
                TropMonomial rhs = p[al].plus / p[al].minus;
                for (std::int64_t i = 0; i < e; ++i) rhs = rhs * p[k].plus;
                for (std::int64_t i = 0; i < -e; ++i) rhs = rhs / p[k].minus;
                CHECK(lhs == rhs);
            }
            cur = std::move(t2);
            curw = std::move(w2);
        }
    }
}

TEST_CASE("crossingless wall systems have normalized coefficients") {
    std::mt19937_64 rng(55);
    for (const Triangulation& t : {make_square(), make_pentagon(), make_annulus()}) {
        WallSystem w = principal_wall(t);
        CHECK(w.all_crossingless());
        Triangulation cur = t;
        WallSystem curw = w;
        auto uf = t.unfrozen_edges();
        std::uniform_int_distribution<std::size_t> pick(0, uf.size() - 1);
        for (int step = 0; step < 5; ++step) {
            CHECK(is_normalized(wall_coeffs(cur, curw)));
            int k = uf[pick(rng)];
            curw = mutate_walls(cur, curw, k);
            cur = flip(cur, k).first;
        }
    }
}

TEST_CASE("wall_to_multilam on the principal wall is the double principal lamination") {
    for (const Triangulation& t : {make_square(), make_annulus()}) {
        WallSystem w = principal_wall(t);
        MultiLamination L = wall_to_multilam(t, w);
        CHECK(L.entries.size() == 2 * w.walls.size());
        // L_{j,+} curves are the plus principal curves, L_{j,-} the minus ones
        for (const auto& wall : w.walls) {
            bool found_plus = false, found_minus = false;
            for (const auto& e : L.entries) {
                if (e.label == 2 * wall.label && e.curve == wall.plus) found_plus = true;
                if (e.label == 2 * wall.label + 1 && e.curve == *wall.minus) found_minus = true;
            }
            CHECK(found_plus);
            CHECK(found_minus);
        }
        // coefficient dictionary: wall_coeffs under z_{j,±} -> u_{j,±} equals
        // the lamination coefficients of L(W)
        auto pw = wall_coeffs(t, w);
        for (int al : t.unfrozen_edges()) {
            auto [lp, lm] = lam_coeffs_at(t, L, al, upm_symbol);
            std::map<Symbol, TropMonomial> rename;
            for (std::int64_t j : w.labels()) {
                rename[Symbol::z_plus(j)] = TropMonomial::symbol(Symbol::u_plus(j));
                rename[Symbol::z_minus(j)] = TropMonomial::symbol(Symbol::u_minus(j));
            }
            CHECK(trop_apply(pw[al].plus, rename) == lp);
            CHECK(trop_apply(pw[al].minus, rename) == lm);
        }
    }
}

TEST_CASE("loop walls use one curve for both shifts") {
    Triangulation t = make_annulus();
    // the core loop of the annulus: x = (1, 0, -1, 0) with a = 1/2 on arcs 1..4
    std::vector<std::int64_t> x(8, 0), a2(8, 0);
    x[t.edge_index("1")] = 1;
    x[t.edge_index("3")] = -1;
    for (const char* e : {"1", "2", "3", "4"}) a2[t.edge_index(e)] = 1;
    CurveCoords gamma = make_curve(t, x, a2);
    WallSystem w;
    WallSystem::Wall loop;
    loop.label = 9;
    loop.kind = WallSystem::Kind::Loop;
    loop.plus = gamma;
    loop.minus = gamma;
    w.walls = {loop};
    REQUIRE_NOTHROW(check_walls(t, w));
    MultiLamination L = wall_to_multilam(t, w);
    CHECK(L.entries.size() == 2);
    CHECK(L.entries[0].curve == L.entries[1].curve);
    // mismatched loop data is rejected
    WallSystem bad = w;
    bad.walls[0].minus = principal_curve(t, t.edge_index("1"), +1);
    CHECK_THROWS_AS(check_walls(t, bad), WallError);
}

TEST_CASE("lam_to_wall and the z- = 1 coefficient identity") {
    std::mt19937_64 rng(77);
    for (const Triangulation& t : {make_square(), make_annulus()}) {
        MultiLamination L = principal_lamination(t, +1);
        WallSystem w = lam_to_wall(L);
        CHECK(w.walls.size() == L.entries.size());
        // W(L+) = principal wall system at the level of plus coordinates
        WallSystem pw = principal_wall(t);
        for (std::size_t i = 0; i < w.walls.size(); ++i) {
            CHECK(w.walls[i].plus == pw.walls[i].plus);
            CHECK_FALSE(w.walls[i].minus.has_value());
        }
        CHECK_THROWS_AS(wall_coeffs(t, w), WallError);
        // z- = 1 quotient: coefficients agree with lam_coeffs under z+ -> u
        auto pz = wall_coeffs_zminus1(t, w);
        auto pl = lam_coeffs(t, L);
        std::map<Symbol, TropMonomial> rename;
        for (std::int64_t j : w.labels()) rename[Symbol::z_plus(j)] = TropMonomial::symbol(Symbol::u(j));
        for (int al : t.unfrozen_edges()) {
            CHECK(trop_apply(pz[al].plus, rename) == pl[al].plus);
            CHECK(trop_apply(pz[al].minus, rename) == pl[al].minus);
        }
    }
}
