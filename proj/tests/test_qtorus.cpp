#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qcluster/qtorus.hpp"

using namespace qcluster;

namespace {

LatticeRef rank2(std::int64_t pi12) {
    return make_lattice(2, {{0, pi12}, {-pi12, 0}});
}

TorusElem random_elem(const LatticeRef& L, std::mt19937_64& rng, int max_terms = 3) {
    std::uniform_int_distribution<int> nterms(1, max_terms), ex(-2, 2), qe(-2, 2), c(1, 3);
    TorusElem r(L);
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        std::vector<std::int64_t> lam(L->rank());
        for (auto& x : lam) x = ex(rng);
        r.add_term(lam, LaurentElem(c(rng)) * LaurentElem::q_half(qe(rng)));
    }
    return r;
}

} // namespace

TEST_CASE("frame monomials") {
    auto L = rank2(1);
    CHECK(frame_monomial(L, {0, 0}) == TorusElem::unit(L));
    CHECK(frame_monomial(L, {1, 0}) == frame_basis(L, 0));
    // B_{e1}·B_{e2} = q^{1/2} B_{e1+e2}, so frame_monomial(e1+e2) = q^{-1/2} B_{e1} B_{e2}
    TorusElem lhs = qt_scale(LaurentElem::q_half(-1), qt_mul(frame_basis(L, 0), frame_basis(L, 1)));
    CHECK(frame_monomial(L, {1, 1}) == lhs);
}

TEST_CASE("qt_mul basics") {
    auto L = rank2(4);
    TorusElem b1 = frame_basis(L, 0), b2 = frame_basis(L, 1);
    // d = 4: B_{e1}B_{e2} = q^2 B_{e1+e2}; opposite order picks q^{-2}
    CHECK(qt_mul(b1, b2) == TorusElem::with_term(L, {1, 1}, LaurentElem::q_half(4)));
    CHECK(qt_mul(b2, b1) == TorusElem::with_term(L, {1, 1}, LaurentElem::q_half(-4)));
    // B_λ·B_{-λ} = 1 by skew-symmetry
    TorusElem bl = frame_monomial(L, {2, -3}), blinv = frame_monomial(L, {-2, 3});
    CHECK(qt_mul(bl, blinv) == TorusElem::unit(L));
    // (B_{e1}+B_{e2})·B_0 = B_{e1}+B_{e2}
    CHECK(qt_mul(qt_add(b1, b2), TorusElem::unit(L)) == qt_add(b1, b2));
}

TEST_CASE("qt_add basics") {
    auto L = rank2(1);
    TorusElem b = frame_monomial(L, {1, 2});
    CHECK(qt_add(b, qt_scale(LaurentElem(-1), b)).is_zero());
    CHECK(qt_add(b, frame_basis(L, 0)).size() == 2);
    TorusElem s = qt_add(qt_scale(LaurentElem::q_half(2), b), qt_scale(LaurentElem::q_half(-2), b));
    CHECK(s == qt_scale(LaurentElem::q_half(2) + LaurentElem::q_half(-2), b));
}

TEST_CASE("lattice mismatch is an error") {
    auto L1 = rank2(1), L2 = rank2(2);
    CHECK_THROWS_AS(qt_mul(frame_basis(L1, 0), frame_basis(L2, 0)), LatticeError);
}

TEST_CASE("associativity of qt_mul on random triples") {
    auto L = make_lattice(4, {{0, 1, -2, 0}, {-1, 0, 3, 1}, {2, -3, 0, -1}, {0, -1, 1, 0}});
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        TorusElem a = random_elem(L, rng), b = random_elem(L, rng), c = random_elem(L, rng);
        CHECK(qt_mul(a, qt_mul(b, c)) == qt_mul(qt_mul(a, b), c));
    }
}

TEST_CASE("frame multiplicativity: B_x B_y = q^{(x,y)/2} B_{x+y}") {
    auto L = rank2(3);
    for (std::int64_t x1 = -2; x1 <= 2; ++x1)
        for (std::int64_t x2 = -2; x2 <= 2; ++x2)
            for (std::int64_t y1 = -2; y1 <= 2; ++y1)
                for (std::int64_t y2 = -2; y2 <= 2; ++y2) {
                    std::vector<std::int64_t> x{x1, x2}, y{y1, y2}, s{x1 + y1, x2 + y2};
                    TorusElem lhs = qt_mul(frame_monomial(L, x), frame_monomial(L, y));
                    TorusElem rhs =
                        qt_scale(LaurentElem::q_half(L->form(x, y)), frame_monomial(L, s));
                    CHECK(lhs == rhs);
                }
}

TEST_CASE("divide_exact: monomial division") {
    auto L = rank2(1); // pi_12 = 1
    TorusElem num = qt_scale(LaurentElem::q_half(1), frame_monomial(L, {1, 1}));
    TorusElem q = divide_exact(num, frame_basis(L, 1));
    // (q^{1/2} B_{e1+e2}) / B_{e2} = q^{1/2 - pi12/2} B_{e1}
    CHECK(q == qt_scale(LaurentElem::q_half(0), frame_basis(L, 0)));
    CHECK(qt_mul(q, frame_basis(L, 1)) == num);
}

TEST_CASE("divide_exact round-trips random products") {
    auto L = make_lattice(3, {{0, 2, -1}, {-2, 0, 1}, {1, -1, 0}});
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        TorusElem f = random_elem(L, rng), g = random_elem(L, rng);
        TorusElem prod = qt_mul(f, g);
        CHECK(divide_exact(prod, g, QuotientSide::Left) == f);
        CHECK(divide_exact(prod, f, QuotientSide::Right) == g);
    }
}

TEST_CASE("divide_exact reports non-divisibility") {
    auto L = rank2(1);
    // A unit cannot factor through a two-term divisor in a graded domain.
    TorusElem num = TorusElem::unit(L);
    TorusElem den = qt_add(frame_basis(L, 0), frame_basis(L, 1));
    CHECK_THROWS_AS(divide_exact(num, den), NotDivisible);
}

TEST_CASE("torus is a domain (spot check)") {
    auto L = rank2(2);
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        TorusElem a = random_elem(L, rng), b = random_elem(L, rng);
        if (!a.is_zero() && !b.is_zero()) CHECK_FALSE(qt_mul(a, b).is_zero());
    }
}
