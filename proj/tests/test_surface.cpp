#include <catch2/catch_amalgamated.hpp>

#include "qcluster/surface.hpp"

using namespace qcluster;

namespace {

// Sigma eps pi = 4 delta on unfrozen rows.
void check_compat4(const Triangulation& t) {
    IntMat eps = exchange_matrix(t), pi = compatibility_matrix(t);
    IntMat prod = eps * pi;
    for (int a : t.unfrozen_edges())
        for (int g = 0; g < t.edge_count(); ++g) {
            CAPTURE(t.edges[a].id, t.edges[g].id);
            CHECK(prod.at(a, g) == (a == g ? 4 : 0));
        }
}

} // namespace

TEST_CASE("square validates; matrices match the pinned conventions") {
    Triangulation t = make_square();
    REQUIRE_NOTHROW(validate(t));
    int k = t.edge_index("k"), a1 = t.edge_index("a1"), a2 = t.edge_index("a2");
    int b1 = t.edge_index("b1"), b2 = t.edge_index("b2");
    IntMat eps = exchange_matrix(t);
    CHECK(eps.at(k, b1) == 1);
    CHECK(eps.at(k, b2) == 1);
    CHECK(eps.at(k, a1) == -1);
    CHECK(eps.at(k, a2) == -1);
    IntMat pi = compatibility_matrix(t);
    CHECK(pi.at(k, a1) == 1);
    CHECK(pi.at(k, a2) == 1);
    CHECK(pi.at(k, b1) == -1);
    CHECK(pi.at(k, b2) == -1);
    CHECK(pi.at(a1, b1) == 1);
    CHECK(pi.at(a1, a2) == 0); // no shared marked point
    CHECK(pi.at(k, k) == 0);
    check_compat4(t);
}

TEST_CASE("annulus of the walled figure validates") {
    Triangulation t = make_annulus();
    REQUIRE_NOTHROW(validate(t));
    CHECK(t.unfrozen_edges().size() == 4);
    IntMat eps = exchange_matrix(t);
    // 4x8 exchange data, brute-forced from the four triangles
    auto E = [&](const char* a, const char* b) { return eps.at(t.edge_index(a), t.edge_index(b)); };
    CHECK(E("1", "2") == 1);
    CHECK(E("1", "4") == 1);
    CHECK(E("1", "5") == -1);
    CHECK(E("1", "6") == -1);
    CHECK(E("2", "3") == 1);
    CHECK(E("2", "5") == 1);
    CHECK(E("2", "8") == -1);
    CHECK(E("3", "7") == 1);
    CHECK(E("3", "8") == 1);
    CHECK(E("3", "4") == -1);
    CHECK(E("4", "6") == 1);
    CHECK(E("4", "3") == 1);
    CHECK(E("4", "7") == -1);
    CHECK(E("1", "3") == 0);
    CHECK(E("2", "4") == 0);
    check_compat4(t);
}

TEST_CASE("pentagon and hexagon satisfy the compatibility relation") {
    check_compat4(make_pentagon());
    check_compat4(make_hexagon());
}

TEST_CASE("invalid triangulations are rejected with the violated invariant") {
    Triangulation t = make_square();
    t.triangles[0][0] = 99;
    CHECK_THROWS_AS(validate(t), InvalidTriangulation);

    Triangulation t2 = make_square();
    t2.triangles.pop_back();
    CHECK_THROWS_AS(validate(t2), InvalidTriangulation);

    Triangulation t3 = make_square();
    std::swap(t3.end_orders[0][0], t3.end_orders[0][1]);
    CHECK_THROWS_AS(validate(t3), InvalidTriangulation);
}

TEST_CASE("eps/pi are skew-symmetric where they should be") {
    for (const Triangulation& t :
         {make_square(), make_pentagon(), make_hexagon(), make_annulus()}) {
        IntMat eps = exchange_matrix(t), pi = compatibility_matrix(t);
        for (int a : t.unfrozen_edges())
            for (int b : t.unfrozen_edges()) CHECK(eps.at(a, b) == -eps.at(b, a));
        for (int a = 0; a < t.edge_count(); ++a)
            for (int b = 0; b < t.edge_count(); ++b) CHECK(pi.at(a, b) == -pi.at(b, a));
    }
}

TEST_CASE("flip of the square diagonal") {
    Triangulation t = make_square();
    int k = t.edge_index("k");
    auto [t2, quad] = flip(t, k);
    CHECK(t.edges[quad.alpha1].id == "a1");
    CHECK(t.edges[quad.alpha2].id == "a2");
    CHECK(t.edges[quad.beta1].id == "b1");
    CHECK(t.edges[quad.beta2].id == "b2");
    // flipping twice returns an isomorphic triangulation: same matrices
    auto [t3, quad2] = flip(t2, k);
    CHECK(exchange_matrix(t3) == exchange_matrix(t));
    CHECK(compatibility_matrix(t3) == compatibility_matrix(t));
    // the flipped quadrilateral's eps row flips sign
    IntMat e1 = exchange_matrix(t), e2 = exchange_matrix(t2);
    for (int j = 0; j < t.edge_count(); ++j) CHECK(e2.at(k, j) == -e1.at(k, j));
    check_compat4(t2);
}

TEST_CASE("boundary edges are not flippable") {
    Triangulation t = make_square();
    CHECK_THROWS_AS(flip(t, t.edge_index("a1")), NotFlippable);
}

TEST_CASE("annulus flip of edge 2 produces a valid triangulation") {
    Triangulation t = make_annulus();
    auto [t2, quad] = flip(t, t.edge_index("2"));
    REQUIRE_NOTHROW(validate(t2));
    check_compat4(t2);
    // flip is an involution up to relabeling
    auto [t3, quad2] = flip(t2, t.edge_index("2"));
    CHECK(exchange_matrix(t3) == exchange_matrix(t));
    CHECK(compatibility_matrix(t3) == compatibility_matrix(t));
}

TEST_CASE("every interior edge of every builder flips consistently") {
    for (const Triangulation& t :
         {make_square(), make_pentagon(), make_hexagon(), make_annulus()}) {
        for (int k : t.unfrozen_edges()) {
            auto [t2, quad] = flip(t, k);
            check_compat4(t2);
            auto [t3, quad2] = flip(t2, k);
            CHECK(exchange_matrix(t3) == exchange_matrix(t));
            CHECK(compatibility_matrix(t3) == compatibility_matrix(t));
        }
    }
}
