#include <doctest.h>

#include "qhyp5/fibers.hpp"

using namespace qhyp5;

TEST_CASE("classify_e table") {
    CHECK(classify_e(1).label() == "C(1,0)");
    CHECK(classify_e(2).label() == "C(5,1)");
    CHECK(classify_e(3).label() == "C(9,2)");
    CHECK(classify_e(4).label() == "C(3,3)");
    CHECK(classify_e(6).label() == "C(11,5)");
    CHECK(classify_e(7).label() == "C(4,6)");
    CHECK(classify_e(8).label() == "C(9,7)");
    CHECK(classify_e(9).label() == "C(13,8)");
    CHECK_THROWS_AS(classify_e(5), InputError);
    CHECK_THROWS_AS(classify_e(0), InputError);
    CHECK_THROWS_AS(classify_e(10), InputError);
}

TEST_CASE("euler numbers and Namikawa-Ueno labels") {
    const std::map<int, int> euler{{1, 2}, {2, 6}, {3, 10}, {4, 4}, {6, 12}, {7, 5}, {8, 10}, {9, 14}};
    for (const auto& [e, ev] : euler) CHECK(classify_e(e).euler() == ev);
    CHECK(classify_e(1).nu_label() == "VIII-1");
    CHECK(classify_e(2).nu_label() == "IX-1");
    CHECK(classify_e(9).nu_label() == "VIII-4");
}

TEST_CASE("templates satisfy the fiber-numeric invariants") {
    for (FiberKind k : all_fiber_kinds()) {
        FiberType ft{k};
        CAPTURE(ft.label());
        DualGraph g = fiber_template(ft);
        CHECK(static_cast<int>(g.components.size()) == ft.component_count());
        g.validate();  // throws on F.R != 0, F^2 != 0, identity problems
        CHECK(g.euler() == ft.euler());
        // The moving cusp meets every fiber with total multiplicity 5.
        long long gdot = 0;
        for (const auto& [id, w] : g.gamma_incidence)
            for (const auto& c : g.components)
                if (c.id == id) gdot += static_cast<long long>(w) * c.mult;
        CHECK(gdot == 5);
    }
}

TEST_CASE("distinguished template shapes") {
    DualGraph c33 = fiber_template(classify_e(4));
    REQUIRE(c33.components.size() == 3);
    CHECK(c33.components[0].is_identity);
    CHECK(c33.components[0].self_int == -2);
    CHECK(c33.components[1].self_int == -3);
    CHECK(c33.weight(1, 2) == 2);  // tangency
    CHECK(c33.weight(0, 1) == 1);
    CHECK(c33.weight(0, 2) == 1);

    DualGraph c10 = fiber_template(classify_e(1));
    REQUIRE(c10.components.size() == 1);
    CHECK(c10.components[0].self_int == 0);

    DualGraph c51 = fiber_template(classify_e(2));
    REQUIRE(c51.components.size() == 5);
    CHECK(c51.components[0].self_int == -4);
    int mult2 = 0;
    for (const auto& c : c51.components) mult2 += c.mult == 2;
    CHECK(mult2 == 2);
}

TEST_CASE("infinity table matches the closed form") {
    for (long long d = 1; d <= 59; ++d) {
        if (d % kChar == 0) continue;
        CHECK(infinity_type(d).kind == classify_e(static_cast<int>(10 - d % 10)).kind);
    }
    CHECK(infinity_type(1).label() == "C(13,8)");
    CHECK(infinity_type(9).label() == "C(1,0)");
    CHECK(infinity_type(16).label() == "C(3,3)");
    CHECK_THROWS_AS(infinity_type(10), InputError);
    CHECK_THROWS_AS(infinity_type(15), InputError);
}

TEST_CASE("census of named equations") {
    auto eq = normalize(Poly::parse("t^6+t^4", 1));
    FiberCensus c = census(eq);
    CHECK(c.n(FiberKind::C33) == 1);
    CHECK(c.n(FiberKind::C51) == 2);
    CHECK(c.infinity == FiberKind::C33);
    CHECK(c.N(FiberKind::C33) == 2);
    CHECK(c.N(FiberKind::C51) == 2);
    CHECK(c.str() == "C(5,1) x 2, C(3,3) x 2");

    auto eq3 = normalize(Poly::parse("t^3", 1));
    FiberCensus c3 = census(eq3);
    CHECK(c3.n(FiberKind::C92) == 1);
    CHECK(c3.infinity == FiberKind::C46);

    auto eq10 = normalize(Poly::parse("t^13+t^12+4*t^8+4*t^7", 1));
    FiberCensus c10 = census(eq10);
    CHECK(c10.n(FiberKind::C46) == 2);
    CHECK(c10.infinity == FiberKind::C46);
    CHECK(c10.N(FiberKind::C46) == 3);
}

TEST_CASE("DOT output basics") {
    std::string dot = fiber_template(classify_e(4)).dot("C(3,3)");
    CHECK(dot.find("graph") == 0);
    CHECK(dot.find("doublecircle") != std::string::npos);
    bool has_edge = dot.find("R0 -- R1") != std::string::npos || dot.find("R1 -- R0") != std::string::npos;
    CHECK(has_edge);
    CHECK(dot.find("Gamma") != std::string::npos);
    CHECK(dot.back() == '\n');
}

TEST_CASE("isomorphism distinguishes the templates") {
    for (FiberKind a : all_fiber_kinds())
        for (FiberKind b : all_fiber_kinds()) {
            if (FiberType{a}.component_count() != FiberType{b}.component_count()) continue;
            CAPTURE(FiberType{a}.label());
            CAPTURE(FiberType{b}.label());
            CHECK(isomorphic(fiber_template(FiberType{a}), fiber_template(FiberType{b})) == (a == b));
        }
}
