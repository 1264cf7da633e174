#include <doctest.h>

#include <set>

#include "qhyp5/rational.hpp"

using namespace qhyp5;

TEST_CASE("candidate enumeration gives the eleven combos") {
    auto combos = enumerate_candidates();
    REQUIRE(combos.size() == 11);
    int unrealizable = 0;
    for (const auto& c : combos) {
        CHECK(c.m <= 1);
        // re-check the two Diophantine equations
        long long lhs = 0, genus = 0;
        for (const auto& [k, n] : c.counts) {
            FiberType ft{k};
            lhs += static_cast<long long>(n) * (ft.e_value() - 1);
            switch (k) {
                case FiberKind::C33:
                case FiberKind::C115: genus += n; break;
                case FiberKind::C46:
                case FiberKind::C97:
                case FiberKind::C138: genus += 2 * n; break;
                default: break;
            }
        }
        CHECK(lhs == 10 * c.m + 8);
        CHECK(genus == 4 * c.m + 2);
        if (!c.realizable) {
            ++unrealizable;
            CHECK(c.roman == "(vi)");
            CHECK(c.counts.at(FiberKind::C33) == 2);
            CHECK(c.counts.at(FiberKind::C92) == 1);
        } else {
            REQUIRE(c.table3_row.has_value());
        }
    }
    CHECK(unrealizable == 1);
}

TEST_CASE("classify_rational matches every known Table 3 equation") {
    for (const auto& row : table3()) {
        if (row.equation.empty()) continue;  // row 8: no valid defining equation exists
        CAPTURE(row.row);
        auto out = classify_rational(Poly::parse(row.equation, 1));
        auto* m = std::get_if<Table3Match>(&out);
        REQUIRE(m != nullptr);
        CHECK(m->row == row.row);
        CHECK(*m->invariants.rho == row.rho);
        CHECK(m->r == row.r);
        CHECK(static_cast<int>(m->sections.size()) == row.section_count);
        // MW group (Z/5)^r bounds the curve-point sections
        long long bound = 1;
        for (int i = 0; i < m->r; ++i) bound *= 5;
        CHECK(static_cast<long long>(m->sections.size()) <= bound - 1);
    }
}

TEST_CASE("non-rational equations are reported with their pa") {
    auto out = classify_rational(Poly::parse("t^4+t^2", 1));
    auto* nr = std::get_if<NotRational>(&out);
    REQUIRE(nr != nullptr);
    CHECK(nr->invariants.pa == 1);
}

TEST_CASE("integrate inverts derivative") {
    Poly p = Poly::parse("t^16+t^12+t^8+t^4", 1);
    auto anti = integrate(p.derivative());
    REQUIRE(anti.has_value());
    CHECK(*anti == p);
    CHECK(!integrate(Poly::parse("t^4", 1)).has_value());
}

TEST_CASE("the row-7 family is rigid: only {2,3,4} integrates") {
    auto params5 = find_row7_parameters(1);
    REQUIRE(params5.size() == 1);
    std::set<std::uint64_t> keys{params5[0][0].lex_key(), params5[0][1].lex_key(), params5[0][2].lex_key()};
    CHECK(keys == std::set<std::uint64_t>{2, 3, 4});
    auto params25 = find_row7_parameters(2);
    REQUIRE(params25.size() == 1);
    for (const auto& x : params25[0]) CHECK(x.degree_over_prime() == 1);
}

TEST_CASE("row 8 admits no defining equation over small fields") {
    CHECK(!find_row8_equation(2).has_value());
}

TEST_CASE("exhaustive degree-4 scan lands in rows 1-5") {
    ScanResult res = scan_degree(4);
    CHECK(res.total == 624);
    for (const auto& [row, count] : res.row_counts) {
        CHECK(row >= 1);
        CHECK(row <= 5);
        CHECK(count > 0);
    }
    // every rational case is covered by rows 1..5 and nothing else appeared
    CHECK(res.row_counts.size() == 5);
    for (const auto& [pa, count] : res.nonrational_pa) CHECK(pa != 0);
}
