#include <doctest.h>

#include "lvic/simplex.hpp"

using namespace lvic;

TEST_CASE("maximize s subject to s <= 0") {
    LinearProgram lp;
    int s = lp.add_var(true);
    lp.objective[s] = 1;
    lp.add_row({Rational(1)}, Sense::LE, Rational(0));
    auto r = lp_solve(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == 0);
}

TEST_CASE("two variable toy: max s, r >= 1 + s, r <= 2") {
    LinearProgram lp;
    int s = lp.add_var(true);
    int r = lp.add_var(true);
    lp.objective[s] = 1;
    lp.add_row({Rational(-1), Rational(1)}, Sense::GE, Rational(1));  // r - s >= 1
    lp.add_row({Rational(0), Rational(1)}, Sense::LE, Rational(2));
    auto sol = lp_solve(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.value == 1);
    CHECK(sol.x[r] == 2);
}

TEST_CASE("degenerate and exact fractional optimum") {
    // max x + y st 2x + y <= 3, x + 3y <= 5, x,y >= 0 -> x = 4/5, y = 7/5.
    LinearProgram lp;
    int x = lp.add_var(true);
    int y = lp.add_var(true);
    lp.objective[x] = 1;
    lp.objective[y] = 1;
    lp.add_row({Rational(2), Rational(1)}, Sense::LE, Rational(3));
    lp.add_row({Rational(1), Rational(3)}, Sense::LE, Rational(5));
    auto sol = lp_solve(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.value == Rational(11, 5));
    CHECK(sol.x[x] == Rational(4, 5));
    CHECK(sol.x[y] == Rational(7, 5));
}

TEST_CASE("free variables and equality rows") {
    // max x st x + y = 1, x - y <= 3, y free -> x can grow? x = (1 - y),
    // x - y = 1 - 2y <= 3 -> y >= -1 -> x <= 2.
    LinearProgram lp;
    int x = lp.add_var(false);
    int y = lp.add_var(false);
    lp.objective[x] = 1;
    lp.add_row({Rational(1), Rational(1)}, Sense::EQ, Rational(1));
    lp.add_row({Rational(1), Rational(-1)}, Sense::LE, Rational(3));
    auto sol = lp_solve(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.value == 2);
    CHECK(sol.x[y] == -1);
}

TEST_CASE("infeasible and unbounded detection") {
    LinearProgram lp;
    lp.add_var(true);
    lp.add_row({Rational(1)}, Sense::GE, Rational(2));
    lp.add_row({Rational(1)}, Sense::LE, Rational(1));
    CHECK(lp_solve(lp).status == LpStatus::Infeasible);

    LinearProgram lp2;
    int x = lp2.add_var(true);
    lp2.objective[x] = 1;
    lp2.add_row({Rational(-1)}, Sense::LE, Rational(0));
    CHECK(lp_solve(lp2).status == LpStatus::Unbounded);
}

TEST_CASE("redundant equalities do not break phase one") {
    LinearProgram lp;
    int x = lp.add_var(true);
    int y = lp.add_var(true);
    lp.objective[y] = 1;
    lp.add_row({Rational(1), Rational(1)}, Sense::EQ, Rational(2));
    lp.add_row({Rational(2), Rational(2)}, Sense::EQ, Rational(4));
    lp.add_row({Rational(1), Rational(0)}, Sense::GE, Rational(1));
    auto sol = lp_solve(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.value == 1);
    CHECK(sol.x[x] + sol.x[y] == 2);
}
