#include <doctest.h>

#include "curvgraph/graph.hpp"
#include "curvgraph/lp.hpp"

using namespace curvgraph;

TEST_CASE("bounded below by a single row") {
    LinearProgram lp;
    const int x = lp.add_variable(-LinearProgram::kInf, LinearProgram::kInf, 1.0);
    lp.add_row({{x, 1.0}}, RowSense::greater_equal, 3.0);
    const auto r = lp_solve(lp);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.value == doctest::Approx(3.0));
    CHECK(r.x[0] == doctest::Approx(3.0));
    CHECK(r.duals[0] == doctest::Approx(1.0));
}

TEST_CASE("free variable with negative cost is unbounded") {
    LinearProgram lp;
    lp.add_variable(-LinearProgram::kInf, LinearProgram::kInf, -1.0);
    CHECK(lp_solve(lp).status == LpStatus::unbounded);
}

TEST_CASE("infeasible system") {
    LinearProgram lp;
    const int x = lp.add_variable(0.0, 1.0, 1.0);
    lp.add_row({{x, 1.0}}, RowSense::greater_equal, 2.0);
    CHECK(lp_solve(lp).status == LpStatus::infeasible);
}

TEST_CASE("single-edge curvature program by hand") {
    // f(x) = 0, f(y) = 1 fixed; t_y >= |f(x) - f(y)|; objective (t_y - 1) + 2.
    LinearProgram lp;
    const int fx = lp.add_variable(0.0, 0.0);
    const int fy = lp.add_variable(1.0, 1.0);
    const int t = lp.add_variable(0.0, LinearProgram::kInf, 1.0);
    lp.add_offset(-1.0);
    lp.add_cost(fy, 1.0);
    lp.add_cost(fx, 1.0);
    lp.add_offset(1.0);
    lp.add_row({{t, 1.0}, {fx, -1.0}, {fy, 1.0}}, RowSense::greater_equal, 0.0);
    lp.add_row({{t, 1.0}, {fx, 1.0}, {fy, -1.0}}, RowSense::greater_equal, 0.0);
    const auto r = lp_solve(lp);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.x[t] == doctest::Approx(1.0));
}

TEST_CASE("textbook program with equality rows and mixed bounds") {
    // min -3a - 5b  s.t. a <= 4, 2b <= 12, 3a + 2b <= 18; optimum (2, 6) -> -36.
    LinearProgram lp;
    const int a = lp.add_variable(0.0, LinearProgram::kInf, -3.0);
    const int b = lp.add_variable(0.0, LinearProgram::kInf, -5.0);
    lp.add_row({{a, 1.0}}, RowSense::less_equal, 4.0);
    lp.add_row({{b, 2.0}}, RowSense::less_equal, 12.0);
    lp.add_row({{a, 3.0}, {b, 2.0}}, RowSense::less_equal, 18.0);
    auto r = lp_solve(lp);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.value == doctest::Approx(-36.0));
    CHECK(r.x[a] == doctest::Approx(2.0));
    CHECK(r.x[b] == doctest::Approx(6.0));

    // Same optimum when a + b = 8 is added, and when bounds come from above.
    lp.add_row({{a, 1.0}, {b, 1.0}}, RowSense::equal, 8.0);
    r = lp_solve(lp);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.value == doctest::Approx(-36.0));

    LinearProgram upper;
    const int u = upper.add_variable(-LinearProgram::kInf, 5.0, -1.0);
    const int v = upper.add_variable(-2.0, 2.0, 1.0);
    upper.add_row({{u, 1.0}, {v, 1.0}}, RowSense::greater_equal, -10.0);
    r = lp_solve(upper);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.value == doctest::Approx(-7.0));
}

TEST_CASE("degenerate program terminates") {
    // Klee-Minty style degenerate vertex at the origin.
    LinearProgram lp;
    const int x1 = lp.add_variable(0.0, LinearProgram::kInf, -0.75);
    const int x2 = lp.add_variable(0.0, LinearProgram::kInf, 150.0);
    const int x3 = lp.add_variable(0.0, LinearProgram::kInf, -0.02);
    const int x4 = lp.add_variable(0.0, LinearProgram::kInf, 6.0);
    lp.add_row({{x1, 0.25}, {x2, -60.0}, {x3, -0.04}, {x4, 9.0}}, RowSense::less_equal, 0.0);
    lp.add_row({{x1, 0.5}, {x2, -90.0}, {x3, -0.02}, {x4, 3.0}}, RowSense::less_equal, 0.0);
    lp.add_row({{x3, 1.0}}, RowSense::less_equal, 1.0);
    const auto r = lp_solve(lp);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.value == doctest::Approx(-0.05));
}

TEST_CASE("redundant equality rows") {
    LinearProgram lp;
    const int a = lp.add_variable(0.0, LinearProgram::kInf, 1.0);
    const int b = lp.add_variable(0.0, LinearProgram::kInf, 2.0);
    lp.add_row({{a, 1.0}, {b, 1.0}}, RowSense::equal, 3.0);
    lp.add_row({{a, 2.0}, {b, 2.0}}, RowSense::equal, 6.0);
    const auto r = lp_solve(lp);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.value == doctest::Approx(3.0));
    CHECK(r.duality_gap < 1e-9);
}

TEST_CASE("row construction errors") {
    LinearProgram lp;
    lp.add_variable(0.0, 1.0);
    CHECK_THROWS_AS(lp.add_row({{3, 1.0}}, RowSense::equal, 0.0), InputError);
    CHECK_THROWS_AS(lp.add_variable(1.0, 0.0), InputError);
}
