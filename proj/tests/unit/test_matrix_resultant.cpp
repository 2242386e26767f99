#include <random>

#include "doctest.h"
#include "murphy/errors.hpp"
#include "murphy/matrix.hpp"
#include "murphy/resultant.hpp"

using namespace murphy;

TEST_CASE("rank: frozen values") {
    RatMatrix z(3, 3);
    CHECK(z.rank() == 0);

    RatMatrix id(4, 4);
    for (int i = 0; i < 4; ++i) id.at(i, i) = 1;
    CHECK(id.rank() == 4);

    RatMatrix m(2, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(1, 0) = 2;
    m.at(1, 1) = 4;
    CHECK(m.rank() == 1);
}

TEST_CASE("rank invariant under row permutation and scaling") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> entry(-4, 4);
    for (int trial = 0; trial < 20; ++trial) {
        RatMatrix m(4, 5);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 5; ++c) m.at(r, c) = entry(rng);
        std::size_t base = m.rank();

        RatMatrix p = m;
        for (int c = 0; c < 5; ++c) std::swap(p.at(0, c), p.at(3, c));
        CHECK(p.rank() == base);

        RatMatrix s = m;
        for (int c = 0; c < 5; ++c) s.at(2, c) *= Rat(-7, 3);
        CHECK(s.rank() == base);
    }
}

TEST_CASE("solve_linear: particular solution and kernel") {
    // x + y = 3, 2x + 2y = 6: consistent, 1-dim kernel.
    RatMatrix a(2, 2);
    a.at(0, 0) = 1;
    a.at(0, 1) = 1;
    a.at(1, 0) = 2;
    a.at(1, 1) = 2;
    auto sol = solve_linear(a, {Rat(3), Rat(6)});
    REQUIRE(sol.has_value());
    CHECK(sol->particular[0] + sol->particular[1] == 3);
    REQUIRE(sol->kernel_basis.size() == 1);
    CHECK(sol->kernel_basis[0][0] + sol->kernel_basis[0][1] == 0);

    auto bad = solve_linear(a, {Rat(3), Rat(7)});
    CHECK(!bad.has_value());
}

TEST_CASE("resultant: frozen example values") {
    auto ctx = make_ctx({"x", "y", "z"});
    auto P = [&](const std::string& s) { return parse_poly(s, ctx); };

    // Cubic against its y-derivative: the branch-curve polynomial, with the
    // unit pinned by this Sylvester layout.
    CHECK(resultant_y(P("y^3 + x*y - z"), P("3*y^2 + x")) == P("-(4*x^3 + 27*z^2)"));

    auto ab = make_ctx({"a", "b", "y"});
    CHECK(resultant_var(parse_poly("y - a", ab), parse_poly("y - b", ab), 2) ==
          parse_poly("a - b", ab));

    CHECK(resultant_y(P("y^2 - z"), P("2*y")) == P("-4*z"));
    CHECK(resultant_y(P("y^3 - z"), P("3*y^2")) == P("-27*z^2"));

    CHECK_THROWS_AS(resultant_y(Poly(ctx), P("y")), input_error);
}

TEST_CASE("resultant vanishes exactly at shared roots") {
    // p = (y - a)(y - b), q = (y - a)(y - c) share the root y = a.
    auto ctx = make_ctx({"y"});
    auto lin = [&](const Rat& r) {
        return parse_poly("y", ctx) - Poly::constant(ctx, r);
    };
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> v(-6, 6);
    for (int trial = 0; trial < 20; ++trial) {
        Rat a(v(rng)), b(v(rng)), c(v(rng));
        Poly p = lin(a) * lin(b);
        Poly q = lin(a) * lin(c);
        Poly r = resultant_var(p, q, 0);
        CHECK(r.is_zero());

        if (a != b && a != c && b != c) {
            Rat d = a + 1;
            while (d == b || d == c) d += 1;
            Poly p2 = lin(d) * lin(b);
            Poly r2 = resultant_var(p2, q, 0);
            CHECK(!r2.is_zero());
        }
    }
}

TEST_CASE("poly_det agrees with cofactor expansion on small matrices") {
    auto ctx = make_ctx({"x", "y"});
    auto P = [&](const std::string& s) { return parse_poly(s, ctx); };
    std::vector<std::vector<Poly>> m{
        {P("x"), P("y"), P("1")},
        {P("1"), P("x"), P("0")},
        {P("y"), P("0"), P("x")},
    };
    // det = x*(x*x - 0) - y*(x - 0) + 1*(0 - x*y)
    CHECK(poly_det(m) == P("x^3 - 2*x*y"));
}
