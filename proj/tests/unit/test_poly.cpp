#include "murphy/poly.hpp"

#include <random>

#include "doctest.h"
#include "murphy/errors.hpp"

using namespace murphy;

namespace {

Poly rp(const std::string& s, const VarCtx& ctx) { return parse_poly(s, ctx); }

// Deterministic random polynomial: up to 4 terms, degree <= 3.
Poly random_poly(const VarCtx& ctx, std::mt19937& rng) {
    std::uniform_int_distribution<int> coef(-5, 5), expo(0, 3), nterm(1, 4);
    Poly p(ctx);
    int k = nterm(rng);
    for (int t = 0; t < k; ++t) {
        Monomial m;
        for (std::uint32_t v = 0; v < ctx->size(); ++v) {
            int e = expo(rng);
            if (e > 0) m.factors.emplace_back(v, e);
        }
        p.add_term(m, Rat(coef(rng)));
    }
    return p;
}

}  // namespace

TEST_CASE("eval matches hand values") {
    auto ctx = make_ctx({"x", "y"});
    // Quartic from the canonical test input, with the parameter set to 2.
    Poly q = rp("x*y*(y-x)*(y-2*x)", ctx);
    std::vector<Rat> origin{Rat(0), Rat(0)};
    CHECK(q.eval(origin) == 0);

    Poly one = rp("1", ctx);
    std::vector<Rat> pt{Rat(7), Rat(-3)};
    CHECK(one.eval(pt) == 1);

    Poly p = rp("x^2+y", ctx);
    std::vector<Rat> pt2{Rat(3), Rat(-9)};
    CHECK(p.eval(pt2) == 0);

    std::vector<Rat> bad{Rat(1)};
    CHECK_THROWS_AS(p.eval(bad), input_error);
}

TEST_CASE("parser handles rationals, parens, unary minus") {
    auto ctx = make_ctx({"x", "y"});
    CHECK(rp("1/2*x + 1/2*x", ctx) == rp("x", ctx));
    CHECK(rp("-(x - y)^2", ctx) == rp("-x^2 + 2*x*y - y^2", ctx));
    CHECK(rp(" x ^ 2 ", ctx) == rp("x*x", ctx));
    CHECK(rp("3/4", ctx).constant_term() == Rat(3, 4));
    CHECK_THROWS_AS(rp("w + 1", ctx), input_error);
    CHECK_THROWS_AS(rp("x +", ctx), input_error);
}

TEST_CASE("to_string round-trips and is grlex-descending") {
    auto ctx = make_ctx({"x", "z"});
    Poly p = rp("4*x^3 + 27*z^2", ctx);
    CHECK(p.to_string() == "4*x^3 + 27*z^2");
    CHECK(parse_poly(p.to_string(), ctx) == p);
    Poly q = rp("-x + 1/3", ctx);
    CHECK(parse_poly(q.to_string(), ctx) == q);
}

TEST_CASE("ring axioms hold exactly on random inputs") {
    auto ctx = make_ctx({"x", "y", "z"});
    std::mt19937 rng(20240817);
    for (int i = 0; i < 40; ++i) {
        Poly a = random_poly(ctx, rng), b = random_poly(ctx, rng), c = random_poly(ctx, rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a - a == Poly(ctx));
    }
}

TEST_CASE("derivative and translation") {
    auto ctx = make_ctx({"x", "y"});
    Poly p = rp("x^2*y + y^3", ctx);
    CHECK(p.derivative(0) == rp("2*x*y", ctx));
    CHECK(p.derivative(1) == rp("x^2 + 3*y^2", ctx));

    std::vector<Rat> shift{Rat(1), Rat(-2)};
    Poly moved = p.translated(shift);
    // moved(x, y) = p(x+1, y-2)
    std::vector<Rat> zero{Rat(0), Rat(0)};
    std::vector<Rat> img{Rat(1), Rat(-2)};
    CHECK(moved.eval(zero) == p.eval(img));
}

TEST_CASE("exact division") {
    auto ctx = make_ctx({"x", "y"});
    Poly a = rp("x^2 - y^2", ctx);
    Poly b = rp("x - y", ctx);
    CHECK(a.divided_exact(b) == rp("x + y", ctx));
    CHECK_THROWS_AS(rp("x^2+1", ctx).divided_exact(b), internal_error);
}

TEST_CASE("truncated helpers") {
    auto ctx = make_ctx({"x", "y"});
    Poly p = rp("1 + x + x*y + x^3", ctx);
    CHECK(p.truncated(2) == rp("1 + x", ctx));
    CHECK(p.homogeneous_part(2) == rp("x*y", ctx));
    CHECK(p.order() == 0);
    CHECK(rp("x*y + x^3", ctx).order() == 2);

    Poly u = rp("1 + x", ctx);
    Poly inv = u.inverse_trunc(4);
    CHECK(u.mul_trunc(inv, 4) == rp("1", ctx));

    // subst_trunc: substitute y -> x^2 into x + y, truncate below degree 2.
    Poly s = rp("x + y", ctx).subst_trunc(1, rp("x^2", ctx), 2);
    CHECK(s == rp("x", ctx));
}
