#include "murphy/series.hpp"

#include <random>

#include "doctest.h"
#include "murphy/errors.hpp"

using namespace murphy;

namespace {

VarCtx xy() {
    static VarCtx ctx = make_ctx({"x", "y"});
    return ctx;
}

TruncSeries S(const std::string& text, std::uint32_t N) {
    return TruncSeries::from_poly(parse_poly(text, xy()), N);
}

TruncSeries random_unit(std::uint32_t N, std::mt19937& rng) {
    std::uniform_int_distribution<int> coef(-3, 3);
    TruncSeries s = TruncSeries::constant(N, Rat(1));
    for (std::uint32_t i = 0; i < N; ++i)
        for (std::uint32_t j = 0; i + j < N; ++j) {
            if (i == 0 && j == 0) continue;
            s.set(i, j, Rat(coef(rng)));
        }
    return s;
}

}  // namespace

TEST_CASE("substitution: binomial expansion and identity") {
    // y^3 with y -> y + x.
    auto out = S("y^3", 6).substituted(S("x", 6), S("y + x", 6));
    CHECK(out == S("y^3 + 3*y^2*x + 3*y*x^2 + x^3", 6));

    auto s = S("1 + x*y + y^2", 5);
    CHECK(s.substituted(S("x", 5), S("y", 5)) == s);

    // y^3 + x*y with y -> y*(1+x) at N=5: terms of total degree < 5.
    auto t = S("y^3 + x*y", 5).substituted(S("x", 5), S("y*(1+x)", 5));
    CHECK(t == S("y^3 + 3*x*y^3 + x*y + x^2*y", 5));

    CHECK_THROWS_AS(S("y", 4).substituted(S("1+x", 4), S("y", 4)), input_error);
}

TEST_CASE("cube root: binomial series and round trip") {
    CHECK(TruncSeries::constant(4, Rat(1)).cube_root() == TruncSeries::constant(4, Rat(1)));

    auto r = S("1 + x", 3).cube_root();
    CHECK(r == S("1 + 1/3*x - 1/9*x^2", 3));

    CHECK_THROWS_AS(S("2 + x", 4).cube_root(), input_error);

    std::mt19937 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        auto s = random_unit(6, rng);
        auto c = s.cube_root();
        CHECK(c.pow(3) == s);
        // Round trip: cube_root(cube_root(s)^3) == cube_root(s).
        CHECK(c.pow(3).cube_root() == c);
    }
}

TEST_CASE("ring axioms on truncated series") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        auto a = random_unit(5, rng), b = random_unit(5, rng), c = random_unit(5, rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("inverse and derivatives") {
    auto u = S("1 + x + y", 5);
    CHECK(u * u.inverse() == TruncSeries::constant(5, Rat(1)));
    CHECK(S("x^2*y", 6).dx() == S("2*x*y", 6));
    CHECK(S("x^2*y", 6).dy() == S("x^2", 6));
}
