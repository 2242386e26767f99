#include "murphy/germ.hpp"

#include "doctest.h"
#include "murphy/errors.hpp"

using namespace murphy;

namespace {

VarCtx xy() {
    static VarCtx ctx = make_ctx({"x", "y"});
    return ctx;
}

MapGerm G(const std::string& text, std::uint32_t N = 8) {
    return make_germ(parse_poly(text, xy()), N);
}

Poly D(const std::string& text) { return parse_poly(text, discriminant_ctx()); }

}  // namespace

TEST_CASE("critical-point classification") {
    CHECK(classify_critical(G("y^2")) == CriticalClass::Fold);
    CHECK(classify_critical(G("y^3 + x*y")) == CriticalClass::Cusp);
    CHECK(classify_critical(G("y^3 + x^3")) == CriticalClass::Degenerate);
    CHECK(classify_critical(G("y")) == CriticalClass::NotCritical);
    CHECK(classify_critical(G("y^3 + x^2")) == CriticalClass::Cusp);  // x^2-shape, pre-swap
    CHECK(classify_critical(G("y^4 + x*y")) == CriticalClass::Degenerate);

    CHECK_THROWS_AS(classify_critical(G("y^2", 3)), input_error);
    CHECK_THROWS_AS(classify_critical(G("1 + y^2")), input_error);
    CHECK_THROWS_AS(classify_critical(G("x + y^2")), input_error);
}

TEST_CASE("classification is stable when the truncation order grows") {
    for (auto* text : {"y^2", "y^3 + x*y", "y^2 + x^5*y", "y^3*(1+x) + x*y"}) {
        CHECK(classify_critical(G(text, 6)) == classify_critical(G(text, 10)));
    }
}

TEST_CASE("normalize_cusp: already normal") {
    auto res = normalize_cusp(G("y^3 + x*y"));
    CHECK(res.normal.q == G("y^3 + x*y").q);
    CHECK(res.log.empty());
}

TEST_CASE("normalize_cusp: unit killing") {
    auto res = normalize_cusp(G("y^3*(1+x) + x*y"));
    CHECK(res.normal.q == G("y^3 + x*y").q);
    CHECK(res.log.size() == 2);  // one unit pass, one x-reparametrization
    CHECK(replay(G("y^3*(1+x) + x*y"), res.log).q == res.normal.q);
}

TEST_CASE("normalize_cusp: complete the cube, z-shift, x-reparametrization") {
    MapGerm g = G("y^3 + y^2*x + y*x + x^2");
    auto res = normalize_cusp(g);
    CHECK(res.normal.q == G("y^3 + x*y").q);
    CHECK(replay(g, res.log).q == res.normal.q);
    CHECK(classify_critical(res.normal) == CriticalClass::Cusp);
}

TEST_CASE("normalize_cusp: rational cube rescale and extension refusal") {
    auto res = normalize_cusp(G("8*y^3 + x*y"));
    CHECK(res.normal.q == G("y^3 + x*y").q);
    CHECK(replay(G("8*y^3 + x*y"), res.log).q == res.normal.q);

    CHECK_THROWS_WITH_AS(normalize_cusp(G("2*y^3 + x*y")), doctest::Contains("extension"),
                         input_error);
}

TEST_CASE("normalize_cusp on a corpus of cusps with replay verification") {
    const char* corpus[] = {
        "y^3 + x*y",
        "y^3*(1+x) + x*y",
        "y^3 + y^2*x + y*x + x^2",
        "y^3 - x*y",
        "y^3 + 2*x*y + x^2*y",
        "y^3*(1 - 2*x + x^2) + x*y",
        "y^3 + y^2*x^2 + x*y",
        "27*y^3 + x*y + x^3",
        "y^3 + x*y + x^4",
        "y^3*(1+x+x^2*y) + 3*x*y + x^2",
    };
    for (auto* text : corpus) {
        MapGerm g = G(text);
        REQUIRE(classify_critical(g) == CriticalClass::Cusp);
        auto res = normalize_cusp(g);
        CHECK(res.normal.q == G("y^3 + x*y").q);
        CHECK(replay(g, res.log).q == res.normal.q);
        CHECK(classify_critical(res.normal) == CriticalClass::Cusp);
    }
}

TEST_CASE("discriminants: frozen values") {
    CHECK(discriminant_germ(G("y^3 + x*y")) == D("-(4*x^3 + 27*z^2)"));
    CHECK(normalize_unit(discriminant_germ(G("y^3 + x*y"))) == D("4*x^3 + 27*z^2"));
    CHECK(discriminant_germ(G("y^2")) == D("-4*z"));
    CHECK(discriminant_germ(G("y^3")) == D("-27*z^2"));
    CHECK_THROWS_AS(discriminant_germ(G("x^2")), input_error);
}

TEST_CASE("discriminant classification") {
    CHECK(classify_discriminant(D("4*x^3 + 27*z^2")) == DiscClass::Cusp);
    CHECK(classify_discriminant(D("x*z")) == DiscClass::Node);
    CHECK(classify_discriminant(D("z")) == DiscClass::Smooth);
    CHECK(classify_discriminant(D("z^2")) == DiscClass::Other);
    CHECK(classify_discriminant(D("x^4 + z^3")) == DiscClass::Other);
    CHECK(classify_discriminant(D("z^2 - x^2")) == DiscClass::Node);
    CHECK_THROWS_AS(classify_discriminant(D("0")), input_error);
    CHECK_THROWS_AS(classify_discriminant(D("1 + x")), input_error);
}

TEST_CASE("discriminant class is preserved by the normalization") {
    const char* corpus[] = {
        "y^3*(1+x) + x*y",
        "y^3 + y^2*x + y*x + x^2",
        "y^3 - x*y",
        "27*y^3 + x*y + x^3",
    };
    for (auto* text : corpus) {
        MapGerm g = G(text);
        auto res = normalize_cusp(g);
        CHECK(classify_discriminant(discriminant_germ(g)) ==
              classify_discriminant(discriminant_germ(res.normal)));
    }
}

TEST_CASE("fold discriminant is smooth") {
    CHECK(classify_discriminant(discriminant_germ(G("y^2"))) == DiscClass::Smooth);
    CHECK(classify_discriminant(discriminant_germ(G("y^2 + x^3*y"))) == DiscClass::Smooth);
}
