#include "murphy/diagnostics.hpp"

#include "doctest.h"
#include "murphy/errors.hpp"

using namespace murphy;

namespace {

std::vector<Poly> ideal(const VarCtx& ctx, std::initializer_list<const char*> gens) {
    std::vector<Poly> out;
    for (auto* g : gens) out.push_back(parse_poly(g, ctx));
    return out;
}

std::vector<Rat> pt(std::initializer_list<int> vals) {
    std::vector<Rat> out;
    for (int v : vals) out.emplace_back(v);
    return out;
}

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST_CASE("local Hilbert function: frozen staircases") {
    auto x = make_ctx({"x"});
    CHECK(local_hilbert_function(ideal(x, {"x^2"}), pt({0}), 4) ==
          std::vector<std::uint64_t>{1, 2, 2, 2});

    CHECK(local_hilbert_function({}, pt({0}), 3) == std::vector<std::uint64_t>{1, 2, 3});

    auto xy = make_ctx({"x", "y"});
    CHECK(local_hilbert_function(ideal(xy, {"y^2 - x^3"}), pt({0, 0}), 4) ==
          std::vector<std::uint64_t>{1, 3, 5, 7});

    CHECK_THROWS_AS(local_hilbert_function(ideal(x, {"x^2 - 1"}), pt({0}), 3), input_error);
}

TEST_CASE("Hilbert function of a smooth point is binomial") {
    // Smooth of dimension d: hilbert(k) = C(k-1+d, d), tested for d = 0,1,2.
    auto x = make_ctx({"x"});
    auto h0 = local_hilbert_function(ideal(x, {"x"}), pt({0}), 5);
    auto xy = make_ctx({"x", "y"});
    auto h1 = local_hilbert_function(ideal(xy, {"x"}), pt({0, 0}), 5);
    auto xyz = make_ctx({"x", "y", "z"});
    auto h2 = local_hilbert_function(ideal(xyz, {"x"}), pt({0, 0, 0}), 5);
    for (std::uint64_t k = 1; k <= 5; ++k) {
        CHECK(h0[k - 1] == binom(k - 1 + 0, 0));
        CHECK(h1[k - 1] == binom(k - 1 + 1, 1));
        CHECK(h2[k - 1] == binom(k - 1 + 2, 2));
    }
}

TEST_CASE("jet lifting: power obstructions") {
    auto x = make_ctx({"x"});
    std::vector<Rat> v{Rat(1)};

    auto r2 = lift_jet(ideal(x, {"x^2"}), pt({0}), v, 6);
    CHECK(r2.achieved == 1);
    CHECK(!r2.inconclusive);

    auto r3 = lift_jet(ideal(x, {"x^3"}), pt({0}), v, 6);
    CHECK(r3.achieved == 2);

    auto free_arc = lift_jet({}, pt({0}), v, 6);
    CHECK(free_arc.achieved == 6);

    // Direction outside the kernel is rejected.
    CHECK_THROWS_AS(lift_jet(ideal(x, {"x"}), pt({0}), v, 4), input_error);
}

TEST_CASE("jet lifting on x^a matches the valuation oracle for a = 2..5") {
    // Oracle: for x(t) = t + c2 t^2 + ..., x(t)^a has t-valuation exactly a,
    // with coefficient 1; no choice of higher coefficients cancels it.
    auto x = make_ctx({"x"});
    std::vector<Rat> v{Rat(1)};
    for (std::uint32_t a = 2; a <= 5; ++a) {
        Poly g = parse_poly("x", x).pow(a);
        // Budget large enough to keep the whole search conclusive up to a = 5.
        auto res = lift_jet({g}, pt({0}), v, 8, 100);
        CHECK(res.achieved == a - 1);
        CHECK(!res.inconclusive);
        // Brute-force confirmation on a coefficient grid.
        for (int c2 = -2; c2 <= 2; ++c2) {
            for (int c3 = -2; c3 <= 2; ++c3) {
                // Coefficient of t^a in (t + c2 t^2 + c3 t^3)^a is 1.
                std::vector<Rat> arc(a + 1, Rat(0));
                arc[1] = 1;
                if (a + 1 > 2) arc[2] = c2;
                if (a + 1 > 3) arc[3] = c3;
                std::vector<Rat> power(a + 1, Rat(0));
                power[0] = 1;
                for (std::uint32_t rep = 0; rep < a; ++rep) {
                    std::vector<Rat> nxt(a + 1, Rat(0));
                    for (std::uint32_t i = 0; i <= a; ++i)
                        for (std::uint32_t j = 0; i + j <= a; ++j) nxt[i + j] += power[i] * arc[j];
                    power = nxt;
                }
                CHECK(power[a] == 1);
            }
        }
    }
}

TEST_CASE("cusp directions: axis lifts further than the transverse direction") {
    auto xy = make_ctx({"x", "y"});
    auto gens = ideal(xy, {"x^2 - y^3"});
    std::vector<Rat> ex{Rat(1), Rat(0)}, ey{Rat(0), Rat(1)};
    CHECK(lift_jet(gens, pt({0, 0}), ex, 6).achieved == 1);
    CHECK(lift_jet(gens, pt({0, 0}), ey, 6).achieved == 2);
}

TEST_CASE("fingerprints and smooth-factor comparison") {
    auto x = make_ctx({"x"});
    auto xu = make_ctx({"x", "u"});

    Fingerprint f1 = fingerprint(ideal(x, {"x^2"}), pt({0}), 4, 4);
    CHECK(f1.tangent_dim == 1);
    CHECK(f1.hilbert == std::vector<std::uint64_t>{1, 2, 2, 2});
    REQUIRE(f1.jets.size() == 1);
    CHECK(f1.jets[0].achieved == 1);

    Fingerprint f2 = fingerprint(ideal(xu, {"x^2"}), pt({0, 0}), 4, 4);
    CHECK(f2.tangent_dim == 2);
    CHECK(f2.hilbert == std::vector<std::uint64_t>{1, 3, 5, 7});
    CHECK(compare_modulo_smooth(f1, f2, 1).pass());
    CHECK(!compare_modulo_smooth(f1, f2, 0).pass());

    Fingerprint f3 = fingerprint(ideal(x, {"x^3"}), pt({0}), 4, 4);
    CHECK(!compare_modulo_smooth(f1, f3, 0).pass());

    // Smooth points of dimensions 1 and 3 differ by a 2-dim smooth factor.
    Fingerprint s1 = fingerprint({}, pt({0}), 4, 4);
    auto xyz = make_ctx({"x", "y", "z"});
    Fingerprint s3 = fingerprint(std::vector<Poly>{}, std::vector<Rat>{Rat(0), Rat(0), Rat(0)}, 4, 4);
    CHECK(compare_modulo_smooth(s1, s3, 2).pass());

    CHECK_THROWS_AS(compare_modulo_smooth(f1, fingerprint(ideal(x, {"x^2"}), pt({0}), 3, 4), 0),
                    input_error);
}

TEST_CASE("comparison with dummy variables appended holds for r = 0, 1, 2") {
    std::vector<std::string> base_names{"x", "y"};
    std::vector<const char*> gens{"x*y", "x^2 - y^3", "x^2"};
    for (auto* g : gens) {
        for (std::size_t r = 0; r <= 2; ++r) {
            std::vector<std::string> names = base_names;
            for (std::size_t i = 0; i < r; ++i) names.push_back("u" + std::to_string(i));
            auto ctx_small = make_ctx(base_names);
            auto ctx_big = make_ctx(names);
            Fingerprint small = fingerprint(ideal(ctx_small, {g}), pt({0, 0}), 5, 5);
            std::vector<Rat> origin(names.size(), Rat(0));
            Fingerprint big = fingerprint({parse_poly(g, ctx_big)}, origin, 5, 5);
            CHECK(compare_modulo_smooth(small, big, static_cast<std::int64_t>(r)).pass());
        }
    }
}

TEST_CASE("reduce_local eliminates transverse equations") {
    auto xy = make_ctx({"x", "y"});
    // x + y^2 = 0 solves for x; the remaining system is empty in y only.
    LocalSystem sys = local_system(ideal(xy, {"x + y^2"}), pt({0, 0}));
    LocalSystem red = reduce_local(sys, 6);
    CHECK(red.polys.empty());
    CHECK(red.smooth_dims == 1);
    Fingerprint fp = fingerprint(ideal(xy, {"x + y^2"}), pt({0, 0}), 4, 4);
    CHECK(fp.tangent_dim == 1);
    CHECK(fp.hilbert == std::vector<std::uint64_t>{1, 2, 3, 4});
}
