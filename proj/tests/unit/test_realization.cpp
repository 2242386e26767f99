#include "murphy/realization.hpp"

#include <random>

#include "doctest.h"
#include "murphy/errors.hpp"
#include "murphy/test_fixtures.hpp"

using namespace murphy;

TEST_CASE("quadrilateral model: six variables cut to a point") {
    auto [cfg, w] = fixtures::complete_quadrilateral();
    RealizationModel model = realization_model(cfg, w);
    CHECK(model.vars->size() == 6);
    CHECK(model.equations.size() == 6);
    CHECK(tangent_dimension(model) == 0);

    CHECK(model.inequations_materialized);
    for (auto& ineq : model.inequations) CHECK(!is_zero(ineq.eval(model.base)));
}

TEST_CASE("a single free point has tangent dimension two") {
    Configuration cfg;
    cfg.m = 5;
    cfg.n = 0;
    Witness w;
    for (auto& f : frame_points()) w.points.push_back(f);
    w.points.push_back({Rat(2), Rat(3), Rat(1)});
    RealizationModel model = realization_model(cfg, w);
    CHECK(model.vars->size() == 2);
    CHECK(model.equations.empty());
    CHECK(tangent_dimension(model) == 2);
}

TEST_CASE("point constrained to one line keeps one degree of freedom") {
    auto [cfg, w] = fixtures::complete_quadrilateral();
    cfg.m += 1;
    cfg.on.emplace_back(7, 0);  // new point on the line z = 0
    cfg.normalize();
    w.points.push_back({Rat(1), Rat(2), Rat(0)});
    RealizationModel model = realization_model(cfg, w);
    CHECK(tangent_dimension(model) == 1);

    ResidualSystem res = residual_system(model);
    CHECK(res.unpaired_dropped.size() == 1);
}

TEST_CASE("tangent dimension invariant under equation permutation and chart choice") {
    auto [cfg, w] = fixtures::complete_quadrilateral();
    RealizationModel base = realization_model(cfg, w);
    std::size_t expect = tangent_dimension(base);

    RealizationModel permuted = base;
    std::mt19937 rng(31);
    std::shuffle(permuted.equations.begin(), permuted.equations.end(), rng);
    CHECK(tangent_dimension(permuted) == expect);

    for (unsigned seed = 0; seed < 4; ++seed) {
        std::mt19937 chart_rng(seed);
        ChartPolicy random_pin = [&](std::uint32_t, const std::array<Rat, 3>& coords) {
            std::vector<std::uint32_t> nonzero;
            for (std::uint32_t c = 0; c < 3; ++c)
                if (!is_zero(coords[c])) nonzero.push_back(c);
            std::uniform_int_distribution<std::size_t> pick(0, nonzero.size() - 1);
            return nonzero[pick(chart_rng)];
        };
        RealizationModel other = realization_model(cfg, w, random_pin);
        CHECK(tangent_dimension(other) == expect);
    }
}

TEST_CASE("equations vanish at base by construction") {
    auto [cfg, w] = fixtures::complete_quadrilateral();
    RealizationModel model = realization_model(cfg, w);
    for (auto& eq : model.equations) {
        CHECK(is_zero(model.equation_value(eq, model.base)));
        CHECK(is_zero(model.equation_poly(eq).eval(model.base)));
    }
}

TEST_CASE("unverified witness is rejected") {
    auto [cfg, w] = fixtures::complete_quadrilateral();
    w.points[6] = {Rat(5), Rat(1), Rat(1)};
    CHECK_THROWS_AS(realization_model(cfg, w), input_error);
}
