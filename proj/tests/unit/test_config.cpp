#include "murphy/config.hpp"

#include "doctest.h"
#include "murphy/errors.hpp"
#include "murphy/test_fixtures.hpp"

using namespace murphy;

TEST_CASE("complete quadrilateral validates") {
    auto [cfg, w] = fixtures::complete_quadrilateral();
    Report rep = validate_configuration(cfg);
    CHECK(rep.pass());
    Report wrep = verify_witness(cfg, w);
    CHECK(wrep.pass());
}

TEST_CASE("deleting a diagonal point breaks the line-pair condition") {
    auto [cfg, w] = fixtures::complete_quadrilateral();
    // Remove point 5 (the diagonal point [1;1;0] shared by lines 1 and 6).
    Configuration broken;
    broken.m = cfg.m - 1;
    broken.n = cfg.n;
    for (auto& [p, l] : cfg.on) {
        if (p == 4) continue;
        broken.on.emplace_back(p > 4 ? p - 1 : p, l);
    }
    broken.normalize();
    Report rep = validate_configuration(broken);
    CHECK(!rep.pass());
    bool pair_failed = false;
    for (auto& item : rep.items)
        if (item.check == "every pair of lines shares a marked point" && !item.pass)
            pair_failed = true;
    CHECK(pair_failed);
}

TEST_CASE("frame-only configuration is vacuously valid") {
    Configuration cfg;
    cfg.m = 4;
    cfg.n = 0;
    CHECK(validate_configuration(cfg).pass());

    Witness w;
    for (auto& f : frame_points()) w.points.push_back(f);
    CHECK(verify_witness(cfg, w).pass());
}

TEST_CASE("moving a frame point fails verification") {
    auto [cfg, w] = fixtures::complete_quadrilateral();
    w.points[3] = {Rat(1), Rat(1), Rat(2)};
    Report rep = verify_witness(cfg, w);
    CHECK(!rep.pass());
    // The required incidence of p4 with line [0;1;-1] now evaluates to -1.
    bool incidence_failed = false;
    for (auto& item : rep.items)
        if (item.check == "required incidences hold" && !item.pass) incidence_failed = true;
    CHECK(incidence_failed);
}

TEST_CASE("zero coordinate triple is malformed input") {
    auto [cfg, w] = fixtures::complete_quadrilateral();
    w.points[4] = {Rat(0), Rat(0), Rat(0)};
    CHECK_THROWS_AS(verify_witness(cfg, w), input_error);
}

TEST_CASE("coincident points are reported") {
    Configuration cfg;
    cfg.m = 5;
    cfg.n = 0;
    Witness w;
    for (auto& f : frame_points()) w.points.push_back(f);
    w.points.push_back({Rat(2), Rat(2), Rat(2)});  // projectively equal to p4
    Report rep = verify_witness(cfg, w);
    CHECK(!rep.pass());
}
