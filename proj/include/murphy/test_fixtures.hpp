#pragma once

// Shared desk-scale fixtures for the test suites.

#include <utility>

#include "murphy/config.hpp"

namespace murphy::fixtures {

// The complete quadrilateral: frame p1..p4, the three diagonal points
// [1;1;0], [1;0;1], [0;1;1], and the six lines through pairs of frame
// points. Every line carries exactly three marked points.
inline std::pair<Configuration, Witness> complete_quadrilateral() {
    Configuration cfg;
    cfg.m = 7;
    cfg.n = 6;
    // 0-based (point, line) incidences.
    cfg.on = {
        {0, 0}, {1, 0}, {4, 0},  // z = 0 through p1, p2, p5
        {0, 1}, {2, 1}, {5, 1},  // y = 0 through p1, p3, p6
        {0, 2}, {3, 2}, {6, 2},  // y = z through p1, p4, p7
        {1, 3}, {2, 3}, {6, 3},  // x = 0 through p2, p3, p7
        {1, 4}, {3, 4}, {5, 4},  // x = z through p2, p4, p6
        {2, 5}, {3, 5}, {4, 5},  // x = y through p3, p4, p5
    };
    cfg.normalize();

    Witness w;
    for (auto& f : frame_points()) w.points.push_back(f);
    w.points.push_back({Rat(1), Rat(1), Rat(0)});
    w.points.push_back({Rat(1), Rat(0), Rat(1)});
    w.points.push_back({Rat(0), Rat(1), Rat(1)});
    w.lines = {
        {Rat(0), Rat(0), Rat(1)},  {Rat(0), Rat(1), Rat(0)},  {Rat(0), Rat(1), Rat(-1)},
        {Rat(1), Rat(0), Rat(0)},  {Rat(1), Rat(0), Rat(-1)}, {Rat(1), Rat(-1), Rat(0)},
    };
    return {cfg, w};
}

}  // namespace murphy::fixtures
