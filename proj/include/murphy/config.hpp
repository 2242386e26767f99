#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "murphy/rational.hpp"

namespace murphy {

// Incidence requirements for m marked points and n marked lines in the
// projective plane. The table is total: pairs listed in `on` are required
// incidences, every other pair is a required non-incidence. Indices are
// 0-based in memory (point 0 is the first frame point).
struct Configuration {
    std::uint32_t m = 0;
    std::uint32_t n = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> on;  // (point, line), sorted

    void normalize();  // sort + dedupe `on`
    bool is_on(std::uint32_t point, std::uint32_t line) const;
    std::vector<std::vector<std::uint32_t>> points_per_line() const;
    std::vector<std::vector<std::uint32_t>> lines_per_point() const;
};

// Homogeneous rational coordinates realizing a configuration.
struct Witness {
    std::vector<std::array<Rat, 3>> points;
    std::vector<std::array<Rat, 3>> lines;
};

// The four pinned frame points [1;0;0], [0;1;0], [0;0;1], [1;1;1].
std::array<std::array<Rat, 3>, 4> frame_points();

// Scale so the first nonzero coordinate is 1; key is usable for hashing.
std::array<Rat, 3> projective_normalize(const std::array<Rat, 3>& v);
std::string projective_key(const std::array<Rat, 3>& v);
bool projectively_equal(const std::array<Rat, 3>& a, const std::array<Rat, 3>& b);
Rat dot3(const std::array<Rat, 3>& p, const std::array<Rat, 3>& l);
std::array<Rat, 3> cross3(const std::array<Rat, 3>& a, const std::array<Rat, 3>& b);

struct CheckItem {
    std::string check;
    bool pass = true;
    std::string detail;  // offending index / explanation on failure
};

struct Report {
    std::vector<CheckItem> items;
    bool pass() const {
        for (auto& item : items)
            if (!item.pass) return false;
        return true;
    }
    void add(const std::string& check, bool ok, const std::string& detail = "") {
        items.push_back({check, ok, detail});
    }
};

// Checks the defining conditions of an incidence configuration: m >= 4, a
// well-formed total table, every line >= 3 marked points, every pair of
// lines sharing a marked point. Total function; failures land in the report.
Report validate_configuration(const Configuration& cfg);

// Exact witness checks: frame pinning, pairwise distinctness of points and
// of lines, every ON pair incident, every OFF pair non-incident.
// Throws input_error on malformed input (size mismatch, zero triple).
Report verify_witness(const Configuration& cfg, const Witness& w);

}  // namespace murphy
