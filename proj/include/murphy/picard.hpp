#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "murphy/config.hpp"
#include "murphy/rational.hpp"

namespace murphy {

// Divisor class h*H - sum e_i*E_i on the blow-up of the plane at m points;
// H^2 = 1, E_i^2 = -1, mixed products 0. Effective proper transforms of
// plane curves have nonnegative entries in this convention.
struct PicClass {
    Int h{0};
    std::vector<Int> e;  // length m

    bool operator==(const PicClass& o) const { return h == o.h && e == o.e; }
    std::string to_string() const;  // "aH - b E1 - ..." rendering
};

PicClass pic_zero(std::size_t m);
PicClass pic_add(const PicClass& a, const PicClass& b);
PicClass pic_sub(const PicClass& a, const PicClass& b);
PicClass pic_scale(const Int& k, const PicClass& a);

// Intersection number <a, b> = a.h*b.h - sum a.e_i*b.e_i.
// Throws input_error on length mismatch.
Int intersect(const PicClass& a, const PicClass& b);

// K = -3H + sum E_i.
PicClass canonical_class(std::size_t m);

// Congruence a == b (mod k), coordinatewise.
bool pic_congruent(const PicClass& a, const PicClass& b, const Int& k);

// Exact division by k; empty optional if some coordinate is not divisible.
std::optional<PicClass> pic_divide(const PicClass& a, const Int& k);

// Class of the proper transform of the union of the marked lines:
// sum_j (H - sum_{i on j} E_i).
PicClass branch_curve_class(const Configuration& cfg);

}  // namespace murphy
