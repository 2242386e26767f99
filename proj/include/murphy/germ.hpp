#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "murphy/poly.hpp"
#include "murphy/series.hpp"

namespace murphy {

// Finite map germ in prepared coordinates: (x, y) -> (x, q(x, y)).
struct MapGerm {
    TruncSeries q;
    std::uint32_t trunc_order() const { return q.trunc_order(); }
};

MapGerm make_germ(const Poly& q_xy, std::uint32_t N);  // ctx must be (x, y)

enum class CriticalClass { NotCritical, Fold, Cusp, Degenerate };
std::string to_string(CriticalClass c);

// Jet classification of the critical point at the origin:
//   NotCritical  dq/dy(0,0) != 0
//   Fold         d2q/dy2(0,0) != 0
//   Cusp         y^3-coefficient != 0 and the germ is not in (x,y)^3
//                (xy- or x^2-coefficient nonzero; the latter via the x -> x+y
//                replacement)
//   Degenerate   otherwise
// Requires q(0,0) = 0, dq/dx(0,0) = 0 (prepared form) and N >= 4.
CriticalClass classify_critical(const MapGerm& germ);

// Coordinate changes used by the reduction; replaying a log reproduces the
// reduction output exactly modulo the truncation order.
enum class TransformKind { YRescale, YShift, ZShift, XRepar, XYSwapShear };
struct Transform {
    TransformKind kind;
    TruncSeries series;  // YRescale: unit u(x,y), y -> y*u; YShift: s(x), y -> y+s;
                         // ZShift: w(x), z -> z - w; XRepar: unit v(x), x -> x*v;
                         // XYSwapShear: unused (x -> x + y)
};
using TransformLog = std::vector<Transform>;

MapGerm apply_transform(const MapGerm& germ, const Transform& t);
MapGerm replay(const MapGerm& germ, const TransformLog& log);

struct NormalizeResult {
    MapGerm normal;
    TransformLog log;
};

// Reduces a cusp germ to (x, y^3 + xy) exactly modulo total degree N by the
// iterative unit-killing substitutions, completing the cube, a z-shift, and
// an x-reparametrization. The y^3-coefficient must be the cube of a rational
// (the germ is rescaled so it becomes 1); otherwise the germ is only
// normalizable over an extension and an input_error says so.
NormalizeResult normalize_cusp(const MapGerm& germ);

// Resultant of (q - z, dq/dy) eliminating y: the branch-curve germ in the
// (x, z)-plane, coefficients truncated below total degree N, up to a unit.
// Requires dq/dy not identically zero.
Poly discriminant_germ(const MapGerm& germ);

// Sign normalization: the grlex-least nonzero coefficient is made positive.
Poly normalize_unit(const Poly& p);

enum class DiscClass { Smooth, Node, Cusp, Other };
std::string to_string(DiscClass c);

// Classification of a plane-curve germ at the origin:
//   Smooth  nonzero linear part
//   Node    nondegenerate quadratic part
//   Cusp    rank-one quadratic part with nonzero cubic term along its kernel
//   Other   everything else
// Requires disc(0,0) = 0 and disc != 0.
DiscClass classify_discriminant(const Poly& disc);

// Context ("x", "z") used by discriminant outputs.
VarCtx discriminant_ctx();

}  // namespace murphy
