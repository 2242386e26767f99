#include "murphy/germ.hpp"

#include "murphy/errors.hpp"
#include "murphy/resultant.hpp"

namespace murphy {

namespace {

Rat coeff(const MapGerm& g, std::uint32_t i, std::uint32_t j) { return g.q.coeff(i, j); }

TruncSeries x_series(std::uint32_t N) {
    TruncSeries s(N);
    s.set(1, 0, Rat(1));
    return s;
}

TruncSeries y_series(std::uint32_t N) {
    TruncSeries s(N);
    s.set(0, 1, Rat(1));
    return s;
}

// q = y^3 f1(x,y) + y^2 x g1(x) + y x h1(x) + x^2 i1(x).
struct Prepared {
    TruncSeries f1, g1, h1, i1;  // g1, h1, i1 depend on x only
};

// Series in x only: divide by x^k (coefficients shift down).
TruncSeries shift_x_down(const TruncSeries& s, std::uint32_t k, std::uint32_t N) {
    TruncSeries out(N);
    for (auto& [ij, c] : s.terms()) {
        MURPHY_CHECK(ij.second == 0 && ij.first >= k, "series not divisible by x^k");
        out.set(ij.first - k, 0, c);
    }
    return out;
}

Prepared decompose(const MapGerm& germ) {
    const std::uint32_t N = germ.trunc_order();
    // Row extractions: q(x, 0), [y]q(x, .), [y^2]q(x, .), rest / y^3.
    TruncSeries row0(N), row1(N), row2(N), rest(N);
    for (auto& [ij, c] : germ.q.terms()) {
        if (ij.second == 0)
            row0.set(ij.first, 0, c);
        else if (ij.second == 1)
            row1.set(ij.first, 0, c);
        else if (ij.second == 2)
            row2.set(ij.first, 0, c);
        else
            rest.set(ij.first, ij.second - 3, c);
    }
    Prepared p{TruncSeries(N), TruncSeries(N), TruncSeries(N), TruncSeries(N)};
    p.i1 = shift_x_down(row0, 2, N);
    p.h1 = shift_x_down(row1, 1, N);
    p.g1 = shift_x_down(row2, 1, N);
    p.f1 = rest;
    return p;
}

}  // namespace

MapGerm make_germ(const Poly& q_xy, std::uint32_t N) {
    MURPHY_REQUIRE(q_xy.arity() == 2, "germ polynomial must be bivariate in (x, y)");
    return MapGerm{TruncSeries::from_poly(q_xy, N)};
}

std::string to_string(CriticalClass c) {
    switch (c) {
        case CriticalClass::NotCritical: return "NotCritical";
        case CriticalClass::Fold: return "Fold";
        case CriticalClass::Cusp: return "Cusp";
        case CriticalClass::Degenerate: return "Degenerate";
    }
    return "?";
}

std::string to_string(DiscClass c) {
    switch (c) {
        case DiscClass::Smooth: return "Smooth";
        case DiscClass::Node: return "Node";
        case DiscClass::Cusp: return "Cusp";
        case DiscClass::Other: return "Other";
    }
    return "?";
}

CriticalClass classify_critical(const MapGerm& germ) {
    MURPHY_REQUIRE(germ.trunc_order() >= 4, "truncation order too small to classify");
    MURPHY_REQUIRE(is_zero(coeff(germ, 0, 0)), "prepared germ must vanish at the origin");
    MURPHY_REQUIRE(is_zero(coeff(germ, 1, 0)), "prepared germ must have dq/dx(0,0) = 0");
    if (!is_zero(coeff(germ, 0, 1))) return CriticalClass::NotCritical;
    if (!is_zero(coeff(germ, 0, 2))) return CriticalClass::Fold;
    if (!is_zero(coeff(germ, 0, 3)) &&
        (!is_zero(coeff(germ, 1, 1)) || !is_zero(coeff(germ, 2, 0))))
        return CriticalClass::Cusp;
    return CriticalClass::Degenerate;
}

MapGerm apply_transform(const MapGerm& germ, const Transform& t) {
    const std::uint32_t N = germ.trunc_order();
    TruncSeries x = x_series(N), y = y_series(N);
    switch (t.kind) {
        case TransformKind::YRescale:
            return MapGerm{germ.q.substituted(x, y * t.series)};
        case TransformKind::YShift:
            return MapGerm{germ.q.substituted(x, y + t.series)};
        case TransformKind::ZShift:
            return MapGerm{germ.q - t.series};
        case TransformKind::XRepar:
            return MapGerm{germ.q.substituted(x * t.series, y)};
        case TransformKind::XYSwapShear:
            return MapGerm{germ.q.substituted(x + y, y)};
    }
    throw internal_error("unknown transform kind");
}

MapGerm replay(const MapGerm& germ, const TransformLog& log) {
    MapGerm out = germ;
    for (auto& t : log) out = apply_transform(out, t);
    return out;
}

NormalizeResult normalize_cusp(const MapGerm& input) {
    MURPHY_REQUIRE(classify_critical(input) == CriticalClass::Cusp,
                   "normalize_cusp needs a cusp germ");
    const std::uint32_t N = input.trunc_order();
    TruncSeries x = x_series(N), y = y_series(N);

    NormalizeResult res{input, {}};
    MapGerm g = input;

    // The xy-coefficient must be nonzero; the x^2-only shape is moved by the
    // x -> x + y replacement, which must land back in the prepared form.
    if (is_zero(coeff(g, 1, 1))) {
        Transform t{TransformKind::XYSwapShear, TruncSeries(N)};
        MapGerm swapped = apply_transform(g, t);
        MURPHY_REQUIRE(is_zero(coeff(swapped, 0, 2)) && !is_zero(coeff(swapped, 0, 3)) &&
                           !is_zero(coeff(swapped, 1, 1)),
                       "x -> x + y replacement leaves the twisty form; germ is not a cusp "
                       "of the normal shape");
        res.log.push_back(t);
        g = swapped;
    }

    // Rescale y so the y^3-coefficient becomes exactly 1.
    Rat c3 = coeff(g, 0, 3);
    if (c3 != 1) {
        auto lambda = rational_cube_root(Rat(1) / c3);
        MURPHY_REQUIRE(lambda.has_value(),
                       "y^3-coefficient is not a rational cube; normalizable over an "
                       "extension only");
        Transform t{TransformKind::YRescale, TruncSeries::constant(N, *lambda)};
        g = apply_transform(g, t);
        res.log.push_back(t);
        MURPHY_CHECK(coeff(g, 0, 3) == 1, "rescale failed to make the unit monic");
    }

    // Kill the y^3 unit: y -> y * f1(x,y)^(-1/3) until f1 = 1, each pass
    // raising the order of the defect.
    while (true) {
        Prepared p = decompose(g);
        TruncSeries defect = p.f1 - TruncSeries::constant(N, Rat(1));
        if (defect.is_zero()) break;
        std::int64_t before = defect.to_poly(make_ctx({"x", "y"})).order();
        Transform t{TransformKind::YRescale, p.f1.cube_root().inverse()};
        g = apply_transform(g, t);
        res.log.push_back(t);
        Prepared p2 = decompose(g);
        TruncSeries defect2 = p2.f1 - TruncSeries::constant(N, Rat(1));
        std::int64_t after =
            defect2.is_zero() ? static_cast<std::int64_t>(N) : defect2.to_poly(make_ctx({"x", "y"})).order();
        MURPHY_CHECK(after > before, "unit-killing pass failed to gain an order");
    }

    // Complete the cube: y -> y - x G1(x)/3 removes the y^2 term.
    {
        Prepared p = decompose(g);
        if (!p.g1.is_zero()) {
            Transform t{TransformKind::YShift, (x * p.g1).scaled(Rat(-1, 3))};
            g = apply_transform(g, t);
            res.log.push_back(t);
            Prepared p2 = decompose(g);
            MURPHY_CHECK(p2.g1.is_zero(), "completing the cube left a y^2 term");
            MURPHY_CHECK((p2.f1 - TruncSeries::constant(N, Rat(1))).is_zero(),
                         "completing the cube disturbed the y^3 unit");
        }
    }

    // Remove the pure-x part: z -> z - x^2 I2(x).
    {
        Prepared p = decompose(g);
        if (!p.i1.is_zero()) {
            Transform t{TransformKind::ZShift, x.pow(2) * p.i1};
            g = apply_transform(g, t);
            res.log.push_back(t);
        }
    }

    // Reparametrize x so the y-coefficient becomes exactly x: substitute
    // x -> psi(x) with psi * H2(psi) = x.
    {
        Prepared p = decompose(g);
        MURPHY_CHECK(!is_zero(p.h1.coeff(0, 0)), "cusp reduction lost h(0) != 0");
        if (!(p.h1 == TruncSeries::constant(N, Rat(1)))) {
            // psi = x * w(x) with w = 1 / H2(x * w); fixed point gains an
            // order per pass.
            TruncSeries w = TruncSeries::constant(N, Rat(1) / p.h1.coeff(0, 0));
            for (std::uint32_t pass = 0; pass < N; ++pass) {
                TruncSeries hw = p.h1.substituted(x * w, TruncSeries(N));
                w = hw.inverse();
            }
            MURPHY_CHECK((w * p.h1.substituted(x * w, TruncSeries(N)) ==
                          TruncSeries::constant(N, Rat(1))),
                         "x-reparametrization fixed point did not converge");
            Transform t{TransformKind::XRepar, w};
            g = apply_transform(g, t);
            res.log.push_back(t);
        }
    }

    TruncSeries normal_form = y.pow(3) + x * y;
    MURPHY_CHECK(g.q == normal_form, "reduction did not reach y^3 + xy");
    MURPHY_CHECK(replay(input, res.log).q == g.q, "transform log replay mismatch");
    res.normal = g;
    return res;
}

VarCtx discriminant_ctx() {
    static VarCtx ctx = make_ctx({"x", "z"});
    return ctx;
}

Poly discriminant_germ(const MapGerm& germ) {
    const std::uint32_t N = germ.trunc_order();
    TruncSeries qy = germ.q.dy();
    MURPHY_REQUIRE(!qy.is_zero(), "identically critical germ has no discriminant");

    VarCtx xyz = make_ctx({"x", "y", "z"});
    Poly q3(xyz);
    for (auto& [ij, c] : germ.q.terms()) {
        Monomial m;
        if (ij.first > 0) m.factors.emplace_back(0, ij.first);
        if (ij.second > 0) m.factors.emplace_back(1, ij.second);
        q3.add_term(m, c);
    }
    Poly p = q3 - Poly::variable(xyz, 2);
    Poly dq(xyz);
    for (auto& [ij, c] : qy.terms()) {
        Monomial m;
        if (ij.first > 0) m.factors.emplace_back(0, ij.first);
        if (ij.second > 0) m.factors.emplace_back(1, ij.second);
        dq.add_term(m, c);
    }
    Poly r = resultant_var(p, dq, 1);

    // Truncate consistently with the germ and move to the (x, z) context.
    r = r.truncated(N);
    std::vector<std::uint32_t> map{0, UINT32_MAX, 1};
    return r.remapped(discriminant_ctx(), map);
}

Poly normalize_unit(const Poly& p) {
    if (p.is_zero()) return p;
    const auto& least = p.terms().begin()->second;  // grlex-least stored first
    return sgn(least) < 0 ? -p : p;
}

DiscClass classify_discriminant(const Poly& disc) {
    MURPHY_REQUIRE(!disc.is_zero(), "zero polynomial has no germ class");
    MURPHY_REQUIRE(disc.arity() == 2, "discriminant germ must live in two variables");
    std::vector<Rat> origin{Rat(0), Rat(0)};
    MURPHY_REQUIRE(is_zero(disc.eval(origin)), "discriminant germ must vanish at the origin");

    if (!disc.homogeneous_part(1).is_zero()) return DiscClass::Smooth;

    Poly quad = disc.homogeneous_part(2);
    Monomial mx2, mxz, mz2;
    mx2.factors = {{0, 2}};
    mxz.factors = {{0, 1}, {1, 1}};
    mz2.factors = {{1, 2}};
    Rat a = quad.coefficient(mx2), b = quad.coefficient(mxz), c = quad.coefficient(mz2);
    if (!quad.is_zero()) {
        if (!is_zero(b * b - 4 * a * c)) return DiscClass::Node;
        // Rank one: kernel direction of the quadratic form.
        Rat kx, kz;
        if (!is_zero(a)) {
            kx = -b / 2;
            kz = a;
        } else {  // b = 0 here since b^2 = 4ac
            kx = 1;
            kz = 0;
        }
        Poly cubic = disc.homogeneous_part(3);
        std::vector<Rat> k{kx, kz};
        if (!is_zero(cubic.eval(k))) return DiscClass::Cusp;
        return DiscClass::Other;
    }
    return DiscClass::Other;
}

}  // namespace murphy
