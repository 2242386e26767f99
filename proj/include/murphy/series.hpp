#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "murphy/poly.hpp"
#include "murphy/rational.hpp"

namespace murphy {

// Truncated bivariate power series in (x, y): terms x^i y^j with i + j < N.
// Ring operations truncate consistently at order N.
class TruncSeries {
  public:
    explicit TruncSeries(std::uint32_t trunc_order);

    std::uint32_t trunc_order() const { return order_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::pair<std::uint32_t, std::uint32_t>, Rat>& terms() const { return terms_; }

    static TruncSeries constant(std::uint32_t N, const Rat& c);
    static TruncSeries from_poly(const Poly& p, std::uint32_t N);  // ctx must be (x, y)

    void set(std::uint32_t i, std::uint32_t j, const Rat& c);
    Rat coeff(std::uint32_t i, std::uint32_t j) const;

    TruncSeries operator+(const TruncSeries& o) const;
    TruncSeries operator-(const TruncSeries& o) const;
    TruncSeries operator-() const;
    TruncSeries operator*(const TruncSeries& o) const;
    TruncSeries scaled(const Rat& c) const;
    TruncSeries pow(std::uint32_t e) const;
    bool operator==(const TruncSeries& o) const { return order_ == o.order_ && terms_ == o.terms_; }

    TruncSeries dx() const;
    TruncSeries dy() const;

    // Composite s(x_expr, y_expr) truncated at order N; both substituted
    // series must have zero constant term.
    TruncSeries substituted(const TruncSeries& x_expr, const TruncSeries& y_expr) const;

    // t with t^3 = s mod order N, via the binomial series; requires the
    // constant term to be exactly 1.
    TruncSeries cube_root() const;

    // Multiplicative inverse mod order N; constant term must be nonzero.
    TruncSeries inverse() const;

    // Conversion to a polynomial over the given 2-variable context.
    Poly to_poly(const VarCtx& ctx_xy) const;

    std::string to_string() const;  // prints via to_poly over ("x","y")

  private:
    std::uint32_t order_;
    std::map<std::pair<std::uint32_t, std::uint32_t>, Rat> terms_;
};

}  // namespace murphy
