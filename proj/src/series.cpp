#include "murphy/series.hpp"

#include "murphy/errors.hpp"

namespace murphy {

TruncSeries::TruncSeries(std::uint32_t trunc_order) : order_(trunc_order) {
    MURPHY_REQUIRE(trunc_order > 0, "truncation order must be positive");
}

TruncSeries TruncSeries::constant(std::uint32_t N, const Rat& c) {
    TruncSeries s(N);
    s.set(0, 0, c);
    return s;
}

TruncSeries TruncSeries::from_poly(const Poly& p, std::uint32_t N) {
    MURPHY_REQUIRE(p.arity() == 2, "series conversion needs a bivariate polynomial");
    TruncSeries s(N);
    for (auto& [m, c] : p.terms()) s.set(m.exponent(0), m.exponent(1), c);
    return s;
}

void TruncSeries::set(std::uint32_t i, std::uint32_t j, const Rat& c) {
    if (i + j >= order_) return;
    if (murphy::is_zero(c))
        terms_.erase({i, j});
    else
        terms_[{i, j}] = c;
}

Rat TruncSeries::coeff(std::uint32_t i, std::uint32_t j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? Rat(0) : it->second;
}

TruncSeries TruncSeries::operator+(const TruncSeries& o) const {
    MURPHY_REQUIRE(order_ == o.order_, "truncation order mismatch");
    TruncSeries out = *this;
    for (auto& [ij, c] : o.terms_) {
        Rat v = out.coeff(ij.first, ij.second) + c;
        out.set(ij.first, ij.second, v);
    }
    return out;
}

TruncSeries TruncSeries::operator-(const TruncSeries& o) const { return *this + (-o); }

TruncSeries TruncSeries::operator-() const {
    TruncSeries out(order_);
    for (auto& [ij, c] : terms_) out.terms_[ij] = -c;
    return out;
}

TruncSeries TruncSeries::operator*(const TruncSeries& o) const {
    MURPHY_REQUIRE(order_ == o.order_, "truncation order mismatch");
    TruncSeries out(order_);
    for (auto& [a, ca] : terms_) {
        if (a.first + a.second >= order_) continue;
        for (auto& [b, cb] : o.terms_) {
            std::uint32_t i = a.first + b.first, j = a.second + b.second;
            if (i + j >= order_) continue;
            Rat v = out.coeff(i, j) + ca * cb;
            out.set(i, j, v);
        }
    }
    return out;
}

TruncSeries TruncSeries::scaled(const Rat& c) const {
    TruncSeries out(order_);
    if (murphy::is_zero(c)) return out;
    for (auto& [ij, k] : terms_) out.terms_[ij] = k * c;
    return out;
}

TruncSeries TruncSeries::pow(std::uint32_t e) const {
    TruncSeries out = constant(order_, Rat(1));
    TruncSeries base = *this;
    while (e > 0) {
        if (e & 1u) out = out * base;
        base = base * base;
        e >>= 1u;
    }
    return out;
}

TruncSeries TruncSeries::dx() const {
    TruncSeries out(order_);
    for (auto& [ij, c] : terms_)
        if (ij.first > 0) out.set(ij.first - 1, ij.second, c * Rat(ij.first));
    return out;
}

TruncSeries TruncSeries::dy() const {
    TruncSeries out(order_);
    for (auto& [ij, c] : terms_)
        if (ij.second > 0) out.set(ij.first, ij.second - 1, c * Rat(ij.second));
    return out;
}

TruncSeries TruncSeries::substituted(const TruncSeries& x_expr, const TruncSeries& y_expr) const {
    MURPHY_REQUIRE(x_expr.order_ == order_ && y_expr.order_ == order_,
                   "truncation order mismatch");
    MURPHY_REQUIRE(murphy::is_zero(x_expr.coeff(0, 0)) && murphy::is_zero(y_expr.coeff(0, 0)),
                   "substituted series must have zero constant term");
    // Cache powers; exponents are < order.
    std::vector<TruncSeries> xp{constant(order_, Rat(1))}, yp{constant(order_, Rat(1))};
    for (std::uint32_t k = 1; k < order_; ++k) {
        xp.push_back(xp.back() * x_expr);
        yp.push_back(yp.back() * y_expr);
    }
    TruncSeries out(order_);
    for (auto& [ij, c] : terms_) out = out + (xp[ij.first] * yp[ij.second]).scaled(c);
    return out;
}

TruncSeries TruncSeries::cube_root() const {
    MURPHY_REQUIRE(coeff(0, 0) == 1, "cube root requires constant term 1");
    // (1+u)^(1/3) = sum binom(1/3, k) u^k; u is nilpotent mod the truncation.
    TruncSeries u = *this - constant(order_, Rat(1));
    TruncSeries out = constant(order_, Rat(1));
    TruncSeries upow = constant(order_, Rat(1));
    Rat binom(1);
    for (std::uint32_t k = 1; k < order_; ++k) {
        binom *= (Rat(1, 3) - Rat(k - 1)) / Rat(k);
        upow = upow * u;
        if (upow.is_zero()) break;
        out = out + upow.scaled(binom);
    }
    return out;
}

TruncSeries TruncSeries::inverse() const {
    Rat c0 = coeff(0, 0);
    MURPHY_REQUIRE(!murphy::is_zero(c0), "inverse of non-unit series");
    TruncSeries m = (*this - constant(order_, c0)).scaled(Rat(-1) / c0);
    TruncSeries out = constant(order_, Rat(1));
    TruncSeries p = constant(order_, Rat(1));
    for (std::uint32_t k = 1; k < order_; ++k) {
        p = p * m;
        if (p.is_zero()) break;
        out = out + p;
    }
    return out.scaled(Rat(1) / c0);
}

Poly TruncSeries::to_poly(const VarCtx& ctx_xy) const {
    MURPHY_REQUIRE(ctx_xy && ctx_xy->size() == 2, "series-to-poly needs a 2-variable context");
    Poly p(ctx_xy);
    for (auto& [ij, c] : terms_) {
        Monomial m;
        if (ij.first > 0) m.factors.emplace_back(0, ij.first);
        if (ij.second > 0) m.factors.emplace_back(1, ij.second);
        p.add_term(m, c);
    }
    return p;
}

std::string TruncSeries::to_string() const {
    static const VarCtx xy = make_ctx({"x", "y"});
    return to_poly(xy).to_string();
}

}  // namespace murphy
