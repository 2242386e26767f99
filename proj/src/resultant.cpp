#include "murphy/resultant.hpp"

#include "murphy/errors.hpp"

namespace murphy {

Poly poly_det(std::vector<std::vector<Poly>> m) {
    std::size_t n = m.size();
    MURPHY_CHECK(n > 0, "determinant of empty matrix");
    for (auto& row : m) MURPHY_CHECK(row.size() == n, "determinant of non-square matrix");
    VarCtx ctx = m[0][0].ctx();
    Poly prev = Poly::constant(ctx, Rat(1));
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        // Pivot: first row with nonzero entry in column k.
        std::size_t sel = k;
        while (sel < n && m[sel][k].is_zero()) ++sel;
        if (sel == n) return Poly(ctx);  // singular
        if (sel != k) {
            std::swap(m[sel], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                m[i][j] = num.divided_exact(prev);
            }
            m[i][k] = Poly(ctx);
        }
        prev = m[k][k];
    }
    Poly det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

namespace {

// Coefficients of p in descending powers of var, as polynomials without var.
std::vector<Poly> coeffs_desc(const Poly& p, std::uint32_t var, std::int64_t deg) {
    std::vector<Poly> out(static_cast<std::size_t>(deg + 1), Poly(p.ctx()));
    for (auto& [m, c] : p.terms()) {
        std::uint32_t e = m.exponent(var);
        Monomial stripped;
        for (auto& [v, k] : m.factors)
            if (v != var) stripped.factors.emplace_back(v, k);
        out[static_cast<std::size_t>(deg - e)].add_term(stripped, c);
    }
    return out;
}

std::int64_t degree_in(const Poly& p, std::uint32_t var) {
    std::int64_t d = -1;
    for (auto& [m, c] : p.terms()) d = std::max<std::int64_t>(d, m.exponent(var));
    return d;
}

}  // namespace

Poly resultant_var(const Poly& p, const Poly& q, std::uint32_t var) {
    MURPHY_REQUIRE(!p.is_zero() && !q.is_zero(), "resultant of zero polynomial");
    MURPHY_REQUIRE(p.ctx() && q.ctx() && *p.ctx() == *q.ctx(),
                   "resultant arguments must share one variable context");
    std::int64_t m = degree_in(p, var);
    std::int64_t n = degree_in(q, var);
    MURPHY_REQUIRE(m > 0 && n > 0, "resultant needs positive degree in the eliminated variable");
    auto pc = coeffs_desc(p, var, m);
    auto qc = coeffs_desc(q, var, n);
    std::size_t size = static_cast<std::size_t>(m + n);
    VarCtx ctx = p.ctx();
    std::vector<std::vector<Poly>> s(size, std::vector<Poly>(size, Poly(ctx)));
    // p-rows: multiplier y^i for i = 0..n-1; row starts at column n-1-i.
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t k = 0; k <= m; ++k)
            s[static_cast<std::size_t>(i)][static_cast<std::size_t>(n - 1 - i + k)] =
                pc[static_cast<std::size_t>(k)];
    // q-rows: multiplier y^(m-1-i) for i = 0..m-1; row starts at column i.
    for (std::int64_t i = 0; i < m; ++i)
        for (std::int64_t k = 0; k <= n; ++k)
            s[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + k)] =
                qc[static_cast<std::size_t>(k)];
    return poly_det(std::move(s));
}

Poly resultant_y(const Poly& p, const Poly& q) {
    const auto& names = *p.ctx();
    for (std::uint32_t i = 0; i < names.size(); ++i)
        if (names[i] == "y") return resultant_var(p, q, i);
    throw input_error("no variable named 'y' in context");
}

}  // namespace murphy
