#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "murphy/rational.hpp"

namespace murphy {

// Ordered variable context shared by the polynomials of one computation.
// Shared by pointer so models with many variables copy cheaply.
using VarCtx = std::shared_ptr<const std::vector<std::string>>;

VarCtx make_ctx(std::vector<std::string> names);

// Sparse exponent vector: (var index, exponent > 0) pairs sorted by index.
struct Monomial {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> factors;

    std::uint64_t degree() const;
    std::uint32_t exponent(std::uint32_t var) const;
    Monomial times(const Monomial& other) const;
    bool operator==(const Monomial& other) const { return factors == other.factors; }
};

// Graded lexicographic: total degree first, then earlier variables dominate.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

// Sparse multivariate polynomial with exact rational coefficients.
// Invariant: no zero coefficients stored; exponents live in the context.
class Poly {
  public:
    Poly() = default;
    explicit Poly(VarCtx ctx) : ctx_(std::move(ctx)) {}

    static Poly constant(VarCtx ctx, const Rat& c);
    static Poly variable(VarCtx ctx, std::uint32_t idx);

    const VarCtx& ctx() const { return ctx_; }
    std::size_t arity() const { return ctx_ ? ctx_->size() : 0; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, Rat, GrlexLess>& terms() const { return terms_; }

    // Leading term in grlex (largest). Requires nonzero.
    std::pair<Monomial, Rat> leading() const;
    // Total degree; -1 for the zero polynomial.
    std::int64_t degree() const;
    // Minimal total degree among terms (order at the origin); -1 if zero.
    std::int64_t order() const;

    void add_term(const Monomial& m, const Rat& c);
    Rat coefficient(const Monomial& m) const;
    Rat constant_term() const { return coefficient(Monomial{}); }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const Rat& c) const;
    Poly pow(std::uint32_t e) const;
    bool operator==(const Poly& o) const;

    // Exact value at a point; throws input_error on arity mismatch.
    Rat eval(std::span<const Rat> point) const;
    Poly derivative(std::uint32_t var) const;

    // x_i -> x_i + p_i for all variables (moves `point` to the origin).
    Poly translated(std::span<const Rat> point) const;
    // Substitute variable -> polynomial (same context), exact.
    Poly substituted(std::uint32_t var, const Poly& replacement) const;

    // Terms of total degree < bound.
    Poly truncated(std::uint64_t bound) const;
    // Homogeneous part of the given total degree.
    Poly homogeneous_part(std::uint64_t deg) const;
    // Product truncated below total degree `bound`.
    Poly mul_trunc(const Poly& o, std::uint64_t bound) const;
    // Substitute var -> replacement, truncating below total degree `bound`.
    Poly subst_trunc(std::uint32_t var, const Poly& replacement, std::uint64_t bound) const;
    // Multiplicative inverse modulo total degree `bound`; constant term must be nonzero.
    Poly inverse_trunc(std::uint64_t bound) const;

    // Indices of variables that actually occur.
    std::vector<std::uint32_t> support() const;
    // Rewrite into a smaller context; old_to_new[i] == UINT32_MAX means the
    // variable must not occur.
    Poly remapped(VarCtx new_ctx, std::span<const std::uint32_t> old_to_new) const;

    // Exact quotient; throws internal_error if division is not exact.
    Poly divided_exact(const Poly& divisor) const;

    // Deterministic rendering: grlex-descending terms, "a/b" coefficients.
    std::string to_string() const;

  private:
    VarCtx ctx_;
    std::map<Monomial, Rat, GrlexLess> terms_;
};

// Parses the toolkit grammar: identifiers from `ctx`, integer and rational
// literals (a/b), operators + - * ^, parentheses; whitespace-insensitive.
Poly parse_poly(const std::string& text, const VarCtx& ctx);

}  // namespace murphy
