#include "murphy/poly.hpp"

#include <algorithm>

#include "murphy/errors.hpp"

namespace murphy {

VarCtx make_ctx(std::vector<std::string> names) {
    return std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::uint64_t Monomial::degree() const {
    std::uint64_t d = 0;
    for (auto& [v, e] : factors) d += e;
    return d;
}

std::uint32_t Monomial::exponent(std::uint32_t var) const {
    for (auto& [v, e] : factors)
        if (v == var) return e;
    return 0;
}

Monomial Monomial::times(const Monomial& other) const {
    Monomial out;
    out.factors.reserve(factors.size() + other.factors.size());
    std::size_t i = 0, j = 0;
    while (i < factors.size() || j < other.factors.size()) {
        if (j == other.factors.size() ||
            (i < factors.size() && factors[i].first < other.factors[j].first)) {
            out.factors.push_back(factors[i++]);
        } else if (i == factors.size() || other.factors[j].first < factors[i].first) {
            out.factors.push_back(other.factors[j++]);
        } else {
            out.factors.emplace_back(factors[i].first, factors[i].second + other.factors[j].second);
            ++i;
            ++j;
        }
    }
    return out;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
    std::uint64_t da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    // Same degree: lexicographic with earlier variables dominating. A larger
    // exponent on the earliest differing variable makes the monomial larger.
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() && j < b.factors.size()) {
        if (a.factors[i].first != b.factors[j].first) {
            // The monomial owning the earlier variable is lex-larger.
            return a.factors[i].first > b.factors[j].first;
        }
        if (a.factors[i].second != b.factors[j].second)
            return a.factors[i].second < b.factors[j].second;
        ++i;
        ++j;
    }
    // One is a prefix of the other with equal degree: impossible unless equal.
    return false;
}

Poly Poly::constant(VarCtx ctx, const Rat& c) {
    Poly p(std::move(ctx));
    if (!murphy::is_zero(c)) p.terms_.emplace(Monomial{}, c);
    return p;
}

Poly Poly::variable(VarCtx ctx, std::uint32_t idx) {
    MURPHY_CHECK(ctx && idx < ctx->size(), "variable index out of range");
    Poly p(std::move(ctx));
    Monomial m;
    m.factors.emplace_back(idx, 1);
    p.terms_.emplace(m, Rat(1));
    return p;
}

std::pair<Monomial, Rat> Poly::leading() const {
    MURPHY_CHECK(!terms_.empty(), "leading term of zero polynomial");
    auto it = std::prev(terms_.end());
    return {it->first, it->second};
}

std::int64_t Poly::degree() const {
    if (terms_.empty()) return -1;
    return static_cast<std::int64_t>(std::prev(terms_.end())->first.degree());
}

std::int64_t Poly::order() const {
    if (terms_.empty()) return -1;
    return static_cast<std::int64_t>(terms_.begin()->first.degree());
}

void Poly::add_term(const Monomial& m, const Rat& c) {
    if (murphy::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (murphy::is_zero(it->second)) terms_.erase(it);
    }
}

Rat Poly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

Poly Poly::operator+(const Poly& o) const {
    Poly out = *this;
    for (auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

Poly Poly::operator-(const Poly& o) const {
    Poly out = *this;
    for (auto& [m, c] : o.terms_) out.add_term(m, -c);
    return out;
}

Poly Poly::operator-() const {
    Poly out(ctx_);
    for (auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Poly Poly::operator*(const Poly& o) const {
    Poly out(ctx_ ? ctx_ : o.ctx_);
    for (auto& [ma, ca] : terms_)
        for (auto& [mb, cb] : o.terms_) out.add_term(ma.times(mb), ca * cb);
    return out;
}

Poly Poly::scaled(const Rat& c) const {
    Poly out(ctx_);
    if (murphy::is_zero(c)) return out;
    for (auto& [m, k] : terms_) out.terms_.emplace(m, k * c);
    return out;
}

Poly Poly::pow(std::uint32_t e) const {
    Poly out = Poly::constant(ctx_, Rat(1));
    Poly base = *this;
    while (e > 0) {
        if (e & 1u) out = out * base;
        base = base * base;
        e >>= 1u;
    }
    return out;
}

bool Poly::operator==(const Poly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt)
        if (!(it->first == jt->first) || it->second != jt->second) return false;
    return true;
}

Rat Poly::eval(std::span<const Rat> point) const {
    MURPHY_REQUIRE(point.size() == arity(), "evaluation point arity mismatch");
    Rat total(0);
    for (auto& [m, c] : terms_) {
        Rat v = c;
        for (auto& [var, e] : m.factors) {
            Rat p(1);
            Rat base = point[var];
            for (std::uint32_t k = 0; k < e; ++k) p *= base;
            v *= p;
        }
        total += v;
    }
    return total;
}

Poly Poly::derivative(std::uint32_t var) const {
    Poly out(ctx_);
    for (auto& [m, c] : terms_) {
        std::uint32_t e = m.exponent(var);
        if (e == 0) continue;
        Monomial dm;
        for (auto& [v, k] : m.factors) {
            if (v == var) {
                if (k > 1) dm.factors.emplace_back(v, k - 1);
            } else {
                dm.factors.emplace_back(v, k);
            }
        }
        out.add_term(dm, c * Rat(e));
    }
    return out;
}

Poly Poly::translated(std::span<const Rat> point) const {
    MURPHY_REQUIRE(point.size() == arity(), "translation point arity mismatch");
    Poly out(ctx_);
    for (auto& [m, c] : terms_) {
        // Expand prod (x_v + p_v)^e term by term.
        Poly term = Poly::constant(ctx_, c);
        for (auto& [v, e] : m.factors) {
            Poly shifted = Poly::variable(ctx_, v) + Poly::constant(ctx_, point[v]);
            term = term * shifted.pow(e);
        }
        out = out + term;
    }
    return out;
}

Poly Poly::substituted(std::uint32_t var, const Poly& replacement) const {
    Poly out(ctx_);
    for (auto& [m, c] : terms_) {
        Poly term = Poly::constant(ctx_, c);
        Poly rest(ctx_);
        Monomial stripped;
        std::uint32_t e = 0;
        for (auto& [v, k] : m.factors) {
            if (v == var)
                e = k;
            else
                stripped.factors.emplace_back(v, k);
        }
        Poly base(ctx_);
        base.add_term(stripped, c);
        out = out + base * replacement.pow(e);
    }
    return out;
}

Poly Poly::truncated(std::uint64_t bound) const {
    Poly out(ctx_);
    for (auto& [m, c] : terms_)
        if (m.degree() < bound) out.terms_.emplace(m, c);
    return out;
}

Poly Poly::homogeneous_part(std::uint64_t deg) const {
    Poly out(ctx_);
    for (auto& [m, c] : terms_)
        if (m.degree() == deg) out.terms_.emplace(m, c);
    return out;
}

Poly Poly::mul_trunc(const Poly& o, std::uint64_t bound) const {
    Poly out(ctx_ ? ctx_ : o.ctx_);
    for (auto& [ma, ca] : terms_) {
        std::uint64_t da = ma.degree();
        if (da >= bound) continue;
        for (auto& [mb, cb] : o.terms_) {
            if (da + mb.degree() >= bound) continue;
            out.add_term(ma.times(mb), ca * cb);
        }
    }
    return out;
}

Poly Poly::subst_trunc(std::uint32_t var, const Poly& replacement, std::uint64_t bound) const {
    // Bucket by exponent of `var`, then Horner over truncated products.
    std::map<std::uint32_t, Poly> buckets;
    std::uint32_t max_e = 0;
    for (auto& [m, c] : terms_) {
        std::uint32_t e = m.exponent(var);
        max_e = std::max(max_e, e);
        Monomial stripped;
        for (auto& [v, k] : m.factors)
            if (v != var) stripped.factors.emplace_back(v, k);
        auto [it, ins] = buckets.try_emplace(e, Poly(ctx_));
        it->second.add_term(stripped, c);
    }
    Poly out(ctx_);
    for (std::uint32_t e = max_e + 1; e-- > 0;) {
        out = out.mul_trunc(replacement, bound);
        auto it = buckets.find(e);
        if (it != buckets.end()) out = out + it->second.truncated(bound);
    }
    return out;
}

Poly Poly::inverse_trunc(std::uint64_t bound) const {
    Rat c0 = constant_term();
    MURPHY_CHECK(!murphy::is_zero(c0), "inverse of non-unit series");
    // 1/(c0 + m) = (1/c0) * sum (-m/c0)^k, m has positive order.
    Poly m = (*this - Poly::constant(ctx_, c0)).scaled(Rat(-1) / c0);
    Poly out = Poly::constant(ctx_, Rat(1));
    Poly power = Poly::constant(ctx_, Rat(1));
    for (std::uint64_t k = 1; k < bound; ++k) {
        power = power.mul_trunc(m, bound);
        if (power.is_zero()) break;
        out = out + power;
    }
    return out.scaled(Rat(1) / c0);
}

std::vector<std::uint32_t> Poly::support() const {
    std::vector<bool> seen(arity(), false);
    for (auto& [m, c] : terms_)
        for (auto& [v, e] : m.factors) seen[v] = true;
    std::vector<std::uint32_t> out;
    for (std::uint32_t v = 0; v < seen.size(); ++v)
        if (seen[v]) out.push_back(v);
    return out;
}

Poly Poly::remapped(VarCtx new_ctx, std::span<const std::uint32_t> old_to_new) const {
    Poly out(std::move(new_ctx));
    for (auto& [m, c] : terms_) {
        Monomial nm;
        for (auto& [v, e] : m.factors) {
            MURPHY_CHECK(v < old_to_new.size() && old_to_new[v] != UINT32_MAX,
                         "remap drops an occurring variable");
            nm.factors.emplace_back(old_to_new[v], e);
        }
        std::sort(nm.factors.begin(), nm.factors.end());
        out.add_term(nm, c);
    }
    return out;
}

Poly Poly::divided_exact(const Poly& divisor) const {
    MURPHY_CHECK(!divisor.is_zero(), "division by zero polynomial");
    Poly quotient(ctx_);
    Poly rem = *this;
    auto [dm, dc] = divisor.leading();
    while (!rem.is_zero()) {
        auto [rm, rc] = rem.leading();
        // Leading monomial of the remainder must be divisible.
        Monomial q;
        bool ok = true;
        std::size_t i = 0;
        for (auto& [v, e] : rm.factors) {
            std::uint32_t de = dm.exponent(v);
            if (de > e) {
                ok = false;
                break;
            }
            if (e > de) q.factors.emplace_back(v, e - de);
        }
        for (auto& [v, e] : dm.factors)
            if (rm.exponent(v) < e) ok = false;
        (void)i;
        MURPHY_CHECK(ok, "inexact polynomial division");
        Poly t(ctx_);
        t.add_term(q, rc / dc);
        quotient = quotient + t;
        rem = rem - t * divisor;
    }
    return quotient;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    // grlex descending.
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Rat& c = it->second;
        bool neg = sgn(c) < 0;
        Rat a = abs(c);
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        std::string mono;
        for (auto& [v, e] : it->first.factors) {
            if (!mono.empty()) mono += "*";
            mono += (*ctx_)[v];
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty()) {
            out += rat_to_string(a);
        } else if (a == 1) {
            out += mono;
        } else {
            out += rat_to_string(a) + "*" + mono;
        }
    }
    return out;
}

namespace {

// Recursive-descent parser for the polynomial grammar.
class Parser {
  public:
    Parser(const std::string& text, const VarCtx& ctx) : s_(text), ctx_(ctx) {}

    Poly parse() {
        Poly p = expr();
        skip_ws();
        MURPHY_REQUIRE(pos_ == s_.size(), "trailing input in polynomial: " + s_);
        return p;
    }

  private:
    void skip_ws() {
        while (pos_ < s_.size() && isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Poly expr() {
        bool neg = false;
        skip_ws();
        while (true) {
            if (eat('-'))
                neg = !neg;
            else if (eat('+'))
                ;
            else
                break;
        }
        Poly p = term();
        if (neg) p = -p;
        while (true) {
            if (eat('+'))
                p = p + term();
            else if (eat('-'))
                p = p - term();
            else
                break;
        }
        return p;
    }

    Poly term() {
        Poly p = factor();
        while (eat('*')) p = p * factor();
        return p;
    }

    Poly factor() {
        Poly base = atom();
        if (eat('^')) {
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < s_.size() && isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            MURPHY_REQUIRE(pos_ > start, "missing exponent in polynomial: " + s_);
            unsigned long e = std::stoul(s_.substr(start, pos_ - start));
            MURPHY_REQUIRE(e <= 1u << 20, "exponent too large");
            base = base.pow(static_cast<std::uint32_t>(e));
        }
        return base;
    }

    Poly atom() {
        skip_ws();
        MURPHY_REQUIRE(pos_ < s_.size(), "unexpected end of polynomial: " + s_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            MURPHY_REQUIRE(eat(')'), "missing ')' in polynomial: " + s_);
            return p;
        }
        if (c == '-') {
            ++pos_;
            return -atom();
        }
        if (isdigit(static_cast<unsigned char>(c))) return literal();
        if (isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        throw input_error(std::string("unexpected character '") + c + "' in polynomial: " + s_);
    }

    Poly literal() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string num = s_.substr(start, pos_ - start);
        // A '/' directly followed by digits is a rational literal.
        std::size_t save = pos_;
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '/') {
            std::size_t slash = pos_++;
            skip_ws();
            std::size_t dstart = pos_;
            while (pos_ < s_.size() && isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ > dstart) return Poly::constant(ctx_, parse_rat(num + "/" + s_.substr(dstart, pos_ - dstart)));
            pos_ = slash;
        } else {
            pos_ = save;
        }
        return Poly::constant(ctx_, parse_rat(num));
    }

    Poly identifier() {
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        std::string name = s_.substr(start, pos_ - start);
        for (std::uint32_t i = 0; i < ctx_->size(); ++i)
            if ((*ctx_)[i] == name) return Poly::variable(ctx_, i);
        throw input_error("unknown variable '" + name + "' in polynomial: " + s_);
    }

    const std::string& s_;
    const VarCtx& ctx_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const std::string& text, const VarCtx& ctx) {
    return Parser(text, ctx).parse();
}

}  // namespace murphy
