#include "murphy/rational.hpp"

#include "murphy/errors.hpp"

namespace murphy {

Rat parse_rat(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    MURPHY_REQUIRE(!s.empty(), "empty rational literal");
    std::size_t pos = 0;
    auto digits = [&](bool sign_ok) {
        if (sign_ok && pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
        std::size_t start = pos;
        while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        MURPHY_REQUIRE(pos > start, "malformed rational literal: " + text);
    };
    digits(true);
    if (pos < s.size()) {
        MURPHY_REQUIRE(s[pos] == '/', "malformed rational literal: " + text);
        ++pos;
        digits(false);
        MURPHY_REQUIRE(pos == s.size(), "malformed rational literal: " + text);
    }
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        throw input_error("malformed rational literal: " + text);
    MURPHY_REQUIRE(sgn(Rat(q.get_den())) != 0, "zero denominator: " + text);
    q.canonicalize();
    return q;
}

std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::optional<Int> integer_cube_root(const Int& n) {
    Int r;
    // mpz_root returns nonzero iff the root is exact.
    bool exact = mpz_root(r.get_mpz_t(), n.get_mpz_t(), 3) != 0;
    if (!exact) return std::nullopt;
    return r;
}

std::optional<Rat> rational_cube_root(const Rat& q) {
    auto num = integer_cube_root(q.get_num());
    if (!num) return std::nullopt;
    auto den = integer_cube_root(q.get_den());
    if (!den) return std::nullopt;
    Rat r(*num, *den);
    r.canonicalize();
    return r;
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace murphy
