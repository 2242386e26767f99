#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace murphy {

// All arithmetic in the toolkit is exact; Rat is the only number type.
using Rat = mpq_class;
using Int = mpz_class;

// Parses "a", "-a", "a/b" (b > 0 after canonicalization). Throws input_error.
Rat parse_rat(const std::string& text);

// Canonical form "a" or "a/b"; round-trips through parse_rat.
std::string rat_to_string(const Rat& q);

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }
inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// |a| < |b| as exact rationals.
inline bool abs_less(const Rat& a, const Rat& b) { return cmp(abs(a), abs(b)) < 0; }

// Exact cube root of an integer if it is a perfect cube.
std::optional<Int> integer_cube_root(const Int& n);

// Exact cube root of a rational if both numerator and denominator are cubes.
std::optional<Rat> rational_cube_root(const Rat& q);

// FNV-1a over the canonical string; used for content digests and hashing.
std::uint64_t fnv1a(const std::string& bytes);

struct RatHash {
    std::size_t operator()(const Rat& q) const { return fnv1a(rat_to_string(q)); }
};

}  // namespace murphy
