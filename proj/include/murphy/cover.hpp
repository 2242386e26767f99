#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "murphy/config.hpp"
#include "murphy/picard.hpp"

namespace murphy {

// Element of (Z/p)^3, used both for the group and its character dual.
struct GElt {
    unsigned p = 2;
    std::array<unsigned, 3> v{0, 0, 0};

    bool is_zero() const { return v[0] == 0 && v[1] == 0 && v[2] == 0; }
    bool operator==(const GElt& o) const { return p == o.p && v == o.v; }
    bool operator<(const GElt& o) const { return v < o.v; }
    GElt negated() const { return {p, {(p - v[0]) % p, (p - v[1]) % p, (p - v[2]) % p}}; }
    std::string to_string() const;  // "(a,b,c)"
};

GElt parse_gelt(const std::string& text, unsigned p);
std::vector<GElt> all_elements(unsigned p);

// <sigma, chi> = sum sigma_i chi_i mod p, lifted to {0, ..., p-1}.
unsigned pairing(const GElt& sigma, const GElt& chi);

// Linear independence over Z/p; for two nonzero vectors this means neither
// is a scalar multiple of the other.
bool independent(const GElt& a, const GElt& b);

// Branch data of a (Z/p)^3 cover of the blow-up surface: D maps group
// elements to branch classes (D_0 = 0), L maps characters to the classes of
// the eigensheaf summands. Invariant: p*L_chi = sum_sigma <sigma,chi>*D_sigma.
struct CoverData {
    unsigned p = 2;
    std::size_t m = 0;
    std::map<GElt, PicClass> D;
    std::map<GElt, PicClass> L;
};

PicClass cover_D(const CoverData& c, const GElt& sigma);
PicClass cover_L(const CoverData& c, const GElt& chi);

// Solves p*L_chi = sum <sigma,chi> D_sigma for all characters. Requires
// D_0 = 0. Throws input_error naming the offending character and coordinate
// if some sum is not divisible by p.
std::map<GElt, PicClass> cover_condition_solve(unsigned p, std::size_t m,
                                               const std::map<GElt, PicClass>& D);

// Re-derives L from D and reports any mismatch per character.
Report check_cover_condition(const CoverData& c);

// Symbolic class alpha*A + gamma*C with rational coefficients; renders as
// "2A", "(3A+C)/2", "(16A+2C)/3", ...
struct SymClass {
    Rat a{0}, c{0};
    std::string to_string() const;
    bool operator==(const SymClass& o) const { return a == o.a && c == o.c; }
};

// One of the two key branch-data constructions, with the symbolic table
// kept alongside the concrete lattice classes.
struct CoverExample {
    CoverData data;
    PicClass A, C;
    std::map<GElt, SymClass> D_sym, L_sym;
    GElt sigma0, chi0;  // chi0 meaningful only for p = 3
};

// p = 2: D_{sigma0} = C, D_sigma = A otherwise; L_chi = 2A on <sigma0,chi> = 0
// (chi != 0) and (3A+C)/2 on <sigma0,chi> = 1. Requires A == C (mod 2).
CoverExample example_p2(const Configuration& cfg, const PicClass& A, const GElt& sigma0);

// p = 3: D_{sigma0} = C, D_sigma = A on <sigma,chi0> = 1 minus sigma0, else 0;
// L per the five-case table including L_{-chi0} = (16A+2C)/3.
// Requires A == C (mod 3) and <sigma0, chi0> = 1.
CoverExample example_p3(const Configuration& cfg, const PicClass& A, const GElt& sigma0,
                        const GElt& chi0);

// Lexicographically least character pairing to p-1 with each given sigma
// (at most two, linearly independent).
GElt separating_character(unsigned p, std::span<const GElt> sigmas);

// Sum of the branch classes; for the example constructions asserts the
// canonical relation sum D = C + qA with q = 6 (p=2) or q = 8 (p=3).
PicClass branch_divisor_sum(const CoverData& c);
struct BranchSum {
    PicClass total;
    unsigned q = 0;
    bool matches = false;
};
BranchSum branch_sum(const CoverExample& ex);

// Exact checks of the cover hypotheses that the data permits: components of
// the marked-line transform pairwise disjoint (from the table), inertia
// independence for meeting branch pairs; genericity of the A-divisors is
// recorded as an assumption, not verified.
Report check_branch_hypotheses(const Configuration& cfg, const CoverData& c);

// chi(O) and K^2 of the covering surface by Riemann-Roch bookkeeping on the
// rational base surface, plus p_g under regularity of the cover.
// Throws input_error if either value fails to be an integer.
struct CoverInvariants {
    Int chi_O;
    Int K2;
    Int p_g;
};
CoverInvariants cover_invariants(const CoverData& c);

// Necessary-only ampleness screen for a candidate class A: positive
// intersection with H, with each E_i, with each marked-line transform, and
// A^2 > 0. Labeled "necessary only" in reports.
Report ample_necessary_conditions(const Configuration& cfg, const PicClass& A);

}  // namespace murphy
