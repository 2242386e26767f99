#include "murphy/cover.hpp"

#include <algorithm>

#include "murphy/errors.hpp"

namespace murphy {

std::string GElt::to_string() const {
    return "(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," + std::to_string(v[2]) +
           ")";
}

GElt parse_gelt(const std::string& text, unsigned p) {
    MURPHY_REQUIRE(p == 2 || p == 3, "p must be 2 or 3");
    GElt g;
    g.p = p;
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    MURPHY_REQUIRE(s.size() >= 7 && s.front() == '(' && s.back() == ')',
                   "group element must look like (a,b,c): " + text);
    s = s.substr(1, s.size() - 2);
    std::size_t c1 = s.find(','), c2 = s.find(',', c1 + 1);
    MURPHY_REQUIRE(c1 != std::string::npos && c2 != std::string::npos,
                   "group element must look like (a,b,c): " + text);
    std::array<std::string, 3> parts{s.substr(0, c1), s.substr(c1 + 1, c2 - c1 - 1),
                                     s.substr(c2 + 1)};
    for (int i = 0; i < 3; ++i) {
        MURPHY_REQUIRE(!parts[i].empty() &&
                           parts[i].find_first_not_of("0123456789") == std::string::npos,
                       "group element coordinates must be nonnegative integers: " + text);
        unsigned val = static_cast<unsigned>(std::stoul(parts[i]));
        MURPHY_REQUIRE(val < p, "coordinate " + parts[i] + " out of range mod " +
                                    std::to_string(p));
        g.v[static_cast<std::size_t>(i)] = val;
    }
    return g;
}

std::vector<GElt> all_elements(unsigned p) {
    MURPHY_REQUIRE(p == 2 || p == 3, "p must be 2 or 3");
    std::vector<GElt> out;
    for (unsigned a = 0; a < p; ++a)
        for (unsigned b = 0; b < p; ++b)
            for (unsigned c = 0; c < p; ++c) out.push_back({p, {a, b, c}});
    return out;
}

unsigned pairing(const GElt& sigma, const GElt& chi) {
    MURPHY_REQUIRE(sigma.p == chi.p, "pairing across different groups");
    unsigned s = 0;
    for (int i = 0; i < 3; ++i) s += sigma.v[i] * chi.v[i];
    return s % sigma.p;
}

bool independent(const GElt& a, const GElt& b) {
    if (a.is_zero() || b.is_zero()) return false;
    // All 2x2 minors vanish iff the vectors are proportional over Z/p.
    unsigned p = a.p;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if ((a.v[i] * b.v[j]) % p != (a.v[j] * b.v[i]) % p) return true;
    return false;
}

PicClass cover_D(const CoverData& c, const GElt& sigma) {
    auto it = c.D.find(sigma);
    return it == c.D.end() ? pic_zero(c.m) : it->second;
}

PicClass cover_L(const CoverData& c, const GElt& chi) {
    auto it = c.L.find(chi);
    return it == c.L.end() ? pic_zero(c.m) : it->second;
}

std::map<GElt, PicClass> cover_condition_solve(unsigned p, std::size_t m,
                                               const std::map<GElt, PicClass>& D) {
    GElt zero{p, {0, 0, 0}};
    auto it = D.find(zero);
    MURPHY_REQUIRE(it == D.end() || it->second == pic_zero(m), "D_0 must be zero");
    std::map<GElt, PicClass> L;
    for (const GElt& chi : all_elements(p)) {
        PicClass total = pic_zero(m);
        for (auto& [sigma, cls] : D) total = pic_add(total, pic_scale(Int(pairing(sigma, chi)), cls));
        auto quot = pic_divide(total, Int(p));
        if (!quot) {
            // Find the offending coordinate for the report.
            std::string coord = total.h % p != 0 ? "H" : "";
            for (std::size_t i = 0; coord.empty() && i < total.e.size(); ++i)
                if (total.e[i] % p != 0) coord = "E" + std::to_string(i + 1);
            throw input_error("cover condition fails at chi = " + chi.to_string() +
                              ": coefficient of " + coord + " is not divisible by " +
                              std::to_string(p));
        }
        L.emplace(chi, *quot);
    }
    return L;
}

Report check_cover_condition(const CoverData& c) {
    Report rep;
    GElt zero{c.p, {0, 0, 0}};
    rep.add("D_0 = 0", cover_D(c, zero) == pic_zero(c.m));
    rep.add("L_0 = 0", cover_L(c, zero) == pic_zero(c.m));
    bool all_ok = true;
    std::string detail;
    for (const GElt& chi : all_elements(c.p)) {
        PicClass total = pic_zero(c.m);
        for (auto& [sigma, cls] : c.D)
            total = pic_add(total, pic_scale(Int(pairing(sigma, chi)), cls));
        if (!(pic_scale(Int(c.p), cover_L(c, chi)) == total)) {
            all_ok = false;
            detail = "p*L differs from sum <sigma,chi> D at chi = " + chi.to_string();
            break;
        }
    }
    rep.add("cover condition p*L = sum <sigma,chi> D", all_ok, detail);
    return rep;
}

std::string SymClass::to_string() const {
    if (is_zero(a) && is_zero(c)) return "0";
    Int den = lcm(a.get_den(), c.get_den());
    Int na = Rat(a * den).get_num();
    Int nc = Rat(c * den).get_num();
    auto term = [](const Int& k, const char* sym) -> std::string {
        if (k == 0) return "";
        if (k == 1) return sym;
        return k.get_str() + sym;
    };
    std::string body = term(na, "A");
    std::string cterm = term(nc, "C");
    if (!cterm.empty()) body += (body.empty() ? "" : "+") + cterm;
    if (den == 1) return body;
    return "(" + body + ")/" + den.get_str();
}

namespace {

PicClass concrete(const SymClass& s, const PicClass& A, const PicClass& C) {
    // Compute over the common denominator; integrality is guaranteed by the
    // congruence precondition A == C (mod p).
    Int den = lcm(s.a.get_den(), s.c.get_den());
    PicClass total = pic_add(pic_scale(Int(Rat(s.a * den).get_num()), A),
                             pic_scale(Int(Rat(s.c * den).get_num()), C));
    auto q = pic_divide(total, den);
    MURPHY_REQUIRE(q.has_value(), "symbolic class is not integral under the given A");
    return *q;
}

}  // namespace

CoverExample example_p2(const Configuration& cfg, const PicClass& A, const GElt& sigma0) {
    MURPHY_REQUIRE(sigma0.p == 2 && !sigma0.is_zero(), "sigma0 must be nonzero in (Z/2)^3");
    PicClass C = branch_curve_class(cfg);
    MURPHY_REQUIRE(A.e.size() == C.e.size(), "A has the wrong lattice rank");
    MURPHY_REQUIRE(pic_congruent(A, C, Int(2)), "A must be congruent to C mod 2");

    CoverExample ex;
    ex.data.p = 2;
    ex.data.m = cfg.m;
    ex.A = A;
    ex.C = C;
    ex.sigma0 = sigma0;
    ex.chi0 = GElt{2, {0, 0, 0}};

    for (const GElt& sigma : all_elements(2)) {
        if (sigma.is_zero()) continue;
        if (sigma == sigma0) {
            ex.D_sym[sigma] = SymClass{Rat(0), Rat(1)};
            ex.data.D[sigma] = C;
        } else {
            ex.D_sym[sigma] = SymClass{Rat(1), Rat(0)};
            ex.data.D[sigma] = A;
        }
    }
    for (const GElt& chi : all_elements(2)) {
        SymClass s;
        if (chi.is_zero())
            s = SymClass{Rat(0), Rat(0)};
        else if (pairing(sigma0, chi) == 0)
            s = SymClass{Rat(2), Rat(0)};
        else
            s = SymClass{Rat(3, 2), Rat(1, 2)};
        ex.L_sym[chi] = s;
        ex.data.L[chi] = concrete(s, A, C);
    }
    MURPHY_CHECK(check_cover_condition(ex.data).pass(), "constructed data violates the cover condition");
    return ex;
}

CoverExample example_p3(const Configuration& cfg, const PicClass& A, const GElt& sigma0,
                        const GElt& chi0) {
    MURPHY_REQUIRE(sigma0.p == 3 && !sigma0.is_zero(), "sigma0 must be nonzero in (Z/3)^3");
    MURPHY_REQUIRE(chi0.p == 3 && pairing(sigma0, chi0) == 1, "<sigma0, chi0> must equal 1");
    PicClass C = branch_curve_class(cfg);
    MURPHY_REQUIRE(A.e.size() == C.e.size(), "A has the wrong lattice rank");
    MURPHY_REQUIRE(pic_congruent(A, C, Int(3)), "A must be congruent to C mod 3");

    CoverExample ex;
    ex.data.p = 3;
    ex.data.m = cfg.m;
    ex.A = A;
    ex.C = C;
    ex.sigma0 = sigma0;
    ex.chi0 = chi0;

    for (const GElt& sigma : all_elements(3)) {
        if (sigma.is_zero()) continue;
        if (sigma == sigma0) {
            ex.D_sym[sigma] = SymClass{Rat(0), Rat(1)};
            ex.data.D[sigma] = C;
        } else if (pairing(sigma, chi0) == 1) {
            ex.D_sym[sigma] = SymClass{Rat(1), Rat(0)};
            ex.data.D[sigma] = A;
        }
        // D_sigma = 0 otherwise: left out of the map.
    }
    GElt minus_chi0 = chi0.negated();
    for (const GElt& chi : all_elements(3)) {
        SymClass s;
        if (chi.is_zero())
            s = SymClass{Rat(0), Rat(0)};
        else if (chi == minus_chi0)
            s = SymClass{Rat(16, 3), Rat(2, 3)};
        else if (pairing(sigma0, chi) == 1)
            s = SymClass{Rat(8, 3), Rat(1, 3)};
        else if (pairing(sigma0, chi) == 0)
            s = SymClass{Rat(3), Rat(0)};
        else
            s = SymClass{Rat(7, 3), Rat(2, 3)};
        ex.L_sym[chi] = s;
        ex.data.L[chi] = concrete(s, A, C);
    }
    MURPHY_CHECK(check_cover_condition(ex.data).pass(), "constructed data violates the cover condition");
    // At most one of D_sigma, D_{-sigma} is nonzero.
    for (auto& [sigma, cls] : ex.data.D)
        MURPHY_CHECK(ex.data.D.find(sigma.negated()) == ex.data.D.end() || sigma == sigma.negated(),
                     "both D_sigma and D_{-sigma} are nonzero");
    return ex;
}

GElt separating_character(unsigned p, std::span<const GElt> sigmas) {
    MURPHY_REQUIRE(p == 2 || p == 3, "p must be 2 or 3");
    MURPHY_REQUIRE(sigmas.size() <= 2, "at most two inertia elements");
    for (auto& s : sigmas) MURPHY_REQUIRE(!s.is_zero(), "inertia elements must be nonzero");
    if (sigmas.size() == 2)
        MURPHY_REQUIRE(independent(sigmas[0], sigmas[1]),
                       "inertia elements must be linearly independent");
    for (const GElt& chi : all_elements(p)) {
        bool ok = true;
        for (auto& s : sigmas)
            if (pairing(s, chi) != p - 1) ok = false;
        if (ok) return chi;
    }
    throw internal_error("no separating character found in a rank-3 group");
}

PicClass branch_divisor_sum(const CoverData& c) {
    PicClass total = pic_zero(c.m);
    for (auto& [sigma, cls] : c.D) total = pic_add(total, cls);
    return total;
}

BranchSum branch_sum(const CoverExample& ex) {
    BranchSum out;
    out.total = branch_divisor_sum(ex.data);
    out.q = ex.data.p == 2 ? 6 : 8;
    PicClass expect = pic_add(ex.C, pic_scale(Int(out.q), ex.A));
    out.matches = (out.total == expect);
    MURPHY_REQUIRE(out.matches, "branch divisor sum differs from C + qA: corrupted data");
    return out;
}

Report check_branch_hypotheses(const Configuration& cfg, const CoverData& c) {
    Report rep;

    // (a) Components of the marked-line transform are pairwise disjoint:
    // every pair of marked lines shares exactly one marked (blown-up) point.
    auto per_line = cfg.points_per_line();
    bool disjoint_ok = true;
    std::string detail;
    for (std::uint32_t a = 0; a < cfg.n && disjoint_ok; ++a) {
        for (std::uint32_t b = a + 1; b < cfg.n; ++b) {
            std::vector<std::uint32_t> common;
            std::set_intersection(per_line[a].begin(), per_line[a].end(), per_line[b].begin(),
                                  per_line[b].end(), std::back_inserter(common));
            if (common.empty()) {
                disjoint_ok = false;
                detail = "lines " + std::to_string(a + 1) + "," + std::to_string(b + 1) +
                         " meet outside the blown-up points";
                break;
            }
            if (common.size() > 1) {
                disjoint_ok = false;
                detail = "lines " + std::to_string(a + 1) + "," + std::to_string(b + 1) +
                         " share two marked points";
                break;
            }
        }
    }
    rep.add("marked-line transforms pairwise disjoint", disjoint_ok, detail);

    // (b) Meeting branch components have independent inertia.
    bool indep_ok = true;
    std::string indep_detail;
    for (auto it = c.D.begin(); it != c.D.end() && indep_ok; ++it) {
        for (auto jt = std::next(it); jt != c.D.end(); ++jt) {
            if (intersect(it->second, jt->second) <= 0) continue;
            if (!independent(it->first, jt->first)) {
                indep_ok = false;
                indep_detail = "sigma = " + it->first.to_string() + ", sigma' = " +
                               jt->first.to_string() + " meet but are dependent";
                break;
            }
        }
    }
    rep.add("meeting branch pairs have independent inertia", indep_ok, indep_detail);

    rep.add("assumed: A-divisors general (transverse, avoiding triple points)", true,
            "assumption, not verified");
    return rep;
}

CoverInvariants cover_invariants(const CoverData& c) {
    PicClass K = canonical_class(c.m);
    // chi(O) = sum_chi [1 + (1/2) <-L, -L - K>], Riemann-Roch with chi(O_S)=1.
    Rat chi_total(0);
    for (const GElt& chi : all_elements(c.p)) {
        PicClass L = cover_L(c, chi);
        PicClass minusL = pic_scale(Int(-1), L);
        Int pairing_val = intersect(minusL, pic_sub(minusL, K));
        chi_total += Rat(1) + Rat(pairing_val) / 2;
    }
    MURPHY_REQUIRE(is_integer(chi_total), "chi(O) failed to be an integer: inconsistent data");

    // K^2 of the cover: p^3 <K + ((p-1)/p) sum D, same>, computed over the
    // common denominator p.
    PicClass sumD = branch_divisor_sum(c);
    PicClass scaled = pic_add(pic_scale(Int(c.p), K), pic_scale(Int(c.p - 1), sumD));
    Rat k2 = Rat(intersect(scaled, scaled)) * Rat(Int(c.p) * Int(c.p) * Int(c.p)) /
             Rat(Int(c.p) * Int(c.p));
    MURPHY_REQUIRE(is_integer(k2), "K^2 failed to be an integer: inconsistent data");

    CoverInvariants out;
    out.chi_O = chi_total.get_num();
    out.K2 = k2.get_num();
    out.p_g = out.chi_O - 1;  // q = 0 for these covers
    return out;
}

Report ample_necessary_conditions(const Configuration& cfg, const PicClass& A) {
    Report rep;
    PicClass H = pic_zero(cfg.m);
    H.h = 1;
    rep.add("necessary only: A.H > 0", intersect(A, H) > 0);
    bool e_ok = true;
    std::string detail;
    for (std::size_t i = 0; i < cfg.m; ++i) {
        PicClass E = pic_zero(cfg.m);
        E.e[i] = -1;
        if (intersect(A, E) <= 0) {
            e_ok = false;
            detail = "A.E" + std::to_string(i + 1) + " <= 0";
            break;
        }
    }
    rep.add("necessary only: A.E_i > 0", e_ok, detail);
    auto per_line = cfg.points_per_line();
    bool line_ok = true;
    std::string line_detail;
    for (std::uint32_t l = 0; l < cfg.n; ++l) {
        PicClass T = pic_zero(cfg.m);
        T.h = 1;
        for (std::uint32_t p : per_line[l]) T.e[p] = 1;
        if (intersect(A, T) <= 0) {
            line_ok = false;
            line_detail = "A meets the transform of line " + std::to_string(l + 1) +
                          " nonpositively";
            break;
        }
    }
    rep.add("necessary only: A meets every marked-line transform positively", line_ok,
            line_detail);
    rep.add("necessary only: A^2 > 0", intersect(A, A) > 0);
    return rep;
}

}  // namespace murphy
