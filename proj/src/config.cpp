#include "murphy/config.hpp"

#include <algorithm>
#include <unordered_map>

#include "murphy/errors.hpp"

namespace murphy {

void Configuration::normalize() {
    std::sort(on.begin(), on.end());
    on.erase(std::unique(on.begin(), on.end()), on.end());
}

bool Configuration::is_on(std::uint32_t point, std::uint32_t line) const {
    return std::binary_search(on.begin(), on.end(), std::make_pair(point, line));
}

std::vector<std::vector<std::uint32_t>> Configuration::points_per_line() const {
    std::vector<std::vector<std::uint32_t>> out(n);
    for (auto& [p, l] : on) out[l].push_back(p);
    for (auto& v : out) std::sort(v.begin(), v.end());
    return out;
}

std::vector<std::vector<std::uint32_t>> Configuration::lines_per_point() const {
    std::vector<std::vector<std::uint32_t>> out(m);
    for (auto& [p, l] : on) out[p].push_back(l);
    for (auto& v : out) std::sort(v.begin(), v.end());
    return out;
}

std::array<std::array<Rat, 3>, 4> frame_points() {
    return {{{Rat(1), Rat(0), Rat(0)},
             {Rat(0), Rat(1), Rat(0)},
             {Rat(0), Rat(0), Rat(1)},
             {Rat(1), Rat(1), Rat(1)}}};
}

std::array<Rat, 3> projective_normalize(const std::array<Rat, 3>& v) {
    for (int i = 0; i < 3; ++i) {
        if (!is_zero(v[i])) {
            return {v[0] / v[i], v[1] / v[i], v[2] / v[i]};
        }
    }
    throw input_error("zero coordinate triple");
}

std::string projective_key(const std::array<Rat, 3>& v) {
    auto n = projective_normalize(v);
    return rat_to_string(n[0]) + "," + rat_to_string(n[1]) + "," + rat_to_string(n[2]);
}

bool projectively_equal(const std::array<Rat, 3>& a, const std::array<Rat, 3>& b) {
    // All 2x2 minors of the 2x3 matrix [a; b] vanish.
    return is_zero(a[0] * b[1] - a[1] * b[0]) && is_zero(a[0] * b[2] - a[2] * b[0]) &&
           is_zero(a[1] * b[2] - a[2] * b[1]);
}

Rat dot3(const std::array<Rat, 3>& p, const std::array<Rat, 3>& l) {
    return p[0] * l[0] + p[1] * l[1] + p[2] * l[2];
}

std::array<Rat, 3> cross3(const std::array<Rat, 3>& a, const std::array<Rat, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Report validate_configuration(const Configuration& cfg) {
    Report rep;
    rep.add("points >= 4", cfg.m >= 4, cfg.m >= 4 ? "" : "m = " + std::to_string(cfg.m));

    bool table_ok = true;
    std::string table_detail;
    for (auto& [p, l] : cfg.on) {
        if (p >= cfg.m || l >= cfg.n) {
            table_ok = false;
            table_detail = "pair (" + std::to_string(p + 1) + "," + std::to_string(l + 1) +
                           ") out of range";
            break;
        }
    }
    rep.add("table well-formed", table_ok, table_detail);
    if (!table_ok) return rep;

    auto per_line = cfg.points_per_line();

    bool size_ok = true;
    std::string size_detail;
    for (std::uint32_t l = 0; l < cfg.n; ++l) {
        if (per_line[l].size() < 3) {
            size_ok = false;
            size_detail = "line " + std::to_string(l + 1) + " carries " +
                          std::to_string(per_line[l].size()) + " marked points";
            break;
        }
    }
    rep.add("every line has >= 3 marked points", size_ok, size_detail);

    // Every pair of lines must share a marked point. Cover pairs through the
    // points rather than intersecting line sets pairwise.
    bool pair_ok = true;
    std::string pair_detail;
    if (cfg.n >= 2) {
        std::vector<bool> covered(static_cast<std::size_t>(cfg.n) * cfg.n, false);
        auto per_point = cfg.lines_per_point();
        for (auto& lines : per_point)
            for (std::size_t i = 0; i < lines.size(); ++i)
                for (std::size_t j = i + 1; j < lines.size(); ++j) {
                    covered[static_cast<std::size_t>(lines[i]) * cfg.n + lines[j]] = true;
                }
        for (std::uint32_t a = 0; a < cfg.n && pair_ok; ++a)
            for (std::uint32_t b = a + 1; b < cfg.n; ++b) {
                if (!covered[static_cast<std::size_t>(a) * cfg.n + b]) {
                    pair_ok = false;
                    pair_detail = "lines " + std::to_string(a + 1) + " and " +
                                  std::to_string(b + 1) + " share no marked point";
                    break;
                }
            }
    }
    rep.add("every pair of lines shares a marked point", pair_ok, pair_detail);
    return rep;
}

namespace {

// Residues of a rational triple modulo a word-size prime, if every
// denominator is invertible.
struct ModTriple {
    bool ok = false;
    std::array<std::uint64_t, 3> r{};
};

std::uint64_t mod_of(const Rat& q, std::uint64_t p) {
    Int num = q.get_num() % Int(static_cast<unsigned long>(p));
    Int den = q.get_den() % Int(static_cast<unsigned long>(p));
    std::uint64_t n = mpz_get_ui(num.get_mpz_t());
    if (sgn(q.get_num()) < 0 && n != 0) n = p - n;
    std::uint64_t d = mpz_get_ui(den.get_mpz_t());
    if (d == 0) return p;  // sentinel: denominator not invertible
    // Fermat inverse.
    std::uint64_t inv = 1, base = d, e = p - 2;
    while (e) {
        if (e & 1) inv = static_cast<std::uint64_t>((__uint128_t)inv * base % p);
        base = static_cast<std::uint64_t>((__uint128_t)base * base % p);
        e >>= 1;
    }
    return static_cast<std::uint64_t>((__uint128_t)n * inv % p);
}

ModTriple reduce_triple(const std::array<Rat, 3>& v, std::uint64_t p) {
    ModTriple t;
    for (int i = 0; i < 3; ++i) {
        std::uint64_t r = mod_of(v[i], p);
        if (r == p) return t;  // fall back to exact for this element
        t.r[i] = r;
    }
    t.ok = true;
    return t;
}

}  // namespace

Report verify_witness(const Configuration& cfg, const Witness& w) {
    MURPHY_REQUIRE(w.points.size() == cfg.m, "witness point count mismatch");
    MURPHY_REQUIRE(w.lines.size() == cfg.n, "witness line count mismatch");
    for (auto& p : w.points) (void)projective_normalize(p);  // throws on zero triple
    for (auto& l : w.lines) (void)projective_normalize(l);

    Report rep;

    // Frame pinning.
    auto frame = frame_points();
    bool frame_ok = true;
    std::string frame_detail;
    for (std::uint32_t i = 0; i < 4 && i < cfg.m; ++i) {
        if (!projectively_equal(w.points[i], frame[i])) {
            frame_ok = false;
            frame_detail = "point " + std::to_string(i + 1) + " is not the pinned frame point";
            break;
        }
    }
    rep.add("frame points pinned", frame_ok, frame_detail);

    // Pairwise distinctness via canonical projective keys.
    auto distinct = [&rep](const std::vector<std::array<Rat, 3>>& items, const char* what) {
        std::unordered_map<std::string, std::uint32_t> seen;
        seen.reserve(items.size() * 2);
        for (std::uint32_t i = 0; i < items.size(); ++i) {
            auto [it, inserted] = seen.emplace(projective_key(items[i]), i);
            if (!inserted) {
                rep.add(std::string(what) + " pairwise distinct", false,
                        std::string(what) + " " + std::to_string(it->second + 1) + " and " +
                            std::to_string(i + 1) + " coincide");
                return;
            }
        }
        rep.add(std::string(what) + " pairwise distinct", true);
    };
    distinct(w.points, "points");
    distinct(w.lines, "lines");

    // Required incidences, exact.
    bool on_ok = true;
    std::string on_detail;
    for (auto& [p, l] : cfg.on) {
        if (!is_zero(dot3(w.points[p], w.lines[l]))) {
            on_ok = false;
            on_detail = "required incidence (p" + std::to_string(p + 1) + ", l" +
                        std::to_string(l + 1) + ") fails";
            break;
        }
    }
    rep.add("required incidences hold", on_ok, on_detail);

    // Required non-incidences. Screen modulo two primes; every residual zero
    // is confirmed exactly, so no conclusion depends on the modular pass.
    constexpr std::uint64_t P1 = 2305843009213693951ull;  // 2^61 - 1, prime
    constexpr std::uint64_t P2 = 2147483647ull;           // 2^31 - 1, prime
    std::vector<ModTriple> pts1(cfg.m), pts2(cfg.m), lns1(cfg.n), lns2(cfg.n);
    for (std::uint32_t i = 0; i < cfg.m; ++i) {
        pts1[i] = reduce_triple(w.points[i], P1);
        pts2[i] = reduce_triple(w.points[i], P2);
    }
    for (std::uint32_t j = 0; j < cfg.n; ++j) {
        lns1[j] = reduce_triple(w.lines[j], P1);
        lns2[j] = reduce_triple(w.lines[j], P2);
    }
    auto mod_dot = [](const ModTriple& a, const ModTriple& b, std::uint64_t p) {
        __uint128_t s = 0;
        for (int i = 0; i < 3; ++i) s += (__uint128_t)a.r[i] * b.r[i];
        return static_cast<std::uint64_t>(s % p);
    };
    bool off_ok = true;
    std::string off_detail;
    for (std::uint32_t i = 0; i < cfg.m && off_ok; ++i) {
        for (std::uint32_t j = 0; j < cfg.n; ++j) {
            if (cfg.is_on(i, j)) continue;
            bool maybe_zero = true;
            if (pts1[i].ok && lns1[j].ok && mod_dot(pts1[i], lns1[j], P1) != 0) maybe_zero = false;
            if (maybe_zero && pts2[i].ok && lns2[j].ok && mod_dot(pts2[i], lns2[j], P2) != 0)
                maybe_zero = false;
            if (maybe_zero && is_zero(dot3(w.points[i], w.lines[j]))) {
                off_ok = false;
                off_detail = "required non-incidence (p" + std::to_string(i + 1) + ", l" +
                             std::to_string(j + 1) + ") fails";
                break;
            }
        }
    }
    rep.add("required non-incidences hold", off_ok, off_detail);
    return rep;
}

}  // namespace murphy
