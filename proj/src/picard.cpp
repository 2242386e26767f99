#include "murphy/picard.hpp"

#include "murphy/errors.hpp"

namespace murphy {

std::string PicClass::to_string() const {
    std::string out = h.get_str() + "H";
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        Int a = e[i];
        if (a > 0)
            out += " - " + a.get_str() + "E" + std::to_string(i + 1);
        else
            out += " + " + Int(-a).get_str() + "E" + std::to_string(i + 1);
    }
    return out;
}

PicClass pic_zero(std::size_t m) {
    PicClass c;
    c.e.assign(m, Int(0));
    return c;
}

PicClass pic_add(const PicClass& a, const PicClass& b) {
    MURPHY_REQUIRE(a.e.size() == b.e.size(), "lattice rank mismatch");
    PicClass out = a;
    out.h += b.h;
    for (std::size_t i = 0; i < out.e.size(); ++i) out.e[i] += b.e[i];
    return out;
}

PicClass pic_sub(const PicClass& a, const PicClass& b) {
    return pic_add(a, pic_scale(Int(-1), b));
}

PicClass pic_scale(const Int& k, const PicClass& a) {
    PicClass out = a;
    out.h *= k;
    for (auto& c : out.e) c *= k;
    return out;
}

Int intersect(const PicClass& a, const PicClass& b) {
    MURPHY_REQUIRE(a.e.size() == b.e.size(), "lattice rank mismatch");
    Int v = a.h * b.h;
    for (std::size_t i = 0; i < a.e.size(); ++i) v -= a.e[i] * b.e[i];
    return v;
}

PicClass canonical_class(std::size_t m) {
    PicClass k;
    k.h = -3;
    k.e.assign(m, Int(-1));
    return k;
}

bool pic_congruent(const PicClass& a, const PicClass& b, const Int& k) {
    MURPHY_REQUIRE(a.e.size() == b.e.size(), "lattice rank mismatch");
    if ((a.h - b.h) % k != 0) return false;
    for (std::size_t i = 0; i < a.e.size(); ++i)
        if ((a.e[i] - b.e[i]) % k != 0) return false;
    return true;
}

std::optional<PicClass> pic_divide(const PicClass& a, const Int& k) {
    PicClass out = a;
    if (a.h % k != 0) return std::nullopt;
    out.h = a.h / k;
    for (std::size_t i = 0; i < a.e.size(); ++i) {
        if (a.e[i] % k != 0) return std::nullopt;
        out.e[i] = a.e[i] / k;
    }
    return out;
}

PicClass branch_curve_class(const Configuration& cfg) {
    PicClass c = pic_zero(cfg.m);
    c.h = cfg.n;
    for (auto& [p, l] : cfg.on) c.e[p] += 1;
    return c;
}

}  // namespace murphy
