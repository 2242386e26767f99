#include "murphy/encoder.hpp"

#include <algorithm>
#include <cstdlib>
#include <unordered_map>
#include <unordered_set>

#include "murphy/errors.hpp"

namespace murphy {

namespace {

using P3 = std::array<Rat, 3>;

bool is_zero3(const P3& v) { return is_zero(v[0]) && is_zero(v[1]) && is_zero(v[2]); }

P3 join(const P3& p, const P3& q) { return cross3(p, q); }   // line through two points
P3 meet(const P3& l, const P3& m) { return cross3(l, m); }   // intersection of two lines

P3 axis_point(const Rat& v) { return {v, Rat(0), Rat(1)}; }

// Signals a degenerate draw that a deeper position in the generic sequence
// may avoid.
struct Degenerate {
    std::string what;
};

// The auxiliary-point sequence: (2 + s mod 5, prime(s)); the environment
// variable MURPHY_SEED_SEQUENCE prepends an explicit list of primes for the
// second coordinate (testing hook).
class AuxSequence {
  public:
    explicit AuxSequence(std::size_t skip) {
        if (const char* env = std::getenv("MURPHY_SEED_SEQUENCE")) {
            std::string s(env);
            std::size_t pos = 0;
            while (pos < s.size()) {
                std::size_t comma = s.find(',', pos);
                if (comma == std::string::npos) comma = s.size();
                std::string tok = s.substr(pos, comma - pos);
                if (!tok.empty()) override_.push_back(std::stoul(tok));
                pos = comma + 1;
            }
        }
        for (std::size_t i = 0; i < skip; ++i) next();
    }

    std::pair<Rat, Rat> next() {
        std::size_t s = index_++;
        unsigned long second =
            s < override_.size() ? override_[s] : nth_prime(s - override_.size());
        return {Rat(2 + s % 5), Rat(second)};
    }

  private:
    static unsigned long nth_prime(std::size_t n) {
        unsigned long count = 0;
        for (unsigned long c = 2;; ++c) {
            bool prime = c >= 2;
            for (unsigned long d = 2; d * d <= c; ++d)
                if (c % d == 0) {
                    prime = false;
                    break;
                }
            if (prime && count++ == n) return c;
        }
    }

    std::vector<unsigned long> override_;
    std::size_t index_ = 0;
};

class ConstructionState {
  public:
    std::vector<P3> points;
    std::vector<std::string> point_names;
    std::vector<P3> lines;
    std::vector<std::vector<std::uint32_t>> line_members;   // per line, sorted later
    std::vector<std::vector<std::uint32_t>> point_lines;    // per point

    std::unordered_map<std::string, std::uint32_t> point_keys;
    std::unordered_map<std::string, std::uint32_t> line_keys;

    std::uint32_t add_point(const P3& coords, const std::string& name) {
        MURPHY_CHECK(!is_zero3(coords), "degenerate zero point");
        auto key = projective_key(coords);
        MURPHY_CHECK(point_keys.find(key) == point_keys.end(), "point already marked");
        std::uint32_t idx = static_cast<std::uint32_t>(points.size());
        points.push_back(coords);
        point_names.push_back(name);
        point_lines.emplace_back();
        point_keys.emplace(key, idx);
        return idx;
    }

    std::optional<std::uint32_t> find_point(const P3& coords) const {
        if (is_zero3(coords)) return std::nullopt;
        auto it = point_keys.find(projective_key(coords));
        if (it == point_keys.end()) return std::nullopt;
        return it->second;
    }

    std::uint32_t add_line(const P3& coords, std::vector<std::uint32_t> members,
                           const std::string& what) {
        MURPHY_CHECK(!is_zero3(coords), "degenerate zero line");
        auto key = projective_key(coords);
        if (line_keys.find(key) != line_keys.end()) throw Degenerate{"duplicate line: " + what};
        std::uint32_t idx = static_cast<std::uint32_t>(lines.size());
        lines.push_back(coords);
        line_keys.emplace(key, idx);
        line_members.push_back({});
        for (std::uint32_t p : members) add_membership(p, idx);
        return idx;
    }

    void add_membership(std::uint32_t point, std::uint32_t line) {
        MURPHY_CHECK(is_zero(dot3(points[point], lines[line])),
                     "declared incidence does not hold");
        line_members[line].push_back(point);
        point_lines[point].push_back(line);
    }

    bool is_member(std::uint32_t point, std::uint32_t line) const {
        auto& v = point_lines[point];
        return std::find(v.begin(), v.end(), line) != v.end();
    }

    // A new point must avoid every existing line except its declared ones.
    void check_new_point(const P3& coords, const std::vector<std::uint32_t>& declared) const {
        for (std::uint32_t l = 0; l < lines.size(); ++l) {
            if (std::find(declared.begin(), declared.end(), l) != declared.end()) continue;
            if (is_zero(dot3(coords, lines[l])))
                throw Degenerate{"new point accidentally on line " + std::to_string(l)};
        }
    }

    // A new line must avoid every existing point except its declared members.
    void check_new_line(const P3& coords, const std::vector<std::uint32_t>& declared) const {
        for (std::uint32_t p = 0; p < points.size(); ++p) {
            if (std::find(declared.begin(), declared.end(), p) != declared.end()) continue;
            if (is_zero(dot3(points[p], coords)))
                throw Degenerate{"existing point accidentally on a new line"};
        }
    }
};

struct GadgetDraft {
    // New points in creation order with their declared line sets filled
    // after line indices are known.
    std::vector<std::pair<std::string, P3>> new_points;
    std::vector<std::pair<P3, std::vector<int>>> new_lines;  // members as draft ids (see below)
};

class Encoder {
  public:
    Encoder(const AtomicSystem& atomic, std::size_t seq_skip)
        : atomic_(atomic), aux_(seq_skip) {}

    EncodeResult run() {
        MURPHY_REQUIRE(atomic_.values_distinct,
                       "encode needs pairwise distinct slot values; run separate_values first");
        for (auto& at : atomic_.atoms)
            MURPHY_CHECK(atomic_.atom_satisfied(at), "atom not satisfied by its witness values");

        build_frame();
        place_slots();
        for (auto& at : atomic_.atoms) build_gadget(at);
        mark_intersections();
        add_fillers();
        return assemble();
    }

  private:
    void build_frame() {
        auto frame = frame_points();
        for (int i = 0; i < 4; ++i)
            st_.add_point(frame[static_cast<std::size_t>(i)], "p" + std::to_string(i + 1));
        axis_ = st_.add_line({Rat(0), Rat(1), Rat(0)}, {0, 2}, "axis");
        // The unit point is pinned by the frame: axis meet line(p2, p4).
        bool needs_unit = !atomic_.atoms.empty();
        if (needs_unit) {
            linf_ = st_.add_line({Rat(0), Rat(0), Rat(1)}, {0, 1}, "line at infinity");
            unit_point_ = st_.add_point(axis_point(Rat(1)), "unit");
            st_.add_membership(unit_point_, axis_);
            g1_ = st_.add_line(join(st_.points[1], st_.points[3]), {1, 3}, "unit pin");
            st_.add_membership(unit_point_, g1_);
        }
    }

    void place_slots() {
        slot_point_.assign(atomic_.slots.size(), UINT32_MAX);
        for (std::uint32_t s = 0; s < atomic_.slots.size(); ++s) {
            const Slot& slot = atomic_.slots[s];
            if (slot.role == SlotRole::Anchor0) {
                slot_point_[s] = 2;  // p3 is the origin of the axis
                continue;
            }
            if (slot.role == SlotRole::Anchor1) {
                // A system without atoms never references the unit anchor.
                slot_point_[s] = unit_point_;
                continue;
            }
            P3 pos = axis_point(slot.value);
            st_.check_new_point(pos, {axis_});
            std::uint32_t idx = st_.add_point(pos, slot.name);
            st_.add_membership(idx, axis_);
            slot_point_[s] = idx;
        }
    }

    // One projective gadget per atom. Both templates share the shape: two
    // derived directions on the line at infinity, one interior meet, and a
    // final line required through the output slot point.
    void build_gadget(const Atom& at) {
        const std::uint32_t A = slot_point_[at.a];
        const std::uint32_t B = slot_point_[at.b];
        const std::uint32_t Out = slot_point_[at.c];
        for (int attempt = 0; attempt < 400; ++attempt) {
            auto [u1, u2] = aux_.next();
            P3 U{u1, u2, Rat(1)};
            try {
                if (at.kind == Atom::Add)
                    try_add_gadget(U, A, B, Out);
                else
                    try_mul_gadget(U, A, B, Out);
                ++gadget_count_;
                return;
            } catch (const Degenerate&) {
                continue;
            }
        }
        throw budget_error("auxiliary-point sequence exhausted while drawing a gadget");
    }

    // Commits points/lines for one Add gadget or throws Degenerate.
    void try_add_gadget(const P3& U, std::uint32_t A, std::uint32_t B, std::uint32_t Out) {
        const P3 o = st_.points[2], p1 = st_.points[0];
        const P3 a = st_.points[A], b = st_.points[B], out = st_.points[Out];

        P3 l_oU = join(o, U);
        P3 qinf = meet(l_oU, st_.lines[linf_]);
        P3 l_Up1 = join(U, p1);
        P3 l_aq = join(a, qinf);
        P3 w = meet(l_Up1, l_aq);
        P3 l_Ub = join(U, b);
        P3 rinf = meet(l_Ub, st_.lines[linf_]);
        P3 l_final = join(w, rinf);
        if (is_zero3(qinf) || is_zero3(w) || is_zero3(rinf) || is_zero3(l_final))
            throw Degenerate{"collapsed add gadget"};
        MURPHY_CHECK(is_zero(dot3(out, l_final)), "add gadget misses its output");

        commit_gadget(U, {{"Q", qinf}, {"W", w}, {"R", rinf}},
                      {{l_oU, {-1 /*U*/, -2 /*derived0*/, 2 /*o=p3*/}},
                       {l_Up1, {-1, -3 /*W*/, 0 /*p1*/}},
                       {l_aq, {-2, -3, static_cast<int>(A)}},
                       {l_Ub, {-1, -4 /*R*/, static_cast<int>(B)}},
                       {l_final, {-3, -4, static_cast<int>(Out)}}},
                      {{-2, linf_}, {-4, linf_}});
    }

    void try_mul_gadget(const P3& U, std::uint32_t A, std::uint32_t B, std::uint32_t Out) {
        const P3 o = st_.points[2];
        const P3 unit = st_.points[unit_point_];
        const P3 a = st_.points[A], b = st_.points[B], out = st_.points[Out];

        P3 l_unitU = join(unit, U);
        P3 dinf = meet(l_unitU, st_.lines[linf_]);
        P3 l_bd = join(b, dinf);
        P3 l_oU = join(o, U);
        P3 w = meet(l_bd, l_oU);
        P3 l_Ua = join(U, a);
        P3 einf = meet(l_Ua, st_.lines[linf_]);
        P3 l_final = join(w, einf);
        if (is_zero3(dinf) || is_zero3(w) || is_zero3(einf) || is_zero3(l_final))
            throw Degenerate{"collapsed mul gadget"};
        MURPHY_CHECK(is_zero(dot3(out, l_final)), "mul gadget misses its output");

        commit_gadget(U, {{"D", dinf}, {"W", w}, {"E", einf}},
                      {{l_unitU, {-1, -2, static_cast<int>(unit_point_)}},
                       {l_bd, {-2, -3, static_cast<int>(B)}},
                       {l_oU, {-1, -3, 2}},
                       {l_Ua, {-1, -4, static_cast<int>(A)}},
                       {l_final, {-3, -4, static_cast<int>(Out)}}},
                      {{-2, linf_}, {-4, linf_}});
    }

    // Draft ids: -1 = aux U, -2/-3/-4 = derived points in order; >= 0 are
    // existing point indices. Verifies distinctness and the absence of
    // accidental incidences before mutating the state.
    void commit_gadget(const P3& U, std::vector<std::pair<std::string, P3>> derived,
                       std::vector<std::pair<P3, std::vector<int>>> new_lines,
                       std::vector<std::pair<int, std::uint32_t>> inf_members) {
        std::vector<P3> fresh{U};
        for (auto& [name, coords] : derived) fresh.push_back(coords);

        // Fresh points pairwise distinct and new to the configuration.
        for (std::size_t i = 0; i < fresh.size(); ++i) {
            if (st_.find_point(fresh[i])) throw Degenerate{"gadget point already marked"};
            for (std::size_t j = i + 1; j < fresh.size(); ++j)
                if (projectively_equal(fresh[i], fresh[j]))
                    throw Degenerate{"gadget points collide"};
        }

        // Declared incidence structure per fresh point.
        auto declared_lines_of = [&](int draft) {
            std::vector<P3> out;
            for (auto& [coords, members] : new_lines)
                if (std::find(members.begin(), members.end(), draft) != members.end())
                    out.push_back(coords);
            for (auto& [draft_id, line] : inf_members)
                if (draft_id == draft) out.push_back(st_.lines[line]);
            return out;
        };
        auto draft_coords = [&](int draft) -> const P3& {
            return draft >= 0 ? st_.points[static_cast<std::size_t>(draft)]
                              : fresh[static_cast<std::size_t>(-draft - 1)];
        };

        // Fresh points against existing lines.
        for (int draft = -1; draft >= -static_cast<int>(fresh.size()); --draft) {
            const P3& coords = draft_coords(draft);
            std::vector<std::uint32_t> allowed;
            for (auto& [draft_id, line] : inf_members)
                if (draft_id == draft) allowed.push_back(line);
            for (std::uint32_t l = 0; l < st_.lines.size(); ++l) {
                if (std::find(allowed.begin(), allowed.end(), l) != allowed.end()) continue;
                if (is_zero(dot3(coords, st_.lines[l])))
                    throw Degenerate{"gadget point accidentally on an existing line"};
            }
        }

        // New lines against all points (existing and fresh).
        for (auto& [coords, members] : new_lines) {
            if (st_.line_keys.count(projective_key(coords)))
                throw Degenerate{"gadget line duplicates an existing line"};
            for (std::uint32_t p = 0; p < st_.points.size(); ++p) {
                if (std::find(members.begin(), members.end(), static_cast<int>(p)) !=
                    members.end())
                    continue;
                if (is_zero(dot3(st_.points[p], coords)))
                    throw Degenerate{"existing point accidentally on a gadget line"};
            }
            for (int draft = -1; draft >= -static_cast<int>(fresh.size()); --draft) {
                bool declared =
                    std::find(members.begin(), members.end(), draft) != members.end();
                if (!declared && is_zero(dot3(draft_coords(draft), coords)))
                    throw Degenerate{"gadget point accidentally on a gadget line"};
            }
        }
        // New lines pairwise distinct.
        for (std::size_t i = 0; i < new_lines.size(); ++i)
            for (std::size_t j = i + 1; j < new_lines.size(); ++j)
                if (projectively_equal(new_lines[i].first, new_lines[j].first))
                    throw Degenerate{"gadget lines collide"};

        // Commit.
        std::size_t gadget_no = gadget_count_ + 1;
        std::vector<std::uint32_t> ids;
        ids.push_back(st_.add_point(U, "aux" + std::to_string(gadget_no)));
        free_points_.push_back({ids[0], 2});
        for (auto& [name, coords] : derived)
            ids.push_back(st_.add_point(coords, name + std::to_string(gadget_no)));
        auto resolve = [&](int draft) -> std::uint32_t {
            return draft >= 0 ? static_cast<std::uint32_t>(draft)
                              : ids[static_cast<std::size_t>(-draft - 1)];
        };
        for (auto& [coords, members] : new_lines) {
            std::vector<std::uint32_t> resolved;
            for (int d : members) resolved.push_back(resolve(d));
            st_.add_line(coords, resolved, "gadget line");
        }
        for (auto& [draft_id, line] : inf_members) st_.add_membership(resolve(draft_id), line);
    }

    void mark_intersections() {
        const std::uint32_t n = static_cast<std::uint32_t>(st_.lines.size());
        std::vector<bool> covered(static_cast<std::size_t>(n) * n, false);
        auto mark = [&](std::uint32_t a, std::uint32_t b) {
            covered[static_cast<std::size_t>(std::min(a, b)) * n + std::max(a, b)] = true;
        };
        for (std::uint32_t p = 0; p < st_.points.size(); ++p) {
            auto& ls = st_.point_lines[p];
            for (std::size_t i = 0; i < ls.size(); ++i)
                for (std::size_t j = i + 1; j < ls.size(); ++j) mark(ls[i], ls[j]);
        }
        for (std::uint32_t a = 0; a < n; ++a) {
            for (std::uint32_t b = a + 1; b < n; ++b) {
                if (covered[static_cast<std::size_t>(a) * n + b]) continue;
                P3 x = meet(st_.lines[a], st_.lines[b]);
                MURPHY_CHECK(!is_zero3(x), "marked lines coincide");
                if (auto hit = st_.find_point(x)) {
                    // An existing point on both lines that is a member of
                    // neither pair-side would be an unrequired concurrence.
                    if (st_.is_member(*hit, a) && st_.is_member(*hit, b)) {
                        mark(a, b);
                        continue;
                    }
                    throw Degenerate{"three marked lines concur without requirement"};
                }
                std::uint32_t idx = st_.add_point(x, "x" + std::to_string(a) + "_" +
                                                         std::to_string(b));
                st_.add_membership(idx, a);
                st_.add_membership(idx, b);
                mark(a, b);
            }
        }
    }

    void add_fillers() {
        for (std::uint32_t l = 0; l < st_.lines.size(); ++l) {
            unsigned long t = 1;
            while (st_.line_members[l].size() < 3) {
                MURPHY_REQUIRE(st_.line_members[l].size() >= 2,
                               "marked line with fewer than two construction points");
                const P3& p = st_.points[st_.line_members[l][0]];
                const P3& q = st_.points[st_.line_members[l][1]];
                bool placed = false;
                for (; t < 400 && !placed; ++t) {
                    P3 cand{p[0] + Rat(t) * q[0], p[1] + Rat(t) * q[1], p[2] + Rat(t) * q[2]};
                    if (is_zero3(cand) || st_.find_point(cand)) continue;
                    try {
                        st_.check_new_point(cand, {l});
                        std::uint32_t idx =
                            st_.add_point(cand, "f" + std::to_string(l) + "_" + std::to_string(t));
                        st_.add_membership(idx, l);
                        free_points_.push_back({idx, 1});
                        ++filler_count_;
                        placed = true;
                    } catch (const Degenerate&) {
                        continue;
                    }
                }
                MURPHY_REQUIRE(placed, "filler sequence exhausted");
            }
        }
    }

    EncodeResult assemble() {
        EncodeResult out;
        out.configuration.m = static_cast<std::uint32_t>(st_.points.size());
        out.configuration.n = static_cast<std::uint32_t>(st_.lines.size());
        for (std::uint32_t l = 0; l < st_.lines.size(); ++l)
            for (std::uint32_t p : st_.line_members[l]) out.configuration.on.emplace_back(p, l);
        out.configuration.normalize();
        out.witness.points = st_.points;
        out.witness.lines = st_.lines;
        out.free_params = 2 * gadget_count_ + filler_count_;
        out.gadgets = gadget_count_;
        out.fillers = filler_count_;
        out.free_points = free_points_;
        out.shift = atomic_.shift;
        for (std::uint32_t s = 0; s < atomic_.slots.size(); ++s)
            if (slot_point_[s] != UINT32_MAX)
                out.slot_map.emplace(atomic_.slots[s].name, slot_point_[s]);

        MURPHY_CHECK(validate_configuration(out.configuration).pass(),
                     "encoded configuration fails validation");
        Report wrep = verify_witness(out.configuration, out.witness);
        if (!wrep.pass()) throw Degenerate{"encoded witness fails verification"};
        return out;
    }

    const AtomicSystem& atomic_;
    AuxSequence aux_;
    ConstructionState st_;
    std::uint32_t axis_ = UINT32_MAX, linf_ = UINT32_MAX, g1_ = UINT32_MAX;
    std::uint32_t unit_point_ = UINT32_MAX;
    std::vector<std::uint32_t> slot_point_;
    std::vector<FreePoint> free_points_;
    std::size_t gadget_count_ = 0;
    std::size_t filler_count_ = 0;
};

}  // namespace

EncodeResult encode(const AtomicSystem& atomic) {
    // Whole-construction retries advance the auxiliary sequence, so a
    // degeneracy discovered late (a concurrence among finished gadgets)
    // resolves deterministically.
    for (std::size_t skip = 0; skip < 24; skip += 3) {
        try {
            Encoder enc(atomic, skip);
            return enc.run();
        } catch (const Degenerate&) {
            continue;
        }
    }
    throw budget_error("generic-choice budget exhausted while encoding");
}

std::vector<std::uint32_t> designate_free_coords(const RealizationModel& model,
                                                 const std::vector<FreePoint>& free_points) {
    std::vector<std::uint32_t> out;
    for (auto& fp : free_points) {
        MURPHY_REQUIRE(fp.point < model.points.size() && !model.points[fp.point].is_const,
                       "free point out of range");
        const auto& vars = model.points[fp.point].vars;
        if (fp.dofs == 2) {
            out.push_back(vars[0]);
            out.push_back(vars[1]);
            continue;
        }
        MURPHY_REQUIRE(fp.dofs == 1, "free points carry one or two parameters");
        // One equation pins the point to its line; slice the coordinate
        // transverse to the free direction along the line.
        std::vector<Rat> grad(model.vars->size(), Rat(0));
        bool found = false;
        for (auto& eq : model.equations) {
            if (eq.pt != fp.point) continue;
            MURPHY_REQUIRE(!found, "filler point with more than one equation");
            model.equation_gradient(eq, model.base, grad);
            found = true;
        }
        MURPHY_REQUIRE(found, "filler point without an equation");
        // Slicing vars[i] is valid when the other coordinate still pivots.
        if (!is_zero(grad[vars[1]]))
            out.push_back(vars[0]);
        else {
            MURPHY_REQUIRE(!is_zero(grad[vars[0]]), "filler incidence is not transverse");
            out.push_back(vars[1]);
        }
    }
    return out;
}

EquivalenceReport check_equivalence(const EncodeResult& result, const std::vector<Poly>& ideal,
                                    const std::vector<Rat>& witness, std::uint32_t N,
                                    std::uint32_t k_max) {
    EquivalenceReport rep;
    rep.r = result.free_params;
    rep.input = fingerprint(ideal, witness, N, k_max);

    RealizationModel model = realization_model(result.configuration, result.witness,
                                               default_chart_pin, /*assume_verified=*/true);
    auto free_coords = designate_free_coords(model, result.free_points);
    ModelFingerprint mf = fingerprint_model(model, free_coords, N, k_max);
    rep.realization = mf.fp;
    rep.slice_consistent = mf.slice_consistent;
    rep.compare = compare_modulo_smooth(rep.input, rep.realization,
                                        static_cast<std::int64_t>(result.free_params));
    return rep;
}

Rat add_gadget_output(const Rat& a, const Rat& b, const Rat& u1, const Rat& u2) {
    MURPHY_REQUIRE(!is_zero(u2), "auxiliary point must be off the axis");
    P3 o = axis_point(Rat(0)), pa = axis_point(a), pb = axis_point(b);
    P3 p1{Rat(1), Rat(0), Rat(0)}, linf{Rat(0), Rat(0), Rat(1)}, axis{Rat(0), Rat(1), Rat(0)};
    P3 U{u1, u2, Rat(1)};
    P3 qinf = meet(join(o, U), linf);
    P3 w = meet(join(U, p1), join(pa, qinf));
    P3 rinf = meet(join(U, pb), linf);
    P3 s = meet(join(w, rinf), axis);
    MURPHY_REQUIRE(!is_zero(s[2]), "gadget output escaped to infinity");
    return s[0] / s[2];
}

Rat mul_gadget_output(const Rat& a, const Rat& b, const Rat& u1, const Rat& u2) {
    MURPHY_REQUIRE(!is_zero(u2), "auxiliary point must be off the axis");
    P3 o = axis_point(Rat(0)), unit = axis_point(Rat(1));
    P3 pa = axis_point(a), pb = axis_point(b);
    P3 linf{Rat(0), Rat(0), Rat(1)}, axis{Rat(0), Rat(1), Rat(0)};
    P3 U{u1, u2, Rat(1)};
    P3 dinf = meet(join(unit, U), linf);
    P3 w = meet(join(pb, dinf), join(o, U));
    P3 einf = meet(join(U, pa), linf);
    if (is_zero3(w) || is_zero3(einf)) throw input_error("inadmissible auxiliary point");
    P3 s = meet(join(w, einf), axis);
    MURPHY_REQUIRE(!is_zero(s[2]), "gadget output escaped to infinity");
    return s[0] / s[2];
}

}  // namespace murphy
