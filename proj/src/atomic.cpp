#include "murphy/atomic.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "murphy/errors.hpp"

namespace murphy {

bool AtomicSystem::atom_satisfied(const Atom& at) const {
    const Rat &va = slots[at.a].value, &vb = slots[at.b].value, &vc = slots[at.c].value;
    return at.kind == Atom::Add ? va + vb == vc : va * vb == vc;
}

namespace {

// Signals an unavoidable value collision at the planned slot; the caller
// dodges (coefficient split, term rotation) or retries with a new shift.
struct Collision {
    std::string what;
};

class Builder {
  public:
    Builder(VarCtx ctx, std::vector<Poly> gens, std::vector<Rat> wit, bool strict)
        : strict_(strict) {
        sys_.ctx = std::move(ctx);
        sys_.generators = std::move(gens);
        sys_.witness = std::move(wit);
        add_slot("zero", Poly(sys_.ctx), Rat(0), SlotRole::Anchor0);
        add_slot("one", Poly::constant(sys_.ctx, Rat(1)), Rat(1), SlotRole::Anchor1);
        for (std::uint32_t v = 0; v < sys_.ctx->size(); ++v)
            add_slot((*sys_.ctx)[v], Poly::variable(sys_.ctx, v), sys_.witness[v],
                     SlotRole::Variable);
    }

    AtomicSystem build() {
        // Monomial slots first: their values are fixed, so constants and
        // accumulators dodge around them.
        for (auto& g : sys_.generators) {
            MURPHY_REQUIRE(is_zero(g.eval(sys_.witness)),
                           "generator does not vanish at the witness");
            for (auto& [m, c] : g.terms())
                if (m.degree() >= 1) monomial_slot(m);
        }
        for (auto& g : sys_.generators) emit_generator(g);
        sys_.values_distinct = distinct_ok_;
        return std::move(sys_);
    }

  private:
    std::uint32_t add_slot(const std::string& name, Poly expr, const Rat& value, SlotRole role) {
        if (strict_ && value_used(value)) throw Collision{"slot value " + rat_to_string(value)};
        if (!value_used(value))
            values_.insert(rat_to_string(value));
        else
            distinct_ok_ = false;
        sys_.slots.push_back({name, std::move(expr), value, role});
        return static_cast<std::uint32_t>(sys_.slots.size() - 1);
    }

    bool value_used(const Rat& v) const { return values_.count(rat_to_string(v)) > 0; }

    std::uint32_t emit(Atom::Kind kind, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
        Atom at{kind, a, b, c};
        MURPHY_CHECK(sys_.atom_satisfied(at), "emitted atom is not satisfied by the witness");
        sys_.atoms.push_back(at);
        return c;
    }

    // ---- expression-cached slot constructors ----

    std::uint32_t cached(const Poly& expr) const {
        auto it = expr_cache_.find(expr.to_string());
        return it == expr_cache_.end() ? UINT32_MAX : it->second;
    }

    std::uint32_t remember(const Poly& expr, std::uint32_t slot) {
        expr_cache_.emplace(expr.to_string(), slot);
        return slot;
    }

    std::uint32_t monomial_slot(const Monomial& m) {
        MURPHY_CHECK(m.degree() >= 1, "monomial slot needs positive degree");
        if (m.degree() == 1) return 2 + m.factors[0].first;  // variable slot
        Poly expr(sys_.ctx);
        expr.add_term(m, Rat(1));
        if (std::uint32_t hit = cached(expr); hit != UINT32_MAX) return hit;
        // Split off the last variable.
        auto [last_var, last_exp] = m.factors.back();
        Monomial rest = m;
        if (last_exp > 1)
            rest.factors.back().second -= 1;
        else
            rest.factors.pop_back();
        std::uint32_t a = monomial_slot(rest);
        std::uint32_t b = 2 + last_var;
        Rat value = sys_.slots[a].value * sys_.slots[b].value;
        std::uint32_t c = add_slot("m" + std::to_string(++slack_counter_), expr, value,
                                   SlotRole::Slack);
        emit(Atom::Mul, a, b, c);
        return remember(expr, c);
    }

    // Integer >= 1 from 1 by doubling-and-adding along the binary expansion.
    std::uint32_t integer_slot(const Int& n) {
        MURPHY_CHECK(n >= 1, "integer chains start at 1");
        Poly expr = Poly::constant(sys_.ctx, Rat(n));
        if (n == 1) return 1;
        if (std::uint32_t hit = cached(expr); hit != UINT32_MAX) return hit;
        std::uint32_t out;
        if (n % 2 == 0) {
            std::uint32_t h = integer_slot(n / 2);
            out = add_slot("c" + n.get_str(), expr, Rat(n), SlotRole::Constant);
            emit(Atom::Add, h, h, out);
        } else {
            std::uint32_t h = integer_slot(n - 1);
            out = add_slot("c" + n.get_str(), expr, Rat(n), SlotRole::Constant);
            emit(Atom::Add, h, 1, out);
        }
        return remember(expr, out);
    }

    // Positive rational constant; q > 1 goes through a division atom.
    std::uint32_t positive_const_slot(const Rat& c) {
        MURPHY_CHECK(sgn(c) > 0, "positive constant expected");
        if (is_integer(c)) return integer_slot(c.get_num());
        Poly expr = Poly::constant(sys_.ctx, c);
        if (std::uint32_t hit = cached(expr); hit != UINT32_MAX) return hit;
        std::uint32_t p = integer_slot(c.get_num());
        std::uint32_t q = integer_slot(c.get_den());
        // c * den = num, with c the fresh slot.
        std::uint32_t out = add_slot("c" + rat_to_string(c), expr, c, SlotRole::Constant);
        emit(Atom::Mul, out, q, p);
        return remember(expr, out);
    }

    // Signed constant; negatives go through a negation atom n + |c| = 0.
    std::uint32_t const_slot(const Rat& c) {
        MURPHY_CHECK(!is_zero(c), "zero constants are the anchor");
        if (sgn(c) > 0) return positive_const_slot(c);
        Poly expr = Poly::constant(sys_.ctx, c);
        if (std::uint32_t hit = cached(expr); hit != UINT32_MAX) return hit;
        std::uint32_t pos = positive_const_slot(-c);
        std::uint32_t out = add_slot("c" + rat_to_string(c), expr, c, SlotRole::Constant);
        emit(Atom::Add, out, pos, 0);
        return remember(expr, out);
    }

    // Slot whose value is coeff * monomial(witness), coeff > 0.
    std::uint32_t term_slot(const Rat& coeff, const Monomial& m) {
        MURPHY_CHECK(sgn(coeff) > 0, "term slots carry positive coefficients");
        if (m.degree() == 0) return const_slot(coeff);
        std::uint32_t ms = monomial_slot(m);
        if (coeff == 1) return ms;
        Poly expr(sys_.ctx);
        expr.add_term(m, coeff);
        if (std::uint32_t hit = cached(expr); hit != UINT32_MAX) return hit;
        std::uint32_t ks = const_slot(coeff);
        std::uint32_t out = add_slot("t" + std::to_string(++slack_counter_), expr,
                                     coeff * sys_.slots[ms].value, SlotRole::Slack);
        emit(Atom::Mul, ks, ms, out);
        return remember(expr, out);
    }

    // acc +- |c|*m as one accumulation step.
    std::uint32_t step(std::uint32_t acc, const Rat& c, const Monomial& m) {
        if (sgn(c) > 0) {
            std::uint32_t ts = term_slot(c, m);
            Poly expr = sys_.slots[acc].expr + sys_.slots[ts].expr;
            if (std::uint32_t hit = cached(expr); hit != UINT32_MAX) return hit;
            std::uint32_t out = add_slot("s" + std::to_string(++slack_counter_), expr,
                                         sys_.slots[acc].value + sys_.slots[ts].value,
                                         SlotRole::Slack);
            emit(Atom::Add, acc, ts, out);
            return remember(expr, out);
        }
        // acc - |term| = out, the subtraction rewrite Add(out, term, acc).
        std::uint32_t ts = term_slot(-c, m);
        Poly expr = sys_.slots[acc].expr - sys_.slots[ts].expr;
        if (std::uint32_t hit = cached(expr); hit != UINT32_MAX) return hit;
        std::uint32_t out = add_slot("s" + std::to_string(++slack_counter_), expr,
                                     sys_.slots[acc].value - sys_.slots[ts].value,
                                     SlotRole::Slack);
        emit(Atom::Add, out, ts, acc);
        return remember(expr, out);
    }

    // Accumulate the signed terms into one slot. A colliding step is retried
    // as two steps with the coefficient split by a deterministic beta.
    std::uint32_t accumulate(const std::vector<std::pair<Rat, Monomial>>& terms) {
        MURPHY_CHECK(!terms.empty(), "empty accumulation");
        std::uint32_t acc = UINT32_MAX;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const auto& [c, m] = terms[i];
            auto snap = checkpoint();
            try {
                acc = (i == 0) ? signed_term_slot(c, m) : step(acc, c, m);
                continue;
            } catch (const Collision&) {
                rollback(snap);
            }
            bool done = false;
            for (const Rat& beta : beta_sequence()) {
                Rat c1 = sgn(c) > 0 ? beta : -beta;
                Rat c2 = c - c1;
                if (is_zero(c2)) continue;
                auto snap2 = checkpoint();
                try {
                    std::uint32_t mid = (i == 0) ? signed_term_slot(c1, m) : step(acc, c1, m);
                    acc = step(mid, c2, m);
                    done = true;
                    break;
                } catch (const Collision&) {
                    rollback(snap2);
                }
            }
            if (!done) throw Collision{"accumulation step"};
        }
        return acc;
    }

    // Term with its sign materialized (negation atom when negative).
    std::uint32_t signed_term_slot(const Rat& c, const Monomial& m) {
        if (m.degree() == 0) return const_slot(c);  // const_slot signs itself
        if (sgn(c) > 0) return term_slot(c, m);
        std::uint32_t pos = term_slot(-c, m);
        Poly expr(sys_.ctx);
        expr.add_term(m, c);
        if (std::uint32_t hit = cached(expr); hit != UINT32_MAX) return hit;
        std::uint32_t out = add_slot("n" + std::to_string(++slack_counter_), expr,
                                     -sys_.slots[pos].value, SlotRole::Slack);
        emit(Atom::Add, out, pos, 0);
        return remember(expr, out);
    }

    void emit_generator(const Poly& g) {
        if (g.is_zero()) return;
        std::vector<std::pair<Rat, Monomial>> terms;
        for (auto it = g.terms().rbegin(); it != g.terms().rend(); ++it)
            terms.emplace_back(it->second, it->first);

        if (terms.size() == 1) {
            // c*m = 0 with c != 0: wire the final product of the monomial
            // chain straight into the anchor.
            const Monomial& m = terms[0].second;
            MURPHY_REQUIRE(m.degree() >= 1, "constant generator cannot vanish");
            if (m.degree() == 1) {
                // Bare variable at witness value 0: Add(v, v, 0) cuts 2v = 0,
                // the same ideal as v = 0.
                std::uint32_t v = 2 + m.factors[0].first;
                MURPHY_CHECK(is_zero(sys_.slots[v].value),
                             "bare-variable generator at nonzero value");
                emit(Atom::Add, v, v, 0);
                return;
            }
            auto [last_var, last_exp] = m.factors.back();
            Monomial rest = m;
            if (last_exp > 1)
                rest.factors.back().second -= 1;
            else
                rest.factors.pop_back();
            std::uint32_t a = monomial_slot(rest);
            emit(Atom::Mul, a, 2 + last_var, 0);
            return;
        }

        // Two-sided wiring: a left slot and the remaining terms accumulated
        // on the right, with opposite nonzero values. Plans vary the left
        // term, a fractional split of it, the tail order, and a spread split
        // of the tail's last term, all deterministically, until the chain
        // builds without value collisions.
        std::size_t k = terms.size();
        static const Rat no_split(0);
        std::vector<Rat> left_fracs{no_split};
        std::vector<Rat> spread_fracs{no_split};
        for (const Rat& b : beta_sequence()) {
            if (left_fracs.size() < 5) left_fracs.push_back(b);
            if (spread_fracs.size() < 4) spread_fracs.push_back(b);
        }

        for (const Rat& lf : left_fracs) {
            for (const Rat& sf : spread_fracs) {
                for (std::size_t pick = 0; pick < k; ++pick) {
                    for (int reversed = 0; reversed < 2; ++reversed) {
                        std::vector<std::pair<Rat, Monomial>> tail;
                        // Left piece: the picked term or a fraction of it.
                        Rat left_coeff = is_zero(lf) ? terms[pick].first : terms[pick].first * lf;
                        if (!is_zero(lf))
                            tail.emplace_back(terms[pick].first - left_coeff, terms[pick].second);
                        for (std::size_t i = 0; i < k; ++i)
                            if (i != pick) tail.push_back(terms[i]);
                        if (reversed) std::reverse(tail.begin(), tail.end());
                        // Spread: split the last tail term, one piece placed
                        // right after the first element.
                        if (!is_zero(sf) && tail.size() >= 2) {
                            auto [cz, mz] = tail.back();
                            tail.pop_back();
                            Rat piece = cz * sf;
                            tail.insert(tail.begin() + 1, {piece, mz});
                            tail.push_back({cz - piece, mz});
                        }
                        auto snapshot = checkpoint();
                        try {
                            std::uint32_t left = signed_term_slot(left_coeff, terms[pick].second);
                            std::uint32_t right = accumulate(tail);
                            MURPHY_CHECK(sys_.slots[left].value + sys_.slots[right].value == 0,
                                         "two-sided split values must cancel");
                            emit(Atom::Add, left, right, 0);
                            return;
                        } catch (const Collision&) {
                            rollback(snapshot);
                        }
                    }
                }
            }
        }
        throw Collision{"generator " + g.to_string()};
    }

    // ---- rollback support for rotation retries ----
    struct Snapshot {
        std::size_t slots, atoms;
        std::unordered_map<std::string, std::uint32_t> cache;
        std::unordered_set<std::string> values;
        std::uint64_t counter;
    };
    Snapshot checkpoint() const {
        return {sys_.slots.size(), sys_.atoms.size(), expr_cache_, values_, slack_counter_};
    }
    void rollback(const Snapshot& s) {
        sys_.slots.resize(s.slots);
        sys_.atoms.resize(s.atoms);
        expr_cache_ = s.cache;
        values_ = s.values;
        slack_counter_ = s.counter;
    }

    static const std::vector<Rat>& beta_sequence() {
        static const std::vector<Rat> seq = [] {
            std::vector<Rat> v;
            for (unsigned den : {3u, 5u, 7u, 11u, 13u})
                for (unsigned num = 1; num < den; ++num) v.emplace_back(num, den);
            return v;
        }();
        return seq;
    }

    bool strict_;
    AtomicSystem sys_;
    std::unordered_map<std::string, std::uint32_t> expr_cache_;
    std::unordered_set<std::string> values_;
    std::uint64_t slack_counter_ = 0;
    bool distinct_ok_ = true;
};

AtomicSystem build_system(VarCtx ctx, const std::vector<Poly>& ideal,
                          const std::vector<Rat>& witness, bool strict) {
    MURPHY_REQUIRE(witness.size() == (ctx ? ctx->size() : 0), "witness arity mismatch");
    Builder b(std::move(ctx), ideal, witness, strict);
    return b.build();
}

}  // namespace

AtomicSystem to_atomic(VarCtx ctx, const std::vector<Poly>& ideal,
                       const std::vector<Rat>& witness) {
    for (auto& g : ideal)
        MURPHY_REQUIRE(is_zero(g.eval(witness)), "generator does not vanish at the witness");
    return build_system(std::move(ctx), ideal, witness, /*strict=*/false);
}

AtomicSystem to_atomic(const std::vector<Poly>& ideal, const std::vector<Rat>& witness) {
    MURPHY_REQUIRE(!ideal.empty(), "pass a variable context for an empty system");
    return to_atomic(ideal.front().ctx(), ideal, witness);
}

AtomicSystem separate_values(const AtomicSystem& sys) {
    // Trial 0 is the identity; afterwards x_i -> x_i + t*P_i + 1/q_t with
    // P_i the i-th prime and q_t stepping through odd primes.
    static const unsigned primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                      31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
    const std::size_t nvars = sys.ctx ? sys.ctx->size() : 0;
    MURPHY_REQUIRE(nvars <= 20, "too many variables for the shift sequence");

    for (unsigned trial = 0; trial < 48; ++trial) {
        std::vector<Rat> shift(nvars, Rat(0));
        if (trial > 0) {
            unsigned q = primes[1 + (trial - 1) % 10];  // 3, 5, 7, ...
            for (std::size_t i = 0; i < nvars; ++i)
                shift[i] = Rat(primes[i]) * Rat(trial) + Rat(1, q);
        }
        std::vector<Poly> gens;
        std::vector<Rat> wit(nvars);
        std::vector<Rat> neg(nvars);
        for (std::size_t i = 0; i < nvars; ++i) {
            neg[i] = -shift[i];
            wit[i] = sys.witness[i] + shift[i];
        }
        for (auto& g : sys.generators) gens.push_back(g.translated(neg));
        try {
            AtomicSystem out = build_system(sys.ctx, gens, wit, /*strict=*/true);
            out.shift = shift;
            MURPHY_CHECK(out.values_distinct, "strict build must yield distinct values");
            return out;
        } catch (const Collision&) {
            continue;
        }
    }
    throw budget_error("no affine change in the trial sequence separates the slot values");
}

}  // namespace murphy
