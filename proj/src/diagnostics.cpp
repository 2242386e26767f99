#include "murphy/diagnostics.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "murphy/errors.hpp"
#include "murphy/matrix.hpp"

namespace murphy {

namespace {

// Monomials of total degree < bound over `arity` variables, by degree.
void enumerate_monomials(std::uint32_t arity, std::uint64_t bound,
                         std::vector<Monomial>& out) {
    if (arity == 0) {
        if (bound > 0) out.push_back(Monomial{});
        return;
    }
    std::vector<std::uint32_t> expo(arity, 0);
    auto rec = [&](auto&& self, std::uint32_t var, std::uint64_t remaining) -> void {
        if (var + 1 == arity) {
            expo[var] = static_cast<std::uint32_t>(remaining);
            Monomial m;
            for (std::uint32_t v = 0; v < arity; ++v)
                if (expo[v] > 0) m.factors.emplace_back(v, expo[v]);
            out.push_back(m);
            expo[var] = 0;
            return;
        }
        for (std::uint64_t e = 0; e <= remaining; ++e) {
            expo[var] = static_cast<std::uint32_t>(e);
            self(self, var + 1, remaining - e);
        }
        expo[var] = 0;
    };
    for (std::uint64_t d = 0; d < bound; ++d) rec(rec, 0, d);
}

RatMatrix jacobian_at_origin(const std::vector<Poly>& polys, std::uint32_t arity) {
    RatMatrix j(polys.size(), arity);
    for (std::size_t e = 0; e < polys.size(); ++e) {
        Monomial m;
        for (std::uint32_t v = 0; v < arity; ++v) {
            m.factors.assign(1, {v, 1});
            j.at(e, v) = polys[e].coefficient(m);
        }
    }
    return j;
}

}  // namespace

LocalSystem local_system(const std::vector<Poly>& ideal, std::span<const Rat> point) {
    LocalSystem sys;
    if (!ideal.empty()) {
        sys.ctx = ideal.front().ctx();
    } else {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < point.size(); ++i) names.push_back("x" + std::to_string(i));
        sys.ctx = make_ctx(std::move(names));
    }
    for (auto& g : ideal) {
        MURPHY_REQUIRE(is_zero(g.eval(point)), "generator does not vanish at the point");
        Poly t = g.translated(point);
        if (!t.is_zero()) sys.polys.push_back(t);
    }
    return sys;
}

LocalSystem reduce_local(LocalSystem sys, std::uint64_t trunc) {
    for (auto& p : sys.polys) p = p.truncated(trunc);

    // Implicit function eliminations: highest variable first, lowest equation
    // index among those with a unit linear coefficient on it.
    bool changed = true;
    while (changed) {
        changed = false;
        std::uint32_t arity = static_cast<std::uint32_t>(sys.ctx->size());
        for (std::uint32_t var = arity; var-- > 0 && !changed;) {
            for (std::size_t e = 0; e < sys.polys.size(); ++e) {
                Monomial lin;
                lin.factors.assign(1, {var, 1});
                Rat c = sys.polys[e].coefficient(lin);
                if (is_zero(c)) continue;
                // Solve polys[e] = 0 for `var` as a series: iterate
                // phi <- phi - (E(phi)|restricted)/c, gaining a degree per pass.
                Poly E = sys.polys[e];
                Poly phi(sys.ctx);  // starts at 0
                for (std::uint64_t pass = 0; pass + 1 < trunc; ++pass) {
                    Poly val = E.subst_trunc(var, phi, trunc);
                    if (val.is_zero()) break;
                    phi = phi - val.scaled(Rat(1) / c);
                    phi = phi.truncated(trunc);
                }
                MURPHY_CHECK(E.subst_trunc(var, phi, trunc).is_zero(),
                             "implicit solve failed to converge");
                std::vector<Poly> next;
                for (std::size_t k = 0; k < sys.polys.size(); ++k) {
                    if (k == e) continue;
                    Poly q = sys.polys[k].subst_trunc(var, phi, trunc);
                    if (!q.is_zero()) next.push_back(q);
                }
                // Rebuild the context without `var`.
                std::vector<std::string> names;
                std::vector<std::uint32_t> old_to_new(arity, UINT32_MAX);
                for (std::uint32_t v = 0; v < arity; ++v) {
                    if (v == var) continue;
                    old_to_new[v] = static_cast<std::uint32_t>(names.size());
                    names.push_back((*sys.ctx)[v]);
                }
                VarCtx nctx = make_ctx(std::move(names));
                for (auto& q : next) q = q.remapped(nctx, old_to_new);
                sys.ctx = nctx;
                sys.polys = std::move(next);
                changed = true;
                break;
            }
        }
    }

    // Split off variables absent from every equation as smooth factors.
    std::vector<bool> used(sys.ctx->size(), false);
    for (auto& p : sys.polys)
        for (std::uint32_t v : p.support()) used[v] = true;
    std::size_t absent = 0;
    std::vector<std::string> names;
    std::vector<std::uint32_t> old_to_new(sys.ctx->size(), UINT32_MAX);
    for (std::uint32_t v = 0; v < sys.ctx->size(); ++v) {
        if (!used[v]) {
            ++absent;
            continue;
        }
        old_to_new[v] = static_cast<std::uint32_t>(names.size());
        names.push_back((*sys.ctx)[v]);
    }
    if (absent > 0) {
        VarCtx nctx = make_ctx(std::move(names));
        for (auto& p : sys.polys) p = p.remapped(nctx, old_to_new);
        sys.ctx = nctx;
        sys.smooth_dims += absent;
    }
    return sys;
}

namespace {

// dim O/m^k from generators already placed at the origin.
std::vector<std::uint64_t> hilbert_at_origin(const std::vector<Poly>& polys, const VarCtx& ctx,
                                             std::uint32_t N) {
    std::uint32_t arity = static_cast<std::uint32_t>(ctx ? ctx->size() : 0);
    std::vector<std::uint64_t> out;
    for (std::uint32_t k = 1; k <= N; ++k) {
        std::vector<Monomial> basis;
        enumerate_monomials(arity, k, basis);
        std::map<Monomial, std::size_t, GrlexLess> col;
        for (std::size_t i = 0; i < basis.size(); ++i) col.emplace(basis[i], i);

        std::vector<std::vector<Rat>> rows;
        for (auto& g : polys) {
            std::int64_t ord = g.order();
            MURPHY_CHECK(ord >= 1, "generator must vanish at the origin");
            if (static_cast<std::uint64_t>(ord) >= k) continue;
            std::vector<Monomial> mults;
            enumerate_monomials(arity, k - static_cast<std::uint64_t>(ord), mults);
            for (auto& m : mults) {
                std::vector<Rat> row(basis.size(), Rat(0));
                bool nonzero = false;
                for (auto& [gm, gc] : g.terms()) {
                    Monomial prod = gm.times(m);
                    if (prod.degree() >= k) continue;
                    row[col.at(prod)] += gc;
                    nonzero = true;
                }
                if (nonzero) rows.push_back(std::move(row));
            }
        }
        RatMatrix mat(rows.size(), basis.size());
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < basis.size(); ++c) mat.at(r, c) = rows[r][c];
        out.push_back(basis.size() - mat.rank());
    }
    return out;
}

}  // namespace

std::vector<std::uint64_t> local_hilbert_function(const std::vector<Poly>& ideal,
                                                  std::span<const Rat> point, std::uint32_t N) {
    LocalSystem sys = local_system(ideal, point);
    return hilbert_at_origin(sys.polys, sys.ctx, N);
}

namespace {

// Truncated univariate polynomials in t (index = power of t), length k+1.
using TPoly = std::vector<Rat>;

TPoly tmul(const TPoly& a, const TPoly& b, std::uint32_t k) {
    TPoly out(k + 1, Rat(0));
    for (std::uint32_t i = 0; i <= k; ++i) {
        if (is_zero(a[i])) continue;
        for (std::uint32_t j = 0; i + j <= k; ++j) {
            if (is_zero(b[j])) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

// Coefficient of t^j in g evaluated along the arc (each coordinate a TPoly).
TPoly eval_on_arc(const Poly& g, const std::vector<TPoly>& coords, std::uint32_t k) {
    TPoly total(k + 1, Rat(0));
    for (auto& [m, c] : g.terms()) {
        if (m.degree() > k) continue;  // each coordinate has zero constant term
        TPoly term(k + 1, Rat(0));
        term[0] = c;
        for (auto& [v, e] : m.factors)
            for (std::uint32_t rep = 0; rep < e; ++rep) term = tmul(term, coords[v], k);
        for (std::uint32_t j = 0; j <= k; ++j) total[j] += term[j];
    }
    return total;
}

std::string arc_key(const std::vector<std::vector<Rat>>& arc) {
    std::string s;
    for (auto& layer : arc) {
        for (auto& v : layer) {
            s += rat_to_string(v);
            s += ',';
        }
        s += ';';
    }
    return s;
}

}  // namespace

LiftResult lift_jet(const std::vector<Poly>& ideal, std::span<const Rat> point,
                    std::span<const Rat> v, std::uint32_t k, std::size_t branch_budget) {
    LocalSystem sys = local_system(ideal, point);
    std::uint32_t arity = static_cast<std::uint32_t>(sys.ctx ? sys.ctx->size() : point.size());
    MURPHY_REQUIRE(v.size() == arity, "tangent vector arity mismatch");

    RatMatrix jac = jacobian_at_origin(sys.polys, arity);
    for (std::size_t e = 0; e < sys.polys.size(); ++e) {
        Rat dot(0);
        for (std::uint32_t c = 0; c < arity; ++c) dot += jac.at(e, c) * v[c];
        MURPHY_REQUIRE(is_zero(dot), "direction is not in the kernel of the Jacobian");
    }
    if (k == 0) return {0, false, 0};

    auto kernel = kernel_basis(jac);

    // An arc is the list of its coefficient vectors c_1 = v, c_2, ...
    std::vector<std::vector<std::vector<Rat>>> cands;
    cands.push_back({std::vector<Rat>(v.begin(), v.end())});
    bool pruned = false;
    std::uint32_t pruned_at = 0;

    for (std::uint32_t order = 2; order <= k; ++order) {
        std::vector<std::vector<std::vector<Rat>>> next;
        std::set<std::string> seen;
        for (auto& arc : cands) {
            // Coordinates as truncated t-polynomials, one slot per new order.
            std::vector<TPoly> coords(arity, TPoly(order + 1, Rat(0)));
            for (std::uint32_t c = 0; c < arity; ++c)
                for (std::size_t j = 0; j < arc.size(); ++j) coords[c][j + 1] = arc[j][c];
            std::vector<Rat> rhs;
            for (auto& g : sys.polys) {
                TPoly val = eval_on_arc(g, coords, order);
                rhs.push_back(-val[order]);
            }
            auto sol = solve_linear(jac, rhs);
            if (!sol) continue;
            auto push = [&](std::vector<Rat> coeff) {
                auto child = arc;
                child.push_back(std::move(coeff));
                std::string key = arc_key(child);
                if (seen.insert(key).second) next.push_back(std::move(child));
            };
            push(sol->particular);
            for (auto& b : sol->kernel_basis) {
                std::vector<Rat> plus = sol->particular, minus = sol->particular;
                for (std::size_t c = 0; c < b.size(); ++c) {
                    plus[c] += b[c];
                    minus[c] -= b[c];
                }
                push(std::move(plus));
                push(std::move(minus));
            }
        }
        if (next.empty()) {
            LiftResult res;
            res.achieved = order - 1;
            res.inconclusive = pruned;
            res.inconclusive_at = pruned ? pruned_at : 0;
            return res;
        }
        if (next.size() > branch_budget) {
            next.resize(branch_budget);
            if (!pruned) {
                pruned = true;
                pruned_at = order;
            }
        }
        cands = std::move(next);
    }
    // Reaching full depth witnesses an arc of order k; earlier pruning
    // cannot have inflated that claim.
    return {k, false, 0};
}

std::vector<std::uint64_t> hilbert_convolve_smooth(const std::vector<std::uint64_t>& h,
                                                   std::size_t r) {
    if (r == 0) return h;
    std::uint32_t N = static_cast<std::uint32_t>(h.size());
    // Associated graded dimensions of the input.
    std::vector<Int> g(N);
    for (std::uint32_t i = 0; i < N; ++i)
        g[i] = Int(h[i]) - Int(i == 0 ? 0 : h[i - 1]);
    // Graded dimensions of an r-variable power-series ring: C(j+r-1, r-1),
    // computed exactly (they are large for wide smooth factors).
    std::vector<Int> smooth(N);
    smooth[0] = 1;
    for (std::uint32_t j = 1; j < N; ++j) {
        smooth[j] = smooth[j - 1] * Int(j + r - 1);
        MURPHY_CHECK(smooth[j] % Int(j) == 0, "binomial recursion must divide exactly");
        smooth[j] /= Int(j);
    }
    std::vector<std::uint64_t> out(N, 0);
    Int acc = 0;
    for (std::uint32_t j = 0; j < N; ++j) {
        for (std::uint32_t i = 0; i <= j; ++i) acc += g[i] * smooth[j - i];
        MURPHY_CHECK(acc.fits_ulong_p(), "Hilbert value exceeds the report range");
        out[j] = mpz_get_ui(acc.get_mpz_t());
    }
    return out;
}

Fingerprint fingerprint_local(LocalSystem sys, std::uint32_t N, std::uint32_t k_max,
                              std::size_t branch_budget) {
    std::uint64_t trunc = std::max<std::uint64_t>(N, k_max + 1);
    sys = reduce_local(std::move(sys), trunc);
    std::uint32_t arity = static_cast<std::uint32_t>(sys.ctx ? sys.ctx->size() : 0);

    Fingerprint fp;
    fp.N = N;
    fp.k_max = k_max;

    RatMatrix jac = jacobian_at_origin(sys.polys, arity);
    std::size_t core_tangent = arity - jac.rank();
    fp.tangent_dim = core_tangent + sys.smooth_dims;

    fp.hilbert = hilbert_convolve_smooth(hilbert_at_origin(sys.polys, sys.ctx, N),
                                         sys.smooth_dims);

    // Jet panel: kernel basis of the core plus synthesized smooth directions.
    std::vector<Rat> origin(arity, Rat(0));
    for (auto& dir : kernel_basis(jac)) {
        LiftResult lr = lift_jet(sys.polys.empty() ? std::vector<Poly>{} : sys.polys,
                                 origin, dir, k_max, branch_budget);
        fp.jets.push_back({lr.achieved, lr.inconclusive});
    }
    for (std::size_t i = 0; i < sys.smooth_dims; ++i) fp.jets.push_back({k_max, false});
    std::sort(fp.jets.begin(), fp.jets.end(), [](const JetEntry& a, const JetEntry& b) {
        if (a.achieved != b.achieved) return a.achieved > b.achieved;
        return a.inconclusive < b.inconclusive;
    });

    // Consistency of the fingerprint itself.
    for (std::size_t i = 1; i < fp.hilbert.size(); ++i)
        MURPHY_CHECK(fp.hilbert[i] >= fp.hilbert[i - 1], "Hilbert sequence must be nondecreasing");
    if (N >= 2)
        MURPHY_CHECK(fp.hilbert[1] == fp.tangent_dim + 1, "hilbert(2) must equal tangent_dim + 1");
    return fp;
}

Fingerprint fingerprint(const std::vector<Poly>& ideal, std::span<const Rat> point,
                        std::uint32_t N, std::uint32_t k_max, std::size_t branch_budget) {
    // lift_jet re-derives the local system; keep polys with their origin
    // translation for the core search.
    return fingerprint_local(local_system(ideal, point), N, k_max, branch_budget);
}

CompareReport compare_modulo_smooth(const Fingerprint& f1, const Fingerprint& f2,
                                    std::int64_t r) {
    MURPHY_REQUIRE(f1.N == f2.N && f1.k_max == f2.k_max,
                   "fingerprints computed at different N or k_max");
    MURPHY_REQUIRE(r >= 0, "relative dimension must be nonnegative in the claimed direction");

    CompareReport rep;
    rep.tangent_ok =
        f2.tangent_dim == f1.tangent_dim + static_cast<std::size_t>(r);
    rep.hilbert_ok = f2.hilbert == hilbert_convolve_smooth(f1.hilbert, static_cast<std::size_t>(r));

    // Jet panels: f2 should be f1 plus r unobstructed directions.
    std::vector<JetEntry> want = f1.jets;
    for (std::int64_t i = 0; i < r; ++i) want.push_back({f2.k_max, false});
    std::sort(want.begin(), want.end(), [](const JetEntry& a, const JetEntry& b) {
        if (a.achieved != b.achieved) return a.achieved > b.achieved;
        return a.inconclusive < b.inconclusive;
    });
    if (want.size() != f2.jets.size()) {
        rep.jets = TriState::Fail;
        return rep;
    }
    bool any_inconclusive = false;
    bool conclusive_mismatch = false;
    for (std::size_t i = 0; i < want.size(); ++i) {
        if (want[i].inconclusive || f2.jets[i].inconclusive) {
            any_inconclusive = true;
            continue;
        }
        if (want[i].achieved != f2.jets[i].achieved) conclusive_mismatch = true;
    }
    rep.jets = conclusive_mismatch ? TriState::Fail
               : any_inconclusive  ? TriState::Inconclusive
                                   : TriState::Pass;
    return rep;
}

ModelFingerprint fingerprint_model(const RealizationModel& model,
                                   const std::vector<std::uint32_t>& free_coords, std::uint32_t N,
                                   std::uint32_t k_max, std::size_t branch_budget,
                                   std::size_t unsliced_core_limit) {
    ModelFingerprint out;
    std::size_t t_full = tangent_dimension(model);

    std::vector<bool> designated(model.vars->size(), false);
    std::size_t n_designated = 0;
    for (std::uint32_t v : free_coords) {
        MURPHY_REQUIRE(v < model.vars->size(), "free coordinate index out of range");
        if (!designated[v]) {
            designated[v] = true;
            ++n_designated;
        }
    }

    // Designated coordinates are protected from the prune so the slice sees
    // all of them.
    ResidualSystem res = residual_system(model, free_coords);
    LocalSystem sys;
    sys.ctx = res.ctx;
    sys.polys = res.polys;
    for (std::uint32_t v : res.unpaired_dropped) {
        MURPHY_CHECK(!designated[v], "protected variable dropped by the prune");
        ++sys.smooth_dims;
    }

    // Slice along designated parameters still in the residual system: set
    // them to their base values (zero after translation) and drop them.
    std::size_t sliced = 0;
    {
        std::vector<std::string> names;
        std::vector<std::uint32_t> old_to_new(sys.ctx->size(), UINT32_MAX);
        Poly zero(sys.ctx);
        std::vector<Poly> polys = sys.polys;
        for (std::uint32_t v = 0; v < sys.ctx->size(); ++v) {
            if (designated[res.var_origin[v]]) {
                ++sliced;
                for (auto& p : polys) p = p.substituted(v, zero);
            } else {
                old_to_new[v] = static_cast<std::uint32_t>(names.size());
                names.push_back((*sys.ctx)[v]);
            }
        }
        VarCtx nctx = make_ctx(std::move(names));
        std::vector<Poly> npolys;
        for (auto& p : polys)
            if (!p.is_zero()) npolys.push_back(p.remapped(nctx, old_to_new));
        sys.ctx = nctx;
        sys.polys = std::move(npolys);
    }

    std::uint64_t trunc = std::max<std::uint64_t>(N, k_max + 1);
    LocalSystem reduced = reduce_local(std::move(sys), trunc);
    MURPHY_REQUIRE(!reduced.ctx || reduced.ctx->size() <= unsliced_core_limit,
                   "core too large for diagnostics; designate free coordinates to slice");

    // The slice removes exactly the designated parameters; they are smooth
    // factors of the model. Verify at the tangent level before synthesizing.
    Fingerprint base = fingerprint_local(reduced, N, k_max, branch_budget);
    std::size_t synth = n_designated;
    out.sliced = sliced;
    out.slice_consistent = (base.tangent_dim + synth == t_full);

    Fingerprint fp = base;
    fp.tangent_dim += synth;
    fp.hilbert = hilbert_convolve_smooth(base.hilbert, synth);
    for (std::size_t i = 0; i < synth; ++i) fp.jets.push_back({k_max, false});
    std::sort(fp.jets.begin(), fp.jets.end(), [](const JetEntry& a, const JetEntry& b) {
        if (a.achieved != b.achieved) return a.achieved > b.achieved;
        return a.inconclusive < b.inconclusive;
    });
    out.fp = fp;
    return out;
}

}  // namespace murphy
