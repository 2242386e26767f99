#include "murphy/realization.hpp"

#include <algorithm>

#include "murphy/errors.hpp"
#include "murphy/matrix.hpp"

namespace murphy {

namespace {

// Rows of the 3x3 incidence determinant as affine chart expressions:
// entry (r, c) is either a constant or a variable (plus the pinned 1).
struct ChartRow {
    std::array<Rat, 3> consts{};
    std::array<std::int64_t, 3> var{-1, -1, -1};  // model var index or -1
};

ChartRow chart_row(const RealizationModel& m, std::uint32_t point) {
    ChartRow row;
    const PointRef& p = m.points[point];
    if (p.is_const) {
        row.consts = p.const_coords;
        return row;
    }
    row.consts[p.pinned] = 1;
    std::uint32_t k = 0;
    for (std::uint32_t c = 0; c < 3; ++c) {
        if (c == p.pinned) continue;
        row.var[c] = p.vars[k++];
    }
    return row;
}

}  // namespace

Poly RealizationModel::equation_poly(const IncidenceEq& eq) const {
    std::array<ChartRow, 3> rows{chart_row(*this, eq.pt), chart_row(*this, eq.a),
                                 chart_row(*this, eq.b)};
    auto entry = [&](int r, int c) {
        Poly p = Poly::constant(vars, rows[r].consts[c]);
        if (rows[r].var[c] >= 0)
            p = p + Poly::variable(vars, static_cast<std::uint32_t>(rows[r].var[c]));
        return p;
    };
    Poly det(vars);
    // Laplace along the first row.
    for (int c = 0; c < 3; ++c) {
        int c1 = (c + 1) % 3, c2 = (c + 2) % 3;
        if (c1 > c2) std::swap(c1, c2);
        Poly minor = entry(1, c1) * entry(2, c2) - entry(1, c2) * entry(2, c1);
        Poly term = entry(0, c) * minor;
        det = (c == 1) ? det - term : det + term;
    }
    return det;
}

std::vector<Poly> RealizationModel::equation_polys() const {
    std::vector<Poly> out;
    out.reserve(equations.size());
    for (auto& eq : equations) out.push_back(equation_poly(eq));
    return out;
}

Rat RealizationModel::equation_value(const IncidenceEq& eq, std::span<const Rat> at) const {
    std::array<std::array<Rat, 3>, 3> v;
    std::array<std::uint32_t, 3> idx{eq.pt, eq.a, eq.b};
    for (int r = 0; r < 3; ++r) {
        ChartRow row = chart_row(*this, idx[r]);
        for (int c = 0; c < 3; ++c) {
            v[r][c] = row.consts[c];
            if (row.var[c] >= 0) v[r][c] += at[static_cast<std::size_t>(row.var[c])];
        }
    }
    return v[0][0] * (v[1][1] * v[2][2] - v[1][2] * v[2][1]) -
           v[0][1] * (v[1][0] * v[2][2] - v[1][2] * v[2][0]) +
           v[0][2] * (v[1][0] * v[2][1] - v[1][1] * v[2][0]);
}

void RealizationModel::equation_gradient(const IncidenceEq& eq, std::span<const Rat> at,
                                         std::vector<Rat>& row_out) const {
    std::array<std::array<Rat, 3>, 3> v;
    std::array<ChartRow, 3> rows;
    std::array<std::uint32_t, 3> idx{eq.pt, eq.a, eq.b};
    for (int r = 0; r < 3; ++r) {
        rows[r] = chart_row(*this, idx[r]);
        for (int c = 0; c < 3; ++c) {
            v[r][c] = rows[r].consts[c];
            if (rows[r].var[c] >= 0) v[r][c] += at[static_cast<std::size_t>(rows[r].var[c])];
        }
    }
    // d det / d entry(r, c) = cofactor(r, c).
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            if (rows[r].var[c] < 0) continue;
            int r1 = (r + 1) % 3, r2 = (r + 2) % 3;
            int c1 = (c + 1) % 3, c2 = (c + 2) % 3;
            if (r1 > r2) std::swap(r1, r2);
            if (c1 > c2) std::swap(c1, c2);
            Rat minor = v[r1][c1] * v[r2][c2] - v[r1][c2] * v[r2][c1];
            if ((r + c) % 2 != 0) minor = -minor;
            row_out[static_cast<std::size_t>(rows[r].var[c])] += minor;
        }
    }
}

Rat RealizationModel::equation_partial(const IncidenceEq& eq, std::span<const Rat> at,
                                       std::uint32_t var) const {
    std::array<std::array<Rat, 3>, 3> v;
    std::array<ChartRow, 3> rows;
    std::array<std::uint32_t, 3> idx{eq.pt, eq.a, eq.b};
    for (int r = 0; r < 3; ++r) {
        rows[r] = chart_row(*this, idx[r]);
        for (int c = 0; c < 3; ++c) {
            v[r][c] = rows[r].consts[c];
            if (rows[r].var[c] >= 0) v[r][c] += at[static_cast<std::size_t>(rows[r].var[c])];
        }
    }
    Rat out(0);
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            if (rows[r].var[c] != static_cast<std::int64_t>(var)) continue;
            int r1 = (r + 1) % 3, r2 = (r + 2) % 3;
            int c1 = (c + 1) % 3, c2 = (c + 2) % 3;
            if (r1 > r2) std::swap(r1, r2);
            if (c1 > c2) std::swap(c1, c2);
            Rat minor = v[r1][c1] * v[r2][c2] - v[r1][c2] * v[r2][c1];
            if ((r + c) % 2 != 0) minor = -minor;
            out += minor;
        }
    }
    return out;
}

std::uint32_t default_chart_pin(std::uint32_t, const std::array<Rat, 3>& coords) {
    std::uint32_t best = 0;
    for (std::uint32_t c = 1; c < 3; ++c)
        if (abs_less(coords[best], coords[c])) best = c;
    return best;
}

RealizationModel realization_model(const Configuration& cfg, const Witness& w,
                                   const ChartPolicy& pin, bool assume_verified) {
    if (!assume_verified) {
        Report rep = verify_witness(cfg, w);
        MURPHY_REQUIRE(rep.pass(), "witness fails verification; model not built");
    }

    RealizationModel model;
    model.points.resize(cfg.m);
    std::vector<std::string> names;
    std::vector<Rat> base;
    static const char axis_name[3] = {'x', 'y', 'z'};

    for (std::uint32_t i = 0; i < cfg.m; ++i) {
        if (i < 4) {
            model.points[i].is_const = true;
            model.points[i].const_coords = frame_points()[i];
            continue;
        }
        std::uint32_t pinned = pin(i, w.points[i]);
        MURPHY_REQUIRE(pinned < 3 && !is_zero(w.points[i][pinned]),
                       "chart pin must select a nonzero witness coordinate");
        PointRef& ref = model.points[i];
        ref.is_const = false;
        ref.pinned = pinned;
        std::uint32_t k = 0;
        for (std::uint32_t c = 0; c < 3; ++c) {
            if (c == pinned) continue;
            ref.vars[k++] = static_cast<std::uint32_t>(names.size());
            names.push_back("p" + std::to_string(i + 1) + "_" + axis_name[c]);
            base.push_back(w.points[i][c] / w.points[i][pinned]);
        }
    }
    model.vars = make_ctx(std::move(names));
    model.base = std::move(base);

    // Line spans: first two ON points in index order.
    auto per_line = cfg.points_per_line();
    std::vector<std::array<std::uint32_t, 2>> span(cfg.n);
    for (std::uint32_t l = 0; l < cfg.n; ++l) {
        MURPHY_REQUIRE(per_line[l].size() >= 2,
                       "line " + std::to_string(l + 1) + " has fewer than two ON points");
        span[l] = {per_line[l][0], per_line[l][1]};
    }

    for (std::uint32_t l = 0; l < cfg.n; ++l) {
        for (std::uint32_t p : per_line[l]) {
            if (p == span[l][0] || p == span[l][1]) continue;
            model.equations.push_back({p, span[l][0], span[l][1], l});
        }
    }

    // Inequations are geometric open conditions; they do not enter tangent,
    // Hilbert, or jet computations. Materialize them only at desk scale.
    if (static_cast<std::uint64_t>(cfg.m) * cfg.m + static_cast<std::uint64_t>(cfg.m) * cfg.n <=
        20000) {
        model.inequations_materialized = true;
        auto value_of = [&](const Poly& p) { return p.eval(model.base); };
        auto point_poly = [&](std::uint32_t i, std::uint32_t c) {
            ChartRow row = chart_row(model, i);
            Poly p = Poly::constant(model.vars, row.consts[c]);
            if (row.var[c] >= 0)
                p = p + Poly::variable(model.vars, static_cast<std::uint32_t>(row.var[c]));
            return p;
        };
        // Point distinctness: for each pair the first 2x2 minor that is
        // nonzero at the witness.
        for (std::uint32_t i = 0; i < cfg.m; ++i) {
            for (std::uint32_t j = i + 1; j < cfg.m; ++j) {
                for (auto [a, b] : {std::pair<int, int>{0, 1}, {0, 2}, {1, 2}}) {
                    Poly minor = point_poly(i, a) * point_poly(j, b) -
                                 point_poly(i, b) * point_poly(j, a);
                    if (!is_zero(value_of(minor))) {
                        model.inequations.push_back(minor);
                        break;
                    }
                }
            }
        }
        // OFF incidences: det[P; span] != 0.
        for (std::uint32_t i = 0; i < cfg.m; ++i) {
            for (std::uint32_t l = 0; l < cfg.n; ++l) {
                if (cfg.is_on(i, l) || i == span[l][0] || i == span[l][1]) continue;
                model.inequations.push_back(
                    model.equation_poly({i, span[l][0], span[l][1], l}));
            }
        }
        // Line distinctness: minors of the two span cross products.
        for (std::uint32_t l = 0; l < cfg.n; ++l) {
            for (std::uint32_t l2 = l + 1; l2 < cfg.n; ++l2) {
                std::array<Poly, 3> u, v;
                for (int c = 0; c < 3; ++c) {
                    int c1 = (c + 1) % 3, c2 = (c + 2) % 3;
                    u[c] = point_poly(span[l][0], c1) * point_poly(span[l][1], c2) -
                           point_poly(span[l][0], c2) * point_poly(span[l][1], c1);
                    v[c] = point_poly(span[l2][0], c1) * point_poly(span[l2][1], c2) -
                           point_poly(span[l2][0], c2) * point_poly(span[l2][1], c1);
                }
                for (auto [a, b] : {std::pair<int, int>{0, 1}, {0, 2}, {1, 2}}) {
                    Poly minor = u[a] * v[b] - u[b] * v[a];
                    if (!is_zero(value_of(minor))) {
                        model.inequations.push_back(minor);
                        break;
                    }
                }
            }
        }
        for (auto& ineq : model.inequations)
            MURPHY_CHECK(!is_zero(ineq.eval(model.base)), "inequation vanishes at base");
    }

    // Equations vanish at base by construction; assert it.
    for (auto& eq : model.equations)
        MURPHY_CHECK(is_zero(model.equation_value(eq, model.base)),
                     "incidence equation does not vanish at the witness");
    return model;
}

namespace {

// Closed-block elimination state shared by tangent_dimension and
// residual_system. Eliminates (point, equations) blocks whose Jacobian block
// is invertible and whose variables occur nowhere else.
struct PruneResult {
    std::vector<bool> eq_alive;
    std::vector<bool> point_alive;   // variable points still in play
    std::size_t rank = 0;
    std::vector<std::uint32_t> unpaired_vars;  // dropped without an equation pairing
};

PruneResult prune_blocks(const RealizationModel& model,
                         const std::vector<std::uint32_t>& protect = {}) {
    const std::uint32_t m = static_cast<std::uint32_t>(model.points.size());
    PruneResult out;
    out.eq_alive.assign(model.equations.size(), true);
    out.point_alive.assign(m, true);
    for (std::uint32_t i = 0; i < m; ++i)
        if (model.points[i].is_const) out.point_alive[i] = false;
    std::vector<bool> protected_var(model.vars->size(), false);
    for (std::uint32_t v : protect) protected_var[v] = true;

    // Equations that mention each variable point.
    std::vector<std::vector<std::uint32_t>> eqs_of(m);
    for (std::uint32_t e = 0; e < model.equations.size(); ++e) {
        auto& eq = model.equations[e];
        for (std::uint32_t p : {eq.pt, eq.a, eq.b})
            if (!model.points[p].is_const) eqs_of[p].push_back(e);
    }
    for (auto& v : eqs_of) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }

    auto block_entry = [&](std::uint32_t e, std::uint32_t var) {
        return model.equation_partial(model.equations[e], model.base, var);
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::uint32_t i = m; i-- > 0;) {
            if (!out.point_alive[i] || model.points[i].is_const) continue;
            std::vector<std::uint32_t> active;
            for (std::uint32_t e : eqs_of[i])
                if (out.eq_alive[e]) active.push_back(e);
            const auto& vars = model.points[i].vars;
            if (protected_var[vars[0]] || protected_var[vars[1]]) continue;
            if (active.size() == 2) {
                // 2x2 block must be invertible at the base.
                Rat a = block_entry(active[0], vars[0]);
                Rat b = block_entry(active[0], vars[1]);
                Rat c = block_entry(active[1], vars[0]);
                Rat d = block_entry(active[1], vars[1]);
                if (!is_zero(a * d - b * c)) {
                    out.eq_alive[active[0]] = out.eq_alive[active[1]] = false;
                    out.point_alive[i] = false;
                    out.rank += 2;
                    changed = true;
                }
            } else if (active.size() == 1) {
                Rat a = block_entry(active[0], vars[0]);
                Rat b = block_entry(active[0], vars[1]);
                if (!is_zero(a) || !is_zero(b)) {
                    out.eq_alive[active[0]] = false;
                    out.point_alive[i] = false;  // one var pivots, the other is free
                    out.rank += 1;
                    out.unpaired_vars.push_back(!is_zero(a) ? vars[1] : vars[0]);
                    changed = true;
                }
            }
            // Equation-free points stay live; their freedom is the caller's
            // to account for.
        }
    }
    return out;
}

}  // namespace

std::size_t tangent_dimension(const RealizationModel& model) {
    PruneResult pruned = prune_blocks(model);

    // Dense rank of the surviving rows restricted to surviving columns.
    std::vector<std::int64_t> col_of(model.vars->size(), -1);
    std::size_t ncols = 0;
    for (std::uint32_t i = 0; i < model.points.size(); ++i) {
        if (!pruned.point_alive[i]) continue;
        for (std::uint32_t v : model.points[i].vars) col_of[v] = static_cast<std::int64_t>(ncols++);
    }
    std::vector<std::uint32_t> rows;
    for (std::uint32_t e = 0; e < model.equations.size(); ++e)
        if (pruned.eq_alive[e]) rows.push_back(e);

    RatMatrix jac(rows.size(), ncols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const IncidenceEq& eq = model.equations[rows[r]];
        for (std::uint32_t pt : {eq.pt, eq.a, eq.b}) {
            if (model.points[pt].is_const) continue;
            for (std::uint32_t v : model.points[pt].vars) {
                Rat d = model.equation_partial(eq, model.base, v);
                if (col_of[v] >= 0) {
                    jac.at(r, static_cast<std::size_t>(col_of[v])) += d;
                } else {
                    // Closed-block invariant: pruned variables appear in no
                    // live row.
                    MURPHY_CHECK(is_zero(d), "pruned variable occurs in a live equation");
                }
            }
        }
    }
    std::size_t rank = pruned.rank + jac.rank();
    MURPHY_CHECK(rank <= model.vars->size(), "rank exceeds variable count");
    return model.vars->size() - rank;
}

ResidualSystem residual_system(const RealizationModel& model, const ProtectedVars& protect) {
    PruneResult pruned = prune_blocks(model, protect);
    ResidualSystem out;
    out.pruned_rank = pruned.rank;
    out.total_vars = model.vars->size();
    out.unpaired_dropped = pruned.unpaired_vars;

    std::vector<std::uint32_t> old_to_new(model.vars->size(), UINT32_MAX);
    std::vector<std::string> names;
    for (std::uint32_t i = 0; i < model.points.size(); ++i) {
        if (!pruned.point_alive[i]) continue;
        for (std::uint32_t v : model.points[i].vars) {
            old_to_new[v] = static_cast<std::uint32_t>(names.size());
            names.push_back((*model.vars)[v]);
            out.var_origin.push_back(v);
        }
    }
    out.ctx = make_ctx(std::move(names));

    std::vector<Rat> shifted_base;
    for (std::uint32_t v : out.var_origin) shifted_base.push_back(model.base[v]);

    for (std::uint32_t e = 0; e < model.equations.size(); ++e) {
        if (!pruned.eq_alive[e]) continue;
        Poly p = model.equation_poly(model.equations[e]);
        Poly small = p.remapped(out.ctx, old_to_new);
        out.polys.push_back(small.translated(shifted_base));
    }
    return out;
}

}  // namespace murphy
