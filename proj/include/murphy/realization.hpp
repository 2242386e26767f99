#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "murphy/config.hpp"
#include "murphy/poly.hpp"

namespace murphy {

// Chart form of one marked point inside the model: either a frame constant
// or a variable point with one coordinate pinned to 1.
struct PointRef {
    bool is_const = false;
    std::array<Rat, 3> const_coords{};   // when is_const
    std::uint32_t pinned = 0;            // coordinate pinned to 1
    std::array<std::uint32_t, 2> vars{}; // model variables of the two free coords
};

// det[P; A; B] = 0, where A and B span the line (its first two ON points).
struct IncidenceEq {
    std::uint32_t pt, a, b;   // marked point indices
    std::uint32_t line;       // provenance
};

// Affine-chart presentation of the realization space at a witness: one chart
// per point (largest-coordinate pinning), lines eliminated through spans,
// ON incidences as determinant equations, OFF/distinctness as inequations.
struct RealizationModel {
    VarCtx vars;
    std::vector<Rat> base;               // witness in chart coordinates
    std::vector<PointRef> points;        // size m
    std::vector<IncidenceEq> equations;
    std::vector<Poly> inequations;       // materialized for desk-scale models only
    bool inequations_materialized = false;

    // The determinant polynomial of one equation over `vars`.
    Poly equation_poly(const IncidenceEq& eq) const;
    std::vector<Poly> equation_polys() const;

    // Value and gradient row of one equation at an assignment.
    Rat equation_value(const IncidenceEq& eq, std::span<const Rat> at) const;
    void equation_gradient(const IncidenceEq& eq, std::span<const Rat> at,
                           std::vector<Rat>& row_out) const;
    // Single partial derivative d(det)/d(var) at an assignment.
    Rat equation_partial(const IncidenceEq& eq, std::span<const Rat> at,
                         std::uint32_t var) const;
};

// Chooses the pinned coordinate for a variable point; default policy pins
// the coordinate of largest absolute value (ties to the lowest index).
using ChartPolicy = std::function<std::uint32_t(std::uint32_t point, const std::array<Rat, 3>&)>;
std::uint32_t default_chart_pin(std::uint32_t point, const std::array<Rat, 3>& coords);

// Builds the model at a verified witness. Throws input_error if verification
// fails or some line has fewer than two ON points.
RealizationModel realization_model(const Configuration& cfg, const Witness& w,
                                   const ChartPolicy& pin = default_chart_pin,
                                   bool assume_verified = false);

// Exact tangent dimension #vars - rank(Jacobian at base). Uses closed-block
// elimination before dense rank so large models stay tractable.
std::size_t tangent_dimension(const RealizationModel& model);

// Variables the closed-block elimination must leave in the residual system
// (callers that slice along designated coordinates need them to survive).
using ProtectedVars = std::vector<std::uint32_t>;

// Residual system after closed-block elimination: equations that survive,
// as polynomials translated so the base is at the origin, over a compacted
// context, plus the number of eliminated (var, equation) rank pairs.
struct ResidualSystem {
    VarCtx ctx;
    std::vector<Poly> polys;                 // base at origin
    std::vector<std::uint32_t> var_origin;   // residual var -> model var index
    std::size_t pruned_rank = 0;
    std::size_t total_vars = 0;              // model variable count
    // Pruned variables not paired with an equation: free directions split
    // off as smooth factors (model variable indices).
    std::vector<std::uint32_t> unpaired_dropped;
};
ResidualSystem residual_system(const RealizationModel& model,
                               const ProtectedVars& protect = {});

}  // namespace murphy
