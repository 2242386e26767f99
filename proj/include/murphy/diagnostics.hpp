#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "murphy/poly.hpp"
#include "murphy/realization.hpp"

namespace murphy {

// Pointed local system: generators vanishing at the origin of `ctx`, plus
// split-off smooth factor dimensions accumulated by reductions.
struct LocalSystem {
    VarCtx ctx;
    std::vector<Poly> polys;  // all vanish at the origin
    std::size_t smooth_dims = 0;
};

LocalSystem local_system(const std::vector<Poly>& ideal, std::span<const Rat> point);

// Reduces a local system modulo degree `trunc`: repeatedly eliminates a
// variable against an equation with unit linear coefficient (implicit
// function theorem, truncated), then splits off variables absent from every
// equation as smooth factor dimensions. Local isomorphism class at the
// origin is preserved up to degree `trunc`.
LocalSystem reduce_local(LocalSystem sys, std::uint64_t trunc);

// dim O/m^k for k = 1..N of the pointed scheme cut by `ideal` at `point`,
// by linear algebra on monomial multiples of the generators.
// Throws input_error if a generator does not vanish at the point.
std::vector<std::uint64_t> local_hilbert_function(const std::vector<Poly>& ideal,
                                                  std::span<const Rat> point, std::uint32_t N);

// Result of the order-by-order arc search along one tangent direction.
struct LiftResult {
    std::uint32_t achieved = 0;      // largest order reached (<= k)
    bool inconclusive = false;       // branch budget forced pruning
    std::uint32_t inconclusive_at = 0;
};

// Maximal order k' <= k such that the search finds an arc through `point`
// with initial direction v annihilating the ideal mod t^(k'+1).
// Precondition: v lies in the kernel of the Jacobian at `point`.
LiftResult lift_jet(const std::vector<Poly>& ideal, std::span<const Rat> point,
                    std::span<const Rat> v, std::uint32_t k, std::size_t branch_budget = 16);

struct JetEntry {
    std::uint32_t achieved = 0;
    bool inconclusive = false;
};

// Computable invariants of a singularity up to smooth factors: tangent
// dimension, truncated local Hilbert function, and the lift orders of a
// kernel-basis panel of tangent directions (sorted descending).
struct Fingerprint {
    std::uint32_t N = 0;
    std::uint32_t k_max = 0;
    std::size_t tangent_dim = 0;
    std::vector<std::uint64_t> hilbert;  // k = 1..N
    std::vector<JetEntry> jets;          // tangent_dim entries, achieved desc
};

Fingerprint fingerprint(const std::vector<Poly>& ideal, std::span<const Rat> point,
                        std::uint32_t N, std::uint32_t k_max, std::size_t branch_budget = 16);

// Fingerprint of a pointed local system (already at the origin).
Fingerprint fingerprint_local(LocalSystem sys, std::uint32_t N, std::uint32_t k_max,
                              std::size_t branch_budget = 16);

// Hilbert sequence of (the given sequence) x (smooth factor of dimension r).
std::vector<std::uint64_t> hilbert_convolve_smooth(const std::vector<std::uint64_t>& h,
                                                   std::size_t r);

enum class TriState { Pass, Fail, Inconclusive };

struct CompareReport {
    bool tangent_ok = false;
    bool hilbert_ok = false;
    TriState jets = TriState::Fail;
    TriState overall() const {
        if (!tangent_ok || !hilbert_ok || jets == TriState::Fail) return TriState::Fail;
        return jets;
    }
    bool pass() const { return overall() == TriState::Pass; }
};

// True (Pass) iff the fingerprints are consistent with f2 ~ f1 x A^r:
// tangent dimensions differ by r, f2's Hilbert sequence is f1's convolved
// with an r-variable power-series ring, and jet panels agree after removing
// r unobstructed directions from f2. Throws input_error on N/k_max mismatch
// or negative r.
CompareReport compare_modulo_smooth(const Fingerprint& f1, const Fingerprint& f2, std::int64_t r);

// Fingerprint of a realization model. `free_coords` lists model variables
// (by index) designated as smooth parameters; the model is sliced along
// them and the slice codimension is verified against an independent exact
// tangent computation. slice_consistent reports that verification.
struct ModelFingerprint {
    Fingerprint fp;
    bool slice_consistent = true;
    std::size_t sliced = 0;
};
ModelFingerprint fingerprint_model(const RealizationModel& model,
                                   const std::vector<std::uint32_t>& free_coords, std::uint32_t N,
                                   std::uint32_t k_max, std::size_t branch_budget = 16,
                                   std::size_t unsliced_core_limit = 14);

}  // namespace murphy
