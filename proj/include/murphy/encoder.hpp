#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "murphy/atomic.hpp"
#include "murphy/config.hpp"
#include "murphy/diagnostics.hpp"
#include "murphy/realization.hpp"

namespace murphy {

// A point the construction leaves free: auxiliary gadget points carry two
// parameters, filler points one (they slide along their line).
struct FreePoint {
    std::uint32_t point = 0;
    std::uint8_t dofs = 0;
};

struct EncodeResult {
    Configuration configuration;
    Witness witness;
    std::size_t free_params = 0;   // 2 per gadget + 1 per filler
    std::map<std::string, std::uint32_t> slot_map;  // slot name -> point index
    std::vector<FreePoint> free_points;
    std::size_t gadgets = 0;
    std::size_t fillers = 0;
    std::vector<Rat> shift;        // variable shift inherited from separation
};

// Compiles a separated atomic system into an incidence configuration with a
// rational witness: slot values become axis points, one projective
// arithmetic gadget per atom (auxiliary points drawn from a deterministic
// sequence, re-drawn on any exact degeneracy), every pair of marked lines
// given a shared marked point, lines with fewer than three points filled.
// Throws budget_error when the generic sequence cannot avoid degeneracies.
EncodeResult encode(const AtomicSystem& atomic);

// Model variable indices realizing the designated free points; the single
// degree of freedom of a filler picks the chart coordinate transverse to
// its line.
std::vector<std::uint32_t> designate_free_coords(const RealizationModel& model,
                                                 const std::vector<FreePoint>& free_points);

struct EquivalenceReport {
    Fingerprint input;
    Fingerprint realization;
    CompareReport compare;
    bool slice_consistent = true;
    std::size_t r = 0;
    TriState overall() const {
        if (!slice_consistent) return TriState::Fail;
        return compare.overall();
    }
};

// Fingerprints the input system at its witness and the realization model at
// the encoded witness, and compares them modulo a smooth factor of relative
// dimension r = free_params.
EquivalenceReport check_equivalence(const EncodeResult& result, const std::vector<Poly>& ideal,
                                    const std::vector<Rat>& witness, std::uint32_t N,
                                    std::uint32_t k_max);

// Exact output positions of the two arithmetic gadget templates, computed
// geometrically (joins and meets) from input positions a, b on the axis and
// an auxiliary point (u1, u2), u2 != 0. Exposed for soundness tests.
Rat add_gadget_output(const Rat& a, const Rat& b, const Rat& u1, const Rat& u2);
Rat mul_gadget_output(const Rat& a, const Rat& b, const Rat& u1, const Rat& u2);

}  // namespace murphy
