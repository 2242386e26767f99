#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "murphy/poly.hpp"

namespace murphy {

// Binary arithmetic relation between value slots:
//   Add: value(a) + value(b) = value(c)
//   Mul: value(a) * value(b) = value(c)
struct Atom {
    enum Kind { Add, Mul } kind;
    std::uint32_t a, b, c;
};

enum class SlotRole { Anchor0, Anchor1, Variable, Slack, Constant };

// One value slot: a symbolic expression in the (possibly shifted) system
// variables together with its witness value.
struct Slot {
    std::string name;
    Poly expr;
    Rat value;
    SlotRole role = SlotRole::Slack;
};

// Straight-line decomposition of a polynomial system into Add/Mul atoms.
// Slots 0 and 1 are the anchors (values 0 and 1). Every atom is satisfied
// exactly by the slot values, and the final atom of each generator chain
// wires its output to anchor 0.
struct AtomicSystem {
    VarCtx ctx;                      // system variables (after any shift)
    std::vector<Poly> generators;    // the system the atoms entail
    std::vector<Rat> witness;        // witness of `generators`
    std::vector<Slot> slots;
    std::vector<Atom> atoms;
    std::vector<Rat> shift;          // new x_i = old x_i + shift_i (empty: none)
    bool values_distinct = false;    // slot values and anchors pairwise distinct

    bool atom_satisfied(const Atom& at) const;
};

// Decomposes each generator into atoms over the given witness; integer
// constants are built from 1 by doubling-and-adding, subtraction a - b = c
// is the atom Add(c, b, a). Collisions between slot values are permitted
// here and recorded via values_distinct.
// Throws input_error if a generator does not vanish at the witness.
AtomicSystem to_atomic(VarCtx ctx, const std::vector<Poly>& ideal,
                       const std::vector<Rat>& witness);
AtomicSystem to_atomic(const std::vector<Poly>& ideal, const std::vector<Rat>& witness);

// Re-derives the decomposition after a deterministic sequence of rational
// affine changes of the system variables until all slot values and anchors
// are pairwise distinct. Identical-expression slots are merged (the builder
// caches by exact symbolic expansion). Identity is tried first.
// Throws budget_error if no change in the sequence separates the values.
AtomicSystem separate_values(const AtomicSystem& sys);

}  // namespace murphy
