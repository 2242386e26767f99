#include "murphy/atomic.hpp"

#include "doctest.h"
#include "murphy/errors.hpp"

using namespace murphy;

namespace {

std::vector<Rat> pt(std::initializer_list<const char*> vals) {
    std::vector<Rat> out;
    for (auto* v : vals) out.push_back(parse_rat(v));
    return out;
}

// Every slot expression evaluated at the witness equals the slot value.
void check_expressions(const AtomicSystem& sys) {
    for (auto& slot : sys.slots) CHECK(slot.expr.eval(sys.witness) == slot.value);
}

}  // namespace

TEST_CASE("x^2 at the origin wires a single product to the anchor") {
    auto ctx = make_ctx({"x"});
    AtomicSystem sys = to_atomic(ctx, {parse_poly("x^2", ctx)}, pt({"0"}));
    REQUIRE(sys.atoms.size() == 1);
    CHECK(sys.atoms[0].kind == Atom::Mul);
    CHECK(sys.atoms[0].a == 2);  // the x slot
    CHECK(sys.atoms[0].b == 2);
    CHECK(sys.atoms[0].c == 0);  // anchor 0
    CHECK(!sys.values_distinct);  // x sits at the anchor value
    check_expressions(sys);
}

TEST_CASE("x*y - 1 at (2, 1/2): atoms satisfied, product slot at value 1") {
    auto ctx = make_ctx({"x", "y"});
    AtomicSystem sys = to_atomic(ctx, {parse_poly("x*y - 1", ctx)}, pt({"2", "1/2"}));
    for (auto& at : sys.atoms) CHECK(sys.atom_satisfied(at));
    bool has_product_at_one = false;
    for (auto& slot : sys.slots)
        if (slot.role == SlotRole::Slack && slot.value == 1) has_product_at_one = true;
    CHECK(has_product_at_one);
    // The final atom of the chain targets the anchor.
    CHECK(sys.atoms.back().c == 0);
    check_expressions(sys);
}

TEST_CASE("witness off the scheme is rejected") {
    auto ctx = make_ctx({"x"});
    CHECK_THROWS_AS(to_atomic(ctx, {parse_poly("x^3 - x", ctx)}, pt({"2"})), input_error);
    // The valid witnesses of x^3 - x are -1, 0, 1.
    for (auto* w : {"-1", "0", "1"})
        CHECK_NOTHROW(to_atomic(ctx, {parse_poly("x^3 - x", ctx)}, pt({w})));
}

TEST_CASE("identical expressions share one slot") {
    auto ctx = make_ctx({"x", "y"});
    // x^2 appears in both generators; the monomial slot is built once.
    AtomicSystem sys = to_atomic(ctx, {parse_poly("x^2 - y", ctx), parse_poly("x^2*y - y^2", ctx)},
                                 pt({"2", "4"}));
    std::size_t x2_slots = 0;
    for (auto& slot : sys.slots)
        if (slot.expr == parse_poly("x^2", ctx)) ++x2_slots;
    CHECK(x2_slots == 1);
    check_expressions(sys);
}

TEST_CASE("separate_values keeps already-distinct systems unchanged") {
    auto ctx = make_ctx({"x", "y"});
    AtomicSystem sys = to_atomic(ctx, {parse_poly("x*y - 6", ctx)}, pt({"2", "3"}));
    CHECK(sys.values_distinct);
    AtomicSystem sep = separate_values(sys);
    CHECK(sep.shift == std::vector<Rat>{Rat(0), Rat(0)});
    CHECK(sep.values_distinct);
}

TEST_CASE("separate_values resolves collision-heavy systems") {
    // x, x^2, x^3 all vanish at 0 and collide with the zero anchor.
    auto ctx = make_ctx({"x"});
    AtomicSystem lax = to_atomic(ctx, {parse_poly("x^3", ctx)}, pt({"0"}));
    CHECK(!lax.values_distinct);
    AtomicSystem sep = separate_values(lax);
    CHECK(sep.values_distinct);
    CHECK(!sep.shift.empty());
    CHECK(!is_zero(sep.shift[0]));
    for (auto& at : sep.atoms) CHECK(sep.atom_satisfied(at));
    check_expressions(sep);

    // The shifted generators entail the shifted system: the final atoms wire
    // chains whose expressions sum to the generators.
    std::vector<Rat> w = sep.witness;
    for (auto& g : sep.generators) CHECK(is_zero(g.eval(w)));
}

TEST_CASE("separation handles equal witness values of distinct expressions") {
    auto ctx = make_ctx({"x", "y"});
    // Both variables at 0; x and y are distinct expressions with equal value.
    AtomicSystem sep = separate_values(to_atomic(ctx, {parse_poly("x*y", ctx)}, pt({"0", "0"})));
    CHECK(sep.values_distinct);
    CHECK(sep.witness[0] != sep.witness[1]);
}

TEST_CASE("empty system with a free variable") {
    auto ctx = make_ctx({"x"});
    AtomicSystem sys = to_atomic(ctx, {}, pt({"5"}));
    CHECK(sys.atoms.empty());
    CHECK(sys.slots.size() == 3);  // anchors + x
    CHECK(sys.values_distinct);
}
