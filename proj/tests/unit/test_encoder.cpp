#include "murphy/encoder.hpp"

#include <random>

#include "doctest.h"
#include "murphy/errors.hpp"

using namespace murphy;

namespace {

std::vector<Rat> pt(std::initializer_list<const char*> vals) {
    std::vector<Rat> out;
    for (auto* v : vals) out.push_back(parse_rat(v));
    return out;
}

EncodeResult encode_system(const VarCtx& ctx, std::initializer_list<const char*> gens,
                           std::vector<Rat> wit) {
    std::vector<Poly> ideal;
    for (auto* g : gens) ideal.push_back(parse_poly(g, ctx));
    return encode(separate_values(to_atomic(ctx, ideal, wit)));
}

}  // namespace

TEST_CASE("gadget soundness: random inputs and admissible auxiliary points") {
    std::mt19937 rng(414243);
    std::uniform_int_distribution<int> num(-30, 30), den(1, 9), aux1(-8, 8), aux2(1, 9);
    int done = 0;
    while (done < 200) {
        Rat a(num(rng), den(rng));
        Rat b(num(rng), den(rng));
        Rat u1(aux1(rng)), u2(aux2(rng));
        try {
            CHECK(add_gadget_output(a, b, u1, u2) == a + b);
            CHECK(mul_gadget_output(a, b, u1, u2) == a * b);
            ++done;
        } catch (const input_error&) {
            // Inadmissible draw (parallel lines); take another sample.
        }
    }
}

TEST_CASE("encoding x^2 at the origin satisfies the tangent relation") {
    auto ctx = make_ctx({"x"});
    EncodeResult enc = encode_system(ctx, {"x^2"}, pt({"0"}));

    CHECK(validate_configuration(enc.configuration).pass());
    CHECK(verify_witness(enc.configuration, enc.witness).pass());
    CHECK(enc.free_params == 2 * enc.gadgets + enc.fillers);

    RealizationModel model =
        realization_model(enc.configuration, enc.witness, default_chart_pin, true);
    // Input tangent dimension of (x^2) at 0 is 1.
    CHECK(tangent_dimension(model) == 1 + enc.free_params);
}

TEST_CASE("encoding the empty system leaves one free axis point") {
    auto ctx = make_ctx({"x"});
    EncodeResult enc = encode_system(ctx, {}, pt({"5"}));
    CHECK(validate_configuration(enc.configuration).pass());
    CHECK(verify_witness(enc.configuration, enc.witness).pass());
    RealizationModel model =
        realization_model(enc.configuration, enc.witness, default_chart_pin, true);
    CHECK(tangent_dimension(model) == 1 + enc.free_params);
}

TEST_CASE("encoding a line: tangent relation for x + y") {
    auto ctx = make_ctx({"x", "y"});
    EncodeResult enc = encode_system(ctx, {"x+y"}, pt({"1", "-1"}));
    RealizationModel model =
        realization_model(enc.configuration, enc.witness, default_chart_pin, true);
    CHECK(tangent_dimension(model) == 1 + enc.free_params);
}

TEST_CASE("check_equivalence: pass for x^2, fail for a corrupted r") {
    auto ctx = make_ctx({"x"});
    std::vector<Poly> ideal{parse_poly("x^2", ctx)};
    std::vector<Rat> wit = pt({"0"});
    EncodeResult enc = encode(separate_values(to_atomic(ctx, ideal, wit)));

    EquivalenceReport rep = check_equivalence(enc, ideal, wit, 5, 6);
    CHECK(rep.overall() == TriState::Pass);
    CHECK(rep.compare.tangent_ok);
    CHECK(rep.compare.hilbert_ok);
    // The order-2 jet obstruction appears on both sides.
    CHECK(rep.input.jets.back().achieved == 1);
    CHECK(rep.realization.jets.back().achieved == 1);

    EncodeResult corrupted = enc;
    corrupted.free_params += 1;
    EquivalenceReport bad = check_equivalence(corrupted, ideal, wit, 5, 6);
    CHECK(bad.overall() == TriState::Fail);
}

TEST_CASE("check_equivalence: smooth input is everywhere unobstructed") {
    auto ctx = make_ctx({"x"});
    std::vector<Poly> ideal{parse_poly("x", ctx)};
    std::vector<Rat> wit = pt({"0"});
    EncodeResult enc = encode(separate_values(to_atomic(ctx, ideal, wit)));
    EquivalenceReport rep = check_equivalence(enc, ideal, wit, 5, 6);
    CHECK(rep.overall() == TriState::Pass);
    for (auto& j : rep.realization.jets) CHECK(j.achieved == 6);
}

TEST_CASE("encoding is deterministic") {
    auto ctx = make_ctx({"x", "y"});
    std::vector<Poly> ideal{parse_poly("x*y", ctx)};
    std::vector<Rat> wit = pt({"0", "0"});
    AtomicSystem sep = separate_values(to_atomic(ctx, ideal, wit));
    EncodeResult a = encode(sep);
    EncodeResult b = encode(sep);
    CHECK(a.configuration.m == b.configuration.m);
    CHECK(a.configuration.n == b.configuration.n);
    CHECK(a.configuration.on == b.configuration.on);
    CHECK(a.free_params == b.free_params);
    REQUIRE(a.witness.points.size() == b.witness.points.size());
    for (std::size_t i = 0; i < a.witness.points.size(); ++i)
        CHECK(projectively_equal(a.witness.points[i], b.witness.points[i]));
}

TEST_CASE("every encoded configuration passes validation and verification") {
    struct Case {
        std::vector<std::string> vars;
        const char* gen;
        std::vector<Rat> wit;
    };
    std::vector<Case> corpus{
        {{"x"}, "x^3", pt({"0"})},
        {{"x", "y"}, "x^2 - y^3", pt({"0", "0"})},
        {{"x", "y"}, "x*y - 6", pt({"2", "3"})},
    };
    for (auto& c : corpus) {
        auto ctx = make_ctx(c.vars);
        EncodeResult enc = encode_system(ctx, {c.gen}, c.wit);
        CHECK(validate_configuration(enc.configuration).pass());
        CHECK(verify_witness(enc.configuration, enc.witness).pass());
        // Every gadget auxiliary point contributes two parameters.
        std::size_t dofs = 0;
        for (auto& fp : enc.free_points) dofs += fp.dofs;
        CHECK(dofs == enc.free_params);
    }
}
