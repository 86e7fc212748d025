#include <doctest.h>

#include "grd/fixtures.hpp"
#include "grd/reduction.hpp"

using namespace grd;

TEST_SUITE("reduction") {

TEST_CASE("lifted fibers are direct sums over the domain") {
    auto fx = make_swap_fixture();
    LiftedBundle lifted(fx, 1);
    // Both slices see both points: dimensions 2 and 2.
    CHECK(lifted.total_dim() == 2);
    for (int g = 0; g < fx.group->num_arrows(); ++g) CHECK(lifted.dim(g) == 2);
    CHECK(check_bundle_axioms(lifted, {5}).pass());
}

TEST_CASE("degenerate partial action lifts to zero fibers off the identity") {
    auto fx = make_degenerate_fixture(cyclic_group(2), 3);
    LiftedBundle lifted(fx, 1);
    int e = fx.group->unit_arrow(0);
    CHECK(lifted.dim(e) == 3);
    CHECK(lifted.dim(1 - e) == 0);
}

TEST_CASE("shift fixture fiber dimensions match the domain counts") {
    auto fx = make_shift_transformation(2, 4, 1);
    LiftedBundle lifted(fx, 1);
    for (int g = 0; g < fx.group->num_arrows(); ++g)
        CHECK(lifted.dim(g) == static_cast<int>(lifted.slice(g).size()));
    // The identity slice holds every unit arrow.
    CHECK(static_cast<int>(lifted.slice(fx.group->unit_arrow(0)).size()) ==
          fx.groupoid->num_units());
    CHECK(check_bundle_axioms(lifted, {5}).pass());
}

TEST_CASE("phi transport is a bijection with support transport") {
    auto fx = make_swap_fixture();
    auto base = std::make_shared<TrivialBundle>(fx.groupoid, 1);
    auto lifted = std::make_shared<LiftedBundle>(fx, 1);
    // A single groupoid delta maps to a single nonzero block coordinate.
    int gp = fx.groupoid->arrow_id("g:1@p");
    Section d(base);
    d.set(gp, Matrix::Identity(1, 1));
    Section td = phi_transport(lifted, d);
    CHECK(td.support().size() == 1);
    CHECK(td.support().front() == fx.cocycle(gp));
    CHECK(td.value(td.support().front()).cwiseAbs().sum() == doctest::Approx(1.0));
    // Unit-supported sections sit at the group identity.
    Section u(base);
    u.set(fx.groupoid->unit_arrow(0), Matrix::Identity(1, 1));
    Section tu = phi_transport(lifted, u);
    CHECK(tu.support() == std::vector<int>{fx.group->unit_arrow(0)});
    // Round trip recovers entries exactly.
    RngStream rng(2);
    std::vector<int> all(static_cast<std::size_t>(fx.groupoid->num_arrows()));
    for (int a = 0; a < fx.groupoid->num_arrows(); ++a) all[static_cast<std::size_t>(a)] = a;
    for (int i = 0; i < 20; ++i) {
        Section f = random_section(base, all, rng);
        CHECK(max_entry_distance(phi_inverse(base, lifted, phi_transport(lifted, f)), f) == 0.0);
    }
}

TEST_CASE("equivalence check on the swap fixture") {
    ReductionCheckOptions opt;
    opt.section_pairs = 50;
    opt.seed = 3;
    auto report = reduction_equivalence_check(make_swap_fixture(), 1, opt);
    CHECK(report.pass());
    auto report2 = reduction_equivalence_check(make_swap_fixture(), 2, opt);
    CHECK(report2.pass());
}

TEST_CASE("equivalence check on the shift fixture at matching budgets") {
    auto fx = make_shift_transformation(2, 4, 2);
    ReductionCheckOptions opt;
    opt.section_pairs = 15;
    opt.seed = 9;
    opt.support_filter = [](const FiniteGroupoidView& v, int a) { return v.length(a) <= 1.0; };
    auto report = reduction_equivalence_check(fx, 1, opt);
    CHECK(report.pass());
}

TEST_CASE("steinberg model verification") {
    auto res = steinberg_model_check(2, 6, 4);
    CHECK(res.report.pass());
    CHECK(res.unique);
    CHECK(res.validated_generator_value == 1);
    // Per source point, defined pairs = 46 at radius 4 (the fiber count).
    // Depth 6 over the constant tail holds 64 distinct points: prepending
    // the tail symbol is absorbed by canonicalization.
    CHECK(res.defined_pairs == 46u * 64u);
}

TEST_CASE("steinberg bijection transports sections across the two models") {
    // Build the transformation fixture and the DR truncation over the same
    // budget and check that convolution commutes with the identification.
    auto fx = make_shift_transformation(2, 6, 2);
    FullShiftSystem shift(2);
    auto base = std::make_shared<TrivialBundle>(fx.groupoid, 1);
    const auto& v = *fx.groupoid;
    // Identify (w, x) with its DR arrow key.
    auto arrow_key = [&](int a) {
        auto [w, x] = TransformationFixture::split_key(v.arrow(a).key);
        auto dr = steinberg_psi(shift, Word::parse(2, w), x);
        REQUIRE(dr.has_value());
        return dr->key();
    };
    RngStream rng(4);
    std::vector<int> supp;
    for (int a = 0; a < v.num_arrows(); ++a)
        if (v.length(a) <= 1.0) supp.push_back(a);
    Section f = random_section(base, supp, rng);
    Section g = random_section(base, supp, rng);
    Section fg = convolve(f, g);
    // Composition transported through Psi: gather products directly.
    std::map<std::string, cd> direct;
    for (const auto& [a, va] : f.entries()) {
        for (const auto& [b, vb] : g.entries()) {
            if (v.arrow(a).src != v.arrow(b).rng) continue;
            auto c = v.compose(a, b);
            REQUIRE(c.ok());
            direct[arrow_key(c.id)] += va(0, 0) * vb(0, 0);
        }
    }
    for (const auto& [a, va] : fg.entries()) {
        auto it = direct.find(arrow_key(a));
        REQUIRE(it != direct.end());
        CHECK(std::abs(it->second - va(0, 0)) <= 1e-12);
    }
}

}  // TEST_SUITE
