#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "grd/fixtures.hpp"
#include "grd/norms.hpp"

using namespace grd;

namespace {

BundlePtr z2_line() { return std::make_shared<TrivialBundle>(cyclic_group(2), 1); }

Section delta(const BundlePtr& b, const std::string& key, cd value = 1.0) {
    Section s(b);
    int a = b->view().arrow_id(key);
    REQUIRE(a >= 0);
    auto [r, c] = b->shape(a);
    s.set(a, value * Matrix::Identity(r, c));
    return s;
}

}  // namespace

TEST_SUITE("section-norms") {

TEST_CASE("convolution on the group Z/2") {
    auto b = z2_line();
    Section dg = delta(b, "g:1");
    Section prod = convolve(dg, dg);
    CHECK(prod.support().size() == 1);
    CHECK(prod.value(b->view().arrow_id("g:0"))(0, 0) == cd(1.0));
}

TEST_CASE("unit-arrow delta acts as a range projection") {
    auto view = pair_groupoid(3);
    auto b = std::make_shared<TrivialBundle>(view, 1);
    Section unit_delta(b);
    int ua = view->unit_arrow(view->unit_index("u2"));
    unit_delta.set(ua, Matrix::Identity(1, 1));
    RngStream rng(3);
    std::vector<int> all(9);
    for (int a = 0; a < 9; ++a) all[static_cast<std::size_t>(a)] = a;
    Section f = random_section(b, all, rng);
    Section proj = convolve(unit_delta, f);
    for (const auto& [a, v] : f.entries()) {
        bool kept = view->arrow(a).rng == view->unit_index("u2");
        CHECK((proj.value(a) - (kept ? v : Matrix::Zero(1, 1))).norm() == doctest::Approx(0.0));
    }
}

TEST_CASE("all-ones convolution square on the pair groupoid") {
    auto view = pair_groupoid(2);
    auto b = std::make_shared<TrivialBundle>(view, 1);
    std::vector<int> all(4);
    for (int a = 0; a < 4; ++a) all[static_cast<std::size_t>(a)] = a;
    Section ones = indicator_section(b, all);
    Section sq = convolve(ones, ones);
    // Matrix oracle: the all-ones 2x2 matrix squares to 2x itself.
    for (int a : all) CHECK(sq.value(a)(0, 0) == cd(2.0));
}

TEST_CASE("involution laws") {
    auto b = z2_line();
    // Real symmetric coefficients give a self-adjoint section.
    Section f = delta(b, "g:0", 0.7);
    f += delta(b, "g:1", -0.3);
    CHECK(max_entry_distance(involve(f), f) == 0.0);

    auto view = pair_groupoid(3);
    auto pb = std::make_shared<TrivialBundle>(view, 2);
    std::vector<int> all(9);
    for (int a = 0; a < 9; ++a) all[static_cast<std::size_t>(a)] = a;
    RngStream rng(7);
    LengthFn L = view_length(view);
    UnitSample sample = UnitSample::all(*view);
    for (int i = 0; i < 25; ++i) {
        Section x = random_section(pb, all, rng);
        Section y = random_section(pb, all, rng);
        CHECK(max_entry_distance(involve(convolve(x, y)), convolve(involve(y), involve(x))) <=
              1e-12);
        CHECK(max_entry_distance(involve(involve(x)), x) <= 1e-14);
        for (int p : {0, 1, 3})
            CHECK(sobolev_norm(involve(x), L, p, sample) ==
                  doctest::Approx(sobolev_norm(x, L, p, sample)).epsilon(1e-12));
    }
}

TEST_CASE("weighted Sobolev norm on the integer ball") {
    auto view = make_system_view("z-ball", 4);
    auto b = std::make_shared<TrivialBundle>(view, 1);
    Section f = delta(b, "a1");  // the length-one generator
    UnitSample sample = UnitSample::all(*view);
    CHECK(sobolev_norm(f, view_length(view), 3, sample) == doctest::Approx(8.0));  // (1+1)^3
}

TEST_CASE("l2 norms of the all-ones pair section") {
    auto view = pair_groupoid(3);
    auto b = std::make_shared<TrivialBundle>(view, 1);
    std::vector<int> all(9);
    for (int a = 0; a < 9; ++a) all[static_cast<std::size_t>(a)] = a;
    Section ones = indicator_section(b, all);
    UnitSample sample = UnitSample::all(*view);
    NormReport n = compute_norms(ones, view_length(view), {0, 1}, sample);
    CHECK(n.l2_s == doctest::Approx(std::sqrt(3.0)));
    CHECK(n.sup == doctest::Approx(1.0));
    CHECK(n.i_norm == doctest::Approx(3.0));
    double reduced = reduced_norm(ones, sample);
    CHECK(reduced == doctest::Approx(3.0));  // all-ones 3x3 spectral norm
}

TEST_CASE("reduced norm on Z/2 via the circulant oracle") {
    auto b = z2_line();
    UnitSample sample = UnitSample::all(b->view());
    Section f = delta(b, "g:0");
    f += delta(b, "g:1");
    CHECK(reduced_norm(f, sample) == doctest::Approx(2.0));
    RngStream rng(21);
    for (int i = 0; i < 50; ++i) {
        cd a = rng.cgaussian(), c = rng.cgaussian();
        Section g = delta(b, "g:0", a);
        g += delta(b, "g:1", c);
        // Circulant eigenvalues a +- c.
        double oracle = std::max(std::abs(a + c), std::abs(a - c));
        CHECK(reduced_norm(g, sample) == doctest::Approx(oracle).epsilon(1e-10));
    }
}

TEST_CASE("single unit-arrow section has reduced norm |a|") {
    auto view = pair_groupoid(3);
    auto b = std::make_shared<TrivialBundle>(view, 2);
    RngStream rng(2);
    Matrix a = random_matrix(2, 2, rng);
    Section f(b);
    f.set(view->unit_arrow(0), a);
    CHECK(reduced_norm(f, UnitSample::all(*view)) == doctest::Approx(spectral_norm(a)).epsilon(1e-10));
}

TEST_CASE("norm chain and submultiplicativity on full fixtures") {
    for (auto& [view, dim] : std::vector<std::pair<ViewPtr, int>>{
             {pair_groupoid(3), 1}, {cyclic_group(4), 2}, {pair_groupoid(2), 2}}) {
        auto b = std::make_shared<TrivialBundle>(view, dim);
        std::vector<int> all(static_cast<std::size_t>(view->num_arrows()));
        for (int a = 0; a < view->num_arrows(); ++a) all[static_cast<std::size_t>(a)] = a;
        UnitSample sample = UnitSample::all(*view);
        LengthFn L = view_length(view);
        RngStream rng(31);
        for (int i = 0; i < 20; ++i) {
            Section f = random_section(b, all, rng);
            Section g = random_section(b, all, rng);
            NormReport n = compute_norms(f, L, {}, sample);
            double r = reduced_norm(f, sample);
            CHECK(n.sup <= n.ii + 1e-9);
            CHECK(n.ii <= r + 1e-9);
            CHECK(r <= n.i_norm + 1e-9);
            CHECK(std::abs(reduced_norm(involve(f), sample) - r) <= 1e-9);
            CHECK(reduced_norm(convolve(f, g), sample) <=
                  r * reduced_norm(g, sample) + 1e-9);
        }
    }
}

TEST_CASE("reduced norm is monotone in the budget") {
    auto view = make_system_view("z-ball", 6);
    auto b = std::make_shared<TrivialBundle>(view, 1);
    RngStream rng(5);
    std::vector<int> small;
    for (int a = 0; a < view->num_arrows(); ++a)
        if (view->length(a) <= 2.0) small.push_back(a);
    Section f = random_section(b, small, rng);
    UnitSample sample = UnitSample::all(*view);
    double prev = 0.0;
    for (double budget : {2.0, 3.0, 4.0, 5.0, 6.0}) {
        double r = reduced_norm(f, sample, budget);
        CHECK(r >= prev - 1e-14);
        prev = r;
    }
    CHECK_THROWS_AS(reduced_norm(f, sample, 1.0), InputError);  // budget below the support
}

TEST_CASE("l2 locality is an identity at finite scale") {
    auto view = pair_groupoid(3);
    auto b = std::make_shared<TrivialBundle>(view, 1);
    RngStream rng(8);
    std::vector<int> u_arrows{0, 1, 3, 4};
    Section f = random_section(b, u_arrows, rng);
    Section g = restrict_to(f, [&](int a) { return a <= 4; });
    CHECK(max_entry_distance(f, g) == 0.0);
    UnitSample sample = UnitSample::all(*view);
    Section diff = f;
    Section neg = g;
    neg *= cd(-1.0);
    diff += neg;
    CHECK(sobolev_norm(diff, view_length(view), 0, sample) == 0.0);
}

TEST_CASE("convolution escaping a truncation names the pair") {
    auto view = make_system_view("z-ball", 2);
    auto b = std::make_shared<TrivialBundle>(view, 1);
    Section f = delta(b, "a1 a1");
    try {
        convolve(f, f);
        FAIL("expected BudgetError");
    } catch (const BudgetError& e) {
        CHECK(e.left == "a1 a1");
        CHECK(e.right == "a1 a1");
    }
}

TEST_CASE("action-bundle fiber sums carry the automorphism twist") {
    auto bundle = make_action_z2_m2();
    auto view = bundle->view_ptr();
    int g = -1;
    for (int a = 0; a < view->num_arrows(); ++a)
        if (!view->arrow(a).is_unit) g = a;
    RngStream rng(12);
    Section f(bundle);
    Matrix v = random_matrix(2, 2, rng);
    f.set(g, v);
    // f(g)* f(g) in the bundle is alpha_{g^{-1}}(v^H v): conjugated by the
    // swap, not the raw adjoint product.
    Matrix swap(2, 2);
    swap << 0, 1, 1, 0;
    Matrix expected = swap * (v.adjoint() * v) * swap;
    Matrix got = fiber_sum_source(f, 0, view_length(view), 0.0);
    CHECK((got - expected).norm() == doctest::Approx(0.0));
    // The norms agree (conjugation is isometric) even though the sums differ.
    CHECK(hermitian_top_eigenvalue(got) ==
          doctest::Approx(hermitian_top_eigenvalue(v.adjoint() * v)));
}

TEST_CASE("norm chain holds on action and twisted bundles") {
    std::vector<BundlePtr> bundles{make_action_z2_m2(), make_twisted_z2(),
                                   make_bundle(cyclic_group(4), "twisted", 1)};
    RngStream rng(33);
    for (const auto& b : bundles) {
        const auto& view = b->view();
        std::vector<int> all(static_cast<std::size_t>(view.num_arrows()));
        for (int a = 0; a < view.num_arrows(); ++a) all[static_cast<std::size_t>(a)] = a;
        UnitSample sample = UnitSample::all(view);
        LengthFn L = [&view](int a) { return view.length(a); };
        for (int i = 0; i < 20; ++i) {
            Section f = random_section(b, all, rng);
            NormReport n = compute_norms(f, L, {}, sample);
            double r = reduced_norm(f, sample);
            CHECK(n.sup <= n.ii + 1e-9);
            CHECK(n.ii <= r + 1e-9);
            CHECK(r <= n.i_norm + 1e-9);
        }
    }
}

TEST_CASE("norm report serializes with fiberwise sums") {
    auto b = z2_line();
    Section f = delta(b, "g:0");
    f += delta(b, "g:1", 0.5);
    NormReport n = compute_norms(f, view_length(b->view_ptr()), {0, 2}, UnitSample::all(b->view()));
    n.reduced = reduced_norm(f, UnitSample::all(b->view()), &n.reduced_meta);
    auto text = n.to_json().dump_pretty();
    CHECK(text.find("\"fiber_sums\"") != std::string::npos);
    CHECK(text.find("\"p=2\"") != std::string::npos);
    CHECK(text.find("\"p_convention\": \"nonnegative_integer\"") != std::string::npos);
}

}  // TEST_SUITE
