// Acceptance runner: one check per numbered criterion, each printing a
// single [PASS]/[FAIL] line. `--criterion N` runs one, no flag runs all.

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <vector>

#include "grd/cli.hpp"
#include "grd/fixtures.hpp"
#include "grd/multipliers.hpp"
#include "grd/rd_checks.hpp"
#include "grd/reduction.hpp"

using namespace grd;

namespace {

struct Criterion {
    int number;
    std::string title;
    std::function<bool(std::string&)> check;  // fills a detail string
};

std::string tail_point() { return EvPeriodicPoint::constant(1).key(); }

std::vector<std::pair<ViewPtr, int>> chain_fixtures() {
    return {{pair_groupoid(2), 1}, {pair_groupoid(3), 1}, {pair_groupoid(5), 1},
            {cyclic_group(2), 1},  {cyclic_group(4), 1},  {pair_groupoid(2), 2},
            {pair_groupoid(3), 2}, {pair_groupoid(5), 2}, {cyclic_group(2), 2},
            {cyclic_group(4), 2}};
}

bool criterion1(std::string& detail) {
    auto sys = std::make_shared<FullShiftSystem>(2);
    bool ok = true;
    auto fib = dr_fiber(*sys, tail_point(), 5);
    for (int n = 0; n <= 5; ++n) {
        long long count = 0;
        for (const auto& a : fib)
            if (a.length() <= n) ++count;
        long long bound = (1LL << (n + 1)) - 1;
        ok = ok && count >= bound;
    }
    auto table = ball_counts(sys->base_points(1), 8, dr_fiber_counter(sys), sys->name(), "fiber");
    auto cls = classify_growth(table);
    ok = ok && cls.kind == GrowthKind::Exponential && cls.base >= 1.8 && cls.base <= 2.2;
    detail = "counts >= 2^{N+1}-1 for N=0..5; classifier " + cls.kind_name() + ", base " +
             Json::format_number(cls.base);
    return ok;
}

bool criterion2(std::string& detail) {
    FullShiftSystem shift(2);
    bool ok = true;
    for (int depth = 0; depth <= 5; ++depth) {
        auto kf = kernel_fiber(shift, tail_point(), depth);
        // Independent oracle: enumerate the N-prefix variations directly.
        std::string z = tail_point();
        for (int i = 0; i < depth; ++i) z = shift.apply(z);
        std::set<std::string> variations{z};
        for (int i = 0; i < depth; ++i) {
            std::set<std::string> next;
            for (const auto& p : variations)
                for (const auto& q : shift.preimages(p)) next.insert(q);
            variations = std::move(next);
        }
        std::set<std::string> ranges;
        for (const auto& a : kf) ranges.insert(a.x);
        ok = ok && kf.size() == (1u << depth) && ranges == variations;
    }
    detail = "kernel ball counts 2^N for N=0..5, matching prefix variations";
    return ok;
}

bool criterion3(std::string& detail) {
    auto af = make_af_chain_system(32);
    auto tree = iterate_and_preimages(*af, "a", 8);
    bool ok = tree.exact;
    for (int n = 0; n <= 8; ++n)
        ok = ok && tree.levels[static_cast<std::size_t>(n)].size() ==
                       static_cast<std::size_t>(n) + 1;
    auto table = ball_counts({"a"}, 8, preimage_counter(af), af->name(), "preimage");
    auto cls = classify_growth(table);
    ok = ok && cls.kind == GrowthKind::Polynomial && cls.d_hat == 1;
    detail = "preimage counts N+1 for N=0..8; classifier " + cls.kind_name() + ", degree " +
             std::to_string(cls.d_hat);
    return ok;
}

bool criterion4(std::string& detail) {
    bool ok = true;
    double worst = 1e300;
    for (auto& [view, dim] : chain_fixtures()) {
        auto bundle = std::make_shared<TrivialBundle>(view, dim);
        std::vector<int> all(static_cast<std::size_t>(view->num_arrows()));
        for (int a = 0; a < view->num_arrows(); ++a) all[static_cast<std::size_t>(a)] = a;
        UnitSample sample = UnitSample::all(*view);
        LengthFn length = view_length(view);
        std::vector<double> slack(200, 0.0);
        parallel_for(200, [&](std::size_t i) {
            RngStream rng(derive_seed(0, "acceptance-chain", i));
            Section f = random_section(bundle, all, rng);
            NormReport n = compute_norms(f, length, {}, sample);
            double r = reduced_norm(f, sample);
            slack[i] = std::min({n.ii - n.sup, r - n.ii, n.i_norm - r});
        });
        for (double s : slack) {
            worst = std::min(worst, s);
            ok = ok && s >= -1e-9;
        }
    }
    detail = "sup <= II <= reduced <= I on 200 sections x 10 fixtures, worst slack " +
             Json::format_number(worst);
    return ok;
}

bool criterion5(std::string& detail) {
    double tail = 0.0;
    double s = zeta4_partial_sum(1000000, &tail);
    bool ok = std::abs(s - 1.082323) <= 1e-6;
    double worst = 1e300;
    for (auto& [view, dim] : chain_fixtures()) {
        auto bundle = std::make_shared<TrivialBundle>(view, dim);
        std::vector<std::string> keys;
        for (int u = 0; u < view->num_units(); ++u) keys.push_back(view->unit_key(u));
        auto table =
            ball_counts(keys, 4, view_fiber_counter(view), view->descriptor(), "view fibers");
        auto cls = classify_growth(table);
        if (cls.kind == GrowthKind::Exponential || !cls.certificate_ok) {
            ok = false;
            continue;
        }
        GrowthCertificate cert{cls.c_hat, cls.d_hat};
        std::vector<int> all(static_cast<std::size_t>(view->num_arrows()));
        for (int a = 0; a < view->num_arrows(); ++a) all[static_cast<std::size_t>(a)] = a;
        auto sections = gaussian_family(bundle, all, 100, derive_seed(0, "acceptance-poly"));
        auto report = poly_growth_rd_check(sections, view_length(view), cert, table,
                                           UnitSample::all(*view), 1e-8);
        ok = ok && report.pass();
        for (const auto& row : report.rows)
            if (row.check_id == "poly_growth_bound") worst = std::min(worst, row.slack);
    }
    detail = "S = " + Json::format_number(s) + "; bound holds on 100 sections per fixture, worst slack " +
             Json::format_number(worst);
    return ok;
}

bool criterion6(std::string& detail) {
    bool ok = true;
    std::vector<BundlePtr> fixtures{std::make_shared<TrivialBundle>(pair_groupoid(3), 2),
                                    std::make_shared<TrivialBundle>(cyclic_group(4), 2),
                                    std::make_shared<TrivialBundle>(pair_groupoid(2), 3),
                                    make_action_z2_m2()};
    for (const auto& bundle : fixtures) {
        const auto& view = bundle->view();
        std::vector<int> all(static_cast<std::size_t>(view.num_arrows()));
        for (int a = 0; a < view.num_arrows(); ++a) all[static_cast<std::size_t>(a)] = a;
        UnitSample sample = UnitSample::all(view);
        std::vector<bool> pass(100, false);
        parallel_for(100, [&](std::size_t i) {
            RngStream rng(derive_seed(0, "acceptance-bhm", i));
            Section f = random_section(bundle, all, rng);
            pass[i] = bhm_check(f, sample, 1e-8).pass();
        });
        for (bool p : pass) ok = ok && p;
    }
    for (int i = 0; i < 100; ++i) {
        RngStream rng(derive_seed(0, "acceptance-impineq", static_cast<std::uint64_t>(i)));
        int m = 2 + static_cast<int>(rng.index(4));
        std::vector<Matrix> as;
        std::vector<double> ls;
        for (int t = 0; t < m; ++t) {
            as.push_back(random_psd(3, rng));
            ls.push_back(rng.uniform());
        }
        ok = ok && impineq_check(as, ls, 1e-8).pass();
    }
    detail = "BHM on 100 matrix sections x 4 fixtures; operator Cauchy-Schwarz on 100 tuples";
    return ok;
}

bool criterion7(std::string& detail) {
    bool ok = true;
    struct Fix {
        ViewPtr view;
        RDWitness witness;
    };
    std::vector<Fix> fixtures{{cyclic_group(2), {std::sqrt(2.0), 0, "Z/2"}},
                              {pair_groupoid(3), {std::sqrt(3.0), 0, "pair(3)"}}};
    for (auto& fx : fixtures) {
        auto bundle = std::make_shared<TrivialBundle>(fx.view, 1);
        std::vector<int> all(static_cast<std::size_t>(fx.view->num_arrows()));
        for (int a = 0; a < fx.view->num_arrows(); ++a) all[static_cast<std::size_t>(a)] = a;
        UnitSample sample = UnitSample::all(*fx.view);
        LengthFn length = view_length(fx.view);
        for (int i = 0; i < 100; ++i) {
            RngStream rng(derive_seed(0, "acceptance-wconv", static_cast<std::uint64_t>(i)));
            Section f = random_section(bundle, all, rng);
            Section g = random_section(bundle, all, rng);
            for (int p : {0, 1})
                ok = ok && weighted_conv_check(f, g, fx.witness, p, length, sample, 1e-8).pass();
        }
    }
    detail = "source and range estimates with witnesses (sqrt2, 0) and (sqrt3, 0), 100 pairs each";
    return ok;
}

bool criterion8(std::string& detail) {
    ReductionCheckOptions opt;
    opt.section_pairs = 50;
    opt.seed = 0;
    auto swap_report = reduction_equivalence_check(make_swap_fixture(), 1, opt);
    ReductionCheckOptions opt2;
    opt2.section_pairs = 25;
    opt2.seed = 0;
    opt2.support_filter = [](const FiniteGroupoidView& v, int a) { return v.length(a) <= 1.0; };
    auto shift_report =
        reduction_equivalence_check(make_shift_transformation(2, 4, 2), 1, opt2);
    bool ok = swap_report.pass() && shift_report.pass();
    detail = "swap fixture and F2 shift fixture (radius 2, depth 4): *-hom 1e-12, Sobolev 1e-10, "
             "reduced 1e-8";
    return ok;
}

bool criterion9(std::string& detail) {
    auto res = steinberg_model_check(2, 6, 4);
    bool ok = res.report.pass() && res.unique;
    detail = "bijection on " + std::to_string(res.defined_pairs) +
             " defined pairs; unique sign: generators map to " +
             (res.validated_generator_value > 0 ? std::string("+1") : std::string("-1"));
    return ok;
}

bool criterion10(std::string& detail) {
    // Kernel-ball indicator ratios at p = 2, N = 2..5, as stated.
    FullShiftSystem shift(2);
    std::vector<double> ratios;
    for (int level = 2; level <= 5; ++level) {
        auto tree = iterate_and_preimages(shift, tail_point(), level);
        auto cls = tree.levels[static_cast<std::size_t>(level)];
        auto dr = build_dr_view(std::make_shared<FullShiftSystem>(2), cls, 2 * level, true);
        auto bundle = std::make_shared<TrivialBundle>(dr.view, 1);
        std::vector<int> all(static_cast<std::size_t>(dr.view->num_arrows()));
        for (int a = 0; a < dr.view->num_arrows(); ++a) all[static_cast<std::size_t>(a)] = a;
        Section f = indicator_section(bundle, all);
        UnitSample sample = UnitSample::all(*dr.view);
        double numer = reduced_norm(f, sample);
        double denom = sobolev_norm(f, view_length(dr.view), 2, sample);
        ratios.push_back(numer / denom);
    }
    bool increasing = true;
    for (std::size_t i = 1; i < ratios.size(); ++i)
        increasing = increasing && ratios[i] > ratios[i - 1];
    bool factor = ratios.back() >= 1.5 * ratios.front();
    detail = "certified ratios at p=2:";
    for (double r : ratios) detail += " " + Json::format_number(r);
    detail += increasing ? "; strictly increasing" : "; NOT increasing";
    detail += factor ? "; factor >= 1.5" : "; factor < 1.5";
    return increasing && factor;
}

bool criterion11(std::string& detail) {
    bool ok = true;
    TupleSamplingOptions tuples;
    tuples.seed = derive_seed(0, "acceptance-tuples");

    // Negative type: equilateral kernel on a finite fixture.
    auto pv = pair_groupoid(3);
    ok = ok && is_negative_type(pv, equilateral_psi(pv), UnitSample::all(*pv), tuples, 1e-9).pass();

    // Word length on the F2 radius-3 ball (inside a radius-6 view).
    auto ball = free_group_ball(2, 6);
    TupleSamplingOptions ball_tuples;
    ball_tuples.seed = tuples.seed;
    ball_tuples.max_element_length = 3.0;
    ball_tuples.random_tuples = 128;
    ok = ok &&
         is_negative_type(ball, length_psi(ball), UnitSample::all(*ball), ball_tuples, 1e-9).pass();
    ok = ok && schoenberg_family(ball, length_psi(ball), {1.0, 0.5, 0.25},
                                 UnitSample::all(*ball), ball_tuples, 1e-9)
                   .pass();
    ok = ok && schoenberg_family(pv, equilateral_psi(pv), {2.0, 1.0, 0.5},
                                 UnitSample::all(*pv), tuples, 1e-9)
                   .pass();

    // Contractivity and the Schwartz bound on 100 random pairs.
    auto bundle = std::make_shared<TrivialBundle>(pv, 1);
    std::vector<int> all(static_cast<std::size_t>(pv->num_arrows()));
    for (int a = 0; a < pv->num_arrows(); ++a) all[static_cast<std::size_t>(a)] = a;
    LengthFn length = view_length(pv);
    UnitSample sample = UnitSample::all(*pv);
    std::vector<bool> pass(100, false);
    parallel_for(100, [&](std::size_t i) {
        RngStream rng(derive_seed(0, "acceptance-mult", i));
        Section f = random_section(bundle, all, rng);
        ArrowFn h = gram_positive_definite(pv, 3, derive_seed(0, "acceptance-gram", i));
        pass[i] = apply_multiplier(h, f, length, {1, 2}, sample, 1e-9).report.pass();
    });
    for (bool p : pass) ok = ok && p;

    // Decay trace for the equilateral kernel on an off-unit section.
    std::vector<int> off_units;
    for (int a = 0; a < pv->num_arrows(); ++a)
        if (!pv->arrow(a).is_unit) off_units.push_back(a);
    RngStream rng(derive_seed(0, "acceptance-decay"));
    Section f = random_section(bundle, off_units, rng);
    double fr = reduced_norm(f, sample);
    double worst = 0.0;
    for (double t : {1.0, 0.5, 0.25, 0.125}) {
        Section mhf =
            pointwise_multiply([&](int a) { return cd(std::exp(-t * equilateral_psi(pv)(a)), 0.0); }, f);
        Section diff = f;
        mhf *= cd(-1.0);
        diff += mhf;
        worst = std::max(worst,
                         std::abs(reduced_norm(diff, sample) - (1.0 - std::exp(-t)) * fr));
    }
    ok = ok && worst <= 1e-9;
    detail = "negative-type + Schoenberg kernels pass; 100 multiplier pairs; decay deviation " +
             Json::format_number(worst);
    return ok;
}

bool criterion12(std::string& detail) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "grd-acceptance-determinism";
    fs::create_directories(dir);
    auto file = [&](const std::string& n) { return (dir / n).string(); };

    std::vector<std::vector<std::string>> commands{
        {"growth", "--system", "full-shift", "--arity", "2", "--radius", "6", "--unit-sample",
         "3", "--seed", "5"},
        {"rdtest", "--system", "pair", "--n", "3", "--samples", "15", "--seed", "5"},
        {"multiplier", "--system", "cyclic", "--n", "4", "--samples", "10", "--seed", "5"},
        {"reduce-check", "--fixture", "swap", "--pairs", "20", "--seed", "5"},
    };
    bool ok = true;
    for (std::size_t c = 0; c < commands.size(); ++c) {
        std::vector<std::string> runs;
        for (const auto& [name, workers] : std::vector<std::pair<std::string, std::string>>{
                 {"r1.json", "1"}, {"r2.json", "1"}, {"r4.json", "4"}}) {
            auto args = commands[c];
            args.push_back("--report");
            args.push_back(file(name));
            args.push_back("--workers");
            args.push_back(workers);
            int code = run(args);
            ok = ok && (code == 0 || code == 1);  // honest failures still deterministic
            runs.push_back(read_text_file(file(name)));
        }
        ok = ok && runs[0] == runs[1] && runs[0] == runs[2];
    }
    fs::remove_all(dir);
    detail = "4 commands byte-identical across two runs and across 1 vs 4 workers";
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
    }
    std::vector<Criterion> criteria{
        {1, "exponential growth of the full 2-shift groupoid", criterion1},
        {2, "kernel ball counts are exactly 2^N", criterion2},
        {3, "chain system: N+1 preimages and degree-1 growth", criterion3},
        {4, "norm chain sup <= II <= reduced <= I", criterion4},
        {5, "polynomial-growth rapid-decay bound", criterion5},
        {6, "BHM and operator Cauchy-Schwarz", criterion6},
        {7, "weighted convolution estimates", criterion7},
        {8, "partial-action reduction equivalences", criterion8},
        {9, "Steinberg model bijection and cocycle sign", criterion9},
        {10, "kernel indicator ratio trend at p=2", criterion10},
        {11, "multiplier suite", criterion11},
        {12, "byte-stable reports", criterion12},
    };
    bool all_ok = true;
    for (auto& c : criteria) {
        if (only != 0 && c.number != only) continue;
        std::string detail;
        bool ok = false;
        try {
            ok = c.check(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] criterion %2d: %s -- %s\n", ok ? "PASS" : "FAIL", c.number,
                    c.title.c_str(), detail.c_str());
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}
