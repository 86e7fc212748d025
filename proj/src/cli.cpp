#include "grd/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "grd/common.hpp"
#include "grd/fixtures.hpp"
#include "grd/multipliers.hpp"
#include "grd/rd_checks.hpp"
#include "grd/reduction.hpp"

namespace grd {

namespace {

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t flag_value) {
    if (opt && opt->count() > 0) return flag_value;
    if (const char* env = std::getenv("GRD_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw InputError("GRD_SEED is not an integer");
        }
    }
    return 0;
}

void emit_report(const CheckReport& report, const std::string& path) {
    if (!path.empty()) write_text_file(path, report.to_json_text());
}

int finish(const CheckReport& report, const std::string& report_path) {
    emit_report(report, report_path);
    std::cout << report.command << ": " << (report.pass() ? "pass" : "FAIL") << " ("
              << report.rows.size() << " rows, " << report.failures() << " failures)\n";
    return report.pass() ? 0 : 1;
}

std::vector<std::string> system_units(const LocalSystem& system, int count) {
    return system.base_points(count);
}

// Norm-chain rows for one section on a full finite fixture.
void chain_rows(CheckReport& report, const std::string& label, const Section& f,
                const LengthFn& length, const UnitSample& sample, double tol) {
    NormReport n = compute_norms(f, length, {}, sample);
    double r = reduced_norm(f, sample);
    report.add_inequality("chain_sup_le_ii", label, n.sup, n.ii, tol);
    report.add_inequality("chain_ii_le_reduced", label, n.ii, r, tol);
    report.add_inequality("chain_reduced_le_i", label, r, n.i_norm, tol);
}

int growth_cmd(const std::string& system, int arity, int radius, int unit_sample,
               const std::string& counter_kind, const std::string& out_csv,
               const std::string& report_path, std::uint64_t seed) {
    auto system_ptr = make_local_system(system, arity);
    FiberCounter counter;
    if (counter_kind == "fiber")
        counter = dr_fiber_counter(system_ptr);
    else if (counter_kind == "kernel")
        counter = kernel_fiber_counter(system_ptr);
    else if (counter_kind == "preimage")
        counter = preimage_counter(system_ptr);
    else
        throw InputError("unknown counter: " + counter_kind);

    auto units = system_units(*system_ptr, unit_sample);
    GrowthTable table = ball_counts(units, radius, counter, system_ptr->name(),
                                    "counter=" + counter_kind);
    if (!out_csv.empty()) write_text_file(out_csv, table.to_csv());

    CheckReport report;
    report.command = "growth";
    report.seed = seed;
    report.system = table.system;
    report.budget = "radius " + std::to_string(radius) + ", " + std::to_string(units.size()) +
                    " sampled units, " + table.metadata;
    report.params["counter"] = counter_kind;
    report.params["radius"] = radius;
    if (radius >= 4) {
        GrowthClass cls = classify_growth(table);
        report.params["classification"] = cls.kind_name();
        report.params["rule"] = cls.rule;
        report.params["terminal_ratio"] = cls.terminal_ratio;
        if (cls.kind == GrowthKind::Exponential) {
            report.params["base"] = cls.base;
        } else {
            report.params["c_hat"] = cls.c_hat;
            report.params["d_hat"] = cls.d_hat;
            report.add_flag("growth_certificate",
                            "count(n) <= c_hat (1+n)^" + std::to_string(cls.d_hat),
                            cls.certificate_ok);
        }
        std::cout << "growth: " << cls.kind_name();
        if (cls.kind == GrowthKind::Exponential)
            std::cout << " (base " << Json::format_number(cls.base) << ")";
        else
            std::cout << " (c=" << Json::format_number(cls.c_hat) << ", d=" << cls.d_hat << ")";
        std::cout << "\n";
    }
    report.add_flag("table_complete", "all cells exact", table.complete,
                    table.complete ? "" : "counts beyond the truncation are lower bounds");
    return finish(report, report_path);
}

int classify_graph_cmd(const std::string& input, int radius, int unit_sample,
                       const std::string& out_csv, const std::string& report_path,
                       std::uint64_t seed) {
    auto graph = parse_graph_json(read_text_file(input));
    auto system = std::make_shared<GraphPathSystem>(graph);
    auto units = system->base_points(unit_sample);
    GrowthTable table =
        ball_counts(units, radius, dr_fiber_counter(system), system->name(), "counter=fiber");
    if (!out_csv.empty()) write_text_file(out_csv, table.to_csv());

    CheckReport report;
    report.command = "classify-graph";
    report.seed = seed;
    report.system = system->name();
    report.budget = "radius " + std::to_string(radius);
    GrowthClass cls = classify_growth(table);
    report.params["classification"] = cls.kind_name();
    report.params["terminal_ratio"] = cls.terminal_ratio;
    if (cls.kind == GrowthKind::Exponential)
        report.params["base"] = cls.base;
    else {
        report.params["c_hat"] = cls.c_hat;
        report.params["d_hat"] = cls.d_hat;
        report.add_flag("growth_certificate", "certificate", cls.certificate_ok);
    }
    std::cout << "classify-graph: " << cls.kind_name() << "\n";
    return finish(report, report_path);
}

int rdtest_finite_cmd(const std::string& system, int n, const std::string& bundle_kind, int dim,
                      int p, int samples, std::uint64_t seed, const std::string& report_path) {
    ViewPtr view = make_system_view(system, n);
    BundlePtr bundle = make_bundle(view, bundle_kind, dim);
    LengthFn length = view_length(view);
    UnitSample sample = UnitSample::all(*view);

    CheckReport report;
    report.command = "rdtest";
    report.seed = seed;
    report.system = view->descriptor() + " / " + bundle->kind();
    report.tolerance = 1e-8;
    report.params["system"] = system;
    report.params["n"] = n;
    report.params["bundle"] = bundle_kind;
    report.params["dim"] = dim;
    report.params["p"] = p;
    report.params["samples"] = samples;

    report.merge(check_axioms(view, length));
    report.merge(check_bundle_axioms(*bundle, {seed}));

    std::vector<int> all_arrows(static_cast<std::size_t>(view->num_arrows()));
    for (int a = 0; a < view->num_arrows(); ++a) all_arrows[static_cast<std::size_t>(a)] = a;

    // Norm chain on seeded random sections (parallel across sections).
    {
        std::vector<CheckReport> parts(static_cast<std::size_t>(samples));
        parallel_for(static_cast<std::size_t>(samples), [&](std::size_t i) {
            RngStream rng(derive_seed(seed, "chain-section", i));
            Section f = random_section(bundle, all_arrows, rng);
            chain_rows(parts[i], "gaussian[" + std::to_string(i) + "]", f, length, sample, 1e-9);
        });
        for (const auto& part : parts) report.merge(part);
    }

    // Ratio scan over indicators and gaussians.
    auto sections = indicator_family(bundle, length);
    auto gaussians = gaussian_family(bundle, all_arrows, samples, derive_seed(seed, "scan"));
    sections.insert(sections.end(), gaussians.begin(), gaussians.end());
    RatioScanResult scan = rd_ratio_scan(sections, length, p, sample);
    report.params["max_ratio"] = scan.max_ratio;
    report.params["worst_section"] = scan.worst_section;

    // Every finite view carries the witness (sqrt(max fiber size), 0).
    std::size_t max_fiber = 0;
    for (int u = 0; u < view->num_units(); ++u)
        max_fiber = std::max(max_fiber, view->source_fiber(u).size());
    RDWitness witness{std::sqrt(static_cast<double>(max_fiber)), 0, view->descriptor()};
    report.params["witness_C"] = witness.C;
    report.add_inequality("scan_ratio_below_witness", scan.worst_section, scan.max_ratio,
                          witness.C, 1e-9);

    // Polynomial-growth bound with the classifier's certificate.
    {
        int radius = 4;
        for (int a = 0; a < view->num_arrows(); ++a)
            radius = std::max(radius, static_cast<int>(view->length(a)) + 2);
        GrowthTable table = ball_counts(
            {view->unit_key(0)}, radius, view_fiber_counter(view), view->descriptor(), "view fibers");
        // max over all units, not just the first
        std::vector<std::string> keys;
        for (int u = 0; u < view->num_units(); ++u) keys.push_back(view->unit_key(u));
        table = ball_counts(keys, radius, view_fiber_counter(view), view->descriptor(), "view fibers");
        GrowthClass cls = classify_growth(table);
        GrowthCertificate cert{cls.c_hat, cls.d_hat};
        report.params["growth_class"] = cls.kind_name();
        report.merge(poly_growth_rd_check(sections, length, cert, table, sample));
    }

    // BHM inequality and the operator Cauchy-Schwarz on random data.
    for (int i = 0; i < std::min(samples, 25); ++i) {
        RngStream rng(derive_seed(seed, "bhm-section", static_cast<std::uint64_t>(i)));
        Section f = random_section(bundle, all_arrows, rng);
        report.merge(bhm_check(f, sample));
    }
    for (int i = 0; i < samples; ++i) {
        RngStream rng(derive_seed(seed, "impineq", static_cast<std::uint64_t>(i)));
        int tuple = 2 + static_cast<int>(rng.index(4));
        std::vector<Matrix> as;
        std::vector<double> ls;
        for (int t = 0; t < tuple; ++t) {
            as.push_back(random_psd(std::max(2, dim), rng));
            ls.push_back(rng.uniform());
        }
        report.merge(impineq_check(as, ls));
    }
    for (int i = 0; i < samples; ++i) {
        RngStream rng(derive_seed(seed, "wconv", static_cast<std::uint64_t>(i)));
        Section f = random_section(bundle, all_arrows, rng);
        Section g = random_section(bundle, all_arrows, rng);
        report.merge(weighted_conv_check(f, g, witness, p, length, sample));
    }

    // Restriction to the unit-space subgroupoid.
    {
        std::vector<int> units_sub;
        for (int u = 0; u < view->num_units(); ++u) units_sub.push_back(view->unit_arrow(u));
        auto sub = make_subgroupoid(bundle, units_sub, "unit space of " + view->descriptor());
        std::vector<LabeledSection> hs;
        for (int i = 0; i < std::min(samples, 10); ++i) {
            RngStream rng(derive_seed(seed, "restriction", static_cast<std::uint64_t>(i)));
            std::vector<int> sub_all(static_cast<std::size_t>(sub.subview->num_arrows()));
            for (int a = 0; a < sub.subview->num_arrows(); ++a) sub_all[static_cast<std::size_t>(a)] = a;
            hs.push_back({"gaussian[" + std::to_string(i) + "]",
                          random_section(sub.subbundle, sub_all, rng)});
        }
        report.merge(restriction_check(bundle, sub, hs, witness, p, length));
    }
    return finish(report, report_path);
}

int rdtest_obstruction_cmd(int arity, int p, int level_lo, int level_hi, std::uint64_t seed,
                           const std::string& report_path) {
    CheckReport report;
    report.command = "rdtest";
    report.seed = seed;
    report.system = "full-shift(" + std::to_string(arity) + ") kernel obstruction";
    report.tolerance = 0.0;
    report.params["p"] = p;
    report.params["levels"] = std::to_string(level_lo) + ".." + std::to_string(level_hi);

    FullShiftSystem shift(arity);
    std::string x0 = EvPeriodicPoint::constant(1).key();
    double prev = 0.0, first = 0.0, last = 0.0;
    for (int level = level_lo; level <= level_hi; ++level) {
        // The level-N tail class of x0 and the kernel ball of radius 2N on it.
        auto tree = iterate_and_preimages(shift, x0, level);
        std::vector<std::string> cls = tree.levels[static_cast<std::size_t>(level)];
        DRView dr = build_dr_view(std::make_shared<FullShiftSystem>(arity), cls, 2 * level, true);
        auto bundle = std::make_shared<TrivialBundle>(dr.view, 1);
        std::vector<int> kernel_arrows;
        for (int a = 0; a < dr.view->num_arrows(); ++a)
            if (dr.cocycle(a) == 0) kernel_arrows.push_back(a);
        Section f = indicator_section(bundle, kernel_arrows);
        UnitSample sample = UnitSample::all(*dr.view);
        double numer = reduced_norm(f, sample);
        double denom = sobolev_norm(f, view_length(dr.view), p, sample);
        double ratio = numer / denom;
        report.add_inequality("kernel_ratio_lower_bound", "N=" + std::to_string(level), 0.0, ratio,
                              0.0, "certified lower bound");
        if (level > level_lo)
            report.add_inequality("ratio_strictly_increasing",
                                  "N=" + std::to_string(level - 1) + " -> " + std::to_string(level),
                                  prev, ratio, -1e-12);
        if (level == level_lo) first = ratio;
        last = ratio;
        prev = ratio;
    }
    report.add_inequality("ratio_growth_factor", "N=" + std::to_string(level_hi) + " vs N=" +
                                                     std::to_string(level_lo),
                          1.5 * first, last, 0.0);
    return finish(report, report_path);
}

int reduce_check_cmd(const std::string& fixture_name, int depth, int radius, int rank, int pairs,
                     std::uint64_t seed, const std::string& report_path) {
    CheckReport report;
    if (fixture_name == "swap" || fixture_name == "degenerate") {
        TransformationFixture fx = fixture_name == "swap"
                                       ? make_swap_fixture()
                                       : make_degenerate_fixture(cyclic_group(2), 3);
        ReductionCheckOptions opt;
        opt.seed = seed;
        opt.section_pairs = pairs;
        report = reduction_equivalence_check(fx, rank, opt);
        report.merge(check_partial_action_law(fx));
    } else if (fixture_name == "f2-shift") {
        TransformationFixture fx = make_shift_transformation(2, depth, radius);
        ReductionCheckOptions opt;
        opt.seed = seed;
        opt.section_pairs = pairs;
        int word_budget = radius / 2;
        opt.support_filter = [word_budget](const FiniteGroupoidView& v, int a) {
            return v.length(a) <= static_cast<double>(word_budget);
        };
        report = reduction_equivalence_check(fx, rank, opt);
        report.merge(check_partial_action_law(fx));
        auto st = steinberg_model_check(2, depth + 2, radius <= 2 ? 4 : radius);
        report.merge(st.report);
        report.params["steinberg_generator_value"] = st.validated_generator_value;
    } else {
        throw InputError("unknown fixture: " + fixture_name);
    }
    report.command = "reduce-check";
    report.seed = seed;
    return finish(report, report_path);
}

int multiplier_cmd(const std::string& system, int n, const std::string& psi_kind, int samples,
                   std::uint64_t seed, const std::string& report_path,
                   const std::string& trace_csv) {
    ViewPtr view = make_system_view(system, n);
    auto bundle = std::make_shared<TrivialBundle>(view, 1);
    LengthFn length = view_length(view);
    UnitSample sample = UnitSample::all(*view);
    RealArrowFn psi = psi_kind == "length" ? length_psi(view) : equilateral_psi(view);

    CheckReport report;
    report.command = "multiplier";
    report.seed = seed;
    report.system = view->descriptor();
    report.tolerance = 1e-9;
    report.params["system"] = system;
    report.params["n"] = n;
    report.params["psi"] = psi_kind;
    report.params["samples"] = samples;

    TupleSamplingOptions tuples;
    tuples.seed = derive_seed(seed, "tuples");
    if (view->truncated()) {
        // Keep tuple products inside the enumerated ball.
        double max_len = 0.0;
        for (int a = 0; a < view->num_arrows(); ++a) max_len = std::max(max_len, view->length(a));
        tuples.max_element_length = std::floor(max_len / 2.0);
    }
    report.merge(is_negative_type(view, psi, sample, tuples));
    report.merge(schoenberg_family(view, psi, {2.0, 1.0, 0.5, 0.25, 0.125}, sample, tuples));

    std::vector<int> all_arrows(static_cast<std::size_t>(view->num_arrows()));
    for (int a = 0; a < view->num_arrows(); ++a) all_arrows[static_cast<std::size_t>(a)] = a;
    const bool truncated = view->truncated();
    for (int i = 0; i < samples; ++i) {
        RngStream rng(derive_seed(seed, "mult-section", static_cast<std::uint64_t>(i)));
        Section f = random_section(bundle, all_arrows, rng);
        ArrowFn h = gram_positive_definite(view, 3, derive_seed(seed, "gram", static_cast<std::uint64_t>(i)));
        auto res = apply_multiplier(h, f, length, {1, 2}, sample);
        report.merge(res.report);
    }

    // Decay of the equilateral Schoenberg multipliers on an off-unit section.
    if (!truncated) {
        std::vector<int> off_units;
        for (int a = 0; a < view->num_arrows(); ++a)
            if (!view->arrow(a).is_unit) off_units.push_back(a);
        if (!off_units.empty()) {
            RngStream rng(derive_seed(seed, "decay-section"));
            Section f = random_section(bundle, off_units, rng);
            double fr = reduced_norm(f, sample);
            RealArrowFn eq = equilateral_psi(view);
            for (double t : {1.0, 0.5, 0.25, 0.125}) {
                ArrowFn h = [&](int a) { return cd(std::exp(-t * eq(a)), 0.0); };
                Section mhf = pointwise_multiply(h, f);
                Section diff = f;
                Section neg = mhf;
                neg *= cd(-1.0);
                diff += neg;
                double err = reduced_norm(diff, sample);
                report.add_equality("hap_decay", "t=" + Json::format_number(t), err,
                                    (1.0 - std::exp(-t)) * fr, 1e-9);
            }
        }
    }

    // Local approximation trace: U = everything except one non-unit arrow,
    // f random on the rest of the view.
    {
        RngStream rng(derive_seed(seed, "local-section"));
        int excluded = -1;
        for (int a = view->num_arrows() - 1; a >= 0; --a)
            if (!view->arrow(a).is_unit) {
                excluded = a;
                break;
            }
        std::vector<int> supp;
        for (int a = 0; a < view->num_arrows(); ++a)
            if (a != excluded) supp.push_back(a);
        Section f = random_section(bundle, supp, rng);
        auto in_u = [excluded](int a) { return a != excluded; };
        auto trace = local_approximate(f, in_u, psi, {2.0, 1.0, 0.5, 0.25, 0.125, 1e-6, 1e-12},
                                       sample);
        report.merge(trace.report);
        if (!trace_csv.empty()) write_text_file(trace_csv, trace.csv());
    }
    return finish(report, report_path);
}

int axioms_cmd(const std::string& system, int n, const std::string& bundle_kind, int dim,
               std::uint64_t seed, const std::string& report_path) {
    ViewPtr view = make_system_view(system, n);
    CheckReport report = check_axioms(view, view_length(view));
    report.command = "axioms";
    report.seed = seed;
    if (!bundle_kind.empty()) {
        BundlePtr bundle = make_bundle(view, bundle_kind, dim);
        report.merge(check_bundle_axioms(*bundle, {seed}));
    }
    return finish(report, report_path);
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"groupoid / Fell bundle rapid-decay toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    int workers = 1;
    auto* seed_opt = app.add_option("--seed", seed, "root RNG seed (env GRD_SEED, default 0)");
    app.add_option("--workers", workers, "worker threads (results are worker-count independent)");
    app.fallthrough();

    // growth
    auto* growth = app.add_subcommand("growth", "fiber ball counts and growth classification");
    std::string g_system = "full-shift", g_counter = "fiber", g_out, g_report;
    int g_arity = 2, g_radius = 6, g_sample = 3;
    growth->add_option("--system", g_system, "full-shift|af");
    growth->add_option("--arity", g_arity);
    growth->add_option("--radius", g_radius);
    growth->add_option("--unit-sample", g_sample);
    growth->add_option("--counter", g_counter, "fiber|kernel|preimage");
    growth->add_option("--out", g_out, "CSV path (unit_id,radius,count)");
    growth->add_option("--report", g_report, "JSON report path");

    // classify-graph
    auto* cg = app.add_subcommand("classify-graph", "growth of a graph path groupoid");
    std::string cg_input, cg_out, cg_report;
    int cg_radius = 8, cg_sample = 3;
    cg->add_option("--input", cg_input)->required();
    cg->add_option("--radius", cg_radius);
    cg->add_option("--unit-sample", cg_sample);
    cg->add_option("--out", cg_out);
    cg->add_option("--report", cg_report);

    // rdtest
    auto* rd = app.add_subcommand("rdtest", "rapid-decay inequality suite");
    std::string rd_system = "pair", rd_bundle = "trivial", rd_report;
    int rd_n = 3, rd_dim = 1, rd_p = 2, rd_samples = 50, rd_arity = 2, rd_lo = 2, rd_hi = 5;
    rd->add_option("--system", rd_system, "pair|cyclic|symmetric|product|full-shift");
    rd->add_option("--n", rd_n);
    rd->add_option("--bundle", rd_bundle, "trivial|twisted|action");
    rd->add_option("--dim", rd_dim);
    rd->add_option("--p", rd_p);
    rd->add_option("--samples", rd_samples);
    rd->add_option("--arity", rd_arity);
    rd->add_option("--level-lo", rd_lo);
    rd->add_option("--level-hi", rd_hi);
    rd->add_option("--report", rd_report);

    // reduce-check
    auto* rc = app.add_subcommand("reduce-check", "partial-action reduction equivalences");
    std::string rc_fixture = "swap", rc_report;
    int rc_depth = 4, rc_radius = 2, rc_rank = 1, rc_pairs = 25;
    rc->add_option("--fixture", rc_fixture, "swap|degenerate|f2-shift");
    rc->add_option("--depth", rc_depth);
    rc->add_option("--radius", rc_radius);
    rc->add_option("--rank", rc_rank);
    rc->add_option("--pairs", rc_pairs);
    rc->add_option("--report", rc_report);

    // multiplier
    auto* mu = app.add_subcommand("multiplier", "negative type, Schoenberg, local approximation");
    std::string mu_system = "cyclic", mu_psi = "equilateral", mu_report, mu_trace;
    int mu_n = 2, mu_samples = 25;
    mu->add_option("--system", mu_system);
    mu->add_option("--n", mu_n);
    mu->add_option("--psi", mu_psi, "equilateral|length");
    mu->add_option("--samples", mu_samples);
    mu->add_option("--report", mu_report);
    mu->add_option("--trace", mu_trace, "error trace CSV (t,error,bound)");

    // axioms
    auto* ax = app.add_subcommand("axioms", "groupoid and bundle axiom sweeps");
    std::string ax_system = "pair", ax_bundle, ax_report;
    int ax_n = 3, ax_dim = 1;
    ax->add_option("--system", ax_system);
    ax->add_option("--n", ax_n);
    ax->add_option("--bundle", ax_bundle, "optional: trivial|twisted|action");
    ax->add_option("--dim", ax_dim);
    ax->add_option("--report", ax_report);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        std::uint64_t root_seed = resolve_seed(seed_opt, seed);
        set_worker_count(workers);
        if (growth->parsed())
            return growth_cmd(g_system, g_arity, g_radius, g_sample, g_counter, g_out, g_report,
                              root_seed);
        if (cg->parsed())
            return classify_graph_cmd(cg_input, cg_radius, cg_sample, cg_out, cg_report, root_seed);
        if (rd->parsed()) {
            if (rd_system == "full-shift")
                return rdtest_obstruction_cmd(rd_arity, rd_p, rd_lo, rd_hi, root_seed, rd_report);
            return rdtest_finite_cmd(rd_system, rd_n, rd_bundle, rd_dim, rd_p, rd_samples,
                                     root_seed, rd_report);
        }
        if (rc->parsed())
            return reduce_check_cmd(rc_fixture, rc_depth, rc_radius, rc_rank, rc_pairs, root_seed,
                                    rc_report);
        if (mu->parsed())
            return multiplier_cmd(mu_system, mu_n, mu_psi, mu_samples, root_seed, mu_report,
                                  mu_trace);
        if (ax->parsed()) return axioms_cmd(ax_system, ax_n, ax_bundle, ax_dim, root_seed, ax_report);
        throw InputError("no subcommand");
    } catch (const BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace grd
