// Python bindings: the main operations of the toolkit, returning plain
// python structures (JSON-shaped dicts come back as JSON text and are
// decoded on the python side).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "grd/cli.hpp"
#include "grd/fixtures.hpp"
#include "grd/multipliers.hpp"
#include "grd/rd_checks.hpp"
#include "grd/reduction.hpp"

namespace py = pybind11;
using namespace grd;

namespace {

std::shared_ptr<const LocalSystem> system_by_name(const std::string& kind, int arity) {
    return make_local_system(kind, arity);
}

py::list table_rows(const GrowthTable& table) {
    py::list rows;
    for (const auto& r : table.rows)
        rows.append(py::make_tuple(r.unit, r.radius, r.count, r.exact));
    return rows;
}

}  // namespace

PYBIND11_MODULE(_grdkit, m) {
    m.doc() = "groupoid / Fell bundle rapid-decay toolkit (C++ core)";

    m.def(
        "ball_counts",
        [](const std::string& system, int arity, int radius, int unit_sample,
           const std::string& counter) {
            auto sys = system_by_name(system, arity);
            FiberCounter fc;
            if (counter == "fiber")
                fc = dr_fiber_counter(sys);
            else if (counter == "kernel")
                fc = kernel_fiber_counter(sys);
            else if (counter == "preimage")
                fc = preimage_counter(sys);
            else
                throw InputError("unknown counter: " + counter);
            auto table = ball_counts(sys->base_points(unit_sample), radius, fc, sys->name(),
                                     "counter=" + counter);
            return table_rows(table);
        },
        py::arg("system"), py::arg("arity") = 2, py::arg("radius") = 6,
        py::arg("unit_sample") = 1, py::arg("counter") = "fiber",
        "Fiber/kernel/preimage ball counts as (unit, radius, count, exact) tuples.");

    m.def(
        "classify_counts",
        [](const std::vector<long long>& counts) {
            GrowthTable table;
            table.system = "counts";
            table.max_radius = static_cast<int>(counts.size()) - 1;
            for (std::size_t n = 0; n < counts.size(); ++n)
                table.rows.push_back({"x", static_cast<int>(n), counts[n], true});
            auto cls = classify_growth(table);
            py::dict out;
            out["kind"] = cls.kind_name();
            out["c_hat"] = cls.c_hat;
            out["d_hat"] = cls.d_hat;
            out["base"] = cls.base;
            out["terminal_ratio"] = cls.terminal_ratio;
            out["certificate_ok"] = cls.certificate_ok;
            out["rule"] = cls.rule;
            return out;
        },
        py::arg("counts"), "Growth classification of a max-over-units count table.");

    m.def(
        "norm_report",
        [](const std::string& system, int n, int dim, std::uint64_t seed) {
            auto view = make_system_view(system, n);
            auto bundle = std::make_shared<TrivialBundle>(view, dim);
            std::vector<int> all(static_cast<std::size_t>(view->num_arrows()));
            for (int a = 0; a < view->num_arrows(); ++a) all[static_cast<std::size_t>(a)] = a;
            RngStream rng(derive_seed(seed, "py-norms"));
            Section f = random_section(bundle, all, rng);
            UnitSample sample = UnitSample::all(*view);
            NormReport rep = compute_norms(f, view_length(view), {0, 1, 2, 3}, sample);
            rep.reduced = reduced_norm(f, sample, &rep.reduced_meta);
            return rep.to_json().dump();
        },
        py::arg("system"), py::arg("n") = 3, py::arg("dim") = 1, py::arg("seed") = 0,
        "JSON norm report for a seeded random section of a named fixture.");

    m.def(
        "steinberg_sign",
        [](int arity, int depth, int radius) {
            auto res = steinberg_model_check(arity, depth, radius);
            py::dict out;
            out["generator_value"] = res.validated_generator_value;
            out["unique"] = res.unique;
            out["defined_pairs"] = res.defined_pairs;
            out["pass"] = res.report.pass();
            return out;
        },
        py::arg("arity") = 2, py::arg("depth") = 6, py::arg("radius") = 4,
        "Validated cocycle sign of the Steinberg realization.");

    m.def(
        "kernel_ratio_trend",
        [](int arity, int p, int level_lo, int level_hi) {
            FullShiftSystem shift(arity);
            std::string x0 = EvPeriodicPoint::constant(1).key();
            std::vector<double> ratios;
            for (int level = level_lo; level <= level_hi; ++level) {
                auto tree = iterate_and_preimages(shift, x0, level);
                auto dr = build_dr_view(std::make_shared<FullShiftSystem>(arity),
                                        tree.levels[static_cast<std::size_t>(level)], 2 * level,
                                        true);
                auto bundle = std::make_shared<TrivialBundle>(dr.view, 1);
                std::vector<int> all(static_cast<std::size_t>(dr.view->num_arrows()));
                for (int a = 0; a < dr.view->num_arrows(); ++a)
                    all[static_cast<std::size_t>(a)] = a;
                Section f = indicator_section(bundle, all);
                UnitSample sample = UnitSample::all(*dr.view);
                ratios.push_back(reduced_norm(f, sample) /
                                 sobolev_norm(f, view_length(dr.view), p, sample));
            }
            return ratios;
        },
        py::arg("arity") = 2, py::arg("p") = 2, py::arg("level_lo") = 2, py::arg("level_hi") = 5,
        "Certified lower-bound ratios |f|_r / |f|_{2,p,L} of the kernel-ball indicators.");

    m.def(
        "run_cli", [](const std::vector<std::string>& args) { return run(args); },
        py::arg("args"), "Run a CLI invocation in-process; returns the exit code.");

    py::register_exception<InputError>(m, "InputError");
    py::register_exception<BudgetError>(m, "BudgetError");
}
