#include "grd/multipliers.hpp"

#include <algorithm>
#include <cmath>

#include "grd/common.hpp"
#include "grd/linalg.hpp"

namespace grd {

RealArrowFn equilateral_psi(const ViewPtr& view) {
    return [view](int a) { return view->arrow(a).is_unit ? 0.0 : 1.0; };
}

RealArrowFn length_psi(const ViewPtr& view) {
    return [view](int a) { return view->length(a); };
}

ArrowFn gram_positive_definite(const ViewPtr& view, int dim, std::uint64_t seed) {
    auto vectors = std::make_shared<std::vector<Vector>>();
    for (int u = 0; u < view->num_units(); ++u) {
        RngStream rng(derive_seed(seed, "gram-vector", static_cast<std::uint64_t>(u)));
        Vector v(dim);
        for (int i = 0; i < dim; ++i) v(i) = rng.cgaussian();
        v.normalize();
        vectors->push_back(std::move(v));
    }
    return [view, vectors](int a) {
        const Arrow& ar = view->arrow(a);
        return (*vectors)[static_cast<std::size_t>(ar.rng)]
            .dot((*vectors)[static_cast<std::size_t>(ar.src)]);
    };
}

namespace {

// Tuples from a fiber: all subsets up to max size when the fiber is small,
// seeded random draws otherwise. Tuple order is canonical.
std::vector<std::vector<int>> sample_tuples(const std::vector<int>& fiber,
                                            const TupleSamplingOptions& opt, std::uint64_t salt) {
    std::vector<std::vector<int>> out;
    const int n = static_cast<int>(fiber.size());
    const int cap = std::min(opt.max_tuple_size, n);
    if (n <= opt.exhaustive_fiber_cap) {
        // All subsets of size 2..cap via bitmasks (n <= 12 keeps this small).
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            int bits = __builtin_popcount(mask);
            if (bits < 2 || bits > cap) continue;
            std::vector<int> tuple;
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) tuple.push_back(fiber[static_cast<std::size_t>(i)]);
            out.push_back(std::move(tuple));
        }
    } else {
        RngStream rng(derive_seed(opt.seed, "tuple-sample", salt));
        for (int t = 0; t < opt.random_tuples; ++t) {
            int size = 2 + static_cast<int>(rng.index(static_cast<std::size_t>(cap - 1)));
            std::vector<int> tuple;
            while (static_cast<int>(tuple.size()) < size) {
                int pick = fiber[rng.index(fiber.size())];
                if (std::find(tuple.begin(), tuple.end(), pick) == tuple.end())
                    tuple.push_back(pick);
            }
            std::sort(tuple.begin(), tuple.end());
            out.push_back(std::move(tuple));
        }
    }
    return out;
}

// psi(gamma_i^{-1} gamma_j) for a tuple from one range fiber.
Eigen::MatrixXd tuple_matrix(const FiniteGroupoidView& view, const RealArrowFn& psi,
                             const std::vector<int>& tuple) {
    const int m = static_cast<int>(tuple.size());
    Eigen::MatrixXd out(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            auto prod = view.compose(view.inverse(tuple[static_cast<std::size_t>(i)]),
                                     tuple[static_cast<std::size_t>(j)]);
            if (!prod.ok())
                throw BudgetError("tuple product escapes the view",
                                  view.arrow(tuple[static_cast<std::size_t>(i)]).key,
                                  view.arrow(tuple[static_cast<std::size_t>(j)]).key);
            out(i, j) = psi(prod.id);
        }
    }
    return out;
}

double normalization(const Eigen::MatrixXd& m) {
    double mx = m.cwiseAbs().maxCoeff();
    return mx > 1.0 ? mx : 1.0;
}

}  // namespace

CheckReport is_negative_type(const ViewPtr& view, const RealArrowFn& psi, const UnitSample& sample,
                             const TupleSamplingOptions& options, double tol) {
    CheckReport report;
    report.command = "is_negative_type";
    report.tolerance = tol;
    report.system = view->descriptor();

    std::size_t unit_bad = 0, sym_bad = 0;
    for (int a = 0; a < view->num_arrows(); ++a) {
        if (view->arrow(a).is_unit && std::abs(psi(a)) > tol) ++unit_bad;
        if (std::abs(psi(a) - psi(view->inverse(a))) > tol) ++sym_bad;
    }
    report.add_flag("psi_vanishes_on_units", "all units", unit_bad == 0);
    report.add_flag("psi_symmetric", "all arrows", sym_bad == 0);

    std::size_t tuples = 0, bad = 0;
    double worst = -1e300;
    for (int u : sample.units) {
        std::vector<int> fib;
        for (int a : view->range_fiber(u))
            if (view->length(a) <= options.max_element_length) fib.push_back(a);
        for (const auto& tuple : sample_tuples(fib, options, static_cast<std::uint64_t>(u))) {
            Eigen::MatrixXd m = tuple_matrix(*view, psi, tuple);
            m /= normalization(m);
            const int k = static_cast<int>(tuple.size());
            Eigen::MatrixXd proj =
                Eigen::MatrixXd::Identity(k, k) - Eigen::MatrixXd::Constant(k, k, 1.0 / k);
            Matrix compressed = (proj * m * proj).cast<cd>();
            double top = hermitian_top_eigenvalue(compressed);
            worst = std::max(worst, top);
            ++tuples;
            if (top > tol) {
                ++bad;
                std::string inst;
                for (int a : tuple) inst += view->arrow(a).key + " ";
                report.add_inequality("centered_form_nonpositive", inst, top, 0.0, tol);
            }
        }
    }
    report.add_inequality("centered_form_nonpositive",
                          "worst of " + std::to_string(tuples) + " tuples", worst, 0.0, tol);
    report.budget = "tuple cap " + std::to_string(options.max_tuple_size) + ", exhaustive fibers <= " +
                    std::to_string(options.exhaustive_fiber_cap) + ", " +
                    std::to_string(options.random_tuples) + " random tuples beyond";
    (void)bad;
    return report;
}

CheckReport schoenberg_family(const ViewPtr& view, const RealArrowFn& psi,
                              const std::vector<double>& t_grid, const UnitSample& sample,
                              const TupleSamplingOptions& options, double tol) {
    CheckReport report;
    report.command = "schoenberg_family";
    report.tolerance = tol;
    report.system = view->descriptor();
    for (double t : t_grid)
        if (t <= 0.0) throw InputError("Schoenberg grid needs t > 0");

    bool psi_nonneg = true;
    for (int a = 0; a < view->num_arrows(); ++a)
        if (psi(a) < 0.0) psi_nonneg = false;

    for (double t : t_grid) {
        double worst = -1e300;
        std::size_t tuples = 0;
        for (int u : sample.units) {
            std::vector<int> fib;
            for (int a : view->range_fiber(u))
                if (view->length(a) <= options.max_element_length) fib.push_back(a);
            for (const auto& tuple : sample_tuples(fib, options, static_cast<std::uint64_t>(u))) {
                Eigen::MatrixXd m = tuple_matrix(*view, psi, tuple);
                Eigen::MatrixXd kernel = (-t * m.array()).exp().matrix();
                kernel /= normalization(kernel);
                double min_eig = hermitian_min_eigenvalue(kernel.cast<cd>());
                worst = std::max(worst, -min_eig);
                ++tuples;
            }
        }
        report.add_inequality("schoenberg_psd", "t=" + Json::format_number(t) + " (" +
                                                    std::to_string(tuples) + " tuples)",
                              worst, 0.0, tol);
    }

    // sup |h_t - 1| over the view decreases as t decreases (psi >= 0).
    std::vector<double> ts = t_grid;
    std::sort(ts.rbegin(), ts.rend());
    if (psi_nonneg) {
        double prev = 1e300;
        for (double t : ts) {
            double sup = 0.0;
            for (int a = 0; a < view->num_arrows(); ++a)
                sup = std::max(sup, std::abs(std::exp(-t * psi(a)) - 1.0));
            report.add_inequality("uniform_approach_to_one", "t=" + Json::format_number(t), sup,
                                  prev, tol);
            prev = sup;
        }
    } else {
        report.add_flag("uniform_approach_to_one", "grid", true,
                        "psi takes negative values; monotone check skipped");
    }
    return report;
}

MultiplierResult apply_multiplier(const ArrowFn& h, const Section& f, const LengthFn& length,
                                  const std::vector<int>& ps, const UnitSample& sample,
                                  double tol) {
    const FiniteGroupoidView& view = f.bundle().view();
    MultiplierResult out{pointwise_multiply(h, f), {}};
    out.report.command = "apply_multiplier";
    out.report.tolerance = tol;
    out.report.system = view.descriptor();

    const bool truncated = view.truncated();
    double h_sup = 0.0;
    for (const auto& [a, _] : f.entries()) h_sup = std::max(h_sup, std::abs(h(a)));

    double f_upper;
    if (!truncated) {
        double f_r = reduced_norm(f, sample);
        double mhf_r = reduced_norm(out.mhf, sample);
        out.report.add_inequality("multiplier_contractivity", "|M_h f|_r <= |h|_inf |f|_r", mhf_r,
                                  h_sup * f_r, tol);
        f_upper = f_r;
    } else {
        out.report.add_flag("multiplier_contractivity", "skipped", true,
                            "truncated view: reduced norms are lower bounds on both sides");
        // The Schwartz bound is asserted against the I-norm upper bound.
        f_upper = i_norm(f, sample);
    }
    for (int p : ps) {
        double bp = 0.0;
        for (int a = 0; a < view.num_arrows(); ++a)
            bp = std::max(bp, std::abs(h(a)) * std::pow(1.0 + length(a), p));
        double lhs = sobolev_norm(out.mhf, length, p, sample);
        out.report.add_inequality("schwartz_bound", "p=" + std::to_string(p), lhs, bp * f_upper,
                                  tol, truncated ? "rhs uses the I-norm upper bound" : "");
    }

    // supp(M_h f) is contained in supp(f).
    bool contained = true;
    for (int a : out.mhf.support())
        contained = contained && (f.find(a) != nullptr);
    out.report.add_flag("support_containment", "supp(M_h f) in supp(f)", contained);
    return out;
}

std::string LocalApproxTrace::csv() const {
    std::string out = "t,error,bound\n";
    for (const auto& r : rows)
        out += Json::format_number(r.t) + "," + Json::format_number(r.error) + "," +
               Json::format_number(r.bound) + "\n";
    return out;
}

LocalApproxTrace local_approximate(const Section& f, const std::function<bool(int)>& in_u,
                                   const RealArrowFn& psi, std::vector<double> t_grid,
                                   const UnitSample& sample, double tol) {
    const FiniteGroupoidView& view = f.bundle().view();
    LocalApproxTrace trace;
    trace.report.command = "local_approximate";
    trace.report.tolerance = tol;
    trace.report.system = view.descriptor();

    const bool truncated = view.truncated();
    std::sort(t_grid.rbegin(), t_grid.rend());
    if (t_grid.empty()) throw InputError("empty t grid");

    // Out-of-U tail of f, declared in the report when present.
    Section tail = restrict_to(f, [&](int a) { return !in_u(a); });
    bool supp_in_u = tail.is_zero();
    double tail_mass = supp_in_u ? 0.0 : i_norm(tail, sample);
    trace.report.add_flag("support", supp_in_u ? "supp(f) in U" : "declared out-of-U tail",
                          true, supp_in_u ? "" : "tail I-norm " + Json::format_number(tail_mass));

    const double f_i = i_norm(f, sample);
    double prev_error = 1e300;
    bool monotone = true;
    for (double t : t_grid) {
        auto h = [&](int a) { return std::exp(-t * psi(a)); };
        Section g_t = restrict_to(pointwise_multiply([&](int a) { return cd(h(a), 0.0); }, f), in_u);
        Section diff = f;
        Section neg = g_t;
        neg *= cd(-1.0);
        diff += neg;
        double err = truncated ? i_norm(diff, sample)
                               : reduced_norm(diff, UnitSample::all(view));
        // Envelope: |f|_I (max_{supp \ K} |h_t| + max_supp |h_t - 1|), K = supp f.
        double max_dev = 0.0;
        for (const auto& [a, _] : f.entries()) max_dev = std::max(max_dev, std::abs(h(a) - 1.0));
        double bound = f_i * max_dev + tail_mass;
        trace.rows.push_back({t, err, bound});
        trace.report.add_inequality("error_bound", "t=" + Json::format_number(t), err,
                                    bound + 1e-12, tol,
                                    truncated ? "error is the I-norm upper bound" : "");
        if (err > prev_error + 1e-12) monotone = false;
        prev_error = err;
    }
    trace.report.add_flag("error_nonincreasing", "refining tail of the grid", monotone);
    if (!truncated && supp_in_u) {
        trace.report.add_inequality("terminal_error", "t=" + Json::format_number(t_grid.back()),
                                    trace.rows.back().error, 1e-9, 0.0);
    }
    return trace;
}

}  // namespace grd
