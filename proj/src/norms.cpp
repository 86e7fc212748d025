#include "grd/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "grd/common.hpp"
#include "grd/linalg.hpp"

namespace grd {

UnitSample UnitSample::all(const FiniteGroupoidView& view) {
    UnitSample s;
    s.units.resize(static_cast<std::size_t>(view.num_units()));
    for (int u = 0; u < view.num_units(); ++u) s.units[static_cast<std::size_t>(u)] = u;
    s.label = "all " + std::to_string(view.num_units()) + " units";
    return s;
}

UnitSample UnitSample::of(const FiniteGroupoidView& view, const std::vector<std::string>& keys) {
    UnitSample s;
    for (const auto& k : keys) {
        int u = view.unit_index(k);
        if (u < 0) throw InputError("unknown unit: " + k);
        s.units.push_back(u);
    }
    std::sort(s.units.begin(), s.units.end());
    s.units.erase(std::unique(s.units.begin(), s.units.end()), s.units.end());
    s.label = std::to_string(s.units.size()) + " sampled units";
    return s;
}

// f(gamma)* f(gamma) and f(gamma) f(gamma)* are bundle products: the
// involution may twist (action bundles conjugate by the implementing
// unitaries), so the raw matrix adjoint is not enough.

Matrix fiber_sum_source(const Section& f, int unit, const LengthFn& length, double p) {
    const FellBundle& bundle = f.bundle();
    const FiniteGroupoidView& view = bundle.view();
    int uarrow = view.unit_arrow(unit);
    auto [d, d2] = bundle.shape(uarrow);
    Matrix sum = Matrix::Zero(d, d2);
    for (int a : view.source_fiber(unit)) {
        const Matrix* v = f.find(a);
        if (!v) continue;
        double w = std::pow(1.0 + length(a), 2.0 * p);
        sum += w * bundle.mult(view.inverse(a), a, bundle.invol(a, *v), *v);
    }
    return sum;
}

Matrix fiber_sum_range(const Section& f, int unit, const LengthFn& length, double p) {
    const FellBundle& bundle = f.bundle();
    const FiniteGroupoidView& view = bundle.view();
    int uarrow = view.unit_arrow(unit);
    auto [d, d2] = bundle.shape(uarrow);
    Matrix sum = Matrix::Zero(d, d2);
    for (int a : view.range_fiber(unit)) {
        const Matrix* v = f.find(a);
        if (!v) continue;
        double w = std::pow(1.0 + length(a), 2.0 * p);
        sum += w * bundle.mult(a, view.inverse(a), *v, bundle.invol(a, *v));
    }
    return sum;
}

double sobolev_norm_source(const Section& f, const LengthFn& length, double p,
                           const UnitSample& sample) {
    double best = 0.0;
    for (int u : sample.units)
        best = std::max(best, hermitian_top_eigenvalue(fiber_sum_source(f, u, length, p)));
    return std::sqrt(std::max(0.0, best));
}

double sobolev_norm_range(const Section& f, const LengthFn& length, double p,
                          const UnitSample& sample) {
    double best = 0.0;
    for (int u : sample.units)
        best = std::max(best, hermitian_top_eigenvalue(fiber_sum_range(f, u, length, p)));
    return std::sqrt(std::max(0.0, best));
}

double sobolev_norm(const Section& f, const LengthFn& length, int p, const UnitSample& sample) {
    return std::max(sobolev_norm_source(f, length, p, sample),
                    sobolev_norm_range(f, length, p, sample));
}

double sup_norm(const Section& f) {
    double best = 0.0;
    for (const auto& [a, v] : f.entries()) best = std::max(best, spectral_norm(v));
    return best;
}

double i_norm(const Section& f, const UnitSample& sample) {
    const FiniteGroupoidView& view = f.bundle().view();
    double best = 0.0;
    for (int u : sample.units) {
        double src = 0.0, rng = 0.0;
        for (int a : view.source_fiber(u))
            if (const Matrix* v = f.find(a)) src += spectral_norm(*v);
        for (int a : view.range_fiber(u))
            if (const Matrix* v = f.find(a)) rng += spectral_norm(*v);
        best = std::max({best, src, rng});
    }
    return best;
}

double reduced_norm(const Section& f, const UnitSample& sample, double budget,
                    ReducedNormMeta* meta) {
    const FellBundle& bundle = f.bundle();
    const FiniteGroupoidView& view = bundle.view();

    for (const auto& [a, _] : f.entries())
        if (view.length(a) > budget)
            throw InputError("reduced-norm budget smaller than the support: arrow " +
                             view.arrow(a).key);

    ReducedNormMeta m;
    m.budget = budget;
    m.sample = sample.label;
    m.exact = !view.truncated() &&
              sample.units.size() == static_cast<std::size_t>(view.num_units());

    std::vector<double> per_unit(sample.units.size(), 0.0);
    std::vector<SpectralMeta> solver(sample.units.size());
    std::vector<int> dims(sample.units.size(), 0);
    parallel_for(sample.units.size(), [&](std::size_t idx) {
        int u = sample.units[idx];
        std::vector<int> basis_arrows;
        for (int a : view.source_fiber(u))
            if (view.length(a) <= budget) basis_arrows.push_back(a);
        std::vector<int> offsets;
        int total = 0;
        for (int a : basis_arrows) {
            offsets.push_back(total);
            total += bundle.dim(a);
        }
        dims[idx] = total;
        if (total == 0) return;
        Matrix rep = Matrix::Zero(total, total);
        for (std::size_t ci = 0; ci < basis_arrows.size(); ++ci) {
            int eta = basis_arrows[ci];
            auto eta_basis = bundle.basis(eta);
            for (std::size_t ri = 0; ri < basis_arrows.size(); ++ri) {
                int gamma = basis_arrows[ri];
                auto zeta = view.compose(gamma, view.inverse(eta));
                if (!zeta.ok()) continue;  // out-of-view composite carries no mass
                const Matrix* fz = f.find(zeta.id);
                if (!fz) continue;
                for (int k = 0; k < static_cast<int>(eta_basis.size()); ++k) {
                    Matrix image = bundle.mult(zeta.id, eta, *fz, eta_basis[static_cast<std::size_t>(k)]);
                    Vector col = bundle.coords(gamma, image);
                    rep.block(offsets[ri], offsets[ci] + k, col.size(), 1) = col;
                }
            }
        }
        per_unit[idx] = spectral_norm(rep, &solver[idx]);
    });
    double best = 0.0;
    SpectralMeta worst_solver;
    for (std::size_t idx = 0; idx < per_unit.size(); ++idx) {
        best = std::max(best, per_unit[idx]);
        m.max_dimension = std::max(m.max_dimension, dims[idx]);
        if (solver[idx].dimension > worst_solver.dimension) worst_solver = solver[idx];
    }
    m.method = worst_solver.method.empty() ? "empty" : worst_solver.method;
    if (meta) *meta = m;
    return best;
}

double reduced_norm(const Section& f, const UnitSample& sample, ReducedNormMeta* meta) {
    return reduced_norm(f, sample, std::numeric_limits<double>::infinity(), meta);
}

NormReport compute_norms(const Section& f, const LengthFn& length, const std::vector<int>& ps,
                         const UnitSample& sample) {
    const FiniteGroupoidView& view = f.bundle().view();
    NormReport r;
    r.sup = sup_norm(f);
    r.i_norm = i_norm(f, sample);
    r.l2_s = sobolev_norm_source(f, length, 0, sample);
    r.l2_r = sobolev_norm_range(f, length, 0, sample);
    r.ii = std::max(r.l2_s, r.l2_r);
    for (int p : ps) {
        if (p < 0) throw InputError("p must be a nonnegative integer");
        r.sobolev_s[p] = sobolev_norm_source(f, length, p, sample);
        r.sobolev_r[p] = sobolev_norm_range(f, length, p, sample);
        r.sobolev[p] = std::max(r.sobolev_s[p], r.sobolev_r[p]);
    }
    for (int u : sample.units) {
        double t = hermitian_top_eigenvalue(fiber_sum_source(f, u, length, 0));
        double s = hermitian_top_eigenvalue(fiber_sum_range(f, u, length, 0));
        r.fiber_sums.emplace_back(view.unit_key(u), t, s);
    }
    return r;
}

Json NormReport::to_json() const {
    Json j = Json::object();
    j["sup"] = sup;
    j["I"] = i_norm;
    j["l2_s"] = l2_s;
    j["l2_r"] = l2_r;
    j["II"] = ii;
    Json sob = Json::object();
    for (const auto& [p, v] : sobolev) {
        Json entry = Json::object();
        entry["value"] = v;
        entry["source"] = sobolev_s.at(p);
        entry["range"] = sobolev_r.at(p);
        sob["p=" + std::to_string(p)] = std::move(entry);
    }
    j["sobolev"] = std::move(sob);
    if (reduced) {
        Json rd = Json::object();
        rd["value"] = *reduced;
        rd["method"] = reduced_meta.method;
        rd["max_dimension"] = reduced_meta.max_dimension;
        rd["budget"] = reduced_meta.budget;
        rd["sample"] = reduced_meta.sample;
        rd["exact"] = reduced_meta.exact;
        j["reduced"] = std::move(rd);
    }
    Json sums = Json::array();
    for (const auto& [unit, t, s] : fiber_sums) {
        Json row = Json::object();
        row["unit"] = unit;
        row["T_f_norm"] = t;
        row["S_f_norm"] = s;
        sums.push_back(std::move(row));
    }
    j["fiber_sums"] = std::move(sums);
    j["p_convention"] = p_convention;
    return j;
}

}  // namespace grd
