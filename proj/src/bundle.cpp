#include "grd/bundle.hpp"

#include <cmath>

#include "grd/common.hpp"

namespace grd {

int FellBundle::dim(int arrow) const {
    auto [r, c] = shape(arrow);
    return r * c;
}

std::vector<Matrix> FellBundle::basis(int arrow) const {
    auto [r, c] = shape(arrow);
    std::vector<Matrix> out;
    out.reserve(static_cast<std::size_t>(r) * static_cast<std::size_t>(c));
    for (int j = 0; j < c; ++j)
        for (int i = 0; i < r; ++i) {
            Matrix e = Matrix::Zero(r, c);
            e(i, j) = 1.0;
            out.push_back(std::move(e));
        }
    return out;
}

Vector FellBundle::coords(int arrow, const Matrix& value) const {
    auto [r, c] = shape(arrow);
    Vector v(r * c);
    for (int j = 0; j < c; ++j)
        for (int i = 0; i < r; ++i) v(j * r + i) = value(i, j);
    return v;
}

Matrix FellBundle::from_coords(int arrow, const Vector& v) const {
    auto [r, c] = shape(arrow);
    Matrix m(r, c);
    for (int j = 0; j < c; ++j)
        for (int i = 0; i < r; ++i) m(i, j) = v(j * r + i);
    return m;
}

Matrix FellBundle::zero(int arrow) const {
    auto [r, c] = shape(arrow);
    return Matrix::Zero(r, c);
}

Matrix FellBundle::identity_like(int arrow) const {
    auto [r, c] = shape(arrow);
    return Matrix::Identity(r, c);
}

Matrix FellBundle::random_element(int arrow, RngStream& rng) const {
    auto b = basis(arrow);
    Matrix out = zero(arrow);
    for (const auto& e : b) out += rng.cgaussian() * e;
    return out;
}

std::shared_ptr<FellBundle> FellBundle::restricted(ViewPtr) const {
    throw InputError("restriction not implemented for bundle kind " + kind());
}

TrivialBundle::TrivialBundle(ViewPtr view, int rank) : FellBundle(std::move(view)) {
    if (rank < 1) throw InputError("rank must be >= 1");
    ranks_.assign(static_cast<std::size_t>(view_->num_units()), rank);
}

TrivialBundle::TrivialBundle(ViewPtr view, std::vector<int> rank_per_unit)
    : FellBundle(std::move(view)), ranks_(std::move(rank_per_unit)) {
    if (static_cast<int>(ranks_.size()) != view_->num_units())
        throw InputError("rank table size does not match the unit space");
    for (int r : ranks_)
        if (r < 1) throw InputError("rank must be >= 1");
}

std::string TrivialBundle::kind() const {
    return "trivial(" + std::to_string(ranks_.empty() ? 0 : ranks_[0]) + ")";
}

std::pair<int, int> TrivialBundle::shape(int arrow) const {
    const Arrow& a = view_->arrow(arrow);
    return {ranks_[static_cast<std::size_t>(a.rng)], ranks_[static_cast<std::size_t>(a.src)]};
}

Matrix TrivialBundle::mult(int, int, const Matrix& va, const Matrix& vb) const { return va * vb; }

Matrix TrivialBundle::invol(int, const Matrix& va) const { return va.adjoint(); }

std::shared_ptr<FellBundle> TrivialBundle::restricted(ViewPtr subview) const {
    std::vector<int> ranks;
    for (int u = 0; u < subview->num_units(); ++u) {
        int parent = view_->unit_index(subview->unit_key(u));
        if (parent < 0) throw InputError("subview unit not in parent view: " + subview->unit_key(u));
        ranks.push_back(ranks_[static_cast<std::size_t>(parent)]);
    }
    return std::make_shared<TrivialBundle>(std::move(subview), std::move(ranks));
}

namespace {

std::uint64_t pair_key(int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

}  // namespace

TwistedLineBundle::TwistedLineBundle(ViewPtr view, const CocycleFn& cocycle)
    : FellBundle(std::move(view)), sigma_fn_(cocycle) {
    const FiniteGroupoidView& v = *view_;
    // Tabulate on all source/range compatible pairs and validate.
    for (int u = 0; u < v.num_units(); ++u) {
        for (int g : v.source_fiber(u)) {
            for (int h : v.range_fiber(u)) {
                cd s = sigma_fn_(v, g, h);
                if (std::abs(std::abs(s) - 1.0) > 1e-12)
                    throw InputError("cocycle not unit-modulus at (" + v.arrow(g).key + ", " +
                                     v.arrow(h).key + ")");
                table_[pair_key(g, h)] = s;
            }
        }
    }
    for (int a = 0; a < v.num_arrows(); ++a) {
        const Arrow& ar = v.arrow(a);
        if (std::abs(sigma(a, v.unit_arrow(ar.src)) - cd(1.0)) > 1e-12 ||
            std::abs(sigma(v.unit_arrow(ar.rng), a) - cd(1.0)) > 1e-12)
            throw InputError("cocycle not normalized on units at " + ar.key);
    }
    // Cocycle identity on triples with both partial products in view.
    for (int u = 0; u < v.num_units(); ++u) {
        for (int g : v.source_fiber(u)) {
            for (int h : v.range_fiber(u)) {
                auto gh = v.compose(g, h);
                if (!gh.ok()) continue;
                for (int k : v.range_fiber(v.arrow(h).src)) {
                    auto hk = v.compose(h, k);
                    if (!hk.ok()) continue;
                    cd lhs = sigma(g, h) * sigma(gh.id, k);
                    cd rhs = sigma(h, k) * sigma(g, hk.id);
                    if (std::abs(lhs - rhs) > 1e-12)
                        throw InputError("cocycle identity fails at (" + v.arrow(g).key + ", " +
                                         v.arrow(h).key + ", " + v.arrow(k).key + ")");
                }
            }
        }
    }
}

std::string TwistedLineBundle::kind() const { return "twisted-line"; }

cd TwistedLineBundle::sigma(int a, int b) const {
    auto it = table_.find(pair_key(a, b));
    if (it == table_.end()) throw InputError("sigma queried on a non-composable pair");
    return it->second;
}

Matrix TwistedLineBundle::mult(int a, int b, const Matrix& va, const Matrix& vb) const {
    return sigma(a, b) * va * vb;
}

Matrix TwistedLineBundle::invol(int a, const Matrix& va) const {
    return std::conj(sigma(a, view_->inverse(a))) * va.adjoint();
}

std::shared_ptr<FellBundle> TwistedLineBundle::restricted(ViewPtr subview) const {
    ViewPtr parent = view_;
    CocycleFn fn = sigma_fn_;
    auto lifted = [parent, fn](const FiniteGroupoidView& sub, int g, int h) {
        int pg = parent->arrow_id(sub.arrow(g).key);
        int ph = parent->arrow_id(sub.arrow(h).key);
        if (pg < 0 || ph < 0) throw InputError("subview arrow not in parent view");
        return fn(*parent, pg, ph);
    };
    return std::make_shared<TwistedLineBundle>(std::move(subview), lifted);
}

ActionBundle::ActionBundle(ViewPtr group_view, int n, std::vector<Matrix> unitaries)
    : FellBundle(std::move(group_view)), n_(n), unitaries_(std::move(unitaries)) {
    const FiniteGroupoidView& v = *view_;
    if (v.num_units() != 1) throw InputError("action bundles live over one-unit (group) views");
    if (static_cast<int>(unitaries_.size()) != v.num_arrows())
        throw InputError("need one unitary per group element");
    for (int g = 0; g < v.num_arrows(); ++g) {
        const Matrix& u = unitaries_[static_cast<std::size_t>(g)];
        if (u.rows() != n_ || u.cols() != n_) throw InputError("unitary of wrong size");
        if (((u.adjoint() * u) - Matrix::Identity(n_, n_)).norm() > 1e-12)
            throw InputError("implementing matrix is not unitary at " + v.arrow(g).key);
    }
    // alpha must be multiplicative as automorphisms: Ad(U_g U_h) = Ad(U_{gh}).
    Matrix probe = Matrix::Zero(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) probe(i, j) = cd(1.0 + i, 0.5 * j);
    for (int g = 0; g < v.num_arrows(); ++g) {
        for (int h = 0; h < v.num_arrows(); ++h) {
            auto gh = v.compose(g, h);
            if (!gh.ok()) continue;
            Matrix lhs = alpha(g, alpha(h, probe));
            Matrix rhs = alpha(gh.id, probe);
            if ((lhs - rhs).norm() > 1e-10)
                throw InputError("alpha is not multiplicative at (" + v.arrow(g).key + ", " +
                                 v.arrow(h).key + ")");
        }
    }
}

std::string ActionBundle::kind() const { return "action(M" + std::to_string(n_) + ")"; }

Matrix ActionBundle::alpha(int g, const Matrix& x) const {
    const Matrix& u = unitaries_[static_cast<std::size_t>(g)];
    return u * x * u.adjoint();
}

Matrix ActionBundle::mult(int a, int, const Matrix& va, const Matrix& vb) const {
    return va * alpha(a, vb);
}

Matrix ActionBundle::invol(int a, const Matrix& va) const {
    return alpha(view_->inverse(a), va.adjoint());
}

std::shared_ptr<FellBundle> ActionBundle::restricted(ViewPtr subview) const {
    std::vector<Matrix> us;
    for (int a = 0; a < subview->num_arrows(); ++a) {
        int parent = view_->arrow_id(subview->arrow(a).key);
        if (parent < 0) throw InputError("subview arrow not in parent view");
        us.push_back(unitaries_[static_cast<std::size_t>(parent)]);
    }
    return std::make_shared<ActionBundle>(std::move(subview), n_, std::move(us));
}

CheckReport check_bundle_axioms(const FellBundle& bundle, const BundleAxiomOptions& options) {
    const FiniteGroupoidView& v = bundle.view();
    CheckReport report;
    report.command = "check_bundle_axioms";
    report.system = v.descriptor() + " / " + bundle.kind();
    report.tolerance = options.tolerance;
    const double tol = options.tolerance;

    RngStream rng(derive_seed(options.seed, "bundle-axioms"));

    // Per-arrow element laws.
    std::size_t invol_bad = 0, cstar_bad = 0, psd_bad = 0;
    int checks = std::max(1, options.random_norm_checks / std::max(1, v.num_arrows()));
    for (int a = 0; a < v.num_arrows(); ++a) {
        for (int s = 0; s < checks; ++s) {
            Matrix x = bundle.random_element(a, rng);
            Matrix xs = bundle.invol(a, x);
            Matrix back = bundle.invol(v.inverse(a), xs);
            if ((back - x).cwiseAbs().maxCoeff() > tol) {
                ++invol_bad;
                report.add_flag("involution_involutive", v.arrow(a).key, false);
            }
            auto prod = v.compose(v.inverse(a), a);
            if (prod.ok()) {
                Matrix aa = bundle.mult(v.inverse(a), a, xs, x);
                double na = spectral_norm(x);
                double naa = spectral_norm(aa);
                if (std::abs(naa - na * na) > tol * std::max(1.0, na * na)) {
                    ++cstar_bad;
                    report.add_equality("cstar_identity", v.arrow(a).key, naa, na * na, tol);
                }
                if (hermitian_min_eigenvalue(aa) < -tol) {
                    ++psd_bad;
                    report.add_flag("positivity", v.arrow(a).key, false, "a*a has a negative eigenvalue");
                }
            }
        }
    }
    report.add_flag("involution_involutive", "sampled arrows", invol_bad == 0);
    report.add_flag("cstar_identity", "sampled arrows", cstar_bad == 0);
    report.add_flag("positivity", "sampled arrows", psd_bad == 0);

    // Composable pairs: shapes, anti-multiplicativity; triples: associativity.
    std::size_t pair_idx = 0, shape_bad = 0, anti_bad = 0, assoc_bad = 0, pairs_checked = 0,
                triples_checked = 0;
    std::size_t total_pairs = 0;
    for (int u = 0; u < v.num_units(); ++u)
        total_pairs += v.source_fiber(u).size() * v.range_fiber(u).size();
    std::size_t stride = total_pairs > options.max_pairs ? (total_pairs + options.max_pairs - 1) / options.max_pairs : 1;

    for (int u = 0; u < v.num_units(); ++u) {
        for (int g : v.source_fiber(u)) {
            for (int h : v.range_fiber(u)) {
                if (pair_idx++ % stride != 0) continue;
                auto gh = v.compose(g, h);
                if (!gh.ok()) continue;
                ++pairs_checked;
                for (int s = 0; s < options.samples_per_pair; ++s) {
                    Matrix x = bundle.random_element(g, rng);
                    Matrix y = bundle.random_element(h, rng);
                    Matrix xy = bundle.mult(g, h, x, y);
                    auto [er, ec] = bundle.shape(gh.id);
                    if (xy.rows() != er || xy.cols() != ec) {
                        ++shape_bad;
                        report.add_flag("mult_shape", v.arrow(g).key + " . " + v.arrow(h).key, false);
                    }
                    // (xy)* = y* x*
                    Matrix lhs = bundle.invol(gh.id, xy);
                    Matrix rhs = bundle.mult(v.inverse(h), v.inverse(g), bundle.invol(h, y),
                                             bundle.invol(g, x));
                    if ((lhs - rhs).cwiseAbs().maxCoeff() > tol) {
                        ++anti_bad;
                        report.add_flag("involution_antimultiplicative",
                                        v.arrow(g).key + " . " + v.arrow(h).key, false);
                    }
                    // Associativity against one in-view continuation.
                    for (int k : v.range_fiber(v.arrow(h).src)) {
                        auto hk = v.compose(h, k);
                        if (!hk.ok()) continue;
                        auto ghk = v.compose(gh.id, k);
                        if (!ghk.ok()) continue;
                        Matrix z = bundle.random_element(k, rng);
                        Matrix left = bundle.mult(gh.id, k, xy, z);
                        Matrix right = bundle.mult(g, hk.id, x, bundle.mult(h, k, y, z));
                        ++triples_checked;
                        if ((left - right).cwiseAbs().maxCoeff() > tol) {
                            ++assoc_bad;
                            report.add_flag("mult_associativity",
                                            v.arrow(g).key + " . " + v.arrow(h).key + " . " +
                                                v.arrow(k).key,
                                            false);
                        }
                        break;  // one continuation per pair keeps the sweep linear
                    }
                }
            }
        }
    }
    report.add_flag("mult_shape", "composable pairs", shape_bad == 0,
                    std::to_string(pairs_checked) + " pairs");
    report.add_flag("involution_antimultiplicative", "composable pairs", anti_bad == 0);
    report.add_flag("mult_associativity", "triples", assoc_bad == 0,
                    std::to_string(triples_checked) + " triples");
    report.budget = "pairs=" + std::to_string(pairs_checked) + "/" + std::to_string(total_pairs);
    return report;
}

}  // namespace grd
