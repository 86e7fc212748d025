#pragma once

#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "grd/groupoid.hpp"
#include "grd/linalg.hpp"
#include "grd/report.hpp"

namespace grd {

/// Concrete Fell bundle over an enumerated view. Fiber elements are complex
/// matrices; the fiber of an arrow gamma has shape rank(rng) x rank(src)
/// (subclasses may confine elements to a masked subspace, see `basis`).
/// mult lands in the fiber of the composed arrow, invol in the fiber of the
/// inverse. Saturation is never assumed.
class FellBundle {
public:
    explicit FellBundle(ViewPtr view) : view_(std::move(view)) {}
    virtual ~FellBundle() = default;

    const FiniteGroupoidView& view() const { return *view_; }
    const ViewPtr& view_ptr() const { return view_; }

    virtual std::string kind() const = 0;
    virtual std::pair<int, int> shape(int arrow) const = 0;
    virtual Matrix mult(int a, int b, const Matrix& va, const Matrix& vb) const = 0;
    virtual Matrix invol(int a, const Matrix& va) const = 0;

    /// Linear dimension of the fiber (= basis().size()).
    virtual int dim(int arrow) const;
    /// Basis of the fiber as matrices; default all matrix units of `shape`.
    virtual std::vector<Matrix> basis(int arrow) const;
    /// Coordinates of an element in `basis` order.
    virtual Vector coords(int arrow, const Matrix& value) const;
    virtual Matrix from_coords(int arrow, const Vector& v) const;

    Matrix zero(int arrow) const;
    virtual Matrix identity_like(int arrow) const;
    virtual Matrix random_element(int arrow, RngStream& rng) const;

    /// The same bundle over a subview (for open-subgroupoid restriction).
    virtual std::shared_ptr<FellBundle> restricted(ViewPtr subview) const;

protected:
    ViewPtr view_;
};

using BundlePtr = std::shared_ptr<const FellBundle>;

/// Trivial matrix bundle: fiber of gamma = rank(rng) x rank(src) matrices,
/// multiplication and involution are the plain matrix ones. rank may vary
/// per unit.
class TrivialBundle : public FellBundle {
public:
    TrivialBundle(ViewPtr view, int rank);
    TrivialBundle(ViewPtr view, std::vector<int> rank_per_unit);
    std::string kind() const override;
    std::pair<int, int> shape(int arrow) const override;
    Matrix mult(int a, int b, const Matrix& va, const Matrix& vb) const override;
    Matrix invol(int a, const Matrix& va) const override;
    std::shared_ptr<FellBundle> restricted(ViewPtr subview) const override;
    int rank_of_unit(int u) const { return ranks_[static_cast<std::size_t>(u)]; }

private:
    std::vector<int> ranks_;
};

/// Line bundle twisted by a unit-modulus 2-cocycle sigma on composable
/// pairs, normalized on units. Involution is a* = conj(sigma(g, g^-1)) a^H,
/// which is involutive under the normalization (checked, not assumed).
class TwistedLineBundle : public FellBundle {
public:
    using CocycleFn = std::function<cd(const FiniteGroupoidView&, int, int)>;
    TwistedLineBundle(ViewPtr view, const CocycleFn& sigma);
    std::string kind() const override;
    std::pair<int, int> shape(int) const override { return {1, 1}; }
    Matrix mult(int a, int b, const Matrix& va, const Matrix& vb) const override;
    Matrix invol(int a, const Matrix& va) const override;
    std::shared_ptr<FellBundle> restricted(ViewPtr subview) const override;
    cd sigma(int a, int b) const;

private:
    CocycleFn sigma_fn_;
    std::unordered_map<std::uint64_t, cd> table_;
};

/// Bundle of a group action on M_n: fibers A delta_g with
/// (a d_g)(b d_h) = a alpha_g(b) d_{gh} and (a d_g)* = alpha_{g^-1}(a*).
/// alpha_g = Ad(U_g) for given unitaries; the assignment must be
/// multiplicative as automorphisms (validated).
class ActionBundle : public FellBundle {
public:
    ActionBundle(ViewPtr group_view, int n, std::vector<Matrix> unitaries);
    std::string kind() const override;
    std::pair<int, int> shape(int) const override { return {n_, n_}; }
    Matrix mult(int a, int b, const Matrix& va, const Matrix& vb) const override;
    Matrix invol(int a, const Matrix& va) const override;
    Matrix alpha(int g, const Matrix& x) const;
    std::shared_ptr<FellBundle> restricted(ViewPtr subview) const override;

private:
    int n_;
    std::vector<Matrix> unitaries_;
};

struct BundleAxiomOptions {
    std::uint64_t seed = 0;
    int samples_per_pair = 1;
    std::size_t max_pairs = 20000;
    int random_norm_checks = 100;
    double tolerance = 1e-10;
};

/// Verifies, over all in-budget composable data and seeded random fiber
/// elements: associativity of mult, (ab)* = b*a*, (a*)* = a, the C*-identity
/// |a*a| = |a|^2, and positivity of a*a in the unit fiber. Violations are
/// reported, not thrown.
CheckReport check_bundle_axioms(const FellBundle& bundle, const BundleAxiomOptions& options = {});

}  // namespace grd
