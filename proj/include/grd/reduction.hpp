#pragma once

#include <memory>
#include <string>
#include <vector>

#include "grd/bundle.hpp"
#include "grd/norms.hpp"
#include "grd/partial_action.hpp"
#include "grd/section.hpp"

namespace grd {

/// The bundle over the acting group induced by a trivial matrix bundle on a
/// transformation groupoid: the fiber at a group element gamma is the direct
/// sum over sampled base points x in the domain of gamma^{-1} of the base
/// fibers, realized as matrices over the sample's total coordinate space
/// whose nonzero blocks sit at (theta_gamma x, x). Multiplication is then
/// the plain matrix product followed by projection onto the product's
/// in-view block mask, and involution is the adjoint.
class LiftedBundle : public FellBundle {
public:
    LiftedBundle(TransformationFixture fixture, int base_rank);

    std::string kind() const override;
    std::pair<int, int> shape(int arrow) const override;
    Matrix mult(int a, int b, const Matrix& va, const Matrix& vb) const override;
    Matrix invol(int a, const Matrix& va) const override;
    int dim(int arrow) const override;
    std::vector<Matrix> basis(int arrow) const override;
    Vector coords(int arrow, const Matrix& value) const override;
    Matrix from_coords(int arrow, const Vector& v) const override;
    Matrix identity_like(int arrow) const override;

    const TransformationFixture& fixture() const { return fixture_; }
    int base_rank() const { return rank_; }
    int total_dim() const { return total_; }
    int point_offset(int unit) const { return offsets_[static_cast<std::size_t>(unit)]; }
    /// Groupoid arrows in the gamma-slice c^{-1}(gamma), by group arrow id.
    const std::vector<int>& slice(int group_arrow) const {
        return slices_[static_cast<std::size_t>(group_arrow)];
    }

    Matrix mask_project(int group_arrow, const Matrix& m) const;

private:
    TransformationFixture fixture_;
    int rank_ = 1;
    int total_ = 0;
    std::vector<int> offsets_;            // per groupoid unit
    std::vector<std::vector<int>> slices_;  // per group arrow
};

/// The transport Phi f (gamma) = f restricted to the gamma-slice, as a
/// section of the lifted bundle, and its inverse.
Section phi_transport(const std::shared_ptr<const LiftedBundle>& lifted, const Section& f);
Section phi_inverse(const BundlePtr& base_bundle, const std::shared_ptr<const LiftedBundle>& lifted,
                    const Section& tilde_f);

struct ReductionCheckOptions {
    std::vector<int> ps{0, 1, 2, 3};
    int section_pairs = 25;
    std::uint64_t seed = 0;
    double hom_tol = 1e-12;
    double sobolev_tol = 1e-10;
    double reduced_tol = 1e-8;
    /// Support filter on groupoid arrows (word budget control); empty = all.
    std::function<bool(const FiniteGroupoidView&, int)> support_filter;
};

/// Verifies that Phi is a *-isomorphism onto the lifted picture, that
/// Sobolev norms agree exactly (L = l o c), and that reduced norms agree at
/// matching budgets.
CheckReport reduction_equivalence_check(const TransformationFixture& fixture, int base_rank,
                                        const ReductionCheckOptions& options = {});

/// Exhaustive Steinberg-model verification on the full d-shift at the given
/// budgets: defined pairs (w, x) biject with in-budget arrows at each
/// sampled source, exactly one generator image value in {+1,-1} matches the
/// cocycle, composition transports, and words with a subword a_j^{-1} a_i
/// are rejected.
struct SteinbergCheckResult {
    CheckReport report;
    int validated_generator_value = 0;  // image of every a_i under the matching hom
    bool unique = false;
    std::size_t defined_pairs = 0;
};
SteinbergCheckResult steinberg_model_check(int arity, int depth, int radius);

}  // namespace grd
