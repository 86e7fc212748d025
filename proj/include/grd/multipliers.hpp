#pragma once

#include <functional>
#include <string>
#include <vector>

#include "grd/norms.hpp"
#include "grd/section.hpp"

namespace grd {

/// Scalar function on the arrows of a view.
using ArrowFn = std::function<cd(int)>;
using RealArrowFn = std::function<double(int)>;

/// psi identically 0 on units, 1 elsewhere ("equilateral").
RealArrowFn equilateral_psi(const ViewPtr& view);
/// psi = the view's length (word length on group fixtures).
RealArrowFn length_psi(const ViewPtr& view);
/// h(gamma) = <v_{r(gamma)}, v_{s(gamma)}> for seeded random unit vectors
/// v_x: a positive definite function with h = 1 on units.
ArrowFn gram_positive_definite(const ViewPtr& view, int dim, std::uint64_t seed);

struct TupleSamplingOptions {
    int max_tuple_size = 6;
    int exhaustive_fiber_cap = 12;  // exhaustive subsets up to this fiber size
    int random_tuples = 64;         // per unit, beyond the cap
    std::uint64_t seed = 0;
    /// Tuple members are drawn from arrows of length <= this, so that the
    /// pairwise products gamma_i^{-1} gamma_j stay inside the view.
    double max_element_length = 1e300;
};

/// Negative-type check: psi vanishes on units, is inverse-symmetric, and on
/// every sampled tuple from a range fiber the quadratic form compressed to
/// the sum-zero subspace has top eigenvalue <= tol (matrices normalized to
/// unit max entry first). Unresolvable products gamma_i^{-1} gamma_j raise
/// BudgetError.
CheckReport is_negative_type(const ViewPtr& view, const RealArrowFn& psi, const UnitSample& sample,
                             const TupleSamplingOptions& options, double tol = 1e-9);

/// Schoenberg family h_t = exp(-t psi): PSD kernel matrices on sampled
/// tuples for each t, and sup |h_t - 1| over the view decreasing along
/// t -> 0 (asserted for psi >= 0).
CheckReport schoenberg_family(const ViewPtr& view, const RealArrowFn& psi,
                              const std::vector<double>& t_grid, const UnitSample& sample,
                              const TupleSamplingOptions& options, double tol = 1e-9);

struct MultiplierResult {
    Section mhf;
    CheckReport report;
};

/// M_h f = h . f with the norm bounds: contractivity
/// |M_h f|_r <= |h|_{inf,supp} |f|_r on full fixtures, and the Schwartz
/// bound |M_h f|_{2,p,L} <= B_p(h) |f|_r with B_p the in-budget supremum of
/// |h| (1+L)^p. On truncations the right side uses the I-norm upper bound.
MultiplierResult apply_multiplier(const ArrowFn& h, const Section& f, const LengthFn& length,
                                  const std::vector<int>& ps, const UnitSample& sample,
                                  double tol = 1e-9);

struct LocalApproxRow {
    double t = 0.0;
    double error = 0.0;
    double bound = 0.0;
};

struct LocalApproxTrace {
    std::vector<LocalApproxRow> rows;  // t descending
    CheckReport report;
    std::string csv() const;  // columns t,error,bound
};

/// Local approximation experiment: g_t = restriction of M_{h_t} f to U,
/// error |f - g_t| in the reduced norm on full fixtures (I-norm upper bound
/// on truncations). Asserts the error is nonincreasing along the refining
/// tail of the grid, the documented envelope bound, and (on full fixtures
/// with supp f inside U) a <= 1e-9 error at the smallest t.
LocalApproxTrace local_approximate(const Section& f, const std::function<bool(int)>& in_u,
                                   const RealArrowFn& psi, std::vector<double> t_grid,
                                   const UnitSample& sample, double tol = 1e-9);

}  // namespace grd
