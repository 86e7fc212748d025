#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grd/growth.hpp"
#include "grd/norms.hpp"
#include "grd/section.hpp"

namespace grd {

/// A finite-scope rapid-decay witness: |f|_r <= C |f|_{2,p,L} on the stated
/// scope (system + budget + sample).
struct RDWitness {
    double C = 0.0;
    int p = 0;
    std::string scope;
};

struct LabeledSection {
    std::string label;
    Section section;
};

/// Deterministic indicator families (unit balls, kernel balls, spheres,
/// signed two-arrow combinations) realizing the extremal growth arguments.
std::vector<LabeledSection> indicator_family(const BundlePtr& bundle, const LengthFn& length);

/// Seeded complex-Gaussian sections on fixed supports.
std::vector<LabeledSection> gaussian_family(const BundlePtr& bundle,
                                            const std::vector<int>& support, int count,
                                            std::uint64_t seed);

struct RatioScanResult {
    double max_ratio = 0.0;
    std::string worst_section;
    int skipped_zero = 0;
    bool lower_bound = false;  // numerator certified lower bound (truncations)
    CheckReport report;
};

/// Max of |f|_r / |f|_{2,p,L} over the section family. Exact on full finite
/// fixtures; on truncations the numerator is a certified lower bound and the
/// denominator exact, so reported ratios are lower bounds for the true
/// ratios.
RatioScanResult rd_ratio_scan(const std::vector<LabeledSection>& sections, const LengthFn& length,
                              int p, const UnitSample& sample);

/// Partial sum of S = sum_{n>=0} (1+n)^{-4} to `terms`, plus the integral
/// tail bracket; `tail_halfwidth` receives half the bracket width.
double zeta4_partial_sum(long long terms, double* tail_halfwidth = nullptr);

struct GrowthCertificate {
    double c = 0.0;
    int t = 0;
};

/// The polynomial-growth bound: with k = t + 2 and
/// c1 = 2^t c sum (1+n)^{-4}, asserts |f|_r <= sqrt(c1) |f|_{2,k,L} for
/// every test section. The certificate is validated against the growth
/// table first (count(n) <= c (1+n)^t on every tabulated radius).
CheckReport poly_growth_rd_check(const std::vector<LabeledSection>& sections,
                                 const LengthFn& length, const GrowthCertificate& cert,
                                 const GrowthTable& table, const UnitSample& sample,
                                 double tolerance = 1e-8);

/// |f|_r^2 <= sup_x |sum_{G_x} (f*f)^{1/2}| . sup_x |sum_{G^x} (ff*)^{1/2}|
/// on a full finite fixture.
CheckReport bhm_check(const Section& f, const UnitSample& sample, double tolerance = 1e-8);

/// Generalized Cauchy-Schwarz for positive elements:
/// sum lambda_g a_g <= sqrt(sum lambda^2) (sum a^2)^{1/2}.
CheckReport impineq_check(const std::vector<Matrix>& positives, const std::vector<double>& lambdas,
                          double tolerance = 1e-8);

/// Weighted convolution estimate of the witness (C, q):
/// |f*g|_{2,p,s,L} <= C |f|_{2,p+q,L} |g|_{2,p,s,L}, its range mirror, and
/// submultiplicativity of the weight on the support pairs.
CheckReport weighted_conv_check(const Section& f, const Section& g, const RDWitness& witness,
                                int p, const LengthFn& length, const UnitSample& sample,
                                double tolerance = 1e-8);

/// Open-subgroupoid restriction: checks H is closed, then asserts
/// |f|_{r,H} <= |f|_{r,G} and |f|_{2,p,L|H} <= |f|_{2,p,L} for sections
/// supported in H (extended by zero), and transports the ambient witness.
struct RestrictionContext {
    ViewPtr subview;
    BundlePtr subbundle;
    std::vector<int> arrow_map;  // subview arrow id -> parent arrow id
};
RestrictionContext make_subgroupoid(const BundlePtr& bundle, const std::vector<int>& h_arrows,
                                    const std::string& descriptor);
CheckReport restriction_check(const BundlePtr& bundle, const RestrictionContext& sub,
                              const std::vector<LabeledSection>& h_sections,
                              const std::optional<RDWitness>& witness, int p,
                              const LengthFn& length, double tolerance = 1e-8);

}  // namespace grd
