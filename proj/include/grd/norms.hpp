#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grd/report.hpp"
#include "grd/section.hpp"

namespace grd {

/// Units the sup-over-units norms are evaluated on. For full finite views
/// this is every unit (and the values are exact); for truncations it is the
/// documented sample and reduced norms are certified lower bounds.
struct UnitSample {
    std::vector<int> units;
    std::string label;
    static UnitSample all(const FiniteGroupoidView& view);
    static UnitSample of(const FiniteGroupoidView& view, const std::vector<std::string>& unit_keys);
};

struct ReducedNormMeta {
    std::string method;       // worst-case solver used
    int max_dimension = 0;
    double budget = 0.0;      // length cutoff for the representation basis
    std::string sample;
    bool exact = false;       // true on full (untruncated) views with all units
};

struct NormReport {
    double sup = 0.0;
    double i_norm = 0.0;
    double l2_s = 0.0;
    double l2_r = 0.0;
    double ii = 0.0;
    std::map<int, double> sobolev;    // p -> max(source, range)
    std::map<int, double> sobolev_s;
    std::map<int, double> sobolev_r;
    std::optional<double> reduced;
    ReducedNormMeta reduced_meta;
    // per sampled unit: (unit key, |T_f(x)|, |S_f(x)|)
    std::vector<std::tuple<std::string, double, double>> fiber_sums;
    std::string p_convention = "nonnegative_integer";

    Json to_json() const;
};

/// Sup, I, l2 and weighted Sobolev norms of a section over the sampled
/// units. Hermitian eigenproblems are solved densely (see linalg).
NormReport compute_norms(const Section& f, const LengthFn& length, const std::vector<int>& ps,
                         const UnitSample& sample);

/// Operator norm of the left regular representation compressed to the
/// sampled source fibers with basis arrows of length <= budget. Exact on
/// full finite views with the full sample; a certified lower bound on
/// truncations (compressions only shrink norms, and the value is monotone
/// in both the budget and the sample).
double reduced_norm(const Section& f, const UnitSample& sample, double budget,
                    ReducedNormMeta* meta = nullptr);

/// Convenience: reduced norm with every in-view basis arrow.
double reduced_norm(const Section& f, const UnitSample& sample, ReducedNormMeta* meta = nullptr);

double sup_norm(const Section& f);
double i_norm(const Section& f, const UnitSample& sample);
double sobolev_norm(const Section& f, const LengthFn& length, int p, const UnitSample& sample);
double sobolev_norm_source(const Section& f, const LengthFn& length, double p, const UnitSample& sample);
double sobolev_norm_range(const Section& f, const LengthFn& length, double p, const UnitSample& sample);

/// Fiberwise sums T_f(x) (source) and S_f(x) (range) at one unit.
Matrix fiber_sum_source(const Section& f, int unit, const LengthFn& length, double p);
Matrix fiber_sum_range(const Section& f, int unit, const LengthFn& length, double p);

}  // namespace grd
