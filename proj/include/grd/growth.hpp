#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "grd/deaconu_renault.hpp"
#include "grd/groupoid.hpp"
#include "grd/shift_space.hpp"

namespace grd {

struct GrowthRow {
    std::string unit;
    int radius = 0;
    long long count = 0;
    bool exact = true;
};

struct GrowthTable {
    std::string system;
    std::string metadata;
    int max_radius = 0;
    bool complete = true;  // false when a counter hit its budget
    std::vector<GrowthRow> rows;  // sorted by (unit, radius)

    std::vector<long long> max_counts() const;  // per radius, max over units
    std::string to_csv() const;                 // header unit_id,radius,count
};

/// Count plus exactness flag for one (unit, radius) cell.
using FiberCounter = std::function<std::pair<long long, bool>(const std::string& unit, int radius)>;

GrowthTable ball_counts(const std::vector<std::string>& units, int max_radius,
                        const FiberCounter& counter, const std::string& system,
                        const std::string& metadata);

/// Counts from a Deaconu-Renault fiber enumeration (one sweep per unit at
/// the maximal radius, then prefix counts).
FiberCounter dr_fiber_counter(std::shared_ptr<const LocalSystem> system);

/// Kernel-ball counts: cell (unit, N) counts arrows with c = 0 and
/// L <= 2N.
FiberCounter kernel_fiber_counter(std::shared_ptr<const LocalSystem> system);

/// Backward-orbit counts |T^{-N}(unit)|.
FiberCounter preimage_counter(std::shared_ptr<const LocalSystem> system);

/// Source-fiber ball counts of an enumerated view.
FiberCounter view_fiber_counter(ViewPtr view);

enum class GrowthKind { Bounded, Polynomial, Exponential };

struct GrowthClass {
    GrowthKind kind = GrowthKind::Bounded;
    double c_hat = 0.0;   // certificate constant (bounded/polynomial)
    int d_hat = 0;        // certificate degree
    double base = 0.0;    // exponential base estimate (terminal ratio)
    double poly_residual = 0.0;
    double exp_residual = 0.0;
    double terminal_ratio = 0.0;
    bool certificate_ok = false;  // count(n) <= c_hat (1+n)^d_hat on every row
    std::string rule;             // which margin-rule branch fired

    std::string kind_name() const;
};

/// Margin rule (fixed, documented): bounded when the max-over-units counts
/// are constant from some radius (with at least a 3-entry constant tail);
/// exponential when the least-squares exponential fit of log(count) has
/// residual < 0.5x the polynomial fit's and the terminal ratio
/// count(R)/count(R-1) exceeds 1.3; polynomial otherwise. The polynomial
/// degree is the rounded log-log slope over the upper half of the radii;
/// the base estimate is the terminal ratio. Requires radii 0..R with R >= 4.
GrowthClass classify_growth(const GrowthTable& table);

}  // namespace grd
