#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "grd/groupoid.hpp"
#include "grd/shift_space.hpp"
#include "grd/words.hpp"

namespace grd {

/// Arrow (x, k, y) of the Deaconu-Renault groupoid of a local homeomorphism
/// T: range x, cocycle value k = m - n, source y, with T^m(x) = T^n(y) and
/// the minimal witness m + n. The length is L = m + n at that witness.
struct DRArrow {
    std::string x;  // range-side point key
    long long k = 0;
    std::string y;  // source-side point key
    int m = 0;
    int n = 0;
    int length() const { return m + n; }
    std::string key() const;
    static DRArrow parse_key(const std::string& key, int m, int n);
};

/// All arrows with source y and minimal length <= radius. Enumerates
/// witnesses in increasing m + n, so the retained witness per (x, k) is
/// minimal; ties cannot occur since (m, n) is determined by k and m + n.
/// Results are sorted by arrow key.
std::vector<DRArrow> dr_fiber(const LocalSystem& system, const std::string& y, int radius);

/// Arrows of the kernel c = 0 with length <= 2 * depth.
std::vector<DRArrow> kernel_fiber(const LocalSystem& system, const std::string& y, int depth);

/// Steinberg realization for the full d-shift: the word w = u v^{-1} acts by
/// n = |v| forward steps then m = |u| backward steps; the image arrow is
/// (w.x, |u| - |v|, x). Undefined when w has no positive normal form or x is
/// not in the cylinder spelled by v.
std::optional<DRArrow> steinberg_psi(const FullShiftSystem& system, const Word& w,
                                     const std::string& x);

/// The partial shift action itself: u-prefix prepended after removing the
/// v-prefix. Exact on eventually periodic points.
std::optional<std::string> shift_act(const FullShiftSystem& system, const Word& w,
                                     const std::string& x);

/// Enumerated truncation of the Deaconu-Renault groupoid: source fibers of
/// every base point to the given radius, closed under inverses, plus unit
/// arrows for every endpoint. `kernel_only` keeps the c = 0 subgroupoid.
/// With closure_rounds > 1 the fibers of the units discovered in earlier
/// rounds are enumerated too, so in-radius composites of round-1 arrows
/// resolve inside the view.
struct DRView {
    ViewPtr view;
    std::shared_ptr<const LocalSystem> system;
    std::vector<std::string> base_units;  // sampled units (keys)
    int radius = 0;
    bool kernel_only = false;

    /// Cocycle value of an arrow of `view`.
    long long cocycle(int arrow_id) const;
};
DRView build_dr_view(std::shared_ptr<const LocalSystem> system, const std::vector<std::string>& bases,
                     int radius, bool kernel_only = false, int closure_rounds = 1);

}  // namespace grd
