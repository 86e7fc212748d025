#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "grd/groupoid.hpp"
#include "grd/report.hpp"
#include "grd/shift_space.hpp"
#include "grd/words.hpp"

namespace grd {

/// Transformation groupoid of a partial action together with the group it
/// came from. Groupoid arrows carry keys "<word>@<point>"; the group view
/// has one unit and its arrows are the group elements, so the cocycle
/// c(w, x) = w is a key lookup. The induced length is L(w, x) = l(w).
struct TransformationFixture {
    ViewPtr groupoid;
    ViewPtr group;
    std::string descriptor;

    /// Group arrow id of the word component (the cocycle c).
    int cocycle(int groupoid_arrow) const;
    /// Word/point split of a groupoid arrow key.
    static std::pair<std::string, std::string> split_key(const std::string& key);
};

/// Partial action of F_d on the full d-shift via the Steinberg local
/// inverses: a_i prepends the symbol i, a_i^{-1} deletes it on the cylinder
/// [i]. Units are the points u.tail with |u| <= depth; arrows are the pairs
/// (w, x) with l(w) <= radius whose action is defined and stays in the
/// sample.
TransformationFixture make_shift_transformation(int arity, int depth, int radius,
                                                int tail_symbol = 1);

/// Partial action of a finite group given by explicit partial bijections of
/// a labeled point set: theta[g] maps source points in the domain of g to
/// their images. Element 0 must act as the identity on every point. The
/// table is validated against the one-sided partial-action law.
TransformationFixture make_finite_transformation(
    const ViewPtr& group_view, const std::vector<std::string>& points,
    const std::vector<std::map<std::string, std::string>>& theta);

/// Z/2 swapping two points p, q (a global action).
TransformationFixture make_swap_fixture();

/// The trivially degenerate partial action: D_e = X and D_g = {} for g != e.
/// Its transformation groupoid is the unit space alone.
TransformationFixture make_degenerate_fixture(const ViewPtr& group_view, int num_points);

/// Exhaustively checks the one-sided partial-action law on the fixture:
/// whenever (w, x) and (w', w.x) are arrows and the product stays in view,
/// (w'w, x) is an arrow with the same target. Also checks act(e, x) = x and
/// that source fibers inject into the group ball.
CheckReport check_partial_action_law(const TransformationFixture& fixture);

}  // namespace grd
