#include "grd/partial_action.hpp"

#include <algorithm>
#include <set>

#include "grd/common.hpp"
#include "grd/deaconu_renault.hpp"

namespace grd {

std::pair<std::string, std::string> TransformationFixture::split_key(const std::string& key) {
    auto at = key.rfind('@');
    if (at == std::string::npos) throw InputError("not a transformation arrow key: " + key);
    return {key.substr(0, at), key.substr(at + 1)};
}

int TransformationFixture::cocycle(int groupoid_arrow) const {
    auto [word, point] = split_key(groupoid->arrow(groupoid_arrow).key);
    int id = group->arrow_id(word);
    if (id < 0) throw InputError("cocycle word outside group view: " + word);
    return id;
}

namespace {

ProductKeyFn word_at_point_product(int rank) {
    return [rank](const FiniteGroupoidView& view, int g, int h) {
        auto [w1, x1] = TransformationFixture::split_key(view.arrow(g).key);
        auto [w2, x2] = TransformationFixture::split_key(view.arrow(h).key);
        Word product = multiply(Word::parse(rank, w1), Word::parse(rank, w2));
        return product.text() + "@" + x2;
    };
}

}  // namespace

TransformationFixture make_shift_transformation(int arity, int depth, int radius, int tail_symbol) {
    if (depth < 0 || radius < 0) throw InputError("depth and radius must be >= 0");
    if (tail_symbol < 1 || tail_symbol > arity) throw InputError("tail symbol out of range");
    FullShiftSystem shift(arity);

    // Sample: all points u . tail with |u| <= depth.
    std::set<std::string> sample;
    {
        std::vector<EvPeriodicPoint> frontier{EvPeriodicPoint::constant(tail_symbol)};
        sample.insert(frontier.front().key());
        for (int d = 0; d < depth; ++d) {
            std::vector<EvPeriodicPoint> next;
            for (const auto& p : frontier)
                for (int s = 1; s <= arity; ++s) {
                    auto q = p.prepended(s);
                    if (sample.insert(q.key()).second) next.push_back(q);
                }
            frontier = std::move(next);
        }
    }

    ViewBuilder b;
    Word empty(arity);
    for (const auto& x : sample) b.add_unit(x, empty.text() + "@" + x);
    for (const Word& w : ball(arity, radius)) {
        for (const auto& x : sample) {
            auto y = shift_act(shift, w, x);
            if (!y || !sample.count(*y)) continue;
            Word winv = w.inverse();
            b.add_arrow(w.text() + "@" + x, x, *y, winv.text() + "@" + *y,
                        static_cast<double>(w.length()));
        }
    }

    TransformationFixture out;
    out.groupoid = b.finish("F" + std::to_string(arity) + " shift transformation (depth " +
                                std::to_string(depth) + ", radius " + std::to_string(radius) + ")",
                            word_at_point_product(arity), true);
    out.group = free_group_ball(arity, radius);
    out.descriptor = out.groupoid->descriptor();
    return out;
}

TransformationFixture make_finite_transformation(
    const ViewPtr& group_view, const std::vector<std::string>& points,
    const std::vector<std::map<std::string, std::string>>& theta) {
    if (group_view->num_units() != 1) throw InputError("group view must have one unit");
    const int n = group_view->num_arrows();
    if (static_cast<int>(theta.size()) != n)
        throw InputError("theta table size does not match the group");
    std::set<std::string> point_set(points.begin(), points.end());
    int identity = group_view->unit_arrow(0);
    for (const auto& x : points)
        if (!theta[static_cast<std::size_t>(identity)].count(x) ||
            theta[static_cast<std::size_t>(identity)].at(x) != x)
            throw InputError("identity element must fix every point, missing: " + x);
    for (int g = 0; g < n; ++g)
        for (const auto& [x, y] : theta[static_cast<std::size_t>(g)])
            if (!point_set.count(x) || !point_set.count(y))
                throw InputError("theta maps through an unknown point: " + x + " -> " + y);

    // Partial-action law on the table: theta_g theta_h <= theta_{gh}.
    for (int g = 0; g < n; ++g) {
        for (int h = 0; h < n; ++h) {
            auto gh = group_view->compose(g, h);
            if (!gh.ok()) continue;
            for (const auto& [x, hx] : theta[static_cast<std::size_t>(h)]) {
                auto it = theta[static_cast<std::size_t>(g)].find(hx);
                if (it == theta[static_cast<std::size_t>(g)].end()) continue;
                auto composed = theta[static_cast<std::size_t>(gh.id)].find(x);
                if (composed == theta[static_cast<std::size_t>(gh.id)].end() ||
                    composed->second != it->second)
                    throw InputError("table violates the partial-action law at (" +
                                     group_view->arrow(g).key + ", " + group_view->arrow(h).key +
                                     ", " + x + ")");
            }
        }
    }

    ViewBuilder b;
    const std::string ename = group_view->arrow(identity).key;
    for (const auto& x : points) b.add_unit(x, ename + "@" + x);
    for (int g = 0; g < n; ++g) {
        const Arrow& ga = group_view->arrow(g);
        for (const auto& [x, y] : theta[static_cast<std::size_t>(g)])
            b.add_arrow(ga.key + "@" + x, x, y, group_view->arrow(ga.inv).key + "@" + y, ga.length);
    }

    ViewPtr base = group_view;
    auto product = [base](const FiniteGroupoidView& view, int g, int h) {
        auto [w1, x1] = TransformationFixture::split_key(view.arrow(g).key);
        auto [w2, x2] = TransformationFixture::split_key(view.arrow(h).key);
        auto r = base->compose(base->arrow_id(w1), base->arrow_id(w2));
        return base->arrow(r.id).key + "@" + x2;
    };

    TransformationFixture out;
    out.groupoid = b.finish(group_view->descriptor() + " partial action on " +
                                std::to_string(points.size()) + " points",
                            product, group_view->truncated());
    out.group = group_view;
    out.descriptor = out.groupoid->descriptor();
    return out;
}

TransformationFixture make_swap_fixture() {
    auto z2 = cyclic_group(2);
    std::vector<std::string> points{"p", "q"};
    std::vector<std::map<std::string, std::string>> theta(2);
    theta[0] = {{"p", "p"}, {"q", "q"}};
    theta[static_cast<std::size_t>(1)] = {{"p", "q"}, {"q", "p"}};
    // Element order in the view is key-sorted; map indices through arrow ids.
    std::vector<std::map<std::string, std::string>> by_id(2);
    by_id[static_cast<std::size_t>(z2->unit_arrow(0))] = theta[0];
    by_id[static_cast<std::size_t>(1 - z2->unit_arrow(0))] = theta[1];
    auto out = make_finite_transformation(z2, points, by_id);
    out.descriptor = "Z/2 swap on {p,q}";
    return out;
}

TransformationFixture make_degenerate_fixture(const ViewPtr& group_view, int num_points) {
    std::vector<std::string> points;
    for (int i = 0; i < num_points; ++i) points.push_back("x" + std::to_string(i));
    std::vector<std::map<std::string, std::string>> theta(
        static_cast<std::size_t>(group_view->num_arrows()));
    for (const auto& x : points) theta[static_cast<std::size_t>(group_view->unit_arrow(0))][x] = x;
    auto out = make_finite_transformation(group_view, points, theta);
    out.descriptor = "degenerate partial action (" + group_view->descriptor() + ")";
    return out;
}

CheckReport check_partial_action_law(const TransformationFixture& fixture) {
    const FiniteGroupoidView& v = *fixture.groupoid;
    CheckReport report;
    report.command = "check_partial_action_law";
    report.system = fixture.descriptor;

    // act(e, x) = x: every unit arrow has the identity word.
    std::size_t identity_bad = 0;
    for (int u = 0; u < v.num_units(); ++u) {
        auto [w, x] = TransformationFixture::split_key(v.arrow(v.unit_arrow(u)).key);
        int gid = fixture.group->arrow_id(w);
        if (gid != fixture.group->unit_arrow(0) || x != v.unit_key(u)) ++identity_bad;
    }
    report.add_flag("identity_acts_trivially", "all units", identity_bad == 0);

    // One-sided law over all composable in-view pairs: whenever the product
    // word is still inside the group budget, the composed arrow must exist
    // with matching endpoints. Checked as stated, not its converse.
    std::size_t law_bad = 0, pairs = 0, out_of_budget = 0;
    for (int u = 0; u < v.num_units(); ++u) {
        for (int g : v.source_fiber(u)) {
            for (int h : v.range_fiber(u)) {
                auto wc = fixture.group->compose(fixture.cocycle(g), fixture.cocycle(h));
                if (!wc.ok()) {  // product word escapes the truncation budget
                    ++out_of_budget;
                    continue;
                }
                ++pairs;
                auto c = v.compose(g, h);
                if (!c.ok()) {
                    ++law_bad;
                    continue;
                }
                if (v.arrow(c.id).src != v.arrow(h).src || v.arrow(c.id).rng != v.arrow(g).rng)
                    ++law_bad;
            }
        }
    }
    report.add_flag("partial_action_law",
                    std::to_string(pairs) + " in-budget pairs (" + std::to_string(out_of_budget) +
                        " beyond budget)",
                    law_bad == 0);

    // Source fibers inject into the group: |fiber| <= |group ball|.
    std::size_t inj_bad = 0;
    for (int u = 0; u < v.num_units(); ++u) {
        std::set<std::string> words;
        for (int g : v.source_fiber(u))
            words.insert(TransformationFixture::split_key(v.arrow(g).key).first);
        if (words.size() != v.source_fiber(u).size()) ++inj_bad;
        if (static_cast<int>(words.size()) > fixture.group->num_arrows()) ++inj_bad;
    }
    report.add_flag("fiber_injects_into_group", "all units", inj_bad == 0);

    // L(w, x) = l(w) and symmetry under inverse.
    std::size_t len_bad = 0;
    for (int a = 0; a < v.num_arrows(); ++a) {
        auto [w, x] = TransformationFixture::split_key(v.arrow(a).key);
        double lw = fixture.group->length(fixture.group->arrow_id(w));
        if (v.length(a) != lw || v.length(v.inverse(a)) != v.length(a)) ++len_bad;
    }
    report.add_flag("length_is_word_length", "all arrows", len_bad == 0);
    return report;
}

}  // namespace grd
