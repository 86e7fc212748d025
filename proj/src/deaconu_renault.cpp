#include "grd/deaconu_renault.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "grd/common.hpp"

namespace grd {

std::string DRArrow::key() const { return x + ";" + std::to_string(k) + ";" + y; }

DRArrow DRArrow::parse_key(const std::string& key, int m, int n) {
    auto first = key.find(';');
    auto second = key.find(';', first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw InputError("bad DR arrow key: " + key);
    DRArrow a;
    a.x = key.substr(0, first);
    a.k = std::stoll(key.substr(first + 1, second - first - 1));
    a.y = key.substr(second + 1);
    a.m = m;
    a.n = n;
    return a;
}

std::vector<DRArrow> dr_fiber(const LocalSystem& system, const std::string& y, int radius) {
    if (radius < 0) throw InputError("radius must be >= 0");
    // Forward orbit of y once; preimage trees of each T^n(y) lazily per m.
    std::vector<std::string> forward{y};
    for (int i = 0; i < radius; ++i) forward.push_back(system.apply(forward.back()));

    // preimage_levels[n][m] = T^{-m}(T^n y), grown on demand.
    std::vector<std::vector<std::vector<std::string>>> levels(static_cast<std::size_t>(radius) + 1);
    for (int n = 0; n <= radius; ++n) levels[static_cast<std::size_t>(n)].push_back({forward[static_cast<std::size_t>(n)]});
    auto level = [&](int n, int m) -> const std::vector<std::string>& {
        auto& tree = levels[static_cast<std::size_t>(n)];
        while (static_cast<int>(tree.size()) <= m) {
            std::set<std::string> next;
            for (const auto& p : tree.back())
                for (const auto& q : system.preimages(p)) next.insert(q);
            tree.emplace_back(next.begin(), next.end());
        }
        return tree[static_cast<std::size_t>(m)];
    };

    std::map<std::pair<std::string, long long>, DRArrow> found;
    for (int t = 0; t <= radius; ++t) {
        for (int n = 0; n <= t; ++n) {
            int m = t - n;
            for (const auto& x : level(n, m)) {
                std::pair<std::string, long long> id{x, static_cast<long long>(m) - n};
                if (found.count(id)) continue;  // earlier t gave the minimal witness
                DRArrow a;
                a.x = x;
                a.k = id.second;
                a.y = y;
                a.m = m;
                a.n = n;
                found.emplace(std::move(id), std::move(a));
            }
        }
    }
    std::vector<DRArrow> out;
    out.reserve(found.size());
    for (auto& [_, a] : found) out.push_back(a);
    std::sort(out.begin(), out.end(), [](const DRArrow& a, const DRArrow& b) { return a.key() < b.key(); });
    return out;
}

std::vector<DRArrow> kernel_fiber(const LocalSystem& system, const std::string& y, int depth) {
    if (depth < 0) throw InputError("depth must be >= 0");
    auto all = dr_fiber(system, y, 2 * depth);
    std::vector<DRArrow> out;
    for (auto& a : all)
        if (a.k == 0) out.push_back(a);
    return out;
}

std::optional<std::string> shift_act(const FullShiftSystem& system, const Word& w,
                                     const std::string& x) {
    auto nf = uv_normal_form(w);
    if (!nf) return std::nullopt;
    EvPeriodicPoint p = EvPeriodicPoint::parse(x);
    // v^{-1} = n forward steps, on the cylinder spelled by v.
    const auto& vl = nf->v.letters();
    for (std::size_t i = 0; i < vl.size(); ++i) {
        if (p.symbol_at(0) != vl[i]) return std::nullopt;
        p = p.shifted();
    }
    // u = backward steps via the local inverses: prepend u spelled forwards.
    const auto& ul = nf->u.letters();
    for (auto it = ul.rbegin(); it != ul.rend(); ++it) p = p.prepended(*it);
    return p.key();
}

std::optional<DRArrow> steinberg_psi(const FullShiftSystem& system, const Word& w,
                                     const std::string& x) {
    auto nf = uv_normal_form(w);
    if (!nf) return std::nullopt;
    auto y = shift_act(system, w, x);
    if (!y) return std::nullopt;
    DRArrow a;
    a.x = *y;
    a.m = nf->u.length();
    a.n = nf->v.length();
    a.k = static_cast<long long>(a.m) - a.n;
    a.y = x;
    // (|u|, |v|) is the minimal witness: a shorter one would force the last
    // letter of u to equal the last letter of v, contradicting reducedness.
    return a;
}

long long DRView::cocycle(int arrow_id) const {
    const std::string& key = view->arrow(arrow_id).key;
    auto first = key.find(';');
    auto second = key.find(';', first + 1);
    return std::stoll(key.substr(first + 1, second - first - 1));
}

DRView build_dr_view(std::shared_ptr<const LocalSystem> system, const std::vector<std::string>& bases,
                     int radius, bool kernel_only, int closure_rounds) {
    if (radius < 0) throw InputError("radius must be >= 0");
    if (bases.empty()) throw InputError("need at least one base point");
    if (closure_rounds < 1) throw InputError("closure_rounds must be >= 1");

    std::map<std::string, DRArrow> arrows;  // key -> arrow with witness
    std::set<std::string> enumerated;
    std::vector<std::string> frontier = bases;
    for (int round = 0; round < closure_rounds; ++round) {
        std::set<std::string> discovered;
        for (const auto& y : frontier) {
            if (!enumerated.insert(y).second) continue;
            auto fib =
                kernel_only ? kernel_fiber(*system, y, radius / 2) : dr_fiber(*system, y, radius);
            for (auto& a : fib) {
                if (a.length() > radius) continue;
                arrows.emplace(a.key(), a);
                DRArrow inv;  // (y, -k, x) with the transposed witness
                inv.x = a.y;
                inv.k = -a.k;
                inv.y = a.x;
                inv.m = a.n;
                inv.n = a.m;
                arrows.emplace(inv.key(), inv);
                discovered.insert(a.x);
            }
        }
        frontier.assign(discovered.begin(), discovered.end());
    }

    std::set<std::string> points;
    for (const auto& [_, a] : arrows) {
        points.insert(a.x);
        points.insert(a.y);
    }
    ViewBuilder b;
    for (const auto& p : points) {
        DRArrow unit;
        unit.x = p;
        unit.k = 0;
        unit.y = p;
        b.add_unit(p, unit.key());
        arrows.emplace(unit.key(), unit);
    }
    for (const auto& [key, a] : arrows) {
        DRArrow inv;
        inv.x = a.y;
        inv.k = -a.k;
        inv.y = a.x;
        b.add_arrow(key, a.y, a.x, inv.key(), static_cast<double>(a.length()));
    }

    auto product = [](const FiniteGroupoidView& view, int g, int h) {
        const std::string& a = view.arrow(g).key;  // (x, k, y)
        const std::string& c = view.arrow(h).key;  // (y, k', z)
        auto a1 = a.find(';');
        auto a2 = a.find(';', a1 + 1);
        auto c1 = c.find(';');
        auto c2 = c.find(';', c1 + 1);
        long long k = std::stoll(a.substr(a1 + 1, a2 - a1 - 1)) +
                      std::stoll(c.substr(c1 + 1, c2 - c1 - 1));
        return a.substr(0, a1) + ";" + std::to_string(k) + ";" + c.substr(c2 + 1);
    };

    DRView out;
    std::string desc = system->name() + (kernel_only ? " kernel" : "") +
                       " DR view, radius " + std::to_string(radius) + ", " +
                       std::to_string(bases.size()) + " base points";
    out.view = b.finish(desc, product, true);
    out.system = std::move(system);
    out.base_units = bases;
    out.radius = radius;
    out.kernel_only = kernel_only;
    return out;
}

}  // namespace grd
