#include "grd/growth.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "grd/common.hpp"
#include "grd/report.hpp"

namespace grd {

std::vector<long long> GrowthTable::max_counts() const {
    std::vector<long long> out(static_cast<std::size_t>(max_radius) + 1, 0);
    for (const auto& r : rows)
        out[static_cast<std::size_t>(r.radius)] = std::max(out[static_cast<std::size_t>(r.radius)], r.count);
    return out;
}

std::string GrowthTable::to_csv() const {
    std::string out = "unit_id,radius,count\n";
    for (const auto& r : rows)
        out += r.unit + "," + std::to_string(r.radius) + "," + std::to_string(r.count) + "\n";
    return out;
}

GrowthTable ball_counts(const std::vector<std::string>& units, int max_radius,
                        const FiberCounter& counter, const std::string& system,
                        const std::string& metadata) {
    if (max_radius < 0) throw InputError("max radius must be >= 0");
    GrowthTable table;
    table.system = system;
    table.metadata = metadata;
    table.max_radius = max_radius;
    std::vector<std::string> sorted_units = units;
    std::sort(sorted_units.begin(), sorted_units.end());
    for (const auto& u : sorted_units) {
        for (int r = 0; r <= max_radius; ++r) {
            auto [count, exact] = counter(u, r);
            if (count < 0) {  // counter exhausted its budget
                table.complete = false;
                return table;
            }
            table.rows.push_back({u, r, count, exact});
            if (!exact) table.complete = table.complete && false;
        }
    }
    return table;
}

FiberCounter dr_fiber_counter(std::shared_ptr<const LocalSystem> system) {
    auto cache = std::make_shared<std::map<std::string, std::vector<DRArrow>>>();
    auto cached_radius = std::make_shared<std::map<std::string, int>>();
    return [system, cache, cached_radius](const std::string& unit, int radius) {
        auto it = cache->find(unit);
        if (it == cache->end() || (*cached_radius)[unit] < radius) {
            (*cache)[unit] = dr_fiber(*system, unit, radius);
            (*cached_radius)[unit] = radius;
            it = cache->find(unit);
        }
        long long n = 0;
        for (const auto& a : it->second)
            if (a.length() <= radius) ++n;
        bool exact = true;
        if (auto k = system->exact_preimage_depth(); k && radius > *k) exact = false;
        return std::make_pair(n, exact);
    };
}

FiberCounter kernel_fiber_counter(std::shared_ptr<const LocalSystem> system) {
    auto cache = std::make_shared<std::map<std::string, std::vector<DRArrow>>>();
    auto cached_depth = std::make_shared<std::map<std::string, int>>();
    return [system, cache, cached_depth](const std::string& unit, int depth) {
        auto it = cache->find(unit);
        if (it == cache->end() || (*cached_depth)[unit] < depth) {
            (*cache)[unit] = kernel_fiber(*system, unit, depth);
            (*cached_depth)[unit] = depth;
            it = cache->find(unit);
        }
        long long n = 0;
        for (const auto& a : it->second)
            if (a.length() <= 2 * depth) ++n;
        bool exact = true;
        if (auto k = system->exact_preimage_depth(); k && depth > *k) exact = false;
        return std::make_pair(n, exact);
    };
}

FiberCounter preimage_counter(std::shared_ptr<const LocalSystem> system) {
    auto cache = std::make_shared<std::map<std::string, OrbitAndPreimages>>();
    auto cached_depth = std::make_shared<std::map<std::string, int>>();
    return [system, cache, cached_depth](const std::string& unit, int depth) {
        auto it = cache->find(unit);
        if (it == cache->end() || (*cached_depth)[unit] < depth) {
            (*cache)[unit] = iterate_and_preimages(*system, unit, depth);
            (*cached_depth)[unit] = depth;
            it = cache->find(unit);
        }
        long long n = static_cast<long long>(it->second.levels[static_cast<std::size_t>(depth)].size());
        bool exact = true;
        if (auto k = system->exact_preimage_depth(); k && depth > *k) exact = false;
        return std::make_pair(n, exact);
    };
}

FiberCounter view_fiber_counter(ViewPtr view) {
    return [view](const std::string& unit, int radius) {
        int u = view->unit_index(unit);
        if (u < 0) throw InputError("unknown unit: " + unit);
        long long n = 0;
        for (int a : view->source_fiber(u))
            if (view->length(a) <= static_cast<double>(radius)) ++n;
        return std::make_pair(n, !view->truncated());
    };
}

std::string GrowthClass::kind_name() const {
    switch (kind) {
        case GrowthKind::Bounded: return "bounded";
        case GrowthKind::Polynomial: return "polynomial";
        case GrowthKind::Exponential: return "exponential";
    }
    return "?";
}

namespace {

struct Fit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // sum of squared residuals
};

Fit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    Fit f;
    f.slope = sxx > 0 ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    for (std::size_t i = 0; i < n; ++i) {
        double e = ys[i] - (f.intercept + f.slope * xs[i]);
        f.residual += e * e;
    }
    return f;
}

}  // namespace

GrowthClass classify_growth(const GrowthTable& table) {
    const auto counts = table.max_counts();
    const int R = table.max_radius;
    if (R < 4) throw InputError("classify_growth needs radii 0..R with R >= 4");
    for (long long c : counts)
        if (c < 1) throw InputError("ball counts must be >= 1 (the unit arrow)");

    GrowthClass g;
    g.terminal_ratio = static_cast<double>(counts[static_cast<std::size_t>(R)]) /
                       static_cast<double>(counts[static_cast<std::size_t>(R - 1)]);

    auto certify = [&](int d) {
        double c_hat = 0.0;
        for (int n = 0; n <= R; ++n)
            c_hat = std::max(c_hat, static_cast<double>(counts[static_cast<std::size_t>(n)]) /
                                        std::pow(1.0 + n, d));
        bool ok = true;
        for (int n = 0; n <= R; ++n)
            ok = ok && static_cast<double>(counts[static_cast<std::size_t>(n)]) <=
                           c_hat * std::pow(1.0 + n, d) * (1.0 + 1e-12);
        g.c_hat = c_hat;
        g.d_hat = d;
        g.certificate_ok = ok;
    };

    // Bounded: constant tail of at least three entries.
    int first_const = R;
    while (first_const > 0 && counts[static_cast<std::size_t>(first_const - 1)] == counts[static_cast<std::size_t>(R)])
        --first_const;
    if (first_const <= R - 2) {
        g.kind = GrowthKind::Bounded;
        g.rule = "constant from radius " + std::to_string(first_const);
        certify(0);
        return g;
    }

    std::vector<double> ns, log1n, logc;
    for (int n = 0; n <= R; ++n) {
        ns.push_back(static_cast<double>(n));
        log1n.push_back(std::log(1.0 + n));
        logc.push_back(std::log(static_cast<double>(counts[static_cast<std::size_t>(n)])));
    }
    Fit poly = least_squares(log1n, logc);
    Fit expo = least_squares(ns, logc);
    g.poly_residual = poly.residual;
    g.exp_residual = expo.residual;

    bool residual_margin = expo.residual < 0.5 * poly.residual && g.terminal_ratio > 1.3;
    // Stable geometric tail: the last three successive ratios all exceed 1.3
    // and the exponential fit is no worse. Catches short tables where the
    // 0.5x residual margin has not separated yet.
    bool stable_tail = expo.residual < poly.residual;
    for (int n = R - 2; n <= R && stable_tail; ++n)
        stable_tail = static_cast<double>(counts[static_cast<std::size_t>(n)]) >
                      1.3 * static_cast<double>(counts[static_cast<std::size_t>(n - 1)]);
    if (residual_margin || stable_tail) {
        g.kind = GrowthKind::Exponential;
        g.base = g.terminal_ratio;
        g.rule = residual_margin ? "exp residual < 0.5 x poly residual and terminal ratio > 1.3"
                                 : "stable geometric tail (last three ratios > 1.3)";
        return g;
    }

    // Polynomial: degree from the log-log slope over the upper half of the
    // radii (the tail sees the asymptotics; early radii carry setup effects).
    std::vector<double> tx, ty;
    for (int n = (R + 1) / 2; n <= R; ++n) {
        tx.push_back(std::log(1.0 + n));
        ty.push_back(std::log(static_cast<double>(counts[static_cast<std::size_t>(n)])));
    }
    Fit tail = least_squares(tx, ty);
    int d = std::max(0, static_cast<int>(std::lround(tail.slope)));
    g.kind = GrowthKind::Polynomial;
    g.rule = "tail log-log slope " + Json::format_number(tail.slope);
    certify(d);
    return g;
}

}  // namespace grd
