#include "grd/groupoid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

#include "grd/common.hpp"
#include "grd/words.hpp"

namespace grd {

int FiniteGroupoidView::unit_index(const std::string& key) const {
    auto it = unit_by_key_.find(key);
    return it == unit_by_key_.end() ? -1 : it->second;
}

int FiniteGroupoidView::arrow_id(const std::string& key) const {
    auto it = arrow_by_key_.find(key);
    return it == arrow_by_key_.end() ? -1 : it->second;
}

ComposeResult FiniteGroupoidView::compose(int g, int h) const {
    const Arrow& a = arrows_[static_cast<std::size_t>(g)];
    const Arrow& b = arrows_[static_cast<std::size_t>(h)];
    if (a.src != b.rng) return {ComposeResult::Status::NotComposable, -1};
    std::string key = product_key_(*this, g, h);
    int id = arrow_id(key);
    if (id < 0) return {ComposeResult::Status::OutOfView, -1};
    return {ComposeResult::Status::Ok, id};
}

void ViewBuilder::add_unit(const std::string& unit_key, const std::string& unit_arrow_key) {
    if (units_.count(unit_key)) return;
    units_[unit_key] = unit_arrow_key;
    unit_order_.push_back(unit_key);
}

void ViewBuilder::add_arrow(const std::string& key, const std::string& src_key,
                            const std::string& rng_key, const std::string& inv_key, double length) {
    auto it = arrows_.find(key);
    if (it != arrows_.end()) {
        const Raw& r = it->second;
        if (r.src != src_key || r.rng != rng_key || r.inv != inv_key)
            throw InputError("conflicting payloads for arrow key: " + key);
        return;
    }
    arrows_[key] = Raw{src_key, rng_key, inv_key, length};
}

ViewPtr ViewBuilder::finish(std::string descriptor, ProductKeyFn product_key, bool truncated) {
    auto view = std::make_shared<FiniteGroupoidView>();
    view->descriptor_ = std::move(descriptor);
    view->truncated_ = truncated;
    view->product_key_ = std::move(product_key);

    view->units_.assign(unit_order_.begin(), unit_order_.end());
    std::sort(view->units_.begin(), view->units_.end());
    for (std::size_t i = 0; i < view->units_.size(); ++i)
        view->unit_by_key_[view->units_[i]] = static_cast<int>(i);

    std::vector<std::string> keys;
    keys.reserve(arrows_.size());
    for (const auto& [k, _] : arrows_) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    for (std::size_t i = 0; i < keys.size(); ++i) view->arrow_by_key_[keys[i]] = static_cast<int>(i);

    view->arrows_.reserve(keys.size());
    for (const std::string& k : keys) {
        const Raw& r = arrows_.at(k);
        Arrow a;
        a.key = k;
        a.src = view->unit_index(r.src);
        a.rng = view->unit_index(r.rng);
        if (a.src < 0 || a.rng < 0) throw InputError("arrow endpoint is not a registered unit: " + k);
        auto invIt = view->arrow_by_key_.find(r.inv);
        if (invIt == view->arrow_by_key_.end())
            throw InputError("inverse arrow missing from view: " + k + " -> " + r.inv);
        a.inv = invIt->second;
        a.length = r.length;
        view->arrows_.push_back(std::move(a));
    }

    view->unit_arrows_.resize(view->units_.size());
    for (const auto& [unit, arrow_key] : units_) {
        int uid = view->unit_index(unit);
        int aid = view->arrow_id(arrow_key);
        if (aid < 0) throw InputError("unit arrow missing from view: " + arrow_key);
        view->unit_arrows_[static_cast<std::size_t>(uid)] = aid;
        view->arrows_[static_cast<std::size_t>(aid)].is_unit = true;
    }

    view->src_fibers_.resize(view->units_.size());
    view->rng_fibers_.resize(view->units_.size());
    for (int a = 0; a < view->num_arrows(); ++a) {
        view->src_fibers_[static_cast<std::size_t>(view->arrows_[static_cast<std::size_t>(a)].src)].push_back(a);
        view->rng_fibers_[static_cast<std::size_t>(view->arrows_[static_cast<std::size_t>(a)].rng)].push_back(a);
    }
    return view;
}

LengthFn view_length(const ViewPtr& view) {
    return [view](int a) { return view->length(a); };
}

std::vector<int> fiber(const FiniteGroupoidView& view, const std::string& unit_key, FiberSide side) {
    int u = view.unit_index(unit_key);
    if (u < 0) throw InputError("unknown unit: " + unit_key);
    return side == FiberSide::Source ? view.source_fiber(u) : view.range_fiber(u);
}

namespace {

// Deterministic stride subsampling when a sweep exceeds its cap.
std::size_t stride_for(std::size_t total, std::size_t cap) {
    if (cap == 0 || total <= cap) return 1;
    return (total + cap - 1) / cap;
}

}  // namespace

CheckReport check_axioms(const ViewPtr& view, const std::optional<LengthFn>& length,
                         const AxiomCheckOptions& options) {
    const FiniteGroupoidView& v = *view;
    CheckReport report;
    report.command = "check_axioms";
    report.system = v.descriptor();
    report.tolerance = options.tolerance;

    auto arrow_name = [&](int a) { return v.arrow(a).key; };

    std::size_t unit_violations = 0, inverse_violations = 0;
    for (int a = 0; a < v.num_arrows(); ++a) {
        const Arrow& ar = v.arrow(a);
        // gamma . unit(src) = gamma ; unit(rng) . gamma = gamma
        auto right = v.compose(a, v.unit_arrow(ar.src));
        auto left = v.compose(v.unit_arrow(ar.rng), a);
        if (!right.ok() || right.id != a || !left.ok() || left.id != a) {
            ++unit_violations;
            report.add_flag("unit_law", arrow_name(a), false, "unit composition does not fix the arrow");
        }
        if (v.inverse(v.inverse(a)) != a) {
            ++inverse_violations;
            report.add_flag("involution", arrow_name(a), false, "inverse not involutive");
        }
        auto gi = v.compose(a, v.inverse(a));
        auto ig = v.compose(v.inverse(a), a);
        if (!gi.ok() || gi.id != v.unit_arrow(ar.rng) || !ig.ok() || ig.id != v.unit_arrow(ar.src)) {
            ++inverse_violations;
            report.add_flag("inverse_law", arrow_name(a), false,
                            "gamma.gamma^-1 is not the range unit arrow");
        }
    }
    report.add_flag("unit_law", "all arrows", unit_violations == 0,
                    std::to_string(v.num_arrows()) + " arrows checked");
    report.add_flag("inverse_law", "all arrows", inverse_violations == 0);

    // Composable pairs: source/range laws, optional length subadditivity.
    std::size_t total_pairs = 0;
    for (int u = 0; u < v.num_units(); ++u)
        total_pairs += v.source_fiber(u).size() * v.range_fiber(u).size();
    const std::size_t pair_stride = stride_for(total_pairs, options.max_pairs);

    std::size_t pair_index = 0, pairs_checked = 0, srcrng_violations = 0, subadd_violations = 0;
    std::size_t out_of_view_products = 0;
    std::vector<std::pair<int, int>> ok_pairs;  // for the triple sweep
    for (int u = 0; u < v.num_units(); ++u) {
        for (int g : v.source_fiber(u)) {
            for (int h : v.range_fiber(u)) {
                if (pair_index++ % pair_stride != 0) continue;
                ++pairs_checked;
                auto c = v.compose(g, h);
                if (c.status == ComposeResult::Status::OutOfView) {
                    ++out_of_view_products;
                    continue;
                }
                if (!c.ok()) {
                    ++srcrng_violations;
                    report.add_flag("composability", arrow_name(g) + " . " + arrow_name(h), false,
                                    "matching source/range but compose undefined");
                    continue;
                }
                const Arrow& p = v.arrow(c.id);
                const Arrow& ag = v.arrow(g);
                const Arrow& ah = v.arrow(h);
                if (p.src != ah.src || p.rng != ag.rng) {
                    ++srcrng_violations;
                    report.add_flag("source_range_law", arrow_name(g) + " . " + arrow_name(h), false);
                }
                if (length) {
                    double lg = (*length)(g), lh = (*length)(h), lp = (*length)(c.id);
                    if (lp > lg + lh + 1e-12) {
                        ++subadd_violations;
                        report.add_inequality("length_subadditivity",
                                              arrow_name(g) + " . " + arrow_name(h), lp, lg + lh, 1e-12);
                    }
                }
                ok_pairs.emplace_back(g, h);
            }
        }
    }
    report.add_flag("source_range_law", "composable pairs", srcrng_violations == 0,
                    std::to_string(pairs_checked) + " of " + std::to_string(total_pairs) + " pairs");

    // Associativity on triples whose two partial products are both in view.
    const std::size_t triple_budget = options.max_triples;
    std::size_t triple_index = 0, triples_checked = 0, assoc_violations = 0;
    std::size_t total_triples_estimate = 0;
    for (const auto& [g, h] : ok_pairs)
        total_triples_estimate += v.range_fiber(v.arrow(h).src).size();
    const std::size_t triple_stride = stride_for(total_triples_estimate, triple_budget);
    for (const auto& [g, h] : ok_pairs) {
        int u = v.arrow(h).src;
        for (int k : v.range_fiber(u)) {
            if (triple_index++ % triple_stride != 0) continue;
            auto hk = v.compose(h, k);
            if (!hk.ok()) continue;
            auto gh = v.compose(g, h);
            auto left = v.compose(gh.id, k);
            auto right = v.compose(g, hk.id);
            if (left.status == ComposeResult::Status::OutOfView ||
                right.status == ComposeResult::Status::OutOfView)
                continue;
            ++triples_checked;
            if (!left.ok() || !right.ok() || left.id != right.id) {
                ++assoc_violations;
                report.add_flag("associativity",
                                arrow_name(g) + " . " + arrow_name(h) + " . " + arrow_name(k), false);
            }
        }
    }
    report.add_flag("associativity", "triples", assoc_violations == 0,
                    std::to_string(triples_checked) + " triples with both partial products in view");

    if (length) {
        std::size_t sym_violations = 0, unit_length_violations = 0;
        for (int a = 0; a < v.num_arrows(); ++a) {
            if (std::abs((*length)(a) - (*length)(v.inverse(a))) > 1e-12) {
                ++sym_violations;
                report.add_equality("length_symmetry", arrow_name(a), (*length)(a),
                                    (*length)(v.inverse(a)), 1e-12);
            }
            if (v.arrow(a).is_unit && std::abs((*length)(a)) > 1e-12) {
                ++unit_length_violations;
                report.add_equality("length_on_units", arrow_name(a), (*length)(a), 0.0, 1e-12);
            }
        }
        report.add_flag("length_symmetry", "all arrows", sym_violations == 0);
        report.add_flag("length_on_units", "all units", unit_length_violations == 0);
        report.add_flag("length_subadditivity", "composable pairs", subadd_violations == 0);
    }

    report.budget = "pairs=" + std::to_string(pairs_checked) + "/" + std::to_string(total_pairs) +
                    ", triples=" + std::to_string(triples_checked) +
                    ", out_of_view_products=" + std::to_string(out_of_view_products) +
                    (v.truncated() ? " (truncated view)" : "");
    return report;
}

namespace {

std::string padded(int value, int width) {
    std::string s = std::to_string(value);
    while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
    return s;
}

}  // namespace

ViewPtr pair_groupoid(int n) {
    if (n <= 0) throw InputError("pair groupoid needs n >= 1");
    const int w = static_cast<int>(std::to_string(n).size());
    ViewBuilder b;
    auto unit = [&](int i) { return "u" + padded(i, w); };
    auto arrow = [&](int i, int j) { return padded(i, w) + ":" + padded(j, w); };
    for (int i = 1; i <= n; ++i) b.add_unit(unit(i), arrow(i, i));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            b.add_arrow(arrow(i, j), unit(j), unit(i), arrow(j, i), i == j ? 0.0 : 1.0);
    auto product = [](const FiniteGroupoidView& view, int g, int h) {
        const std::string& a = view.arrow(g).key;  // "i:j"
        const std::string& c = view.arrow(h).key;  // "j:k"
        return a.substr(0, a.find(':')) + ":" + c.substr(c.find(':') + 1);
    };
    return b.finish("pair_groupoid(" + std::to_string(n) + ")", product, false);
}

ViewPtr group_from_table(const std::string& name, const std::vector<std::string>& element_names,
                         const std::vector<std::vector<int>>& product_table,
                         const std::vector<double>& lengths) {
    const std::size_t n = element_names.size();
    if (n == 0 || product_table.size() != n || lengths.size() != n)
        throw InputError("inconsistent group table");
    // Identity checks and inverse lookup.
    std::vector<int> inverse(n, -1);
    for (std::size_t g = 0; g < n; ++g) {
        if (product_table[g].size() != n) throw InputError("ragged product table");
        if (product_table[0][g] != static_cast<int>(g) || product_table[g][0] != static_cast<int>(g))
            throw InputError("element 0 is not an identity in table '" + name + "'");
        for (std::size_t h = 0; h < n; ++h)
            if (product_table[g][h] == 0) inverse[g] = static_cast<int>(h);
        if (inverse[g] < 0) throw InputError("group table has a non-invertible element");
    }

    ViewBuilder b;
    b.add_unit("e*", "g:" + element_names[0]);
    for (std::size_t g = 0; g < n; ++g)
        b.add_arrow("g:" + element_names[g], "e*", "e*",
                    "g:" + element_names[static_cast<std::size_t>(inverse[g])], lengths[g]);

    auto names = std::make_shared<std::vector<std::string>>(element_names);
    auto table = std::make_shared<std::vector<std::vector<int>>>(product_table);
    auto index_of = std::make_shared<std::map<std::string, int>>();
    for (std::size_t g = 0; g < n; ++g) (*index_of)[element_names[g]] = static_cast<int>(g);

    auto product = [names, table, index_of](const FiniteGroupoidView& view, int g, int h) {
        int gi = index_of->at(view.arrow(g).key.substr(2));
        int hi = index_of->at(view.arrow(h).key.substr(2));
        return "g:" + (*names)[static_cast<std::size_t>((*table)[static_cast<std::size_t>(gi)][static_cast<std::size_t>(hi)])];
    };
    return b.finish(name, product, false);
}

ViewPtr cyclic_group(int n) {
    if (n <= 0) throw InputError("cyclic group needs n >= 1");
    const int w = static_cast<int>(std::to_string(n - 1).size());
    std::vector<std::string> names;
    std::vector<std::vector<int>> table(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    std::vector<double> lengths;
    for (int k = 0; k < n; ++k) {
        names.push_back(padded(k, w));
        lengths.push_back(static_cast<double>(std::min(k, n - k)));
        for (int j = 0; j < n; ++j) table[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = (k + j) % n;
    }
    return group_from_table("cyclic_group(" + std::to_string(n) + ")", names, table, lengths);
}

ViewPtr symmetric_group(int n) {
    if (n < 1 || n > 5) throw InputError("symmetric_group supports 1 <= n <= 5");
    std::vector<std::string> perms;  // one-line notation over 0..n-1
    {
        std::string base;
        for (int i = 0; i < n; ++i) base += static_cast<char>('0' + i);
        std::string p = base;
        std::sort(p.begin(), p.end());
        do {
            perms.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
    }
    // Identity must be element 0; sorted order already puts "01..n" first.
    auto compose_perm = [n](const std::string& p, const std::string& q) {
        std::string r(static_cast<std::size_t>(n), '0');
        for (int i = 0; i < n; ++i)
            r[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(q[static_cast<std::size_t>(i)] - '0')];
        return r;
    };
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
    const std::size_t m = perms.size();
    std::vector<std::vector<int>> table(m, std::vector<int>(m));
    for (std::size_t g = 0; g < m; ++g)
        for (std::size_t h = 0; h < m; ++h) table[g][h] = index.at(compose_perm(perms[g], perms[h]));
    // Word length over adjacent transpositions by breadth-first search.
    std::vector<double> lengths(m, -1.0);
    std::queue<int> bfs;
    lengths[0] = 0.0;
    bfs.push(0);
    std::vector<int> gens;
    for (int i = 0; i + 1 < n; ++i) {
        std::string t;
        for (int j = 0; j < n; ++j) t += static_cast<char>('0' + j);
        std::swap(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(i + 1)]);
        gens.push_back(index.at(t));
    }
    while (!bfs.empty()) {
        int g = bfs.front();
        bfs.pop();
        for (int t : gens) {
            int h = table[static_cast<std::size_t>(g)][static_cast<std::size_t>(t)];
            if (lengths[static_cast<std::size_t>(h)] < 0) {
                lengths[static_cast<std::size_t>(h)] = lengths[static_cast<std::size_t>(g)] + 1.0;
                bfs.push(h);
            }
        }
    }
    return group_from_table("symmetric_group(" + std::to_string(n) + ")", perms, table, lengths);
}

ViewPtr product_with_set(const ViewPtr& group_view, int m) {
    if (m <= 0) throw InputError("point count must be >= 1");
    if (group_view->num_units() != 1) throw InputError("product_with_set expects a one-unit view");
    const int w = static_cast<int>(std::to_string(m - 1).size());
    ViewBuilder b;
    for (int x = 0; x < m; ++x) {
        std::string ux = "x" + padded(x, w);
        b.add_unit(ux, group_view->arrow(group_view->unit_arrow(0)).key + "@" + ux);
        for (int g = 0; g < group_view->num_arrows(); ++g) {
            const Arrow& ga = group_view->arrow(g);
            b.add_arrow(ga.key + "@" + ux, ux, ux, group_view->arrow(ga.inv).key + "@" + ux, ga.length);
        }
    }
    ViewPtr base = group_view;
    auto product = [base](const FiniteGroupoidView& view, int g, int h) {
        const std::string& a = view.arrow(g).key;
        const std::string& c = view.arrow(h).key;
        auto at = a.rfind('@');
        auto ct = c.rfind('@');
        int bg = base->arrow_id(a.substr(0, at));
        int bh = base->arrow_id(c.substr(0, ct));
        auto r = base->compose(bg, bh);
        return base->arrow(r.id).key + c.substr(ct);
    };
    return b.finish(group_view->descriptor() + " x {" + std::to_string(m) + " points}", product,
                    group_view->truncated());
}

ViewPtr free_group_ball(int rank, int radius) {
    if (rank < 1) throw InputError("free group rank must be >= 1");
    if (radius < 0) throw InputError("radius must be >= 0");
    ViewBuilder b;
    b.add_unit("e*", "e");
    for (const Word& w : ball(rank, radius))
        b.add_arrow(w.text(), "e*", "e*", w.inverse().text(), static_cast<double>(w.length()));
    auto rk = rank;
    auto product = [rk](const FiniteGroupoidView& view, int g, int h) {
        Word a = Word::parse(rk, view.arrow(g).key);
        Word c = Word::parse(rk, view.arrow(h).key);
        return multiply(a, c).text();
    };
    return b.finish("free_ball(F" + std::to_string(rank) + ", R=" + std::to_string(radius) + ")",
                    product, true);
}

ViewPtr units_only(int n) { return product_with_set(cyclic_group(1), n); }

}  // namespace grd
