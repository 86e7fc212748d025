#include "grd/shift_space.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace grd {

EvPeriodicPoint::EvPeriodicPoint(std::vector<int> preperiod, std::vector<int> period)
    : pre_(std::move(preperiod)), per_(std::move(period)) {
    if (per_.empty()) throw InputError("period must be nonempty");
    for (int s : pre_)
        if (s < 1) throw InputError("symbols are 1-based");
    for (int s : per_)
        if (s < 1) throw InputError("symbols are 1-based");
    canonicalize();
}

void EvPeriodicPoint::canonicalize() {
    // Primitive period: replace P by its shortest root.
    const std::size_t n = per_.size();
    for (std::size_t len = 1; len < n; ++len) {
        if (n % len != 0) continue;
        bool root = true;
        for (std::size_t i = len; i < n && root; ++i) root = per_[i] == per_[i % len];
        if (root) {
            per_.resize(len);
            break;
        }
    }
    // Absorb: u'c (Qc)^inf = u' (cQ)^inf, until the preperiod is minimal.
    while (!pre_.empty() && pre_.back() == per_.back()) {
        pre_.pop_back();
        per_.insert(per_.begin(), per_.back());
        per_.pop_back();
    }
}

int EvPeriodicPoint::symbol_at(std::size_t i) const {
    if (i < pre_.size()) return pre_[i];
    return per_[(i - pre_.size()) % per_.size()];
}

EvPeriodicPoint EvPeriodicPoint::shifted() const {
    if (!pre_.empty())
        return EvPeriodicPoint(std::vector<int>(pre_.begin() + 1, pre_.end()), per_);
    std::vector<int> rotated(per_.begin() + 1, per_.end());
    rotated.push_back(per_.front());
    return EvPeriodicPoint({}, std::move(rotated));
}

EvPeriodicPoint EvPeriodicPoint::prepended(int symbol) const {
    std::vector<int> p = pre_;
    p.insert(p.begin(), symbol);
    return EvPeriodicPoint(std::move(p), per_);
}

std::string EvPeriodicPoint::key() const {
    std::string out;
    for (std::size_t i = 0; i < pre_.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(pre_[i]);
    }
    out += '|';
    for (std::size_t i = 0; i < per_.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(per_[i]);
    }
    return out;
}

static std::vector<int> parse_symbols(const std::string& s) {
    std::vector<int> out;
    std::string tok;
    std::istringstream in(s);
    while (std::getline(in, tok, '.'))
        if (!tok.empty()) out.push_back(std::stoi(tok));
    return out;
}

EvPeriodicPoint EvPeriodicPoint::parse(const std::string& key) {
    auto bar = key.find('|');
    if (bar == std::string::npos) throw InputError("bad point key: " + key);
    return EvPeriodicPoint(parse_symbols(key.substr(0, bar)), parse_symbols(key.substr(bar + 1)));
}

bool EvPeriodicPoint::operator<(const EvPeriodicPoint& o) const {
    return key() < o.key();
}

FullShiftSystem::FullShiftSystem(int arity) : arity_(arity) {
    if (arity < 1) throw InputError("full shift arity must be >= 1");
}

std::string FullShiftSystem::name() const { return "full-shift(" + std::to_string(arity_) + ")"; }

std::string FullShiftSystem::apply(const std::string& point) const {
    return EvPeriodicPoint::parse(point).shifted().key();
}

std::vector<std::string> FullShiftSystem::preimages(const std::string& point) const {
    auto p = EvPeriodicPoint::parse(point);
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(arity_));
    for (int s = 1; s <= arity_; ++s) out.push_back(p.prepended(s).key());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> FullShiftSystem::base_points(int count) const {
    // Fixed points first, then the short periodic orbits.
    std::vector<std::string> out;
    for (int s = 1; s <= arity_ && static_cast<int>(out.size()) < count; ++s)
        out.push_back(EvPeriodicPoint::constant(s).key());
    for (int a = 1; a <= arity_ && static_cast<int>(out.size()) < count; ++a)
        for (int b = a + 1; b <= arity_ && static_cast<int>(out.size()) < count; ++b)
            out.push_back(EvPeriodicPoint({}, {a, b}).key());
    return out;
}

FiniteMapSystem::FiniteMapSystem(std::string name, std::map<std::string, std::string> table,
                                 std::optional<int> exact_depth)
    : name_(std::move(name)), forward_(std::move(table)), exact_depth_(exact_depth) {
    for (const auto& [x, y] : forward_) {
        if (!forward_.count(y)) throw InputError("finite map target outside state set: " + y);
        backward_[y].push_back(x);
    }
    for (auto& [y, pres] : backward_) std::sort(pres.begin(), pres.end());
}

std::string FiniteMapSystem::name() const { return name_; }

std::string FiniteMapSystem::apply(const std::string& point) const {
    auto it = forward_.find(point);
    if (it == forward_.end()) throw InputError("unknown state: " + point);
    return it->second;
}

std::vector<std::string> FiniteMapSystem::preimages(const std::string& point) const {
    if (!forward_.count(point)) throw InputError("unknown state: " + point);
    auto it = backward_.find(point);
    return it == backward_.end() ? std::vector<std::string>{} : it->second;
}

std::vector<std::string> FiniteMapSystem::base_points(int count) const {
    std::vector<std::string> out;
    for (const auto& [x, y] : forward_) {
        if (static_cast<int>(out.size()) >= count) break;
        out.push_back(x);
    }
    return out;
}

std::shared_ptr<FiniteMapSystem> make_af_chain_system(int truncation_index) {
    if (truncation_index < 0) throw InputError("truncation index must be >= 0");
    std::map<std::string, std::string> table;
    table["a"] = "a";
    table["b0"] = "a";
    for (int n = 1; n <= truncation_index; ++n)
        table["b" + std::to_string(n)] = "b" + std::to_string(n - 1);
    return std::make_shared<FiniteMapSystem>("af-chain(K=" + std::to_string(truncation_index) + ")",
                                             std::move(table), truncation_index);
}

GraphPathSystem::GraphPathSystem(Graph graph) : graph_(std::move(graph)) {
    if (graph_.vertices.empty()) throw InputError("graph has no vertices");
    for (std::size_t i = 0; i < graph_.vertices.size(); ++i) {
        if (vertex_index_.count(graph_.vertices[i]))
            throw InputError("duplicate vertex id: " + graph_.vertices[i]);
        vertex_index_[graph_.vertices[i]] = static_cast<int>(i);
    }
    out_edges_.resize(graph_.vertices.size());
    in_edges_.resize(graph_.vertices.size());
    for (std::size_t e = 0; e < graph_.edges.size(); ++e) {
        const auto& edge = graph_.edges[e];
        if (!vertex_index_.count(edge.src) || !vertex_index_.count(edge.dst))
            throw InputError("edge endpoint not a vertex: " + edge.src + "->" + edge.dst);
        out_edges_[static_cast<std::size_t>(vertex_index_[edge.src])].push_back(static_cast<int>(e) + 1);
        in_edges_[static_cast<std::size_t>(vertex_index_[edge.dst])].push_back(static_cast<int>(e) + 1);
    }
    for (std::size_t v = 0; v < graph_.vertices.size(); ++v)
        if (out_edges_[v].empty())
            throw InputError("graph has a sink at vertex '" + graph_.vertices[v] + "'");
}

std::string GraphPathSystem::name() const {
    return "graph-paths(v=" + std::to_string(graph_.vertices.size()) +
           ",e=" + std::to_string(graph_.edges.size()) + ")";
}

bool GraphPathSystem::valid_point(const EvPeriodicPoint& p) const {
    auto edge_ok = [&](int id) { return id >= 1 && id <= static_cast<int>(graph_.edges.size()); };
    auto chain_ok = [&](int first, int second) {
        return graph_.edges[static_cast<std::size_t>(first - 1)].dst ==
               graph_.edges[static_cast<std::size_t>(second - 1)].src;
    };
    std::vector<int> window = p.preperiod();
    window.insert(window.end(), p.period().begin(), p.period().end());
    window.push_back(p.period().front());  // wrap
    for (int id : window)
        if (!edge_ok(id)) return false;
    for (std::size_t i = 0; i + 1 < window.size(); ++i)
        if (!chain_ok(window[i], window[i + 1])) return false;
    return true;
}

std::string GraphPathSystem::apply(const std::string& point) const {
    auto p = EvPeriodicPoint::parse(point);
    if (!valid_point(p)) throw InputError("not a path of this graph: " + point);
    return p.shifted().key();
}

std::vector<std::string> GraphPathSystem::preimages(const std::string& point) const {
    auto p = EvPeriodicPoint::parse(point);
    if (!valid_point(p)) throw InputError("not a path of this graph: " + point);
    const auto& first = graph_.edges[static_cast<std::size_t>(p.symbol_at(0) - 1)];
    std::vector<std::string> out;
    for (int e : in_edges_[static_cast<std::size_t>(vertex_index_.at(first.src))])
        out.push_back(p.prepended(e).key());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> GraphPathSystem::base_points(int count) const {
    // From each vertex, walk the least outgoing edge until an edge repeats;
    // the tail cycle plus the approach is an eventually periodic path.
    std::set<std::string> seen;
    std::vector<std::string> out;
    for (std::size_t v0 = 0; v0 < graph_.vertices.size(); ++v0) {
        if (static_cast<int>(out.size()) >= count) break;
        std::vector<int> walk;
        std::map<int, std::size_t> first_pos;
        int v = static_cast<int>(v0);
        while (true) {
            int e = *std::min_element(out_edges_[static_cast<std::size_t>(v)].begin(),
                                      out_edges_[static_cast<std::size_t>(v)].end());
            if (first_pos.count(e)) {
                std::size_t start = first_pos[e];
                std::vector<int> pre(walk.begin(), walk.begin() + static_cast<long>(start));
                std::vector<int> per(walk.begin() + static_cast<long>(start), walk.end());
                EvPeriodicPoint p(std::move(pre), std::move(per));
                if (seen.insert(p.key()).second) out.push_back(p.key());
                break;
            }
            first_pos[e] = walk.size();
            walk.push_back(e);
            v = vertex_index_.at(graph_.edges[static_cast<std::size_t>(e - 1)].dst);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

OrbitAndPreimages iterate_and_preimages(const LocalSystem& system, const std::string& x, int n) {
    if (n < 0) throw InputError("depth must be >= 0");
    OrbitAndPreimages out;
    out.forward.push_back(x);
    for (int i = 0; i < n; ++i) out.forward.push_back(system.apply(out.forward.back()));
    out.levels.push_back({x});
    for (int m = 1; m <= n; ++m) {
        std::set<std::string> level;
        for (const auto& p : out.levels.back())
            for (const auto& q : system.preimages(p)) level.insert(q);
        out.levels.emplace_back(level.begin(), level.end());
    }
    if (auto k = system.exact_preimage_depth(); k && n > *k) out.exact = false;
    return out;
}

}  // namespace grd
