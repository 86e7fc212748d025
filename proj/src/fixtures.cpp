#include "grd/fixtures.hpp"

#include <json.hpp>

#include "grd/common.hpp"

namespace grd {

ViewPtr make_system_view(const std::string& system, int n) {
    if (system == "pair") return pair_groupoid(n);
    if (system == "cyclic") return cyclic_group(n);
    if (system == "symmetric") return symmetric_group(n);
    if (system == "product") return product_with_set(cyclic_group(2), n);
    if (system == "free-ball") return free_group_ball(2, n);
    if (system == "z-ball") return free_group_ball(1, n);
    throw InputError("unknown system: " + system);
}

BundlePtr make_bundle(const ViewPtr& view, const std::string& kind, int dim) {
    if (kind == "trivial") return std::make_shared<TrivialBundle>(view, dim);
    if (kind == "twisted") {
        // Bicharacter cocycle on Z/n: sigma(j, k) = omega^{jk} with omega a
        // primitive n-th root of unity. For n = 2 this is sigma(g, g) = -1.
        int n = view->num_arrows();
        if (view->num_units() != 1) throw InputError("twisted fixtures need a cyclic group view");
        auto exponent = [](const FiniteGroupoidView& v, int a) {
            const std::string& key = v.arrow(a).key;
            if (key.size() < 3 || key[0] != 'g' || key[1] != ':')
                throw InputError("twisted fixtures need a cyclic group view");
            return std::stoi(key.substr(2));
        };
        auto sigma = [n, exponent](const FiniteGroupoidView& v, int g, int h) {
            long long e = static_cast<long long>(exponent(v, g)) * exponent(v, h) % n;
            if ((2 * e) % n == 0) return cd((2 * e / n) % 2 == 0 ? 1.0 : -1.0);
            double angle = 2.0 * 3.14159265358979323846 * static_cast<double>(e) / n;
            return cd(std::cos(angle), std::sin(angle));
        };
        return std::make_shared<TwistedLineBundle>(view, sigma);
    }
    if (kind == "action") {
        // alpha_g = Ad(P^k) with P the cyclic shift on C^dim; cyclic group
        // views name their elements "g:<k>".
        if (view->num_units() != 1) throw InputError("action bundles need a one-unit view");
        Matrix p = Matrix::Zero(dim, dim);
        for (int i = 0; i < dim; ++i) p((i + 1) % dim, i) = 1.0;
        std::vector<Matrix> us;
        for (int g = 0; g < view->num_arrows(); ++g) {
            const std::string& key = view->arrow(g).key;
            if (key.size() < 3 || key[0] != 'g' || key[1] != ':')
                throw InputError("action bundle expects a cyclic group view");
            int exponent = std::stoi(key.substr(2));
            Matrix u = Matrix::Identity(dim, dim);
            for (int e = 0; e < exponent % dim; ++e) u = p * u;
            us.push_back(std::move(u));
        }
        return std::make_shared<ActionBundle>(view, dim, std::move(us));
    }
    throw InputError("unknown bundle kind: " + kind);
}

BundlePtr make_twisted_z2() { return make_bundle(cyclic_group(2), "twisted", 1); }

BundlePtr make_action_z2_m2() {
    auto z2 = cyclic_group(2);
    Matrix swap(2, 2);
    swap << 0, 1, 1, 0;
    std::vector<Matrix> us(2);
    us[static_cast<std::size_t>(z2->unit_arrow(0))] = Matrix::Identity(2, 2);
    us[static_cast<std::size_t>(1 - z2->unit_arrow(0))] = swap;
    return std::make_shared<ActionBundle>(z2, 2, std::move(us));
}

std::shared_ptr<const LocalSystem> make_local_system(const std::string& kind, int arity) {
    if (kind == "full-shift") return std::make_shared<FullShiftSystem>(arity);
    if (kind == "af") return make_af_chain_system(32);
    throw InputError("unknown local system: " + kind);
}

Graph loop_graph(int loops) {
    Graph g;
    g.vertices = {"v"};
    for (int i = 0; i < loops; ++i) g.edges.push_back({"v", "v", "loop" + std::to_string(i)});
    return g;
}

Graph parse_graph_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed graph JSON: ") + e.what());
    }
    Graph g;
    if (!j.contains("vertices") || !j.contains("edges"))
        throw InputError("graph JSON needs 'vertices' and 'edges'");
    for (const auto& v : j["vertices"]) g.vertices.push_back(v.get<std::string>());
    for (const auto& e : j["edges"]) {
        Graph::Edge edge;
        edge.src = e.at("src").get<std::string>();
        edge.dst = e.at("dst").get<std::string>();
        edge.label = e.value("label", edge.src + "->" + edge.dst);
        g.edges.push_back(std::move(edge));
    }
    return g;
}

}  // namespace grd
