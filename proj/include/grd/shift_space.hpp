#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "grd/common.hpp"

namespace grd {

/// Exact eventually periodic point of a symbolic space: a finite preperiod
/// followed by an infinitely repeated primitive period. The canonical form
/// has minimal preperiod and primitive period, so equality of canonical
/// forms coincides with equality of the represented sequences.
class EvPeriodicPoint {
public:
    EvPeriodicPoint() = default;
    EvPeriodicPoint(std::vector<int> preperiod, std::vector<int> period);

    const std::vector<int>& preperiod() const { return pre_; }
    const std::vector<int>& period() const { return per_; }

    int symbol_at(std::size_t i) const;  // 0-based
    EvPeriodicPoint shifted() const;     // drop the first symbol
    EvPeriodicPoint prepended(int symbol) const;

    /// "1.2|1" = preperiod 1,2 then (1)^inf. Pure periodic points read "|...".
    std::string key() const;
    static EvPeriodicPoint parse(const std::string& key);

    bool operator==(const EvPeriodicPoint& o) const { return pre_ == o.pre_ && per_ == o.per_; }
    bool operator<(const EvPeriodicPoint& o) const;

    static EvPeriodicPoint constant(int symbol) { return EvPeriodicPoint({}, {symbol}); }

private:
    void canonicalize();
    std::vector<int> pre_;
    std::vector<int> per_ = {1};
};

/// A surjective local homeomorphism on an exactly represented space,
/// presented through forward application and complete preimage enumeration.
/// Points are addressed by canonical string keys.
class LocalSystem {
public:
    virtual ~LocalSystem() = default;
    virtual std::string name() const = 0;
    virtual std::string apply(const std::string& point) const = 0;
    virtual std::vector<std::string> preimages(const std::string& point) const = 0;

    /// Depth up to which preimage enumeration is complete, when the model
    /// truncates an infinite family (the finite-map systems). Unset means
    /// exact at every depth.
    virtual std::optional<int> exact_preimage_depth() const { return std::nullopt; }

    /// Default sample of base points, canonical order.
    virtual std::vector<std::string> base_points(int count) const = 0;
};

/// Full d-shift on {1,...,d}^N; the shift map is a d-to-1 covering.
class FullShiftSystem : public LocalSystem {
public:
    explicit FullShiftSystem(int arity);
    int arity() const { return arity_; }
    std::string name() const override;
    std::string apply(const std::string& point) const override;
    std::vector<std::string> preimages(const std::string& point) const override;
    std::vector<std::string> base_points(int count) const override;

private:
    int arity_;
};

/// Finite-map system given by an explicit transition table on labeled
/// states. States listed in `table` with no preimage are model boundaries;
/// enumeration beyond `exact_depth` yields lower bounds only.
class FiniteMapSystem : public LocalSystem {
public:
    FiniteMapSystem(std::string name, std::map<std::string, std::string> table,
                    std::optional<int> exact_depth = std::nullopt);
    std::string name() const override;
    std::string apply(const std::string& point) const override;
    std::vector<std::string> preimages(const std::string& point) const override;
    std::optional<int> exact_preimage_depth() const override { return exact_depth_; }
    std::vector<std::string> base_points(int count) const override;

private:
    std::string name_;
    std::map<std::string, std::string> forward_;
    std::map<std::string, std::vector<std::string>> backward_;
    std::optional<int> exact_depth_;
};

/// The chain system of the polynomially growing non-injective example:
/// T(a) = a, T(b0) = a, T(bn) = b_{n-1}, truncated at b_K.
std::shared_ptr<FiniteMapSystem> make_af_chain_system(int truncation_index);

/// Directed graph for path-space dynamics. Vertices and edges carry string
/// ids; ingestion rejects graphs with sinks (naming the vertex) since the
/// shift on the path space needs every vertex to emit an edge.
struct Graph {
    std::vector<std::string> vertices;
    struct Edge {
        std::string src;
        std::string dst;
        std::string label;
    };
    std::vector<Edge> edges;
};

/// Shift on the infinite path space of a finite graph with no sinks. Path
/// points are eventually periodic edge sequences; symbols index `edges`
/// (1-based, in input order).
class GraphPathSystem : public LocalSystem {
public:
    explicit GraphPathSystem(Graph graph);
    const Graph& graph() const { return graph_; }
    std::string name() const override;
    std::string apply(const std::string& point) const override;
    std::vector<std::string> preimages(const std::string& point) const override;
    std::vector<std::string> base_points(int count) const override;

    bool valid_point(const EvPeriodicPoint& p) const;

private:
    Graph graph_;
    std::map<std::string, int> vertex_index_;
    std::vector<std::vector<int>> out_edges_;  // per vertex, 1-based edge ids
    std::vector<std::vector<int>> in_edges_;
};

/// Forward orbit x, Tx, ..., T^n x together with the full preimage tree:
/// level m holds the deduplicated keys of T^{-m}(x).
struct OrbitAndPreimages {
    std::vector<std::string> forward;
    std::vector<std::vector<std::string>> levels;
    bool exact = true;
};
OrbitAndPreimages iterate_and_preimages(const LocalSystem& system, const std::string& x, int n);

}  // namespace grd
