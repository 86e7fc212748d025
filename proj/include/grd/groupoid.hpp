#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "grd/report.hpp"

namespace grd {

/// Arrow of an enumerated groupoid view. `key` is the canonical payload
/// encoding; arrow identity is structural (equal keys = equal arrows) and
/// ids are positions in the key-sorted arrow list, so every enumeration
/// order is reproducible byte for byte.
struct Arrow {
    std::string key;
    int src = -1;
    int rng = -1;
    int inv = -1;
    double length = 0.0;
    bool is_unit = false;
};

struct ComposeResult {
    enum class Status { Ok, NotComposable, OutOfView };
    Status status = Status::NotComposable;
    int id = -1;
    bool ok() const { return status == Status::Ok; }
};

class FiniteGroupoidView;

/// Payload-level product: canonical key of gamma.eta for a source/range
/// compatible pair. The key may name an arrow outside the view (truncation).
using ProductKeyFn = std::function<std::string(const FiniteGroupoidView&, int, int)>;

class FiniteGroupoidView {
public:
    const std::string& descriptor() const { return descriptor_; }
    bool truncated() const { return truncated_; }

    int num_units() const { return static_cast<int>(units_.size()); }
    int num_arrows() const { return static_cast<int>(arrows_.size()); }
    const std::string& unit_key(int u) const { return units_[static_cast<std::size_t>(u)]; }
    const Arrow& arrow(int a) const { return arrows_[static_cast<std::size_t>(a)]; }

    int unit_index(const std::string& key) const;
    int arrow_id(const std::string& key) const;  // -1 when absent
    int unit_arrow(int unit) const { return unit_arrows_[static_cast<std::size_t>(unit)]; }

    ComposeResult compose(int g, int h) const;
    int inverse(int a) const { return arrows_[static_cast<std::size_t>(a)].inv; }
    double length(int a) const { return arrows_[static_cast<std::size_t>(a)].length; }

    /// Arrows with source x (resp. range x), sorted by arrow id.
    const std::vector<int>& source_fiber(int unit) const { return src_fibers_[static_cast<std::size_t>(unit)]; }
    const std::vector<int>& range_fiber(int unit) const { return rng_fibers_[static_cast<std::size_t>(unit)]; }

private:
    friend class ViewBuilder;
    std::string descriptor_;
    bool truncated_ = false;
    std::vector<std::string> units_;
    std::vector<Arrow> arrows_;
    std::vector<int> unit_arrows_;
    std::unordered_map<std::string, int> unit_by_key_;
    std::unordered_map<std::string, int> arrow_by_key_;
    std::vector<std::vector<int>> src_fibers_;
    std::vector<std::vector<int>> rng_fibers_;
    ProductKeyFn product_key_;
};

using ViewPtr = std::shared_ptr<const FiniteGroupoidView>;

/// Accumulates payloads, then sorts, deduplicates and links everything into
/// an immutable view.
class ViewBuilder {
public:
    void add_unit(const std::string& unit_key, const std::string& unit_arrow_key);
    void add_arrow(const std::string& key, const std::string& src_key, const std::string& rng_key,
                   const std::string& inv_key, double length);
    bool has_arrow(const std::string& key) const { return arrows_.count(key) > 0; }

    ViewPtr finish(std::string descriptor, ProductKeyFn product_key, bool truncated);

private:
    struct Raw {
        std::string src, rng, inv;
        double length;
    };
    std::vector<std::string> unit_order_;
    std::unordered_map<std::string, std::string> units_;  // unit key -> unit arrow key
    std::unordered_map<std::string, Raw> arrows_;
};

using LengthFn = std::function<double(int)>;

/// The length the view was built with.
LengthFn view_length(const ViewPtr& view);

enum class FiberSide { Source, Range };
std::vector<int> fiber(const FiniteGroupoidView& view, const std::string& unit_key, FiberSide side);

struct AxiomCheckOptions {
    std::size_t max_pairs = 2000000;
    std::size_t max_triples = 2000000;
    double tolerance = 0.0;  // lengths are exact doubles here; slack applies to length axioms
};

/// Verifies unit, inverse and associativity laws on all in-view composable
/// pairs/triples (associativity only where both partial products lie in the
/// view), and the length axioms when a length is supplied. Violations are
/// reported, not thrown. Caps subsample deterministically and are recorded
/// in the report budget.
CheckReport check_axioms(const ViewPtr& view, const std::optional<LengthFn>& length = std::nullopt,
                         const AxiomCheckOptions& options = {});

// Built-in constructions. All pass check_axioms with zero violations.

/// Pair groupoid on {1..n}: arrow "i:j" has range i, source j; the length is
/// the discrete metric (0 on units, 1 elsewhere).
ViewPtr pair_groupoid(int n);

/// Cyclic group Z/n as a one-unit groupoid with length min(k, n-k).
ViewPtr cyclic_group(int n);

/// Symmetric group S_n (n <= 5) with word length over adjacent
/// transpositions.
ViewPtr symmetric_group(int n);

/// Group from an explicit table. element_names[0] must be the identity;
/// lengths must satisfy the length axioms (checked).
ViewPtr group_from_table(const std::string& name, const std::vector<std::string>& element_names,
                         const std::vector<std::vector<int>>& product_table,
                         const std::vector<double>& lengths);

/// Product of a one-unit group view with an m-point set: arrows (g, x),
/// composing within each x. Models the trivial action of the group on m
/// points.
ViewPtr product_with_set(const ViewPtr& group_view, int m);

/// Ball of radius R in the free group F_d, as a one-unit truncated view with
/// word length. Products of word length > R are out of view.
ViewPtr free_group_ball(int rank, int radius);

/// n isolated units (the trivial groupoid on an n-point space).
ViewPtr units_only(int n);

}  // namespace grd
