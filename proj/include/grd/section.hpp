#pragma once

#include <map>
#include <memory>
#include <vector>

#include "grd/bundle.hpp"

namespace grd {

/// Finitely supported section of a concrete Fell bundle: arrows not present
/// are zero. Entries are kept in arrow-id order, so iteration is canonical.
class Section {
public:
    explicit Section(BundlePtr bundle) : bundle_(std::move(bundle)) {}

    const FellBundle& bundle() const { return *bundle_; }
    const BundlePtr& bundle_ptr() const { return bundle_; }

    void set(int arrow, Matrix value);
    void add(int arrow, const Matrix& value);
    Matrix value(int arrow) const;
    const Matrix* find(int arrow) const;
    const std::map<int, Matrix>& entries() const { return entries_; }
    std::vector<int> support() const;
    bool is_zero() const;

    Section& operator*=(cd scalar);
    Section& operator+=(const Section& other);

private:
    BundlePtr bundle_;
    std::map<int, Matrix> entries_;
};

/// Convolution (f*g)(zeta) = sum over factorizations of mult(f, g). Every
/// support pair with matching source/range must compose inside the view;
/// an out-of-view composite raises BudgetError naming the pair.
Section convolve(const Section& f, const Section& g);

/// Involution f*(gamma) = invol of f(gamma^{-1}).
Section involve(const Section& f);

/// Pointwise weighting f . (1+L)^p.
Section weighted(const Section& f, const LengthFn& length, double p);

Section random_section(const BundlePtr& bundle, const std::vector<int>& support_arrows,
                       RngStream& rng);

/// Identity-shaped indicator of a set of arrows.
Section indicator_section(const BundlePtr& bundle, const std::vector<int>& arrows);

/// Pointwise scalar multiplier (M_h f)(gamma) = h(gamma) f(gamma).
Section pointwise_multiply(const std::function<cd(int)>& h, const Section& f);

/// Restriction to a set of arrows (extension by zero elsewhere).
Section restrict_to(const Section& f, const std::function<bool(int)>& keep);

double max_entry_distance(const Section& a, const Section& b);

}  // namespace grd
