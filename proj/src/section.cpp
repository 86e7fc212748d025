#include "grd/section.hpp"

#include "grd/common.hpp"

namespace grd {

void Section::set(int arrow, Matrix value) {
    auto [r, c] = bundle_->shape(arrow);
    if (value.rows() != r || value.cols() != c)
        throw InputError("fiber value shape mismatch at arrow " + bundle_->view().arrow(arrow).key);
    if (value.isZero(0.0))
        entries_.erase(arrow);
    else
        entries_[arrow] = std::move(value);
}

void Section::add(int arrow, const Matrix& value) {
    auto it = entries_.find(arrow);
    if (it == entries_.end()) {
        set(arrow, value);
    } else {
        it->second += value;
        if (it->second.isZero(0.0)) entries_.erase(it);
    }
}

Matrix Section::value(int arrow) const {
    auto it = entries_.find(arrow);
    return it == entries_.end() ? bundle_->zero(arrow) : it->second;
}

const Matrix* Section::find(int arrow) const {
    auto it = entries_.find(arrow);
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<int> Section::support() const {
    std::vector<int> out;
    out.reserve(entries_.size());
    for (const auto& [a, _] : entries_) out.push_back(a);
    return out;
}

bool Section::is_zero() const { return entries_.empty(); }

Section& Section::operator*=(cd scalar) {
    if (scalar == cd(0.0)) {
        entries_.clear();
        return *this;
    }
    for (auto& [_, v] : entries_) v *= scalar;
    return *this;
}

Section& Section::operator+=(const Section& other) {
    for (const auto& [a, v] : other.entries_) add(a, v);
    return *this;
}

Section convolve(const Section& f, const Section& g) {
    if (f.bundle_ptr().get() != g.bundle_ptr().get())
        throw InputError("convolution needs sections of the same bundle");
    const FellBundle& bundle = f.bundle();
    const FiniteGroupoidView& view = bundle.view();
    Section out(f.bundle_ptr());
    for (const auto& [a, va] : f.entries()) {
        for (const auto& [b, vb] : g.entries()) {
            const Arrow& aa = view.arrow(a);
            const Arrow& ab = view.arrow(b);
            if (aa.src != ab.rng) continue;
            auto c = view.compose(a, b);
            if (c.status == ComposeResult::Status::OutOfView)
                throw BudgetError("convolution composite escapes the view: (" + aa.key + ") . (" +
                                      ab.key + ")",
                                  aa.key, ab.key);
            out.add(c.id, bundle.mult(a, b, va, vb));
        }
    }
    return out;
}

Section involve(const Section& f) {
    const FellBundle& bundle = f.bundle();
    const FiniteGroupoidView& view = bundle.view();
    Section out(f.bundle_ptr());
    for (const auto& [a, va] : f.entries()) out.set(view.inverse(a), bundle.invol(a, va));
    return out;
}

Section weighted(const Section& f, const LengthFn& length, double p) {
    Section out(f.bundle_ptr());
    for (const auto& [a, va] : f.entries()) out.set(a, std::pow(1.0 + length(a), p) * va);
    return out;
}

Section random_section(const BundlePtr& bundle, const std::vector<int>& support_arrows,
                       RngStream& rng) {
    Section out(bundle);
    for (int a : support_arrows) out.set(a, bundle->random_element(a, rng));
    return out;
}

Section indicator_section(const BundlePtr& bundle, const std::vector<int>& arrows) {
    Section out(bundle);
    for (int a : arrows) out.set(a, bundle->identity_like(a));
    return out;
}

Section pointwise_multiply(const std::function<cd(int)>& h, const Section& f) {
    Section out(f.bundle_ptr());
    for (const auto& [a, va] : f.entries()) out.set(a, h(a) * va);
    return out;
}

Section restrict_to(const Section& f, const std::function<bool(int)>& keep) {
    Section out(f.bundle_ptr());
    for (const auto& [a, va] : f.entries())
        if (keep(a)) out.set(a, va);
    return out;
}

double max_entry_distance(const Section& a, const Section& b) {
    double d = 0.0;
    for (const auto& [id, v] : a.entries()) d = std::max(d, (v - b.value(id)).cwiseAbs().maxCoeff());
    for (const auto& [id, v] : b.entries()) d = std::max(d, (v - a.value(id)).cwiseAbs().maxCoeff());
    return d;
}

}  // namespace grd
