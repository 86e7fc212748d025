#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grd/common.hpp"

namespace grd {

/// Reduced word in the free group F_d. Letters are signed generator indices:
/// +i is the generator a_i, -i its inverse, i in 1..rank. The empty word is
/// the identity. Construction reduces and rejects out-of-range letters.
class Word {
public:
    Word() : rank_(0) {}
    explicit Word(int rank) : rank_(rank) {}
    Word(int rank, std::vector<int> letters);

    static Word generator(int rank, int i, int sign = +1);

    int rank() const { return rank_; }
    const std::vector<int>& letters() const { return letters_; }
    int length() const { return static_cast<int>(letters_.size()); }
    bool empty() const { return letters_.empty(); }

    Word inverse() const;

    /// Sum of letter signs; the image of the word under a_i -> +1.
    int exponent_sum() const;

    bool operator==(const Word& o) const { return rank_ == o.rank_ && letters_ == o.letters_; }
    bool operator<(const Word& o) const { return letters_ < o.letters_; }

    /// Canonical text form: "a1 A2" (lowercase = generator, uppercase =
    /// inverse), "e" for the identity.
    std::string text() const;
    static Word parse(int rank, const std::string& text);

private:
    int rank_;
    std::vector<int> letters_;
};

/// Reduced product. Ranks must agree.
Word multiply(const Word& a, const Word& b);

/// The homomorphism determined by a_i -> generator_value, with
/// generator_value in {+1,-1}. Which sign matches the shift cocycle is not
/// assumed: the Steinberg checks determine it by exhaustive verification
/// and record it in reports.
long long exponent_hom(const Word& w, int generator_value);

/// Splits w = u v^{-1} with u, v positive words. Succeeds iff every positive
/// letter of w precedes every negative letter; words with a subword
/// a_j^{-1} a_i have no such form (their partial-action domain is empty).
struct UvNormalForm {
    Word u;
    Word v;
};
std::optional<UvNormalForm> uv_normal_form(const Word& w);

/// All reduced words of length exactly n (lexicographic letter order).
std::vector<Word> sphere(int rank, int n);

/// All reduced words of length <= radius, sorted by (length, letters).
std::vector<Word> ball(int rank, int radius);

}  // namespace grd
