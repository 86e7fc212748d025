#include <doctest.h>

#include "grd/common.hpp"
#include "grd/words.hpp"

using namespace grd;

namespace {

// Independent reduction oracle: repeated full scans for cancelling pairs,
// no stack tricks.
std::vector<int> brute_force_reduce(std::vector<int> letters) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < letters.size(); ++i) {
            if (letters[i] == -letters[i + 1]) {
                letters.erase(letters.begin() + static_cast<long>(i),
                              letters.begin() + static_cast<long>(i) + 2);
                changed = true;
                break;
            }
        }
    }
    return letters;
}

Word random_word(int rank, int len, RngStream& rng) {
    std::vector<int> ls;
    for (int i = 0; i < len; ++i) {
        int g = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(rank)));
        ls.push_back(rng.uniform() < 0.5 ? g : -g);
    }
    return Word(rank, ls);
}

Word random_positive_word(int rank, int len, RngStream& rng) {
    std::vector<int> ls;
    for (int i = 0; i < len; ++i)
        ls.push_back(1 + static_cast<int>(rng.index(static_cast<std::size_t>(rank))));
    return Word(rank, ls);
}

}  // namespace

TEST_SUITE("words") {

TEST_CASE("multiply reduces exactly") {
    Word a1 = Word::generator(3, 1);
    Word a2 = Word::generator(3, 2);
    // a1 . (a2 a2^-1) = a1
    Word cancel(3, {2, -2});
    CHECK(cancel.empty());
    CHECK(multiply(a1, cancel) == a1);
    // (a1 a2)(a2^-1 a1) = a1 a1, hand-reduced and against the oracle
    Word left(3, {1, 2});
    Word right(3, {-2, 1});
    Word prod = multiply(left, right);
    CHECK(prod.letters() == std::vector<int>{1, 1});
    std::vector<int> cat{1, 2, -2, 1};
    CHECK(prod.letters() == brute_force_reduce(cat));
    // w w^-1 = e
    RngStream rng(11);
    for (int i = 0; i < 50; ++i) {
        Word w = random_word(3, 1 + static_cast<int>(rng.index(8)), rng);
        CHECK(multiply(w, w.inverse()).empty());
    }
}

TEST_CASE("multiply agrees with the brute-force cancellation oracle") {
    RngStream rng(7);
    for (int i = 0; i < 300; ++i) {
        Word a = random_word(2, static_cast<int>(rng.index(9)), rng);
        Word b = random_word(2, static_cast<int>(rng.index(9)), rng);
        std::vector<int> cat = a.letters();
        cat.insert(cat.end(), b.letters().begin(), b.letters().end());
        CHECK(multiply(a, b).letters() == brute_force_reduce(cat));
    }
}

TEST_CASE("products stay reduced and word length is subadditive") {
    RngStream rng(13);
    for (int i = 0; i < 200; ++i) {
        Word a = random_word(3, static_cast<int>(rng.index(10)), rng);
        Word b = random_word(3, static_cast<int>(rng.index(10)), rng);
        Word p = multiply(a, b);
        for (std::size_t j = 0; j + 1 < p.letters().size(); ++j)
            CHECK(p.letters()[j] != -p.letters()[j + 1]);
        CHECK(p.length() <= a.length() + b.length());
        CHECK(p.inverse().length() == p.length());
    }
}

TEST_CASE("exponent homomorphism") {
    // The convention mapping each generator to -1.
    CHECK(exponent_hom(Word::generator(2, 1), -1) == -1);
    CHECK(exponent_hom(Word(2, {1, -2}), -1) == 0);
    // d=3, a1 a2 a3: exponent-sum oracle gives 3, so image is -3.
    Word w(3, {1, 2, 3});
    long long sum = 0;
    for (int l : w.letters()) sum += l > 0 ? 1 : -1;
    CHECK(sum == 3);
    CHECK(exponent_hom(w, -1) == -3);
    CHECK(exponent_hom(w, +1) == 3);
    RngStream rng(5);
    for (int i = 0; i < 100; ++i) {
        Word a = random_word(2, static_cast<int>(rng.index(7)), rng);
        Word b = random_word(2, static_cast<int>(rng.index(7)), rng);
        for (int s : {+1, -1})
            CHECK(exponent_hom(multiply(a, b), s) == exponent_hom(a, s) + exponent_hom(b, s));
    }
    CHECK_THROWS_AS(exponent_hom(w, 2), InputError);
}

TEST_CASE("positive normal form w = u v^-1") {
    auto nf = uv_normal_form(Word(3, {1, 2, -3}));
    REQUIRE(nf.has_value());
    CHECK(nf->u.letters() == std::vector<int>{1, 2});
    CHECK(nf->v.letters() == std::vector<int>{3});
    // a1^-1 a2 has a negative letter before a positive one: no normal form.
    CHECK_FALSE(uv_normal_form(Word(2, {-1, 2})).has_value());
    auto empty_nf = uv_normal_form(Word(2));
    REQUIRE(empty_nf.has_value());
    CHECK(empty_nf->u.empty());
    CHECK(empty_nf->v.empty());
}

TEST_CASE("normal form recovers positive pairs") {
    RngStream rng(23);
    for (int i = 0; i < 200; ++i) {
        Word u = random_positive_word(2, static_cast<int>(rng.index(6)), rng);
        Word v = random_positive_word(2, static_cast<int>(rng.index(6)), rng);
        Word w = multiply(u, v.inverse());
        if (w.length() != u.length() + v.length()) continue;  // common last letter cancelled
        auto nf = uv_normal_form(w);
        REQUIRE(nf.has_value());
        CHECK(nf->u == u);
        CHECK(nf->v == v);
    }
}

TEST_CASE("text round trip") {
    Word w(2, {1, -2, 1});
    CHECK(w.text() == "a1 A2 a1");
    CHECK(Word::parse(2, w.text()) == w);
    CHECK(Word(2).text() == "e");
    CHECK(Word::parse(2, "e").empty());
    CHECK_THROWS_AS(Word(2, {3}), InputError);
    CHECK_THROWS_AS(multiply(Word(2), Word(3)), InputError);
}

TEST_CASE("spheres and balls") {
    CHECK(sphere(2, 0).size() == 1);
    CHECK(sphere(2, 1).size() == 4);
    CHECK(sphere(2, 2).size() == 12);
    CHECK(sphere(2, 3).size() == 36);
    CHECK(ball(2, 3).size() == 53);
    CHECK(ball(1, 4).size() == 9);  // Z ball: {-4..4}
}

}  // TEST_SUITE
