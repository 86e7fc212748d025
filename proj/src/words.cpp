#include "grd/words.hpp"

#include <algorithm>
#include <sstream>

namespace grd {

Word::Word(int rank, std::vector<int> letters) : rank_(rank) {
    letters_.reserve(letters.size());
    for (int l : letters) {
        int idx = l > 0 ? l : -l;
        if (l == 0 || idx > rank) throw InputError("word letter out of range: " + std::to_string(l));
        if (!letters_.empty() && letters_.back() == -l)
            letters_.pop_back();
        else
            letters_.push_back(l);
    }
}

Word Word::generator(int rank, int i, int sign) {
    if (i < 1 || i > rank) throw InputError("generator index out of range");
    return Word(rank, {sign >= 0 ? i : -i});
}

Word Word::inverse() const {
    std::vector<int> rev(letters_.rbegin(), letters_.rend());
    for (int& l : rev) l = -l;
    Word w(rank_);
    w.letters_ = std::move(rev);  // reversal of a reduced word is reduced
    return w;
}

int Word::exponent_sum() const {
    int s = 0;
    for (int l : letters_) s += (l > 0) ? 1 : -1;
    return s;
}

std::string Word::text() const {
    if (letters_.empty()) return "e";
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) out += ' ';
        int l = letters_[i];
        out += (l > 0 ? 'a' : 'A');
        out += std::to_string(l > 0 ? l : -l);
    }
    return out;
}

Word Word::parse(int rank, const std::string& text) {
    std::vector<int> letters;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok == "e") continue;
        if (tok.size() < 2 || (tok[0] != 'a' && tok[0] != 'A'))
            throw InputError("bad word token: " + tok);
        int idx = std::stoi(tok.substr(1));
        letters.push_back(tok[0] == 'a' ? idx : -idx);
    }
    return Word(rank, std::move(letters));
}

Word multiply(const Word& a, const Word& b) {
    if (a.rank() != b.rank()) throw InputError("word rank mismatch");
    std::vector<int> cat = a.letters();
    cat.insert(cat.end(), b.letters().begin(), b.letters().end());
    return Word(a.rank(), std::move(cat));
}

long long exponent_hom(const Word& w, int generator_value) {
    if (generator_value != 1 && generator_value != -1)
        throw InputError("generator_value must be +1 or -1");
    return static_cast<long long>(generator_value) * w.exponent_sum();
}

std::optional<UvNormalForm> uv_normal_form(const Word& w) {
    const auto& ls = w.letters();
    std::size_t split = 0;
    while (split < ls.size() && ls[split] > 0) ++split;
    for (std::size_t i = split; i < ls.size(); ++i)
        if (ls[i] > 0) return std::nullopt;  // a negative letter precedes a positive one
    Word u(w.rank(), std::vector<int>(ls.begin(), ls.begin() + static_cast<long>(split)));
    std::vector<int> neg(ls.begin() + static_cast<long>(split), ls.end());
    std::reverse(neg.begin(), neg.end());
    for (int& l : neg) l = -l;
    Word v(w.rank(), std::move(neg));
    return UvNormalForm{std::move(u), std::move(v)};
}

std::vector<Word> sphere(int rank, int n) {
    std::vector<Word> cur{Word(rank)};
    for (int step = 0; step < n; ++step) {
        std::vector<Word> next;
        next.reserve(cur.size() * 2u * static_cast<std::size_t>(rank));
        for (const Word& w : cur) {
            for (int i = 1; i <= rank; ++i) {
                for (int sign : {+1, -1}) {
                    int letter = sign * i;
                    if (!w.letters().empty() && w.letters().back() == -letter) continue;
                    std::vector<int> ls = w.letters();
                    ls.push_back(letter);
                    Word ext(rank);
                    ext = Word(rank, std::move(ls));
                    next.push_back(std::move(ext));
                }
            }
        }
        cur = std::move(next);
    }
    std::sort(cur.begin(), cur.end());
    return cur;
}

std::vector<Word> ball(int rank, int radius) {
    std::vector<Word> out;
    for (int n = 0; n <= radius; ++n) {
        auto s = sphere(rank, n);
        out.insert(out.end(), s.begin(), s.end());
    }
    return out;
}

}  // namespace grd
