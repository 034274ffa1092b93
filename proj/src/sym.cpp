#include "polarlab/sym.hpp"

#include <algorithm>
#include <functional>

namespace polarlab {

int sort_with_sign(Word& w, const std::vector<int>& degrees, std::uint32_t p)
{
    int sign = 1;
    // insertion sort; counts transpositions of odd letters
    for (std::size_t i = 1; i < w.size(); ++i) {
        for (std::size_t k = i; k > 0 && w[k - 1] > w[k]; --k) {
            if (degrees[w[k - 1]] % 2 != 0 && degrees[w[k]] % 2 != 0)
                sign = -sign;
            std::swap(w[k - 1], w[k]);
        }
    }
    if (p > 2)
        for (std::size_t i = 1; i < w.size(); ++i)
            if (w[i] == w[i - 1] && degrees[w[i]] % 2 != 0)
                return 0;
    return sign;
}

int multiply_words(const Word& a, const Word& b, const std::vector<int>& degrees, std::uint32_t p, Word& out)
{
    out = a;
    out.insert(out.end(), b.begin(), b.end());
    return sort_with_sign(out, degrees, p);
}

int word_degree(const Word& w, const std::vector<int>& degrees)
{
    int d = 0;
    for (auto l : w)
        d += degrees[l];
    return d;
}

std::vector<Word> enumerate_words(const std::vector<int>& degrees, std::uint32_t p, int max_degree,
                                  unsigned zero_bound, const std::vector<bool>& use)
{
    std::vector<Word> out;
    Word cur;
    const auto n = static_cast<std::uint32_t>(degrees.size());
    std::function<void(std::uint32_t, int, unsigned)> rec = [&](std::uint32_t next, int deg, unsigned zeros) {
        out.push_back(cur);
        for (std::uint32_t l = next; l < n; ++l) {
            if (!use.empty() && !use[l])
                continue;
            const int d = deg + degrees[l];
            if (d > max_degree)
                continue;
            if (degrees[l] == 0 && zeros >= zero_bound)
                continue;
            const bool exterior = p > 2 && degrees[l] % 2 != 0;
            cur.push_back(l);
            rec(exterior ? l + 1 : l, d, zeros + (degrees[l] == 0 ? 1 : 0));
            cur.pop_back();
        }
    };
    rec(0, 0, 0);
    std::stable_sort(out.begin(), out.end(), [&](const Word& a, const Word& b) {
        const int da = word_degree(a, degrees), db = word_degree(b, degrees);
        if (da != db)
            return da < db;
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    });
    return out;
}

}  // namespace polarlab
