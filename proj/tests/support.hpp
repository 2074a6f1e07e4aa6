#pragma once
// shared helpers: seeded generators and small oracles used across suites

#include "catalog.hpp"
#include "cohomology.hpp"

#include <doctest.h>

#include <random>

namespace doctest {
template <> struct StringMaker<ca::Element> {
    static String convert(const ca::Element& e) { return e.str().c_str(); }
};
template <> struct StringMaker<ca::CharPoly> {
    static String convert(const ca::CharPoly& p) { return p.str().c_str(); }
};
template <> struct StringMaker<ca::Scalar> {
    static String convert(const ca::Scalar& s) { return s.str().c_str(); }
};
} // namespace doctest

namespace tst {

using namespace ca;

inline std::shared_ptr<Rothstein> rothstein(const std::string& name)
{
    auto R = std::make_shared<Rothstein>(build_rothstein(catalog(name)));
    build_theta(*R);
    return R;
}

inline std::shared_ptr<Rothstein> rothstein(const CourantSpec& s)
{
    auto R = std::make_shared<Rothstein>(build_rothstein(s));
    build_theta(*R);
    return R;
}

inline Element gen(const TablePtr& t, Family f, int i) { return Element::gen(t, t->find(f, i)); }

// random rationals with small numerators and denominators
struct Gen {
    std::mt19937_64 rng;
    explicit Gen(uint64_t seed) : rng(seed) {}
    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
    Scalar rational(int span = 5)
    {
        int p = uniform(-span, span), q = uniform(1, span);
        return Scalar::frac(p, q);
    }
    Scalar nonzero(int span = 5)
    {
        Scalar s;
        while (s.is_zero()) s = rational(span);
        return s;
    }
    // rational function in the symbol with degree <= 2 on top and bottom
    Scalar ratfunc()
    {
        Poly n, d;
        for (int k = 0; k < 3; ++k) n = n + Poly::monomial(k, rational().q());
        while (d.zero())
            for (int k = 0; k < 3; ++k) d = d + Poly::monomial(k, rational().q());
        return Scalar::ratfunc(n, d);
    }
    Weight weight(int d, int r = 2)
    {
        Weight w(d);
        for (auto& x : w) x = uniform(-r, r);
        return w;
    }
    // sum of random monomials in the given generators
    Element element(const TablePtr& t, const std::vector<int>& gens, int maxdeg, int terms, int wr = 1)
    {
        Element e(t);
        for (int k = 0; k < terms; ++k) {
            Element m = Element::character(t, weight(t->d, wr), nonzero());
            int deg = 0;
            int len = uniform(0, 4);
            for (int j = 0; j < len; ++j) {
                int g = gens[uniform(0, int(gens.size()) - 1)];
                if (deg + t->gens[g].degree > maxdeg) continue;
                deg += t->gens[g].degree;
                m = m * Element::gen(t, g);
            }
            e += m;
        }
        return e;
    }
};

inline std::vector<int> all_gens(const TablePtr& t)
{
    std::vector<int> v(t->size());
    for (int i = 0; i < t->size(); ++i) v[i] = i;
    return v;
}

// Koszul sign of sorting a word by adjacent swaps; 0 if an odd letter repeats
inline int sort_sign(std::vector<int> word, const std::vector<int>& degree)
{
    int sign = 1;
    for (size_t i = 0; i < word.size(); ++i)
        for (size_t j = 0; j + 1 < word.size() - i; ++j)
            if (word[j] > word[j + 1]) {
                if ((degree[word[j]] & 1) && (degree[word[j + 1]] & 1)) sign = -sign;
                std::swap(word[j], word[j + 1]);
            }
    for (size_t j = 0; j + 1 < word.size(); ++j)
        if (word[j] == word[j + 1] && (degree[word[j]] & 1)) return 0;
    return sign;
}

} // namespace tst
