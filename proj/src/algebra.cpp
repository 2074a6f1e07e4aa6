#include "algebra.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ca {

const char* family_name(Family f)
{
    switch (f) {
    case Family::Fdual: return "Fdual";
    case Family::Gfiber: return "Gfiber";
    case Family::Ffiber: return "Ffiber";
    case Family::PmomF: return "Pmom-F";
    case Family::PmomB: return "Pmom-B";
    case Family::Bdual2: return "Bdual2";
    }
    return "?";
}

int GeneratorTable::find(Family f, int idx) const
{
    for (int i = 0; i < size(); ++i)
        if (gens[i].fam == f && gens[i].index == idx) return i;
    return -1;
}

int GeneratorTable::count(Family f) const
{
    int n = 0;
    for (auto& g : gens) n += g.fam == f;
    return n;
}

TablePtr make_table(int d, const std::vector<std::pair<Family, int>>& fams,
                    const std::string& symbol)
{
    static const char* stem[] = {"xi", "r", "x", "pF", "pB", "b"};
    auto t = std::make_shared<GeneratorTable>();
    t->d = d;
    t->symbol = symbol;
    auto sorted = fams;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](auto& a, auto& b) { return int(a.first) < int(b.first); });
    for (auto& [f, n] : sorted) {
        int deg = (f == Family::Fdual || f == Family::Gfiber || f == Family::Ffiber) ? 1 : 2;
        for (int i = 0; i < n; ++i)
            t->gens.push_back({stem[int(f)] + std::to_string(i + 1), f, deg, i});
    }
    if (t->gens.size() > 60) throw std::invalid_argument("too many generators");
    return t;
}

Weight key_weight(const GeneratorTable& t, const Key& k)
{
    return Weight(k.begin(), k.begin() + t.d);
}

int key_degree(const GeneratorTable& t, const Key& k)
{
    int s = 0;
    for (int i = 0; i < t.size(); ++i) s += k[t.d + i] * t.gens[i].degree;
    return s;
}

int key_family_count(const GeneratorTable& t, const Key& k, Family f)
{
    int s = 0;
    for (int i = 0; i < t.size(); ++i)
        if (t.gens[i].fam == f) s += k[t.d + i];
    return s;
}

Key make_key(const GeneratorTable& t, const Weight& w)
{
    Key k(t.d + t.size(), 0);
    for (int i = 0; i < t.d; ++i) k[i] = int16_t(w[i]);
    return k;
}

int key_mul(const GeneratorTable& t, const Key& a, const Key& b, Key& out)
{
    const int d = t.d, n = t.size();
    out.resize(a.size());
    for (int i = 0; i < d; ++i) out[i] = int16_t(a[i] + b[i]);
    int parity = 0, odd_after = 0;
    // walk from the top so odd_after counts odd generators of a above j
    for (int j = n - 1; j >= 0; --j) {
        int ea = a[d + j], eb = b[d + j];
        if (t.odd(j)) {
            if (ea && eb) return 0;
            if (eb) parity += odd_after;
            if (ea) ++odd_after;
        }
        out[d + j] = int16_t(ea + eb);
    }
    return (parity & 1) ? -1 : 1;
}

std::string key_str(const GeneratorTable& t, const Key& k)
{
    std::string s;
    bool w0 = true;
    for (int i = 0; i < t.d; ++i) w0 &= k[i] == 0;
    if (!w0) {
        s = "e(";
        for (int i = 0; i < t.d; ++i) s += (i ? "," : "") + std::to_string(k[i]);
        s += ")";
    }
    for (int i = 0; i < t.size(); ++i) {
        int e = k[t.d + i];
        if (!e) continue;
        if (!s.empty()) s += "*";
        s += t.gens[i].name;
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
}

Element Element::scalar(TablePtr t, const Scalar& c)
{
    Element e(t);
    e.add(make_key(*t, Weight(t->d, 0)), c);
    return e;
}

Element Element::gen(TablePtr t, int i, const Scalar& c)
{
    Element e(t);
    Key k = make_key(*t, Weight(t->d, 0));
    k[t->d + i] = 1;
    e.add(k, c);
    return e;
}

Element Element::character(TablePtr t, const Weight& w, const Scalar& c)
{
    Element e(t);
    e.add(make_key(*t, w), c);
    return e;
}

void Element::add(const Key& k, const Scalar& c)
{
    if (c.is_zero()) return;
    auto it = terms.find(k);
    if (it == terms.end()) { terms.emplace(k, c); return; }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
}

static void check_same(const Element& a, const Element& b)
{
    if (a.tab && b.tab && a.tab != b.tab && a.tab->gens.size() != b.tab->gens.size())
        throw std::invalid_argument("mismatched algebras");
}

Element& Element::operator+=(const Element& o)
{
    check_same(*this, o);
    if (!tab) tab = o.tab;
    for (auto& [k, c] : o.terms) add(k, c);
    return *this;
}

Element& Element::operator-=(const Element& o)
{
    check_same(*this, o);
    if (!tab) tab = o.tab;
    for (auto& [k, c] : o.terms) add(k, -c);
    return *this;
}

Element Element::operator-() const { return scaled(-1); }

Element Element::scaled(const Scalar& c) const
{
    Element r(tab);
    if (c.is_zero()) return r;
    for (auto& [k, v] : terms) r.terms.emplace(k, v * c);
    return r;
}

bool Element::operator==(const Element& o) const { return terms == o.terms; }

int Element::degree() const
{
    int d = -1;
    for (auto& [k, c] : terms) {
        int e = key_degree(*tab, k);
        if (d >= 0 && e != d) return -1;
        d = e;
    }
    return d;
}

Element Element::part(int deg) const
{
    Element r(tab);
    for (auto& [k, c] : terms)
        if (key_degree(*tab, k) == deg) r.terms.emplace(k, c);
    return r;
}

std::string Element::str() const
{
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : terms) {
        std::string cs = c.str(tab->symbol);
        bool neg = c.is_const() && c.q() < 0;
        if (neg) cs = (-c).str(tab->symbol);
        if (!c.is_const()) cs = "(" + cs + ")";
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << "-";
        first = false;
        std::string ks = key_str(*tab, k);
        if (ks == "1") os << cs;
        else if (cs == "1") os << ks;
        else os << cs << "*" << ks;
    }
    return os.str();
}

Element operator*(const Element& a, const Element& b)
{
    check_same(a, b);
    Element r(a.tab ? a.tab : b.tab);
    if (a.is_zero() || b.is_zero()) return r;
    Key out;
    for (auto& [ka, ca] : a.terms)
        for (auto& [kb, cb] : b.terms) {
            int s = key_mul(*r.tab, ka, kb, out);
            if (s) r.add(out, s > 0 ? ca * cb : -(ca * cb));
        }
    return r;
}

Element operator*(const Scalar& c, const Element& a) { return a.scaled(c); }

Element normal_form(TablePtr t, const std::vector<RawTerm>& raw)
{
    Element r(t);
    for (auto& rt : raw) {
        for (int g : rt.word)
            if (g < 0 || g >= t->size()) throw std::out_of_range("unknown generator id");
        if (int(rt.w.size()) != t->d) throw std::invalid_argument("weight rank mismatch");
        std::vector<int> w = rt.word;
        int sign = 1;
        bool dead = false;
        // bubble sort, one Koszul sign per odd-odd swap
        for (size_t i = 0; i < w.size() && !dead; ++i)
            for (size_t j = 0; j + 1 < w.size() - i; ++j) {
                if (w[j] > w[j + 1]) {
                    if (t->odd(w[j]) && t->odd(w[j + 1])) sign = -sign;
                    std::swap(w[j], w[j + 1]);
                }
            }
        Key k = make_key(*t, rt.w);
        for (size_t i = 0; i < w.size(); ++i) {
            if (t->odd(w[i]) && k[t->d + w[i]]) dead = true;
            k[t->d + w[i]]++;
        }
        if (!dead) r.add(k, sign > 0 ? rt.c : -rt.c);
    }
    return r;
}

// prefix * X * suffix with the accumulated coefficient c
static void accumulate(Element& out, const GeneratorTable& t, const Key& prefix,
                       const Element& X, const Key& suffix, const Scalar& c)
{
    Key m1, m2;
    for (auto& [kx, cx] : X.terms) {
        int s1 = key_mul(t, prefix, kx, m1);
        if (!s1) continue;
        int s2 = key_mul(t, m1, suffix, m2);
        if (!s2) continue;
        Scalar v = cx * c;
        out.add(m2, s1 * s2 > 0 ? v : -v);
    }
}

Element apply_term(const Derivation& D, const GeneratorTable& t, const TablePtr& tp,
                   const Key& k, const Scalar& c)
{
    Element r(tp);
    const int d = t.d, n = t.size();
    Weight w = key_weight(t, k);
    bool w0 = std::all_of(w.begin(), w.end(), [](int v) { return v == 0; });
    Key zero = make_key(t, Weight(d, 0));
    if (!w0 && D.on_char) {
        Key mono = k;
        for (int i = 0; i < d; ++i) mono[i] = 0;
        accumulate(r, t, zero, D.on_char(w), mono, c);
    }
    Key prefix = make_key(t, w);
    int pdeg = 0;
    for (int i = 0; i < n; ++i) {
        int e = k[d + i];
        if (!e) continue;
        Key suffix = zero;
        suffix[d + i] = int16_t(e - 1);
        for (int j = i + 1; j < n; ++j) suffix[d + j] = k[d + j];
        Scalar cc = c * Scalar(t.odd(i) ? 1 : e);
        if ((D.k & 1) && (pdeg & 1)) cc = -cc;
        accumulate(r, t, prefix, D.on_gen[i], suffix, cc);
        prefix[d + i] = int16_t(e);
        pdeg += e * t.gens[i].degree;
    }
    return r;
}

Element apply(const Derivation& D, const Element& a)
{
    Element r(a.tab);
    for (auto& [k, c] : a.terms) r += apply_term(D, *a.tab, a.tab, k, c);
    return r;
}

Derivation commutator(const Derivation& a, const Derivation& b)
{
    Derivation r;
    r.k = a.k + b.k;
    Scalar s = ((a.k * b.k) & 1) ? Scalar(-1) : Scalar(1);
    for (size_t i = 0; i < a.on_gen.size(); ++i)
        r.on_gen.push_back(apply(a, b.on_gen[i]) - apply(b, a.on_gen[i]).scaled(s));
    auto A = std::make_shared<Derivation>(a);
    auto B = std::make_shared<Derivation>(b);
    r.on_char = [A, B, s](const Weight& w) {
        Element ea = A->on_char ? A->on_char(w) : Element();
        Element eb = B->on_char ? B->on_char(w) : Element();
        Element x = eb.tab ? apply(*A, eb) : Element(ea.tab);
        Element y = ea.tab ? apply(*B, ea) : Element(eb.tab);
        return x - y.scaled(s);
    };
    r.char_degree = a.char_degree + b.char_degree;
    return r;
}

std::vector<Weight> weight_grid(int d, int deg)
{
    std::vector<Weight> out;
    Weight w(d, 0);
    int m = std::max(deg, 1);
    while (true) {
        out.push_back(w);
        int i = 0;
        while (i < d && w[i] == m) w[i++] = 0;
        if (i == d) break;
        ++w[i];
    }
    return out;
}

bool is_zero(const Derivation& D, const GeneratorTable& t, std::string* witness)
{
    for (int i = 0; i < t.size(); ++i)
        if (!D.on_gen[i].is_zero()) {
            if (witness) *witness = t.gens[i].name + " -> " + D.on_gen[i].str();
            return false;
        }
    if (!D.on_char) return true;
    for (auto& w : weight_grid(t.d, D.char_degree)) {
        Element e = D.on_char(w);
        if (!e.is_zero()) {
            if (witness) {
                std::string ws;
                for (int v : w) ws += (ws.empty() ? "" : ",") + std::to_string(v);
                *witness = "e(" + ws + ") -> " + e.str();
            }
            return false;
        }
    }
    return true;
}

Element poisson(const PoissonTable& P, const Element& a, const Element& b)
{
    check_same(a, b);
    TablePtr tp = a.tab ? a.tab : b.tab;
    Element r(tp);
    if (a.is_zero() || b.is_zero()) return r;
    if (P.gg.empty() && tp->size() > 0) throw std::logic_error("Poisson table not installed");
    const GeneratorTable& t = *tp;
    const int d = t.d, n = t.size();

    auto pair_char = [&](int i, const Weight& w) {
        Scalar s;
        for (int l = 0; l < d; ++l)
            if (w[l]) s += P.chi[i][l] * Scalar(w[l]);
        return s;
    };

    for (auto& [ka, ca] : a.terms)
        for (auto& [kb, cb] : b.terms) {
            Scalar c0 = ca * cb;
            Weight wa = key_weight(t, ka), wb = key_weight(t, kb);
            bool za = std::all_of(wa.begin(), wa.end(), [](int v) { return !v; });
            bool zb = std::all_of(wb.begin(), wb.end(), [](int v) { return !v; });
            // degree of factors of a strictly after generator i
            std::vector<int> after(n + 1, 0), before(n + 1, 0);
            for (int i = n - 1; i >= 0; --i) after[i] = after[i + 1] + ka[d + i] * t.gens[i].degree;
            for (int j = 0; j < n; ++j) before[j + 1] = before[j] + kb[d + j] * t.gens[j].degree;

            // character of a against generators of b
            if (!za) {
                Key ap = ka;
                for (int l = 0; l < d; ++l) ap[l] = 0;
                for (int j = 0; j < n; ++j) {
                    int e = kb[d + j];
                    if (!e) continue;
                    Scalar s = pair_char(j, wa);
                    if (s.is_zero()) continue;
                    Key bpp = kb;
                    bpp[d + j]--;
                    Scalar c = -s * c0 * Scalar(t.odd(j) ? 1 : e);
                    if (t.odd(j) && (before[j] & 1)) c = -c;
                    accumulate(r, t, ap, Element::character(tp, wa), bpp, c);
                }
            }
            for (int i = 0; i < n; ++i) {
                int ea = ka[d + i];
                if (!ea) continue;
                Key ap = ka;
                ap[d + i]--;
                Scalar ci = c0 * Scalar(t.odd(i) ? 1 : ea);
                if (t.odd(i) && (after[i + 1] & 1)) ci = -ci;
                if (!zb) {
                    Scalar s = pair_char(i, wb);
                    if (!s.is_zero()) {
                        Key bpp = kb;
                        for (int l = 0; l < d; ++l) bpp[l] = 0;
                        accumulate(r, t, ap, Element::character(tp, wb), bpp, ci * s);
                    }
                }
                for (int j = 0; j < n; ++j) {
                    int eb = kb[d + j];
                    if (!eb) continue;
                    const Element& X = P.gg[i][j];
                    if (X.is_zero()) continue;
                    Key bpp = kb;
                    bpp[d + j]--;
                    Scalar c = ci * Scalar(t.odd(j) ? 1 : eb);
                    if (t.odd(j) && (before[j] & 1)) c = -c;
                    accumulate(r, t, ap, X, bpp, c);
                }
            }
        }
    return r;
}

std::vector<int> Grading::value(const GeneratorTable& t, const Key& k) const
{
    std::vector<int> v(rank(), 0);
    for (int r = 0; r < rank(); ++r) {
        for (int l = 0; l < t.d; ++l) v[r] += A[r][l] * k[l];
        for (int i = 0; i < t.size(); ++i) v[r] += gen[i][r] * k[t.d + i];
    }
    return v;
}

GradingReport conserved_grading_check(const Grading& g, const Derivation& D,
                                      const GeneratorTable& t)
{
    GradingReport rep;
    auto fail = [&](const std::string& what, const Key& k) {
        rep.ok = false;
        rep.violation = what + " produces " + key_str(t, k);
    };
    for (int i = 0; i < t.size() && rep.ok; ++i) {
        Key gk = make_key(t, Weight(t.d, 0));
        gk[t.d + i] = 1;
        auto v0 = g.value(t, gk);
        for (auto& [k, c] : D.on_gen[i].terms)
            if (g.value(t, k) != v0) { fail("D(" + t.gens[i].name + ")", k); break; }
    }
    if (rep.ok && D.on_char) {
        for (auto& w : weight_grid(t.d, 2)) {
            auto v0 = g.value(t, make_key(t, w));
            for (auto& [k, c] : D.on_char(w).terms)
                if (g.value(t, k) != v0) { fail("D(" + key_str(t, make_key(t, w)) + ")", k); break; }
            if (!rep.ok) break;
        }
    }
    return rep;
}

} // namespace ca
