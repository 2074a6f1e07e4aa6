#include "cohomology.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace ca {

namespace {

Block filtered(const Block& b, const std::function<bool(const Key&)>& keep)
{
    if (!keep) return b;
    Block out;
    out.degree = b.degree;
    out.value = b.value;
    for (auto& k : b.keys)
        if (keep(k)) {
            out.index[k] = int(out.keys.size());
            out.keys.push_back(k);
        }
    return out;
}

bool all_zero(const std::vector<SVec>& m)
{
    for (auto& c : m)
        if (!c.empty()) return false;
    return true;
}

// restriction of f to src, read in dst; terms outside dst are an error
std::vector<SVec> cols_of(const LinMap& f, const TablePtr& t, const Block& src, const Block& dst)
{
    return matrix(f, t, src, dst);
}

std::string vstr(const std::vector<int>& v)
{
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

} // namespace

Complex brute_complex(const Rothstein& R)
{
    Complex C;
    C.name = "standard";
    C.tab = R.tab;
    auto D = std::make_shared<Derivation>(R.dE);
    C.d = [D](const Element& e) { return apply(*D, e); };
    C.grading = make_grading(R.spec, R.tab);
    return C;
}

Complex minimal_complex(const MinimalModel& M)
{
    Complex C;
    C.name = "minimal model";
    C.tab = M.tab;
    auto D = std::make_shared<Derivation>(M.Q);
    C.d = [D](const Element& e) { return apply(*D, e); };
    C.grading = M.grading;
    return C;
}

Complex naive_complex(const Rothstein& R)
{
    Complex C;
    C.name = "naive";
    C.tab = R.tab;
    auto RR = std::make_shared<Rothstein>(R);
    C.d = [RR](const Element& e) { return naive_differential(*RR, e); };
    C.grading = make_grading(R.spec, R.tab);
    auto t = R.tab;
    const int lo = R.spec.nF() + R.spec.g;
    C.keep = [t, lo](const Key& k) {
        for (int g = lo; g < t->size(); ++g)
            if (k[t->d + g]) return false;
        return true;
    };
    return C;
}

Complex ce_complex(const MinimalModel& M)
{
    Complex C;
    C.name = "Chevalley-Eilenberg";
    C.tab = M.tab;
    auto D = std::make_shared<Derivation>(M.dCE);
    C.d = [D](const Element& e) { return apply(*D, e); };
    C.grading = M.grading;
    auto t = M.tab;
    C.keep = [t](const Key& k) { return key_family_count(*t, k, Family::Bdual2) == 0; };
    return C;
}

BettiTable betti(const Complex& C, int nmax, int radius)
{
    BettiTable out;
    out.name = C.name;
    out.radius = radius;
    out.dims.assign(nmax + 1, 0);
    for (auto& v : value_window(C.grading.rank(), radius)) {
        std::vector<Block> B;
        for (int n = 0; n <= nmax + 1; ++n) B.push_back(filtered(make_block(C.tab, C.grading, n, v), C.keep));
        std::vector<std::vector<SVec>> D;
        std::vector<long> rk;
        for (int n = 0; n <= nmax; ++n) {
            D.push_back(cols_of(C.d, C.tab, B[n], B[n + 1]));
            rk.push_back(rank(D.back()));
        }
        for (int n = 0; n + 1 <= nmax; ++n)
            if (out.d_squared_zero && !all_zero(compose(D[n + 1], D[n]))) {
                out.d_squared_zero = false;
                out.witness = "degree " + std::to_string(n) + " block " + vstr(v);
            }
        std::vector<long> h(nmax + 1);
        bool any = false;
        for (int n = 0; n <= nmax; ++n) {
            h[n] = B[n].dim() - rk[n] - (n ? rk[n - 1] : 0);
            out.dims[n] += h[n];
            any = any || h[n];
        }
        if (any) out.blocks[v] = h;
    }
    return out;
}

std::vector<long> Pages::total(const std::map<Slot, long>& E) const
{
    std::vector<long> t(nmax + 1, 0);
    for (auto& [s, v] : E)
        if (s.k + 2 * s.l <= nmax) t[s.k + 2 * s.l] += v;
    return t;
}

namespace {

int b_count(const GeneratorTable& t, const Key& k) { return key_family_count(t, k, Family::Bdual2); }

std::vector<SVec> span_basis(const std::vector<SVec>& vs, bool rev = false)
{
    Span sp(rev);
    std::vector<SVec> out;
    for (auto& v : vs)
        if (sp.insert(v)) out.push_back(v);
    return out;
}

SVec apply_cols(const std::vector<SVec>& M, const SVec& x)
{
    SVec y;
    for (auto& [i, c] : x) axpy(y, c, M[i]);
    return y;
}

} // namespace

Pages spectral_pages(const MinimalModel& M, int nmax, int radius)
{
    Pages P;
    P.nmax = nmax;
    P.radius = radius;
    const TablePtr& t = M.tab;
    Derivation dT = M.Q;
    for (int g = 0; g < t->size(); ++g)
        if (t->gens[g].fam != Family::Bdual2) dT.on_gen[g] = Element(t);
    dT.on_char = [t](const Weight&) { return Element(t); };
    auto dTp = std::make_shared<Derivation>(dT);
    auto dCp = std::make_shared<Derivation>(M.dCE);
    LinMap fT = [dTp](const Element& e) { return apply(*dTp, e); };
    LinMap fC = [dCp](const Element& e) { return apply(*dCp, e); };
    const int top = nmax + 2;   // room for d2 targets of degree nmax + 1

    for (auto& v : value_window(M.grading.rank(), radius)) {
        std::map<Slot, Block> S;
        for (int n = 0; n <= top; ++n) {
            Block b = make_block(t, M.grading, n, v);
            for (int l = 0; 2 * l <= n; ++l) {
                int k = n - 2 * l;
                S[{k, l}] = filtered(b, [&](const Key& key) { return b_count(*t, key) == l; });
            }
        }
        auto blk = [&](int k, int l) -> const Block* {
            auto it = S.find({k, l});
            return it == S.end() ? nullptr : &it->second;
        };
        auto dce = [&](int k, int l) {
            const Block *a = blk(k, l), *b = blk(k + 1, l);
            if (!a) return std::vector<SVec>{};
            if (!b) return std::vector<SVec>(a->dim());
            return cols_of(fC, t, *a, *b);
        };
        auto dtm = [&](int k, int l) {
            const Block *a = blk(k, l), *b = blk(k + 3, l - 1);
            if (!a) return std::vector<SVec>{};
            if (!b) return std::vector<SVec>(a->dim());
            return cols_of(fT, t, *a, *b);
        };
        for (auto& [slot, b] : S) {
            int k = slot.k, l = slot.l;
            if (k + 2 * l > nmax) continue;
            auto C0 = dce(k, l), Cm = dce(k - 1, l);
            if (blk(k + 2, l) && !all_zero(compose(dce(k + 1, l), C0)) && P.d_squared_zero) {
                P.d_squared_zero = false;
                P.witness = "d_CE^2 at slot (" + std::to_string(k) + "," + std::to_string(l) + ") block " + vstr(v);
            }
            auto Z0 = kernel(C0);
            long b0 = rank(Cm);
            P.E0[slot] += b.dim();
            P.E1[slot] += long(Z0.size()) - b0;

            // Z1: cocycles whose transgression is d_CE-exact
            auto T = dtm(k, l);
            auto B0t = dce(k + 2, l - 1);
            std::vector<SVec> zs;
            std::vector<SVec> tz;
            for (auto& z : Z0) tz.push_back(apply_cols(T, z));
            std::vector<SVec> big = tz;
            for (auto& c : B0t) big.push_back(c);
            auto K = kernel(big);
            for (auto& kv : K) {
                SVec z;
                for (auto& [i, c] : kv)
                    if (i < int(Z0.size())) axpy(z, c, Z0[i]);
                if (!z.empty()) zs.push_back(z);
            }
            auto Z1 = span_basis(zs);
            long dimZ1 = long(Z1.size());
            // B1 = B0 + d_T(Z0 of the slot below)
            std::vector<SVec> b1 = Cm;
            if (blk(k - 3, l + 1)) {
                auto Zb = kernel(dce(k - 3, l + 1));
                auto Tb = dtm(k - 3, l + 1);
                for (auto& z : Zb) b1.push_back(apply_cols(Tb, z));
            }
            long rB1 = rank(b1);
            P.E2[slot] += dimZ1 - rB1;
            long r1 = long(Z0.size()) - dimZ1;
            P.d1rank[slot] += r1;
            // same rank with the opposite pivot order
            long rr = rank(big, true) - rank(B0t, true);
            if (rr != r1) P.d1_recheck = false;

            // d2: lift and transgress again
            const Block* tgt = blk(k + 5, l - 2);
            if (!tgt || Z1.empty()) continue;
            auto Cl = dce(k + 2, l - 1);
            auto T2 = dtm(k + 2, l - 1);
            std::vector<SVec> imgs;
            for (auto& z : Z1) {
                auto y = solve(Cl, apply_cols(T, z));
                if (!y) { P.lift_ok = false; continue; }
                SVec u = apply_cols(T2, *y);
                for (auto& [i, c] : u) c = -c;
                imgs.push_back(u);
            }
            // B1 at the target slot
            std::vector<SVec> tb = dce(k + 4, l - 2);
            if (blk(k + 2, l - 1)) {
                auto Zb = kernel(dce(k + 2, l - 1));
                for (auto& z : Zb) tb.push_back(apply_cols(T2, z));
            }
            long base = rank(tb);
            for (auto& u : imgs) tb.push_back(u);
            P.d2rank[slot] += rank(tb) - base;
        }
    }
    return P;
}

std::map<Slot, long> e1_direct(const MinimalModel& M, int nmax, int radius)
{
    const TablePtr& t = M.tab;
    Complex C = ce_complex(M);
    std::map<std::vector<int>, std::vector<long>> cache;
    auto ce_at = [&](const std::vector<int>& v) -> const std::vector<long>& {
        auto it = cache.find(v);
        if (it != cache.end()) return it->second;
        std::vector<Block> B;
        for (int n = 0; n <= nmax + 1; ++n) B.push_back(filtered(make_block(t, C.grading, n, v), C.keep));
        std::vector<long> rk, h(nmax + 1);
        for (int n = 0; n <= nmax; ++n) rk.push_back(rank(cols_of(C.d, t, B[n], B[n + 1])));
        for (int n = 0; n <= nmax; ++n) h[n] = B[n].dim() - rk[n] - (n ? rk[n - 1] : 0);
        return cache[v] = h;
    };
    // b monomials by count
    std::vector<int> bg;
    for (int g = 0; g < t->size(); ++g)
        if (t->gens[g].fam == Family::Bdual2) bg.push_back(g);
    std::vector<std::pair<int, std::vector<int>>> mons;   // (count, value shift)
    std::vector<int> e(bg.size(), 0);
    const int r = M.grading.rank();
    std::function<void(size_t, int)> rec = [&](size_t i, int rem) {
        if (i == bg.size()) {
            std::vector<int> sh(r, 0);
            int cnt = 0;
            for (size_t j = 0; j < bg.size(); ++j) {
                cnt += e[j];
                for (int q = 0; q < r; ++q) sh[q] += M.grading.gen[bg[j]][q] * e[j];
            }
            mons.push_back({cnt, sh});
            return;
        }
        for (int x = 0; x <= rem; ++x) {
            e[i] = x;
            rec(i + 1, rem - x);
        }
        e[i] = 0;
    };
    rec(0, nmax / 2);
    std::map<Slot, long> E1;
    for (int l = 0; 2 * l <= nmax; ++l)
        for (int k = 0; k + 2 * l <= nmax; ++k) E1[{k, l}] = 0;
    for (auto& v : value_window(r, radius))
        for (auto& [l, sh] : mons) {
            std::vector<int> w = v;
            for (int q = 0; q < r; ++q) w[q] -= sh[q];
            auto& h = ce_at(w);
            for (int k = 0; k + 2 * l <= nmax; ++k) E1[{k, l}] += h[k];
        }
    return E1;
}

int default_radius(const CourantSpec& s) { return s.d <= 2 ? 2 : 1; }

Report compare_betti(const BettiTable& a, const BettiTable& b)
{
    Report rep;
    std::string w;
    bool ok = a.dims == b.dims;
    if (!ok) {
        for (size_t n = 0; n < std::min(a.dims.size(), b.dims.size()); ++n)
            if (a.dims[n] != b.dims[n]) {
                w = "H^" + std::to_string(n) + ": " + std::to_string(a.dims[n]) + " vs " + std::to_string(b.dims[n]);
                break;
            }
    }
    // per block, exact
    bool blk = a.blocks == b.blocks;
    if (ok && !blk) w = "block decomposition differs";
    rep.add(a.name + " = " + b.name + " (degreewise)", ok && blk, w);
    return rep;
}

Report corollary_checks(const Pages& P, const BettiTable& ce, const BettiTable& st)
{
    Report rep;
    auto E1 = [&](int k, int l) { auto it = P.E1.find({k, l}); return it == P.E1.end() ? 0L : it->second; };
    auto r1 = [&](int k, int l) { auto it = P.d1rank.find({k, l}); return it == P.d1rank.end() ? 0L : it->second; };
    auto at = [](const std::vector<long>& v, int n) { return n < int(v.size()) ? v[n] : 0L; };
    auto line = [&](const std::string& name, long want, long got) {
        rep.add(name + " (" + std::to_string(want) + ")", want == got, "formula gives " + std::to_string(got));
    };
    line("H0_st = H0_CE", at(st.dims, 0), at(ce.dims, 0));
    line("H1_st = H1_CE", at(st.dims, 1), at(ce.dims, 1));
    if (int(st.dims.size()) > 2) line("H2_st = H2_CE + ker d1 on H0(A_E;B)", at(st.dims, 2), at(ce.dims, 2) + E1(0, 1) - r1(0, 1));
    if (int(st.dims.size()) > 3)
        line("H3_st = H3_CE / im d1 + ker d1 on H1(A_E;B)", at(st.dims, 3),
             at(ce.dims, 3) - r1(0, 1) + E1(1, 1) - r1(1, 1));
    return rep;
}

std::string betti_str(const BettiTable& b)
{
    std::ostringstream os;
    os << b.name << " cohomology, window radius " << b.radius << (b.approximate ? " (approximate)" : "") << "\n";
    os << "  n   :";
    for (size_t n = 0; n < b.dims.size(); ++n) os << std::setw(6) << n;
    os << "\n  dim :";
    for (auto d : b.dims) os << std::setw(6) << d;
    os << "\n";
    return os.str();
}

std::string pages_str(const Pages& P)
{
    std::ostringstream os;
    auto dump = [&](const char* name, const std::map<Slot, long>& E) {
        os << name << " (rows l = b-count, columns k = CE degree)\n";
        int kmax = P.nmax;
        os << "  l\\k";
        for (int k = 0; k <= kmax; ++k) os << std::setw(6) << k;
        os << "\n";
        for (int l = 0; 2 * l <= P.nmax; ++l) {
            os << "  " << std::setw(3) << l;
            for (int k = 0; k <= kmax; ++k) {
                auto it = E.find({k, l});
                if (k + 2 * l > P.nmax) os << std::setw(6) << ".";
                else os << std::setw(6) << (it == E.end() ? 0 : it->second);
            }
            os << "\n";
        }
        auto t = P.total(E);
        os << "  total by degree:";
        for (auto x : t) os << " " << x;
        os << "\n";
    };
    dump("E0", P.E0);
    dump("E1", P.E1);
    dump("rank d1", P.d1rank);
    dump("E2", P.E2);
    dump("rank d2", P.d2rank);
    return os.str();
}

} // namespace ca
