#include "rothstein.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace ca {

Element contract(const FrameDuals& fr, const Vec& u, const Element& a)
{
    const TablePtr& t = fr.tab;
    Derivation D;
    D.k = -1;
    D.on_gen.assign(t->size(), Element(t));
    for (int A = 0; A < fr.size(); ++A) {
        if (u[A].is_zero()) continue;
        Element c = u[A].to_element(t);
        for (int g = 0; g < t->size(); ++g)
            if (!fr.pair[A][g].is_zero()) D.on_gen[g] += c.scaled(fr.pair[A][g]);
    }
    return apply(D, a);
}

CharPoly to_charpoly(const Element& e)
{
    CharPoly p;
    for (auto& [k, c] : e.terms) {
        if (key_degree(*e.tab, k) != 0) throw std::logic_error("not a function: " + e.str());
        p += CharPoly::mono(key_weight(*e.tab, k), c);
    }
    return p;
}

Element from_charpoly(const TablePtr& t, const CharPoly& p) { return p.to_element(t); }

CharPoly eval_form(const FrameDuals& fr, const Element& phi, const std::vector<Vec>& args)
{
    Element x = phi;
    for (auto& u : args) {
        if (x.is_zero()) break;
        x = contract(fr, u, x);
    }
    return x.is_zero() ? CharPoly() : to_charpoly(x);
}

Vec frame_vec(const FrameDuals& fr, int u, int d)
{
    Vec v(fr.size());
    v[u] = CharPoly(Scalar(1), d);
    return v;
}

Element forms_from_values(const FrameDuals& fr, int k,
                          const std::function<CharPoly(const std::vector<int>&)>& value)
{
    Element out(fr.tab);
    const int n = fr.size();
    if (k > n) return out;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        CharPoly v = value(idx);
        if (!v.is_zero()) {
            Element m = v.to_element(fr.tab);
            for (int u : idx) m = m * fr.dual[u];
            out += m;
        }
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

// 0 xi, 1 r, 2 x
static int ftype(const CourantSpec& s, int A) { return A < s.nF() ? 0 : A < s.nF() + s.g ? 1 : 2; }

CharPoly torsion_value(const CourantSpec& s, int A, int B, int C)
{
    int v[3] = {A, B, C};
    int sign = 1;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j + 1 < 3 - i; ++j)
            if (v[j] > v[j + 1]) { std::swap(v[j], v[j + 1]); sign = -sign; }
    if (v[0] == v[1] || v[1] == v[2]) return CharPoly();
    int t0 = ftype(s, v[0]), t1 = ftype(s, v[1]), t2 = ftype(s, v[2]);
    CharPoly out;
    if (t0 == 0) return out;
    if (t0 == 1 && t1 == 1 && t2 == 1) {
        int a = v[0] - s.nF(), b = v[1] - s.nF(), c = v[2] - s.nF();
        for (int d = 0; d < s.g; ++d)
            if (!s.metric[d][c].is_zero()) out += s.metric[d][c] * s.bracket[a][b][d];
    } else if (t0 == 1 && t1 == 2 && t2 == 2) {
        int a = v[0] - s.nF(), j = v[1] - s.nF() - s.g, k = v[2] - s.nF() - s.g;
        for (int d = 0; d < s.g; ++d)
            if (!s.metric[d][a].is_zero()) out += s.metric[d][a] * s.R[j][k][d];
    } else if (t0 == 2) {
        int o = s.nF() + s.g;
        out = Scalar::frac(1, 2) * s.H[v[0] - o][v[1] - o][v[2] - o];
    }
    return sign > 0 ? out : -out;
}

CharPoly torsion_value(const CourantSpec& s, const Vec& a, const Vec& b, const Vec& c)
{
    CharPoly out;
    const int n = s.nE();
    for (int A = 0; A < n; ++A) {
        if (a[A].is_zero()) continue;
        for (int B = 0; B < n; ++B) {
            if (b[B].is_zero() || B == A) continue;
            CharPoly ab = a[A] * b[B];
            for (int C = 0; C < n; ++C) {
                if (c[C].is_zero() || C == A || C == B) continue;
                CharPoly t = torsion_value(s, A, B, C);
                if (!t.is_zero()) out += ab * c[C] * t;
            }
        }
    }
    return out;
}

Element Rothstein::theta(const Vec& e) const
{
    Element out(tab);
    for (int A = 0; A < spec.nE(); ++A)
        if (!e[A].is_zero()) out += e[A].to_element(tab) * Element::gen(tab, A);
    return out;
}

Vec Rothstein::section(const Element& el) const
{
    Vec e = zero_section(spec);
    const int d = tab->d;
    for (auto& [k, c] : el.terms) {
        int which = -1, cnt = 0;
        for (int g = 0; g < tab->size(); ++g)
            if (k[d + g]) { which = g; cnt += k[d + g]; }
        if (cnt != 1 || which >= spec.nE()) throw std::logic_error("not a section: " + el.str());
        e[which] += CharPoly::mono(key_weight(*tab, k), c);
    }
    return e;
}

Vec Rothstein::nabla(int dir, const Vec& e) const
{
    Vec out = zero_section(spec);
    for (int A = 0; A < spec.nE(); ++A) {
        if (e[A].is_zero()) continue;
        out[A] += e[A].deriv(chi[dir]);
        for (int B = 0; B < spec.nE(); ++B)
            if (!conn[dir][A][B].is_zero()) out[B] += e[A] * conn[dir][A][B];
    }
    return out;
}

Vec Rothstein::curvature(int d1, int d2, const Vec& e) const
{
    return sub(nabla(d1, nabla(d2, e)), nabla(d2, nabla(d1, e)));
}

Element Rothstein::curvature_quadratic(int d1, int d2) const
{
    const int n = spec.nE();
    std::vector<Vec> Rt(n);   // Rt[C] = R(e_C)
    for (int C = 0; C < n; ++C) Rt[C] = curvature(d1, d2, frame_section(spec, C));
    Element out(tab);
    for (int A = 0; A < n; ++A)
        for (int B = A + 1; B < n; ++B) {
            CharPoly m;
            for (int C = 0; C < n; ++C)
                if (!Ginv[C][B].is_zero()) m += Ginv[C][B] * Rt[C][A];
            if (!m.is_zero())
                out += m.to_element(tab) * Element::gen(tab, A) * Element::gen(tab, B);
        }
    return out;
}

static std::string wstr(const Weight& w)
{
    std::string s = "e(";
    for (size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
    return s + ")";
}

Rothstein build_rothstein(const CourantSpec& s, Report* rep)
{
    Rothstein R;
    R.spec = s;
    const int nF = s.nF(), nB = s.nB(), g = s.g, nE = s.nE(), d = s.d;
    R.tab = make_table(d, {{Family::Fdual, nF}, {Family::Gfiber, g}, {Family::Ffiber, nF},
                           {Family::PmomF, nF}, {Family::PmomB, nB}}, s.sym());
    const TablePtr& t = R.tab;
    for (auto& c : s.chiF) R.chi.push_back(c);
    for (auto& c : s.chiB) R.chi.push_back(c);

    // connection on the E frame, direction by direction
    R.conn.assign(R.nDir(), std::vector<Vec>(nE, zero_section(s)));
    for (int i = 0; i < nF; ++i) {
        for (int k = 0; k < nF; ++k)
            for (int j = 0; j < nF; ++j)
                R.conn[i][s.iXi(k)][s.iXi(j)] = -s.nablaF[i][j][k];
        for (int a = 0; a < g; ++a)
            for (int b = 0; b < g; ++b) R.conn[i][s.iR(a)][s.iR(b)] = s.nablaG[i][a][b];
        for (int j = 0; j < nF; ++j)
            for (int k = 0; k < nF; ++k) R.conn[i][s.iX(j)][s.iX(k)] = s.nablaF[i][j][k];
    }
    for (int m = 0; m < nB; ++m)
        for (int a = 0; a < g; ++a)
            for (int b = 0; b < g; ++b) R.conn[nF + m][s.iR(a)][s.iR(b)] = s.nablaB[m][a][b];

    R.G.assign(nE, std::vector<Scalar>(nE));
    for (int i = 0; i < nF; ++i) R.G[s.iXi(i)][s.iX(i)] = R.G[s.iX(i)][s.iXi(i)] = Scalar::frac(1, 2);
    for (int a = 0; a < g; ++a)
        for (int b = 0; b < g; ++b) R.G[s.iR(a)][s.iR(b)] = s.metric[a][b];
    R.Ginv = invert_matrix(R.G);

    R.fr.tab = t;
    R.fr.pair.assign(nE, std::vector<Scalar>(t->size()));
    for (int A = 0; A < nE; ++A) {
        for (int B = 0; B < nE; ++B) R.fr.pair[A][B] = R.G[A][B];
        Element du(t);
        for (int B = 0; B < nE; ++B)
            if (!R.Ginv[A][B].is_zero()) du += Element::gen(t, B, R.Ginv[A][B]);
        R.fr.dual.push_back(du);
    }

    const int n = t->size();
    R.P.gg.assign(n, std::vector<Element>(n, Element(t)));
    R.P.chi.assign(n, std::vector<Scalar>(d));
    for (int A = 0; A < nE; ++A)
        for (int B = 0; B < nE; ++B)
            if (!R.G[A][B].is_zero()) R.P.gg[A][B] = Element::scalar(t, R.G[A][B]);
    for (int dir = 0; dir < R.nDir(); ++dir) {
        int p = R.gP(dir);
        R.P.chi[p] = R.chi[dir];
        for (int A = 0; A < nE; ++A) {
            Element v = R.theta(R.conn[dir][A]);
            R.P.gg[p][A] = v;
            R.P.gg[A][p] = -v;
        }
    }
    for (int d1 = 0; d1 < R.nDir(); ++d1)
        for (int d2 = 0; d2 < R.nDir(); ++d2)
            if (d1 != d2) R.P.gg[R.gP(d1)][R.gP(d2)] = R.curvature_quadratic(d1, d2);

    if (rep) {
        std::vector<Element> items;
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) { items.push_back(Element::gen(t, i)); names.push_back(t->gens[i].name); }
        for (auto& w : test_weights(d)) {
            if (std::all_of(w.begin(), w.end(), [](int v) { return v == 0; })) continue;
            items.push_back(Element::character(t, w));
            names.push_back(wstr(w));
        }
        auto deg = [&](const Element& e) { int v = e.degree(); return v < 0 ? 0 : v; };
        bool skew = true, jac = true;
        std::string ws, wj;
        const int m = int(items.size());
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                Element ab = poisson(R.P, items[a], items[b]);
                int da = deg(items[a]), db = deg(items[b]);
                Scalar sg = (((da - 2) * (db - 2)) & 1) ? Scalar(1) : Scalar(-1);
                if (skew && ab != poisson(R.P, items[b], items[a]).scaled(sg)) {
                    skew = false;
                    ws = "(" + names[a] + "," + names[b] + ")";
                }
                if (!jac) continue;
                for (int c = 0; c < m && jac; ++c) {
                    Element l = poisson(R.P, items[a], poisson(R.P, items[b], items[c]));
                    Scalar s2 = (((da - 2) * (db - 2)) & 1) ? Scalar(-1) : Scalar(1);
                    Element r = poisson(R.P, ab, items[c]) +
                                poisson(R.P, items[b], poisson(R.P, items[a], items[c])).scaled(s2);
                    if (l != r) { jac = false; wj = "(" + names[a] + "," + names[b] + "," + names[c] + ")"; }
                }
            }
        rep->add("Poisson table graded skew-symmetry", skew, ws);
        rep->add("Poisson table Jacobi", jac, wj);
    }
    return R;
}

Derivation hamiltonian_derivation(const Rothstein& R, const Element& H)
{
    Derivation D;
    int dh = H.degree();
    D.k = (dh < 0 ? 3 : dh) - 2;
    for (int g = 0; g < R.tab->size(); ++g)
        D.on_gen.push_back(poisson(R.P, H, Element::gen(R.tab, g)));
    auto P = std::make_shared<PoissonTable>(R.P);
    auto h = std::make_shared<Element>(H);
    auto t = R.tab;
    D.on_char = [P, h, t](const Weight& w) { return poisson(*P, *h, Element::character(t, w)); };
    D.char_degree = 1;
    return D;
}

// ratio c with a == c*b, if it exists
static bool ratio(const Element& a, const Element& b, Scalar& c)
{
    if (b.is_zero()) return false;
    auto& [k, v] = *b.terms.begin();
    auto it = a.terms.find(k);
    c = it == a.terms.end() ? Scalar(0) : it->second / v;
    return a == b.scaled(c);
}

void build_theta(Rothstein& R, Report* rep)
{
    const CourantSpec& s = R.spec;
    const TablePtr& t = R.tab;
    R.rho_sum = Element(t);
    for (int i = 0; i < s.nF(); ++i)
        R.rho_sum += Element::gen(t, R.gXi(i)) * Element::gen(t, R.gPF(i));
    R.phiC = forms_from_values(R.fr, 3, [&](const std::vector<int>& v) {
        return torsion_value(s, v[0], v[1], v[2]);
    });

    // anchor prefactor
    bool kfound = false, kok = true;
    std::string kw;
    for (int i = 0; i < s.nF(); ++i)
        for (auto& w : test_weights(s.d)) {
            Element x = Element::gen(t, R.gX(i));
            Element target = anchor_apply(s, frame_section(s, s.iX(i)), CharPoly::mono(w)).to_element(t);
            Element got = poisson(R.P, poisson(R.P, R.rho_sum, x), Element::character(t, w));
            if (target.is_zero() && got.is_zero()) continue;
            Scalar c;
            if (!ratio(target, got, c)) { kok = false; kw = "x" + std::to_string(i + 1) + " on " + wstr(w); continue; }
            if (!kfound) { R.kappa = c; kfound = true; }
            else if (c != R.kappa) { kok = false; kw = "inconsistent on " + wstr(w); }
        }
    R.rho = R.rho_sum.scaled(R.kappa);

    // torsion conversion factor against the Dorfman bracket
    bool lfound = false, lok = true;
    std::string lw;
    for (int A = 0; A < s.nE() && !lfound; ++A)
        for (int B = 0; B < s.nE() && !lfound; ++B) {
            Element a = Element::gen(t, A), b = Element::gen(t, B);
            Element Bp = poisson(R.P, poisson(R.P, R.phiC, a), b);
            if (Bp.is_zero()) continue;
            Element D = R.theta(dorfman(s, frame_section(s, A), frame_section(s, B)));
            Element Ap = poisson(R.P, poisson(R.P, R.rho, a), b);
            Scalar c;
            if (ratio(D - Ap, Bp, c)) { R.lambda = c; lfound = true; }
            else { lok = false; lw = "(" + frame_name(s, A) + "," + frame_name(s, B) + ")"; lfound = true; }
        }
    R.C = R.phiC.scaled(R.lambda);
    R.Theta = R.rho + R.C;
    R.dE = hamiltonian_derivation(R, R.Theta);
    if (rep) {
        rep->add("anchor prefactor solved (" + R.kappa.str() + ")", kok, kw);
        rep->add("torsion factor solved (" + R.lambda.str() + ")", lok, lw);
        rep->add("Theta homogeneous of degree 3", R.Theta.is_zero() || R.Theta.degree() == 3);
    }
}

Element master_residual(const Rothstein& R) { return poisson(R.P, R.Theta, R.Theta); }

Report derived_structures_check(const Rothstein& R)
{
    Report rep;
    const CourantSpec& s = R.spec;
    const TablePtr& t = R.tab;
    auto ws = test_weights(s.d);
    bool anc = true, dor = true, lei = true;
    std::string wa, wd, wl;
    for (int A = 0; A < s.nE(); ++A) {
        Element dA = poisson(R.P, R.Theta, Element::gen(t, A));
        for (auto& w : ws) {
            Element got = poisson(R.P, dA, Element::character(t, w));
            Element want = anchor_apply(s, frame_section(s, A), CharPoly::mono(w)).to_element(t);
            if (anc && got != want) { anc = false; wa = frame_name(s, A) + " on " + wstr(w); }
        }
        for (int B = 0; B < s.nE(); ++B) {
            Vec eA = frame_section(s, A), eB = frame_section(s, B);
            Element got = poisson(R.P, dA, Element::gen(t, B));
            Element want = R.theta(dorfman(s, eA, eB));
            if (dor && got != want) {
                dor = false;
                wd = "(" + frame_name(s, A) + "," + frame_name(s, B) + ") derived " + got.str() +
                     " model " + want.str();
            }
            for (auto& w : ws) {
                Vec fB = scale(CharPoly::mono(w), eB);
                Element g2 = poisson(R.P, dA, R.theta(fB));
                if (lei && g2 != R.theta(dorfman(s, eA, fB))) {
                    lei = false;
                    wl = "(" + frame_name(s, A) + "," + wstr(w) + "*" + frame_name(s, B) + ")";
                }
            }
        }
    }
    rep.add("derived anchor = anchor", anc, wa);
    rep.add("derived bracket = Dorfman on frames", dor, wd);
    rep.add("derived bracket = Dorfman with coefficients", lei, wl);
    return rep;
}

Report d_squared_check(const Rothstein& R)
{
    Report rep;
    std::string w;
    bool ok = is_zero(commutator(R.dE, R.dE), *R.tab, &w);
    rep.add("d_E o d_E = 0", ok, w);
    // regular subalgebra (no pB) closed
    bool reg = true;
    std::string wr;
    auto has_pB = [&](const Element& e) {
        for (auto& [k, c] : e.terms)
            if (key_family_count(*R.tab, k, Family::PmomB)) return true;
        return false;
    };
    for (int g = 0; g < R.gPB(0) && g < R.tab->size(); ++g)
        if (has_pB(R.dE.on_gen[g])) { reg = false; wr = R.tab->gens[g].name; }
    for (auto& wt : test_weights(R.spec.d))
        if (has_pB(R.dE.on_char(wt))) { reg = false; wr = wstr(wt); }
    rep.add("regular subalgebra closed under d_E", reg, wr);
    return rep;
}

bool in_naive_subspace(const Rothstein& R, const Element& a)
{
    for (auto& [k, c] : a.terms)
        for (int g = R.spec.nF() + R.spec.g; g < R.tab->size(); ++g)
            if (k[R.tab->d + g]) return false;
    return true;
}

Element naive_differential(const Rothstein& R, const Element& a)
{
    if (!in_naive_subspace(R, a)) throw std::invalid_argument("input not in the naive subspace");
    const CourantSpec& s = R.spec;
    const int n = s.nE();
    std::vector<std::vector<Vec>> br(n, std::vector<Vec>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Vec ei = frame_section(s, i), ej = frame_section(s, j);
            br[i][j] = scale(CharPoly(Scalar::frac(1, 2), s.d), sub(dorfman(s, ei, ej), dorfman(s, ej, ei)));
        }
    std::map<int, Element> parts;
    for (auto& [k, c] : a.terms) {
        auto it = parts.try_emplace(key_degree(*a.tab, k), Element(a.tab)).first;
        it->second.add(k, c);
    }
    Element out(R.tab);
    for (auto& [deg, eta] : parts) {
        out += forms_from_values(R.fr, deg + 1, [&](const std::vector<int>& e) {
            CharPoly v;
            const int m = int(e.size());
            for (int i = 0; i < m; ++i) {
                std::vector<Vec> args;
                for (int l = 0; l < m; ++l)
                    if (l != i) args.push_back(frame_section(s, e[l]));
                CharPoly f = eval_form(R.fr, eta, args);
                CharPoly df = anchor_apply(s, frame_section(s, e[i]), f);
                v += (i & 1) ? -df : df;
            }
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j) {
                    std::vector<Vec> args{br[e[i]][e[j]]};
                    for (int l = 0; l < m; ++l)
                        if (l != i && l != j) args.push_back(frame_section(s, e[l]));
                    CharPoly f = eval_form(R.fr, eta, args);
                    v += ((i + j) & 1) ? -f : f;
                }
            return v;
        });
    }
    return out;
}

} // namespace ca
