#include "contraction.hpp"

#include <algorithm>
#include <stdexcept>

namespace ca {

namespace {

struct Split {
    Element omega, X, P, PB;
    std::vector<int> a;   // pF exponents
    int p = 0, q = 0, wdeg = 0;
};

Split split(const Rothstein& R, const Key& k, const Scalar& c)
{
    const TablePtr& t = R.tab;
    const CourantSpec& s = R.spec;
    const int d = t->d;
    Split sp;
    Key kw = make_key(*t, key_weight(*t, k));
    Key kx = make_key(*t, Weight(d, 0)), kp = kx, kb = kx;
    for (int g = 0; g < t->size(); ++g) {
        int e = k[d + g];
        if (!e) continue;
        switch (t->gens[g].fam) {
        case Family::Fdual:
        case Family::Gfiber: kw[d + g] = e; sp.wdeg += e; break;
        case Family::Ffiber: kx[d + g] = e; sp.q += e; break;
        case Family::PmomF: kp[d + g] = e; sp.p += e; break;
        default: kb[d + g] = e; break;
        }
    }
    sp.a.assign(s.nF(), 0);
    for (int i = 0; i < s.nF(); ++i) sp.a[i] = k[d + R.gPF(i)];
    sp.omega = Element(t);
    sp.omega.add(kw, c);
    sp.X = Element(t);
    sp.X.add(kx, 1);
    sp.P = Element(t);
    sp.P.add(kp, 1);
    sp.PB = Element(t);
    sp.PB.add(kb, 1);
    return sp;
}

// P with one factor p_i removed
Element lower(const Rothstein& R, const Element& P, int i)
{
    Element out(R.tab);
    for (auto& [k, c] : P.terms) {
        Key k2 = k;
        k2[R.tab->d + R.gPF(i)]--;
        out.add(k2, c);
    }
    return out;
}

} // namespace

static void check_regular(const Contraction& c, const Element& a)
{
    if (c.extended) return;
    for (auto& [k, v] : a.terms)
        if (key_family_count(*a.tab, k, Family::PmomB))
            throw std::invalid_argument("input outside the regular subalgebra: " + key_str(*a.tab, k));
}

Element Contraction::rho_inv(const Element& a) const
{
    check_regular(*this, a);
    const TablePtr& t = R->tab;
    Element out(t);
    for (auto& [k, c] : a.terms) {
        Split sp = split(*R, k, c);
        if (sp.p == 0) continue;
        Scalar pre = Scalar(-1) / Scalar(sp.p + sp.q);
        if (sp.wdeg & 1) pre = -pre;
        for (int i = 0; i < R->spec.nF(); ++i) {
            if (!sp.a[i]) continue;
            Element term = sp.omega * Element::gen(t, R->gX(i)) * sp.X * lower(*R, sp.P, i) * sp.PB;
            out += term.scaled(pre * Scalar(sp.a[i]));
        }
    }
    return out;
}

Element Contraction::cop(const Element& a) const
{
    check_regular(*this, a);
    const TablePtr& t = R->tab;
    Element out(t);
    for (auto& [k, c] : a.terms) {
        Split sp = split(*R, k, c);
        if (sp.p == 0) continue;
        Scalar pre = sp.p + sp.q >= 2 ? Scalar(1) / Scalar(sp.p + sp.q - 1) : Scalar(1);
        for (int i = 0; i < R->spec.nF(); ++i) {
            if (!sp.a[i] || iC[i].is_zero()) continue;
            Element term = sp.omega * iC[i] * sp.X * lower(*R, sp.P, i) * sp.PB;
            out += term.scaled(pre * Scalar(sp.a[i]));
        }
    }
    return out;
}

Element Contraction::h(const Element& a) const
{
    Element step = rho_inv(a), out(R->tab);
    bool neg = false;
    while (!step.is_zero()) {
        out += neg ? -step : step;
        step = cop(step);
        neg = !neg;
    }
    return out;
}

Element Contraction::phi_full(const Element& a) const
{
    check_regular(*this, a);
    return a + h(d(a)) + d(h(a));
}

bool Contraction::in_image(const Element& a) const
{
    for (auto& [k, c] : a.terms)
        if (key_family_count(*a.tab, k, Family::Ffiber) || key_family_count(*a.tab, k, Family::PmomF))
            return false;
    return true;
}

Element Contraction::to_min(const Element& a) const
{
    const TablePtr& t = R->tab;
    const int d = t->d;
    Element out(mtab);
    for (auto& [k, c] : a.terms) {
        Key m = make_key(*mtab, key_weight(*t, k));
        for (int g = 0; g < t->size(); ++g) {
            int e = k[d + g];
            if (!e) continue;
            auto& G = t->gens[g];
            Family f = G.fam;
            if (f == Family::Ffiber || f == Family::PmomF)
                throw std::invalid_argument("element not in the image of psi: " + key_str(*t, k));
            if (f == Family::PmomB) f = Family::Bdual2;
            m[d + mtab->find(f, G.index)] = e;
        }
        out.add(m, c);
    }
    return out;
}

Element Contraction::phi(const Element& a) const
{
    Element f = phi_full(a), keep(R->tab);
    for (auto& [k, c] : f.terms)
        if (!key_family_count(*f.tab, k, Family::Ffiber) && !key_family_count(*f.tab, k, Family::PmomF))
            keep.add(k, c);
    return to_min(keep);
}

Element Contraction::psi(const Element& b) const
{
    const TablePtr& t = R->tab;
    const int d = t->d;
    Element out(t);
    for (auto& [k, c] : b.terms) {
        Key m = make_key(*t, key_weight(*mtab, k));
        for (int g = 0; g < mtab->size(); ++g) {
            int e = k[d + g];
            if (!e) continue;
            auto& G = mtab->gens[g];
            Family f = G.fam == Family::Bdual2 ? Family::PmomB : G.fam;
            m[d + t->find(f, G.index)] = e;
        }
        out.add(m, c);
    }
    return out;
}

Contraction build_contraction(std::shared_ptr<const Rothstein> R, bool extended)
{
    Contraction c;
    c.R = R;
    c.extended = extended;
    const CourantSpec& s = R->spec;
    const int nF = s.nF(), g = s.g;
    c.mtab = make_table(s.d, {{Family::Fdual, nF}, {Family::Gfiber, g}, {Family::Bdual2, s.nB()}}, s.sym());
    FrameDuals& fr = c.aframes;
    fr.tab = c.mtab;
    fr.pair.assign(nF + g, std::vector<Scalar>(c.mtab->size()));
    auto ginv = g ? invert_matrix(s.metric) : std::vector<std::vector<Scalar>>{};
    for (int i = 0; i < nF; ++i) {
        fr.pair[i][i] = Scalar::frac(1, 2);
        fr.dual.push_back(Element::gen(c.mtab, i, 2));
    }
    for (int a = 0; a < g; ++a) {
        Element du(c.mtab);
        for (int b = 0; b < g; ++b) {
            fr.pair[nF + a][nF + b] = s.metric[a][b];
            if (!ginv[a][b].is_zero()) du += Element::gen(c.mtab, nF + b, ginv[a][b]);
        }
        fr.dual.push_back(du);
    }
    for (int i = 0; i < nF; ++i)
        c.iC.push_back(contract(R->fr, frame_section(s, s.iX(i)), R->C));
    return c;
}

std::vector<int> regular_generators(const Rothstein& R, bool with_pB)
{
    std::vector<int> v;
    for (int g = 0; g < R.tab->size(); ++g)
        if (with_pB || R.tab->gens[g].fam != Family::PmomB) v.push_back(g);
    return v;
}

Element RandomElements::draw(const TablePtr& t, const std::vector<int>& gens, int maxdeg, int terms)
{
    Element out(t);
    if (gens.empty()) return out;
    std::uniform_int_distribution<int> nt(1, terms), coef(-3, 3), wv(-1, 1), pick(0, int(gens.size()) - 1),
        deg(0, maxdeg);
    int n = nt(rng);
    for (int j = 0; j < n; ++j) {
        Weight w(t->d);
        for (auto& x : w) x = wv(rng);
        Element m = Element::character(t, w);
        int target = deg(rng), got = 0;
        for (int tries = 0; tries < 20 && got < target; ++tries) {
            int g = gens[pick(rng)];
            int dg = t->gens[g].degree;
            if (got + dg > target) continue;
            Element nm = m * Element::gen(t, g);
            if (nm.is_zero()) continue;
            m = nm;
            got += dg;
        }
        int c = coef(rng);
        if (c == 0) c = 1;
        out += m.scaled(c);
    }
    return out;
}

Report verify_contraction(const Contraction& c, const std::function<Element(const Element&)>& Q,
                          int samples, int maxdeg, uint64_t seed)
{
    const Rothstein& R = *c.R;
    const TablePtr& t = R.tab;
    RandomElements rnd(seed);
    auto gens = regular_generators(R, c.extended);
    std::vector<int> mgens;
    for (int g = 0; g < c.mtab->size(); ++g)
        if (c.extended || c.mtab->gens[g].fam != Family::Bdual2) mgens.push_back(g);

    std::vector<Element> items;
    for (int g : gens) {
        items.push_back(Element::gen(t, g));
        for (auto& w : test_weights(t->d))
            if (std::any_of(w.begin(), w.end(), [](int v) { return v != 0; }))
                items.push_back(Element::character(t, w) * Element::gen(t, g));
    }
    for (int i = 0; i < samples; ++i) items.push_back(rnd.draw(t, gens, maxdeg, 5));
    std::vector<Element> mitems;
    for (int g : mgens) mitems.push_back(Element::gen(c.mtab, g));
    for (int i = 0; i < samples / 4; ++i) mitems.push_back(rnd.draw(c.mtab, mgens, maxdeg, 5));

    struct Acc {
        bool ok = true;
        std::string w;
        void fail(const std::string& s) { if (ok) { ok = false; w = s; } }
    } pp, hp, hh, ph, hdh, homot, chain, s1, s2, s3, s4;

    for (auto& b : mitems) {
        Element pb = c.psi(b);
        if (c.phi(pb) != b) pp.fail(b.str());
        if (!c.h(pb).is_zero()) hp.fail(b.str());
    }
    for (auto& a : items) {
        Element ha = c.h(a);
        if (!c.h(ha).is_zero()) hh.fail(a.str());
        if (!c.phi(ha).is_zero()) ph.fail(a.str());
        if (c.h(c.d(ha)) != -ha) hdh.fail(a.str());
        Element full = c.phi_full(a);
        if (!c.in_image(full)) homot.fail(a.str() + " phi leaves C(A_E)");
        else if (c.psi(c.to_min(full)) - a != c.h(c.d(a)) + c.d(ha)) homot.fail(a.str());
        else if (c.to_min(c.phi_full(c.d(a))) != Q(c.to_min(full))) chain.fail(a.str());
    }
    const int np = std::min<int>(int(items.size()), 40);
    for (int i = 0; i < np; ++i) {
        Element hi = c.h(items[i]);
        if (hi.is_zero()) continue;
        for (int j = 0; j < np; j += 3) {
            Element prod = hi * c.h(items[j]);
            if (!c.h(prod).is_zero()) s1.fail(items[i].str() + " ; " + items[j].str());
            if (!c.phi(prod).is_zero()) s3.fail(items[i].str() + " ; " + items[j].str());
        }
        for (size_t j = 0; j < mitems.size(); j += 2) {
            Element prod = hi * c.psi(mitems[j]);
            if (!c.h(prod).is_zero()) s2.fail(items[i].str() + " ; " + mitems[j].str());
            if (!c.phi(prod).is_zero()) s4.fail(items[i].str() + " ; " + mitems[j].str());
        }
    }
    Report rep;
    rep.add("phi psi = id", pp.ok, pp.w);
    rep.add("h psi = 0", hp.ok, hp.w);
    rep.add("h h = 0", hh.ok, hh.w);
    rep.add("phi h = 0", ph.ok, ph.w);
    rep.add("h d h = -h", hdh.ok, hdh.w);
    rep.add("h d + d h = psi phi - id", homot.ok, homot.w);
    rep.add("phi is a chain map", chain.ok, chain.w);
    rep.add("semifull h(h(a)h(b)) = 0", s1.ok, s1.w);
    rep.add("semifull h(h(a)psi(x)) = 0", s2.ok, s2.w);
    rep.add("semifull phi(h(a)h(b)) = 0", s3.ok, s3.w);
    rep.add("semifull phi(h(a)psi(x)) = 0", s4.ok, s4.w);
    return rep;
}

Element phi_theta_target(const Contraction& c)
{
    const Rothstein& R = *c.R;
    const CourantSpec& s = R.spec;
    const int nF = s.nF();
    auto eframe = [&](int u) { return u < nF ? s.iX(u) : s.iR(u - nF); };
    return forms_from_values(c.aframes, 3, [&](const std::vector<int>& v) {
        int nx = 0;
        for (int u : v) nx += u < nF;
        CharPoly tv = torsion_value(s, eframe(v[0]), eframe(v[1]), eframe(v[2]));
        if (tv.is_zero()) return tv;
        Scalar f = nx == 0 ? Scalar(1) : nx == 2 ? Scalar(-1) : nx == 3 ? Scalar(-2) : Scalar(0);
        return (R.lambda * f) * tv;
    });
}

Report phi_theta_check(const Contraction& c)
{
    Report rep;
    Element got = c.phi(c.R->Theta), want = phi_theta_target(c);
    rep.add("phi(Theta) = -C of the E-connection", got == want,
            got == want ? "" : "phi(Theta) " + got.str() + " expected " + want.str());
    return rep;
}

} // namespace ca
