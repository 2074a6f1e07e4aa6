#include "minimal.hpp"

#include <algorithm>
#include <stdexcept>

namespace ca {

namespace {

Vec eframe(const CourantSpec& s, int u)
{
    return frame_section(s, u < s.nF() ? s.iX(u) : s.iR(u - s.nF()));
}

std::string wname(const Weight& w)
{
    std::string s = "e(";
    for (size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
    return s + ")";
}

bool nonzero_weight(const Weight& w)
{
    return std::any_of(w.begin(), w.end(), [](int v) { return v != 0; });
}

} // namespace

Derivation ce_differential(const Rothstein& R, const TablePtr& t, const FrameDuals& fr)
{
    const CourantSpec& s = R.spec;
    Ample A{&R.spec};
    const int n = A.rank();
    std::vector<std::vector<Vec>> br(n, std::vector<Vec>(n));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) br[u][v] = A.bracket(A.frame(u), A.frame(v));
    Derivation D;
    D.k = 1;
    for (int g = 0; g < t->size(); ++g) {
        if (t->gens[g].fam == Family::Bdual2) { D.on_gen.push_back(Element(t)); continue; }
        Element eta = Element::gen(t, g);
        D.on_gen.push_back(forms_from_values(fr, 2, [&](const std::vector<int>& idx) {
            return -eval_form(fr, eta, {br[idx[0]][idx[1]]});
        }));
    }
    auto duals = fr.dual;
    D.on_char = [s, t, duals, n](const Weight& w) {
        Ample A{&s};
        Element out(t);
        for (int u = 0; u < n; ++u) {
            CharPoly f = A.anchor(A.frame(u), CharPoly::mono(w));
            if (!f.is_zero()) out += f.to_element(t) * duals[u];
        }
        return out;
    };
    D.char_degree = 1;
    return D;
}

std::vector<Element> dT_formula(const Rothstein& R, const FrameDuals& fr)
{
    const CourantSpec& s = R.spec;
    const int nF = s.nF();
    std::vector<Element> out;
    for (int m = 0; m < s.nB(); ++m) {
        const int dir = nF + m;
        Element T = forms_from_values(fr, 3, [&](const std::vector<int>& v) {
            if (!(v[0] < nF && v[1] >= nF && v[2] >= nF)) return CharPoly();
            Vec Rr = R.curvature(dir, v[0], frame_section(s, s.iR(v[1] - nF)));
            return (R.kappa / Scalar(2)) * pairing(s, Rr, frame_section(s, s.iR(v[2] - nF)));
        });
        Element NC = forms_from_values(fr, 3, [&](const std::vector<int>& v) {
            std::vector<Vec> a{eframe(s, v[0]), eframe(s, v[1]), eframe(s, v[2])};
            CharPoly val = eval_form(R.fr, R.C, a).deriv(R.chi[dir]);
            for (int k = 0; k < 3; ++k) {
                auto b = a;
                b[k] = R.nabla(dir, a[k]);
                val -= eval_form(R.fr, R.C, b);
            }
            return val;
        });
        out.push_back(T - NC);
    }
    return out;
}

Derivation q_with(const MinimalModel& M, const std::vector<Element>& dT)
{
    Derivation Q = M.dCE;
    for (int m = 0; m < M.nB(); ++m) Q.on_gen[M.gB(m)] = dT[m];
    return Q;
}

Element MinimalModel::bracket_transfer(const Element& a, const Element& b) const
{
    return ext.phi(poisson(R->P, ext.psi(a), ext.psi(b)));
}

Element MinimalModel::lambda3_transfer(const Element& a, const Element& b, const Element& c) const
{
    Element pa = ext.psi(a), pb = ext.psi(b), pc = ext.psi(c);
    auto term = [&](const Element& x, const Element& y, const Element& z) {
        return ext.phi(poisson(R->P, ext.h(poisson(R->P, x, y)), z));
    };
    return term(pa, pb, pc) + term(pb, pc, pa) + term(pc, pa, pb);
}

MinimalModel build_minimal(std::shared_ptr<const Rothstein> R, Report* rep)
{
    MinimalModel M;
    M.R = R;
    M.ext = build_contraction(R, true);
    M.tab = M.ext.mtab;
    const CourantSpec& s = R->spec;
    M.A = build_ample(R->spec, rep);
    M.dCE = ce_differential(*R, M.tab, M.ext.aframes);
    M.dT = dT_formula(*R, M.ext.aframes);
    for (int m = 0; m < s.nB(); ++m) {
        Element img = R->dE.on_gen[R->gPB(m)];
        Element got(M.tab);
        try {
            got = M.ext.to_min(img);
        } catch (const std::invalid_argument&) {
            got = Element(M.tab);
        }
        M.dT_restricted.push_back(got);
    }
    M.Q = q_with(M, M.dT);

    const int n = M.tab->size(), nF = s.nF(), g = s.g;
    M.lam2.gg.assign(n, std::vector<Element>(n, Element(M.tab)));
    M.lam2.chi.assign(n, std::vector<Scalar>(s.d));
    for (int a = 0; a < g; ++a)
        for (int b = 0; b < g; ++b)
            if (!s.metric[a][b].is_zero()) M.lam2.gg[nF + a][nF + b] = Element::scalar(M.tab, s.metric[a][b]);
    for (int m = 0; m < s.nB(); ++m) {
        int bm = M.gB(m);
        M.lam2.chi[bm] = s.chiB[m];
        for (int a = 0; a < g; ++a) {
            Element v(M.tab);
            for (int b = 0; b < g; ++b)
                if (!s.nablaB[m][a][b].is_zero())
                    v += s.nablaB[m][a][b].to_element(M.tab) * Element::gen(M.tab, nF + b);
            M.lam2.gg[bm][nF + a] = v;
            M.lam2.gg[nF + a][bm] = -v;
        }
        for (int m2 = 0; m2 < s.nB(); ++m2) {
            if (m2 == m) continue;
            // G-curvature of the transverse connection, as a quadratic in r
            Element q(M.tab);
            std::vector<Vec> Rr;
            for (int e = 0; e < g; ++e) Rr.push_back(R->curvature(nF + m, nF + m2, frame_section(s, s.iR(e))));
            for (int a = 0; a < g; ++a) {
                for (int b = a + 1; b < g; ++b) {
                    CharPoly c;
                    for (int e = 0; e < g; ++e) c += R->Ginv[s.iR(e)][s.iR(b)] * Rr[e][s.iR(a)];
                    if (!c.is_zero())
                        q += c.to_element(M.tab) * Element::gen(M.tab, nF + a) * Element::gen(M.tab, nF + b);
                }
            }
            M.lam2.gg[bm][M.gB(m2)] = q;
        }
    }
    M.grading = make_grading(s, M.tab);
    return M;
}

Report minimal_checks(const MinimalModel& M)
{
    Report rep;
    const Rothstein& R = *M.R;
    const TablePtr& t = M.tab;
    std::string w;
    rep.add("d_CE o d_CE = 0", is_zero(commutator(M.dCE, M.dCE), *t, &w), w);

    bool tr = true;
    std::string wt;
    for (int g = 0; g < t->size(); ++g) {
        if (t->gens[g].fam == Family::Bdual2) continue;
        Element e = Element::gen(t, g);
        if (M.dCE.on_gen[g] != M.ext.phi(apply(R.dE, M.ext.psi(e)))) {
            tr = false;
            wt = t->gens[g].name;
        }
    }
    for (auto& wt2 : test_weights(t->d)) {
        Element e = Element::character(t, wt2);
        if (M.dCE.on_char(wt2) != M.ext.phi(apply(R.dE, M.ext.psi(e)))) { tr = false; wt = wname(wt2); }
    }
    rep.add("d_CE = phi d_E psi on generators and characters", tr, wt);

    bool rs = true, cc = true, dg = true;
    std::string wr, wc, wd;
    for (int m = 0; m < M.nB(); ++m) {
        std::string bn = t->gens[M.gB(m)].name;
        if (M.dT[m] != M.dT_restricted[m]) {
            rs = false;
            wr = bn + ": formula " + M.dT[m].str() + " restriction " + M.dT_restricted[m].str();
        }
        Element dd = apply(M.dCE, M.dT[m]);
        if (!dd.is_zero()) { cc = false; wc = bn + " -> " + dd.str(); }
        if (!M.dT[m].is_zero() && M.dT[m].degree() != 3) { dg = false; wd = bn; }
        for (auto& [k, c] : M.dT[m].terms)
            if (key_family_count(*t, k, Family::Bdual2)) { dg = false; wd = bn; }
    }
    rep.add("d_E on pB = d_CE + d_T", rs, wr);
    rep.add("d_CE(d_T) = 0", cc, wc);
    rep.add("d_T has CE degree 3 and no b", dg, wd);
    std::string wq;
    rep.add("Q_E o Q_E = 0", is_zero(commutator(M.Q, M.Q), *t, &wq), wq);
    auto gr = conserved_grading_check(M.grading, M.Q, *t);
    rep.add("Q_E preserves the grading", gr.ok, gr.violation);
    return rep;
}

Report lambda_checks(const MinimalModel& M)
{
    Report rep;
    const TablePtr& t = M.tab;
    std::vector<Element> items;
    std::vector<Element> gens;
    for (int g = 0; g < t->size(); ++g) gens.push_back(Element::gen(t, g));
    items = gens;
    for (auto& w : test_weights(t->d)) {
        if (!nonzero_weight(w)) continue;
        items.push_back(Element::character(t, w));
        for (auto& g : gens) items.push_back(Element::character(t, w) * g);
    }
    auto deg = [](const Element& e) { int d = e.degree(); return d < 0 ? 0 : d; };
    bool eq = true, der = true, jac = true, skew = true, l3 = true;
    std::string we, wd, wj, ws, w3;
    const int n = int(items.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Element &a = items[i], &b = items[j];
            Element f = M.bracket(a, b);
            if (eq && f != M.bracket_transfer(a, b)) {
                eq = false;
                we = "(" + a.str() + "," + b.str() + ") formula " + f.str() + " transfer " +
                     M.bracket_transfer(a, b).str();
            }
            int da = deg(a), db = deg(b);
            Scalar sg = (((da - 2) * (db - 2)) & 1) ? Scalar(1) : Scalar(-1);
            if (skew && f != M.bracket(b, a).scaled(sg)) { skew = false; ws = "(" + a.str() + "," + b.str() + ")"; }
            Element lhs = apply(M.Q, f);
            Element rhs = M.bracket(apply(M.Q, a), b) + M.bracket(a, apply(M.Q, b)).scaled((da & 1) ? -1 : 1);
            if (der && lhs != rhs) { der = false; wd = "(" + a.str() + "," + b.str() + ")"; }
        }
    for (int i = 0; i < int(gens.size()); ++i)
        for (int j = 0; j < int(gens.size()); ++j)
            for (int k = 0; k < n; ++k) {
                const Element &a = gens[i], &b = gens[j], &c = items[k];
                int da = deg(a), db = deg(b);
                Element l = M.bracket(a, M.bracket(b, c));
                Scalar s2 = (((da - 2) * (db - 2)) & 1) ? Scalar(-1) : Scalar(1);
                Element r = M.bracket(M.bracket(a, b), c) + M.bracket(b, M.bracket(a, c)).scaled(s2);
                if (jac && l != r) { jac = false; wj = "(" + a.str() + "," + b.str() + "," + c.str() + ")"; }
                if (k < int(gens.size()) && l3 && !M.lambda3_transfer(a, b, c).is_zero()) {
                    l3 = false;
                    w3 = "(" + a.str() + "," + b.str() + "," + c.str() + ")";
                }
            }
    rep.add("binary bracket: closed formula = homotopy transfer", eq, we);
    rep.add("binary bracket graded skew-symmetric", skew, ws);
    rep.add("ternary bracket: transfer = closed formula (0)", l3, w3);
    rep.add("Q_E is a derivation of the binary bracket", der, wd);
    rep.add("binary bracket Jacobi", jac, wj);
    return rep;
}

Element substitute(const Element& a, const std::vector<Element>& images)
{
    const TablePtr& t = a.tab;
    Element out(t);
    for (auto& [k, c] : a.terms) {
        Element m = Element::character(t, key_weight(*t, k), c);
        for (int g = 0; g < t->size(); ++g)
            for (int e = 0; e < k[t->d + g]; ++e) m = m * images[g];
        out += m;
    }
    return out;
}

std::optional<std::vector<Element>> gauge_primitive(const MinimalModel& M, const std::vector<Element>& c1,
                                                    const std::vector<Element>& c2, Report* rep)
{
    const TablePtr& t = M.tab;
    if (int(c1.size()) != M.nB() || int(c2.size()) != M.nB())
        throw std::invalid_argument("cochains over different algebras");
    for (auto* c : {&c1, &c2})
        for (auto& e : *c)
            if (e.tab != t) throw std::invalid_argument("cochains over different algebras");
    std::vector<Element> gamma;
    LinMap dce = [&](const Element& e) { return apply(M.dCE, e); };
    for (int m = 0; m < M.nB(); ++m) {
        Element delta = c2[m] - c1[m], gm(t);
        std::map<std::vector<int>, Element> parts;
        for (auto& [k, c] : delta.terms)
            parts.try_emplace(M.grading.value(*t, k), Element(t)).first->second.add(k, c);
        for (auto& [v, part] : parts) {
            Block src = make_block(t, M.grading, 2, v), dst = make_block(t, M.grading, 3, v);
            Block src2 = src;
            src2.keys.clear();
            src2.index.clear();
            for (auto& k : src.keys) {
                if (key_family_count(*t, k, Family::Bdual2)) continue;
                src2.index[k] = int(src2.keys.size());
                src2.keys.push_back(k);
            }
            auto sol = solve(matrix(dce, t, src2, dst), coords(dst, part));
            if (!sol) {
                if (rep) rep->add("primitive exists", false, t->gens[M.gB(m)].name + " block " + part.str());
                return std::nullopt;
            }
            gm += from_coords(t, src2, *sol);
        }
        gamma.push_back(gm);
    }
    if (rep) {
        rep->add("primitive exists", true);
        bool ok = true;
        std::string w;
        for (int m = 0; m < M.nB(); ++m)
            if (apply(M.dCE, gamma[m]) != c2[m] - c1[m]) { ok = false; w = t->gens[M.gB(m)].name; }
        rep->add("d_CE gamma = c2 - c1", ok, w);
        Derivation Q1 = q_with(M, c1), Q2 = q_with(M, c2);
        std::vector<Element> img;
        for (int g = 0; g < t->size(); ++g) img.push_back(Element::gen(t, g));
        for (int m = 0; m < M.nB(); ++m) img[M.gB(m)] += gamma[m];
        std::vector<Element> items;
        for (int g = 0; g < t->size(); ++g) {
            items.push_back(Element::gen(t, g));
            for (auto& wt : test_weights(t->d))
                if (nonzero_weight(wt)) items.push_back(Element::character(t, wt) * Element::gen(t, g));
        }
        bool conj = true;
        std::string wc;
        for (auto& a : items)
            if (substitute(apply(Q2, a), img) != apply(Q1, substitute(a, img))) { conj = false; wc = a.str(); }
        rep->add("exp(gamma) intertwines the two differentials", conj, wc);
    }
    return gamma;
}

std::vector<Element> dT_for(const MinimalModel& M, const CourantSpec& other)
{
    auto R2 = std::make_shared<Rothstein>(build_rothstein(other));
    build_theta(*R2);
    FrameDuals fr = M.ext.aframes;
    return dT_formula(*R2, fr);
}

} // namespace ca
