#pragma once
// Regular Courant algebroids over torus/point bases presented through a
// dissection E = F* + G + F, with character-sum structure data.

#include "algebra.hpp"

#include <map>
#include <string>
#include <vector>

namespace ca {

// finite sum of characters e_w with exact coefficients
struct CharPoly {
    std::map<Weight, Scalar> t;

    CharPoly() = default;
    CharPoly(const Scalar& c, int d) { if (!c.is_zero()) t[Weight(d, 0)] = c; }
    static CharPoly mono(const Weight& w, const Scalar& c = 1);

    bool is_zero() const { return t.empty(); }
    CharPoly& operator+=(const CharPoly& o);
    CharPoly& operator-=(const CharPoly& o);
    CharPoly operator-() const;
    friend CharPoly operator+(CharPoly a, const CharPoly& b) { return a += b; }
    friend CharPoly operator-(CharPoly a, const CharPoly& b) { return a -= b; }
    friend CharPoly operator*(const CharPoly& a, const CharPoly& b);
    friend CharPoly operator*(const Scalar& c, const CharPoly& a);
    bool operator==(const CharPoly& o) const { return t == o.t; }
    bool operator!=(const CharPoly& o) const { return t != o.t; }
    // derivative along a constant vector field with functional chi
    CharPoly deriv(const std::vector<Scalar>& chi) const;
    std::string str(const std::string& sym = "nu") const;
    Element to_element(const TablePtr& tab) const;
};

using Vec = std::vector<CharPoly>;
using Mat = std::vector<Vec>;

struct Check {
    std::string name;
    bool pass = true;
    std::string witness;
};
struct Report {
    std::vector<Check> checks;
    bool ok() const;
    void add(const std::string& name, bool pass, const std::string& witness = "");
    void merge(const Report& o, const std::string& prefix = "");
    std::string str() const;
};

struct GradingSpec {
    std::vector<std::vector<int>> A;               // r x d; empty means identity
    std::map<Family, std::vector<int>> fam;        // per-family contribution
};

struct CourantSpec {
    std::string name;
    std::string symbol;                 // empty when over Q
    int d = 0;
    std::vector<std::vector<Scalar>> chiF, chiB;   // functionals of frame fields
    int g = 0;
    std::vector<std::vector<Vec>> bracket;         // [a][b] -> G-vector
    std::vector<std::vector<Scalar>> metric;       // g x g
    std::vector<std::vector<Vec>> nablaG;          // [i][a] -> G-vector
    std::vector<std::vector<Vec>> R;               // [i][j] -> G-vector
    std::vector<std::vector<std::vector<CharPoly>>> H;  // [i][j][k]
    std::vector<std::vector<Vec>> nablaF;          // [i][j] -> F-vector
    std::vector<std::vector<Vec>> nablaB;          // [m][a] -> G-vector
    GradingSpec grading;
    bool approximate_window = false;   // totals over a window are truncations

    int nF() const { return int(chiF.size()); }
    int nB() const { return int(chiB.size()); }
    int nE() const { return 2 * nF() + g; }
    int iXi(int i) const { return i; }
    int iR(int a) const { return nF() + a; }
    int iX(int i) const { return nF() + g + i; }
    std::string sym() const { return symbol.empty() ? "nu" : symbol; }

    // all structure arrays sized with zeros
    void resize();
    CharPoly zero() const { return CharPoly(); }
};

// sections of E = F* + G + F, layout [xi | r | x]
Vec zero_section(const CourantSpec& s);
Vec frame_section(const CourantSpec& s, int A);
std::string section_str(const CourantSpec& s, const Vec& e);

CharPoly anchor_apply(const CourantSpec& s, const Vec& e, const CharPoly& f);
CharPoly pairing(const CourantSpec& s, const Vec& e1, const Vec& e2);  // g(e1,e2)
Vec dorfman(const CourantSpec& s, const Vec& e1, const Vec& e2);
Vec partial(const CourantSpec& s, const CharPoly& f);   // 1/2 rho^* d f
Vec scale(const CharPoly& f, const Vec& e);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);

Report validate_quadratic_bundle(const CourantSpec& s);
Report validate_dissection(const CourantSpec& s);
Report validate_courant_axioms(const CourantSpec& s);
std::vector<Weight> test_weights(int d);

// ample Lie algebroid A_E = F + G, layout [x | r]
struct Ample {
    const CourantSpec* s;
    int rank() const { return s->nF() + s->g; }
    Vec frame(int u) const;
    Vec bracket(const Vec& u, const Vec& v) const;
    CharPoly anchor(const Vec& u, const CharPoly& f) const;
};
Ample build_ample(const CourantSpec& s, Report* rep = nullptr);

struct DissectionChange {
    std::vector<std::vector<Scalar>> tau;   // tau(r_a) = sum_c tau[a][c] r_c
    std::vector<Vec> phi;                   // phi(x_i), G-vector
    std::vector<Vec> beta;                  // beta(x_i), F*-vector
};
Vec apply_delta(const CourantSpec& s, const DissectionChange& c, const Vec& e);
Vec apply_delta_inv(const CourantSpec& s, const DissectionChange& c, const Vec& e);
CourantSpec apply_dissection_change(const CourantSpec& s, const DissectionChange& c,
                                    Report* iso);

bool specs_equal(const CourantSpec& a, const CourantSpec& b);

// exact inverse of a constant matrix; throws on singular input
std::vector<std::vector<Scalar>> invert_matrix(std::vector<std::vector<Scalar>> m);
// E frame names xi1.., r1.., x1..
std::string frame_name(const CourantSpec& s, int A);

} // namespace ca
