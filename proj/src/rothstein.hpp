#pragma once
// Rothstein algebra of a dissected Courant algebroid: Poisson table,
// generating Hamiltonian, standard differential, naive differential.

#include "courant.hpp"

#include <functional>

namespace ca {

// interior products of frame sections on the degree 1 generators, plus the
// dual elements with i_v dual[u] = delta_uv
struct FrameDuals {
    TablePtr tab;
    std::vector<std::vector<Scalar>> pair;   // [frame][generator]
    std::vector<Element> dual;
    int size() const { return int(pair.size()); }
};

Element contract(const FrameDuals& fr, const Vec& u, const Element& a);
// {theta(f_k), ...{theta(f_1), phi}} as a character sum
CharPoly eval_form(const FrameDuals& fr, const Element& phi, const std::vector<Vec>& args);
Element forms_from_values(const FrameDuals& fr, int k,
                          const std::function<CharPoly(const std::vector<int>&)>& value);
Vec frame_vec(const FrameDuals& fr, int u, int d);

CharPoly to_charpoly(const Element& e);   // throws unless degree 0
Element from_charpoly(const TablePtr& t, const CharPoly& p);

// torsion of the dissection connection on E frames (alternating, xi slots 0)
CharPoly torsion_value(const CourantSpec& s, int A, int B, int C);
// the same on arbitrary sections
CharPoly torsion_value(const CourantSpec& s, const Vec& a, const Vec& b, const Vec& c);

struct Rothstein {
    CourantSpec spec;
    TablePtr tab;
    PoissonTable P;
    FrameDuals fr;                          // E frames, layout [xi | r | x]
    std::vector<std::vector<Vec>> conn;     // [direction][frame] -> nabla_dir e_frame
    std::vector<std::vector<Scalar>> chi;   // per direction, F then B
    std::vector<std::vector<Scalar>> G, Ginv;

    Scalar kappa = 2, lambda = 1;
    Element rho_sum;    // sum_i xi^i pF_i
    Element phiC;       // torsion form before calibration
    Element rho, C, Theta;   // rho = kappa*rho_sum, C = lambda*phiC
    Derivation dE;

    int nDir() const { return int(chi.size()); }
    int gXi(int i) const { return i; }
    int gR(int a) const { return spec.nF() + a; }
    int gX(int i) const { return spec.nF() + spec.g + i; }
    int gPF(int i) const { return spec.nE() + i; }
    int gPB(int m) const { return spec.nE() + spec.nF() + m; }
    int gP(int dir) const { return spec.nE() + dir; }

    Element theta(const Vec& e) const;
    Vec section(const Element& deg1) const;   // inverse of theta on degree 1
    Vec nabla(int dir, const Vec& e) const;
    Vec curvature(int d1, int d2, const Vec& e) const;
    // curvature of directions d1,d2 as a quadratic in theta generators
    Element curvature_quadratic(int d1, int d2) const;
};

// installs the table and checks Jacobi on generator triples (with characters)
Rothstein build_rothstein(const CourantSpec& s, Report* rep = nullptr);
// solves kappa and lambda against the Courant model and fills Theta and dE
void build_theta(Rothstein& R, Report* rep = nullptr);
Element master_residual(const Rothstein& R);
Derivation hamiltonian_derivation(const Rothstein& R, const Element& H);
Report derived_structures_check(const Rothstein& R);
Report d_squared_check(const Rothstein& R);
// alternating-sum differential on the xi, r subalgebra; throws outside it
Element naive_differential(const Rothstein& R, const Element& a);
bool in_naive_subspace(const Rothstein& R, const Element& a);

} // namespace ca
