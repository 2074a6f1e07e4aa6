#pragma once
// Minimal model (xi, r, b; Q_E = d_CE + d_T) and its derived brackets.

#include "blocks.hpp"
#include "contraction.hpp"

#include <optional>

namespace ca {

struct MinimalModel {
    std::shared_ptr<const Rothstein> R;
    Contraction ext;                 // extended contraction
    TablePtr tab;
    Ample A;
    Derivation dCE, Q;
    std::vector<Element> dT;         // per transverse direction, from the formula
    std::vector<Element> dT_restricted;   // d_E(pB_m) read on the minimal table
    PoissonTable lam2;               // binary bracket from the closed formulas
    Grading grading;

    int nB() const { return R->spec.nB(); }
    int gB(int m) const { return R->spec.nF() + R->spec.g + m; }
    Element bracket(const Element& a, const Element& b) const { return poisson(lam2, a, b); }
    Element bracket_transfer(const Element& a, const Element& b) const;
    Element lambda3_transfer(const Element& a, const Element& b, const Element& c) const;
};

Derivation ce_differential(const Rothstein& R, const TablePtr& t, const FrameDuals& fr);
// Q with b_m -> images[m]
Derivation q_with(const MinimalModel& M, const std::vector<Element>& dT);
std::vector<Element> dT_formula(const Rothstein& R, const FrameDuals& fr);

MinimalModel build_minimal(std::shared_ptr<const Rothstein> R, Report* rep = nullptr);
Report minimal_checks(const MinimalModel& M);
Report lambda_checks(const MinimalModel& M);

// algebra morphism fixing characters, generator g -> images[g]
Element substitute(const Element& a, const std::vector<Element>& images);

// gamma with d_CE gamma_m = c2_m - c1_m, or none; checks e^gamma on generators
std::optional<std::vector<Element>> gauge_primitive(const MinimalModel& M, const std::vector<Element>& c1,
                                                    const std::vector<Element>& c2, Report* rep = nullptr);

// d_T of the same spec built with another transverse connection, expressed on M's table
std::vector<Element> dT_for(const MinimalModel& M, const CourantSpec& other);

} // namespace ca
