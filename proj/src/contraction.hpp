#pragma once
// Semifull contraction of the regular subalgebra onto C(A_E), and its
// extension with S(B[-2]) carried along as a spectator.

#include "rothstein.hpp"

#include <memory>
#include <random>

namespace ca {

struct Contraction {
    std::shared_ptr<const Rothstein> R;
    TablePtr mtab;           // xi, r, b
    FrameDuals aframes;      // A_E frames [x | r] on mtab
    std::vector<Element> iC; // interior product of C with x_i
    bool extended = false;

    // operators on the Rothstein table; input with pB is refused unless extended
    Element rho_inv(const Element& a) const;
    Element cop(const Element& a) const;
    Element h(const Element& a) const;
    Element d(const Element& a) const { return apply(R->dE, a); }
    // phi projects to mtab; phi_full is a + h d a + d h a before projection
    Element phi_full(const Element& a) const;
    Element phi(const Element& a) const;
    Element psi(const Element& b) const;   // mtab -> Rothstein table
    Element to_min(const Element& a) const;   // throws if x or pF occur
    bool in_image(const Element& a) const;    // only xi, r, pB occur
};

Contraction build_contraction(std::shared_ptr<const Rothstein> R, bool extended = false);

// seeded random elements: up to `terms` monomials of degree <= maxdeg
struct RandomElements {
    std::mt19937_64 rng;
    explicit RandomElements(uint64_t seed) : rng(seed) {}
    Element draw(const TablePtr& t, const std::vector<int>& gens, int maxdeg, int terms);
};
std::vector<int> regular_generators(const Rothstein& R, bool with_pB);

// Q is the differential on mtab used for the chain-map check (d_CE or Q_E)
Report verify_contraction(const Contraction& c, const std::function<Element(const Element&)>& Q,
                          int samples = 200, int maxdeg = 6, uint64_t seed = 20240601);

// phi(Theta) against the explicit torsion of the E-connection
Element phi_theta_target(const Contraction& c);
Report phi_theta_check(const Contraction& c);

} // namespace ca
