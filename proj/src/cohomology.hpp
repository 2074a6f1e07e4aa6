#pragma once
// Betti numbers by exact block ranks: brute standard complex, minimal model,
// naive complex, CE complex, and the pages E0..E2 of the b-count filtration.

#include "minimal.hpp"

namespace ca {

struct Complex {
    std::string name;
    TablePtr tab;
    LinMap d;
    Grading grading;
    std::function<bool(const Key&)> keep;   // subcomplex filter, may be empty
};

Complex brute_complex(const Rothstein& R);
Complex minimal_complex(const MinimalModel& M);
Complex naive_complex(const Rothstein& R);
// b-free part of the minimal model with d_CE
Complex ce_complex(const MinimalModel& M);

struct BettiTable {
    std::string name;
    int radius = 0;
    bool approximate = false;
    std::vector<long> dims;                           // degree 0..nmax
    std::map<std::vector<int>, std::vector<long>> blocks;   // nonzero blocks only
    bool d_squared_zero = true;                       // consecutive matrices compose to 0
    std::string witness;
};

BettiTable betti(const Complex& C, int nmax, int radius);

struct Slot {
    int k, l;   // CE degree, b-count
    bool operator<(const Slot& o) const { return k != o.k ? k < o.k : l < o.l; }
    bool operator==(const Slot& o) const { return k == o.k && l == o.l; }
};

struct Pages {
    int nmax = 0, radius = 0;
    std::map<Slot, long> E0, E1, E2, d1rank, d2rank;
    bool d1_recheck = true;   // rank of d1 agrees under reverse pivoting
    bool lift_ok = true;      // every d2 lift solved
    bool d_squared_zero = true;
    std::string witness;
    std::vector<long> total(const std::map<Slot, long>& E) const;
};

Pages spectral_pages(const MinimalModel& M, int nmax, int radius);
// E1 from the Kunneth shape: H_CE(A_E) shifted by b-monomials
std::map<Slot, long> e1_direct(const MinimalModel& M, int nmax, int radius);

int default_radius(const CourantSpec& s);

Report compare_betti(const BettiTable& a, const BettiTable& b);
// H0, H1, H2, H3 formulas from E1 and d1 against the standard dims
Report corollary_checks(const Pages& P, const BettiTable& ce, const BettiTable& st);

// text rendering
std::string betti_str(const BettiTable& b);
std::string pages_str(const Pages& P);

} // namespace ca
