#pragma once
// Free graded-commutative algebra over the character ring of a torus, with
// derivations and a degree -2 Poisson biderivation.

#include "scalar.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace ca {

using Weight = std::vector<int>;

enum class Family { Fdual = 0, Gfiber, Ffiber, PmomF, PmomB, Bdual2 };
const char* family_name(Family f);

struct Generator {
    std::string name;
    Family fam;
    int degree;
    int index;
};

struct GeneratorTable {
    int d = 0;                      // lattice rank of the base
    std::vector<Generator> gens;    // already in the fixed total order
    std::string symbol = "nu";      // printing name of the transcendental

    int size() const { return int(gens.size()); }
    bool odd(int i) const { return gens[i].degree & 1; }
    int find(Family f, int idx) const;  // -1 if absent
    int count(Family f) const;
};
using TablePtr = std::shared_ptr<const GeneratorTable>;

// builds a table from family sizes; families appear in canonical order
TablePtr make_table(int d, const std::vector<std::pair<Family, int>>& fams,
                    const std::string& symbol = "nu");

// key = weight (d entries) followed by generator exponents
using Key = std::vector<int16_t>;

class Element {
public:
    TablePtr tab;
    std::map<Key, Scalar> terms;

    Element() = default;
    explicit Element(TablePtr t) : tab(std::move(t)) {}

    static Element scalar(TablePtr t, const Scalar& c);
    static Element gen(TablePtr t, int i, const Scalar& c = 1);
    static Element character(TablePtr t, const Weight& w, const Scalar& c = 1);

    bool is_zero() const { return terms.empty(); }
    void add(const Key& k, const Scalar& c);
    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    Element operator-() const;
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    Element scaled(const Scalar& c) const;
    bool operator==(const Element& o) const;
    bool operator!=(const Element& o) const { return !(*this == o); }

    // degree filters; -1 when zero or inhomogeneous
    int degree() const;
    Element part(int deg) const;
    std::string str() const;
};

Element operator*(const Element& a, const Element& b);
Element operator*(const Scalar& c, const Element& a);

// key helpers
Weight key_weight(const GeneratorTable& t, const Key& k);
int key_degree(const GeneratorTable& t, const Key& k);
int key_family_count(const GeneratorTable& t, const Key& k, Family f);
Key make_key(const GeneratorTable& t, const Weight& w);
// product of two monomials; returns 0 (zero), +1 or -1 and writes the key
int key_mul(const GeneratorTable& t, const Key& a, const Key& b, Key& out);
std::string key_str(const GeneratorTable& t, const Key& k);

// raw terms in arbitrary generator order
struct RawTerm {
    Scalar c;
    Weight w;
    std::vector<int> word;
};
Element normal_form(TablePtr t, const std::vector<RawTerm>& raw);

// a derivation of degree k determined by generator images and its action on
// characters; char_degree bounds the polynomial degree of D(e_w) in w
struct Derivation {
    int k = 1;
    std::vector<Element> on_gen;
    std::function<Element(const Weight&)> on_char;
    int char_degree = 1;
};

Element apply(const Derivation& D, const Element& a);
Element apply_term(const Derivation& D, const GeneratorTable& t, const TablePtr& tp,
                   const Key& k, const Scalar& c);
Derivation commutator(const Derivation& a, const Derivation& b);
// zero on every generator and identically in w (checked on a grid which is
// a certificate for polynomials of degree <= char_degree)
bool is_zero(const Derivation& D, const GeneratorTable& t, std::string* witness = nullptr);
std::vector<Weight> weight_grid(int d, int deg);

struct PoissonTable {
    std::vector<std::vector<Element>> gg;     // {g_i, g_j}
    std::vector<std::vector<Scalar>> chi;     // {g_i, e_w} = <chi_i, w> e_w
};

Element poisson(const PoissonTable& P, const Element& a, const Element& b);

// a linear functional on (weight, generator exponents) with values in Z^r
struct Grading {
    std::vector<std::vector<int>> A;        // r x d
    std::vector<std::vector<int>> gen;      // per generator, length r
    int rank() const { return int(A.size()); }
    std::vector<int> value(const GeneratorTable& t, const Key& k) const;
};

struct GradingReport {
    bool ok = true;
    std::string violation;
};
GradingReport conserved_grading_check(const Grading& g, const Derivation& D,
                                      const GeneratorTable& t);

} // namespace ca
