#pragma once
// Exact coefficients: rationals, optionally extended to Q(s) for a single
// transcendental symbol s. Constants stay on the mpq fast path.

#include <gmpxx.h>
#include <string>
#include <vector>

namespace ca {

// dense univariate polynomial over Q, c[k] is the coefficient of s^k
struct Poly {
    std::vector<mpq_class> c;

    Poly() = default;
    explicit Poly(const mpq_class& v) { if (v != 0) c.push_back(v); }

    int deg() const { return int(c.size()) - 1; }
    bool zero() const { return c.empty(); }
    const mpq_class& lead() const { return c.back(); }
    void trim() { while (!c.empty() && c.back() == 0) c.pop_back(); }

    static Poly monomial(int k, const mpq_class& v = 1);
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const mpq_class& b);
bool operator==(const Poly& a, const Poly& b);
void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
Poly gcd(Poly a, Poly b);   // monic, gcd(0,0) = 0

class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : q_(v) {}
    Scalar(int v) : q_(v) {}
    Scalar(const mpq_class& v) : q_(v) {}
    static Scalar frac(long p, long q);
    static Scalar symbol();                  // s itself
    static Scalar ratfunc(Poly num, Poly den);

    bool is_zero() const { return !rf_ && q_ == 0; }
    bool is_const() const { return !rf_; }
    const mpq_class& q() const { return q_; }
    // numerator/denominator as polynomials (constants promoted)
    Poly num() const;
    Poly den() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // total order used only for canonical printing/sorting
    int compare(const Scalar& o) const;

    std::string str(const std::string& sym = "nu") const;

private:
    bool rf_ = false;      // true iff genuinely non-constant rational function
    mpq_class q_;
    Poly n_, d_;
    void normalize();
};

std::string poly_str(const Poly& p, const std::string& sym);

} // namespace ca
