#include "scalar.hpp"

#include <stdexcept>

namespace ca {

Poly Poly::monomial(int k, const mpq_class& v)
{
    Poly p;
    if (v == 0) return p;
    p.c.assign(k + 1, 0);
    p.c[k] = v;
    return p;
}

Poly operator+(const Poly& a, const Poly& b)
{
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.trim();
    return r;
}

Poly operator-(const Poly& a, const Poly& b)
{
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    r.trim();
    return r;
}

Poly operator*(const Poly& a, const Poly& b)
{
    Poly r;
    if (a.zero() || b.zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
}

Poly operator*(const Poly& a, const mpq_class& b)
{
    Poly r;
    if (b == 0) return r;
    r.c = a.c;
    for (auto& x : r.c) x *= b;
    return r;
}

bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }

void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r)
{
    if (b.zero()) throw std::domain_error("polynomial division by zero");
    q = Poly();
    r = a;
    if (r.deg() < b.deg()) return;
    q.c.assign(r.deg() - b.deg() + 1, 0);
    while (!r.zero() && r.deg() >= b.deg()) {
        int k = r.deg() - b.deg();
        mpq_class f = r.lead() / b.lead();
        q.c[k] = f;
        for (size_t i = 0; i < b.c.size(); ++i) r.c[i + k] -= f * b.c[i];
        r.trim();
    }
    q.trim();
}

Poly gcd(Poly a, Poly b)
{
    while (!b.zero()) {
        Poly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.zero()) a = a * mpq_class(1 / a.lead());
    return a;
}

Scalar Scalar::frac(long p, long q)
{
    mpq_class v(p, q);
    v.canonicalize();
    return Scalar(v);
}

Scalar Scalar::symbol() { return ratfunc(Poly::monomial(1), Poly(1)); }

Scalar Scalar::ratfunc(Poly num, Poly den)
{
    if (den.zero()) throw std::domain_error("zero denominator");
    Scalar s;
    s.rf_ = true;
    s.n_ = std::move(num);
    s.d_ = std::move(den);
    s.normalize();
    return s;
}

Poly Scalar::num() const { return rf_ ? n_ : Poly(q_); }
Poly Scalar::den() const { return rf_ ? d_ : Poly(mpq_class(1)); }

void Scalar::normalize()
{
    if (!rf_) return;
    if (n_.zero()) { rf_ = false; q_ = 0; n_ = d_ = Poly(); return; }
    Poly g = gcd(n_, d_);
    if (g.deg() > 0) {
        Poly q, r;
        divmod(n_, g, q, r); n_ = q;
        divmod(d_, g, q, r); d_ = q;
    }
    mpq_class l = d_.lead();
    if (l != 1) { n_ = n_ * mpq_class(1 / l); d_ = d_ * mpq_class(1 / l); }
    if (n_.deg() == 0 && d_.deg() == 0) {
        rf_ = false; q_ = n_.c[0]; n_ = d_ = Poly();
    }
}

Scalar Scalar::operator-() const
{
    Scalar r = *this;
    if (rf_) r.n_ = r.n_ * mpq_class(-1);
    else r.q_ = -q_;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    if (!rf_ && !o.rf_) { q_ += o.q_; return *this; }
    Poly a = num(), b = den(), c = o.num(), d = o.den();
    *this = ratfunc(a * d + c * b, b * d);
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o)
{
    if (!rf_ && !o.rf_) { q_ *= o.q_; return *this; }
    if (o.is_zero() || is_zero()) { *this = Scalar(); return *this; }
    Poly a = num(), b = den(), c = o.num(), d = o.den();
    *this = ratfunc(a * c, b * d);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    if (o.is_zero()) throw std::domain_error("division by zero scalar");
    if (!rf_ && !o.rf_) { q_ /= o.q_; return *this; }
    Poly a = num(), b = den(), c = o.num(), d = o.den();
    *this = ratfunc(a * d, b * c);
    return *this;
}

bool Scalar::operator==(const Scalar& o) const
{
    if (rf_ != o.rf_) return false;
    if (!rf_) return q_ == o.q_;
    return n_ == o.n_ && d_ == o.d_;
}

static int cmp_poly(const Poly& a, const Poly& b)
{
    if (a.c.size() != b.c.size()) return a.c.size() < b.c.size() ? -1 : 1;
    for (size_t i = a.c.size(); i-- > 0;) {
        int s = cmp(a.c[i], b.c[i]);
        if (s) return s < 0 ? -1 : 1;
    }
    return 0;
}

int Scalar::compare(const Scalar& o) const
{
    if (rf_ != o.rf_) return rf_ ? 1 : -1;
    if (!rf_) { int s = cmp(q_, o.q_); return s < 0 ? -1 : (s > 0); }
    int s = cmp_poly(n_, o.n_);
    return s ? s : cmp_poly(d_, o.d_);
}

std::string poly_str(const Poly& p, const std::string& sym)
{
    if (p.zero()) return "0";
    std::string out;
    for (size_t i = p.c.size(); i-- > 0;) {
        if (p.c[i] == 0) continue;
        mpq_class v = p.c[i];
        bool neg = v < 0;
        if (neg) v = -v;
        if (!out.empty()) out += neg ? " - " : " + ";
        else if (neg) out += "-";
        std::string vs = v.get_str();
        if (i == 0) out += vs;
        else {
            if (v != 1) out += vs + "*";
            out += sym;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

std::string Scalar::str(const std::string& sym) const
{
    if (!rf_) return q_.get_str();
    std::string a = poly_str(n_, sym);
    if (d_.deg() == 0) return a;
    return "(" + a + ")/(" + poly_str(d_, sym) + ")";
}

} // namespace ca
