#include "support.hpp"

#include <doctest.h>

using namespace ca;
using namespace tst;

TEST_CASE("rational arithmetic is exact")
{
    CHECK(Scalar::frac(1, 3) + Scalar::frac(1, 6) == Scalar::frac(1, 2));
    CHECK(Scalar::frac(2, 4) == Scalar::frac(1, 2));
    CHECK((Scalar::frac(3, 7) / Scalar::frac(3, 7)) == Scalar(1));
    CHECK(Scalar::frac(-1, 2).str() == "-1/2");
}

TEST_CASE("rational functions stay reduced")
{
    auto nu = Scalar::symbol();
    auto a = (nu * nu - Scalar(1)) / (nu - Scalar(1));
    CHECK(a == nu + Scalar(1));
    CHECK(((nu + 1) / (nu + 1)).is_const());
    CHECK((nu - nu).is_zero());

    Gen g(5);
    for (int trial = 0; trial < 200; ++trial) {
        auto x = g.ratfunc(), y = g.ratfunc(), z = g.ratfunc();
        CHECK((x + y) + z == x + (y + z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x - x == Scalar(0));
        if (!y.is_zero()) CHECK((x / y) * y == x);
        auto s = x * y + z;
        Poly n = s.num(), d = s.den();
        CHECK(gcd(n, d).deg() <= 0);
        CHECK(d.lead() == 1);
    }
}
