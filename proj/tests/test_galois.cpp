#include "doctest.h"

#include <algorithm>
#include <vector>

#include "icn/galois.hpp"

using namespace icn;

namespace {

// Schoolbook polynomial product mod the field's modulus, digit by digit.
unsigned slow_mul(const Field& f, unsigned a, unsigned b)
{
    const unsigned p = f.p(), m = f.m();
    std::vector<unsigned> x(m), y(m), prod(2 * m, 0);
    for (unsigned i = 0; i < m; ++i, a /= p, b /= p) {
        x[i] = a % p;
        y[i] = b % p;
    }
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j)
            prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
    const auto& mod = f.modulus();
    for (unsigned d = 2 * m - 1; d >= m; --d) {
        const unsigned c = prod[d];
        if (c == 0)
            continue;
        for (unsigned i = 0; i <= m; ++i)
            prod[d - m + i] = (prod[d - m + i] + (p - c) * mod[i]) % p;
    }
    unsigned r = 0;
    for (unsigned i = m; i-- > 0;)
        r = r * p + prod[i];
    return r;
}

unsigned slow_add(const Field& f, unsigned a, unsigned b)
{
    unsigned r = 0, w = 1;
    for (unsigned i = 0; i < f.m(); ++i, a /= f.p(), b /= f.p(), w *= f.p())
        r += ((a % f.p() + b % f.p()) % f.p()) * w;
    return r;
}

} // namespace

TEST_CASE("small field arithmetic")
{
    auto f2 = Field::get(2, 1);
    auto f3 = Field::get(3, 1);
    auto f4 = Field::get(2, 2);
    CHECK(f2->add(1, 1) == 0);
    CHECK(f3->add(2, 2) == 1);
    CHECK(f4->add(2, 3) == 1);
    CHECK(f3->mul(2, 2) == 1);
    CHECK(f4->mul(2, 3) == 1);
    CHECK(f2->inv(1) == 1);
    CHECK(f3->inv(2) == 2);
    CHECK(f4->inv(2) == 3);
    CHECK(f4->modulus() == std::vector<unsigned>{1, 1, 1});
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u})
        for (unsigned a = 0; a < q; ++a)
            CHECK(Field::of_order(q)->mul(1, a) == a);
}

TEST_CASE("domain errors")
{
    CHECK_THROWS_AS(Field::get(4, 1), DomainError);
    CHECK_THROWS_AS(Field::get(2, 0), DomainError);
    CHECK_THROWS_AS(Field::get(2, 10), DomainError);
    CHECK_THROWS_AS(Field::of_order(6), DomainError);
    auto f3 = Field::get(3, 1);
    CHECK_THROWS_AS(f3->add(3, 0), DomainError);
    CHECK_THROWS_AS(f3->inv(0), DivisionByZero);
    CHECK_THROWS_AS(f3->div(1, 0), DivisionByZero);
}

TEST_CASE("cache returns one instance per order")
{
    CHECK(Field::get(2, 3).get() == Field::of_order(8).get());
    CHECK(is_irreducible({1, 1, 1}, 2));
    CHECK_FALSE(is_irreducible({1, 0, 1}, 2));
}

TEST_CASE("field axioms for every order up to 16")
{
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u}) {
        CAPTURE(q);
        const auto& f = *Field::of_order(q);
        bool ok = true;
        for (unsigned a = 0; a < q; ++a) {
            ok = ok && f.add(a, f.neg(a)) == 0 && f.add(a, 0) == a;
            if (a != 0)
                ok = ok && f.mul(a, f.inv(a)) == 1;
            for (unsigned b = 0; b < q; ++b) {
                ok = ok && f.add(a, b) == slow_add(f, a, b) && f.mul(a, b) == slow_mul(f, a, b);
                ok = ok && f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a);
                ok = ok && f.add(f.sub(a, b), b) == a;
                for (unsigned c = 0; c < q; ++c) {
                    ok = ok && f.add(f.add(a, b), c) == f.add(a, f.add(b, c));
                    ok = ok && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c));
                    ok = ok && f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
                }
            }
        }
        CHECK(ok);
        // generator really generates
        std::vector<char> seen(q, 0);
        unsigned x = 1;
        for (unsigned i = 0; i + 1 < q; ++i, x = f.mul(x, f.generator()))
            seen[x] = 1;
        CHECK(std::count(seen.begin() + 1, seen.end(), 1) == long(q - 1));
    }
}
