#include "icn/galois.hpp"

#include <map>
#include <mutex>
#include <string>
#include <utility>

namespace icn {

namespace {

struct ModulusEntry {
    unsigned p;
    unsigned m;
    std::vector<unsigned> coeffs; // low to high, monic
};

// Smallest monic irreducible (by base-p value of the low coefficients) for
// every (p, m) with m >= 2 and p^m <= 512.
const std::vector<ModulusEntry>& modulus_table()
{
    static const std::vector<ModulusEntry> table = {
        {2, 2, {1, 1, 1}},
        {2, 3, {1, 1, 0, 1}},
        {2, 4, {1, 1, 0, 0, 1}},
        {2, 5, {1, 0, 1, 0, 0, 1}},
        {2, 6, {1, 1, 0, 0, 0, 0, 1}},
        {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
        {2, 8, {1, 1, 0, 1, 1, 0, 0, 0, 1}},
        {2, 9, {1, 1, 0, 0, 0, 0, 0, 0, 0, 1}},
        {3, 2, {1, 0, 1}},
        {3, 3, {1, 2, 0, 1}},
        {3, 4, {2, 1, 0, 0, 1}},
        {3, 5, {1, 2, 0, 0, 0, 1}},
        {5, 2, {2, 0, 1}},
        {5, 3, {1, 1, 0, 1}},
        {7, 2, {1, 0, 1}},
        {7, 3, {2, 0, 0, 1}},
        {11, 2, {1, 0, 1}},
        {13, 2, {2, 0, 1}},
        {17, 2, {3, 0, 1}},
        {19, 2, {1, 0, 1}},
    };
    return table;
}

std::vector<unsigned> digits(unsigned value, unsigned p, unsigned m)
{
    std::vector<unsigned> d(m);
    for (unsigned i = 0; i < m; ++i) {
        d[i] = value % p;
        value /= p;
    }
    return d;
}

unsigned undigits(const std::vector<unsigned>& d, unsigned p)
{
    unsigned v = 0;
    for (auto it = d.rbegin(); it != d.rend(); ++it)
        v = v * p + *it;
    return v;
}

// Remainder of a modulo a monic b over GF(p); coefficient vectors low to high.
std::vector<unsigned> poly_rem(std::vector<unsigned> a, const std::vector<unsigned>& b, unsigned p)
{
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const unsigned lead = a.back() % p;
        if (lead != 0) {
            const std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i)
                a[shift + i] = (a[shift + i] + p * p - lead * b[i] % p) % p;
        }
        a.pop_back();
    }
    return a;
}

unsigned mulmod(unsigned a, unsigned b, const std::vector<unsigned>& modulus, unsigned p, unsigned m)
{
    const auto da = digits(a, p, m);
    const auto db = digits(b, p, m);
    std::vector<unsigned> prod(2 * m - 1, 0);
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j)
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    auto r = poly_rem(std::move(prod), modulus, p);
    r.resize(m, 0);
    return undigits(r, p);
}

} // namespace

bool is_prime(unsigned n) noexcept
{
    if (n < 2)
        return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

bool is_irreducible(const std::vector<unsigned>& poly, unsigned p)
{
    if (poly.size() < 2 || poly.back() != 1)
        return false;
    const unsigned deg = unsigned(poly.size() - 1);
    for (unsigned d = 1; d <= deg / 2; ++d) {
        unsigned count = 1;
        for (unsigned i = 0; i < d; ++i)
            count *= p;
        for (unsigned v = 0; v < count; ++v) {
            auto divisor = digits(v, p, d);
            divisor.push_back(1);
            const auto r = poly_rem(poly, divisor, p);
            bool zero = true;
            for (unsigned c : r)
                zero = zero && c % p == 0;
            if (zero)
                return false;
        }
    }
    return true;
}

Field::Field(unsigned p, unsigned m) : p_(p), m_(m), q_(1)
{
    if (!is_prime(p))
        throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
    if (m == 0)
        throw DomainError("field extension degree must be >= 1");
    for (unsigned i = 0; i < m; ++i) {
        q_ *= p;
        if (q_ > max_order)
            throw DomainError("field order exceeds " + std::to_string(max_order));
    }

    if (m == 1) {
        modulus_ = {0, 1};
    } else {
        for (const auto& e : modulus_table())
            if (e.p == p && e.m == m)
                modulus_ = e.coeffs;
        if (modulus_.empty())
            throw DomainError("no modulus for GF(" + std::to_string(p) + "^" + std::to_string(m) + ")");
    }
    if (!is_irreducible(modulus_, p))
        throw DomainError("modulus table entry is reducible");

    const unsigned order = q_ - 1;
    // Primitive element: smallest nonzero element of multiplicative order q-1.
    generator_ = 1;
    if (q_ > 2) {
        for (unsigned g = 2; g < q_; ++g) {
            unsigned x = 1;
            unsigned k = 0;
            do {
                x = mulmod(x, g, modulus_, p_, m_);
                ++k;
            } while (x != 1);
            if (k == order) {
                generator_ = Elem(g);
                break;
            }
        }
    }

    exp_.assign(2 * std::size_t(order), 0);
    log_.assign(q_, 0);
    unsigned x = 1;
    for (unsigned k = 0; k < order; ++k) {
        exp_[k] = exp_[k + order] = Elem(x);
        log_[x] = Elem(k);
        x = mulmod(x, generator_, modulus_, p_, m_);
    }

    add_.resize(std::size_t(q_) * q_);
    mul_.resize(std::size_t(q_) * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);
    for (unsigned a = 0; a < q_; ++a) {
        const auto da = digits(a, p_, m_);
        std::vector<unsigned> dn(m_);
        for (unsigned i = 0; i < m_; ++i)
            dn[i] = (p_ - da[i]) % p_;
        neg_[a] = Elem(undigits(dn, p_));
        if (a != 0)
            inv_[a] = exp_[(order - log_[a]) % order];
        for (unsigned b = 0; b < q_; ++b) {
            const auto db = digits(b, p_, m_);
            std::vector<unsigned> ds(m_);
            for (unsigned i = 0; i < m_; ++i)
                ds[i] = (da[i] + db[i]) % p_;
            add_[a * q_ + b] = Elem(undigits(ds, p_));
            mul_[a * q_ + b] = (a == 0 || b == 0) ? Elem(0) : exp_[log_[a] + log_[b]];
        }
    }
}

std::shared_ptr<const Field> Field::get(unsigned p, unsigned m)
{
    static std::mutex mutex;
    static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const Field>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{p, m}];
    if (!slot) {
        try {
            slot = std::make_shared<const Field>(p, m);
        } catch (...) {
            cache.erase({p, m});
            throw;
        }
    }
    return slot;
}

std::shared_ptr<const Field> Field::of_order(unsigned q)
{
    for (unsigned p = 2; p <= q; ++p) {
        if (q % p != 0)
            continue;
        unsigned m = 0;
        unsigned r = q;
        while (r % p == 0) {
            r /= p;
            ++m;
        }
        if (r != 1 || !is_prime(p))
            break;
        return get(p, m);
    }
    throw DomainError("field order " + std::to_string(q) + " is not a prime power");
}

void Field::check(unsigned a) const
{
    if (a >= q_)
        throw DomainError("element " + std::to_string(a) + " out of range for GF(" + std::to_string(q_) + ")");
}

Elem Field::add(unsigned a, unsigned b) const
{
    check(a);
    check(b);
    return plus(Elem(a), Elem(b));
}

Elem Field::sub(unsigned a, unsigned b) const
{
    check(a);
    check(b);
    return minus(Elem(a), Elem(b));
}

Elem Field::neg(unsigned a) const
{
    check(a);
    return negate(Elem(a));
}

Elem Field::mul(unsigned a, unsigned b) const
{
    check(a);
    check(b);
    return times(Elem(a), Elem(b));
}

Elem Field::inv(unsigned a) const
{
    check(a);
    if (a == 0)
        throw DivisionByZero();
    return inverse(Elem(a));
}

Elem Field::div(unsigned a, unsigned b) const
{
    return mul(a, inv(b));
}

} // namespace icn
